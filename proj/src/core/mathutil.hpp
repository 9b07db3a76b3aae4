#ifndef FBS_MATHUTIL_HPP
#define FBS_MATHUTIL_HPP

#include <complex>
#include <functional>
#include <vector>

namespace fbs {

using cplx = std::complex<double>;

// ln(n!) -- exact table below n=21, lgamma above
double log_factorial(int n);

// e^{-lambda} lambda^n / n!, log-space above n=20
double poisson_pmf(double lambda, int n);

// Sum_{n>N} pmf(lambda,n), by direct summation of the tail
double poisson_tail(double lambda, int n_top);

struct QuadratureResult {
    double value;
    double error_estimate;
    bool converged;
};

// Adaptive Simpson on [a,b] to absolute tolerance abs_tol.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol);

// Upper-tail p-value of a chi-square statistic with dof degrees of freedom.
double chi_square_pvalue(double stat, int dof);

// splitmix64 -- used to derive independent per-trial RNG streams
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fbs

#endif
