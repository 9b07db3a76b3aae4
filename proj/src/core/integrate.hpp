#ifndef FBS_INTEGRATE_HPP
#define FBS_INTEGRATE_HPP

#include "ladder.hpp"

namespace fbs {

// Fixed-step RK4 controls. dt = 0 selects the default step
// 0.005 / sqrt(n_max) in gt units, which keeps g*dt well under 0.01
// for any truncation in range.
struct IntegratorSpec {
    double dt = 0.0;              // step in gt units; 0 = auto
    std::vector<double> gt_grid;  // output sample times, strictly increasing

    void validate() const;
    double step_for(const SystemConfig& cfg) const;
};

// Direct RK4 integration of the Schrodinger equation in the interaction
// picture (gamma must be 0). Returns one state per grid point. Norm
// conservation and the truncation-boundary guard are enforced along the way.
std::vector<LadderState> integrate_schrodinger(const LadderState& psi0,
                                               const SystemConfig& cfg,
                                               const IntegratorSpec& spec);

// RK4 integration of the coefficient equations
//   d alpha_{n,n'}/dt = -i g (sqrt(n) a_{n-1,n'} + sqrt(n+1) a_{n+1,n'}
//                        - sqrt(n') a_{n,n'-1} - sqrt(n'+1) a_{n,n'+1})
//                        - gamma a_{n,n'}
//   d beta_n/dt = gamma a_{n,n}
// Trace drift beyond 1e-8 aborts with an integrator failure report.
std::vector<DensityBlock> integrate_lindblad(const DensityBlock& rho0,
                                             const SystemConfig& cfg,
                                             const IntegratorSpec& spec);

// Dense matrix-exponential comparison of the factorized interaction
// propagator exp(X) exp(Y) exp(-(gt)^2/2 A A^dag) against exp(X+Y) applied
// to |phi_0, 0>, on a truncated joint photon-mode x phonon space. Returns
// the max amplitude deviation.
double check_glauber_factorization(double gt, int n_max_small);

}  // namespace fbs

#endif
