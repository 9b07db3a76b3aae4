#include "integrate.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace fbs {

namespace {

// Headroom on the boundary-leakage guard: n_max chosen from the Poisson
// tail bound can leave the boundary level itself carrying up to a few
// times trunc_tol of probability without invalidating the interior.
constexpr double kGuardHeadroom = 10.0;

using Vec = std::vector<cplx>;

// Levels carried internally beyond the reported n_max, so that the hard
// coupling cutoff perturbs the reported amplitudes well below the 1e-8
// oracle tolerance rather than at the sqrt(trunc_tol) amplitude scale.
int padded_levels(const SystemConfig& cfg, double gt_end, int initial_top) {
    double tol_pad = std::max(cfg.trunc_tol * 1e-6, 1e-18);
    return std::max(cfg.n_max, initial_top + choose_n_max(gt_end, tol_pad));
}

void axpy(Vec& y, double a, const Vec& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// One classical RK4 step of y' = f(y) with step h, via preallocated scratch.
template <typename F>
void rk4_step(Vec& y, double h, F&& f, Vec& k1, Vec& k2, Vec& k3, Vec& k4,
              Vec& tmp) {
    f(y, k1);
    tmp = y;
    axpy(tmp, 0.5 * h, k1);
    f(tmp, k2);
    tmp = y;
    axpy(tmp, 0.5 * h, k2);
    f(tmp, k3);
    tmp = y;
    axpy(tmp, h, k3);
    f(tmp, k4);
    for (size_t i = 0; i < y.size(); ++i)
        y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

void IntegratorSpec::validate() const {
    if (dt < 0.0) throw std::invalid_argument("dt must be positive");
    if (gt_grid.empty())
        throw std::invalid_argument("gt_grid must be nonempty");
    double prev = -1.0;
    for (double gt : gt_grid) {
        if (gt < 0.0 || gt <= prev)
            throw std::invalid_argument(
                "gt_grid must be nonnegative and strictly increasing");
        prev = gt;
    }
}

double IntegratorSpec::step_for(const SystemConfig& cfg) const {
    if (dt > 0.0) return dt;
    return 0.005 / std::sqrt(static_cast<double>(cfg.n_max));
}

std::vector<LadderState> integrate_schrodinger(const LadderState& psi0,
                                               const SystemConfig& cfg,
                                               const IntegratorSpec& spec) {
    cfg.validate();
    spec.validate();
    if (cfg.gamma != 0.0)
        throw std::invalid_argument(
            "integrate_schrodinger requires gamma = 0; use integrate_lindblad");
    if (psi0.n_max() != cfg.n_max)
        throw std::invalid_argument("psi0 dimension does not match cfg.n_max");
    if (std::abs(psi0.norm2() - 1.0) > 1e-10)
        throw std::invalid_argument("psi0 must be normalized");

    int N = cfg.n_max;
    int initial_top = 0;
    for (int n = 0; n <= N; ++n)
        if (std::norm(psi0.amps[n]) > 0.0) initial_top = n;
    int P = padded_levels(cfg, spec.gt_grid.back(), initial_top);

    // Work in gt units: unit coupling when g > 0, frozen when g = 0.
    SystemConfig unit = cfg;
    unit.g = cfg.g > 0.0 ? 1.0 : 0.0;
    unit.n_max = P;

    int dim = P + 1;
    LadderState scratch_in(P), scratch_out(P);
    auto deriv = [&](const Vec& y, Vec& dy) {
        std::copy(y.begin(), y.begin() + dim, scratch_in.amps.begin());
        apply_hamiltonian(scratch_in, unit, scratch_out);
        std::copy(scratch_out.amps.begin(), scratch_out.amps.end(),
                  dy.begin());
        dy[dim] = {0.0, 0.0};  // vacuum amplitude is decoupled
    };

    Vec y(dim + 1, cplx{0.0, 0.0});
    std::copy(psi0.amps.begin(), psi0.amps.end(), y.begin());
    y[dim] = psi0.vac_amp;

    double h_max = spec.step_for(cfg);
    double guard = kGuardHeadroom * cfg.trunc_tol;

    std::vector<LadderState> traj;
    traj.reserve(spec.gt_grid.size());
    Vec k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());

    double gt = 0.0;
    for (double gt_out : spec.gt_grid) {
        double span = gt_out - gt;
        if (span > 0.0) {
            int steps = std::max(1, static_cast<int>(std::ceil(span / h_max)));
            double h = span / steps;
            if (h < 1e-15)
                throw std::runtime_error("integrator step size underflow");
            for (int s = 0; s < steps; ++s)
                rk4_step(y, h, deriv, k1, k2, k3, k4, tmp);
            gt = gt_out;
        }
        if (std::norm(y[N]) > guard) {
            std::ostringstream msg;
            msg << "truncation leakage |amps[" << N << "]|^2 = "
                << std::norm(y[N]) << " exceeds trunc_tol at gt = " << gt
                << "; increase n_max";
            throw std::runtime_error(msg.str());
        }
        LadderState st(N);
        std::copy(y.begin(), y.begin() + N + 1, st.amps.begin());
        st.vac_amp = y[dim];
        st.t = cfg.g > 0.0 ? gt / cfg.g : gt;
        double full_norm = std::norm(y[dim]);
        for (int n = 0; n < dim; ++n) full_norm += std::norm(y[n]);
        double norm_err = std::abs(full_norm - 1.0);
        if (norm_err > 1e-6) {
            std::ostringstream msg;
            msg << "norm drift " << norm_err << " at gt = " << gt;
            throw std::runtime_error(msg.str());
        }
        traj.push_back(std::move(st));
    }
    return traj;
}

std::vector<DensityBlock> integrate_lindblad(const DensityBlock& rho0,
                                             const SystemConfig& cfg,
                                             const IntegratorSpec& spec) {
    cfg.validate();
    spec.validate();
    if (rho0.n_max() != cfg.n_max)
        throw std::invalid_argument("rho0 dimension does not match cfg.n_max");
    if (std::abs(rho0.trace() - 1.0) > 1e-10)
        throw std::invalid_argument("rho0 must have unit trace");

    int N = cfg.n_max;
    int initial_top = 0;
    for (int n = 0; n <= N; ++n)
        for (int np = 0; np <= N; ++np)
            if (std::norm(rho0.a(n, np)) > 0.0)
                initial_top = std::max(initial_top, std::max(n, np));
    int P = padded_levels(cfg, spec.gt_grid.back(), initial_top);
    int dim = P + 1;
    // In gt units the decay rate enters as gamma/g; for g = 0 the grid is
    // read as gamma*t instead.
    double geff, r;
    if (cfg.g > 0.0) {
        geff = 1.0;
        r = cfg.gamma / cfg.g;
    } else {
        geff = 0.0;
        r = cfg.gamma > 0.0 ? 1.0 : 0.0;
    }

    // Layout: alpha row-major (dim*dim), then beta (dim) in the real parts.
    auto deriv = [&](const Vec& y, Vec& dy) {
        const cplx mi{0.0, -1.0};
        for (int n = 0; n < dim; ++n) {
            for (int np = 0; np < dim; ++np) {
                cplx s{0.0, 0.0};
                if (n > 0 && cfg.coupling_active(n - 1))
                    s += std::sqrt(static_cast<double>(n)) *
                         y[(n - 1) * dim + np];
                if (n < P && cfg.coupling_active(n))
                    s += std::sqrt(static_cast<double>(n + 1)) *
                         y[(n + 1) * dim + np];
                if (np > 0 && cfg.coupling_active(np - 1))
                    s -= std::sqrt(static_cast<double>(np)) *
                         y[n * dim + (np - 1)];
                if (np < P && cfg.coupling_active(np))
                    s -= std::sqrt(static_cast<double>(np + 1)) *
                         y[n * dim + (np + 1)];
                dy[n * dim + np] = mi * geff * s - r * y[n * dim + np];
            }
        }
        for (int n = 0; n < dim; ++n)
            dy[dim * dim + n] = r * y[n * dim + n].real();
    };

    Vec y(dim * dim + dim, cplx{0.0, 0.0});
    for (int n = 0; n <= N; ++n) {
        for (int np = 0; np <= N; ++np) y[n * dim + np] = rho0.a(n, np);
        y[dim * dim + n] = rho0.beta[n];
    }

    double h_max = spec.step_for(cfg);
    std::vector<DensityBlock> traj;
    traj.reserve(spec.gt_grid.size());
    Vec k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());

    double gt = 0.0;
    for (double gt_out : spec.gt_grid) {
        double span = gt_out - gt;
        if (span > 0.0) {
            int steps = std::max(1, static_cast<int>(std::ceil(span / h_max)));
            double h = span / steps;
            for (int s = 0; s < steps; ++s)
                rk4_step(y, h, deriv, k1, k2, k3, k4, tmp);
            gt = gt_out;
        }
        DensityBlock rho(N);
        for (int n = 0; n <= N; ++n) {
            for (int np = 0; np <= N; ++np) rho.a(n, np) = y[n * dim + np];
            rho.beta[n] = y[dim * dim + n].real();
        }
        rho.t = cfg.g > 0.0 ? gt / cfg.g : gt;
        double full_trace = 0.0;
        for (int n = 0; n < dim; ++n)
            full_trace += y[n * dim + n].real() + y[dim * dim + n].real();
        double drift = std::abs(full_trace - 1.0);
        if (drift > 1e-8) {
            std::ostringstream msg;
            msg << "Lindblad trace drift " << drift << " at gt = " << gt;
            throw std::runtime_error(msg.str());
        }
        traj.push_back(std::move(rho));
    }
    return traj;
}

double check_glauber_factorization(double gt, int n_max_small) {
    if (n_max_small < 2 || n_max_small > 12)
        throw std::invalid_argument("n_max_small must be in [2, 12]");
    double lambda = gt * gt;
    // Poisson concentration: require support at least 2 levels inside the
    // truncation boundary.
    if (!(lambda + 4.0 * std::sqrt(lambda) < n_max_small - 2)) {
        std::ostringstream msg;
        msg << "support guard: gt^2 + 4*gt = " << lambda + 4.0 * std::sqrt(lambda)
            << " must stay below n_max_small - 2 = " << n_max_small - 2;
        throw std::invalid_argument(msg.str());
    }

    int N = n_max_small;
    // Pad both ladders by two levels past the support guard so the hard
    // cutoffs contribute below the comparison tolerance, and extend the
    // photon modes above m = 0 so A A^dag acts as the identity there.
    int margin = 2;
    int lowest = -(N + margin);
    int n_photon = N + 2 * margin + 1;  // modes m in [-(N+2), +2]
    int n_phonon = N + margin + 1;      // k in [0, N+2]
    int top = n_phonon - 1;
    int dim = n_photon * n_phonon;
    auto idx = [&](int m, int k) { return (m - lowest) * n_phonon + k; };

    using Mat = Eigen::MatrixXcd;
    Mat A = Mat::Zero(dim, dim), Ad = Mat::Zero(dim, dim);
    Mat B = Mat::Zero(dim, dim), Bd = Mat::Zero(dim, dim);
    for (int m = lowest; m <= margin; ++m) {
        for (int k = 0; k <= top; ++k) {
            int i = idx(m, k);
            if (m - 1 >= lowest) A(idx(m - 1, k), i) = 1.0;   // photon down-shift
            if (m + 1 <= margin) Ad(idx(m + 1, k), i) = 1.0;  // photon up-shift
            if (k > 0) B(idx(m, k - 1), i) = std::sqrt(static_cast<double>(k));
            if (k < top)
                Bd(idx(m, k + 1), i) = std::sqrt(static_cast<double>(k + 1));
        }
    }

    const cplx mi{0.0, -1.0};
    Mat X = mi * gt * (A * Bd);
    Mat Y = mi * gt * (Ad * B);
    Mat AAd = A * Ad;

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(idx(0, 0)) = 1.0;

    Eigen::VectorXcd direct = Mat(X + Y).exp() * psi0;
    Eigen::VectorXcd factored =
        X.exp() * (Y.exp() * (Mat(-0.5 * gt * gt * AAd).exp() * psi0));

    return (direct - factored).cwiseAbs().maxCoeff();
}

}  // namespace fbs
