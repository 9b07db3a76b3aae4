#include "ladder.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fbs {

void SystemConfig::validate() const {
    if (!(g >= 0.0) || !std::isfinite(g))
        throw std::invalid_argument("g must be nonnegative");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be nonnegative");
    if (!std::isfinite(omega_p))
        throw std::invalid_argument("omega_p must be finite");
    if (!std::isfinite(Omega))
        throw std::invalid_argument("Omega must be finite");
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (!(trunc_tol > 0.0 && trunc_tol < 1.0))
        throw std::invalid_argument("trunc_tol must be in (0, 1)");
}

double SystemConfig::gamma_t(double gt) const {
    if (gamma == 0.0) return 0.0;
    if (g <= 0.0)
        throw std::invalid_argument(
            "gamma > 0 requires g > 0 to express time through gt");
    return (gamma / g) * gt;
}

bool SystemConfig::coupling_active(int n) const {
    return suppressed_modes.count(-n) == 0 &&
           suppressed_modes.count(-(n + 1)) == 0;
}

namespace {

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument(key + ": not a number: '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument(key + ": not an integer: '" + v + "'");
    }
}

std::set<int> parse_mode_list(const std::string& v) {
    std::set<int> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
        std::istringstream ws(item);
        std::string tok;
        while (ws >> tok) out.insert(parse_int("suppressed_modes", tok));
    }
    return out;
}

}  // namespace

void apply_override(SystemConfig& cfg, const std::string& key,
                    const std::string& value) {
    if (key == "g")
        cfg.g = parse_double(key, value);
    else if (key == "gamma")
        cfg.gamma = parse_double(key, value);
    else if (key == "omega_p")
        cfg.omega_p = parse_double(key, value);
    else if (key == "Omega")
        cfg.Omega = parse_double(key, value);
    else if (key == "n_max")
        cfg.n_max = parse_int(key, value);
    else if (key == "trunc_tol")
        cfg.trunc_tol = parse_double(key, value);
    else if (key == "suppressed_modes")
        cfg.suppressed_modes = parse_mode_list(value);
    else
        throw std::invalid_argument("unknown config key: " + key);
}

SystemConfig make_config(const std::map<std::string, std::string>& raw) {
    SystemConfig cfg;
    for (const auto& [k, v] : raw) apply_override(cfg, k, v);
    cfg.validate();
    return cfg;
}

SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{}
                                          : s.substr(b, e - b + 1);
        };
        raw[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return make_config(raw);
}

int choose_n_max(double gt_max, double trunc_tol) {
    double lambda = gt_max * gt_max;
    if (lambda == 0.0) return 1;
    // walk N upward past the mean until the directly summed tail drops
    // below tolerance
    for (int n = 1;; ++n) {
        if (n < lambda) continue;
        if (poisson_tail(lambda, n) < trunc_tol) return n;
    }
}

double LadderState::norm2() const {
    double s = std::norm(vac_amp);
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

std::vector<double> LadderState::probabilities() const {
    std::vector<double> p(amps.size());
    for (size_t n = 0; n < amps.size(); ++n) p[n] = std::norm(amps[n]);
    return p;
}

double DensityBlock::trace() const {
    double s = 0.0;
    for (int n = 0; n <= n_max(); ++n) s += a(n, n).real() + beta[n];
    return s;
}

void apply_hamiltonian(const LadderState& state, const SystemConfig& cfg,
                       LadderState& deriv) {
    int N = state.n_max();
    if (N != cfg.n_max)
        throw std::invalid_argument("state dimension does not match cfg.n_max");
    if (deriv.n_max() != N) deriv = LadderState(N);
    const cplx mi{0.0, -1.0};
    for (int n = 0; n <= N; ++n) {
        cplx d{0.0, 0.0};
        if (n > 0 && cfg.coupling_active(n - 1))
            d += std::sqrt(static_cast<double>(n)) * state.amps[n - 1];
        if (n < N && cfg.coupling_active(n))
            d += std::sqrt(static_cast<double>(n + 1)) * state.amps[n + 1];
        deriv.amps[n] = mi * cfg.g * d;
    }
    deriv.vac_amp = {0.0, 0.0};
    deriv.t = state.t;
}

std::vector<std::vector<double>> coupling_matrix(const SystemConfig& cfg) {
    int dim = cfg.n_max + 1;
    std::vector<std::vector<double>> H(dim, std::vector<double>(dim, 0.0));
    for (int n = 0; n + 1 < dim; ++n) {
        if (!cfg.coupling_active(n)) continue;
        double c = cfg.g * std::sqrt(static_cast<double>(n + 1));
        H[n][n + 1] = c;
        H[n + 1][n] = c;
    }
    return H;
}

LadderState with_free_phase(const LadderState& state, const SystemConfig& cfg) {
    LadderState out = state;
    cplx phase = std::exp(cplx{0.0, -cfg.omega_p * state.t});
    for (auto& a : out.amps) a *= phase;
    return out;
}

}  // namespace fbs
