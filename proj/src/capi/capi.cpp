#include "fbs/fbs.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "../core/analytic.hpp"
#include "../core/experiments.hpp"
#include "../core/ladder.hpp"

struct fbs_config {
    fbs::SystemConfig cfg;
};

struct fbs_experiment {
    fbs::ExperimentSpec spec;
};

struct fbs_result {
    fbs::ExperimentResult result;
};

namespace {

thread_local std::string g_last_error;

fbs_status fail(fbs_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename F>
fbs_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        return fail(FBS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(FBS_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FBS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FBS_ERR_INTERNAL, e.what());
    }
}

}  // namespace

extern "C" {

const char* fbs_version(void) { return fbs::kVersion; }

const char* fbs_last_error(void) { return g_last_error.c_str(); }

fbs_status fbs_config_create(fbs_config** out) {
    if (!out) return fail(FBS_ERR_INVALID_ARGUMENT, "out is NULL");
    return guarded([&] {
        *out = new fbs_config{};
        return FBS_OK;
    });
}

fbs_status fbs_config_load(const char* path, fbs_config** out) {
    if (!path || !out)
        return fail(FBS_ERR_INVALID_ARGUMENT, "path/out is NULL");
    return guarded([&]() -> fbs_status {
        try {
            auto cfg = fbs::load_config_file(path);
            *out = new fbs_config{cfg};
            return FBS_OK;
        } catch (const std::runtime_error& e) {
            return fail(FBS_ERR_IO, e.what());
        }
    });
}

fbs_status fbs_config_set(fbs_config* cfg, const char* key,
                          const char* value) {
    if (!cfg || !key || !value)
        return fail(FBS_ERR_INVALID_ARGUMENT, "cfg/key/value is NULL");
    return guarded([&] {
        fbs::apply_override(cfg->cfg, key, value);
        cfg->cfg.validate();
        return FBS_OK;
    });
}

int fbs_config_n_max(const fbs_config* cfg) {
    return cfg ? cfg->cfg.n_max : -1;
}

void fbs_config_destroy(fbs_config* cfg) { delete cfg; }

fbs_status fbs_choose_n_max(double gt_max, double trunc_tol, int* out) {
    if (!out) return fail(FBS_ERR_INVALID_ARGUMENT, "out is NULL");
    if (!(gt_max >= 0.0))
        return fail(FBS_ERR_INVALID_ARGUMENT, "gt_max must be nonnegative");
    if (!(trunc_tol > 0.0 && trunc_tol < 1.0))
        return fail(FBS_ERR_INVALID_ARGUMENT, "trunc_tol must be in (0, 1)");
    return guarded([&] {
        *out = fbs::choose_n_max(gt_max, trunc_tol);
        return FBS_OK;
    });
}

fbs_status fbs_herald_probabilities(const fbs_config* cfg, double gt,
                                    double* probs, size_t len,
                                    double* no_click) {
    if (!cfg || !probs)
        return fail(FBS_ERR_INVALID_ARGUMENT, "cfg/probs is NULL");
    if (len > static_cast<size_t>(cfg->cfg.n_max) + 1)
        return fail(FBS_ERR_INVALID_ARGUMENT, "len exceeds n_max + 1");
    return guarded([&] {
        auto table = fbs::herald_probabilities(gt, cfg->cfg);
        for (size_t j = 0; j < len; ++j) probs[j] = table.probs[j];
        if (no_click) *no_click = table.no_click;
        return FBS_OK;
    });
}

fbs_status fbs_experiment_create(const char* name, fbs_experiment** out) {
    if (!name || !out)
        return fail(FBS_ERR_INVALID_ARGUMENT, "name/out is NULL");
    return guarded([&]() -> fbs_status {
        const auto& names = fbs::ExperimentSpec::known_names();
        if (std::find(names.begin(), names.end(), name) == names.end())
            return fail(FBS_ERR_INVALID_ARGUMENT,
                        std::string("unknown experiment: ") + name);
        auto* exp = new fbs_experiment{};
        exp->spec.name = name;
        *out = exp;
        return FBS_OK;
    });
}

fbs_status fbs_experiment_set_config_file(fbs_experiment* exp,
                                          const char* path) {
    if (!exp || !path)
        return fail(FBS_ERR_INVALID_ARGUMENT, "exp/path is NULL");
    exp->spec.config_path = path;
    return FBS_OK;
}

fbs_status fbs_experiment_set_output_dir(fbs_experiment* exp,
                                         const char* dir) {
    if (!exp || !dir) return fail(FBS_ERR_INVALID_ARGUMENT, "exp/dir is NULL");
    exp->spec.out_dir = dir;
    return FBS_OK;
}

fbs_status fbs_experiment_set_seed(fbs_experiment* exp, uint64_t seed) {
    if (!exp) return fail(FBS_ERR_INVALID_ARGUMENT, "exp is NULL");
    exp->spec.seed = seed;
    return FBS_OK;
}

fbs_status fbs_experiment_set_override(fbs_experiment* exp, const char* key,
                                       const char* value) {
    if (!exp || !key || !value)
        return fail(FBS_ERR_INVALID_ARGUMENT, "exp/key/value is NULL");
    exp->spec.overrides.emplace_back(key, value);
    return FBS_OK;
}

fbs_status fbs_experiment_run(fbs_experiment* exp, fbs_result** out) {
    if (!exp || !out)
        return fail(FBS_ERR_INVALID_ARGUMENT, "exp/out is NULL");
    return guarded([&]() -> fbs_status {
        auto result = fbs::run_experiment(exp->spec);
        *out = new fbs_result{std::move(result)};
        if (!(*out)->result.pass)
            return fail(FBS_ERR_CHECK_FAILED,
                        "experiment completed with failed assertions");
        return FBS_OK;
    });
}

void fbs_experiment_destroy(fbs_experiment* exp) { delete exp; }

int fbs_result_passed(const fbs_result* res) {
    return res && res->result.pass ? 1 : 0;
}

const char* fbs_result_summary(const fbs_result* res) {
    return res ? res->result.summary.c_str() : "";
}

size_t fbs_result_output_count(const fbs_result* res) {
    return res ? res->result.outputs.size() : 0;
}

const char* fbs_result_output_path(const fbs_result* res, size_t i) {
    if (!res || i >= res->result.outputs.size()) return nullptr;
    return res->result.outputs[i].c_str();
}

void fbs_result_destroy(fbs_result* res) { delete res; }

}  // extern "C"
