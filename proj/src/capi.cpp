#include "siegellab.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "siegellab/blaschke.hpp"
#include "siegellab/covering.hpp"
#include "siegellab/io.hpp"
#include "siegellab/runner.hpp"

struct siegel_run {
    std::string payload;
    std::string content_type;
    std::string envelope;
};

namespace {

thread_local std::string g_last_error;

siegel_status capture(const std::exception& e, siegel_status status) {
    g_last_error = e.what();
    return status;
}

}  // namespace

extern "C" {

siegel_status siegel_run_command(const char* subcommand, const char* config_json,
                                 siegel_run** out) {
    if (out == nullptr) return SIEGEL_ERR_USAGE;
    *out = nullptr;
    if (subcommand == nullptr || config_json == nullptr) {
        g_last_error = "null subcommand or config";
        return SIEGEL_ERR_USAGE;
    }
    nlohmann::json config;
    try {
        config = nlohmann::json::parse(config_json);
    } catch (const std::exception& e) {
        return capture(e, SIEGEL_ERR_USAGE);
    }
    try {
        auto result = siegellab::runner::run(subcommand, config);
        auto* run = new siegel_run{std::move(result.payload), std::move(result.content_type),
                                   std::move(result.envelope_json)};
        *out = run;
        return SIEGEL_OK;
    } catch (const std::invalid_argument& e) {
        return capture(e, SIEGEL_ERR_USAGE);
    } catch (const std::domain_error& e) {
        return capture(e, SIEGEL_ERR_DOMAIN);
    } catch (const std::out_of_range& e) {
        return capture(e, SIEGEL_ERR_DOMAIN);
    } catch (const std::exception& e) {
        return capture(e, SIEGEL_ERR_INTERNAL);
    }
}

const char* siegel_run_payload(const siegel_run* run, size_t* size) {
    if (run == nullptr) return nullptr;
    if (size != nullptr) *size = run->payload.size();
    return run->payload.data();
}

const char* siegel_run_content_type(const siegel_run* run) {
    return run ? run->content_type.c_str() : nullptr;
}

const char* siegel_run_envelope(const siegel_run* run) {
    return run ? run->envelope.c_str() : nullptr;
}

siegel_status siegel_run_write(const siegel_run* run, const char* path) {
    if (run == nullptr || path == nullptr) {
        g_last_error = "null run or path";
        return SIEGEL_ERR_USAGE;
    }
    try {
        siegellab::io::atomic_write(path, run->payload);
        return SIEGEL_OK;
    } catch (const std::exception& e) {
        return capture(e, SIEGEL_ERR_IO);
    }
}

void siegel_run_free(siegel_run* run) { delete run; }

const char* siegel_version(void) { return siegellab::runner::kVersion; }

const char* siegel_last_error(void) { return g_last_error.c_str(); }

siegel_status siegel_solve_parameter(double alpha, double tol, double* t_out,
                                     double* residual_out) {
    if (t_out == nullptr) return SIEGEL_ERR_USAGE;
    try {
        const auto solve = siegellab::blaschke::solve_parameter(alpha, tol);
        *t_out = solve.t;
        if (residual_out != nullptr) *residual_out = solve.residual;
        return solve.converged ? SIEGEL_OK : SIEGEL_ERR_DOMAIN;
    } catch (const std::exception& e) {
        return capture(e, SIEGEL_ERR_DOMAIN);
    }
}

siegel_status siegel_rotation_number(double t, long long n_iter, double* rho_out,
                                     double* err_bound_out) {
    if (rho_out == nullptr) return SIEGEL_ERR_USAGE;
    try {
        const auto est = siegellab::blaschke::rotation_number(t, n_iter);
        *rho_out = est.value;
        if (err_bound_out != nullptr) *err_bound_out = est.error_bound;
        return SIEGEL_OK;
    } catch (const std::exception& e) {
        return capture(e, SIEGEL_ERR_DOMAIN);
    }
}

siegel_status siegel_lemma1_constants(double c, double eta, long long* M_out, long long* n0_out,
                                      double* zeta_out, double* lambda_out) {
    try {
        // Exact rational inputs from short decimal literals keeps the (F1)
        // scan faithful for typical CLI-style values.
        char cbuf[64], ebuf[64];
        std::snprintf(cbuf, sizeof(cbuf), "%.12f", c);
        std::snprintf(ebuf, sizeof(ebuf), "%.12f", eta);
        const auto k = siegellab::covering::lemma1_constants(
            siegellab::parse_decimal(cbuf).value, siegellab::parse_decimal(ebuf).value);
        if (M_out != nullptr) *M_out = k.M;
        if (n0_out != nullptr) *n0_out = k.n0;
        if (zeta_out != nullptr) *zeta_out = k.zeta;
        if (lambda_out != nullptr) *lambda_out = k.lambda;
        return SIEGEL_OK;
    } catch (const std::exception& e) {
        return capture(e, SIEGEL_ERR_DOMAIN);
    }
}

}  // extern "C"
