#include <doctest.h>

#include <cstring>
#include <string>

#include "siegellab.h"

namespace {

std::string payload_of(siegel_run* run) {
    size_t size = 0;
    const char* data = siegel_run_payload(run, &size);
    return std::string(data, size);
}

}  // namespace

TEST_CASE("classify through the C API") {
    siegel_run* run = nullptr;
    const auto status =
        siegel_run_command("classify", R"({"alpha": "golden", "n": 8})", &run);
    REQUIRE(status == SIEGEL_OK);
    REQUIRE(run != nullptr);
    const std::string payload = payload_of(run);
    CHECK(payload.find("\"entries\"") != std::string::npos);
    CHECK(payload.find("\"pz_statistic\"") != std::string::npos);
    CHECK(std::string(siegel_run_content_type(run)) == "application/json");
    CHECK(std::string(siegel_run_envelope(run)).find("\"version\"") != std::string::npos);
    siegel_run_free(run);
}

TEST_CASE("determinism: identical configs give byte-identical payloads") {
    const char* config =
        R"({"alpha": "golden", "model": "P", "r0": 0.25, "factor": 0.5,
            "scales": 3, "grid": 48, "budget": 300, "seed": 7})";
    std::string first;
    for (int i = 0; i < 2; ++i) {
        siegel_run* run = nullptr;
        REQUIRE(siegel_run_command("density-scan", config, &run) == SIEGEL_OK);
        const std::string payload = payload_of(run);
        if (i == 0) first = payload;
        else CHECK(payload == first);
        siegel_run_free(run);
    }
}

TEST_CASE("error paths: status codes and messages") {
    siegel_run* run = nullptr;
    CHECK(siegel_run_command("nonsense", "{}", &run) == SIEGEL_ERR_USAGE);
    CHECK(run == nullptr);
    CHECK(std::strlen(siegel_last_error()) > 0);

    CHECK(siegel_run_command("classify", "{broken json", &run) == SIEGEL_ERR_USAGE);
    CHECK(run == nullptr);

    CHECK(siegel_run_command("classify", R"({"alpha": "bogus"})", &run) == SIEGEL_ERR_USAGE);
    CHECK(run == nullptr);

    CHECK(siegel_run_command(nullptr, "{}", &run) == SIEGEL_ERR_USAGE);
}

TEST_CASE("direct numeric entry points") {
    double rho = 0.0, bound = 0.0;
    REQUIRE(siegel_rotation_number(0.0, 1000, &rho, &bound) == SIEGEL_OK);
    CHECK(rho == doctest::Approx(0.0));
    CHECK(bound == doctest::Approx(1e-3));

    long long M = 0, n0 = 0;
    double zeta = 0.0, lambda = 0.0;
    REQUIRE(siegel_lemma1_constants(1.0, 0.5, &M, &n0, &zeta, &lambda) == SIEGEL_OK);
    CHECK(M == 23);
    CHECK(n0 == 5);
    CHECK(zeta == doctest::Approx(3.11e-8).epsilon(0.01));
    CHECK(lambda > 0.0);
    CHECK(lambda < 1.0);

    double t = 0.0, residual = 0.0;
    REQUIRE(siegel_solve_parameter(0.6180339887498949, 1e-4, &t, &residual) == SIEGEL_OK);
    CHECK(residual <= 1e-4);
    CHECK(t > 0.0);
    CHECK(t < 1.0);
}

TEST_CASE("version string") {
    CHECK(std::string(siegel_version()) == "0.1.0");
}
