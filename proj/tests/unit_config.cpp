#include "doctest.h"

#include <cmath>
#include <string>

#include "husimi_cwt/config.hpp"
#include "husimi_cwt/grid.hpp"
#include "husimi_cwt/verify.hpp"

using namespace husimi_cwt;

namespace {

const char* kFockConfig = R"({
  "state": {"kind": "fock", "m": 1, "n": 1, "cutoff": 25},
  "grid": {"sweep": "sigma-plane", "fixed": {"re": 0.0, "im": 0.0}, "kappa": 1.0,
           "extent": {"re": [-1.0, 1.0], "im": [-1.0, 1.0]}, "samples": 3},
  "run": {"route": "overlap", "quad_order": 48}
})";

}  // namespace

TEST_CASE("parse_config reads a fock spec with defaults") {
    const Config cfg = parse_config(kFockConfig);
    CHECK(cfg.state.kind == StateKind::fock);
    CHECK(cfg.state.m == 1);
    CHECK(cfg.state.n == 1);
    CHECK(cfg.state.cutoff == 25);
    CHECK(cfg.grid.samples == 3);
    CHECK(cfg.run.quad_order == 48);
    CHECK(cfg.run.route == Route::overlap);
    CHECK(cfg.run.threads == 1);
}

TEST_CASE("parse_config reads tmsv and coherent specs") {
    const Config t = parse_config(R"({"state": {"kind": "tmsv", "r": 0.5, "cutoff": 20}})");
    CHECK(t.state.kind == StateKind::tmsv);
    CHECK(t.state.r == doctest::Approx(0.5));
    CHECK(t.run.quad_order == 64);  // default
    CHECK(t.state.cutoff == 20);

    const Config c = parse_config(
        R"({"state": {"kind": "coherent", "alpha": {"re": 0.5, "im": 0.0}, "beta": {"re": 0.0, "im": -0.3}}})");
    CHECK(c.state.kind == StateKind::coherent);
    CHECK(c.state.cutoff == 25);  // default
    CHECK(c.state.alpha == cplx(0.5, 0.0));
    CHECK(c.state.beta == cplx(0.0, -0.3));
}

TEST_CASE("parse_config diagnostics carry the field path") {
    try {
        parse_config(R"({"state": {"kind": "fock", "m": 30, "n": 0, "cutoff": 25}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "state.m");
        CHECK(std::string(e.what()).find("exceeds cutoff") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(R"({"state": {"kind": "squeezed-cat"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"grid": {}})"), ConfigError);  // missing state
    CHECK_THROWS_AS(parse_config(R"({"state":{"kind":"fock","m":0,"n":0},"grid":{"samples":1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"state":{"kind":"fock","m":0,"n":0},"grid":{"kappa":-2.0}})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"state":{"kind":"fock","m":0,"n":0},"grid":{"extent":{"re":[1.0,-1.0]}}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"state":{"kind":"fock","m":0,"n":0},"run":{"route":"magic"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"state":{"kind":"fock","m":0,"n":0},"run":{"quad_order":0}})"), ConfigError);
}

TEST_CASE("optional signal spec parses for the cwt subcommand") {
    const Config cfg = parse_config(R"({
      "state": {"kind": "fock", "m": 1, "n": 0, "cutoff": 12},
      "signal": {"kind": "tmsv", "r": 0.3, "cutoff": 12},
      "run": {"mu": 2.0}})");
    REQUIRE(cfg.signal.has_value());
    CHECK(cfg.signal->kind == StateKind::tmsv);
    CHECK(cfg.run.mu == doctest::Approx(2.0));
    CHECK_FALSE(parse_config(R"({"state": {"kind": "fock", "m": 0, "n": 0}})").signal.has_value());
}

TEST_CASE("custom states validate their shape and renormalize with a warning") {
    // (cutoff+1)^2 = 4 coefficients at cutoff 1; deliberately sub-normalized
    const Config cfg = parse_config(R"({
      "state": {"kind": "custom", "cutoff": 1,
                "coeffs": [{"re": 0.5, "im": 0.0}, {"re": 0.0, "im": 0.0},
                           {"re": 0.0, "im": 0.0}, {"re": 0.0, "im": 0.0}]}})");
    std::vector<std::string> warnings;
    const TwoModeState s = build_state(cfg.state, &warnings);
    CHECK(warnings.size() == 1);
    CHECK(warnings[0].find("renormalizing") != std::string::npos);
    CHECK(std::abs(s.squared_norm() - 1.0) < 1e-12);

    CHECK_THROWS_AS(parse_config(R"({"state": {"kind": "custom", "cutoff": 1, "coeffs": [{"re":1,"im":0}]}})"),
                    ConfigError);
}

TEST_CASE("husimi grid sweeps are row-major with the documented header") {
    const Config cfg = parse_config(kFockConfig);
    const TwoModeState vac = make_fock(0, 0, 10);
    const auto records = run_husimi_grid(vac, cfg.grid, cfg.run);
    REQUIRE(records.size() == 9);
    // row-major: real axis outer, imaginary inner
    CHECK(records[0].sigma == cplx(-1.0, -1.0));
    CHECK(records[1].sigma == cplx(-1.0, 0.0));
    CHECK(records[3].sigma == cplx(0.0, -1.0));
    // center node of the vacuum sweep is F_h(0,0) = 1
    CHECK(records[4].sigma == cplx(0.0, 0.0));
    CHECK(records[4].value == doctest::Approx(1.0));
    const std::string csv = render_csv(records);
    CHECK(csv.rfind("sigma_re,sigma_im,gamma_re,gamma_im,kappa,value,route,cutoff,quad_order\n", 0) == 0);
    CHECK(csv.find("1.000000000000e+00") != std::string::npos);
}

TEST_CASE("vacuum sweep node value matches the closed form") {
    GridSpec grid;
    grid.kappa = 2.0;
    grid.samples = 3;
    RunOptions run;
    const auto records = run_husimi_grid(make_fock(0, 0, 10), grid, run);
    // node sigma = 1 + 0i is index (re=2, im=1)
    const GridRecord& r = records[2 * 3 + 1];
    CHECK(r.sigma == cplx(1.0, 0.0));
    CHECK(std::abs(r.value - (8.0 / 9.0) * std::exp(-2.0 / 3.0)) < 1e-9);
}

TEST_CASE("gamma-plane sweeps hold sigma fixed") {
    GridSpec grid;
    grid.sweep = SweepPlane::gamma_plane;
    grid.fixed = cplx(0.3, -0.1);
    grid.samples = 2;
    RunOptions run;
    const auto records = run_husimi_grid(make_fock(0, 0, 8), grid, run);
    for (const GridRecord& r : records) CHECK(r.sigma == grid.fixed);
    CHECK(records[0].gamma == cplx(-1.0, -1.0));
}

TEST_CASE("cwt and overlap routes agree on a grid") {
    GridSpec grid;
    grid.samples = 3;
    grid.kappa = 1.0;
    grid.fixed = cplx(0.2, 0.1);
    RunOptions run;
    run.quad_order = 64;
    const TwoModeState psi = make_fock(1, 1, 25);
    run.route = Route::overlap;
    const auto overlap = run_husimi_grid(psi, grid, run);
    run.route = Route::cwt;
    const auto cwt = run_husimi_grid(psi, grid, run);
    double worst = 0.0;
    for (size_t k = 0; k < overlap.size(); ++k) worst = std::max(worst, std::abs(overlap[k].value - cwt[k].value));
    CHECK(worst <= 1e-6);
}

TEST_CASE("grid output is byte-identical across runs and thread counts") {
    GridSpec grid;
    grid.samples = 4;
    grid.kappa = 0.5;
    RunOptions run;
    run.quad_order = 32;
    const TwoModeState psi = make_fock(1, 0, 12);
    run.threads = 2;
    const std::string a = render_csv(run_husimi_grid(psi, grid, run));
    const std::string b = render_csv(run_husimi_grid(psi, grid, run));
    CHECK(a == b);
    run.threads = 1;
    const std::string c = render_csv(run_husimi_grid(psi, grid, run));
    CHECK(a == c);
}

TEST_CASE("jsonl rows flag quadrature-backed smoothing values") {
    GridSpec grid;
    grid.samples = 2;
    RunOptions run;
    run.quad_order = 16;
    run.route = Route::smoothing;
    const auto records = run_husimi_grid(make_fock(1, 0, 2), grid, run);
    const std::string jsonl = render_jsonl(records);
    CHECK(jsonl.find("\"quadrature\":true") != std::string::npos);
    run.route = Route::overlap;
    const std::string plain = render_jsonl(run_husimi_grid(make_fock(1, 0, 2), grid, run));
    CHECK(plain.find("\"quadrature\"") == std::string::npos);
    CHECK(plain.find("\"route\":\"overlap\"") != std::string::npos);
}

TEST_CASE("coherent-closed route requires coherent labels") {
    GridSpec grid;
    grid.samples = 2;
    RunOptions run;
    run.route = Route::coherent_closed;
    CHECK_THROWS_AS(run_husimi_grid(make_fock(0, 0, 4), grid, run), std::invalid_argument);
    const auto records = run_husimi_grid(make_coherent(cplx(0.2, 0), cplx(0, 0.1), 16), grid, run,
                                         std::make_pair(cplx(0.2, 0.0), cplx(0.0, 0.1)));
    CHECK(records.size() == 4);
    for (const auto& r : records) CHECK(r.value >= 0.0);
}

TEST_CASE("quadrature doubling diagnostic stays quiet on smooth sweeps") {
    GridSpec grid;
    grid.samples = 2;
    RunOptions run;
    run.route = Route::cwt;
    run.quad_order = 64;
    double doubling = 1.0;
    run_husimi_grid(make_fock(1, 0, 12), grid, run, std::nullopt, &doubling);
    CHECK(doubling < 1e-9);
}

TEST_CASE("injected sign fault in the Hermite recurrence is detected") {
    const CheckResult healthy = check_hermite_engine(false);
    CHECK(healthy.pass);
    const CheckResult mutated = check_hermite_engine(true);
    CHECK_FALSE(mutated.pass);
    CHECK(mutated.max_residual > 1e-3);
}

TEST_CASE("verify report rendering is canonical without runtimes") {
    VerifyReport report;
    report.checks.push_back({"alpha", 1e-9, 1e-6, true, 12.5});
    report.checks.push_back({"beta", 2e-3, 1e-3, false, 7.25});
    const std::string with = render_report_json(report, true);
    const std::string without = render_report_json(report, false);
    CHECK(with.find("runtime_ms") != std::string::npos);
    CHECK(without.find("runtime_ms") == std::string::npos);
    CHECK(without.find("\"all_pass\": false") != std::string::npos);
    CHECK(without.find("\"name\": \"alpha\"") != std::string::npos);
}
