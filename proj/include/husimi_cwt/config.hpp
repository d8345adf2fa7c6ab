#pragma once
// Config-document parsing for the CLI: state specs, grid specs, run options.
//
// The config is a single JSON document, read from file or stdin:
//
// {
//   "state": {"kind": "fock", "m": 1, "n": 1, "cutoff": 25}
//          | {"kind": "coherent", "alpha": {"re":0.5,"im":0.0}, "beta": {...}, "cutoff": 25}
//          | {"kind": "tmsv", "r": 0.5, "cutoff": 20}
//          | {"kind": "custom", "coeffs": [{"re":..,"im":..}, ...], "cutoff": N},
//   "signal": { ... optional second state spec, used by the cwt subcommand ... },
//   "grid":  {"sweep": "sigma-plane" | "gamma-plane",
//             "fixed": {"re":0,"im":0}, "kappa": 1.0,
//             "extent": {"re": [-1.5, 1.5], "im": [-1.5, 1.5]}, "samples": 9},
//   "run":   {"route": "overlap", "quad_order": 64, "threads": 1,
//             "format": "csv", "mu": 1.0}
// }
//
// Defaults: cutoff 25, quad order 64, route overlap. Custom coefficient lists
// must have exactly (cutoff+1)^2 entries (row-major over (m,n)) and are
// renormalized with a warning when the norm deviates from 1 by more than 1e-6.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "husimi_cwt/fock.hpp"

namespace husimi_cwt {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

enum class StateKind { fock, coherent, tmsv, custom };

struct StateSpec {
    StateKind kind = StateKind::fock;
    int cutoff = 25;
    int m = 0, n = 0;          // fock
    cplx alpha, beta;          // coherent
    double r = 0.0;            // tmsv
    std::vector<cplx> coeffs;  // custom, (cutoff+1)^2 row-major
};

enum class SweepPlane { sigma_plane, gamma_plane };

struct GridSpec {
    SweepPlane sweep = SweepPlane::sigma_plane;
    cplx fixed;  // value of the non-swept variable
    double kappa = 1.0;
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
    int samples = 9;
};

enum class Route { overlap, cwt, smoothing, coherent_closed };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::overlap: return "overlap";
        case Route::cwt: return "cwt";
        case Route::smoothing: return "smoothing";
        case Route::coherent_closed: return "coherent-closed";
    }
    return "?";
}

struct RunOptions {
    Route route = Route::overlap;
    int quad_order = 64;
    int threads = 1;
    bool jsonl = false;
    double mu = 1.0;               // cwt subcommand dilation
    bool check_quadrature = false; // recompute quadrature routes at doubled order
};

struct Config {
    StateSpec state;
    std::optional<StateSpec> signal;
    GridSpec grid;
    RunOptions run;
    std::vector<std::string> warnings;
};

namespace detail {

using nlohmann::json;

inline double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

inline int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    return j.get<int>();
}

inline cplx require_complex(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw ConfigError(path, "expected {\"re\": <number>, \"im\": <number>}");
    return {require_number(j.at("re"), path + ".re"), require_number(j.at("im"), path + ".im")};
}

inline StateSpec parse_state_spec(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    if (!j.contains("kind")) throw ConfigError(path + ".kind", "missing");
    const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    StateSpec s;
    if (j.contains("cutoff")) s.cutoff = require_int(j.at("cutoff"), path + ".cutoff");
    if (s.cutoff < 0 || s.cutoff > kMaxCutoff)
        throw ConfigError(path + ".cutoff", "outside [0, " + std::to_string(kMaxCutoff) + "]");
    if (kind == "fock") {
        s.kind = StateKind::fock;
        if (!j.contains("m")) throw ConfigError(path + ".m", "missing");
        if (!j.contains("n")) throw ConfigError(path + ".n", "missing");
        s.m = require_int(j.at("m"), path + ".m");
        s.n = require_int(j.at("n"), path + ".n");
        if (s.m < 0) throw ConfigError(path + ".m", "must be >= 0");
        if (s.n < 0) throw ConfigError(path + ".n", "must be >= 0");
        if (s.m > s.cutoff) throw ConfigError(path + ".m", "exceeds cutoff");
        if (s.n > s.cutoff) throw ConfigError(path + ".n", "exceeds cutoff");
    } else if (kind == "coherent") {
        s.kind = StateKind::coherent;
        if (!j.contains("alpha")) throw ConfigError(path + ".alpha", "missing");
        if (!j.contains("beta")) throw ConfigError(path + ".beta", "missing");
        s.alpha = require_complex(j.at("alpha"), path + ".alpha");
        s.beta = require_complex(j.at("beta"), path + ".beta");
    } else if (kind == "tmsv") {
        s.kind = StateKind::tmsv;
        if (!j.contains("r")) throw ConfigError(path + ".r", "missing");
        s.r = require_number(j.at("r"), path + ".r");
    } else if (kind == "custom") {
        s.kind = StateKind::custom;
        if (!j.contains("coeffs") || !j.at("coeffs").is_array())
            throw ConfigError(path + ".coeffs", "missing coefficient array");
        const auto& arr = j.at("coeffs");
        const size_t want = static_cast<size_t>((s.cutoff + 1) * (s.cutoff + 1));
        if (arr.size() != want)
            throw ConfigError(path + ".coeffs", "expected " + std::to_string(want) +
                                                    " entries ((cutoff+1)^2), got " + std::to_string(arr.size()));
        s.coeffs.reserve(want);
        for (size_t i = 0; i < arr.size(); ++i)
            s.coeffs.push_back(require_complex(arr[i], path + ".coeffs[" + std::to_string(i) + "]"));
    } else {
        throw ConfigError(path + ".kind", "unknown kind '" + kind + "'");
    }
    return s;
}

inline GridSpec parse_grid_spec(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    GridSpec g;
    if (j.contains("sweep")) {
        const std::string sweep = j.at("sweep").is_string() ? j.at("sweep").get<std::string>() : "";
        if (sweep == "sigma-plane")
            g.sweep = SweepPlane::sigma_plane;
        else if (sweep == "gamma-plane")
            g.sweep = SweepPlane::gamma_plane;
        else
            throw ConfigError(path + ".sweep", "expected \"sigma-plane\" or \"gamma-plane\"");
    }
    if (j.contains("fixed")) g.fixed = require_complex(j.at("fixed"), path + ".fixed");
    if (j.contains("kappa")) g.kappa = require_number(j.at("kappa"), path + ".kappa");
    if (!(g.kappa > 0.0)) throw ConfigError(path + ".kappa", "must be > 0");
    if (j.contains("extent")) {
        const auto& e = j.at("extent");
        if (!e.is_object()) throw ConfigError(path + ".extent", "expected {\"re\": [min,max], \"im\": [min,max]}");
        auto axis = [&](const char* name, double& lo, double& hi) {
            if (!e.contains(name)) return;
            const auto& a = e.at(name);
            const std::string apath = path + ".extent." + name;
            if (!a.is_array() || a.size() != 2) throw ConfigError(apath, "expected [min, max]");
            lo = require_number(a[0], apath + "[0]");
            hi = require_number(a[1], apath + "[1]");
            if (!(lo < hi)) throw ConfigError(apath, "min must be < max");
        };
        axis("re", g.re_min, g.re_max);
        axis("im", g.im_min, g.im_max);
    }
    if (j.contains("samples")) g.samples = require_int(j.at("samples"), path + ".samples");
    if (g.samples < 2) throw ConfigError(path + ".samples", "must be >= 2");
    return g;
}

inline Route parse_route(const std::string& name, const std::string& path) {
    if (name == "overlap") return Route::overlap;
    if (name == "cwt") return Route::cwt;
    if (name == "smoothing") return Route::smoothing;
    if (name == "coherent-closed") return Route::coherent_closed;
    throw ConfigError(path, "unknown route '" + name + "'");
}

inline RunOptions parse_run_options(const json& j, const std::string& path) {
    RunOptions r;
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    if (j.contains("route"))
        r.route = parse_route(j.at("route").is_string() ? j.at("route").get<std::string>() : "", path + ".route");
    if (j.contains("quad_order")) r.quad_order = require_int(j.at("quad_order"), path + ".quad_order");
    if (r.quad_order < 1 || r.quad_order > 256) throw ConfigError(path + ".quad_order", "outside [1,256]");
    if (j.contains("threads")) r.threads = require_int(j.at("threads"), path + ".threads");
    if (r.threads < 1) throw ConfigError(path + ".threads", "must be >= 1");
    if (j.contains("format")) {
        const std::string f = j.at("format").is_string() ? j.at("format").get<std::string>() : "";
        if (f == "csv")
            r.jsonl = false;
        else if (f == "jsonl")
            r.jsonl = true;
        else
            throw ConfigError(path + ".format", "expected \"csv\" or \"jsonl\"");
    }
    if (j.contains("mu")) {
        r.mu = require_number(j.at("mu"), path + ".mu");
        if (!(r.mu > 0.0)) throw ConfigError(path + ".mu", "must be > 0");
    }
    return r;
}

}  // namespace detail

inline Config parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "top-level document must be an object");
    Config cfg;
    if (!doc.contains("state")) throw ConfigError("state", "missing");
    cfg.state = detail::parse_state_spec(doc.at("state"), "state");
    if (doc.contains("signal")) cfg.signal = detail::parse_state_spec(doc.at("signal"), "signal");
    if (doc.contains("grid")) cfg.grid = detail::parse_grid_spec(doc.at("grid"), "grid");
    if (doc.contains("run")) cfg.run = detail::parse_run_options(doc.at("run"), "run");
    return cfg;
}

/// StateSpec -> TwoModeState. Custom coefficient lists are renormalized with a
/// recorded warning when their norm deviates from 1 by more than 1e-6.
inline TwoModeState build_state(const StateSpec& spec, std::vector<std::string>* warnings = nullptr) {
    switch (spec.kind) {
        case StateKind::fock:
            return make_fock(spec.m, spec.n, spec.cutoff);
        case StateKind::coherent:
            return make_coherent(spec.alpha, spec.beta, spec.cutoff);
        case StateKind::tmsv:
            return make_tmsv(spec.r, spec.cutoff);
        case StateKind::custom: {
            TwoModeState s(spec.cutoff);
            s.coeffs = spec.coeffs;
            s.captured_norm = s.squared_norm();
            if (std::abs(s.captured_norm - 1.0) > 1e-6) {
                if (warnings)
                    warnings->push_back("state.coeffs: norm " + std::to_string(s.captured_norm) +
                                        " deviates from 1; renormalizing");
                s.normalize();
            }
            return s;
        }
    }
    throw std::logic_error("build_state: unreachable");
}

}  // namespace husimi_cwt
