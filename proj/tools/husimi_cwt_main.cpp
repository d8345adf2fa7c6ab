// husimi-cwt CLI: entangled Husimi distributions, complex wavelet transforms,
// two-mode Wigner functions, the admissibility diagnostic and the cross-route
// verification battery.
//
// Exit codes: 0 success, 1 usage/config error, 2 verification failure,
// 3 numeric guard tripped.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "husimi_cwt/husimi_cwt.hpp"

namespace {

using namespace husimi_cwt;

constexpr double kDoublingGuard = 1e-6;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string route;
    std::string format;
    int cutoff = -1;
    int quad_order = -1;
    int threads = -1;
    double mu = -1.0;
    bool check_quadrature = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_grid_flags) {
    cmd->add_option("--config", f.config_path, "config document path (default: read stdin)");
    cmd->add_option("--out", f.out_path, "output path (default: stdout)");
    cmd->add_option("--cutoff", f.cutoff, "override the state cutoff")->check(CLI::Range(0, kMaxCutoff));
    cmd->add_option("--quad-order", f.quad_order, "Gauss-Hermite order")->check(CLI::Range(1, 256));
    if (with_grid_flags) {
        cmd->add_option("--route", f.route, "husimi route")
            ->check(CLI::IsMember({"overlap", "cwt", "smoothing", "coherent-closed"}));
        cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_option("--threads", f.threads, "worker count (env HUSIMI_CWT_THREADS as fallback)")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--check-quadrature", f.check_quadrature,
                      "recompute quadrature routes at doubled order; exit 3 if results move > 1e-6");
    }
}

std::string read_config_text(const CommonFlags& f) {
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("", "cannot open config file '" + f.config_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    if (ss.str().empty()) throw ConfigError("", "no --config given and stdin is empty");
    return ss.str();
}

Config load_config(const CommonFlags& f) {
    Config cfg = parse_config(read_config_text(f));
    if (f.cutoff >= 0) {
        cfg.state.cutoff = f.cutoff;
        if (cfg.signal) cfg.signal->cutoff = f.cutoff;
        if (cfg.state.kind == StateKind::fock && (cfg.state.m > f.cutoff || cfg.state.n > f.cutoff))
            throw ConfigError("state.m", "exceeds cutoff");
        if (cfg.state.kind == StateKind::custom)
            throw ConfigError("state.cutoff", "--cutoff cannot resize a custom coefficient list");
    }
    if (f.quad_order > 0) cfg.run.quad_order = f.quad_order;
    if (!f.route.empty()) cfg.run.route = detail::parse_route(f.route, "--route");
    if (!f.format.empty()) cfg.run.jsonl = (f.format == "jsonl");
    if (f.mu > 0.0) cfg.run.mu = f.mu;
    cfg.run.check_quadrature = f.check_quadrature;
    if (f.threads > 0) {
        cfg.run.threads = f.threads;
    } else if (const char* env = std::getenv("HUSIMI_CWT_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) cfg.run.threads = t;
    }
    return cfg;
}

void emit(const CommonFlags& f, const std::string& text) {
    if (f.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(f.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + f.out_path + "'");
    out << text;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string fmt(double v) { return detail::fmt_double(v); }

int cmd_husimi(const CommonFlags& flags) {
    Config cfg = load_config(flags);
    std::vector<std::string> warnings;
    const TwoModeState psi = build_state(cfg.state, &warnings);
    print_warnings(warnings);
    std::optional<std::pair<cplx, cplx>> coherent_ab;
    if (cfg.run.route == Route::coherent_closed) {
        if (cfg.state.kind != StateKind::coherent)
            throw ConfigError("run.route", "coherent-closed route requires a coherent state spec");
        coherent_ab = std::make_pair(cfg.state.alpha, cfg.state.beta);
    }
    double doubling = 0.0;
    const auto records = run_husimi_grid(psi, cfg.grid, cfg.run, coherent_ab,
                                         cfg.run.check_quadrature ? &doubling : nullptr);
    for (const GridRecord& r : records)
        if (!std::isfinite(r.value)) {
            std::cerr << "numeric guard: non-finite value in sweep output\n";
            return 3;
        }
    emit(flags, cfg.run.jsonl ? render_jsonl(records) : render_csv(records));
    if (cfg.run.check_quadrature) {
        std::cerr << "quadrature doubling check: max |delta| = " << fmt(doubling) << "\n";
        if (doubling > kDoublingGuard) return 3;
    }
    return 0;
}

int cmd_cwt(const CommonFlags& flags) {
    Config cfg = load_config(flags);
    std::vector<std::string> warnings;
    const TwoModeState mother = build_state(cfg.state, &warnings);
    TwoModeState signal = cfg.signal ? build_state(*cfg.signal, &warnings)
                                     : make_fock(0, 0, cfg.state.cutoff);
    print_warnings(warnings);
    const QuadratureRule rule = gauss_hermite(cfg.run.quad_order);
    const QuadratureRule rule2 =
        cfg.run.check_quadrature ? gauss_hermite(std::min(2 * cfg.run.quad_order, 256)) : QuadratureRule{};
    const GridSpec& g = cfg.grid;
    std::string out;
    double doubling = 0.0;
    if (!cfg.run.jsonl) out += "z_re,z_im,mu,value_re,value_im,cutoff,quad_order\n";
    for (int i = 0; i < g.samples; ++i)
        for (int j = 0; j < g.samples; ++j) {
            const cplx z(detail::grid_coord(g.re_min, g.re_max, g.samples, i),
                         detail::grid_coord(g.im_min, g.im_max, g.samples, j));
            const CwtQuery q = CwtQuery::ordinary(cfg.run.mu, z);
            const cplx w = cwt_point(signal, mother, q, rule);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                std::cerr << "numeric guard: non-finite transform value\n";
                return 3;
            }
            if (cfg.run.check_quadrature)
                doubling = std::max(doubling, std::abs(cwt_point(signal, mother, q, rule2) - w));
            if (cfg.run.jsonl)
                out += "{\"z_re\":" + fmt(z.real()) + ",\"z_im\":" + fmt(z.imag()) + ",\"mu\":" + fmt(cfg.run.mu) +
                       ",\"value_re\":" + fmt(w.real()) + ",\"value_im\":" + fmt(w.imag()) +
                       ",\"cutoff\":" + std::to_string(mother.cutoff) +
                       ",\"quad_order\":" + std::to_string(cfg.run.quad_order) + "}\n";
            else
                out += fmt(z.real()) + ',' + fmt(z.imag()) + ',' + fmt(cfg.run.mu) + ',' + fmt(w.real()) + ',' +
                       fmt(w.imag()) + ',' + std::to_string(mother.cutoff) + ',' +
                       std::to_string(cfg.run.quad_order) + '\n';
        }
    emit(flags, out);
    if (cfg.run.check_quadrature) {
        std::cerr << "quadrature doubling check: max |delta| = " << fmt(doubling) << "\n";
        if (doubling > kDoublingGuard) return 3;
    }
    return 0;
}

int cmd_wigner(const CommonFlags& flags) {
    Config cfg = load_config(flags);
    std::vector<std::string> warnings;
    TwoModeState psi = build_state(cfg.state, &warnings);
    print_warnings(warnings);
    psi.normalize();
    const WignerEvaluator wig(psi);  // throws when the state support exceeds the series cap
    const GridSpec& g = cfg.grid;
    std::string out;
    if (!cfg.run.jsonl) out += "sigma_re,sigma_im,gamma_re,gamma_im,value,cutoff\n";
    for (int i = 0; i < g.samples; ++i)
        for (int j = 0; j < g.samples; ++j) {
            const cplx sweep(detail::grid_coord(g.re_min, g.re_max, g.samples, i),
                             detail::grid_coord(g.im_min, g.im_max, g.samples, j));
            const cplx sigma = g.sweep == SweepPlane::sigma_plane ? sweep : g.fixed;
            const cplx gamma = g.sweep == SweepPlane::sigma_plane ? g.fixed : sweep;
            const double v = wig.value(sigma, gamma);
            if (cfg.run.jsonl)
                out += "{\"sigma_re\":" + fmt(sigma.real()) + ",\"sigma_im\":" + fmt(sigma.imag()) +
                       ",\"gamma_re\":" + fmt(gamma.real()) + ",\"gamma_im\":" + fmt(gamma.imag()) +
                       ",\"value\":" + fmt(v) + ",\"cutoff\":" + std::to_string(psi.cutoff) + "}\n";
            else
                out += fmt(sigma.real()) + ',' + fmt(sigma.imag()) + ',' + fmt(gamma.real()) + ',' +
                       fmt(gamma.imag()) + ',' + fmt(v) + ',' + std::to_string(psi.cutoff) + '\n';
        }
    emit(flags, out);
    return 0;
}

int cmd_admissibility(const CommonFlags& flags) {
    Config cfg = load_config(flags);
    std::vector<std::string> warnings;
    const TwoModeState psi = build_state(cfg.state, &warnings);
    print_warnings(warnings);
    const cplx a = admissibility_integral(psi, gauss_hermite(cfg.run.quad_order));
    emit(flags, "{\"admissibility_re\": " + fmt(a.real()) + ", \"admissibility_im\": " + fmt(a.imag()) +
                    ", \"quad_order\": " + std::to_string(cfg.run.quad_order) + "}\n");
    return 0;
}

int cmd_verify(const CommonFlags& flags, bool omit_timings) {
    const VerifyReport report = run_verify();
    for (const CheckResult& c : report.checks)
        std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  max_residual=" << fmt(c.max_residual)
                  << "  tol=" << fmt(c.tolerance) << "  (" << c.runtime_ms << " ms)\n";
    emit(flags, render_report_json(report, !omit_timings));
    return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangled Husimi distributions via cross-verified numerical routes"};
    app.require_subcommand(1);

    CommonFlags husimi_flags, cwt_flags, wigner_flags, adm_flags, verify_flags;
    bool omit_timings = false;

    CLI::App* husimi = app.add_subcommand("husimi", "sweep the entangled Husimi distribution over a phase-space grid");
    add_common(husimi, husimi_flags, true);

    CLI::App* cwt = app.add_subcommand("cwt", "complex wavelet transform of the signal state over a z grid");
    add_common(cwt, cwt_flags, true);
    cwt->add_option("--mu", cwt_flags.mu, "dilation mu > 0")->check(CLI::PositiveNumber);

    CLI::App* wigner = app.add_subcommand("wigner", "two-mode Wigner function over a grid");
    add_common(wigner, wigner_flags, true);

    CLI::App* adm = app.add_subcommand("admissibility", "mother-wavelet admissibility diagnostic");
    add_common(adm, adm_flags, false);

    CLI::App* verify = app.add_subcommand("verify", "run the cross-route verification battery");
    verify->add_option("--out", verify_flags.out_path, "report path (default: stdout)");
    verify->add_flag("--omit-timings", omit_timings, "canonical report without runtime fields");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (husimi->parsed()) return cmd_husimi(husimi_flags);
        if (cwt->parsed()) return cmd_cwt(cwt_flags);
        if (wigner->parsed()) return cmd_wigner(wigner_flags);
        if (adm->parsed()) return cmd_admissibility(adm_flags);
        if (verify->parsed()) return cmd_verify(verify_flags, omit_timings);
    } catch (const husimi_cwt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric guard: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
