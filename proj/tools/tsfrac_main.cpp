// tsfrac: fractional integrals, derivatives and initial value problems on
// bounded time scales. Subcommands: gamma, fracint, fracder, solve, verify.
//
// Exit codes: 0 ok, 2 validation error, 3 numerical domain error,
// 4 solver did not converge (outputs still written), 5 verification failed.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsfrac/scale_io.hpp"
#include "tsfrac/tsfrac.hpp"

namespace {

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tsfrac::IoError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw tsfrac::IoError("failed writing '" + path + "'");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        write_text(out_path, content);
}

double parse_number(const std::string& text, const char* flag) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw tsfrac::BadRange(std::string(flag) + " expects a number, got '" + text + "'");
    return v;
}

tsfrac::Expr parse_fn(const std::string& text, bool allow_y) {
    tsfrac::Expr e = tsfrac::Expr::parse(text);
    if (!allow_y && e.depends_on_y())
        throw tsfrac::BadRange("--fn must be a function of t only");
    return e;
}

struct CommonArgs {
    std::string scale_file;
    std::string fn = "1";
    double alpha = 0.5;
    double step = 1e-3;
    std::string out;
};

// fracint / fracder share everything except the operator.
int run_frac(const CommonArgs& c, const std::string& a_text, const std::string& t_text,
             bool derivative) {
    tsfrac::TimeScale scale = tsfrac::load_scale(c.scale_file);
    tsfrac::FracOrder order(c.alpha);
    tsfrac::Expr fn = parse_fn(c.fn, false);
    tsfrac::GridFunction h = tsfrac::sample(scale, fn, c.step);
    const double a = a_text.empty() ? scale.min() : parse_number(a_text, "--a");

    std::ostringstream os;
    os << "t,value\n";
    if (t_text == "all") {
        tsfrac::GridFunction vals = derivative ? tsfrac::frac_derivative_grid(h, a, order)
                                               : tsfrac::frac_integral_grid(h, a, order);
        for (std::size_t i = 0; i < vals.size(); ++i)
            os << fmt12(vals.grid->node(i)) << ',' << fmt12(vals.values[i]) << '\n';
    } else {
        const double t = parse_number(t_text, "--t");
        const double v = derivative ? tsfrac::frac_derivative(h, a, order, t)
                                    : tsfrac::frac_integral(h, a, order, t);
        os << fmt12(t) << ',' << fmt12(v) << '\n';
    }
    emit(c.out, os.str());
    return 0;
}

std::string report_json(const tsfrac::IVProblem& p, const tsfrac::SolverReport& rep) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema\": 1,\n";
    os << "  \"alpha\": " << fmt12(p.alpha) << ",\n";
    os << "  \"t0\": " << fmt12(p.t0) << ",\n";
    os << "  \"horizon\": " << fmt12(p.horizon) << ",\n";
    os << "  \"step\": " << fmt12(p.step) << ",\n";
    os << "  \"tol\": " << fmt12(p.tol) << ",\n";
    os << "  \"max_iter\": " << p.max_iter << ",\n";
    os << "  \"iterations\": " << rep.iterations << ",\n";
    os << "  \"converged\": " << (rep.converged ? "true" : "false") << ",\n";
    os << "  \"contraction_c\": " << fmt12(rep.contraction_c) << ",\n";
    os << "  \"lipschitz_L\": " << fmt12(rep.lipschitz_L) << ",\n";
    os << "  \"bound_M\": " << fmt12(rep.bound_M) << ",\n";
    os << "  \"rho\": " << fmt12(rep.rho) << ",\n";
    os << "  \"final_residual\": " << fmt12(rep.final_residual) << ",\n";
    os << "  \"residual_trace\": [";
    for (std::size_t i = 0; i < rep.residual_trace.size(); ++i)
        os << (i ? ", " : "") << fmt12(rep.residual_trace[i]);
    os << "],\n";
    os << "  \"warnings\": [";
    for (std::size_t i = 0; i < rep.warnings.size(); ++i)
        os << (i ? ", " : "") << '"' << rep.warnings[i] << '"';
    os << "]\n";
    os << "}\n";
    return os.str();
}

int run_solve(const std::string& scale_file, const std::string& rhs_text, double alpha,
              const std::string& t0_text, const std::string& horizon_text, double step,
              double tol, int max_iter, const std::string& out_csv,
              const std::string& out_report) {
    tsfrac::TimeScale scale = tsfrac::load_scale(scale_file);
    const double t0 = t0_text.empty() ? scale.min() : parse_number(t0_text, "--t0");
    const double horizon =
        horizon_text.empty() ? scale.max() - t0 : parse_number(horizon_text, "--horizon");
    tsfrac::IVProblem p{scale, t0,  horizon, alpha, tsfrac::Expr::parse(rhs_text),
                        step,  tol, max_iter};
    auto [y, rep] = tsfrac::picard_solve(p);

    if (!out_csv.empty()) {
        std::ostringstream os;
        os << "t,y\n";
        for (std::size_t i = 0; i < y.size(); ++i)
            os << fmt12(y.grid->node(i)) << ',' << fmt12(y.values[i]) << '\n';
        write_text(out_csv, os.str());
    }
    const std::string rj = report_json(p, rep);
    if (!out_report.empty()) write_text(out_report, rj);
    std::fputs(rj.c_str(), stdout);
    return rep.converged ? 0 : 4;
}

bool purely_discrete(const tsfrac::TimeScale& scale) {
    for (const tsfrac::Segment& s : scale.segments())
        if (!s.is_point()) return false;
    return true;
}

bool has_scattered(const tsfrac::TimeScale& scale) {
    return scale.segments().size() > 1;
}

int run_verify(const std::string& scale_file, const std::string& suite,
               const std::string& fn_text, double alpha, double beta, double step,
               double tol, bool tol_given, double vanish_tol, unsigned seed,
               const std::string& out) {
    tsfrac::TimeScale scale = tsfrac::load_scale(scale_file);
    const char* env_tol = std::getenv("TSFRAC_TOL");

    // Precedence: --tol flag, then TSFRAC_TOL, then the suite default.
    auto pick_tol = [&](double suite_default) {
        if (tol_given) return tol;
        if (env_tol) return parse_number(env_tol, "TSFRAC_TOL");
        return suite_default;
    };

    std::ostringstream os;
    int rc = 0;

    if (suite == "oracle") {
        if (!purely_discrete(scale))
            throw tsfrac::BadRange("the oracle suite needs a purely discrete scale");
        const double use_tol = pick_tol(1e-13);
        std::vector<double> pts;
        for (const tsfrac::Segment& s : scale.segments()) pts.push_back(s.lo());
        std::mt19937 rng(seed);
        std::vector<double> vals(pts.size());
        for (double& v : vals) v = 2.0 * (rng() * (1.0 / 4294967295.0)) - 1.0;
        auto grid = std::make_shared<tsfrac::Grid>(scale, step);
        tsfrac::GridFunction h(grid, vals);
        tsfrac::FracOrder order(alpha);
        double worst = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double got = tsfrac::frac_integral(h, pts.front(), order, pts[i]);
            const double want =
                tsfrac::oracle::brute_force_frac_integral(pts, vals, pts.front(), alpha, pts[i]);
            worst = std::max(worst, std::fabs(got - want) / (1.0 + std::fabs(want)));
        }
        const bool ok = worst <= use_tol;
        os << "suite,oracle\n";
        os << "alpha," << fmt12(alpha) << "\n";
        os << "seed," << seed << "\n";
        os << "points," << pts.size() << "\n";
        os << "max_rel_defect," << fmt12(worst) << "\n";
        os << "tolerance," << fmt12(use_tol) << "\n";
        os << "status," << (ok ? "pass" : "fail") << "\n";
        rc = ok ? 0 : 5;
    } else if (suite == "prop1") {
        tsfrac::Expr fn = parse_fn(fn_text, false);
        tsfrac::GridFunction g = tsfrac::sample(scale, fn, step);
        auto cmp = tsfrac::compare_delta_riemann(g, scale.min(), scale.max());
        os << "suite,prop1\n";
        os << "delta_value," << fmt12(cmp.delta_value) << "\n";
        os << "extension_value," << fmt12(cmp.extension_value) << "\n";
        os << "status," << (cmp.holds ? "pass" : "fail") << "\n";
        rc = cmp.holds ? 0 : 5;
    } else if (suite == "semigroup" || suite == "leftinv" || suite == "rightinv") {
        const double use_tol = pick_tol(5e-3);
        tsfrac::Expr fn = parse_fn(fn_text, false);
        tsfrac::GridFunction h = tsfrac::sample(scale, fn, step);
        tsfrac::FracOrder oa(alpha);
        const bool scattered = has_scattered(scale);
        double defect = 0.0;
        bool member = true;
        os << "suite," << suite << "\n";
        os << "alpha," << fmt12(alpha) << "\n";
        if (suite == "semigroup") {
            tsfrac::FracOrder ob(beta);
            os << "beta," << fmt12(beta) << "\n";
            defect = tsfrac::verify_semigroup(h, scale.min(), oa, ob);
        } else if (suite == "leftinv") {
            defect = tsfrac::verify_left_inverse(h, scale.min(), oa);
        } else {
            auto r = tsfrac::verify_right_inverse(h, scale.min(), oa, vanish_tol);
            defect = r.defect;
            member = r.member;
            os << "member," << (member ? "true" : "false") << "\n";
        }
        os << "defect," << fmt12(defect) << "\n";
        os << "tolerance," << fmt12(use_tol) << "\n";
        if (scattered) {
            // The composition identities are continuous-scale facts; on
            // scattered scales the defect is structural, so it is reported
            // without being held against the tolerance.
            os << "status,expected-failure\n";
            rc = 0;
        } else if (suite == "rightinv" && !member) {
            os << "status,hypothesis-unmet\n";
            rc = 0;
        } else {
            const bool ok = defect <= use_tol;
            os << "status," << (ok ? "pass" : "fail") << "\n";
            rc = ok ? 0 : 5;
        }
    } else {
        throw tsfrac::BadRange("unknown suite '" + suite + "'");
    }

    emit(out, os.str());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional calculus on bounded time scales"};
    app.require_subcommand(1);

    // gamma
    auto* cmd_gamma = app.add_subcommand("gamma", "evaluate the gamma function");
    double gamma_x = 0.0;
    cmd_gamma->add_option("x", gamma_x, "argument")->required();

    // fracint / fracder
    CommonArgs fi, fd;
    std::string fi_a, fi_t = "all", fd_a, fd_t = "all";
    auto* cmd_fracint =
        app.add_subcommand("fracint", "fractional integral of a function of t");
    cmd_fracint->add_option("scale", fi.scale_file, "time-scale JSON file")->required();
    cmd_fracint->add_option("--fn", fi.fn, "integrand expression in t");
    cmd_fracint->add_option("--alpha", fi.alpha, "fractional order")->required();
    cmd_fracint->add_option("--a", fi_a, "base point (default: scale minimum)");
    cmd_fracint->add_option("--t", fi_t, "evaluation point or 'all'");
    cmd_fracint->add_option("--step", fi.step, "grid step on continuous parts");
    cmd_fracint->add_option("--out", fi.out, "write CSV here instead of stdout");

    auto* cmd_fracder =
        app.add_subcommand("fracder", "fractional derivative of a function of t");
    cmd_fracder->add_option("scale", fd.scale_file, "time-scale JSON file")->required();
    cmd_fracder->add_option("--fn", fd.fn, "expression in t");
    cmd_fracder->add_option("--alpha", fd.alpha, "fractional order")->required();
    cmd_fracder->add_option("--a", fd_a, "base point (default: scale minimum)");
    cmd_fracder->add_option("--t", fd_t, "evaluation point or 'all'");
    cmd_fracder->add_option("--step", fd.step, "grid step on continuous parts");
    cmd_fracder->add_option("--out", fd.out, "write CSV here instead of stdout");

    // solve
    std::string so_scale, so_rhs, so_t0, so_horizon, so_out, so_report;
    double so_alpha = 0.5, so_step = 1e-3, so_tol = 1e-8;
    int so_max_iter = 64;
    auto* cmd_solve = app.add_subcommand("solve", "solve the fractional initial value problem");
    cmd_solve->add_option("scale", so_scale, "time-scale JSON file")->required();
    cmd_solve->add_option("--rhs", so_rhs, "right-hand side f(t, y)")->required();
    cmd_solve->add_option("--alpha", so_alpha, "fractional order in (0,1)")->required();
    cmd_solve->add_option("--t0", so_t0, "initial time (default: scale minimum)");
    cmd_solve->add_option("--horizon", so_horizon, "horizon length (default: to scale maximum)");
    cmd_solve->add_option("--step", so_step, "grid step on continuous parts");
    cmd_solve->add_option("--tol", so_tol, "stopping tolerance");
    cmd_solve->add_option("--max-iter", so_max_iter, "iteration cap");
    cmd_solve->add_option("--out", so_out, "trajectory CSV path");
    cmd_solve->add_option("--report", so_report, "also write the JSON report here");

    // verify
    std::string ve_scale, ve_suite, ve_fn = "1", ve_out;
    double ve_alpha = 0.5, ve_beta = 0.5, ve_step = 1e-3, ve_tol = 0.0, ve_vanish = 1e-6;
    unsigned ve_seed = 20240817u;
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("scale", ve_scale, "time-scale JSON file")->required();
    auto* tol_opt = cmd_verify->add_option("--tol", ve_tol, "defect tolerance");
    cmd_verify
        ->add_option("--suite", ve_suite, "semigroup | leftinv | rightinv | prop1 | oracle")
        ->required();
    cmd_verify->add_option("--fn", ve_fn, "test function of t");
    cmd_verify->add_option("--alpha", ve_alpha, "fractional order");
    cmd_verify->add_option("--beta", ve_beta, "second order (semigroup)");
    cmd_verify->add_option("--step", ve_step, "grid step on continuous parts");
    cmd_verify->add_option("--vanish-tol", ve_vanish, "boundary-value tolerance (rightinv)");
    cmd_verify->add_option("--seed", ve_seed, "random seed (oracle)");
    cmd_verify->add_option("--out", ve_out, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::fprintf(stderr, "error:2:%s\n", e.what());
        return 2;
    }

    try {
        if (cmd_gamma->parsed()) {
            std::printf("%.15g\n", tsfrac::gamma(gamma_x));
            return 0;
        }
        if (cmd_fracint->parsed()) return run_frac(fi, fi_a, fi_t, false);
        if (cmd_fracder->parsed()) return run_frac(fd, fd_a, fd_t, true);
        if (cmd_solve->parsed())
            return run_solve(so_scale, so_rhs, so_alpha, so_t0, so_horizon, so_step, so_tol,
                             so_max_iter, so_out, so_report);
        if (cmd_verify->parsed())
            return run_verify(ve_scale, ve_suite, ve_fn, ve_alpha, ve_beta, ve_step, ve_tol,
                              tol_opt->count() > 0, ve_vanish, ve_seed, ve_out);
    } catch (const tsfrac::Error& e) {
        const int code = e.kind() == tsfrac::Error::Kind::Domain ? 3 : 2;
        std::fprintf(stderr, "error:%d:%s\n", code, e.what());
        return code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error:2:%s\n", e.what());
        return 2;
    }
    return 0;
}
