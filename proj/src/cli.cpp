#include "canonsys/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "canonsys/config.hpp"
#include "canonsys/diagnostics.hpp"
#include "canonsys/errors.hpp"
#include "canonsys/example.hpp"
#include "canonsys/monodromy.hpp"
#include "canonsys/wpoly.hpp"

namespace canon::cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ojson cjson(Complex c) { return ojson::array({c.real(), c.imag()}); }

ojson mjson(const Matrix2c& m) {
    ojson rows = ojson::array();
    for (int i = 0; i < 2; ++i) rows.push_back(ojson::array({cjson(m(i, 0)), cjson(m(i, 1))}));
    return rows;
}

void matrix_cells(std::ostream& os, const Matrix2c& m) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) os << ',' << num(m(i, j).real()) << ',' << num(m(i, j).imag());
}

const char* matrix_header = "W11_re,W11_im,W12_re,W12_im,W21_re,W21_im,W22_re,W22_im";

struct Common {
    std::string config;
    std::string z_grid;
    std::string t_grid;
    std::string emit;
    std::string out;
    int jobs = 1;
    bool verbose = false;
};

/// Everything a subcommand needs after flags and config are merged.
struct Context {
    explicit Context(IndefHamiltonianA p) : problem(std::move(p)) {}

    IndefHamiltonianA problem;
    std::vector<Complex> z_grid;
    std::vector<double> t_grid;
    Tolerances tol;
    std::string format;
    std::string out_path;
    int jobs = 1;
    bool verbose = false;
    bool builtin_example = false;
};

Context make_context(const Common& c, const std::string& default_format) {
    RunConfig rc;
    if (!c.config.empty()) rc = load_run_config(c.config);
    Context ctx(rc.problem ? *rc.problem : example::make_problem(example::ExampleConfig::defaults()));
    ctx.builtin_example = !rc.problem;
    ctx.tol = rc.tolerances;
    ctx.z_grid = rc.z_grid;
    ctx.t_grid = rc.t_grid;
    ctx.format = c.config.empty() ? default_format : rc.output.format;
    ctx.out_path = rc.output.path;
    if (!c.z_grid.empty()) ctx.z_grid = parse_z_grid(c.z_grid);
    if (!c.t_grid.empty()) ctx.t_grid = parse_real_list(c.t_grid);
    if (!c.emit.empty()) ctx.format = c.emit;
    if (!c.out.empty()) ctx.out_path = c.out;
    if (ctx.format != "csv" && ctx.format != "json") throw ConfigError("/output/format", "expected csv or json");
    ctx.jobs = c.jobs;
    ctx.verbose = c.verbose;
    return ctx;
}

std::vector<Side> sides_of(const std::string& s) {
    if (s == "minus") return {Side::minus};
    if (s == "plus") return {Side::plus};
    if (s == "both") return {Side::minus, Side::plus};
    throw ConfigError("/side", "expected minus, plus or both");
}

/// Interior sample points of one side when no t grid is given.
std::vector<double> default_t(const IndefHamiltonianA& ih, Side side) {
    std::vector<double> t;
    const double a = side == Side::minus ? ih.s_minus() : ih.sigma();
    const double b = side == Side::minus ? ih.sigma() : ih.s_plus();
    if (side == Side::minus)
        for (double f : {0.0, 0.25, 0.5, 0.75}) t.push_back(a + f * (b - a));
    else
        for (double f : {0.25, 0.5, 0.75, 1.0}) t.push_back(a + f * (b - a));
    return t;
}

std::vector<double> t_for(const Context& ctx, Side side) {
    if (ctx.t_grid.empty()) return default_t(ctx.problem, side);
    std::vector<double> t;
    for (double x : ctx.t_grid) {
        if (x < ctx.problem.s_minus() || x > ctx.problem.s_plus())
            throw ConfigError("/t_grid", "t = " + num(x) + " lies outside the interval");
        if (x == ctx.problem.sigma()) throw ConfigError("/t_grid", "t must differ from the singularity");
        if ((side == Side::minus) == (x < ctx.problem.sigma())) t.push_back(x);
    }
    return t;
}

std::vector<Complex> z_or(const Context& ctx, std::vector<Complex> fallback) {
    return ctx.z_grid.empty() ? fallback : ctx.z_grid;
}

void log(const Context& ctx, std::ostream& err, const std::string& msg) {
    if (ctx.verbose) err << "[canonsys] " << msg << '\n';
}

// ---- subcommands -----------------------------------------------------------

int cmd_fundamental(const Context& ctx, const std::string& side, std::ostream& os, std::ostream& err) {
    const std::vector<Side> sides = sides_of(side);
    const std::vector<Complex> zs = z_or(ctx, {1.0});
    const MonodromyPipeline pipe(ctx.problem, ctx.tol);
    std::vector<double> ts;
    for (Side s : sides)
        for (double t : t_for(ctx, s)) ts.push_back(t);

    struct Row {
        double t;
        Matrix2c w;
        double det_err;
    };
    const bool assembled = sides.size() == 2;
    auto rows = ordered_map<std::vector<Row>>(static_cast<int>(zs.size()), ctx.jobs, [&](int k) {
        const Complex z = zs[k];
        std::vector<Row> out;
        if (assembled) {
            const MonodromyFactorisation f = pipe.factorise(z, {}, ts);
            for (double t : ts) {
                const Matrix2c w = f.w(t);
                out.push_back({t, w, std::abs(w.determinant() - 1.0)});
            }
        } else {
            const MatrixSolution m = sides[0] == Side::minus ? pipe.w_minus(z, ts) : pipe.v(z, {}, ts);
            for (double t : ts) {
                const Matrix2c w = m(t);
                out.push_back({t, w, std::abs(w.determinant() - 1.0)});
            }
        }
        return out;
    });
    log(ctx, err, "fundamental: " + std::to_string(zs.size()) + " z values");

    if (ctx.format == "json") {
        ojson arr = ojson::array();
        for (size_t k = 0; k < zs.size(); ++k)
            for (const Row& r : rows[k])
                arr.push_back({{"t", r.t}, {"z", cjson(zs[k])}, {"W", mjson(r.w)}, {"det_err", r.det_err}});
        os << arr.dump(2) << '\n';
        return ok;
    }
    os << "t,z_re,z_im," << matrix_header << ",det_err\n";
    for (size_t k = 0; k < zs.size(); ++k)
        for (const Row& r : rows[k]) {
            os << num(r.t) << ',' << num(zs[k].real()) << ',' << num(zs[k].imag());
            matrix_cells(os, r.w);
            os << ',' << num(r.det_err) << '\n';
        }
    return ok;
}

int cmd_wpoly(const Context& ctx, const std::string& side, int n_max, int points, std::ostream& os) {
    struct Row {
        Side side;
        int n;
        double t;
        Vector2 w;
        double omega;
    };
    std::vector<Row> rows;
    for (Side s : sides_of(side)) {
        const Hamiltonian& h = ctx.problem.side(s);
        const int top = n_max >= 0 ? n_max : (h.is_diagonal() ? 2 * ctx.problem.delta - 1 : 2 * ctx.problem.delta);
        const std::vector<WFunction> fam =
            h.is_diagonal() ? w_diagonal_family(h, s, top, ctx.tol)
                            : w_general_family(h, s, top, ctx.problem.omegas(s), ctx.tol);
        std::vector<double> ts = ctx.t_grid.empty() ? std::vector<double>{} : t_for(ctx, s);
        if (ts.empty())
            for (int k = 1; k <= points; ++k) ts.push_back(h.lo() + h.length() * k / (points + 1.0));
        for (const WFunction& w : fam)
            for (double t : ts) rows.push_back({s, w.index, t, w(t), w.omega});
    }
    if (ctx.format == "json") {
        ojson arr = ojson::array();
        for (const Row& r : rows)
            arr.push_back({{"side", to_string(r.side)},
                           {"n", r.n},
                           {"t", r.t},
                           {"w1", ojson::array({r.w(0), 0.0})},
                           {"w2", ojson::array({r.w(1), 0.0})},
                           {"omega", r.omega}});
        os << arr.dump(2) << '\n';
        return ok;
    }
    os << "side,n,t,w1_re,w1_im,w2_re,w2_im\n";
    for (const Row& r : rows)
        os << to_string(r.side) << ',' << r.n << ',' << num(r.t) << ',' << num(r.w(0)) << ",0," << num(r.w(1))
           << ",0\n";
    return ok;
}

int cmd_regbv(const Context& ctx, const std::string& side, std::ostream& os) {
    const std::vector<Side> sides = sides_of(side);
    const std::vector<Complex> zs = z_or(ctx, {1.0});
    const MonodromyPipeline pipe(ctx.problem, ctx.tol);
    const SideBoundary minus(ctx.problem, Side::minus, ctx.tol), plus(ctx.problem, Side::plus, ctx.tol);
    auto results = ordered_map<ojson>(static_cast<int>(zs.size()), ctx.jobs, [&](int k) {
        const Complex z = zs[k];
        ojson entry;
        entry["z"] = cjson(z);
        ojson list = ojson::array();
        for (Side s : sides) {
            const MatrixSolution m = s == Side::minus ? pipe.w_minus(z) : pipe.v(z, {});
            const SideBoundary& sb = s == Side::minus ? minus : plus;
            for (int i = 0; i < 2; ++i) {
                const RegularisedBoundary rb = sb.gamma(m.row(i));
                ojson item;
                item["side"] = to_string(s);
                item["row"] = i + 1;
                item["gamma_s"] = cjson(rb.gamma_s);
                item["gamma_r"] = cjson(rb.gamma_r);
                item["err_est"] = rb.err_est;
                if (ctx.verbose) {
                    ojson ss = ojson::array(), sr = ojson::array();
                    for (const Complex& c : rb.samples_s) ss.push_back(cjson(c));
                    for (const Complex& c : rb.samples_r) sr.push_back(cjson(c));
                    item["samples"] = {{"nodes", sb.nodes()}, {"gamma_s", ss}, {"gamma_r", sr}};
                }
                list.push_back(item);
            }
        }
        entry["boundary_values"] = list;
        return entry;
    });
    ojson arr = ojson::array();
    for (auto& r : results) arr.push_back(std::move(r));
    os << arr.dump(2) << '\n';
    return ok;
}

int cmd_monodromy(const Context& ctx, double t, std::ostream& os) {
    const std::vector<Complex> zs = z_or(ctx, {1.0});
    if (!(t > ctx.problem.s_minus() && t <= ctx.problem.s_plus()) || t == ctx.problem.sigma())
        throw ConfigError("/t", "t must lie in the interval and differ from the singularity");
    const MonodromyPipeline pipe(ctx.problem, ctx.tol);
    auto fs = ordered_map<MonodromyFactorisation>(static_cast<int>(zs.size()), ctx.jobs,
                                                  [&](int k) { return pipe.factorise(zs[k], {}, {t}); });
    if (ctx.format == "json") {
        ojson arr = ojson::array();
        for (const auto& f : fs) {
            const Matrix2c w = f.w(t);
            arr.push_back({{"z", cjson(f.z)},
                           {"t", t},
                           {"W", mjson(w)},
                           {"det_err", std::abs(w.determinant() - 1.0)},
                           {"u_minus", mjson(f.u_minus)},
                           {"u_plus", mjson(f.u_plus)},
                           {"R", mjson(f.r)},
                           {"det_u_minus", cjson(f.det_report[0])},
                           {"det_u_plus", cjson(f.det_report[1])},
                           {"err_est", f.err_est}});
        }
        os << arr.dump(2) << '\n';
        return ok;
    }
    os << "z_re,z_im,t," << matrix_header << ",det_err,err_est\n";
    for (const auto& f : fs) {
        const Matrix2c w = f.w(t);
        os << num(f.z.real()) << ',' << num(f.z.imag()) << ',' << num(t);
        matrix_cells(os, w);
        os << ',' << num(std::abs(w.determinant() - 1.0)) << ',' << num(f.err_est) << '\n';
    }
    return ok;
}

int cmd_kernel(const Context& ctx, const std::string& points, int random_n, unsigned seed, double sub_t,
               std::ostream& os) {
    std::vector<Complex> pts;
    if (!points.empty())
        pts = parse_z_grid(points);
    else
        pts = random_kernel_grid(random_n, seed);
    if (pts.empty()) throw ConfigError("/points", "no kernel points");
    const MonodromyPipeline pipe(ctx.problem, ctx.tol);
    const bool sub = sub_t > 0.0;
    if (sub && !(sub_t > ctx.problem.s_minus() && sub_t < ctx.problem.sigma()))
        throw ConfigError("/sub", "the sub-Hamiltonian end must lie inside the minus side");
    const double t = sub ? sub_t : ctx.problem.s_plus();
    auto ws = ordered_map<Matrix2c>(static_cast<int>(pts.size()), ctx.jobs, [&](int k) -> Matrix2c {
        if (sub) return pipe.w_minus(pts[k], {t})(t);
        return pipe.factorise(pts[k], {}, {t}).w(t);
    });
    std::vector<Complex> key = pts;
    const KernelSignature ks = kernel_gram(
        [&](Complex z) {
            for (size_t k = 0; k < key.size(); ++k)
                if (key[k] == z) return ws[k];
            throw Error(ErrorKind::precondition, "cli", "kernel point lookup failed");
        },
        pts, ctx.tol.tol_eig);
    ojson grid = ojson::array();
    for (const Complex& z : pts) grid.push_back(cjson(z));
    ojson eig = ojson::array();
    for (int k = 0; k < ks.eigenvalues.size(); ++k) eig.push_back(ks.eigenvalues(k));
    ojson rep;
    rep["t"] = t;
    rep["points"] = grid;
    if (points.empty()) rep["seed"] = seed;
    rep["neg_count"] = ks.neg_count;
    rep["min_eig"] = ks.min_eig;
    rep["eigenvalues"] = eig;
    os << rep.dump(2) << '\n';
    return ok;
}

int cmd_weyl(const Context& ctx, const std::string& zlist, std::ostream& os) {
    const std::vector<Complex> zs = zlist.empty() ? z_or(ctx, {Complex(0.0, 1.0)}) : parse_z_grid(zlist);
    for (const Complex& z : zs)
        if (z.imag() == 0.0) throw ConfigError("/z", "the Weyl coefficient needs non-real z");
    const MonodromyPipeline pipe(ctx.problem, ctx.tol);
    auto qs = ordered_map<LimitEstimate<Complex>>(static_cast<int>(zs.size()), ctx.jobs,
                                                  [&](int k) { return pipe.weyl_intermediate(zs[k]); });
    if (ctx.format == "json") {
        ojson arr = ojson::array();
        for (size_t k = 0; k < zs.size(); ++k)
            arr.push_back({{"z", cjson(zs[k])},
                           {"q", cjson(qs[k].value)},
                           {"err_est", qs[k].error},
                           {"im_q_times_im_z", qs[k].value.imag() * zs[k].imag()}});
        os << arr.dump(2) << '\n';
        return ok;
    }
    os << "z_re,z_im,q_re,q_im,err_est,im_q_times_im_z\n";
    for (size_t k = 0; k < zs.size(); ++k)
        os << num(zs[k].real()) << ',' << num(zs[k].imag()) << ',' << num(qs[k].value.real()) << ','
           << num(qs[k].value.imag()) << ',' << num(qs[k].error) << ','
           << num(qs[k].value.imag() * zs[k].imag()) << '\n';
    return ok;
}

int cmd_validate(const Context& ctx, double s_plus, std::ostream& os, std::ostream& err) {
    const std::vector<Complex> zs = z_or(ctx, {1.0, -1.0, Complex(0, 1), Complex(0, -1), M_PI, Complex(2, 3),
                                               Complex(0, 5)});
    std::vector<double> ts = ctx.t_grid;
    if (ts.empty()) ts = {0.25, 0.5, 1.5, s_plus};
    const auto t0 = std::chrono::steady_clock::now();
    const example::ValidationReport rep =
        example::run_validation(example::ExampleConfig::defaults(s_plus), zs, ts, ctx.tol);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log(ctx, err, "validate-example: " + num(secs) + " s");
    ojson checks = ojson::array();
    for (const auto& c : rep.checks)
        checks.push_back(
            {{"artifact", c.artifact}, {"max_abs_err", c.max_abs_err}, {"threshold", c.threshold}, {"pass", c.pass}});
    ojson out;
    out["s_plus"] = s_plus;
    out["checks"] = checks;
    out["passed"] = rep.passed();
    os << out.dump(2) << '\n';
    return rep.passed() ? ok : computation_error;
}

/// One diagnostic that may itself fail; failures become a "error" cell.
template <typename F>
ojson guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return {{"status", "error"}, {"kind", to_string(e.kind())}, {"message", e.what()}};
    }
}

int cmd_check(const Context& ctx, std::ostream& os) {
    const IndefHamiltonianA& ih = ctx.problem;
    ojson sides = ojson::array();
    bool all = true;
    for (Side s : {Side::minus, Side::plus}) {
        const Hamiltonian& h = ih.side(s);
        const Endpoint sing = s == Side::minus ? Endpoint::upper : Endpoint::lower;
        ojson row;
        row["side"] = to_string(s);
        row["psd"] = guarded([&]() -> ojson {
            const double m = min_relative_eigenvalue(h);
            return {{"status", m >= -ctx.tol.tol_psd ? "pass" : "fail"}, {"min_rel_eig", m}};
        });
        row["I"] = guarded([&]() -> ojson {
            const ConditionReport r = check_I(h, sing, ctx.tol);
            return {{"status", r.converges ? "pass" : "fail"}, {"value", r.value}, {"remainder", r.remainder}};
        });
        row["HS"] = guarded([&]() -> ojson {
            const ConditionReport r = check_HS(h, sing, ctx.tol);
            return {{"status", r.converges ? "pass" : "fail"}, {"value", r.value}, {"remainder", r.remainder}};
        });
        row["indivisible"] = guarded([&]() -> ojson {
            const IndivisibleReport r = indivisible_type(h, h.lo(), h.hi(), ctx.tol.tol_indiv);
            ojson o{{"status", r.is_indivisible ? "indivisible" : "divisible"}, {"residual", r.residual}};
            if (r.is_indivisible) o["phi"] = r.phi;
            return o;
        });
        row["delta"] = guarded([&]() -> ojson {
            const DeltaReport r = delta_diagnostic(h, s, ih.delta, ih.omegas(s), ctx.tol);
            return {{"status", r.consistent ? "pass" : "fail"},
                    {"delta", ih.delta},
                    {"w_delta_in_L2", r.w_delta_in_L2},
                    {"w_delta_minus_1_in_L2", r.w_deltaminus1_in_L2},
                    {"tail_norms", r.tail_norms}};
        });
        for (const char* key : {"psd", "I", "HS", "delta"})
            if (row[key]["status"] != "pass") all = false;
        sides.push_back(row);
    }
    if (ctx.format == "json") {
        ojson out;
        out["sides"] = sides;
        out["all_pass"] = all;
        os << out.dump(2) << '\n';
        return ok;
    }
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %-8s %-8s %-8s %-12s %-8s\n", "side", "psd", "(I)", "(HS)", "indivisible",
                  "delta");
    os << line;
    for (const auto& r : sides) {
        std::snprintf(line, sizeof line, "%-6s %-8s %-8s %-8s %-12s %-8s\n", r["side"].get<std::string>().c_str(),
                      r["psd"]["status"].get<std::string>().c_str(), r["I"]["status"].get<std::string>().c_str(),
                      r["HS"]["status"].get<std::string>().c_str(),
                      r["indivisible"]["status"].get<std::string>().c_str(),
                      r["delta"]["status"].get<std::string>().c_str());
        os << line;
    }
    os << (all ? "all conditions hold\n" : "some conditions fail\n");
    return ok;
}

void report(std::ostream& err, const char* kind, const std::string& module, const std::string& message,
            const std::string& params) {
    ojson d;
    d["kind"] = kind;
    d["module"] = module;
    d["message"] = message;
    if (!params.empty()) d["parameters"] = params;
    err << "error: " << d.dump() << '\n';
}

}  // namespace

int default_jobs() {
    const char* env = std::getenv("CANON_JOBS");
    if (!env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    return end != env && *end == '\0' && v > 0 ? static_cast<int>(v) : 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fundamental solutions and monodromy of canonical systems with an inner singularity", "canonsys"};
    app.require_subcommand(1);
    Common c;
    c.jobs = default_jobs();
    auto common = [&](CLI::App* sub, bool with_emit) {
        sub->add_option("--config", c.config, "JSON run config");
        sub->add_option("--z-grid", c.z_grid, "z list \"1,-1,2+3i\" or rect:re_lo:re_hi:n:im_lo:im_hi:m");
        sub->add_option("--t-grid", c.t_grid, "comma separated t values");
        if (with_emit) sub->add_option("--emit", c.emit, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", c.out, "output file (default stdout)");
        sub->add_option("--jobs", c.jobs, "worker threads (default $CANON_JOBS or 1)")->check(CLI::PositiveNumber);
        sub->add_flag("--verbose", c.verbose, "extra diagnostics");
    };

    std::string side = "both";
    auto* fund = app.add_subcommand("fundamental", "W_h(t, z) on a t x z grid");
    common(fund, true);
    fund->add_option("--side", side, "minus, plus or both")->check(CLI::IsMember({"minus", "plus", "both"}));

    std::string wside = "both";
    int n_max = -1, n_points = 9;
    auto* wp = app.add_subcommand("wpoly", "the w_n functions of each side");
    common(wp, true);
    wp->add_option("--side", wside, "minus, plus or both")->check(CLI::IsMember({"minus", "plus", "both"}));
    wp->add_option("--n", n_max, "largest index (default: what the boundary values use)");
    wp->add_option("--points", n_points, "interior sample points when no --t-grid")->check(CLI::PositiveNumber);

    std::string rside = "both";
    auto* rb = app.add_subcommand("regbv", "regularised boundary values of the fundamental rows");
    common(rb, false);
    rb->add_option("--side", rside, "minus, plus or both")->check(CLI::IsMember({"minus", "plus", "both"}));

    double mono_t = std::numeric_limits<double>::quiet_NaN();
    auto* mono = app.add_subcommand("monodromy", "monodromy matrix W_h(t, z)");
    common(mono, true);
    mono->add_option("--t", mono_t, "evaluation point (default s_plus)");

    std::string points;
    int random_n = 8;
    unsigned seed = 0;
    double sub_t = 0.0;
    auto* ker = app.add_subcommand("kernel-signature", "negative index of the reproducing kernel Gram matrix");
    common(ker, false);
    auto* popt = ker->add_option("--points", points, "explicit non-real points");
    ker->add_option("--random-grid", random_n, "number of random points")->excludes(popt)->check(CLI::PositiveNumber);
    ker->add_option("--seed", seed, "seed of the random grid");
    ker->add_option("--sub", sub_t, "use the minus-side sub-Hamiltonian on (s_minus, t)");

    std::string wz;
    auto* weyl = app.add_subcommand("weyl", "intermediate Weyl coefficient q_sigma(z)");
    common(weyl, true);
    weyl->add_option("--z", wz, "non-real z list");

    double s_plus = 2.0;
    auto* val = app.add_subcommand("validate-example", "diff every artifact of the example against its closed form");
    common(val, false);
    val->add_option("--s-plus", s_plus, "right endpoint (> 1)");

    auto* chk = app.add_subcommand("check-conditions", "structural diagnostics of the configured problem");
    common(chk, true);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        report(err, "configuration", "cli", e.what(), "");
        return config_error;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        Context ctx = make_context(c, "csv");
        if (name == "check-conditions" && c.emit.empty()) ctx.format = "text";
        if (ctx.builtin_example && name == "validate-example" && s_plus != 2.0)
            ctx.problem = example::make_problem(example::ExampleConfig::defaults(s_plus));

        std::ostringstream buf;
        int code = ok;
        if (name == "fundamental") code = cmd_fundamental(ctx, side, buf, err);
        else if (name == "wpoly") code = cmd_wpoly(ctx, wside, n_max, n_points, buf);
        else if (name == "regbv") code = cmd_regbv(ctx, rside, buf);
        else if (name == "monodromy")
            code = cmd_monodromy(ctx, std::isnan(mono_t) ? ctx.problem.s_plus() : mono_t, buf);
        else if (name == "kernel-signature") code = cmd_kernel(ctx, points, random_n, seed, sub_t, buf);
        else if (name == "weyl") code = cmd_weyl(ctx, wz, buf);
        else if (name == "validate-example") code = cmd_validate(ctx, s_plus, buf, err);
        else code = cmd_check(ctx, buf);

        if (ctx.out_path.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(ctx.out_path, std::ios::binary);
            if (!f) throw ConfigError("/output/path", "cannot open " + ctx.out_path);
            f << buf.str();
        }
        return code;
    } catch (const ConfigError& e) {
        report(err, "configuration", e.module(), e.what(), e.path());
        return config_error;
    } catch (const Error& e) {
        const bool cfg = e.kind() == ErrorKind::unsupported || e.kind() == ErrorKind::configuration;
        report(err, to_string(e.kind()), e.module(), e.what(), "");
        return cfg ? config_error : computation_error;
    } catch (const std::exception& e) {
        report(err, "internal", "cli", e.what(), "");
        return computation_error;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace canon::cli
