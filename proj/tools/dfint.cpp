#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"

#include "dfint/report.hpp"
#include "dfint/sampling.hpp"
#include "dfint/sle.hpp"

using namespace dfint;
using report::complex_json;
using report::json;
using report::parse_complex;
using report::Row;
using report::RunReport;

namespace {

struct GlobalOpts {
    std::string format = "json";
    std::string out = "-";
    std::uint64_t seed = 12345;
    double rel_tol = 1e-10;
    double threshold = 1e-6;
};

contour::QuadratureConfig make_cfg(const GlobalOpts& g) {
    contour::QuadratureConfig cfg;
    cfg.rel_tol = g.rel_tol;
    return cfg;
}

template <class F>
Row timed_row(json inputs, F&& fn) {
    Row row;
    row.inputs = std::move(inputs);
    auto t0 = std::chrono::steady_clock::now();
    try {
        row.outputs = fn();
    } catch (const Error& e) {
        row.status = std::string("failed: ") + e.kind();
        row.outputs = json{{"message", e.what()}};
    }
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return row;
}

int emit(const RunReport& rep, const GlobalOpts& g) {
    std::string text =
        (g.format == "csv") ? rep.to_csv() : rep.to_json(true).dump(2) + "\n";
    if (g.out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        if (!f) {
            std::cerr << "cannot open output file " << g.out << "\n";
            return 1;
        }
        f << text;
    }
    return rep.all_ok() ? 0 : 1;
}

json tolerances_json(const contour::QuadratureConfig& cfg) {
    return json{{"rel_tol", cfg.rel_tol},
                {"abs_tol", cfg.abs_tol},
                {"max_depth", cfg.max_depth},
                {"max_arg_step", cfg.max_arg_step},
                {"de_level_max", cfg.de_level_max}};
}

double fit_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    double mx = 0.0, my = 0.0;
    const std::size_t n = logx.size();
    for (std::size_t i = 0; i < n; ++i) {
        mx += logx[i];
        my += logy[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (logx[i] - mx) * (logy[i] - my);
        den += (logx[i] - mx) * (logx[i] - mx);
    }
    return num / den;
}

asym::IdentityKind identity_from_name(const std::string& name) {
    if (name == "FP") return asym::IdentityKind::FP;
    if (name == "FQ") return asym::IdentityKind::FQ;
    if (name == "FRQ") return asym::IdentityKind::FRQ;
    if (name == "FSQ") return asym::IdentityKind::FSQ;
    throw UsageError("unknown identity '" + name + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerics for double-loop contour integrals, their asymptotic "
                 "expansions, and the two SLE observables built from them"};
    app.set_version_flag("--version", std::string("dfint ") + report::kVersion);
    app.require_subcommand(1);
    app.fallthrough(true);

    GlobalOpts g;
    if (const char* env = std::getenv("DFINT_RELTOL")) g.rel_tol = std::atof(env);
    app.add_option("--format", g.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "output path, '-' for stdout");
    app.add_option("--seed", g.seed, "seed for randomized sweeps");
    app.add_option("--rel-tol", g.rel_tol, "quadrature relative tolerance");
    app.add_option("--threshold", g.threshold, "pass/fail residual threshold");

    // --- eval ---------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate H, G, F or I");
    std::string eval_kind, eval_method = "both";
    double ea = 0.3, eb = 0.45, ec = -0.7, ed = -0.4, ealpha = 2.5, exi1 = 0.0, exi2 = 1.0;
    std::string ew = "-2+0.5i", ew1 = "-1-1i", ew2 = "-2+0.5i", ez = "-0.5+1i";
    eval->add_option("kind", eval_kind, "H|G|F|I")->required();
    eval->add_option("--a", ea);
    eval->add_option("--b", eb);
    eval->add_option("--c", ec);
    eval->add_option("--d", ed);
    eval->add_option("--w", ew);
    eval->add_option("--w1", ew1);
    eval->add_option("--w2", ew2);
    eval->add_option("--alpha", ealpha);
    eval->add_option("--z", ez);
    eval->add_option("--xi1", exi1);
    eval->add_option("--xi2", exi2);
    eval->add_option("--method", eval_method, "closed|quadrature|both");

    // --- verify --------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "identity residuals");
    std::string verify_kind;
    int sweep_n = 0;
    std::string vw1 = "-1-1i", vw2 = "0.6-0.2i";
    double va = 0.3, vb = 0.45, vc = -0.7, vd = -0.4;
    verify->add_option("kind", verify_kind, "FP|FQ|FRQ|FSQ|all")->required();
    verify->add_option("--a", va);
    verify->add_option("--b", vb);
    verify->add_option("--c", vc);
    verify->add_option("--d", vd);
    verify->add_option("--w1", vw1);
    verify->add_option("--w2", vw2);
    verify->add_option("--sweep", sweep_n, "random feasible points per identity");

    // --- expand ----------------------------------------------------------------
    auto* expand = app.add_subcommand("expand", "truncated expansion vs quadrature");
    int x_theorem = 1, x_K = 2;
    bool x_coeffs = false;
    double xa = 0.3, xb = 0.45, xc = -0.7, xd = -0.4;
    std::string xw1 = "-1-1i", xw2 = "1.001-0.001i";
    expand->add_option("--theorem", x_theorem, "1|2|3|4")->check(CLI::Range(1, 4));
    expand->add_option("--K", x_K);
    expand->add_option("--a", xa);
    expand->add_option("--b", xb);
    expand->add_option("--c", xc);
    expand->add_option("--d", xd);
    expand->add_option("--w1", xw1);
    expand->add_option("--w2", xw2);
    expand->add_flag("--coeffs", x_coeffs, "emit the coefficient table");

    // --- green ----------------------------------------------------------------
    auto* green = app.add_subcommand("green", "Green's-function boundary kernel");
    std::string green_what;
    double galpha = 2.5, gth1 = 1.0, gth2 = 2.0, gdelta = 0.05, gc = 0.5;
    int gn = 15;
    green->add_option("what", green_what, "h|hf|imx|hatc|sectors|grid")->required();
    green->add_option("--alpha", galpha);
    green->add_option("--theta1", gth1);
    green->add_option("--theta2", gth2);
    green->add_option("--n", gn);
    green->add_option("--delta", gdelta);
    green->add_option("--c", gc);

    // --- schramm ----------------------------------------------------------------
    auto* schramm = app.add_subcommand("schramm", "Schramm-formula observables");
    std::string s_what, s_z = "0.4+0.8i", s_method = "both";
    double salpha = 2.5, sxi = 1.0, sx = -0.7, sr = 0.5;
    int sn = 10;
    schramm->add_option("what", s_what, "J|reJ|M|P|calpha|grid")->required();
    schramm->add_option("--alpha", salpha);
    schramm->add_option("--z", s_z);
    schramm->add_option("--xi", sxi);
    schramm->add_option("--x", sx, "boundary abscissa for J");
    schramm->add_option("--r", sr, "semicircle radius for calpha");
    schramm->add_option("--n", sn);
    schramm->add_option("--method", s_method, "closed|semicircle|both");

    // --- study ----------------------------------------------------------------
    auto* study = app.add_subcommand("study", "expansion convergence orders");
    int st_theorem = 2, st_shrinks = 3;
    std::vector<int> st_Ks{0, 1, 2};
    double st_s0 = 0.2, st_ratio = 0.05, st_ray = 3.0 * kPi / 4.0;
    double sa = 0.3, sb = 0.45, sc = -0.7, sd = -0.4;
    std::string st_w1 = "-1-1i", st_w2 = "-2+0.5i";
    study->add_option("--theorem", st_theorem)->check(CLI::Range(1, 4));
    study->add_option("--K", st_Ks, "truncation orders");
    study->add_option("--shrinks", st_shrinks, "dyadic shrink count");
    study->add_option("--s0", st_s0, "initial small-quantity magnitude");
    study->add_option("--ratio", st_ratio, "|w1/w2| for theorem 3");
    study->add_option("--ray-arg", st_ray, "approach-ray argument");
    study->add_option("--a", sa);
    study->add_option("--b", sb);
    study->add_option("--c", sc);
    study->add_option("--d", sd);
    study->add_option("--w1", st_w1, "frozen w1 (theorem 1)");
    study->add_option("--w2", st_w2, "frozen w2 (theorem 2)");

    CLI11_PARSE(app, argc, argv);

    contour::QuadratureConfig cfg = make_cfg(g);
    RunReport rep;
    rep.seed = g.seed;
    rep.tolerances = tolerances_json(cfg);

    try {
        if (*eval) {
            rep.command = "eval " + eval_kind;
            if (eval_kind == "H") {
                rep.parameters = json{{"a", ea}, {"d", ed}, {"method", eval_method}};
                rep.rows.push_back(timed_row(rep.parameters, [&]() {
                    json out;
                    Complex closed, quad;
                    if (eval_method != "quadrature")
                        out["closed"] = complex_json(closed = core::eval_H_closed(ea, ed));
                    if (eval_method != "closed")
                        out["quadrature"] =
                            complex_json(quad = core::eval_H_quadrature(ea, ed, cfg));
                    if (eval_method == "both")
                        out["rel_diff"] = std::abs(closed - quad) / std::abs(closed);
                    return out;
                }));
            } else if (eval_kind == "G") {
                Complex w = parse_complex(ew);
                rep.parameters =
                    json{{"a", ea}, {"c", ec}, {"d", ed}, {"w", complex_json(w)},
                         {"method", eval_method}};
                rep.rows.push_back(timed_row(rep.parameters, [&]() {
                    json out;
                    Complex closed, quad;
                    if (eval_method != "quadrature")
                        out["closed"] = complex_json(closed = core::eval_G_closed(ea, ec, ed, w));
                    if (eval_method != "closed")
                        out["quadrature"] = complex_json(
                            quad = core::eval_G_quadrature(ea, ec, ed, w, cfg));
                    if (eval_method == "both")
                        out["rel_diff"] = std::abs(closed - quad) / std::abs(closed);
                    return out;
                }));
            } else if (eval_kind == "F") {
                core::ExponentQuad q{ea, eb, ec, ed};
                core::EvalPoint p{parse_complex(ew1), parse_complex(ew2)};
                rep.parameters = json{{"a", ea},  {"b", eb},
                                      {"c", ec},  {"d", ed},
                                      {"w1", complex_json(p.w1)},
                                      {"w2", complex_json(p.w2)}};
                rep.rows.push_back(timed_row(rep.parameters, [&]() {
                    return json{{"value", complex_json(core::eval_F(q, p, cfg))}};
                }));
            } else if (eval_kind == "I") {
                Complex z = parse_complex(ez);
                rep.parameters = json{{"alpha", ealpha}, {"z", complex_json(z)},
                                      {"xi1", exi1},     {"xi2", exi2}};
                rep.rows.push_back(timed_row(rep.parameters, [&]() {
                    return json{
                        {"value", complex_json(sle::eval_I(ealpha, z, exi1, exi2, cfg))}};
                }));
            } else {
                throw UsageError("eval kind must be H, G, F or I");
            }
        } else if (*verify) {
            rep.command = "verify " + verify_kind;
            std::vector<asym::IdentityKind> kinds;
            if (verify_kind == "all")
                kinds = {asym::IdentityKind::FP, asym::IdentityKind::FQ,
                         asym::IdentityKind::FRQ, asym::IdentityKind::FSQ};
            else
                kinds = {identity_from_name(verify_kind)};
            rep.parameters = json{{"kind", verify_kind},
                                  {"sweep", sweep_n},
                                  {"threshold", g.threshold}};
            std::mt19937_64 rng(g.seed);
            const char* names[] = {"FP", "FQ", "FRQ", "FSQ"};
            for (auto kind : kinds) {
                if (sweep_n <= 0) {
                    core::ExponentQuad q{va, vb, vc, vd};
                    core::EvalPoint p{parse_complex(vw1), parse_complex(vw2)};
                    json in{{"identity", names[static_cast<int>(kind)]},
                            {"a", q.a}, {"b", q.b}, {"c", q.c}, {"d", q.d},
                            {"w1", complex_json(p.w1)}, {"w2", complex_json(p.w2)}};
                    rep.rows.push_back(timed_row(in, [&]() {
                        double r = asym::verify_identity(kind, q, p, cfg);
                        if (!(r < g.threshold)) rep.thresholds_passed = false;
                        return json{{"residual", r}, {"passed", r < g.threshold}};
                    }));
                } else {
                    for (int i = 0; i < sweep_n; ++i) {
                        auto smp = sampling::sample_identity_point(kind, rng);
                        json in{{"identity", names[static_cast<int>(kind)]},
                                {"a", smp.q.a}, {"b", smp.q.b}, {"c", smp.q.c},
                                {"d", smp.q.d}, {"w1", complex_json(smp.p.w1)},
                                {"w2", complex_json(smp.p.w2)}};
                        rep.rows.push_back(timed_row(in, [&]() {
                            double r = asym::verify_identity(kind, smp.q, smp.p, cfg);
                            if (!(r < g.threshold)) rep.thresholds_passed = false;
                            return json{{"residual", r}, {"passed", r < g.threshold}};
                        }));
                    }
                }
            }
        } else if (*expand) {
            rep.command = "expand";
            core::ExponentQuad q{xa, xb, xc, xd};
            core::EvalPoint p{parse_complex(xw1), parse_complex(xw2)};
            rep.parameters = json{{"theorem", x_theorem}, {"K", x_K},
                                  {"a", xa}, {"b", xb}, {"c", xc}, {"d", xd},
                                  {"w1", complex_json(p.w1)}, {"w2", complex_json(p.w2)}};
            if (x_coeffs) {
                auto set = asym::expansion_coeffs(
                    x_theorem, q, x_K,
                    x_theorem == 1 ? std::optional<Complex>(p.w1)
                                   : (x_theorem == 2 ? std::optional<Complex>(p.w2)
                                                     : std::nullopt));
                for (const auto& t : set.terms) {
                    rep.rows.push_back(Row{
                        json{{"e1", t.e1}, {"e2", t.e2}, {"rho_mask", t.rho_mask}},
                        json{{"coeff", complex_json(t.coeff)}}, "ok", 0.0});
                }
            } else {
                rep.rows.push_back(timed_row(rep.parameters, [&]() {
                    Complex approx = asym::expand_F(x_theorem, q, p, x_K);
                    Complex exact = core::eval_F(q, p, cfg);
                    return json{{"expansion", complex_json(approx)},
                                {"quadrature", complex_json(exact)},
                                {"abs_err", std::abs(approx - exact)},
                                {"predicted_order",
                                 asym::first_omitted_order(x_theorem, q, x_K)}};
                }));
            }
        } else if (*green) {
            rep.command = "green " + green_what;
            rep.parameters = json{{"alpha", galpha}};
            if (green_what == "h") {
                json in{{"alpha", galpha}, {"theta1", gth1}, {"theta2", gth2}};
                rep.rows.push_back(timed_row(in, [&]() {
                    return json{{"h", sle::green_h({galpha, gth1, gth2}, cfg)}};
                }));
            } else if (green_what == "hf") {
                json in{{"alpha", galpha}, {"theta", gth1}};
                rep.rows.push_back(timed_row(
                    in, [&]() { return json{{"hf", sle::green_hf(gth1, galpha)}}; }));
            } else if (green_what == "imx") {
                json in{{"alpha", galpha}, {"theta1", gth1}, {"theta2", gth2}};
                rep.rows.push_back(timed_row(in, [&]() {
                    Complex X = sle::green_X(gth1, gth2, galpha, cfg);
                    return json{{"imX", X.imag()},
                                {"absX", std::abs(X)},
                                {"rel_imX", std::abs(X.imag()) / std::abs(X)}};
                }));
            } else if (green_what == "hatc") {
                json in{{"alpha", galpha}};
                rep.rows.push_back(
                    timed_row(in, [&]() { return json{{"hatc", sle::hat_c(galpha)}}; }));
            } else if (green_what == "sectors") {
                json in{{"theta1", gth1}, {"theta2", gth2}, {"delta", gdelta}, {"c", gc}};
                rep.rows.push_back(timed_row(in, [&]() {
                    auto labels = sle::classify_sector(gth1, gth2, {gdelta, gc});
                    return json{{"sectors", labels}};
                }));
            } else if (green_what == "grid") {
                rep.parameters["n"] = gn;
                for (int i = 1; i <= gn; ++i) {
                    for (int j = i + 1; j <= gn; ++j) {
                        double t1 = kPi * i / (gn + 1.0);
                        double t2 = kPi * j / (gn + 1.0);
                        if (std::abs(t2 - 0.5 * kPi) < 1e-4) t2 += 2e-4;
                        json in{{"theta1", t1}, {"theta2", t2}};
                        rep.rows.push_back(timed_row(in, [&]() {
                            double h = sle::green_h({galpha, t1, t2}, cfg);
                            return json{{"h", h}};
                        }));
                    }
                }
                for (double t1 : {0.5, 1.0, 1.5, 2.5}) {
                    json in{{"law", 1}, {"theta1", t1}, {"theta2", kPi - 1e-3}};
                    rep.rows.push_back(timed_row(in, [&]() {
                        double h = sle::green_h({galpha, t1, kPi - 1e-3}, cfg);
                        double want = std::pow(std::sin(t1), galpha - 1.0);
                        return json{{"h", h}, {"limit", want}, {"abs_err", std::abs(h - want)}};
                    }));
                }
                for (double t : {0.8, 1.6, 2.4}) {
                    json in{{"law", 2}, {"theta", t}};
                    rep.rows.push_back(timed_row(in, [&]() {
                        double h = sle::green_h({galpha, t, t + 1e-4}, cfg);
                        double hf = sle::green_hf(t, galpha);
                        return json{{"h", h}, {"hf", hf}, {"abs_err", std::abs(h - hf)}};
                    }));
                }
            } else {
                throw UsageError("green subcommand must be h|hf|imx|hatc|sectors|grid");
            }
        } else if (*schramm) {
            rep.command = "schramm " + s_what;
            Complex z = parse_complex(s_z);
            rep.parameters = json{{"alpha", salpha}, {"xi", sxi}};
            sle::SchrammInput si{salpha, z, sxi};
            if (s_what == "J") {
                if (schramm->count("--x")) {
                    json in{{"alpha", salpha}, {"x", sx}, {"xi", sxi}};
                    rep.rows.push_back(timed_row(in, [&]() {
                        return json{
                            {"J", complex_json(sle::eval_J_boundary(salpha, sx, sxi, cfg))}};
                    }));
                } else {
                    json in{{"alpha", salpha}, {"z", complex_json(z)}, {"xi", sxi}};
                    rep.rows.push_back(timed_row(in, [&]() {
                        return json{{"J", complex_json(sle::eval_J(si, cfg))}};
                    }));
                }
            } else if (s_what == "reJ") {
                json in{{"alpha", salpha}, {"z", complex_json(z)}, {"xi", sxi}};
                rep.rows.push_back(timed_row(in, [&]() {
                    return json{{"reJ", sle::eval_reJ(si, cfg)}};
                }));
            } else if (s_what == "M") {
                json in{{"alpha", salpha}, {"z", complex_json(z)}, {"xi", sxi}};
                rep.rows.push_back(timed_row(in, [&]() {
                    Complex M = sle::eval_M(si, cfg);
                    return json{{"M", complex_json(M)},
                                {"reM_cross", sle::re_M_cross(si, cfg)}};
                }));
            } else if (s_what == "P") {
                json in{{"alpha", salpha}, {"z", complex_json(z)}, {"xi", sxi}};
                rep.rows.push_back(timed_row(in, [&]() {
                    return json{{"P", sle::schramm_P(si, cfg)}};
                }));
            } else if (s_what == "calpha") {
                json in{{"alpha", salpha}, {"r", sr}, {"method", s_method}};
                rep.rows.push_back(timed_row(in, [&]() {
                    json out;
                    double closed = 0.0, semi = 0.0;
                    if (s_method != "semicircle")
                        out["closed"] = closed = sle::c_alpha_closed(salpha);
                    if (s_method != "closed")
                        out["semicircle"] = semi =
                            sle::c_alpha_semicircle(salpha, sr, sxi, cfg);
                    if (s_method == "both")
                        out["rel_diff"] = std::abs(closed - semi) / std::abs(closed);
                    return out;
                }));
            } else if (s_what == "grid") {
                rep.parameters["n"] = sn;
                for (int i = 0; i < sn; ++i) {
                    for (int j = 0; j < sn; ++j) {
                        double x = -3.0 + 6.0 * (i + 0.5) / sn + 0.013;
                        double y = 0.15 + 1.35 * j / (sn - 1.0);
                        json in{{"z", complex_json(Complex(x, y))}};
                        rep.rows.push_back(timed_row(in, [&]() {
                            double P =
                                sle::schramm_P({salpha, Complex(x, y), sxi}, cfg);
                            bool ok = P > -1e-3 && P < 1.0 + 1e-3;
                            if (!ok) rep.thresholds_passed = false;
                            return json{{"P", P}, {"in_bounds", ok}};
                        }));
                    }
                }
            } else {
                throw UsageError("schramm subcommand must be J|reJ|M|P|calpha|grid");
            }
        } else if (*study) {
            rep.command = "study";
            core::ExponentQuad q{sa, sb, sc, sd};
            Complex frozen_w1 = parse_complex(st_w1);
            Complex frozen_w2 = parse_complex(st_w2);
            rep.parameters = json{{"theorem", st_theorem}, {"s0", st_s0},
                                  {"shrinks", st_shrinks}, {"ratio", st_ratio},
                                  {"a", sa}, {"b", sb}, {"c", sc}, {"d", sd}};
            for (int K : st_Ks) {
                json in{{"theorem", st_theorem}, {"K", K}};
                rep.rows.push_back(timed_row(in, [&]() {
                    std::vector<double> ls, le;
                    json points = json::array();
                    for (int j = 0; j <= st_shrinks; ++j) {
                        double s = st_s0 * std::pow(0.5, j);
                        core::EvalPoint p;
                        switch (st_theorem) {
                        case 1:
                            p.w1 = frozen_w1;
                            p.w2 = 1.0 + s * std::exp(Complex(0.0, st_ray));
                            break;
                        case 2:
                            p.w1 = s * std::exp(Complex(0.0, -st_ray));
                            p.w2 = frozen_w2;
                            break;
                        case 3:
                            p.w2 = s * std::exp(Complex(0.0, -st_ray));
                            p.w1 = st_ratio * p.w2;
                            break;
                        case 4:
                            p.w1 = s * std::exp(Complex(0.0, -st_ray));
                            p.w2 = 1.0 + s * std::exp(Complex(0.0, st_ray));
                            break;
                        }
                        Complex exact = core::eval_F(q, p, cfg);
                        Complex approx = asym::expand_F(st_theorem, q, p, K);
                        double err = std::abs(exact - approx);
                        ls.push_back(std::log(s));
                        le.push_back(std::log(err));
                        points.push_back(json{{"s", s}, {"abs_err", err}});
                    }
                    double slope = fit_slope(ls, le);
                    double predicted = asym::first_omitted_order(st_theorem, q, K);
                    bool pass = std::abs(slope - predicted) < 0.2;
                    if (!pass) rep.thresholds_passed = false;
                    return json{{"slope", slope},
                                {"predicted", predicted},
                                {"passed", pass},
                                {"points", points}};
                }));
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return emit(rep, g);
}
