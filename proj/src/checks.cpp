#include "asph/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "asph/cones.hpp"
#include "asph/structure.hpp"

namespace asph {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

template <class F>
double grid_max(const Grid& g, F&& f) {
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) worst = std::max(worst, f(g.x(i), g.y(j)));
    return worst;
}

struct PC {
    double p, c;
};

std::vector<PC> elliptic_contexts() {
    std::vector<PC> out;
    for (double p : {2.0, 2.5, 3.0, 5.0}) {
        const double s = p + conjugate_exponent(p);
        for (double c : {0.0, -1.0, -0.5 * s, -1.5 * s, -2.0 * s}) out.push_back({p, c});
    }
    return out;
}

std::vector<PC> surface_grid() {
    std::vector<PC> out;
    for (double p : {2.0, 3.0, 5.0}) {
        const double s = p + conjugate_exponent(p);
        for (double f : {0.25, 0.5, 0.9}) out.push_back({p, -2.0 * s * f});
    }
    return out;
}

// Sample points inside the fundamental cell (or a bounded piece of it for degenerate lattices).
std::vector<cplx> cell_points(const EllipticContext& ctx, int n) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double re = std::isfinite(ctx.omega1) ? 2.0 * ctx.omega1 : 3.0;
    const double im = std::isfinite(ctx.omega3_im) ? 2.0 * ctx.omega3_im : 1.5;
    std::vector<cplx> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) pts.emplace_back(re * u(rng), im * u(rng));
    return pts;
}

double wp_ode_residual() {
    double worst = 0.0;
    for (auto [p, c] : elliptic_contexts()) {
        const EllipticContext& ctx = shorthand_coeffs(p, c).ctx;
        for (const cplx z : cell_points(ctx, 1000)) {
            const WpValues v = wp_eval(ctx, z);
            const cplx res = v.wp_prime * v.wp_prime - (4.0 * v.wp * v.wp * v.wp - ctx.g2 * v.wp - ctx.g3);
            worst = std::max(worst, std::abs(res) / (1.0 + std::pow(std::abs(v.wp), 3)));
        }
    }
    return worst;
}

double sn_relation_residual() {
    double worst = 0.0;
    for (auto [p, c] : elliptic_contexts()) {
        const EllipticContext& ctx = shorthand_coeffs(p, c).ctx;
        const double d = ctx.e1 - ctx.e3;
        const double span = std::isfinite(ctx.omega1) ? ctx.omega1 : 3.0;
        for (int k = 1; k <= 1000; ++k) {
            const double x = span * k / 1001.0;
            const double sn = jacobi_sn(std::sqrt(d) * x, ctx.k2);
            const double viaSn = d / (sn * sn) + ctx.e3;
            worst = std::max(worst, rel(wp_theta(ctx, x).real(), viaSn));
        }
    }
    return worst;
}

// Closed forms of L, M, N for the homogenized exponential epigraph.
double case1_dets_residual() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double x = 0.3 + 0.3 * i, y = 0.3 + 0.3 * j;
            const FundamentalDets d = fundamental_dets(case1_raw(x, y));
            const double w = (2.0 * x + 3.0) * (2.0 * x + 3.0);
            const double L = (4.0 * x + 3.0) * w / (8.0 * std::pow(x, 4.5) * y * std::pow(1.0 + x, 1.5));
            const double M = 0.75 * w / (std::pow(x, 3.5) * y * y * std::sqrt(1.0 + x));
            const double N = 1.5 * w / (std::pow(x, 2.5) * y * y * y * std::sqrt(1.0 + x));
            worst = std::max({worst, std::abs(d.L - L) / std::abs(L), std::abs(d.M - M) / std::abs(M),
                              std::abs(d.N - N) / std::abs(N)});
        }
    return worst;
}

// Blaschke metric of the raw chart pulled back through the inverse of case1_iso_map.
double iso_pushforward_defect() {
    const double r3 = std::sqrt(3.0);
    const Grid g{0.3, 1.5, -1.0, 1.0, 12, 12};
    return grid_max(g, [&](double u, double v) {
        const auto [x, y] = case1_iso_unmap(u, v);
        const FundamentalDets d = fundamental_dets(case1_raw(x, y));
        const double scale = std::pow(d.L * d.N - d.M * d.M, -0.25);
        Eigen::Matrix2d G;
        G << d.L * scale, d.M * scale, d.M * scale, d.N * scale;
        const double s = std::sinh(r3 * u), ch = std::cosh(r3 * u);
        Eigen::Matrix2d J;
        J << 2.0 * r3 * s * ch, 0.0, -r3 * ch * std::exp(v) / (s * s), std::exp(v) / s;
        const Eigen::Matrix2d P = J.transpose() * G * J;
        return (std::abs(P(0, 0) - P(1, 1)) + 2.0 * std::abs(P(0, 1))) / (0.5 * (P(0, 0) + P(1, 1)));
    });
}

double case1_iso_invariants() {
    const Grid g{0.3, 1.5, -1.0, 1.0, 12, 12};
    return grid_max(g, [](double u, double v) {
        const AffineSample a = invariants_isothermal(case1_isothermal(u, v));
        const double s = std::sinh(std::sqrt(3.0) * u);
        const double gfac = 3.0 * (1.0 / (s * s) + 2.0 / 3.0);
        return std::max({rel(a.conformal, gfac / 2.0), std::abs(a.H + 1.0), std::abs(a.U - cplx(0.0, 1.0))});
    });
}

std::vector<double> twelve_angles() {
    std::vector<double> ts;
    for (int k = 0; k < 12; ++k) ts.push_back(2.0 * kPi / 3.0 * k / 12.0 + 0.05);
    return ts;
}

double case1_family_at_pi6() {
    const Surface fam = case1_family(kPi / 6.0);
    const Grid g{0.3, 1.5, -1.0, 1.0, 12, 12};
    return grid_max(g, [&](double x, double y) {
        const Vec3 a = fam.point(x, y), b = case1_isothermal(x, y).r;
        return (a - b).norm() / b.norm();
    });
}

double case1_family_invariants() {
    const Grid g{0.3, 1.5, -1.0, 1.0, 6, 6};
    double worst = 0.0;
    for (double t : twelve_angles()) {
        const Surface fam = case1_family(t);
        worst = std::max(worst, grid_max(g, [&](double x, double y) {
                             const AffineSample a = invariants_isothermal(fam.jet(x, y), 1e-6);
                             const double darg = std::remainder(std::arg(a.U) - 3.0 * t, 2.0 * kPi);
                             return std::max({std::abs(a.H + 1.0), rel(a.conformal, case1_conformal(x)),
                                              std::abs(darg), std::abs(std::abs(a.U) - 1.0)});
                         }));
    }
    return worst;
}

Grid weierstrass_grid(const CoefficientSet& cs, int nx, int ny) {
    const Rect r = weierstrass_default_domain(cs);
    return Grid{r.x0, r.x1, -1.0, 1.0, nx, ny};
}

double weierstrass_sphere() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid())
        for (int s : {1, -1}) {
            const WeierstrassSurface w = general_surface(p, c, s);
            const SphereReport rep = verify_affine_sphere(
                [&](double x, double y) { return w.jet(x, y); }, weierstrass_grid(w.coeffs(), 10, 6), -1.0, 1e-7);
            worst = std::max({worst, rep.max_defect, rep.max_H_error});
        }
    return worst;
}

double weierstrass_metric() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid())
        for (int s : {1, -1}) {
            const WeierstrassSurface w = general_surface(p, c, s);
            const cplx U = weierstrass_U(p, c, s);
            worst = std::max(worst, grid_max(weierstrass_grid(w.coeffs(), 10, 6), [&](double x, double y) {
                                 const AffineSample a = invariants_isothermal(w.jet(x, y), 1e-7);
                                 return std::max({rel(a.conformal, weierstrass_conformal(w.coeffs(), x)),
                                                  std::abs(a.U - U), std::abs(std::abs(a.U) - weierstrass_U_modulus(p, c))});
                             }));
        }
    return worst;
}

double weierstrass_cone_inside() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid())
        for (int s : {1, -1}) {
            const WeierstrassSurface w = general_surface(p, c, s);
            const ConeFrame f = weierstrass_frame(w);
            worst = std::max(worst, grid_max(weierstrass_grid(w.coeffs(), 16, 9), [&](double x, double y) {
                                 return std::max(0.0, -f.classify(w.jet(x, y).r).distance);
                             }));
        }
    return worst;
}

double weierstrass_cone_edges() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid())
        for (int s : {1, -1}) {
            const WeierstrassSurface w = general_surface(p, c, s);
            const ConeFrame f = weierstrass_frame(w);
            const double w1 = w.coeffs().ctx.omega1;
            for (double x : {-(1.0 - 1e-4) * w1, (1.0 - 1e-4) * w1})
                for (double y : {-1.0, 0.0, 1.0}) worst = std::max(worst, f.classify(w.jet(x, y).r).distance);
        }
    return worst;
}

double family_fsum() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid())
        for (int k = 0; k < 100; ++k) {
            const auto f = family_f(p, c, 2.0 * kPi / 3.0 * (k + 0.5) / 100.0);
            worst = std::max(worst, std::abs(f[0] + f[1] + f[2]) / (std::abs(f[0]) + std::abs(f[1]) + std::abs(f[2])));
        }
    return worst;
}

double family_base_angle_match() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid())
        for (int s : {1, -1}) {
            const WeierstrassSurface a = family_surface(p, c, family_base_angle(p, c, s));
            const WeierstrassSurface b = general_surface(p, c, s);
            worst = std::max(worst, grid_max(weierstrass_grid(b.coeffs(), 10, 6), [&](double x, double y) {
                                 const Vec3 u = a.jet(x, y).r, v = b.jet(x, y).r;
                                 return (u - v).norm() / v.norm();
                             }));
        }
    return worst;
}

double family_invariants() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid()) {
        const CoefficientSet cs = shorthand_coeffs(p, c);
        const Grid g = weierstrass_grid(cs, 5, 3);
        for (int k = 0; k < 6; ++k) {
            const double t = 2.0 * kPi / 3.0 * (k + 0.3) / 6.0;
            WeierstrassSurface w = [&] {
                try {
                    return family_surface(p, c, t);
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::BranchAmbiguity) return family_surface(p, c, t + 0.05);
                    throw;
                }
            }();
            worst = std::max(worst, grid_max(g, [&](double x, double y) {
                                 const AffineSample a = invariants_isothermal(w.jet(x, y), 1e-7);
                                 return std::max({std::abs(a.H + 1.0), rel(a.conformal, weierstrass_conformal(cs, x)),
                                                  std::abs(std::abs(a.U) - weierstrass_U_modulus(p, c))});
                             }));
        }
    }
    return worst;
}

double c_zero_limit() {
    double worst = 0.0;
    for (double p : {2.5, 3.0, 5.0})
        for (int s : {1, -1}) worst = std::max(worst, c_zero_limit_defect(p, -1e-6, s));
    return worst;
}

double coth_invariants() {
    double worst = 0.0;
    for (double p : {2.0, 3.0, 5.0}) {
        for (int which : {5, 3}) {
            const Surface s = which == 5 ? coth_case5(p) : coth_case3(p);
            const cplx U = which == 5 ? coth_case5_U(p) : coth_case3_U(p);
            const Grid g{-3.0, -0.05, -1.0, 1.0, 8, 5};
            worst = std::max(worst, grid_max(g, [&](double x, double y) {
                                 const AffineSample a = invariants_isothermal(s.jet(x, y), 1e-7);
                                 return std::max({std::abs(a.H + 1.0), rel(a.conformal, coth_conformal(p, x)),
                                                  std::abs(a.U - U)});
                             }));
        }
        for (double t : {0.1, 0.5, 1.3, 1.9}) {
            const Surface s = coth_family(p, t);
            const Grid g{0.05, 3.0, -1.0, 1.0, 8, 5};
            worst = std::max(worst, grid_max(g, [&](double x, double y) {
                                 const AffineSample a = invariants_isothermal(s.jet(x, y), 1e-7);
                                 return std::max({std::abs(a.H + 1.0), rel(a.conformal, coth_conformal(p, x)),
                                                  std::abs(std::abs(a.U) - coth_U_modulus(p))});
                             }));
        }
    }
    return worst;
}

double coth_equivalence() {
    double worst = 0.0;
    const Grid g{0.3, 1.5, -1.0, 1.0, 20, 20};
    for (double p : {2.0, 3.0, 5.0})
        for (double t : {0.2, 0.9, 1.7}) worst = std::max(worst, equivalence_theorem33_to_31(p, t, g));
    return worst;
}

std::vector<double> xi_grid(const HildebrandBranch& b) {
    std::vector<double> xs;
    for (double d : {1e-8, 1e-5, 1e-3, 0.05, 0.3}) xs.push_back(b.xi_lo + d);
    for (double x : {0.5, 0.999, 1.001, 1.5, 2.0, 3.0, 7.0, 20.0, 50.0})
        if (x > b.xi_lo) xs.push_back(x);
    return xs;
}

double ode_residual_max(double p, double c) {
    double worst = 0.0;
    for (int s : {1, -1}) {
        const HildebrandBranch b = hildebrand_original(p, c, s);
        for (double x : xi_grid(b)) worst = std::max(worst, b.ode_residual(x));
    }
    return worst;
}

double ode_closed_form() {
    double worst = 0.0;
    for (double p : {2.0, 3.0, 5.0}) worst = std::max(worst, ode_residual_max(p, -2.0 * (p + conjugate_exponent(p))));
    return worst;
}

double ode_quadrature() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid()) worst = std::max(worst, ode_residual_max(p, c));
    return std::max(worst, ode_residual_max(3.0, -1.0));
}

double ode_cone() {
    double worst = 0.0;
    for (auto [p, c] : surface_grid())
        for (int s : {1, -1}) {
            const HildebrandBranch b = hildebrand_original(p, c, s);
            const ConeFrame f = hildebrand_frame(b);
            for (double x : xi_grid(b))
                for (double mu : {-1.0, 0.0, 1.0})
                    worst = std::max(worst, std::max(0.0, -f.classify(b.point(x, mu)).distance));
        }
    return worst;
}

Grid weierstrass_psi_grid(const CoefficientSet& cs) {
    const Rect r = weierstrass_default_domain(cs);
    return Grid{r.x0, r.x1, -1.0, 1.0, 16, 3};
}

double tzitzeica_weierstrass_all() {
    double worst = 0.0;
    std::vector<PC> all = surface_grid();
    for (double p : {2.0, 3.0, 5.0}) {
        all.push_back({p, 0.0});
        all.push_back({p, -2.0 * (p + conjugate_exponent(p))});
    }
    for (auto [p, c] : all) {
        const CoefficientSet cs = shorthand_coeffs(p, c);
        worst = std::max(worst, tzitzeica_residual(tzitzeica_weierstrass(cs), weierstrass_psi_grid(cs)));
    }
    return worst;
}

double tzitzeica_coth_all() {
    double worst = 0.0;
    for (double p : {2.0, 3.0, 5.0})
        worst = std::max(worst, tzitzeica_residual(tzitzeica_coth(p), Grid{-3.0, -0.05, -1.0, 1.0, 16, 3}));
    return worst;
}

const Grid kCase1Grid{0.3, 1.5, -1.0, 1.0, 16, 16};

double zero_curvature_all() {
    double worst = 0.0;
    const TzitzeicaData c1 = tzitzeica_case1();
    const TzitzeicaData w = tzitzeica_weierstrass(shorthand_coeffs(3.0, -1.0));
    for (double t : {0.0, 0.4, 1.1})
        for (auto [x, y] : {std::pair{0.5, 0.2}, std::pair{1.2, -0.7}}) {
            worst = std::max(worst, zero_curvature_residual(c1, std::polar(1.0, 3.0 * t), x, y));
            worst = std::max(worst, zero_curvature_residual(w, std::polar(1.0, 3.0 * t), x - 1.0, y));
        }
    return worst;
}

struct ReconStats {
    double err = 0.0, det = 0.0, reality = 0.0;
};

ReconStats reconstruct(const TzitzeicaData& data, double t, const JetSampler& jet, const Grid& g) {
    const FrameState base = frame_from_jet(jet(g.x0, g.y0));
    const Reconstruction rec = reconstruct_family(data, std::polar(1.0, 3.0 * t), base, g);
    ReconStats st;
    st.det = rec.max_det_drift;
    st.reality = rec.max_reality_defect;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec3 a = rec.points[static_cast<std::size_t>(j) * g.nx + i], b = jet(g.x(i), g.y(j)).r;
            st.err = std::max(st.err, (a - b).norm() / b.norm());
        }
    return st;
}

std::vector<ReconStats> run_reconstructions() {
    std::vector<ReconStats> out;
    const Grid g{0.3, 1.5, -1.0, 1.0, 32, 32};
    for (double t : twelve_angles()) {
        const Surface fam = case1_family(t);
        out.push_back(reconstruct(tzitzeica_case1(), t, fam.jet, g));
    }
    const double p = 3.0, c = -1.0;
    const CoefficientSet cs = shorthand_coeffs(p, c);
    const Rect r = weierstrass_default_domain(cs);
    const Grid gw{r.x0, r.x1, -1.0, 1.0, 32, 32};
    const double t0 = family_base_angle(p, c, 1);
    for (double t : {t0, t0 + 0.3}) {
        const WeierstrassSurface w = family_surface(p, c, t);
        out.push_back(reconstruct(tzitzeica_weierstrass(cs), t, [&](double x, double y) { return w.jet(x, y); }, gw));
    }
    return out;
}

const std::vector<ReconStats>& reconstruction_suite() {
    static const std::vector<ReconStats> suite = run_reconstructions();
    return suite;
}

double reconstruct_error(bool general) {
    double worst = 0.0;
    const auto suite = reconstruction_suite();
    for (std::size_t k = 0; k < suite.size(); ++k)
        if ((k >= 12) == general) worst = std::max(worst, suite[k].err);
    return worst;
}

double det_drift() {
    double worst = 0.0;
    for (const auto& st : reconstruction_suite()) worst = std::max(worst, st.det);
    return worst;
}

double holonomy() {
    double worst = 0.0;
    for (double t : {0.2, 0.9, 1.6}) {
        const FrameState base = frame_from_jet(case1_family(t).jet(0.4, -0.5));
        worst = std::max(worst, holonomy_defect(tzitzeica_case1(), std::polar(1.0, 3.0 * t), base, 1.3, 0.8));
    }
    const CoefficientSet cs = shorthand_coeffs(3.0, -1.0);
    const double t0 = family_base_angle(3.0, -1.0, 1);
    const FrameState base = frame_from_jet(family_surface(3.0, -1.0, t0).jet(-1.0, -0.5));
    return std::max(worst, holonomy_defect(tzitzeica_weierstrass(cs), std::polar(1.0, 3.0 * t0), base, 1.0, 0.8));
}

double modulus_paper() { return std::abs(modulus_match(3.0, 1.0, 2.0).c - 4.39); }

double ellipsoid_control() {
    const SphereReport rep = verify_affine_sphere(ellipsoid_jet, Grid{-1.0, 1.0, -1.0, 1.0, 8, 8}, -1.0);
    return rep.max_H_error;
}

double perturbed_control() { return tzitzeica_residual(tzitzeica_perturbed(tzitzeica_case1(), 0.01), kCase1Grid); }

std::vector<CheckDef> build_registry() {
    std::vector<CheckDef> r;
    auto add = [&](std::string name, std::string surface, int crit, double tol, std::function<double()> fn,
                   bool lower = false) { r.push_back({std::move(name), std::move(surface), crit, tol, lower, std::move(fn)}); };
    add("wp_ode", "elliptic", 1, 1e-10, wp_ode_residual);
    add("sn_relation", "elliptic", 1, 1e-9, sn_relation_residual);
    add("dets", "case1", 2, 1e-8, case1_dets_residual);
    add("iso_pushforward", "case1", 3, 1e-8, iso_pushforward_defect);
    add("invariants", "case1", 3, 1e-8, case1_iso_invariants);
    add("pi6_match", "case1-family", 4, 1e-8, case1_family_at_pi6);
    add("invariants", "case1-family", 4, 1e-6, case1_family_invariants);
    add("sphere", "weierstrass", 5, 1e-6, weierstrass_sphere);
    add("metric", "weierstrass", 5, 1e-6, weierstrass_metric);
    add("cone_inside", "weierstrass", 5, 1e-9, weierstrass_cone_inside);
    add("cone_edges", "weierstrass", 5, 1e-3, weierstrass_cone_edges);
    add("f_sum", "family", 6, 1e-12, family_fsum);
    add("base_angle", "family", 6, 1e-6, family_base_angle_match);
    add("invariants", "family", 6, 1e-6, family_invariants);
    add("c_zero_limit", "family", 6, 1e-3, c_zero_limit);
    add("invariants", "coth", 7, 1e-6, coth_invariants);
    add("equivalence", "coth", 7, 1e-8, coth_equivalence);
    add("ode_closed_form", "hildebrand", 8, 1e-7, ode_closed_form);
    add("ode_quadrature", "hildebrand", 8, 1e-7, ode_quadrature);
    add("cone_inside", "hildebrand", 8, 1e-9, ode_cone);
    add("tzitzeica", "case1", 9, 1e-8, [] { return tzitzeica_residual(tzitzeica_case1(), kCase1Grid); });
    add("tzitzeica", "weierstrass", 9, 1e-8, tzitzeica_weierstrass_all);
    add("tzitzeica", "coth", 9, 1e-8, tzitzeica_coth_all);
    add("tzitzeica", "vacuum", 9, 1e-8, [] { return tzitzeica_residual(tzitzeica_vacuum(), kCase1Grid); });
    add("zero_curvature", "structure", 9, 1e-7, zero_curvature_all);
    add("reconstruct", "case1-family", 9, 1e-5, [] { return reconstruct_error(false); });
    add("reconstruct", "family", 9, 1e-5, [] { return reconstruct_error(true); });
    add("det_drift", "structure", 9, 1e-7, det_drift);
    add("holonomy", "structure", 9, 1e-6, holonomy);
    add("modulus_match", "modulus", 10, 0.01, modulus_paper);
    add("negative_ellipsoid", "ellipsoid", 11, 0.1, ellipsoid_control, true);
    add("negative_tzitzeica", "case1", 11, 1e-4, perturbed_control, true);
    return r;
}

}  // namespace

Jet2 ellipsoid_jet(double x, double y) {
    const Vec3 axes(1.0, 2.0, 0.5);
    const double S = sech(x), T = std::tanh(x);
    const double S1 = -S * T, S2 = S * (T * T - S * S);
    const double T1 = S * S, T2 = -2.0 * S * S * T;
    const double cy = std::cos(y), sy = std::sin(y);
    Jet2 j;
    j.x = x;
    j.y = y;
    j.r = Vec3(S * cy, S * sy, T);
    j.r_x = Vec3(S1 * cy, S1 * sy, T1);
    j.r_y = Vec3(-S * sy, S * cy, 0.0);
    j.r_xx = Vec3(S2 * cy, S2 * sy, T2);
    j.r_xy = Vec3(-S1 * sy, S1 * cy, 0.0);
    j.r_yy = Vec3(-S * cy, -S * sy, 0.0);
    for (Vec3* v : {&j.r, &j.r_x, &j.r_y, &j.r_xx, &j.r_xy, &j.r_yy}) *v = v->cwiseProduct(axes);
    return j;
}

const std::vector<CheckDef>& check_registry() {
    static const std::vector<CheckDef> registry = build_registry();
    return registry;
}

bool matches(const CheckDef& def, const CheckFilter& filter) {
    if (!filter.only.empty() && filter.only != def.name && filter.only != def.id()) return false;
    if (!filter.surface.empty() && filter.surface != def.surface) return false;
    return true;
}

CheckRecord run_check(const CheckDef& def, std::optional<double> tol) {
    CheckRecord rec;
    rec.name = def.id();
    rec.criterion = def.criterion;
    rec.tol = tol.value_or(def.tol);
    rec.lower_bound = def.lower_bound;
    const auto start = std::chrono::steady_clock::now();
    try {
        rec.residual = def.run();
        rec.pass = std::isfinite(rec.residual) && (def.lower_bound ? rec.residual > rec.tol : rec.residual < rec.tol);
    } catch (const std::exception& e) {
        rec.residual = std::numeric_limits<double>::quiet_NaN();
        rec.error = e.what();
        rec.pass = false;
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<CheckRecord> run_checks(const CheckFilter& filter, int threads) {
    std::vector<const CheckDef*> selected;
    for (const CheckDef& d : check_registry())
        if (matches(d, filter)) selected.push_back(&d);
    std::vector<CheckRecord> out(selected.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < selected.size(); k = next++) out[k] = run_check(*selected[k], filter.tol);
    };
    const int n = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(selected.size(), 1)));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace asph
