#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "asph/cones.hpp"
#include "asph/families.hpp"

using namespace asph;
using doctest::Approx;

namespace {

constexpr double kMatchC = 4.3839090880318537786;
constexpr double kMatchK2 = 0.38064170288359447218;
constexpr double kU3m1 = 0.086318075657333703011;
const double kR3 = std::sqrt(3.0);

Mat3 jet_frame(const Jet2& j) {
    Mat3 m;
    m << j.r, j.r_x, j.r_y;
    return m;
}

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

double max_gap(const Surface& a, const Surface& b, const Grid& g) {
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec3 u = a.point(g.x(i), g.y(j)), v = b.point(g.x(i), g.y(j));
            worst = std::max(worst, (u - v).norm() / std::max(1.0, v.norm()));
        }
    return worst;
}

}  // namespace

TEST_CASE("exponent bookkeeping") {
    CHECK(conjugate_exponent(2.0) == 2.0);
    CHECK(conjugate_exponent(3.0) == Approx(1.5));
    CHECK(kind_of([] { validate_p(1.5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("raw exponential-cone chart") {
    const Jet2 j = case1_raw(1.0, 1.0);
    CHECK((j.r - Vec3(-1.0, std::sqrt(2.0), 1.0)).norm() < 1e-15);
    CHECK((j.r_x - Vec3(-2.5, -5.0 * std::sqrt(2.0) / 4.0, 0.0)).norm() < 1e-14);
    CHECK(case1_raw(1e-4, 1.0).r[1] > 1e5);
    CHECK(case1_raw(1e-8, 1.0).r[1] > case1_raw(1e-4, 1.0).r[1]);
    CHECK(kind_of([] { case1_raw(-1.0, 1.0); }) == ErrorKind::DomainViolation);
    CHECK(kind_of([] { case1_raw(1.0, 0.0); }) == ErrorKind::DomainViolation);
}

TEST_CASE("isothermal map of the raw chart") {
    const auto [u, v] = case1_iso_map(1.0, 1.0);
    CHECK(u == Approx(std::log(1.0 + std::sqrt(2.0)) / kR3).epsilon(1e-15));
    CHECK(std::abs(v) < 1e-15);
    CHECK(case1_base_u() == Approx(u).epsilon(1e-15));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(0.05, 5.0);
    for (int n = 0; n < 100; ++n) {
        const double x = d(rng), y = d(rng);
        const auto [a, b] = case1_iso_map(x, y);
        const auto [x2, y2] = case1_iso_unmap(a, b);
        CHECK(x2 == Approx(x).epsilon(1e-12));
        CHECK(y2 == Approx(y).epsilon(1e-12));
    }
    CHECK(kind_of([] { case1_iso_map(0.0, 1.0); }) == ErrorKind::DomainViolation);
}

TEST_CASE("isothermal exponential-cone chart") {
    const Jet2 j = case1_isothermal(case1_base_u(), 0.0);
    CHECK((j.r - Vec3(1.0, -std::sqrt(2.0), -1.0) / kR3).norm() < 1e-14);
    const Mat3 A = theorem31_gauge(0.3).A;
    CHECK((A.col(0) - j.r).norm() < 1e-14);
    for (double u : {0.3, 0.8, 1.5})
        for (double v : {-1.0, 0.5}) {
            const AffineSample a = invariants_isothermal(case1_isothermal(u, v));
            const double cs = 1.0 / std::sinh(kR3 * u);
            CHECK(a.conformal == Approx((3.0 * cs * cs + 2.0) / 2.0).epsilon(1e-12));
            CHECK(case1_conformal(u) == Approx(a.conformal).epsilon(1e-12));
            CHECK(a.H == Approx(-1.0).epsilon(1e-12));
            CHECK(std::abs(a.U - cplx(0, 1)) < 1e-12);
        }
    CHECK(case1_conformal(30.0) == Approx(1.0).epsilon(1e-15));
    CHECK(kind_of([] { case1_isothermal(0.0, 0.0); }) == ErrorKind::DomainViolation);
}

TEST_CASE("exponential-cone family") {
    const Grid g{0.3, 1.5, -1.0, 1.0, 9, 9};
    CHECK(max_gap(case1_family(kPi / 6.0), case1_isothermal_surface(), g) < 1e-8);
    const Vec3 base(case1_base_u(), 0.0, 0.0);
    for (double t : {0.0, 0.4, 1.0, 1.9, 2.05}) {
        CAPTURE(t);
        const Mat3 A = theorem31_gauge(0.4).A;
        CHECK((jet_frame(case1_family(t).jet(base[0], 0.0)) - A).norm() < 1e-9);
    }
    const AffineSample a = invariants_isothermal(case1_family(0.5).jet(0.9, 0.2));
    CHECK(a.H == Approx(-1.0).epsilon(1e-10));
    CHECK(a.conformal == Approx(case1_conformal(0.9)).epsilon(1e-10));
    CHECK(std::abs(std::arg(a.U) - 1.5) < 1e-10);
}

TEST_CASE("gauge matrices of the exponential-cone family") {
    const Theorem31Gauge g = theorem31_gauge(0.7);
    CHECK(std::abs(g.A.determinant()) > 1e-6);
    CHECK(g.D(0, 1) == 0.0);
    CHECK(g.D(1, 0) == 0.0);
    CHECK(g.D(2, 0) == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(g.D(i, i) > 0.0);
    const Mat3 DB = g.D * g.B;
    CHECK(DB.determinant() == Approx(-10.0 * std::cos(2.1)).epsilon(1e-10));
    CHECK(kind_of([] { theorem31_gauge(kPi / 6.0); }) == ErrorKind::SingularGauge);
    CHECK(kind_of([] { theorem31_gauge(kPi / 2.0); }) == ErrorKind::SingularGauge);
}

TEST_CASE("coefficient shorthand") {
    const CoefficientSet a = shorthand_coeffs(2.0, 2.0, 0.0);
    CHECK(a.b1 == Approx(1.0));
    CHECK(std::abs(a.b2) < 1e-15);
    CHECK(a.b3 == Approx(-4.0));
    CHECK(a.g2 == Approx(0.75));
    CHECK(a.g3 == Approx(0.125));
    CHECK(a.ctx.degenerate);
    const CoefficientSet b = shorthand_coeffs(3.0, 1.5, 1.0);
    CHECK(b.b1 == Approx(7.0 / 6.0).epsilon(1e-15));
    CHECK(std::abs(b.b2) < 1e-15);
    CHECK(b.b3 == Approx(1.0 / 18.0 - 4.5).epsilon(1e-15));
    CHECK(b.g2 == Approx(49.0 / 48.0).epsilon(1e-15));
    CHECK(b.g3 == Approx(0.079282407407407407407).epsilon(1e-14));
    CHECK(kind_of([] { shorthand_coeffs(3.0, 2.0, -1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("coefficient invariants over a parameter grid") {
    for (double p : {2.0, 2.5, 3.0, 5.0}) {
        const double q = conjugate_exponent(p), lim = 2.0 * (p + q);
        for (double c : {0.0, -0.3 * lim, -0.7 * lim, -lim}) {
            CAPTURE(p);
            CAPTURE(c);
            const CoefficientSet cs = shorthand_coeffs(p, c);
            for (double xi : {-3.0, -0.5, 0.0, 1.25, 4.0}) {
                const double lhs = ((xi + 3 * cs.b1) * xi + 3 * cs.b2) * xi + cs.b3;
                const double rhs = c * c / (4 * (p + q)) + (xi - 1) * (xi + p) * (xi + q);
                CHECK(lhs == Approx(rhs).epsilon(1e-12));
                CHECK(lhs == Approx(((cs.poly[0] * xi + cs.poly[1]) * xi + cs.poly[2]) * xi + cs.poly[3]).epsilon(1e-12));
            }
            CHECK(cs.g2 == Approx(0.75 * (cs.b1 * cs.b1 - cs.b2)).epsilon(1e-14));
            CHECK(cs.g3 == Approx((3 * cs.b1 * cs.b2 - 2 * cs.b1 * cs.b1 * cs.b1 - cs.b3) / 16).epsilon(1e-14));
            const CubicRoots r = cubic_roots(cs.poly[0], cs.poly[1], cs.poly[2], cs.poly[3]);
            std::array<double, 3> e{cs.ctx.e1, cs.ctx.e2, cs.ctx.e3};
            for (int i = 0; i < 3; ++i) CHECK((r.roots[i].real() + cs.b1) / 4.0 == Approx(e[i]).epsilon(1e-7));
            const std::array<double, 3> shift{p, q, -1.0};
            for (int i = 0; i < 3; ++i) {
                if (!cs.a_valid[i]) continue;
                CHECK(std::abs(4.0 * wp(cs.ctx, cs.a[i]) - cs.b1 + shift[i]) < 1e-9);
                CHECK(wp_prime(cs.ctx, cs.a[i]).real() <= 1e-12);
            }
        }
    }
}

TEST_CASE("general sigma-quotient surfaces") {
    for (double p : {2.0, 3.0, 5.0}) {
        const double lim = 2.0 * (p + conjugate_exponent(p));
        for (double c : {-0.25 * lim, -0.9 * lim}) {
            CAPTURE(p);
            CAPTURE(c);
            const CoefficientSet cs = shorthand_coeffs(p, c);
            const WeierstrassSurface plus = general_surface(p, c, 1), minus = general_surface(p, c, -1);
            const Rect dom = weierstrass_default_domain(cs);
            for (double f : {0.15, 0.5, 0.85})
                for (double y : {-1.0, 0.6}) {
                    const double x = dom.x0 + f * (dom.x1 - dom.x0);
                    const AffineSample a = invariants_isothermal(plus.jet(x, y)), b = invariants_isothermal(minus.jet(x, y));
                    CHECK(a.H == Approx(-1.0).epsilon(1e-8));
                    CHECK(b.H == Approx(-1.0).epsilon(1e-8));
                    CHECK(a.conformal == Approx(weierstrass_conformal(cs, x)).epsilon(1e-8));
                    CHECK(b.conformal == Approx(a.conformal).epsilon(1e-8));
                    CHECK(std::abs(a.U) == Approx(weierstrass_U_modulus(p, c)).epsilon(1e-8));
                    CHECK(std::abs(b.U) == Approx(std::abs(a.U)).epsilon(1e-8));
                }
        }
    }
}

TEST_CASE("cubic form modulus") {
    CHECK(weierstrass_U_modulus(3.0, -1.0) == Approx(kU3m1).epsilon(1e-14));
    for (double p : {2.0, 3.5}) {
        for (double c : {0.0, -2.0}) {
            const double u2 = c * c * (p - 1) / std::pow(32 * p, 2) +
                              std::pow((p - 2) * (2 * p - 1) * (p + 1), 2) / (4 * std::pow(12 * (p - 1), 3));
            CHECK(std::norm(weierstrass_U(p, c, 1)) == Approx(u2).epsilon(1e-14));
            CHECK(std::abs(weierstrass_U(p, c, -1)) == Approx(std::sqrt(u2)).epsilon(1e-14));
        }
    }
}

TEST_CASE("unsimplified form agrees up to the constant diagonal gauge") {
    for (double p : {2.5, 3.0, 5.0})
        for (int s : {1, -1}) {
            const double c = -1.5;
            const CoefficientSet cs = shorthand_coeffs(p, c);
            const WeierstrassSurface g = general_surface(p, c, s);
            const Vec3 gauge(1.0 / (3 * p), 1.0 / (3 * p), -s * kR3 * (p - 1) * c / 2);
            for (auto [x, y] : {std::pair{-0.4, 0.0}, {-1.0, 0.8}, {-0.2, -1.5}}) {
                const CVec3 u = general_surface_unsimplified(cs, s, x, y);
                const Vec3 r = g.jet(x, y).r;
                for (int i = 0; i < 3; ++i) CHECK(std::abs(r[i] - gauge[i] * u[i]) < 1e-9 * std::abs(r[i]));
            }
        }
}

TEST_CASE("family exponents sum to zero") {
    for (int k = 0; k < 100; ++k) {
        const double t = 2.0 * kPi / 3.0 * k / 100.0;
        const auto f = family_f(3.0, -1.0, t);
        CHECK(std::abs(f[0] + f[1] + f[2]) < 1e-12);
    }
}

TEST_CASE("family at the base angle reproduces the general surfaces") {
    for (double p : {2.5, 3.0, 5.0})
        for (int s : {1, -1}) {
            const double c = -2.0;
            const double t0 = family_base_angle(p, c, s);
            CHECK(family_member(p, c, t0).s == s);
            const Surface a = family_surface(p, c, t0).surface("family");
            const Surface b = general_surface(p, c, s).surface("general");
            const Rect dom = weierstrass_default_domain(shorthand_coeffs(p, c));
            CHECK(max_gap(a, b, Grid{dom.x0, dom.x1, -1.0, 1.0, 7, 5}) < 1e-6);
        }
}

TEST_CASE("associated family law along t") {
    const double p = 3.0, c = -2.5;
    const CoefficientSet cs = shorthand_coeffs(p, c);
    double offset = 0.0;
    bool first = true;
    for (int k = 0; k < 12; ++k) {
        const double t = 2.0 * kPi / 3.0 * k / 12.0 + 0.05;
        const WeierstrassSurface w = family_surface(p, c, t);
        for (double x : {-1.2, -0.4}) {
            const AffineSample a = invariants_isothermal(w.jet(x, 0.3));
            CHECK(a.H == Approx(-1.0).epsilon(1e-6));
            CHECK(a.conformal == Approx(weierstrass_conformal(cs, x)).epsilon(1e-6));
            CHECK(std::abs(a.U) == Approx(weierstrass_U_modulus(p, c)).epsilon(1e-6));
            const double d = std::remainder(std::arg(a.U) - 3.0 * t, 2.0 * kPi);
            if (first) offset = d, first = false;
            CHECK(std::abs(std::remainder(d - offset, 2.0 * kPi)) < 1e-6);
        }
    }
}

TEST_CASE("family guard band around cos 3t = 0") {
    CHECK(kind_of([] { family_surface(3.0, -1.0, kPi / 6.0); }) == ErrorKind::BranchAmbiguity);
    CHECK(kind_of([] { family_surface(3.0, -1.0, kPi / 2.0 + 1e-6); }) == ErrorKind::BranchAmbiguity);
    CHECK_NOTHROW(family_surface(3.0, -1.0, kPi / 6.0 + 1e-3));
    CHECK_NOTHROW(family_surface(3.0, -1.0, 0.0));
    CHECK(kind_of([] { family_member(3.0, 0.0, 0.3); }) == ErrorKind::DomainViolation);
    CHECK(family_member(3.0, -1.0, 0.1).s == -1);
    CHECK(family_member(3.0, -1.0, 0.8).s == 1);
}

TEST_CASE("c = 0 surfaces") {
    for (double p : {2.5, 3.0, 5.0})
        for (int sign : {1, -1}) {
            const Surface s = c_zero_surface(p, sign);
            const Rect d = s.domain;
            for (double f : {0.2, 0.5, 0.8}) {
                const AffineSample a = invariants_isothermal(s.jet(d.x0 + f * (d.x1 - d.x0), 0.4));
                CHECK(a.H == Approx(-1.0).epsilon(1e-8));
                CHECK(std::abs(a.U.real()) < 1e-9);
                CHECK(std::abs(a.U) == Approx(weierstrass_U_modulus(p, 0.0)).epsilon(1e-8));
            }
        }
    CHECK(kind_of([] { c_zero_jet(shorthand_coeffs(3.0, 0.0), 1, 0.1, 0.0); }) == ErrorKind::DomainViolation);
}

TEST_CASE("small-c family members approach the c = 0 surfaces") {
    for (double p : {2.5, 3.0, 5.0})
        for (int s : {1, -1}) CHECK(c_zero_limit_defect(p, -1e-6, s) < 1e-3);
}

TEST_CASE("coth closed forms") {
    for (double p : {2.0, 3.0, 5.0}) {
        CAPTURE(p);
        const double mod = kR3 / 72.0 * std::pow((p * p - p + 1) / (p - 1), 1.5);
        CHECK(coth_U_modulus(p) == Approx(mod).epsilon(1e-14));
        CHECK(std::abs(coth_case5_U(p)) == Approx(mod).epsilon(1e-13));
        CHECK(std::abs(coth_case3_U(p)) == Approx(mod).epsilon(1e-13));
        const cplx I(0, 1);
        const cplx u5 = -I * kR3 * std::pow(cplx(2 * p - 1, -kR3), 3) / (576 * std::pow(p - 1, 1.5));
        const cplx u3 = -I * kR3 * std::pow(cplx(2 * p - 1, kR3), 3) / (576 * std::pow(p - 1, 1.5));
        CHECK(std::abs(coth_case5_U(p) - u5) < 1e-13);
        CHECK(std::abs(coth_case3_U(p) - u3) < 1e-13);
        for (const Surface& s : {coth_case5(p), coth_case3(p), coth_family(p, 0.7)}) {
            CAPTURE(s.name);
            const Rect d = s.domain;
            for (double f : {0.2, 0.7}) {
                const double x = d.x0 + f * (d.x1 - d.x0);
                const AffineSample a = invariants_isothermal(s.jet(x, -0.3));
                CHECK(a.H == Approx(-1.0).epsilon(1e-6));
                CHECK(a.conformal == Approx(coth_conformal(p, x)).epsilon(1e-6));
                CHECK(std::abs(a.U) == Approx(mod).epsilon(1e-6));
            }
        }
    }
    CHECK(kind_of([] { coth_case5(3.0).jet(0.0, 0.0); }) == ErrorKind::DomainViolation);
}

TEST_CASE("coth family scale is one at the base angles") {
    const double p = 3.0;
    for (const cplx U : {coth_case5_U(p), coth_case3_U(p)}) {
        const double t = std::arg(U) / 3.0;
        CHECK(coth_family_scale(p, t) == Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("matrix E and the equivalence of the two exponential families") {
    for (double p : {2.0, 3.0, 5.0}) {
        const Mat3 E = matrix_E(p);
        const double n = p * p - p + 1;
        CHECK(E(0, 2) == Approx(std::sqrt(3 * p * p / n)).epsilon(1e-15));
        CHECK(E(1, 1) == Approx(-std::sqrt(3 * (p - 1) / n)).epsilon(1e-15));
        CHECK(E(2, 0) == Approx(-std::sqrt(3 * (p - 1) / n)).epsilon(1e-15));
        const Grid g{0.3, 1.5, -1.0, 1.0, 20, 20};
        for (double t : {0.25, 1.3}) CHECK(equivalence_theorem33_to_31(p, t, g) < 1e-8);
    }
}

TEST_CASE("p = 2 at c = -8 is continuous with the coth limit") {
    const CoefficientSet cs = shorthand_coeffs(2.0, 2.0, -8.0);
    CHECK(cs.ctx.kind == LatticeKind::Hyperbolic);
    for (double x : {-2.0, -0.5}) CHECK(weierstrass_conformal(cs, x) == Approx(coth_conformal(2.0, -x)).epsilon(1e-9));
    const AffineSample a = invariants_isothermal(general_surface(2.0, -8.0, 1).jet(-1.0, 0.2));
    CHECK(std::abs(a.U) == Approx(coth_U_modulus(2.0)).epsilon(1e-8));
    CHECK(a.H == Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("closed-form ODE branch at c = -2(p+q)") {
    const HildebrandBranch b = hildebrand_original(3.0, -9.0, 1);
    REQUIRE(b.closed_form);
    CHECK(b.t_end() == 1.0);
    for (double xi : {1e-6, 0.01, 0.5, 2.0, 10.0, 200.0}) {
        CAPTURE(xi);
        CHECK(b.ode_residual(xi) < 1e-7);
        CHECK(b.e_phi(xi) > 0.0);
        CHECK(b.t(xi) == Approx(theorem33_t(3.0, xi)).epsilon(1e-12));
        const double h = 1e-3 * xi;
        const double fd = (std::log(theorem33_t(3.0, xi + h)) - std::log(theorem33_t(3.0, xi - h))) / (2 * h);
        CHECK(theorem33_dlogt(3.0, xi) == Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("quadrature ODE branches at generic parameters") {
    for (double p : {2.0, 3.0, 5.0}) {
        const double lim = 2.0 * (p + conjugate_exponent(p));
        for (double c : {-0.5 * lim, -0.1 * lim})
            for (int s : {1, -1}) {
                CAPTURE(p);
                CAPTURE(c);
                CAPTURE(s);
                const HildebrandBranch b = hildebrand_original(p, c, s);
                const double hi = s > 0 ? b.xi_lo + 40.0 : 1.0 - 1e-6;
                for (double f : {1e-6, 1e-3, 0.1, 0.4, 0.7, 0.95}) {
                    const double xi = b.xi_lo + f * (std::min(hi, b.xi_lo + 40.0) - b.xi_lo);
                    CHECK(b.ode_residual(xi) < 1e-7);
                    CHECK(b.e_phi(xi) > 0.0);
                }
            }
    }
}

TEST_CASE("ODE chart image lies inside its cone and is a proper affine sphere") {
    for (int s : {1, -1}) {
        const HildebrandBranch b = hildebrand_original(3.0, -3.0, s);
        const ConeFrame f = hildebrand_frame(b);
        const double span = s > 0 ? 3.0 : 1.0 - b.xi_lo;
        for (double xi : {b.xi_lo + 0.01 * span, b.xi_lo + 0.2 * span, b.xi_lo + 0.99 * span})
            for (double mu : {-1.0, 0.0, 1.5}) CHECK(f.classify(b.point(xi, mu)).region != ConeRegion::Outside);
        const JetSampler jets = fd_jets([&](double xi, double mu) { return b.point(xi, mu); });
        const double x0 = b.xi_lo + 0.1 * span, x1 = b.xi_lo + 0.9 * span;
        const SphereReport r = verify_affine_sphere_centroaffine(jets, Grid{x0, x1, -1.0, 1.0, 6, 4}, -1.0);
        CHECK(r.max_defect < 1e-5);
    }
}

TEST_CASE("ODE chart limits") {
    const HildebrandBranch b = hildebrand_original(3.0, -1.0, -1);
    CHECK(b.t_end() < 0.0);
    CHECK(b.t_end() > -1.0);
    CHECK(b.t(1.0 - 1e-3) > 0.0);
    CHECK(b.t(1.0 + 1e-3) < 0.0);
    CHECK(b.t(b.xi_lo + 1e4) == Approx(b.t_end()).epsilon(1e-3));
    CHECK(hildebrand_original(3.0, -9.0, -1).t_end() == Approx(-1.0));
    CHECK(b.t(1.0) == Approx(0.0).scale(1.0).epsilon(1e-9));
    const HildebrandBranch a = hildebrand_original(3.0, -1.0, 1);
    CHECK(a.t_end() == 1.0);
    CHECK(a.t(a.xi_lo + 1e4) == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("modulus matching") {
    const ModulusMatch m = modulus_match(3.0, 1.0, 2.0);
    CHECK(m.c == Approx(kMatchC).epsilon(1e-10));
    CHECK(std::abs(m.c - 4.39) < 0.01);
    CHECK(m.k2 == Approx(kMatchK2).epsilon(1e-10));
    CHECK(m.k2_defect < 1e-10);
    CHECK(modulus_match(3.0, -1.0, 3.0).c == Approx(-1.0).epsilon(1e-10));
    CHECK(modulus_match(5.0, 2.0, 5.0).c == Approx(2.0).epsilon(1e-10));
    CHECK(kind_of([] { modulus_match(3.0, -0.01, 5.0); }) == ErrorKind::NoBracket);
}

TEST_CASE("k^2 is monotone in |c|") {
    for (double p : {2.0, 3.0, 5.0}) {
        const double lim = 2.0 * (p + conjugate_exponent(p));
        double prev = -1.0;
        for (int i = 1; i < 50; ++i) {
            const double k = modulus_k2(p, -lim * i / 50.0);
            CHECK(k > prev);
            prev = k;
        }
    }
}
