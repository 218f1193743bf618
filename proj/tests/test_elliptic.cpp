#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "asph/elliptic.hpp"
#include "asph/families.hpp"

using namespace asph;
using doctest::Approx;

namespace {

// Reference values from tests/oracles/generate.py (Laurent series, 40 digits).
constexpr double kOmega1Square = 1.3110287771460599052;
constexpr double kWp07 = 2.1403966509562005679;
constexpr double kWpPrime07 = -5.5372909865148217791;
constexpr double kZeta07 = 1.4055471552684520421;
constexpr double kSigma07 = 0.69719483085822076856;
const cplx kZc(0.6, 0.45);
const cplx kWpZc(0.52751543244324087227, -1.6002267921592329734);
const cplx kWpPrimeZc(1.8900806243120378079, 4.615751588170984976);
const cplx kZetaZc(1.0766180493307475308, -0.8260773413768231585);
const cplx kSigmaZc(0.60393711996192050392, 0.45030347160192354762);
constexpr double kInverseOf2 = 0.72694593546890819854;
constexpr double kOmega1Trig = 1.8137993642342178506;
constexpr double kWpTrig09 = 1.2681422792521201162;
constexpr double kZetaTrig09 = 1.1014372648696084033;
constexpr double kWpHyp09 = 1.2622447194658013865;
constexpr double kWpPrimeHyp09 = -2.6875009379094259203;
constexpr double kSigmaHyp09 = 0.89822455594295448596;
constexpr double kOmega1P3 = 1.7635330968208452146;
constexpr double kWpP3At09 = 1.2782506216528102883;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<EllipticContext> sample_contexts() {
    std::vector<EllipticContext> out;
    for (double p : {2.0, 2.5, 3.0, 5.0}) {
        const double lim = 2.0 * (p + conjugate_exponent(p));
        for (double c : {0.0, -1.0, -0.5 * lim, -0.9 * lim, -lim}) out.push_back(shorthand_coeffs(p, c).ctx);
    }
    return out;
}

cplx random_point(std::mt19937_64& rng, const EllipticContext& ctx) {
    const double w1 = std::isfinite(ctx.omega1) ? ctx.omega1 : 2.0;
    const double w3 = std::isfinite(ctx.omega3_im) ? ctx.omega3_im : 2.0;
    std::uniform_real_distribution<double> ux(0.05 * w1, 1.95 * w1), uy(-0.9 * w3, 0.9 * w3);
    return {ux(rng), uy(rng)};
}

}  // namespace

TEST_CASE("context of a degenerate trigonometric lattice") {
    const EllipticContext ctx = make_context(0.75, 0.125);
    CHECK(ctx.e1 == Approx(0.5).epsilon(1e-12));
    CHECK(ctx.e2 == Approx(-0.25).epsilon(1e-7));
    CHECK(ctx.e3 == Approx(-0.25).epsilon(1e-7));
    CHECK(ctx.degenerate);
    CHECK(ctx.kind == LatticeKind::Trigonometric);
    CHECK(ctx.k2 == Approx(0.0));
    CHECK(ctx.omega1 == Approx(kOmega1Trig).epsilon(1e-12));
    CHECK(wp(ctx, 0.9).real() == Approx(kWpTrig09).epsilon(1e-12));
    CHECK(zeta(ctx, 0.9).real() == Approx(kZetaTrig09).epsilon(1e-12));
}

TEST_CASE("context of the square lattice g2 = 4, g3 = 0") {
    const EllipticContext ctx = make_context(4.0, 0.0);
    CHECK(ctx.e1 == Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(ctx.e2) < 1e-14);
    CHECK(ctx.e3 == Approx(-1.0).epsilon(1e-14));
    CHECK(ctx.k2 == Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(ctx.degenerate);
    CHECK(ctx.omega1 == Approx(kOmega1Square).epsilon(1e-13));
}

TEST_CASE("context for p = 3, c = 1 has three real roots") {
    const CoefficientSet cs = shorthand_coeffs(3.0, 1.0);
    const EllipticContext& ctx = cs.ctx;
    CHECK(ctx.g2 == Approx(49.0 / 48.0).epsilon(1e-14));
    CHECK(ctx.g3 == Approx(0.079282407407407407407).epsilon(1e-13));
    CHECK(ctx.e1 + ctx.e2 + ctx.e3 == Approx(0.0).epsilon(1e-14));
    CHECK(ctx.e1 * ctx.e2 + ctx.e2 * ctx.e3 + ctx.e1 * ctx.e3 == Approx(-ctx.g2 / 4).epsilon(1e-12));
    CHECK(ctx.e1 * ctx.e2 * ctx.e3 == Approx(ctx.g3 / 4).epsilon(1e-12));
    CHECK(ctx.e1 == Approx(0.5402727301580046917).epsilon(1e-12));
    CHECK(ctx.e2 == Approx(-0.079643934470735868437).epsilon(1e-11));
    CHECK(ctx.e3 == Approx(-0.46062879568726882326).epsilon(1e-12));
    CHECK(ctx.omega1 == Approx(kOmega1P3).epsilon(1e-12));
    CHECK(wp(ctx, 0.9).real() == Approx(kWpP3At09).epsilon(1e-11));
}

TEST_CASE("negative discriminant is rejected") {
    try {
        make_context(0.0, 1.0);
        FAIL("expected ComplexLattice");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ComplexLattice);
    }
}

TEST_CASE("context invariants across the sampled parameter grid") {
    for (const EllipticContext& ctx : sample_contexts()) {
        CHECK(ctx.e1 >= ctx.e2);
        CHECK(ctx.e2 >= ctx.e3);
        CHECK(std::abs(ctx.e1 + ctx.e2 + ctx.e3) < 1e-12);
        for (double e : {ctx.e1, ctx.e2, ctx.e3}) CHECK(std::abs(4 * e * e * e - ctx.g2 * e - ctx.g3) < 1e-12);
        CHECK(ctx.k2 >= 0.0);
        CHECK(ctx.k2 <= 1.0);
        CHECK(ctx.omega1 > 0.0);
    }
}

TEST_CASE("values on the square lattice match the Laurent oracle") {
    const EllipticContext ctx = make_context(4.0, 0.0);
    const WpValues v = wp_eval(ctx, 0.7);
    CHECK(v.wp.real() == Approx(kWp07).epsilon(1e-12));
    CHECK(v.wp_prime.real() == Approx(kWpPrime07).epsilon(1e-12));
    CHECK(v.zeta.real() == Approx(kZeta07).epsilon(1e-12));
    CHECK(v.sigma.real() == Approx(kSigma07).epsilon(1e-12));
    const WpValues c = wp_eval(ctx, kZc);
    CHECK(rel(c.wp, kWpZc) < 1e-11);
    CHECK(rel(c.wp_prime, kWpPrimeZc) < 1e-11);
    CHECK(rel(c.zeta, kZetaZc) < 1e-11);
    CHECK(rel(c.sigma, kSigmaZc) < 1e-11);
}

TEST_CASE("hyperbolic lattice p = 2, c = -8 uses the closed limit forms") {
    const EllipticContext ctx = shorthand_coeffs(2.0, -8.0).ctx;
    CHECK(ctx.kind == LatticeKind::Hyperbolic);
    CHECK(std::isinf(ctx.omega1));
    const WpValues v = wp_eval(ctx, 0.9);
    CHECK(v.wp.real() == Approx(kWpHyp09).epsilon(1e-12));
    CHECK(v.wp_prime.real() == Approx(kWpPrimeHyp09).epsilon(1e-12));
    CHECK(v.sigma.real() == Approx(kSigmaHyp09).epsilon(1e-12));
}

TEST_CASE("half period is a critical point") {
    const EllipticContext ctx = make_context(4.0, 0.0);
    const WpValues v = wp_eval(ctx, ctx.omega1);
    CHECK(v.wp.real() == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v.wp_prime) < 1e-10);
}

TEST_CASE("parity of P, P' and sigma") {
    std::mt19937_64 rng(3);
    for (const EllipticContext& ctx : sample_contexts()) {
        for (int n = 0; n < 20; ++n) {
            const cplx z = random_point(rng, ctx);
            const WpValues a = wp_eval(ctx, z), b = wp_eval(ctx, -z);
            CHECK(rel(a.wp, b.wp) < 1e-10);
            CHECK(rel(a.wp_prime, -b.wp_prime) < 1e-10);
            CHECK(rel(a.sigma, -b.sigma) < 1e-10);
        }
    }
}

TEST_CASE("differential equation residual over the sampled contexts") {
    std::mt19937_64 rng(20240611);
    for (const EllipticContext& ctx : sample_contexts()) {
        double worst = 0.0;
        for (int n = 0; n < 1000; ++n) {
            const cplx z = random_point(rng, ctx);
            const WpValues v = wp_eval(ctx, z);
            const cplx res = v.wp_prime * v.wp_prime - (4.0 * v.wp * v.wp * v.wp - ctx.g2 * v.wp - ctx.g3);
            worst = std::max(worst, std::abs(res) / (1.0 + std::pow(std::abs(v.wp), 3)));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("zeta' = -P and sigma'/sigma = zeta by finite differences") {
    std::mt19937_64 rng(5);
    const double h = 1e-4;
    for (const EllipticContext& ctx : sample_contexts()) {
        for (int n = 0; n < 10; ++n) {
            const cplx z = random_point(rng, ctx);
            const cplx dz = (zeta(ctx, z + h) - zeta(ctx, z - h)) / (2 * h);
            CHECK(rel(dz, -wp(ctx, z)) < 1e-6);
            const cplx dls = (log_sigma(ctx, z + h) - log_sigma(ctx, z - h)) / (2 * h);
            CHECK(rel(dls, zeta(ctx, z)) < 1e-6);
        }
    }
}

TEST_CASE("zeta is quasi-periodic with increment 2 zeta(omega1)") {
    std::mt19937_64 rng(9);
    for (const EllipticContext& ctx : sample_contexts()) {
        if (!std::isfinite(ctx.omega1)) continue;
        const cplx expect = 2.0 * zeta(ctx, ctx.omega1);
        CHECK(std::abs(expect - 2.0 * ctx.eta1) < 1e-10);
        for (int n = 0; n < 10; ++n) {
            const cplx z = random_point(rng, ctx);
            CHECK(std::abs(zeta(ctx, z + 2.0 * ctx.omega1) - zeta(ctx, z) - expect) < 1e-9);
        }
    }
}

TEST_CASE("sigma quotient identity at the base shifts") {
    for (double p : {2.5, 3.0, 5.0}) {
        for (double c : {-1.0, -3.0}) {
            const CoefficientSet cs = shorthand_coeffs(p, c);
            for (int i = 0; i < 3; ++i) {
                if (!cs.a_valid[i]) continue;
                const cplx a = cs.a[i];
                for (double xi2 : {-1.2, -0.7, -0.2}) {
                    const cplx w = xi2 + cs.ctx.omega1;
                    const cplx q = std::exp(log_sigma(cs.ctx, w + a) + log_sigma(cs.ctx, w - a) -
                                            2.0 * log_sigma(cs.ctx, w) - 2.0 * log_sigma(cs.ctx, a));
                    CHECK(std::abs(wp(cs.ctx, w) - wp(cs.ctx, a) + q) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("theta route and sn route agree") {
    for (const EllipticContext& ctx : sample_contexts()) {
        if (!std::isfinite(ctx.omega1) || ctx.degenerate) continue;
        const double s = std::sqrt(ctx.e1 - ctx.e3);
        for (int i = 1; i < 20; ++i) {
            const double x = ctx.omega1 * i / 20.0;
            const double sn = jacobi_sn(s * x, ctx.k2);
            CHECK(std::abs(wp(ctx, x).real() - (ctx.e1 - ctx.e3) / (sn * sn) - ctx.e3) < 1e-9);
            CHECK(rel(wp_theta(ctx, x), wp(ctx, x)) < 1e-9);
        }
    }
}

TEST_CASE("pole guard") {
    const EllipticContext ctx = make_context(4.0, 0.0);
    for (cplx z : {cplx(0.0), cplx(2.0 * ctx.omega1), cplx(1e-9, 0)}) {
        try {
            wp(ctx, z);
            FAIL("expected PoleProximity");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PoleProximity);
        }
    }
    CHECK_NOTHROW(wp(ctx, 1e-3));
}

TEST_CASE("inverse of P") {
    const EllipticContext ctx = make_context(4.0, 0.0);
    const cplx a1 = wp_inverse(ctx, 1.0, -1);
    CHECK(std::abs(a1 - ctx.omega1) < 1e-6);
    const cplx a = wp_inverse(ctx, 2.0, -1);
    CHECK(a.real() == Approx(kInverseOf2).epsilon(1e-12));
    CHECK(std::abs(a.imag()) < 1e-14);
    const WpValues v = wp_eval(ctx, a);
    CHECK(v.wp.real() == Approx(2.0).epsilon(1e-12));
    CHECK(v.wp_prime.real() < 0.0);
    const cplx b = wp_inverse(ctx, 2.0, 1);
    CHECK(wp_prime(ctx, b).real() > 0.0);
    CHECK(wp(ctx, b).real() == Approx(2.0).epsilon(1e-12));
    try {
        wp_inverse(ctx, 0.5, -1);
        FAIL("expected ValueOutOfRealRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValueOutOfRealRange);
    }
}

TEST_CASE("inverse on the imaginary half-period line") {
    const EllipticContext ctx = make_context(4.0, 0.0);
    const cplx a = wp_inverse(ctx, -0.5, -1);
    CHECK(a.imag() == Approx(ctx.omega3_im).epsilon(1e-12));
    const WpValues v = wp_eval(ctx, a);
    CHECK(std::abs(v.wp - cplx(-0.5)) < 1e-12);
    CHECK(v.wp_prime.real() < 0.0);
    CHECK(std::abs(v.wp_prime.imag()) < 1e-10);
}

TEST_CASE("the base shift a1 for p = 3, c = 1") {
    const CoefficientSet cs = shorthand_coeffs(3.0, 1.0);
    REQUIRE(cs.a_valid[0]);
    const WpValues v = wp_eval(cs.ctx, cs.a[0]);
    CHECK(std::abs(4.0 * v.wp - cs.b1 + 3.0) < 1e-12);
    CHECK(v.wp.real() == Approx(-0.45833333333333333333).epsilon(1e-12));
    CHECK(v.wp_prime.real() < 0.0);
    for (int i = 0; i < 3; ++i) {
        const double shift = std::array<double, 3>{3.0, cs.q, -1.0}[i];
        CHECK(std::abs(4.0 * wp(cs.ctx, cs.a[i]) - cs.b1 + shift) < 1e-10);
        CHECK(wp_prime(cs.ctx, cs.a[i]).real() < 0.0);
    }
}

TEST_CASE("inverse with known slope resolves values at a lattice root") {
    const EllipticContext ctx = make_context(4.0, 0.0);
    const cplx a = wp_inverse_slope(ctx, 1.0 + 1e-14, -1e-6);
    CHECK(wp(ctx, a).real() == Approx(1.0).epsilon(1e-10));
    CHECK(wp_prime(ctx, a).real() == Approx(-1e-6).epsilon(1e-3));
}

TEST_CASE("Jacobi sn limits and bounds") {
    for (double u : {-2.0, -0.3, 0.0, 0.7, 1.9, 5.0}) {
        CHECK(jacobi_sn(u, 0.0) == Approx(std::sin(u)).epsilon(1e-14));
        CHECK(jacobi_sn(u, 1.0) == Approx(std::tanh(u)).epsilon(1e-14));
        for (double k2 : {0.2, 0.5, 0.9}) {
            CHECK(std::abs(jacobi_sn(u, k2)) <= 1.0);
            const SnCnDn s = jacobi_sncndn(u, k2);
            CHECK(s.sn * s.sn + s.cn * s.cn == Approx(1.0).epsilon(1e-14));
            CHECK(s.dn * s.dn + k2 * s.sn * s.sn == Approx(1.0).epsilon(1e-14));
        }
    }
    CHECK(jacobi_sn(0.0, 0.5) == 0.0);
    const double K = elliptic_K(0.5);
    CHECK(jacobi_sn(K, 0.5) == Approx(1.0).epsilon(1e-14));
    CHECK(jacobi_sn(0.4 + 4 * K, 0.5) == Approx(jacobi_sn(0.4, 0.5)).epsilon(1e-12));
}

TEST_CASE("complex sn agrees with the real evaluator on the real axis") {
    for (double u : {0.1, 0.8, 1.7}) {
        const CSnCnDn c = jacobi_sncndn(cplx(u, 0.0), 0.3);
        const SnCnDn r = jacobi_sncndn(u, 0.3);
        CHECK(std::abs(c.sn - r.sn) < 1e-14);
        CHECK(std::abs(c.cn - r.cn) < 1e-14);
        CHECK(std::abs(c.dn - r.dn) < 1e-14);
    }
}
