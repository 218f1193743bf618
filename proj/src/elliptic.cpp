#include "asph/elliptic.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

namespace asph {

namespace {

constexpr cplx I{0.0, 1.0};

struct ThetaSums {
    cplx s;    // sum (-1)^n q^{n(n+1)} sin((2n+1)v)
    cplx ds;   // first derivative in v
    cplx d2s;  // second derivative in v
};

ThetaSums theta_sums(double q, cplx v) {
    ThetaSums out{0.0, 0.0, 0.0};
    double qpow = 1.0;  // q^{n(n+1)}
    for (int n = 0; n < 400; ++n) {
        const double k = 2.0 * n + 1.0;
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        const cplx sn = std::sin(k * v), cs = std::cos(k * v);
        const cplx ts = sgn * qpow * sn, tc = sgn * qpow * k * cs, t2 = -sgn * qpow * k * k * sn;
        out.s += ts;
        out.ds += tc;
        out.d2s += t2;
        const double mag = std::abs(t2) + std::abs(tc) + std::abs(ts);
        if (n > 0 && mag <= 1e-18 * (std::abs(out.s) + std::abs(out.ds) + std::abs(out.d2s)) + 1e-300) break;
        if (q == 0.0) break;
        qpow *= std::pow(q, 2.0 * (n + 1));
        if (qpow == 0.0) break;
    }
    return out;
}

// Sum (-1)^n (2n+1)^p q^{n(n+1)}.
double theta_zero_moment(double q, int p) {
    double sum = 0.0, qpow = 1.0;
    for (int n = 0; n < 400; ++n) {
        const double k = 2.0 * n + 1.0;
        const double t = ((n % 2 == 0) ? 1.0 : -1.0) * std::pow(k, p) * qpow;
        sum += t;
        if (n > 0 && std::abs(t) <= 1e-18 * std::abs(sum)) break;
        if (q == 0.0) break;
        qpow *= std::pow(q, 2.0 * (n + 1));
        if (qpow == 0.0) break;
    }
    return sum;
}

cplx log_sin(cplx w) {
    if (std::abs(w.imag()) < 20.0) return std::log(std::sin(w));
    if (w.imag() > 0.0) return -I * w + std::log((std::exp(2.0 * I * w) - 1.0) / (2.0 * I));
    return I * w + std::log((1.0 - std::exp(-2.0 * I * w)) / (2.0 * I));
}

cplx log_sinh(cplx w) { return log_sin(I * w) - I * (kPi / 2.0); }

struct Reduced {
    cplx z0;
    double n;  // multiples of 2 omega1
    double m;  // multiples of 2 omega3
};

Reduced reduce(const EllipticContext& ctx, cplx z) {
    Reduced r{z, 0.0, 0.0};
    if (std::isfinite(ctx.omega3_im)) {
        r.m = std::round(z.imag() / (2.0 * ctx.omega3_im));
        r.z0 -= cplx(0.0, 2.0 * r.m * ctx.omega3_im);
    }
    if (std::isfinite(ctx.omega1)) {
        r.n = std::round(z.real() / (2.0 * ctx.omega1));
        r.z0 -= 2.0 * r.n * ctx.omega1;
    }
    return r;
}

void check_pole(const EllipticContext& ctx, cplx z0) {
    if (std::abs(z0) < ctx.pole_guard)
        throw Error(ErrorKind::PoleProximity, "argument within " + std::to_string(ctx.pole_guard) + " of a lattice point");
}

double deg_e(const EllipticContext& ctx) { return ctx.e1; }

// P and P' of a reduced argument through the Jacobi sn relation.
std::pair<cplx, cplx> wp_sn_reduced(const EllipticContext& ctx, cplx z0) {
    const double r = std::sqrt(ctx.e1 - ctx.e3);
    if (std::isfinite(ctx.omega3_im) && std::abs(z0.imag()) > 0.5 * ctx.omega3_im) {
        // P(z) = e3 + (e2 - e3) sn^2(r (z - omega3)), regular near the half-period omega3.
        const cplx shift = z0.imag() > 0.0 ? ctx.omega3() : -ctx.omega3();
        const CSnCnDn j = jacobi_sncndn(r * (z0 - shift), ctx.k2);
        const double d = ctx.e2 - ctx.e3;
        return {ctx.e3 + d * j.sn * j.sn, 2.0 * d * r * j.sn * j.cn * j.dn};
    }
    const CSnCnDn j = jacobi_sncndn(r * z0, ctx.k2);
    const cplx inv = 1.0 / j.sn;
    return {ctx.e3 + (ctx.e1 - ctx.e3) * inv * inv, -2.0 * r * r * r * j.cn * j.dn * inv * inv * inv};
}

cplx zeta_reduced(const EllipticContext& ctx, cplx z0) {
    switch (ctx.kind) {
        case LatticeKind::Trigonometric: {
            const double e = deg_e(ctx), b = std::sqrt(1.5 * e);
            return 0.5 * e * z0 + b / std::tan(b * z0);
        }
        case LatticeKind::Hyperbolic: {
            const double e = deg_e(ctx), a = std::sqrt(3.0 * e);
            return -e * z0 + a / std::tanh(a * z0);
        }
        case LatticeKind::Rectangular: break;
    }
    const double c = kPi / (2.0 * ctx.omega1);
    const ThetaSums t = theta_sums(ctx.nome, c * z0);
    return ctx.eta1 * z0 / ctx.omega1 + c * t.ds / t.s;
}

cplx log_sigma_reduced(const EllipticContext& ctx, cplx z0) {
    switch (ctx.kind) {
        case LatticeKind::Trigonometric: {
            const double e = deg_e(ctx), b = std::sqrt(1.5 * e);
            return log_sin(b * z0) - std::log(b) + 0.25 * e * z0 * z0;
        }
        case LatticeKind::Hyperbolic: {
            const double e = deg_e(ctx), a = std::sqrt(3.0 * e);
            return log_sinh(a * z0) - std::log(a) - 0.5 * e * z0 * z0;
        }
        case LatticeKind::Rectangular: break;
    }
    const double c = kPi / (2.0 * ctx.omega1);
    const ThetaSums t = theta_sums(ctx.nome, c * z0);
    const double d0 = theta_zero_moment(ctx.nome, 1);
    return std::log(2.0 * ctx.omega1 / kPi) + ctx.eta1 * z0 * z0 / (2.0 * ctx.omega1) + std::log(t.s / d0);
}

}  // namespace

double elliptic_K(double m) {
    if (m >= 1.0) return std::numeric_limits<double>::infinity();
    return boost::math::ellint_1(std::sqrt(m));
}

SnCnDn jacobi_sncndn(double u, double k2) {
    if (k2 < 0.0 || k2 > 1.0) throw Error(ErrorKind::InvalidArgument, "k2 must lie in [0,1]");
    if (k2 == 0.0) return {std::sin(u), std::cos(u), 1.0};
    if (k2 == 1.0) {
        const double c = 1.0 / std::cosh(u);
        return {std::tanh(u), c, c};
    }
    double cn = 0.0, dn = 0.0;
    const double sn = boost::math::jacobi_elliptic(std::sqrt(k2), u, &cn, &dn);
    return {sn, cn, dn};
}

double jacobi_sn(double u, double k2) { return jacobi_sncndn(u, k2).sn; }

CSnCnDn jacobi_sncndn(cplx u, double k2) {
    const SnCnDn a = jacobi_sncndn(u.real(), k2);
    const SnCnDn b = jacobi_sncndn(u.imag(), 1.0 - k2);
    const double den = b.cn * b.cn + k2 * a.sn * a.sn * b.sn * b.sn;
    return {cplx(a.sn * b.dn, a.cn * a.dn * b.sn * b.cn) / den,
            cplx(a.cn * b.cn, -a.sn * a.dn * b.sn * b.dn) / den,
            cplx(a.dn * b.cn * b.dn, -k2 * a.sn * a.cn * b.sn) / den};
}

EllipticContext make_context(double g2, double g3, double root_tol) {
    if (!std::isfinite(g2) || !std::isfinite(g3)) throw Error(ErrorKind::InvalidArgument, "non-finite invariants");
    const double disc = g2 * g2 * g2 - 27.0 * g3 * g3;
    const double scale = std::max({1.0, std::abs(g2 * g2 * g2), 27.0 * g3 * g3});
    if (disc < -root_tol * scale)
        throw Error(ErrorKind::ComplexLattice, "discriminant g2^3 - 27 g3^2 = " + std::to_string(disc) + " < 0");
    const CubicRoots cr = cubic_roots(4.0, 0.0, -g2, -g3, root_tol);
    if (!cr.all_real) throw Error(ErrorKind::ComplexLattice, "cubic has complex roots");

    EllipticContext ctx;
    ctx.g2 = g2;
    ctx.g3 = g3;
    ctx.e1 = cr.roots[0].real();
    ctx.e2 = cr.roots[1].real();
    ctx.e3 = cr.roots[2].real();
    const bool d23 = cr.multiplicity[1] > 1 && cr.multiplicity[2] > 1 && std::abs(ctx.e2 - ctx.e3) <= std::abs(ctx.e1 - ctx.e2);
    const bool d12 = cr.multiplicity[0] > 1 && cr.multiplicity[1] > 1 && !d23;
    if (cr.multiplicity[0] == 3 || (d12 && d23) || (ctx.e1 - ctx.e3) <= root_tol)
        throw Error(ErrorKind::InvalidArgument, "triple root lattice (g2 = g3 = 0) is not supported");
    if (d23) {
        ctx.kind = LatticeKind::Trigonometric;
        ctx.e2 = ctx.e3 = -0.5 * ctx.e1;
    } else if (d12) {
        ctx.kind = LatticeKind::Hyperbolic;
        const double e = -0.5 * ctx.e3;
        ctx.e1 = ctx.e2 = e;
    }
    ctx.degenerate = ctx.kind == LatticeKind::Trigonometric;
    const double span = ctx.e1 - ctx.e3;
    const double r = std::sqrt(span);
    ctx.k2 = std::clamp((ctx.e2 - ctx.e3) / span, 0.0, 1.0);
    if (ctx.kind == LatticeKind::Trigonometric) ctx.k2 = 0.0;
    if (ctx.kind == LatticeKind::Hyperbolic) ctx.k2 = 1.0;
    ctx.omega1 = elliptic_K(ctx.k2) / r;
    ctx.omega3_im = elliptic_K(1.0 - ctx.k2) / r;

    switch (ctx.kind) {
        case LatticeKind::Rectangular: {
            ctx.nome = std::exp(-kPi * ctx.omega3_im / ctx.omega1);
            ctx.eta1 = kPi * kPi / (12.0 * ctx.omega1) * theta_zero_moment(ctx.nome, 3) / theta_zero_moment(ctx.nome, 1);
            ctx.eta3 = (ctx.eta1 * ctx.omega3() - I * (kPi / 2.0)) / ctx.omega1;
            ctx.pole_guard = 1e-6 * ctx.omega1;
            break;
        }
        case LatticeKind::Trigonometric: {
            ctx.nome = 0.0;
            ctx.eta1 = 0.5 * ctx.e1 * ctx.omega1;
            ctx.eta3 = cplx(0.0, std::numeric_limits<double>::infinity());
            ctx.pole_guard = 1e-6 * ctx.omega1;
            break;
        }
        case LatticeKind::Hyperbolic: {
            ctx.nome = 1.0;
            ctx.eta1 = std::numeric_limits<double>::infinity();
            ctx.eta3 = -ctx.e1 * ctx.omega3();
            ctx.pole_guard = 1e-6 * ctx.omega3_im;
            break;
        }
    }
    return ctx;
}

cplx wp(const EllipticContext& ctx, cplx z) {
    const Reduced rz = reduce(ctx, z);
    check_pole(ctx, rz.z0);
    return wp_sn_reduced(ctx, rz.z0).first;
}

cplx wp_prime(const EllipticContext& ctx, cplx z) {
    const Reduced rz = reduce(ctx, z);
    check_pole(ctx, rz.z0);
    return wp_sn_reduced(ctx, rz.z0).second;
}

cplx zeta(const EllipticContext& ctx, cplx z) {
    const Reduced rz = reduce(ctx, z);
    check_pole(ctx, rz.z0);
    cplx out = zeta_reduced(ctx, rz.z0);
    if (rz.n != 0.0) out += 2.0 * rz.n * ctx.eta1;
    if (rz.m != 0.0) out += 2.0 * rz.m * ctx.eta3;
    return out;
}

cplx log_sigma(const EllipticContext& ctx, cplx z) {
    const Reduced rz = reduce(ctx, z);
    cplx out = log_sigma_reduced(ctx, rz.z0);
    if (rz.m != 0.0) out += I * kPi * rz.m + 2.0 * rz.m * ctx.eta3 * (rz.z0 + rz.m * ctx.omega3());
    if (rz.n != 0.0) {
        const cplx base = rz.m != 0.0 ? rz.z0 + 2.0 * rz.m * ctx.omega3() : rz.z0;
        out += I * kPi * rz.n + 2.0 * rz.n * ctx.eta1 * (base + rz.n * ctx.omega1);
    }
    return out;
}

cplx wp_theta(const EllipticContext& ctx, cplx z) {
    const Reduced rz = reduce(ctx, z);
    check_pole(ctx, rz.z0);
    const cplx z0 = rz.z0;
    switch (ctx.kind) {
        case LatticeKind::Trigonometric: {
            const double e = deg_e(ctx), b = std::sqrt(1.5 * e);
            const cplx s = std::sin(b * z0);
            return -0.5 * e + 1.5 * e / (s * s);
        }
        case LatticeKind::Hyperbolic: {
            const double e = deg_e(ctx), a = std::sqrt(3.0 * e);
            const cplx s = std::sinh(a * z0);
            return e + 3.0 * e / (s * s);
        }
        case LatticeKind::Rectangular: break;
    }
    const double c = kPi / (2.0 * ctx.omega1);
    const ThetaSums t = theta_sums(ctx.nome, c * z0);
    const cplx l1 = t.ds / t.s;
    return -ctx.eta1 / ctx.omega1 - c * c * (t.d2s / t.s - l1 * l1);
}

WpValues wp_eval(const EllipticContext& ctx, cplx z) {
    const Reduced rz = reduce(ctx, z);
    check_pole(ctx, rz.z0);
    const auto [p, dp] = wp_sn_reduced(ctx, rz.z0);
    return {p, dp, zeta(ctx, z), std::exp(log_sigma(ctx, z))};
}

namespace {

cplx invert_above(const EllipticContext& ctx, double above, int sign_wp_prime) {
    if (ctx.kind == LatticeKind::Hyperbolic && above == 0.0)
        throw Error(ErrorKind::ValueOutOfRealRange, "preimage of e1 lies at infinity on a hyperbolic lattice");
    const double r = std::sqrt(ctx.e1 - ctx.e3);
    const double phi = std::atan2(r, std::sqrt(above));
    const double x = (ctx.k2 >= 1.0 ? std::atanh(std::sin(phi)) : boost::math::ellint_1(std::sqrt(ctx.k2), phi)) / r;
    return sign_wp_prime > 0 ? cplx(-x, 0.0) : cplx(x, 0.0);
}

cplx invert_between(const EllipticContext& ctx, double lo, double hi, int sign_wp_prime) {
    if (ctx.kind == LatticeKind::Trigonometric)
        throw Error(ErrorKind::ValueOutOfRealRange, "preimage of e2 = e3 lies at infinity on a trigonometric lattice");
    const double r = std::sqrt(ctx.e1 - ctx.e3);
    const double phi = std::atan2(std::sqrt(lo), std::sqrt(hi));
    const double x = (ctx.k2 >= 1.0 ? std::atanh(std::sin(phi)) : boost::math::ellint_1(std::sqrt(ctx.k2), phi)) / r;
    return sign_wp_prime > 0 ? cplx(x, ctx.omega3_im) : cplx(-x, ctx.omega3_im);
}

}  // namespace

cplx wp_inverse(const EllipticContext& ctx, double w, int sign_wp_prime) {
    const double slack = 1e-12 * (1.0 + std::abs(ctx.e1) + std::abs(ctx.e3));
    if (w >= ctx.e1 - slack) return invert_above(ctx, std::max(w - ctx.e1, 0.0), sign_wp_prime);
    if (w >= ctx.e3 - slack && w <= ctx.e2 + slack)
        return invert_between(ctx, std::max(w - ctx.e3, 0.0), std::max(ctx.e2 - w, 0.0), sign_wp_prime);
    throw Error(ErrorKind::ValueOutOfRealRange,
                "w = " + std::to_string(w) + " has no preimage with real P' (needs w >= e1 or e3 <= w <= e2)");
}

cplx wp_inverse_slope(const EllipticContext& ctx, double w, double wp_prime) {
    const int sign = std::signbit(wp_prime) ? -1 : 1;
    if (ctx.kind != LatticeKind::Rectangular || !std::isfinite(wp_prime)) return wp_inverse(ctx, w, sign);
    const std::array<double, 3> e{ctx.e1, ctx.e2, ctx.e3};
    std::array<double, 3> d{w - e[0], w - e[1], w - e[2]};
    int j = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(d[i]) < std::abs(d[j])) j = i;
    if (std::abs(d[j]) > 1e-4 * (ctx.e1 - ctx.e3)) return wp_inverse(ctx, w, sign);
    const double others = d[(j + 1) % 3] * d[(j + 2) % 3];
    d[j] = wp_prime * wp_prime / (4.0 * others);
    if (j == 0) return invert_above(ctx, std::max(d[0], 0.0), sign);
    return invert_between(ctx, std::max(d[2], 0.0), std::max(-d[1], 0.0), sign);
}

}  // namespace asph
