#include <algorithm>
#include <cmath>
#include <string>

#include "asph/families.hpp"

namespace asph {

namespace {

bool hyperbolic(const CoefficientSet& cs) { return cs.ctx.kind == LatticeKind::Hyperbolic; }

// Offset added to the chart coordinate before evaluating the lattice functions.
double chart_offset(const CoefficientSet& cs) { return hyperbolic(cs) ? 0.0 : cs.ctx.omega1; }

double reference_xi2(const CoefficientSet& cs) { return hyperbolic(cs) ? -1.0 : -0.5 * cs.ctx.omega1; }

std::array<double, 3> base_rates(double p) {
    const double d = 2.0 * std::sqrt(3.0 * (p - 1.0));
    return {(2.0 * p - 1.0) / d, -(p + 1.0) / d, -(p - 2.0) / d};
}

std::array<double, 3> base_factors(double p, double c) {
    return {1.0 / (3.0 * p), 1.0 / (3.0 * p), std::sqrt(3.0) * (p - 1.0) * c / 2.0};
}

void check_chart(const CoefficientSet& cs, double xi2) {
    if (!std::isfinite(xi2)) throw Error(ErrorKind::DomainViolation, "xi2 must be finite");
    if (hyperbolic(cs)) {
        if (std::abs(xi2) < cs.ctx.pole_guard)
            throw Error(ErrorKind::PoleProximity, "xi2 = " + std::to_string(xi2) + " is at the pole xi2 = 0");
        return;
    }
    const double w1 = cs.ctx.omega1;
    if (std::abs(xi2) > w1 - cs.ctx.pole_guard)
        throw Error(ErrorKind::PoleProximity,
                    "xi2 = " + std::to_string(xi2) + " is at or beyond the poles xi2 = +-" + std::to_string(w1));
}

void require_c_range(double p, double q, double c) {
    const double lim = 2.0 * (p + q);
    if (!(c <= 0.0) || c < -lim * (1.0 + 1e-12))
        throw Error(ErrorKind::DomainViolation,
                    "c must lie in [-2(p+q), 0] = [" + std::to_string(-lim) + ", 0], got " + std::to_string(c));
}

WeierstrassSurface normalized(const CoefficientSet& cs, std::array<cplx, 3> m, std::array<double, 3> k,
                              std::array<double, 3> f) {
    WeierstrassSurface raw(cs, m, k, f, 1.0);
    const double h0 = invariants_isothermal(raw.jet(reference_xi2(cs), 0.0), 1e-6).H;
    const double kappa = h0 < 0.0 ? std::pow(-h0, 2.0 / 3.0) : -1.0;
    if (!(kappa >= 1e-3 && kappa <= 1e3))
        throw Error(ErrorKind::BranchAmbiguity, "normalizing scale out of range (H = " + std::to_string(h0) + ")");
    return WeierstrassSurface(cs, m, k, f, kappa);
}

}  // namespace

CoefficientSet shorthand_coeffs(double p, double q, double c) {
    validate_p(p);
    if (!std::isfinite(q) || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "1/p + 1/q must equal 1");
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "c must be finite");
    CoefficientSet cs;
    cs.p = p;
    cs.q = q;
    cs.c = c;
    cs.b1 = (p + q - 1.0) / 3.0;
    cs.b2 = (p * q - p - q) / 3.0;
    cs.b3 = c * c / (4.0 * (p + q)) - p * q;
    cs.g2 = 0.75 * (cs.b1 * cs.b1 - cs.b2);
    cs.g3 = (3.0 * cs.b1 * cs.b2 - 2.0 * cs.b1 * cs.b1 * cs.b1 - cs.b3) / 16.0;
    cs.poly = {1.0, 3.0 * cs.b1, 3.0 * cs.b2, cs.b3};
    cs.metric_shift = (2.0 * (p + q - 1.0) - 3.0 * cs.b1) / 12.0;
    cs.ctx = make_context(cs.g2, cs.g3);
    const std::array<double, 3> shifts{p, q, -1.0};
    for (int i = 0; i < 3; ++i) {
        try {
            cs.a[i] = wp_inverse_slope(cs.ctx, (cs.b1 - shifts[i]) / 4.0, -std::abs(c) * std::sqrt(p - 1.0) / (8.0 * p));
            cs.a_valid[i] = true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ValueOutOfRealRange) throw;
            cs.a[i] = cplx(std::numeric_limits<double>::infinity(), 0.0);
            cs.a_valid[i] = false;
        }
    }
    return cs;
}

double weierstrass_conformal(const CoefficientSet& cs, double xi2) {
    check_chart(cs, xi2);
    return 0.5 * (wp(cs.ctx, xi2 + chart_offset(cs)).real() + cs.metric_shift);
}

cplx weierstrass_U(double p, double c, int s) {
    validate_p(p);
    const double re = s * c * std::sqrt(p - 1.0) / (32.0 * p);
    const double im = -(p - 2.0) * (2.0 * p - 1.0) * (p + 1.0) / (2.0 * std::pow(12.0 * (p - 1.0), 1.5));
    return {re, im};
}

double weierstrass_U_modulus(double p, double c) {
    const double a = c * c * (p - 1.0) / ((32.0 * p) * (32.0 * p));
    const double b = (p - 2.0) * (p - 2.0) * (2.0 * p - 1.0) * (2.0 * p - 1.0) * (p + 1.0) * (p + 1.0) /
                     (4.0 * std::pow(12.0 * (p - 1.0), 3.0));
    return std::sqrt(a + b);
}

WeierstrassSurface::WeierstrassSurface(CoefficientSet cs, std::array<cplx, 3> m, std::array<double, 3> k,
                                       std::array<double, 3> f, double scale)
    : cs_(std::move(cs)), m_(m), k_(k), f_(f), scale_(scale) {
    const EllipticContext& ctx = cs_.ctx;
    for (int i = 0; i < 3; ++i) {
        zeta_m_[i] = zeta(ctx, m_[i]);
        if (hyperbolic(cs_)) {
            const double wr = reference_xi2(cs_);
            const_log_[i] = -(log_sigma(ctx, wr - m_[i]) - log_sigma(ctx, wr) + zeta_m_[i] * wr);
        } else {
            const_log_[i] = log_sigma(ctx, ctx.omega1) - log_sigma(ctx, ctx.omega1 - m_[i]);
        }
    }
}

CVec3 WeierstrassSurface::complex_point(double xi2, double y3) const {
    check_chart(cs_, xi2);
    const EllipticContext& ctx = cs_.ctx;
    const double w = xi2 + chart_offset(cs_);
    const cplx ls_w = log_sigma(ctx, w);
    CVec3 out;
    for (int i = 0; i < 3; ++i) {
        const cplx lx = log_sigma(ctx, w - m_[i]) - ls_w + zeta_m_[i] * xi2 + const_log_[i];
        out[i] = scale_ * k_[i] * std::exp(lx + f_[i] * y3);
    }
    return out;
}

Jet2 WeierstrassSurface::jet(double xi2, double y3) const {
    check_chart(cs_, xi2);
    const EllipticContext& ctx = cs_.ctx;
    const double w = xi2 + chart_offset(cs_);
    const cplx ls_w = log_sigma(ctx, w);
    const cplx z_w = zeta(ctx, w);
    const cplx p_w = wp(ctx, w);
    Jet2 j;
    j.x = xi2;
    j.y = y3;
    for (int i = 0; i < 3; ++i) {
        const cplx wm = w - m_[i];
        const cplx lx = log_sigma(ctx, wm) - ls_w + zeta_m_[i] * xi2 + const_log_[i];
        const cplx v = scale_ * k_[i] * std::exp(lx + f_[i] * y3);
        const cplx lam = zeta(ctx, wm) - z_w + zeta_m_[i];
        const cplx dlam = p_w - wp(ctx, wm);
        const double fi = f_[i];
        j.r[i] = v.real();
        j.r_x[i] = (v * lam).real();
        j.r_xx[i] = (v * (lam * lam + dlam)).real();
        j.r_y[i] = fi * j.r[i];
        j.r_xy[i] = fi * j.r_x[i];
        j.r_yy[i] = fi * fi * j.r[i];
    }
    return j;
}

Surface WeierstrassSurface::surface(std::string name) const {
    WeierstrassSurface copy = *this;
    return {std::move(name), [copy](double x, double y) { return copy.jet(x, y); }, weierstrass_default_domain(cs_)};
}

Rect weierstrass_default_domain(const CoefficientSet& cs) {
    if (hyperbolic(cs)) return Rect{-3.0, -0.05, -2.0, 2.0};
    const double w1 = cs.ctx.omega1;
    return Rect{-0.95 * w1, 0.95 * w1, -2.0, 2.0};
}

WeierstrassSurface general_surface(double p, double c, int s) {
    if (s != 1 && s != -1) throw Error(ErrorKind::InvalidArgument, "s must be +1 or -1");
    const CoefficientSet cs = shorthand_coeffs(p, c);
    require_c_range(p, cs.q, c);
    if (c == 0.0)
        throw Error(ErrorKind::DomainViolation, "the sigma-quotient form degenerates at c = 0; use the c = 0 surface");
    for (int i = 0; i < 3; ++i)
        if (!cs.a_valid[i]) throw Error(ErrorKind::ValueOutOfRealRange, "base root a" + std::to_string(i + 1) + " is at infinity");
    const std::array<cplx, 3> m{double(s) * cs.a[0], double(s) * cs.a[1], double(s) * cs.a[2]};
    if (hyperbolic(cs)) return normalized(cs, m, base_factors(p, c), base_rates(p));
    return WeierstrassSurface(cs, m, base_factors(p, c), base_rates(p), 1.0);
}

CVec3 general_surface_unsimplified(const CoefficientSet& cs, int s, double xi2, double y3) {
    check_chart(cs, xi2);
    if (hyperbolic(cs)) throw Error(ErrorKind::InvalidArgument, "the unsimplified form needs a finite real half-period");
    const EllipticContext& ctx = cs.ctx;
    const double w1 = ctx.omega1;
    const double w = xi2 + w1;
    const std::array<double, 3> rates = base_rates(cs.p);
    const cplx pw = wp(ctx, w), p1 = wp(ctx, w1);
    CVec3 out;
    for (int i = 0; i < 3; ++i) {
        const cplx a = cs.a[i];
        const cplx pa = wp(ctx, a);
        const cplx log_q = log_sigma(ctx, w + a) + log_sigma(ctx, w1 - a) - log_sigma(ctx, w - a) - log_sigma(ctx, w1 + a);
        const cplx inner = (pw - pa) / (p1 - pa) * std::exp(-double(s) * log_q);
        out[i] = std::sqrt(inner) * std::exp(double(s) * zeta(ctx, a) * xi2 + rates[i] * y3);
    }
    return out;
}

std::array<double, 3> family_f(double p, double c, double t) {
    const double C = (p * p - p + 1.0) / (12.0 * (p - 1.0));
    const double u = weierstrass_U_modulus(p, c);
    const double arg = std::clamp(-u * std::sin(3.0 * t) / std::pow(C, 1.5), -1.0, 1.0);
    const double th = std::acos(arg) / 3.0;
    const double r = 2.0 * std::sqrt(C);
    return {r * std::cos(th + 2.0 * kPi / 3.0), r * std::cos(th - 2.0 * kPi / 3.0), r * std::cos(th)};
}

FamilyMember family_member(double p, double c, double t) {
    if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "t must be finite");
    const CoefficientSet cs = shorthand_coeffs(p, c);
    require_c_range(p, cs.q, c);
    if (c == 0.0)
        throw Error(ErrorKind::DomainViolation, "the family form degenerates at c = 0; use the c = 0 surface");
    if (std::abs(std::cos(3.0 * t)) < 1e-4 * std::abs(c))
        throw Error(ErrorKind::BranchAmbiguity,
                    "cos 3t is within 1e-4 |c| of zero at t = " + std::to_string(t) + "; the branch sign is undefined there");
    FamilyMember fm;
    fm.f_display = family_f(p, c, t);
    fm.f_component = {fm.f_display[2], fm.f_display[0], fm.f_display[1]};
    const double a = weierstrass_U_modulus(p, c) * std::cos(3.0 * t);
    fm.s = a >= 0.0 ? -1 : 1;
    const double C = cs.b1 / 4.0;
    for (int i = 0; i < 3; ++i) {
        const double f = fm.f_component[i];
        fm.m[i] = wp_inverse_slope(cs.ctx, 2.0 * C - f * f, a >= 0.0 ? 4.0 * std::abs(a) : -4.0 * std::abs(a));
    }
    return fm;
}

WeierstrassSurface family_surface(double p, double c, double t) {
    FamilyMember fm = family_member(p, c, t);
    const CoefficientSet cs = shorthand_coeffs(p, c);
    return normalized(cs, fm.m, base_factors(p, c), fm.f_component);
}

double family_base_angle(double p, double c, int s) { return std::arg(weierstrass_U(p, c, s)) / 3.0; }

Jet2 c_zero_jet(const CoefficientSet& cs, int t_sign, double xi2, double y3) {
    if (!(xi2 < 0.0)) throw Error(ErrorKind::DomainViolation, "the c = 0 chart needs xi2 < 0, got " + std::to_string(xi2));
    check_chart(cs, xi2);
    const double p = cs.p;
    const EllipticContext& ctx = cs.ctx;
    const double w = xi2 + ctx.omega1;
    const WpValues v = wp_eval(ctx, w);
    const double P = v.wp.real(), P1 = v.wp_prime.real();
    const double P2 = 6.0 * P * P - 0.5 * ctx.g2;
    const std::array<double, 3> d{(-cs.b1 + p) / 4.0, (-cs.b1 + cs.q) / 4.0, (-cs.b1 - 1.0) / 4.0};
    const std::array<double, 3> k{2.0 / (3.0 * p * std::sqrt(p + 1.0)), 2.0 / (3.0 * std::sqrt(p * (2.0 * p - 1.0))),
                                  (t_sign < 0 ? -2.0 : 2.0) * std::sqrt(3.0 * p * (p - 1.0) * (p + 1.0) * (2.0 * p - 1.0))};
    const std::array<double, 3> f = base_rates(p);
    Jet2 j;
    j.x = xi2;
    j.y = y3;
    for (int i = 0; i < 3; ++i) {
        const double F = std::sqrt(std::max(P + d[i], 0.0));
        if (!(F > 0.0)) throw Error(ErrorKind::PoleProximity, "square-root factor vanishes at xi2 = " + std::to_string(xi2));
        const double F1 = P1 / (2.0 * F);
        const double F2 = P2 / (2.0 * F) - P1 * P1 / (4.0 * F * F * F);
        const double E = k[i] * std::exp(f[i] * y3);
        j.r[i] = F * E;
        j.r_x[i] = F1 * E;
        j.r_xx[i] = F2 * E;
        j.r_y[i] = f[i] * j.r[i];
        j.r_xy[i] = f[i] * j.r_x[i];
        j.r_yy[i] = f[i] * f[i] * j.r[i];
    }
    return j;
}

Surface c_zero_surface(double p, int t_sign) {
    const CoefficientSet cs = shorthand_coeffs(p, 0.0);
    const double w1 = cs.ctx.omega1;
    return {"c0", [cs, t_sign](double x, double y) { return c_zero_jet(cs, t_sign, x, y); },
            Rect{-0.95 * w1, -0.05 * w1, -2.0, 2.0}};
}

double c_zero_limit_defect(double p, double c, int s, int n) {
    const WeierstrassSurface member = family_surface(p, c, family_base_angle(p, c, s));
    const Surface limit = c_zero_surface(p, 1);
    const Mat3 D = Vec3(1.0, std::sqrt((p - 1.0) / p), s * std::sqrt(p / (p - 1.0))).asDiagonal();
    const Rect dom = limit.domain;
    const double w1 = std::min(-dom.x0, member.coeffs().ctx.omega1);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = -w1 * (0.9 - 0.8 * i / (n - 1.0));
            const double y = -1.0 + 2.0 * j / (n - 1.0);
            const Vec3 a = member.jet(x, y).r, b = D * limit.point(x, y);
            worst = std::max(worst, (a - b).norm() / b.norm());
        }
    return worst;
}

}  // namespace asph
