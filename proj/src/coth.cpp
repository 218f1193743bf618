#include <cmath>
#include <string>

#include "asph/families.hpp"
#include "coth_exp.hpp"

namespace asph {

namespace {

const double kSqrt3 = std::sqrt(3.0);

double R(double p) { return std::sqrt(p * p - p + 1.0); }
double theta_rate(double p) { return R(p) / (2.0 * std::sqrt(p - 1.0)); }
double family_K(double p) { return std::sqrt((p * p - p + 1.0) / (12.0 * (p - 1.0))); }

void require_nonzero(double xi2) {
    if (xi2 == 0.0 || !std::isfinite(xi2))
        throw Error(ErrorKind::DomainViolation, "coth chart is singular at xi2 = 0");
}

// sg = +1 gives the case-5 display, sg = -1 the case-3 display.
std::array<detail::CothExp, 3> display_components(double p, double sg) {
    const double r = R(p), k = theta_rate(p), sp = std::sqrt(p - 1.0);
    const double n = std::sqrt(3.0 * (p - 1.0)), d = 2.0 * n;
    return {detail::CothExp{r / n, sg / n, k, -sg / (2.0 * sp), (2.0 * p - 1.0) / d},
            detail::CothExp{r / n, sg * (p - 1.0) / n, k, -sg * sp / 2.0, -(p + 1.0) / d},
            detail::CothExp{-r / (kSqrt3 * p), sg * p / (kSqrt3 * p), k, sg * p / (2.0 * sp), -(p - 2.0) / d}};
}

Surface display_surface(double p, double sg, const char* name) {
    validate_p(p);
    const auto comps = display_components(p, sg);
    return {name,
            [comps](double x, double y) {
                require_nonzero(x);
                Jet2 j;
                j.x = x;
                j.y = y;
                for (int i = 0; i < 3; ++i) comps[i].write(j, i, x, y);
                return j;
            },
            Rect{-3.0, -0.05, -2.0, 2.0}};
}

std::array<detail::CothExp, 3> family_components(double p, double t) {
    const double K = family_K(p), kk = kSqrt3 * K;
    const double c = std::cos(t), s = std::sin(t);
    const double u = (kSqrt3 * s + c), v = (-kSqrt3 * s + c);
    const double g = std::sqrt(p - 1.0) / p;
    return {detail::CothExp{1.0, -u / kSqrt3, kk, K * u, K * (kSqrt3 * c - s)},
            detail::CothExp{1.0, -v / kSqrt3, kk, K * v, K * (-kSqrt3 * c - s)},
            detail::CothExp{-g, -g * 2.0 * c / kSqrt3, kk, -2.0 * K * c, 2.0 * K * s}};
}

}  // namespace

Surface coth_case5(double p) { return display_surface(p, 1.0, "case5"); }
Surface coth_case3(double p) { return display_surface(p, -1.0, "case3"); }

Jet2 coth_family_raw(double p, double t, double xi2, double y3) {
    validate_p(p);
    require_nonzero(xi2);
    const auto comps = family_components(p, t);
    const double pre = 2.0 * family_K(p);
    Jet2 j;
    j.x = xi2;
    j.y = y3;
    for (int i = 0; i < 3; ++i) comps[i].write(j, i, xi2, y3, pre);
    return j;
}

double coth_family_scale(double p, double t) {
    const double h0 = invariants_isothermal(coth_family_raw(p, t, 1.0, 0.0), 1e-6).H;
    if (!(h0 < 0.0)) throw Error(ErrorKind::BranchAmbiguity, "family member has H >= 0 at the reference point");
    return std::pow(-h0, 2.0 / 3.0);
}

Surface coth_family(double p, double t) {
    if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "t must be finite");
    const double kappa = coth_family_scale(p, t);
    return {"coth-family",
            [p, t, kappa](double x, double y) { return detail::scaled(coth_family_raw(p, t, x, y), kappa); },
            Rect{0.05, 3.0, -2.0, 2.0}};
}

double coth_conformal(double p, double xi2) {
    require_nonzero(xi2);
    const double ct = 1.0 / std::tanh(theta_rate(p) * xi2);
    return (p * p - p + 1.0) / (8.0 * (p - 1.0)) * (ct * ct - 1.0 / 3.0);
}

cplx coth_case5_U(double p) {
    const cplx z(2.0 * p - 1.0, -kSqrt3);
    return cplx(0.0, -1.0) * kSqrt3 * z * z * z / (576.0 * std::pow(p - 1.0, 1.5));
}

cplx coth_case3_U(double p) {
    const cplx z(2.0 * p - 1.0, kSqrt3);
    return cplx(0.0, -1.0) * kSqrt3 * z * z * z / (576.0 * std::pow(p - 1.0, 1.5));
}

double coth_U_modulus(double p) { return kSqrt3 / 72.0 * std::pow((p * p - p + 1.0) / (p - 1.0), 1.5); }

Mat3 matrix_E(double p) {
    validate_p(p);
    const double n = p * p - p + 1.0;
    const double a = std::sqrt(3.0 * p * p / n), b = std::sqrt(3.0 * (p - 1.0) / n);
    Mat3 E = Mat3::Zero();
    E(0, 2) = a;
    E(1, 1) = -b;
    E(2, 0) = -b;
    return E;
}

double equivalence_theorem33_to_31(double p, double t, const Grid& grid) {
    grid.validate();
    const Theorem31Gauge g = theorem31_gauge(t);
    const Mat3 G = g.A * (g.D * g.B).inverse() * matrix_E(p);
    const Surface fam31 = case1_family(t);
    const double K = family_K(p);
    double worst = 0.0;
    for (int jy = 0; jy < grid.ny; ++jy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x(ix), y = grid.y(jy);
            const Vec3 lhs = G * coth_family_raw(p, t, x / K, y / K).r;
            const Vec3 rhs = fam31.point(x, y);
            worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
        }
    return worst;
}

}  // namespace asph
