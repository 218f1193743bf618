#include <cmath>
#include <string>

#include "asph/families.hpp"
#include "coth_exp.hpp"

namespace asph {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorKind::DomainViolation, std::string(name) + " must be positive and finite, got " + std::to_string(v));
}

constexpr double kGuardBand = 0.02;
constexpr double kNodeSpacing = 0.005;

// Signed offset of t from the nearest angle where det(DB) vanishes.
double singular_offset(double t, double* ts) {
    const double period = kPi / 3.0;
    const double k = std::round((t - kPi / 6.0) / period);
    *ts = kPi / 6.0 + k * period;
    return t - *ts;
}

}  // namespace

double conjugate_exponent(double p) { return p / (p - 1.0); }

void validate_p(double p) {
    if (!std::isfinite(p) || p < 2.0)
        throw Error(ErrorKind::InvalidArgument, "p must satisfy 2 <= p < inf, got " + std::to_string(p));
}

Jet2 case1_raw(double x, double y) {
    require_positive(x, "x");
    require_positive(y, "y");
    Jet2 j;
    j.x = x;
    j.y = y;
    const double lg = 1.5 * std::log(x) + 3.0 * std::log(y) + x;
    j.r[0] = -y * lg;
    j.r_x[0] = -y * (1.5 / x + 1.0);
    j.r_y[0] = -lg - 3.0;
    j.r_xx[0] = 1.5 * y / (x * x);
    j.r_xy[0] = -(1.5 / x + 1.0);
    j.r_yy[0] = -3.0 / y;

    const double h = std::pow(x, -1.5) * std::sqrt(1.0 + x);
    const double lh = -1.5 / x + 0.5 / (1.0 + x);
    const double h1 = h * lh;
    const double h2 = h * (lh * lh + 1.5 / (x * x) - 0.5 / ((1.0 + x) * (1.0 + x)));
    const double y2 = 1.0 / (y * y);
    j.r[1] = h * y2;
    j.r_x[1] = h1 * y2;
    j.r_y[1] = -2.0 * h * y2 / y;
    j.r_xx[1] = h2 * y2;
    j.r_xy[1] = -2.0 * h1 * y2 / y;
    j.r_yy[1] = 6.0 * h * y2 * y2;

    j.r[2] = y;
    j.r_y[2] = 1.0;
    return j;
}

std::pair<double, double> case1_iso_map(double x, double y) {
    require_positive(x, "x");
    require_positive(y, "y");
    return {std::asinh(std::sqrt(x)) / kSqrt3, std::log(y) + 0.5 * std::log(x)};
}

std::pair<double, double> case1_iso_unmap(double u, double v) {
    require_positive(u, "u");
    const double s = std::sinh(kSqrt3 * u);
    return {s * s, std::exp(v) / s};
}

double case1_conformal(double u) {
    const double s = std::sinh(kSqrt3 * u);
    return (3.0 / (s * s) + 2.0) / 2.0;
}

double case1_base_u() { return std::log(1.0 + kSqrt2) / kSqrt3; }

Jet2 case1_isothermal(double u, double v) {
    require_positive(u, "u");
    const double a = kSqrt3 * u;
    const double s = std::sinh(a), C = std::cosh(a);
    const double g = 1.0 / s, h = C / s;
    const double g1 = -C / (s * s), g2 = (C * C + 1.0) / (s * s * s);
    const double h1 = -1.0 / (s * s), h2 = 2.0 * C / (s * s * s);
    const double ev = std::exp(v), em2 = std::exp(-2.0 * v);

    Jet2 j;
    j.x = u;
    j.y = v;
    j.r[0] = ev * (s + 3.0 * v * g) / kSqrt3;
    j.r_x[0] = ev * (C + 3.0 * v * g1);
    j.r_xx[0] = kSqrt3 * ev * (s + 3.0 * v * g2);
    j.r_y[0] = ev * (s + 3.0 * v * g + 3.0 * g) / kSqrt3;
    j.r_yy[0] = ev * (s + 3.0 * v * g + 6.0 * g) / kSqrt3;
    j.r_xy[0] = ev * (C + 3.0 * v * g1 + 3.0 * g1);

    j.r[1] = -h * em2 / kSqrt3;
    j.r_x[1] = -h1 * em2;
    j.r_xx[1] = -kSqrt3 * h2 * em2;
    j.r_y[1] = 2.0 * h * em2 / kSqrt3;
    j.r_yy[1] = -4.0 * h * em2 / kSqrt3;
    j.r_xy[1] = 2.0 * h1 * em2;

    j.r[2] = -g * ev / kSqrt3;
    j.r_x[2] = -g1 * ev;
    j.r_xx[2] = -kSqrt3 * g2 * ev;
    j.r_y[2] = j.r[2];
    j.r_yy[2] = j.r[2];
    j.r_xy[2] = j.r_x[2];
    return j;
}

Surface case1_isothermal_surface() {
    return {"case1-iso", [](double u, double v) { return case1_isothermal(u, v); }, Rect{0.3, 1.5, -1.0, 1.0}};
}

Jet2 theorem31_w(double x, double y, double t) {
    if (!(x > 0.0)) throw Error(ErrorKind::DomainViolation, "x must be positive, got " + std::to_string(x));
    const double c = std::cos(t), s = std::sin(t);
    const detail::CothExp w1{-1.0, -2.0 * c / kSqrt3, kSqrt3, -2.0 * c, 2.0 * s};
    const detail::CothExp w2{-1.0, (-kSqrt3 * s + c) / kSqrt3, kSqrt3, -kSqrt3 * s + c, -s - kSqrt3 * c};
    const detail::CothExp w3{-1.0, (kSqrt3 * s + c) / kSqrt3, kSqrt3, kSqrt3 * s + c, -s + kSqrt3 * c};
    Jet2 j;
    j.x = x;
    j.y = y;
    w1.write(j, 0, x, y);
    w2.write(j, 1, x, y);
    w3.write(j, 2, x, y);
    return j;
}

Theorem31Gauge theorem31_gauge(double t) {
    Theorem31Gauge g;
    g.A << 1.0 / kSqrt3, kSqrt2, 4.0 / kSqrt3,
           -kSqrt2 / kSqrt3, 1.0, 2.0 * kSqrt2 / kSqrt3,
           -1.0 / kSqrt3, kSqrt2, -1.0 / kSqrt3;
    const double base = 1.0 + kSqrt2;
    const double c = std::cos(t), s = std::sin(t);
    g.D = Mat3::Zero();
    g.D(0, 0) = std::pow(base, -2.0 * c / kSqrt3);
    g.D(1, 1) = std::pow(base, -s + c / kSqrt3);
    g.D(2, 2) = std::pow(base, s + c / kSqrt3);
    const Jet2 w = theorem31_w(case1_base_u(), 0.0, t);
    Mat3 M;
    M.col(0) = w.r;
    M.col(1) = w.r_x;
    M.col(2) = w.r_y;
    if (std::abs(det3(M)) < 1e-10)
        throw Error(ErrorKind::SingularGauge, "D B is singular at t = " + std::to_string(t));
    g.B = g.D.inverse() * M;
    return g;
}

Surface case1_family(double t) {
    if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "t must be finite");
    double ts = 0.0;
    const double off = singular_offset(t, &ts);
    Surface surf;
    surf.name = "case1-family";
    surf.domain = Rect{0.3, 1.5, -1.0, 1.0};
    if (std::abs(off) >= kGuardBand) {
        const Theorem31Gauge g = theorem31_gauge(t);
        const Mat3 G = g.A * (g.D * g.B).inverse();
        surf.jet = [G, t](double x, double y) { return detail::apply(G, theorem31_w(x, y, t)); };
        return surf;
    }
    // Inside the band around a singular gauge the member is the limit of its neighbours;
    // evaluate it by Lagrange interpolation in t over nodes spread across the band.
    std::array<double, 8> nodes{};
    std::array<Mat3, 8> maps{};
    for (int k = 0; k < 4; ++k) {
        nodes[2 * k] = ts - (k + 1) * kNodeSpacing;
        nodes[2 * k + 1] = ts + (k + 1) * kNodeSpacing;
    }
    std::array<double, 8> weights{};
    for (int i = 0; i < 8; ++i) {
        double w = 1.0;
        for (int k = 0; k < 8; ++k)
            if (k != i) w *= (t - nodes[k]) / (nodes[i] - nodes[k]);
        weights[i] = w;
        const Theorem31Gauge g = theorem31_gauge(nodes[i]);
        maps[i] = g.A * (g.D * g.B).inverse();
    }
    surf.jet = [nodes, maps, weights](double x, double y) {
        Jet2 acc;
        acc.x = x;
        acc.y = y;
        for (int i = 0; i < 8; ++i) {
            const Jet2 j = detail::apply(maps[i], theorem31_w(x, y, nodes[i]));
            acc.r += weights[i] * j.r;
            acc.r_x += weights[i] * j.r_x;
            acc.r_y += weights[i] * j.r_y;
            acc.r_xx += weights[i] * j.r_xx;
            acc.r_xy += weights[i] * j.r_xy;
            acc.r_yy += weights[i] * j.r_yy;
        }
        return acc;
    };
    return surf;
}

}  // namespace asph
