#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "asph/families.hpp"

namespace asph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSplit = 2.0;

double cubic_P(double p, double q, double xi) { return (xi - 1.0) * (xi + p) * (xi + q); }

double cubic_dP(double p, double q, double xi) {
    return (xi + p) * (xi + q) + (xi - 1.0) * (xi + q) + (xi - 1.0) * (xi + p);
}

bool extreme(const HildebrandBranch& b) { return std::abs(b.c + 2.0 * (b.p + b.q)) <= 1e-12 * (b.p + b.q); }

// S = sqrt(c^2 + 4(p+q) P) with the factor (xi - xi_lo) supplied exactly as delta.
double radical(const HildebrandBranch& b, double xi, double delta) {
    const double a = b.p + b.q - 1.0, r = b.xi_lo;
    const double quot = xi * xi + (r + a) * xi + r * (r + a);
    return std::sqrt(std::max(4.0 * (b.p + b.q) * delta * quot, 0.0));
}

double radical(const HildebrandBranch& b, double xi) { return radical(b, xi, xi - b.xi_lo); }

double dtau_at(const HildebrandBranch& b, double xi, double S) {
    return 2.0 * (b.p + b.q) * (3.0 * xi + 2.0 * (b.p + b.q - 1.0)) / (S * (-b.c * b.s + S));
}

// d/dxi of log|t| - log|1 - xi| on the s = -1 branch, free of the cancellation at xi = 1.
double regular_rate(const HildebrandBranch& b, double xi, double S) {
    const double pq = b.p + b.q;
    const double N = 3.0 * xi + 2.0 * pq - 2.0;
    const double D = (xi + b.p) * (xi + b.q);
    return (2.0 * b.c * (xi + pq - 2.0) + 4.0 * pq * (N - 2.0 * D) * D / (S - b.c)) / (2.0 * D * S);
}

template <class F>
double finite_integral(F f, double a, double b) {
    if (a == b) return 0.0;
    double err = 0.0, l1 = 0.0;
    double val = 0.0;
    try {
        boost::math::quadrature::tanh_sinh<double> integ;
        val = integ.integrate(f, std::min(a, b), std::max(a, b), 1e-13, &err, &l1);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::QuadratureFailure, std::string("quadrature failed: ") + e.what());
    }
    if (!std::isfinite(val) || err > 1e-8 * std::max(1.0, l1))
        throw Error(ErrorKind::QuadratureFailure, "quadrature did not converge on [" + std::to_string(std::min(a, b)) +
                                                      ", " + std::to_string(std::max(a, b)) + "]");
    return a < b ? val : -val;
}

// Integral of f(x, x - xi_lo) dx from a to b, taken in u = sqrt(x - xi_lo) to absorb the square-root endpoint.
template <class F>
double near_integral(const HildebrandBranch& br, F f, double a, double b) {
    const double ua = std::sqrt(std::max(a - br.xi_lo, 0.0));
    const double ub = std::sqrt(std::max(b - br.xi_lo, 0.0));
    return finite_integral(
        [&](double u) {
            const double delta = u * u;
            if (!(delta > 0.0)) return 0.0;
            return 2.0 * u * f(br.xi_lo + delta, delta);
        },
        ua, ub);
}

template <class F>
double tail_integral(F f, double a) {
    double err = 0.0, l1 = 0.0;
    double val = 0.0;
    try {
        boost::math::quadrature::exp_sinh<double> integ;
        val = integ.integrate(f, a, kInf, 1e-13, &err, &l1);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::QuadratureFailure, std::string("quadrature failed: ") + e.what());
    }
    if (!std::isfinite(val) || err > 1e-8 * std::max(1.0, l1))
        throw Error(ErrorKind::QuadratureFailure, "tail quadrature did not converge from " + std::to_string(a));
    return val;
}

// integral of dtau from xi to infinity; the part below xi_lo + 1 uses the exact distance to xi_lo
double dtau_tail(const HildebrandBranch& b, double xi) {
    const double cut = std::max(xi, b.xi_lo + 1.0);
    double near = 0.0;
    if (xi < cut) {
        near = near_integral(
            b, [&](double x, double delta) { return dtau_at(b, x, radical(b, x, delta)); }, xi, cut);
    }
    return near + tail_integral([&](double x) { return b.dtau(x); }, cut);
}

bool crossing_branch(const HildebrandBranch& b) { return b.s < 0 && b.c < 0.0; }

// Regular part R of log|t| = log|1 - xi| + R on the crossing branch, for xi <= kSplit.
double regular_part(const HildebrandBranch& b, double xi) {
    return b.anchor_value +
           near_integral(b, [&](double x, double delta) { return regular_rate(b, x, radical(b, x, delta)); },
                         b.anchor, xi);
}

void require_interval(const HildebrandBranch& b, double xi) {
    if (!(xi > b.xi_lo && xi < b.xi_hi))
        throw Error(ErrorKind::DomainViolation, "xi = " + std::to_string(xi) + " lies outside the branch interval");
}

}  // namespace

double HildebrandBranch::e_varpi(double xi) const {
    return (-c + s * radical(*this, xi)) / (2.0 * (p + q));
}

double HildebrandBranch::dvarpi(double xi) const {
    return s * cubic_dP(p, q, xi) / (radical(*this, xi) * e_varpi(xi));
}

double HildebrandBranch::dtau(double xi) const { return dtau_at(*this, xi, radical(*this, xi)); }

double HildebrandBranch::tau(double xi) const {
    require_interval(*this, xi);
    if (closed_form) return std::log(theorem33_t(p, xi));
    if (!crossing_branch(*this)) return -dtau_tail(*this, xi);
    if (xi == 1.0) return -kInf;
    if (xi <= kSplit) return std::log(std::abs(1.0 - xi)) + regular_part(*this, xi);
    return std::log(kSplit - 1.0) + regular_part(*this, kSplit) +
           finite_integral([&](double x) { return dtau(x); }, kSplit, xi);
}

double HildebrandBranch::t(double xi) const {
    const double mag = std::exp(tau(xi));
    if (crossing_branch(*this)) return xi > 1.0 ? -mag : mag;
    return s > 0 ? mag : -mag;
}

double HildebrandBranch::t_end() const {
    if (s > 0) return 1.0;
    if (!crossing_branch(*this)) return -1.0;
    const double log_mag = std::log(kSplit - 1.0) + regular_part(*this, kSplit) +
                           tail_integral([&](double x) { return dtau(x); }, kSplit);
    return -std::exp(log_mag);
}

double HildebrandBranch::e_phi(double xi) const {
    require_interval(*this, xi);
    if (crossing_branch(*this)) {
        const double S = radical(*this, xi);
        const double R = xi <= kSplit ? regular_part(*this, xi) : tau(xi) - std::log(xi - 1.0);
        return 2.0 * (xi + p) * (xi + q) / ((S - c) * std::exp(R));
    }
    return e_varpi(xi) / t(xi);
}

Vec3 HildebrandBranch::point(double xi, double mu) const {
    const double ep = std::cbrt(e_phi(xi));
    return Vec3(ep * std::exp((q + 1.0) * mu / (3.0 * q)), ep * std::exp(-(p + 1.0) * mu / (3.0 * p)),
                ep * std::exp(-(p - q) * mu / (3.0 * (p + q))) * t(xi));
}

double HildebrandBranch::ode_residual(double xi) const {
    require_interval(*this, xi);
    const double tv = t(xi);
    const double ephi = e_phi(xi);
    // dphi/dt = (dphi/dxi) / (dt/dxi), both taken along xi
    double dphi_dxi = 0.0, dt_dxi = 0.0;
    if (closed_form) {
        const double tp = theorem33_dlogt(p, xi);
        dt_dxi = tv * tp;
        dphi_dxi = dvarpi(xi) - tp;
    } else if (crossing_branch(*this) && xi <= kSplit) {
        const double S = radical(*this, xi);
        const double g = regular_rate(*this, xi, S);
        const double R = regular_part(*this, xi);
        const double dS = 2.0 * (p + q) * cubic_dP(p, q, xi) / S;
        const double dD = (2.0 * xi + p + q) / ((xi + p) * (xi + q));
        dphi_dxi = dD - dS / (S - c) - g;
        dt_dxi = std::exp(R) * (-1.0 + (1.0 - xi) * g);
    } else {
        const double tp = dtau(xi);
        dt_dxi = tv * tp;
        dphi_dxi = dvarpi(xi) - tp;
    }
    const double dphi = dphi_dxi / dt_dxi;
    const double lhs = dphi * (tv * dphi + p + 1.0) * (tv * dphi + q + 1.0) / ephi;
    const double rhs = (p + q) * tv * ephi + c;
    return std::abs(lhs - rhs);
}

HildebrandBranch hildebrand_original(double p, double c, int s) {
    validate_p(p);
    if (s != 1 && s != -1) throw Error(ErrorKind::InvalidArgument, "s must be +1 or -1");
    const double q = conjugate_exponent(p);
    if (!(c <= 0.0) || c < -2.0 * (p + q) * (1.0 + 1e-12))
        throw Error(ErrorKind::DomainViolation, "c must lie in [-2(p+q), 0]");
    HildebrandBranch b;
    b.p = p;
    b.q = q;
    b.c = c;
    b.s = s;
    b.xi_hi = kInf;
    const CoefficientSet cs = shorthand_coeffs(p, q, c);
    if (cs.ctx.kind == LatticeKind::Hyperbolic) {
        b.xi_lo = 0.0;
    } else {
        // largest root of c^2/(4(p+q)) + P, polished by Newton from 4 e1 - b1
        double r = std::min(4.0 * cs.ctx.e1 - cs.b1, 1.0);
        const double k = c * c / (4.0 * (p + q));
        for (int i = 0; i < 4; ++i) {
            const double d = cubic_dP(p, q, r);
            if (d == 0.0) break;
            r -= (k + cubic_P(p, q, r)) / d;
        }
        b.xi_lo = std::clamp(r, 0.0, 1.0);
    }
    b.closed_form = s > 0 && extreme(b);
    if (crossing_branch(b)) {
        if (extreme(b)) {
            b.anchor = 0.5;
            b.anchor_value = 0.0;
            b.anchor_value = -std::log(-b.t_end());
        } else {
            HildebrandBranch plus = b;
            plus.s = 1;
            b.anchor = b.xi_lo;
            b.anchor_value = -dtau_tail(plus, b.xi_lo) - std::log(1.0 - b.xi_lo);
        }
    }
    return b;
}

double theorem33_dlogt(double p, double xi) {
    validate_p(p);
    if (!(xi > 0.0)) throw Error(ErrorKind::DomainViolation, "closed-form t needs xi > 0");
    const double q = conjugate_exponent(p);
    const double S = p + q;
    const double r = std::sqrt(xi + S - 1.0), dr = 0.5 / r;
    const double a = std::sqrt(S - 1.0);
    return dr / (r + std::sqrt(S)) + a / std::sqrt(S) * (1.0 / xi - 2.0 * dr / (r + a)) +
           (dr / (r + std::sqrt(q - 1.0)) - 1.0 / (xi + p)) / p + (dr / (r + std::sqrt(p - 1.0)) - 1.0 / (xi + q)) / q;
}

double theorem33_t(double p, double xi) {
    validate_p(p);
    if (!(xi > 0.0)) throw Error(ErrorKind::DomainViolation, "closed-form t needs xi > 0");
    const double q = conjugate_exponent(p);
    const double S = p + q;
    const double r = std::sqrt(xi + S - 1.0);
    const double a = std::sqrt(S - 1.0);
    return (r + std::sqrt(S)) * std::pow(xi / ((r + a) * (r + a)), a / std::sqrt(S)) *
           std::pow((r + std::sqrt(q - 1.0)) / (xi + p), 1.0 / p) * std::pow((r + std::sqrt(p - 1.0)) / (xi + q), 1.0 / q);
}

}  // namespace asph
