#include "asph/numerics.hpp"

#include <algorithm>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace asph {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
        case ErrorKind::NonFiniteState: return "NonFiniteState";
        case ErrorKind::ComplexLattice: return "ComplexLattice";
        case ErrorKind::PoleProximity: return "PoleProximity";
        case ErrorKind::ValueOutOfRealRange: return "ValueOutOfRealRange";
        case ErrorKind::DegenerateTangentPlane: return "DegenerateTangentPlane";
        case ErrorKind::IndefiniteMetric: return "IndefiniteMetric";
        case ErrorKind::NotIsothermal: return "NotIsothermal";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::SingularGauge: return "SingularGauge";
        case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::NoBracket: return "NoBracket";
        case ErrorKind::RealityLoss: return "RealityLoss";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

void ToleranceConfig::validate() const {
    if (fd_step < 0.0 || !(residual_tol > 0.0) || !(fd_residual_tol > 0.0) || !(root_tol > 0.0) ||
        !(ode_step > 0.0))
        throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
}

namespace {

cplx polish(cplx z, double b, double c, double d) {
    const cplx f = ((z + b) * z + c) * z + d;
    const cplx df = (3.0 * z + 2.0 * b) * z + c;
    if (std::abs(df) <= 1e-8 * (1.0 + std::norm(z))) return z;
    return z - f / df;
}

}  // namespace

CubicRoots cubic_roots(double a3, double a2, double a1, double a0, double root_tol) {
    if (a3 == 0.0 || !std::isfinite(a3))
        throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient is zero");
    const double b = a2 / a3, c = a1 / a3, d = a0 / a3;
    const double shift = b / 3.0;
    const double P = c - b * b / 3.0;
    const double Q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double half_q = Q / 2.0, third_p = P / 3.0;
    const double disc = half_q * half_q + third_p * third_p * third_p;
    const double scale = std::max(half_q * half_q, std::abs(third_p * third_p * third_p));

    CubicRoots out;
    bool forced_double = false;
    std::array<cplx, 3> t{};
    if (scale == 0.0) {
        t = {0.0, 0.0, 0.0};
        out.all_real = true;
        forced_double = true;
    } else if (std::abs(disc) <= 1e4 * std::numeric_limits<double>::epsilon() * scale) {
        const double t1 = 3.0 * Q / P;
        const double t2 = -1.5 * Q / P;
        t = {t1, t2, t2};
        out.all_real = true;
        forced_double = true;
    } else if (disc < 0.0) {
        const double m = 2.0 * std::sqrt(-third_p);
        const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) t[k] = m * std::cos(theta - 2.0 * kPi * k / 3.0);
        out.all_real = true;
    } else {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-half_q + sq);
        const double v = std::cbrt(-half_q - sq);
        t[0] = u + v;
        t[1] = cplx(-(u + v) / 2.0, std::sqrt(3.0) / 2.0 * (u - v));
        t[2] = std::conj(t[1]);
        out.all_real = false;
    }
    for (int k = 0; k < 3; ++k) {
        cplx z = t[k] - shift;
        if (!forced_double) z = polish(z, b, c, d);
        else if (k == 0 && scale != 0.0) z = polish(z, b, c, d);
        if (out.all_real) z = cplx(z.real(), 0.0);
        out.roots[k] = z;
    }
    if (out.all_real)
        std::sort(out.roots.begin(), out.roots.end(), [](cplx l, cplx r) { return l.real() > r.real(); });
    for (int i = 0; i < 3; ++i) {
        int m = 0;
        for (int j = 0; j < 3; ++j) {
            const double thr = 1e3 * root_tol * (1.0 + std::abs(out.roots[i]));
            if (std::abs(out.roots[i] - out.roots[j]) <= thr) ++m;
        }
        out.multiplicity[i] = m;
    }
    if (forced_double && out.all_real) {
        for (int i = 0; i < 3; ++i) {
            int m = 0;
            for (int j = 0; j < 3; ++j)
                if (std::abs(out.roots[i] - out.roots[j]) <= 1e-9 * (1.0 + std::abs(out.roots[i]))) ++m;
            out.multiplicity[i] = std::max(out.multiplicity[i], m);
        }
    }
    return out;
}

double default_fd_step(double coordinate) {
    return std::pow(std::numeric_limits<double>::epsilon(), 0.25) * (1.0 + std::abs(coordinate));
}

Jet2 numeric_jet2(const Sampler& sampler, double x, double y, double step) {
    const double hx = step > 0.0 ? step : default_fd_step(x);
    const double hy = step > 0.0 ? step : default_fd_step(y);
    Vec3 f[5][5];
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double px = x + (i - 2) * hx / 2.0;
            const double py = y + (j - 2) * hy / 2.0;
            try {
                f[i][j] = sampler(px, py);
            } catch (const std::exception& e) {
                throw Error(ErrorKind::StencilOutOfDomain,
                            "sampler failed at (" + std::to_string(px) + ", " + std::to_string(py) + "): " + e.what());
            }
            if (!f[i][j].allFinite())
                throw Error(ErrorKind::StencilOutOfDomain,
                            "non-finite sample at (" + std::to_string(px) + ", " + std::to_string(py) + ")");
        }
    }
    const auto richardson = [](const Vec3& coarse, const Vec3& fine) -> Vec3 { return (4.0 * fine - coarse) / 3.0; };
    Jet2 j;
    j.x = x;
    j.y = y;
    j.r = f[2][2];
    j.r_x = richardson((f[4][2] - f[0][2]) / (2.0 * hx), (f[3][2] - f[1][2]) / hx);
    j.r_y = richardson((f[2][4] - f[2][0]) / (2.0 * hy), (f[2][3] - f[2][1]) / hy);
    j.r_xx = richardson((f[4][2] - 2.0 * f[2][2] + f[0][2]) / (hx * hx),
                        (f[3][2] - 2.0 * f[2][2] + f[1][2]) / (hx * hx / 4.0));
    j.r_yy = richardson((f[2][4] - 2.0 * f[2][2] + f[2][0]) / (hy * hy),
                        (f[2][3] - 2.0 * f[2][2] + f[2][1]) / (hy * hy / 4.0));
    j.r_xy = richardson((f[4][4] - f[4][0] - f[0][4] + f[0][0]) / (4.0 * hx * hy),
                        (f[3][3] - f[3][1] - f[1][3] + f[1][1]) / (hx * hy));
    return j;
}

double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw Error(ErrorKind::NoBracket, "function has equal signs at both ends of [" + std::to_string(lo) + ", " +
                                              std::to_string(hi) + "]");
    boost::uintmax_t iters = 200;
    auto stop = [tol](double a, double b) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace asph

namespace asph {

void Grid::validate() const {
    if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidArgument, "grid resolution must be positive");
    if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1))
        throw Error(ErrorKind::InvalidArgument, "grid bounds must be finite");
}

}  // namespace asph
