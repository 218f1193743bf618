#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>

#include <Eigen/Dense>

#include "asph/error.hpp"

namespace asph {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;

/// Determinant of the matrix whose columns are a, b, c (cofactor expansion).
template <class V>
auto det3(const V& a, const V& b, const V& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

template <class M>
auto det3(const M& m) {
    return det3(m.col(0).eval(), m.col(1).eval(), m.col(2).eval());
}

/// Position and first/second partials of an immersion at (x, y).
struct Jet2 {
    Vec3 r = Vec3::Zero();
    Vec3 r_x = Vec3::Zero();
    Vec3 r_y = Vec3::Zero();
    Vec3 r_xx = Vec3::Zero();
    Vec3 r_xy = Vec3::Zero();
    Vec3 r_yy = Vec3::Zero();
    double x = 0.0;
    double y = 0.0;
};

struct ToleranceConfig {
    double fd_step = 0.0;  // 0 selects the automatic step
    double residual_tol = 1e-8;
    double fd_residual_tol = 1e-5;
    double root_tol = 1e-12;
    double ode_step = 1e-3;

    void validate() const;
};

struct CubicRoots {
    std::array<cplx, 3> roots{};
    bool all_real = false;
    /// multiplicity[i] counts roots coinciding with roots[i] under the double-root threshold.
    std::array<int, 3> multiplicity{1, 1, 1};
    bool has_repeated() const { return multiplicity[0] > 1 || multiplicity[1] > 1 || multiplicity[2] > 1; }
};

/// Roots of a3 z^3 + a2 z^2 + a1 z + a0, sorted descending when all real.
CubicRoots cubic_roots(double a3, double a2, double a1, double a0, double root_tol = 1e-12);

using Sampler = std::function<Vec3(double, double)>;

/// Default finite-difference step eps^(1/4) * (1 + |coordinate|).
double default_fd_step(double coordinate);

/// Central differences with one Richardson level. step <= 0 selects the default.
Jet2 numeric_jet2(const Sampler& sampler, double x, double y, double step = 0.0);

inline bool all_finite(double v) { return std::isfinite(v); }
inline bool all_finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
template <class Derived>
bool all_finite(const Eigen::DenseBase<Derived>& v) {
    return v.allFinite();
}

/// Classical fixed-step RK4 over [s0, s1]; step count ceil(|s1 - s0| / step).
template <class State, class Field>
State integrate_ode(Field&& field, State state, double s0, double s1, double step) {
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "ode step must be positive");
    const double span = s1 - s0;
    if (span == 0.0) return state;
    const auto n = static_cast<long>(std::ceil(std::abs(span) / step - 1e-12));
    const double h = span / static_cast<double>(n);
    double s = s0;
    for (long i = 0; i < n; ++i) {
        const State k1 = field(s, state);
        const State k2 = field(s + 0.5 * h, State(state + (0.5 * h) * k1));
        const State k3 = field(s + 0.5 * h, State(state + (0.5 * h) * k2));
        const State k4 = field(s + h, State(state + h * k3));
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s = s0 + static_cast<double>(i + 1) * h;
        if (!all_finite(state)) throw Error(ErrorKind::NonFiniteState, "state left the finite range at s=" + std::to_string(s));
    }
    return state;
}

/// Bracketed root of a continuous scalar function (Brent/TOMS748 via Boost).
double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14);

}  // namespace asph

namespace asph {

/// Uniform nx-by-ny grid over [x0, x1] x [y0, y1], row-major with x fastest.
struct Grid {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    int nx = 2, ny = 2;

    double x(int i) const { return nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1); }
    double y(int j) const { return ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    void validate() const;
};

}  // namespace asph
