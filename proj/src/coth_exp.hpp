#pragma once

#include <cmath>

#include "asph/numerics.hpp"

namespace asph::detail {

// f(x, y) = (a coth(kappa x) + b) exp(lx x + ly y) together with its jets.
struct CothExp {
    double a = 0.0, b = 0.0, kappa = 1.0, lx = 0.0, ly = 0.0;

    struct Values {
        double f, fx, fy, fxx, fxy, fyy;
    };

    Values eval(double x, double y) const {
        const double ct = 1.0 / std::tanh(kappa * x);
        const double cs2 = ct * ct - 1.0;
        const double A = a * ct + b;
        const double A1 = -a * kappa * cs2;
        const double A2 = 2.0 * a * kappa * kappa * ct * cs2;
        const double E = std::exp(lx * x + ly * y);
        return {A * E,
                (A1 + lx * A) * E,
                ly * A * E,
                (A2 + 2.0 * lx * A1 + lx * lx * A) * E,
                ly * (A1 + lx * A) * E,
                ly * ly * A * E};
    }

    void write(Jet2& jet, int i, double x, double y, double scale = 1.0) const {
        const Values v = eval(x, y);
        jet.r[i] = scale * v.f;
        jet.r_x[i] = scale * v.fx;
        jet.r_y[i] = scale * v.fy;
        jet.r_xx[i] = scale * v.fxx;
        jet.r_xy[i] = scale * v.fxy;
        jet.r_yy[i] = scale * v.fyy;
    }
};

inline Jet2 apply(const Mat3& G, const Jet2& j) {
    Jet2 out;
    out.r = G * j.r;
    out.r_x = G * j.r_x;
    out.r_y = G * j.r_y;
    out.r_xx = G * j.r_xx;
    out.r_xy = G * j.r_xy;
    out.r_yy = G * j.r_yy;
    out.x = j.x;
    out.y = j.y;
    return out;
}

inline Jet2 scaled(const Jet2& j, double s) {
    Jet2 out = j;
    out.r *= s;
    out.r_x *= s;
    out.r_y *= s;
    out.r_xx *= s;
    out.r_xy *= s;
    out.r_yy *= s;
    return out;
}

}  // namespace asph::detail
