#pragma once

#include <functional>

#include "asph/numerics.hpp"

namespace asph {

struct FundamentalDets {
    double L = 0.0;
    double M = 0.0;
    double N = 0.0;
};

/// Equiaffine invariants at one point of an isothermal chart.
struct AffineSample {
    double L = 0.0;
    double M = 0.0;
    double N = 0.0;
    double conformal = 0.0;  ///< e^psi with g = 2 e^psi dz dzbar
    Vec3 xi = Vec3::Zero();
    cplx U{};
    double H = 0.0;
    double isothermal_defect = 0.0;
    double collinearity_defect = 0.0;
};

struct MeanCurvatureFit {
    double H = 0.0;
    double defect = 0.0;
};

FundamentalDets fundamental_dets(const Jet2& jet, double tol = 1e-14);

/// (|L - N| + |2M|) / ((|L| + |N|) / 2).
double isothermal_defect(const FundamentalDets& d);

/// Beltrami coefficient (E - G + 2iF) / (4 lambda) of the Blaschke metric.
cplx beltrami_mu(double L, double M, double N);

MeanCurvatureFit mean_curvature_fit(const Vec3& xi, const Vec3& r, double tol = 1e-300);

/// Invariants in isothermal coordinates; throws NotIsothermal when the defect exceeds 10 * residual_tol.
AffineSample invariants_isothermal(const Jet2& jet, double residual_tol = 1e-8);

/// Centroaffine estimate -|LN - M^2|^(1/4) / det(r_x, r_y, r), valid in any chart of a proper affine sphere.
double centroaffine_H(const Jet2& jet);

using JetSampler = std::function<Jet2(double, double)>;

/// Jets of a plain point sampler by finite differences.
JetSampler fd_jets(Sampler sampler, double step = 0.0);

struct SphereReport {
    double max_defect = 0.0;           ///< max |xi + H r| / |xi|
    double max_H_error = 0.0;          ///< max |H - expected_H|
    double max_isothermal_defect = 0.0;
    std::size_t points = 0;
};

/// Aggregates invariants_isothermal over the grid (isothermal charts).
SphereReport verify_affine_sphere(const JetSampler& surface, const Grid& grid, double expected_H,
                                  double residual_tol = 1e-8);

/// Same check through centroaffine_H; usable in non-isothermal charts (max_defect is the spread of H).
SphereReport verify_affine_sphere_centroaffine(const JetSampler& surface, const Grid& grid, double expected_H);

}  // namespace asph
