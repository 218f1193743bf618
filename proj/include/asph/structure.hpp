#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "asph/families.hpp"

namespace asph {

struct PsiJet {
    double psi = 0.0;
    double psi_x = 0.0;
    double psi_y = 0.0;
    double psi_xx = 0.0;
    double psi_xy = 0.0;
    double psi_yy = 0.0;
};

using PsiSampler = std::function<PsiJet(double, double)>;

struct TzitzeicaData {
    std::string name;
    PsiSampler psi;
    cplx U{};
    double H = -1.0;
};

/// psi from a conformal factor E = e^psi that depends on x only.
PsiJet psi_from_conformal(double E, double E1, double E2);

TzitzeicaData tzitzeica_case1();
TzitzeicaData tzitzeica_weierstrass(const CoefficientSet& cs);
TzitzeicaData tzitzeica_coth(double p);
TzitzeicaData tzitzeica_vacuum();
/// psi + eps x with unchanged U and H.
TzitzeicaData tzitzeica_perturbed(TzitzeicaData data, double eps);

/// max over the grid of |psi_{z zbar} + H e^psi + |U|^2 e^{-2 psi}|.
double tzitzeica_residual(const TzitzeicaData& data, const Grid& grid);

struct LaxPair {
    CMat3 Uz;
    CMat3 Vzb;
};

LaxPair frame_matrices(const TzitzeicaData& data, cplx lambda, double x, double y);

/// Max entry of U_zbar - V_z - [U, V] by Richardson-extrapolated central differences with step h.
double zero_curvature_residual(const TzitzeicaData& data, cplx lambda, double x, double y, double h = 1e-3);

struct FrameState {
    CMat3 F = CMat3::Identity();
    double x = 0.0;
    double y = 0.0;
};

/// F = (r_z, r_zbar, xi) from the analytic jet of an isothermal chart.
FrameState frame_from_jet(const Jet2& jet);

/// (|F_1 - conj F_2| + |Im F_3|) / |F|.
double reality_defect(const CMat3& F);

using Path = std::vector<std::pair<double, double>>;

/// Integrates dF = F (A dx + B dy) along the polyline starting at initial's point.
FrameState integrate_frame(const TzitzeicaData& data, cplx lambda, const FrameState& initial, const Path& path,
                           double step = 2.5e-4);

struct Reconstruction {
    Grid grid;
    std::vector<Vec3> points;  ///< row-major, x fastest
    double max_det_drift = 0.0;
    double max_reality_defect = 0.0;
};

/// r = Re(F_3) / (-H) on every node; the base frame must sit at (grid.x0, grid.y0).
Reconstruction reconstruct_family(const TzitzeicaData& data, cplx lambda, const FrameState& base, const Grid& grid,
                                  double step = 2.5e-4);

/// Relative difference of the two staircase paths from the base point to (x1, y1).
double holonomy_defect(const TzitzeicaData& data, cplx lambda, const FrameState& base, double x1, double y1,
                       double step = 2.5e-4);

}  // namespace asph
