#include "asph/blaschke.hpp"

#include <cmath>
#include <string>

namespace asph {

namespace {

std::string at(double x, double y) { return " at (" + std::to_string(x) + ", " + std::to_string(y) + ")"; }

}  // namespace

FundamentalDets fundamental_dets(const Jet2& jet, double tol) {
    const double cross = jet.r_x.cross(jet.r_y).norm();
    if (!(cross > tol * jet.r_x.norm() * jet.r_y.norm()))
        throw Error(ErrorKind::DegenerateTangentPlane, "r_x and r_y are linearly dependent" + at(jet.x, jet.y));
    return {det3(jet.r_x, jet.r_y, jet.r_xx), det3(jet.r_x, jet.r_y, jet.r_xy), det3(jet.r_x, jet.r_y, jet.r_yy)};
}

double isothermal_defect(const FundamentalDets& d) {
    const double scale = 0.5 * (std::abs(d.L) + std::abs(d.N));
    if (scale == 0.0) return std::numeric_limits<double>::infinity();
    return (std::abs(d.L - d.N) + std::abs(2.0 * d.M)) / scale;
}

cplx beltrami_mu(double L, double M, double N) {
    const double delta = L * N - M * M;
    if (!(delta > 0.0)) throw Error(ErrorKind::IndefiniteMetric, "LN - M^2 <= 0");
    const double s = std::pow(delta, 0.25) * (L < 0.0 ? -1.0 : 1.0);
    const double E = L / s, F = M / s, G = N / s;
    const double lambda = 0.25 * (E + G + 2.0 * std::sqrt(E * G - F * F));
    return cplx(E - G, 2.0 * F) / (4.0 * lambda);
}

MeanCurvatureFit mean_curvature_fit(const Vec3& xi, const Vec3& r, double tol) {
    const double rr = r.squaredNorm();
    if (!(rr > tol)) throw Error(ErrorKind::InvalidArgument, "position vector vanishes");
    MeanCurvatureFit fit;
    fit.H = -xi.dot(r) / rr;
    const double nxi = xi.norm();
    fit.defect = nxi > 0.0 ? (xi + fit.H * r).norm() / nxi : 0.0;
    return fit;
}

AffineSample invariants_isothermal(const Jet2& jet, double residual_tol) {
    const FundamentalDets d = fundamental_dets(jet);
    const double delta = d.L * d.N - d.M * d.M;
    if (!(delta > 0.0)) throw Error(ErrorKind::IndefiniteMetric, "LN - M^2 <= 0" + at(jet.x, jet.y));
    AffineSample s;
    s.L = d.L;
    s.M = d.M;
    s.N = d.N;
    s.isothermal_defect = isothermal_defect(d);
    if (s.isothermal_defect > 10.0 * residual_tol)
        throw Error(ErrorKind::NotIsothermal,
                    "isothermal defect " + std::to_string(s.isothermal_defect) + at(jet.x, jet.y));
    const double gfac = 0.5 * (std::abs(d.L) + std::abs(d.N)) / std::pow(delta, 0.25);
    s.conformal = 0.5 * gfac;

    const CVec3 rz = 0.5 * (jet.r_x.cast<cplx>() - cplx(0, 1) * jet.r_y.cast<cplx>());
    const CVec3 rzz = 0.25 * (jet.r_xx.cast<cplx>() - jet.r_yy.cast<cplx>() - cplx(0, 2) * jet.r_xy.cast<cplx>());
    const Vec3 rzzb = 0.25 * (jet.r_xx + jet.r_yy);
    s.xi = rzzb / s.conformal;
    const MeanCurvatureFit fit = mean_curvature_fit(s.xi, jet.r);
    s.H = fit.H;
    s.collinearity_defect = fit.defect;
    const double orient = det3(jet.r_x, jet.r_y, s.xi);
    s.U = cplx(0, 2) * s.conformal * det3(rz, rzz, CVec3(s.xi.cast<cplx>())) / orient;
    return s;
}

double centroaffine_H(const Jet2& jet) {
    const FundamentalDets d = fundamental_dets(jet);
    const double delta = d.L * d.N - d.M * d.M;
    if (!(delta > 0.0)) throw Error(ErrorKind::IndefiniteMetric, "LN - M^2 <= 0" + at(jet.x, jet.y));
    const double D = det3(jet.r_x, jet.r_y, jet.r);
    return -std::pow(delta, 0.25) / std::abs(D) * (d.L * D > 0.0 ? 1.0 : -1.0);
}

JetSampler fd_jets(Sampler sampler, double step) {
    return [sampler = std::move(sampler), step](double x, double y) { return numeric_jet2(sampler, x, y, step); };
}

namespace {

template <class PointFn>
SphereReport sweep(const Grid& grid, PointFn&& fn) {
    grid.validate();
    SphereReport rep;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i), y = grid.y(j);
            try {
                fn(x, y, rep);
            } catch (const Error& e) {
                throw Error(e.kind(), std::string(e.what()) + " [grid node" + at(x, y) + "]");
            }
            ++rep.points;
        }
    }
    return rep;
}

}  // namespace

SphereReport verify_affine_sphere(const JetSampler& surface, const Grid& grid, double expected_H, double residual_tol) {
    return sweep(grid, [&](double x, double y, SphereReport& rep) {
        const AffineSample s = invariants_isothermal(surface(x, y), residual_tol);
        rep.max_defect = std::max(rep.max_defect, s.collinearity_defect);
        rep.max_H_error = std::max(rep.max_H_error, std::abs(s.H - expected_H));
        rep.max_isothermal_defect = std::max(rep.max_isothermal_defect, s.isothermal_defect);
    });
}

SphereReport verify_affine_sphere_centroaffine(const JetSampler& surface, const Grid& grid, double expected_H) {
    double hmin = std::numeric_limits<double>::infinity(), hmax = -hmin;
    SphereReport rep = sweep(grid, [&](double x, double y, SphereReport& r) {
        const Jet2 j = surface(x, y);
        const double H = centroaffine_H(j);
        hmin = std::min(hmin, H);
        hmax = std::max(hmax, H);
        r.max_H_error = std::max(r.max_H_error, std::abs(H - expected_H));
        r.max_isothermal_defect = std::max(r.max_isothermal_defect, isothermal_defect(fundamental_dets(j)));
    });
    rep.max_defect = (hmax - hmin) / std::max(std::abs(hmax), std::abs(hmin));
    return rep;
}

}  // namespace asph
