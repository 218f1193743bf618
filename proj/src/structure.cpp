#include "asph/structure.hpp"

#include <cmath>
#include <string>

namespace asph {

namespace {

const cplx I(0.0, 1.0);

cplx psi_z(const PsiJet& j) { return 0.5 * cplx(j.psi_x, -j.psi_y); }

double det_drift_ratio(const CMat3& F, const PsiJet& j) { return std::abs(F.determinant() * std::exp(-j.psi)); }

CMat3 frame_derivative(const TzitzeicaData& data, cplx lambda, double x, double y, const CMat3& F, double dx,
                       double dy) {
    const LaxPair lp = frame_matrices(data, lambda, x, y);
    const CMat3 A = lp.Uz + lp.Vzb;
    const CMat3 B = I * (lp.Uz - lp.Vzb);
    return F * (dx * A + dy * B);
}

FrameState integrate_segment(const TzitzeicaData& data, cplx lambda, const FrameState& from, double x1, double y1,
                             double step) {
    const double dx = x1 - from.x, dy = y1 - from.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) return from;
    const double ux = dx / len, uy = dy / len;
    const double x0 = from.x, y0 = from.y;
    auto field = [&](double s, const CMat3& F) -> CMat3 {
        return frame_derivative(data, lambda, x0 + s * ux, y0 + s * uy, F, ux, uy);
    };
    FrameState out;
    out.F = integrate_ode(field, from.F, 0.0, len, step);
    out.x = x1;
    out.y = y1;
    return out;
}

void check_reality(const CMat3& F, const char* where) {
    const double d = reality_defect(F);
    if (!(d <= 1e-4))
        throw Error(ErrorKind::RealityLoss, std::string(where) + ": reality defect " + std::to_string(d) + " exceeds 1e-4");
}

}  // namespace

PsiJet psi_from_conformal(double E, double E1, double E2) {
    if (!(E > 0.0)) throw Error(ErrorKind::NonFiniteState, "conformal factor must be positive");
    PsiJet j;
    j.psi = std::log(E);
    j.psi_x = E1 / E;
    j.psi_xx = E2 / E - j.psi_x * j.psi_x;
    return j;
}

TzitzeicaData tzitzeica_case1() {
    TzitzeicaData d;
    d.name = "case1";
    d.U = 1.0;
    d.H = -1.0;
    d.psi = [](double x, double) {
        const double r3 = std::sqrt(3.0);
        const double s = std::sinh(r3 * x), ct = std::cosh(r3 * x) / s;
        const double c2 = 1.0 / (s * s);
        const double E = (3.0 * c2 + 2.0) / 2.0;
        const double E1 = -3.0 * r3 * c2 * ct;
        const double E2 = 9.0 * (2.0 * c2 * ct * ct + c2 * c2);
        return psi_from_conformal(E, E1, E2);
    };
    return d;
}

TzitzeicaData tzitzeica_weierstrass(const CoefficientSet& cs) {
    TzitzeicaData d;
    d.name = "weierstrass";
    d.U = weierstrass_U_modulus(cs.p, cs.c);
    d.H = -1.0;
    const double offset = cs.ctx.kind == LatticeKind::Hyperbolic ? 0.0 : cs.ctx.omega1;
    d.psi = [ctx = cs.ctx, offset, C = cs.metric_shift](double x, double) {
        const cplx w = x + offset;
        const double P = wp(ctx, w).real(), P1 = wp_prime(ctx, w).real();
        const double P2 = 6.0 * P * P - 0.5 * ctx.g2;
        return psi_from_conformal(0.5 * (P + C), 0.5 * P1, 0.5 * P2);
    };
    return d;
}

TzitzeicaData tzitzeica_coth(double p) {
    validate_p(p);
    TzitzeicaData d;
    d.name = "coth";
    d.U = coth_U_modulus(p);
    d.H = -1.0;
    const double K0 = (p * p - p + 1.0) / (8.0 * (p - 1.0));
    const double k = std::sqrt(p * p - p + 1.0) / (2.0 * std::sqrt(p - 1.0));
    d.psi = [K0, k](double x, double) {
        const double ct = 1.0 / std::tanh(k * x), cs2 = ct * ct - 1.0;
        const double E = K0 * (ct * ct - 1.0 / 3.0);
        const double E1 = -2.0 * K0 * k * ct * cs2;
        const double E2 = K0 * (2.0 * k * k * cs2 * cs2 + 4.0 * k * k * ct * ct * cs2);
        return psi_from_conformal(E, E1, E2);
    };
    return d;
}

TzitzeicaData tzitzeica_vacuum() {
    TzitzeicaData d;
    d.name = "vacuum";
    d.U = 1.0;
    d.H = -1.0;
    d.psi = [](double, double) { return PsiJet{}; };
    return d;
}

TzitzeicaData tzitzeica_perturbed(TzitzeicaData data, double eps) {
    data.name += "-perturbed";
    data.psi = [inner = data.psi, eps](double x, double y) {
        PsiJet j = inner(x, y);
        j.psi += eps * x;
        j.psi_x += eps;
        return j;
    };
    return data;
}

double tzitzeica_residual(const TzitzeicaData& data, const Grid& grid) {
    grid.validate();
    const double u2 = std::norm(data.U);
    double worst = 0.0;
    for (int jy = 0; jy < grid.ny; ++jy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const PsiJet j = data.psi(grid.x(ix), grid.y(jy));
            const double res = 0.25 * (j.psi_xx + j.psi_yy) + data.H * std::exp(j.psi) + u2 * std::exp(-2.0 * j.psi);
            worst = std::max(worst, std::abs(res));
        }
    return worst;
}

LaxPair frame_matrices(const TzitzeicaData& data, cplx lambda, double x, double y) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "spectral parameter must lie on the unit circle");
    const PsiJet j = data.psi(x, y);
    const double e = std::exp(j.psi), ie = std::exp(-j.psi);
    const cplx pz = psi_z(j);
    LaxPair lp;
    lp.Uz = CMat3::Zero();
    lp.Vzb = CMat3::Zero();
    lp.Uz(0, 0) = pz;
    lp.Uz(0, 2) = -data.H;
    lp.Uz(1, 0) = -lambda * data.U * ie;
    lp.Uz(2, 1) = e;
    lp.Vzb(0, 1) = -std::conj(lambda * data.U) * ie;
    lp.Vzb(1, 1) = std::conj(pz);
    lp.Vzb(1, 2) = -data.H;
    lp.Vzb(2, 0) = e;
    return lp;
}

double zero_curvature_residual(const TzitzeicaData& data, cplx lambda, double x, double y, double h) {
    auto lax = [&](double a, double b) { return frame_matrices(data, lambda, a, b); };
    // central differences with one Richardson level
    auto partials = [&](double k) {
        const LaxPair px = lax(x + k, y), mx = lax(x - k, y), py = lax(x, y + k), my = lax(x, y - k);
        const CMat3 Ux = (px.Uz - mx.Uz) / (2.0 * k), Uy = (py.Uz - my.Uz) / (2.0 * k);
        const CMat3 Vx = (px.Vzb - mx.Vzb) / (2.0 * k), Vy = (py.Vzb - my.Vzb) / (2.0 * k);
        return std::pair<CMat3, CMat3>{0.5 * (Ux + I * Uy), 0.5 * (Vx - I * Vy)};
    };
    const auto coarse = partials(h), fine = partials(0.5 * h);
    const CMat3 Uzb = (4.0 * fine.first - coarse.first) / 3.0;
    const CMat3 Vz = (4.0 * fine.second - coarse.second) / 3.0;
    const LaxPair c = lax(x, y);
    const CMat3 R = Uzb - Vz - (c.Uz * c.Vzb - c.Vzb * c.Uz);
    return R.cwiseAbs().maxCoeff();
}

FrameState frame_from_jet(const Jet2& jet) {
    const AffineSample a = invariants_isothermal(jet, 1e-6);
    FrameState s;
    s.x = jet.x;
    s.y = jet.y;
    const CVec3 rz = 0.5 * (jet.r_x.cast<cplx>() - I * jet.r_y.cast<cplx>());
    s.F.col(0) = rz;
    s.F.col(1) = rz.conjugate();
    s.F.col(2) = a.xi.cast<cplx>();
    return s;
}

double reality_defect(const CMat3& F) {
    const double n = F.norm();
    if (!(n > 0.0)) return 0.0;
    return ((F.col(0) - F.col(1).conjugate()).norm() + F.col(2).imag().norm()) / n;
}

FrameState integrate_frame(const TzitzeicaData& data, cplx lambda, const FrameState& initial, const Path& path,
                           double step) {
    check_reality(initial.F, "initial frame");
    FrameState cur = initial;
    for (const auto& [x, y] : path) cur = integrate_segment(data, lambda, cur, x, y, step);
    check_reality(cur.F, "integrated frame");
    return cur;
}

Reconstruction reconstruct_family(const TzitzeicaData& data, cplx lambda, const FrameState& base, const Grid& grid,
                                  double step) {
    grid.validate();
    if (std::abs(base.x - grid.x0) > 1e-12 || std::abs(base.y - grid.y0) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "base frame must sit at the grid corner");
    check_reality(base.F, "base frame");
    Reconstruction rec;
    rec.grid = grid;
    rec.points.assign(grid.size(), Vec3::Zero());
    const double ref = det_drift_ratio(base.F, data.psi(base.x, base.y));
    auto record = [&](int ix, int jy, const FrameState& s) {
        rec.points[static_cast<std::size_t>(jy) * grid.nx + ix] = s.F.col(2).real() / (-data.H);
        const double ratio = det_drift_ratio(s.F, data.psi(s.x, s.y));
        rec.max_det_drift = std::max(rec.max_det_drift, std::abs(ratio - ref) / ref);
        rec.max_reality_defect = std::max(rec.max_reality_defect, reality_defect(s.F));
    };
    std::vector<FrameState> row(grid.nx);
    row[0] = base;
    for (int ix = 1; ix < grid.nx; ++ix) row[ix] = integrate_segment(data, lambda, row[ix - 1], grid.x(ix), grid.y0, step);
    for (int ix = 0; ix < grid.nx; ++ix) {
        FrameState s = row[ix];
        record(ix, 0, s);
        for (int jy = 1; jy < grid.ny; ++jy) {
            s = integrate_segment(data, lambda, s, grid.x(ix), grid.y(jy), step);
            record(ix, jy, s);
        }
    }
    if (rec.max_reality_defect > 1e-4)
        throw Error(ErrorKind::RealityLoss, "reconstruction lost the reality structure");
    return rec;
}

double holonomy_defect(const TzitzeicaData& data, cplx lambda, const FrameState& base, double x1, double y1,
                       double step) {
    const FrameState a = integrate_frame(data, lambda, base, Path{{x1, base.y}, {x1, y1}}, step);
    const FrameState b = integrate_frame(data, lambda, base, Path{{base.x, y1}, {x1, y1}}, step);
    return (a.F - b.F).norm() / a.F.norm();
}

}  // namespace asph
