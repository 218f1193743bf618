#include "asph/cones.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asph {

namespace {

// (x1, x2, x3) <- (r1, r3, r2) with optional sign flips and a scale on the middle coordinate.
Mat3 swap_frame(double s1, double s2, double s3) {
    Mat3 T = Mat3::Zero();
    T(0, 0) = s1;
    T(1, 2) = s2;
    T(2, 1) = s3;
    return T;
}

// Frame for rho in (lo, hi) given positive first and third coordinates.
ConeFrame frame_from_bounds(double p, double lo, double hi, double s1, double s3) {
    ConeFrame f;
    const bool flip = std::abs(lo) > std::abs(hi);
    const double top = flip ? -lo : hi, bottom = flip ? -hi : lo;
    if (!(top > 0.0)) throw Error(ErrorKind::DomainViolation, "surface does not lie in a semi-homogeneous cone frame");
    const double alpha = -bottom / top;
    if (std::abs(alpha) <= 1e-12) {
        f.spec = ConeSpec::make(5, p);
    } else if (alpha > 0.0 && alpha <= 1.0 + 1e-12) {
        f.spec = ConeSpec::make(4, p, std::min(alpha, 1.0));
    } else {
        throw Error(ErrorKind::DomainViolation, "cone bounds do not match a catalogue case");
    }
    f.T = swap_frame(s1, (flip ? -1.0 : 1.0) / top, s3);
    return f;
}

Mat3 jet_matrix(const Jet2& j) {
    Mat3 M;
    M << j.r, j.r_x, j.r_y;
    return M;
}

ConeFrame coth_frame_for(double p, int s) { return s > 0 ? coth_case5_frame(p) : coth_case3_frame(p); }

// Pulls a coth frame back along the affine map that carries the coth surface onto the given one.
ConeFrame hyperbolic_frame(const WeierstrassSurface& surface) {
    const double p = surface.coeffs().p;
    const Mat3 M = jet_matrix(surface.jet(-1.0, 0.0));
    for (int s : {1, -1}) {
        const Surface ref = s > 0 ? coth_case5(p) : coth_case3(p);
        const Mat3 A = M * jet_matrix(ref.jet(-1.0, 0.0)).inverse();
        bool same = true;
        for (auto [x, y] : {std::pair{-0.4, 0.7}, std::pair{-2.5, -1.3}, std::pair{-1.7, 2.0}}) {
            const Vec3 a = surface.jet(x, y).r, b = A * ref.point(x, y);
            if ((a - b).norm() > 1e-8 * (1.0 + a.norm())) same = false;
        }
        if (!same) continue;
        ConeFrame f = coth_frame_for(p, s);
        f.T = f.T * A.inverse();
        return f;
    }
    throw Error(ErrorKind::InvalidArgument, "no closed-form cone frame for this member at c = -2(p+q)");
}

}  // namespace

ConeSpec ConeSpec::make(int case_id, double p, double alpha, double beta) {
    ConeSpec s;
    s.case_id = case_id;
    s.p = p;
    s.q = conjugate_exponent(p);
    s.alpha = alpha;
    s.beta = beta;
    s.validate();
    return s;
}

void ConeSpec::validate() const {
    if (case_id < 1 || case_id > 5) throw Error(ErrorKind::InvalidArgument, "cone case must be 1..5");
    if (case_id >= 3) {
        validate_p(p);
        if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "1/p + 1/q must equal 1");
    }
    if (case_id == 4 && !(alpha > 0.0 && alpha <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "case 4 needs alpha in (0, 1]");
}

ConeMembership cone_contains(const ConeSpec& spec, const Vec3& x, double tol) {
    const double n = x.norm();
    ConeMembership out;
    if (!(n > 0.0)) {
        out.region = ConeRegion::Boundary;
        return out;
    }
    const Vec3 u = x / n;
    double slack = 0.0;
    switch (spec.case_id) {
        case 1:
            slack = u[2] > 0.0 ? std::min(u[2], u[1] - u[2] * std::exp(u[0] / u[2])) : std::min({u[2], u[1], -u[0]});
            break;
        case 2:
            slack = u.minCoeff();
            break;
        default: {
            const double G = std::pow(std::max(u[0], 0.0), 1.0 / spec.p) * std::pow(std::max(u[2], 0.0), 1.0 / spec.q);
            slack = std::min({u[0], u[2], G - u[1]});
            if (spec.case_id == 4) slack = std::min(slack, u[1] + spec.alpha * G);
            if (spec.case_id == 5) slack = std::min(slack, u[1]);
            break;
        }
    }
    out.distance = slack;
    out.region = slack > tol ? ConeRegion::Inside : (slack >= -tol ? ConeRegion::Boundary : ConeRegion::Outside);
    return out;
}

std::vector<std::array<int, 3>> grid_faces(int nx, int ny) {
    std::vector<std::array<int, 3>> faces;
    if (nx < 2 || ny < 2) return faces;
    faces.reserve(static_cast<std::size_t>(2 * (nx - 1) * (ny - 1)));
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            const int a = j * nx + i, b = a + 1, c = a + nx, d = c + 1;
            faces.push_back({a, b, d});
            faces.push_back({a, d, c});
        }
    return faces;
}

Mesh cone_mesh(const ConeSpec& spec, int resolution) {
    spec.validate();
    if (resolution < 2) throw Error(ErrorKind::InvalidArgument, "mesh resolution must be at least 2");
    Mesh mesh;
    const int n = resolution;
    auto add_sheet = [&](auto&& vertex) {
        const int base = static_cast<int>(mesh.vertices.size());
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) mesh.vertices.push_back(vertex(double(i) / (n - 1), double(j) / (n - 1)));
        for (auto f : grid_faces(n, n)) mesh.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
    };
    auto G = [&](double a, double b) { return std::pow(a, 1.0 / spec.p) * std::pow(b, 1.0 / spec.q); };
    switch (spec.case_id) {
        case 1:
            add_sheet([](double a, double b) {
                const double s = -3.0 + 4.0 * a;
                return Vec3(b * s, b * std::exp(s), b);
            });
            add_sheet([](double a, double b) { return Vec3(-a, b, 0.0); });
            break;
        case 2:
            add_sheet([](double a, double b) { return Vec3(0.0, a, b); });
            add_sheet([](double a, double b) { return Vec3(a, 0.0, b); });
            add_sheet([](double a, double b) { return Vec3(a, b, 0.0); });
            break;
        case 3:
            add_sheet([&](double a, double b) { return Vec3(a, G(a, b), b); });
            add_sheet([](double a, double b) { return Vec3(0.0, -a, b); });
            add_sheet([](double a, double b) { return Vec3(a, -b, 0.0); });
            break;
        case 4:
            add_sheet([&](double a, double b) { return Vec3(a, G(a, b), b); });
            add_sheet([&](double a, double b) { return Vec3(a, -spec.alpha * G(a, b), b); });
            break;
        case 5:
            add_sheet([&](double a, double b) { return Vec3(a, G(a, b), b); });
            add_sheet([](double a, double b) { return Vec3(a, 0.0, b); });
            break;
    }
    return mesh;
}

ConeFrame case1_raw_frame() { return {ConeSpec::make(1), Mat3::Identity()}; }

ConeFrame case1_isothermal_frame() { return {ConeSpec::make(1), -std::sqrt(3.0) * Mat3::Identity()}; }

ConeFrame weierstrass_frame(const WeierstrassSurface& surface) {
    const CoefficientSet& cs = surface.coeffs();
    const EllipticContext& ctx = cs.ctx;
    if (ctx.kind == LatticeKind::Hyperbolic) return hyperbolic_frame(surface);
    const Vec3 mid = surface.jet(0.0, 0.0).r;
    const double s1 = mid[0] < 0.0 ? -1.0 : 1.0, s3 = mid[1] < 0.0 ? -1.0 : 1.0;
    const double w1 = ctx.omega1;
    // Residues of each component at the chart edges w -> 0 and w -> 2 omega1; rho is y-independent there.
    std::array<double, 3> lo{}, hi{};
    for (int i = 0; i < 3; ++i) {
        const cplx m = surface.shifts()[i];
        const cplx zm = zeta(ctx, m);
        const cplx common = log_sigma(ctx, w1) - log_sigma(ctx, w1 - m);
        lo[i] = std::exp(log_sigma(ctx, -m) + common - zm * w1).real();
        hi[i] = std::exp(log_sigma(ctx, 2.0 * w1 - m) + common + zm * w1 - 2.0 * ctx.eta1 * w1).real();
    }
    const std::array<double, 3> k{1.0 / (3.0 * cs.p), 1.0 / (3.0 * cs.p), std::sqrt(3.0) * (cs.p - 1.0) * cs.c / 2.0};
    auto rho = [&](const std::array<double, 3>& v) {
        return k[2] * v[2] / (std::pow(std::abs(k[0] * v[0]), 1.0 / cs.p) * std::pow(std::abs(k[1] * v[1]), 1.0 / cs.q));
    };
    const double r_lo = rho(lo), r_hi = rho(hi);
    return frame_from_bounds(cs.p, std::min(r_lo, r_hi), std::max(r_lo, r_hi), s1, s3);
}

ConeFrame c_zero_frame(double p) {
    ConeFrame f;
    f.spec = ConeSpec::make(4, p, 1.0);
    const double q = conjugate_exponent(p);
    const double k1 = 2.0 / (3.0 * p * std::sqrt(p + 1.0)), k2 = 2.0 / (3.0 * std::sqrt(p * (2.0 * p - 1.0)));
    const double k3 = 2.0 * std::sqrt(3.0 * p * (p - 1.0) * (p + 1.0) * (2.0 * p - 1.0));
    // Near the pole every square-root factor behaves like 1/|w|.
    const double hi = k3 / (std::pow(k1, 1.0 / p) * std::pow(k2, 1.0 / q));
    f.T = swap_frame(1.0, 1.0 / hi, 1.0);
    return f;
}

ConeFrame coth_case5_frame(double p) {
    ConeFrame f;
    f.spec = ConeSpec::make(5, p);
    f.T = swap_frame(-1.0, p / std::sqrt(p - 1.0), -1.0);
    return f;
}

ConeFrame coth_case3_frame(double p) {
    ConeFrame f;
    f.spec = ConeSpec::make(3, p);
    f.T = swap_frame(-1.0, p / std::sqrt(p - 1.0), -1.0);
    return f;
}

ConeFrame hildebrand_frame(const HildebrandBranch& b) {
    const bool extreme = std::abs(b.c + 2.0 * (b.p + b.q)) <= 1e-12 * (b.p + b.q);
    if (extreme) {
        ConeFrame f;
        f.spec = ConeSpec::make(b.s > 0 ? 5 : 3, b.p);
        f.T = swap_frame(1.0, b.s > 0 ? 1.0 : -1.0, 1.0);
        return f;
    }
    HildebrandBranch lower = b;
    if (b.s > 0) lower = hildebrand_original(b.p, b.c, -1);
    return frame_from_bounds(b.p, lower.t_end(), 1.0, 1.0, 1.0);
}

}  // namespace asph
