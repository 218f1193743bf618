#pragma once

#include <array>
#include <string>
#include <vector>

#include "asph/blaschke.hpp"
#include "asph/elliptic.hpp"

namespace asph {

struct Rect {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    Grid grid(int nx, int ny) const { return Grid{x0, x1, y0, y1, nx, ny}; }
};

/// A closed-form immersion with analytic jets on its chart.
struct Surface {
    std::string name;
    JetSampler jet;
    Rect domain;
    Vec3 point(double x, double y) const { return jet(x, y).r; }
};

double conjugate_exponent(double p);
void validate_p(double p);

// ---- case 1: homogenized epigraph of the exponential ----

Jet2 case1_raw(double x, double y);
std::pair<double, double> case1_iso_map(double x, double y);
std::pair<double, double> case1_iso_unmap(double u, double v);
Jet2 case1_isothermal(double u, double v);
Surface case1_isothermal_surface();
/// e^psi = (3 csch^2(sqrt3 u) + 2) / 2.
double case1_conformal(double u);
/// Base point (ln(1 + sqrt2) / sqrt3, 0) of the gauge condition.
double case1_base_u();

struct Theorem31Gauge {
    Mat3 A;
    Mat3 D;
    Mat3 B;
};
/// A, D(t) and B(t) = D^{-1} (w, w_x, w_y)|base; throws SingularGauge when det(D B) vanishes.
Theorem31Gauge theorem31_gauge(double t);
/// The raw coth/exp three-vector w(x, y, t) with jets.
Jet2 theorem31_w(double x, double y, double t);
Surface case1_family(double t);

// ---- Weierstrass surfaces, -2(p+q) <= c <= 0 ----

struct CoefficientSet {
    double p = 0.0, q = 0.0, c = 0.0;
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
    double g2 = 0.0, g3 = 0.0;
    EllipticContext ctx;
    std::array<cplx, 3> a{};          ///< P(a_i) = (b1 - {p, q, -1}_i) / 4 with P'(a_i) < 0
    std::array<bool, 3> a_valid{};    ///< false when a root sits at an infinite half-period
    std::array<double, 4> poly{};     ///< xi^3 + 3 b1 xi^2 + 3 b2 xi + b3, highest first
    double metric_shift = 0.0;        ///< (2(p+q-1) - 3 b1) / 12
};

CoefficientSet shorthand_coeffs(double p, double q, double c);
inline CoefficientSet shorthand_coeffs(double p, double c) { return shorthand_coeffs(p, conjugate_exponent(p), c); }

/// Closed-form e^psi = (P(xi2 + omega1) + shift) / 2.
double weierstrass_conformal(const CoefficientSet& cs, double xi2);
/// U = s c sqrt(p-1) / (32p) - i (p-2)(2p-1)(p+1) / (2 (12(p-1))^(3/2)).
cplx weierstrass_U(double p, double c, int s);
double weierstrass_U_modulus(double p, double c);

/// sigma-quotient surface with per-component factors k_i, shifts m_i and y3-rates f_i.
class WeierstrassSurface {
public:
    WeierstrassSurface(CoefficientSet cs, std::array<cplx, 3> m, std::array<double, 3> k, std::array<double, 3> f,
                       double scale = 1.0);
    Jet2 jet(double xi2, double y3) const;
    CVec3 complex_point(double xi2, double y3) const;
    const CoefficientSet& coeffs() const { return cs_; }
    const std::array<cplx, 3>& shifts() const { return m_; }
    double scale() const { return scale_; }
    Surface surface(std::string name) const;

private:
    CoefficientSet cs_;
    std::array<cplx, 3> m_;
    std::array<double, 3> k_;
    std::array<double, 3> f_;
    std::array<cplx, 3> const_log_{};
    std::array<cplx, 3> zeta_m_{};
    double scale_;
};

/// Default chart for the sigma-quotient surfaces: xi2 in (-omega1, 0) shrunk by 5%, y3 in [-2, 2].
Rect weierstrass_default_domain(const CoefficientSet& cs);

WeierstrassSurface general_surface(double p, double c, int s);
/// The un-simplified square-root form (before the diagonal gauge), evaluated directly.
CVec3 general_surface_unsimplified(const CoefficientSet& cs, int s, double xi2, double y3);

struct FamilyMember {
    std::array<double, 3> f_display{};  ///< f_1, f_2, f_3 as displayed
    std::array<double, 3> f_component{};
    std::array<cplx, 3> m{};
    double kappa = 1.0;
    int s = 1;
};

/// Displayed f_i(t); they are the roots of f^3 - 3 C f + 2 |U| sin 3t.
std::array<double, 3> family_f(double p, double c, double t);
FamilyMember family_member(double p, double c, double t);
WeierstrassSurface family_surface(double p, double c, double t);
/// Base angle arg(U)/3 of the s-surface.
double family_base_angle(double p, double c, int s);

Jet2 c_zero_jet(const CoefficientSet& cs, int t_sign, double xi2, double y3);
Surface c_zero_surface(double p, int t_sign);
/// Largest relative gap between the base-angle family member at small c and the gauged c = 0 surface, on an n-by-n grid.
double c_zero_limit_defect(double p, double c, int s, int n = 8);

// ---- c = -2(p+q): coth closed forms ----

Surface coth_case5(double p);
Surface coth_case3(double p);
/// Theorem-3.3 family display times the scale that pins H = -1.
Surface coth_family(double p, double t);
/// The display without the scale.
Jet2 coth_family_raw(double p, double t, double xi2, double y3);
double coth_family_scale(double p, double t);
double coth_conformal(double p, double xi2);
cplx coth_case5_U(double p);
cplx coth_case3_U(double p);
double coth_U_modulus(double p);

Mat3 matrix_E(double p);
/// max |A (DB)^{-1} E r_33(x/K, y/K) - r_31(x, y)| over the grid.
double equivalence_theorem33_to_31(double p, double t, const Grid& grid);

// ---- the original ODE chart ----

struct HildebrandBranch {
    double p = 0.0, q = 0.0, c = 0.0;
    int s = 1;
    double xi_lo = 0.0;  ///< largest root of c^2/(4(p+q)) + P
    double xi_hi = 0.0;  ///< +inf
    bool closed_form = false;
    double anchor = 0.0;        ///< reference abscissa of the regular part R of log|t| (s = -1, c < 0)
    double anchor_value = 0.0;  ///< R(anchor)

    double e_varpi(double xi) const;
    double dvarpi(double xi) const;
    double dtau(double xi) const;
    /// log|t|.
    double tau(double xi) const;
    /// Signed cone coordinate; the s = -1 branch crosses zero at xi = 1 when c < 0.
    double t(double xi) const;
    /// Limit of t as xi grows: 1 for s = +1, -alpha for s = -1.
    double t_end() const;
    double e_phi(double xi) const;
    Vec3 point(double xi, double mu) const;
    double ode_residual(double xi) const;
};

HildebrandBranch hildebrand_original(double p, double c, int s);
/// Closed-form t(xi) for c = -2(p+q), s = +1.
double theorem33_t(double p, double xi);
/// d log t / d xi of the closed form.
double theorem33_dlogt(double p, double xi);

// ---- modulus matching ----

double modulus_k2(double p, double c);

struct ModulusMatch {
    double c = 0.0;           ///< in the caller's sign convention (sign of c1)
    double k2 = 0.0;
    double k2_defect = 0.0;
};

ModulusMatch modulus_match(double p1, double c1, double p);

}  // namespace asph
