#pragma once

#include <limits>

#include "asph/numerics.hpp"

namespace asph {

enum class LatticeKind {
    Rectangular,    // e1 > e2 > e3
    Trigonometric,  // e2 == e3, imaginary period infinite
    Hyperbolic,     // e1 == e2, real period infinite
};

/// Weierstrass data for a real rectangular (or degenerate) lattice.
struct EllipticContext {
    double g2 = 0.0;
    double g3 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double omega1 = 0.0;     ///< real half-period, +inf for Hyperbolic
    double omega3_im = 0.0;  ///< imaginary half-period omega3 = i * omega3_im, +inf for Trigonometric
    double k2 = 0.0;
    bool degenerate = false;  ///< e2 == e3
    LatticeKind kind = LatticeKind::Rectangular;
    double eta1 = 0.0;  ///< zeta(omega1)
    cplx eta3{};        ///< zeta(omega3)
    double nome = 0.0;
    double pole_guard = 0.0;

    cplx omega3() const { return {0.0, omega3_im}; }
};

EllipticContext make_context(double g2, double g3, double root_tol = 1e-12);

struct WpValues {
    cplx wp;
    cplx wp_prime;
    cplx zeta;
    cplx sigma;
};

/// P, P', zeta and sigma at z; P and P' through Jacobi sn, zeta and sigma through theta series.
WpValues wp_eval(const EllipticContext& ctx, cplx z);

cplx wp(const EllipticContext& ctx, cplx z);
cplx wp_prime(const EllipticContext& ctx, cplx z);
cplx zeta(const EllipticContext& ctx, cplx z);
/// Logarithm of sigma (imaginary part defined modulo 2 pi).
cplx log_sigma(const EllipticContext& ctx, cplx z);

/// P computed as -zeta' from the theta series (or the closed degenerate forms).
cplx wp_theta(const EllipticContext& ctx, cplx z);

/// a with P(a) = w and sign(P'(a)) = sign_wp_prime, reduced to Re a in (-omega1, omega1], Im a in [0, omega3].
/// Real for w >= e1; on the line Im a = omega3 for w in [e3, e2].
cplx wp_inverse(const EllipticContext& ctx, double w, int sign_wp_prime);
/// As wp_inverse with the known value of P'(a); resolves w within rounding of a lattice root
/// through P'^2 = 4 (w - e1)(w - e2)(w - e3).
cplx wp_inverse_slope(const EllipticContext& ctx, double w, double wp_prime);

struct SnCnDn {
    double sn;
    double cn;
    double dn;
};
struct CSnCnDn {
    cplx sn;
    cplx cn;
    cplx dn;
};

double jacobi_sn(double u, double k2);
SnCnDn jacobi_sncndn(double u, double k2);
CSnCnDn jacobi_sncndn(cplx u, double k2);

/// Complete elliptic integral K(m) with parameter m = k^2.
double elliptic_K(double m);

}  // namespace asph
