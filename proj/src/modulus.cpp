#include <cmath>
#include <string>

#include "asph/families.hpp"

namespace asph {

double modulus_k2(double p, double c) { return shorthand_coeffs(p, -std::abs(c)).ctx.k2; }

ModulusMatch modulus_match(double p1, double c1, double p) {
    validate_p(p1);
    validate_p(p);
    const double q = conjugate_exponent(p);
    const double q1 = conjugate_exponent(p1);
    if (std::abs(c1) > 2.0 * (p1 + q1) * (1.0 + 1e-12))
        throw Error(ErrorKind::DomainViolation, "|c1| must not exceed 2(p1+q1)");
    const double target = modulus_k2(p1, c1);
    const double top = 2.0 * (p + q);
    auto f = [&](double u) { return modulus_k2(p, u) - target; };
    const double f0 = f(0.0), f1 = f(top);
    ModulusMatch out;
    double u = 0.0;
    if (f0 == 0.0) {
        u = 0.0;
    } else if (f1 == 0.0) {
        u = top;
    } else {
        if (f0 * f1 > 0.0)
            throw Error(ErrorKind::NoBracket, "target k^2 = " + std::to_string(target) + " is outside [" +
                                                  std::to_string(f0 + target) + ", " + std::to_string(f1 + target) +
                                                  "] for p = " + std::to_string(p));
        u = find_root_bracketed(f, 0.0, top, 1e-15);
    }
    out.c = c1 > 0.0 ? u : -u;
    out.k2 = modulus_k2(p, u);
    out.k2_defect = std::abs(out.k2 - target);
    return out;
}

}  // namespace asph
