#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace asph {

/// One named numerical check. A lower-bound check passes when the residual exceeds the tolerance.
struct CheckDef {
    std::string name;
    std::string surface;
    int criterion = 0;
    double tol = 0.0;
    bool lower_bound = false;
    std::function<double()> run;

    std::string id() const { return name + ":" + surface; }
};

struct CheckRecord {
    std::string name;  ///< "<check>:<surface>"
    int criterion = 0;
    double residual = 0.0;
    double tol = 0.0;
    bool lower_bound = false;
    bool pass = false;
    double seconds = 0.0;
    std::string error;  ///< set when the check threw
};

/// Every check in a fixed order; ids are unique.
const std::vector<CheckDef>& check_registry();

struct CheckFilter {
    std::string only;     ///< matches the check name or the full id; empty selects all
    std::string surface;  ///< matches the surface tag; empty selects all
    std::optional<double> tol;
};

bool matches(const CheckDef& def, const CheckFilter& filter);
CheckRecord run_check(const CheckDef& def, std::optional<double> tol = std::nullopt);
/// Runs the selected checks on up to `threads` workers; records keep registry order.
std::vector<CheckRecord> run_checks(const CheckFilter& filter, int threads = 1);

/// The equiaffine ellipsoid patch diag(1, 2, 1/2) (sech x cos y, sech x sin y, tanh x) with analytic jets.
struct Jet2;
Jet2 ellipsoid_jet(double x, double y);

}  // namespace asph
