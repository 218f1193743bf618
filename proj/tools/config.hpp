#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tool {

/// Raised for anything the user got wrong; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;

    std::string surface;
    std::optional<int> cone;
    double p = 3.0;
    std::optional<double> q;
    double c = -1.0;
    int s = 1;
    bool s_given = false;
    std::optional<double> t;
    double alpha = 1.0;

    int nx = 32, ny = 32;
    std::optional<std::pair<double, double>> xrange, yrange;

    std::string out;
    std::string format;
    std::optional<double> tol;
    std::string only;

    int steps = 12;
    double p1 = 3.0, c1 = 1.0;

    int threads = 1;

    double resolved_q() const;
    void validate() const;
};

/// Parses argv (plus an optional key=value config file named by --config) into a RunConfig.
/// Returns std::nullopt when help was printed.
std::optional<RunConfig> parse_args(int argc, char** argv);

std::pair<int, int> parse_grid(const std::string& text);
std::pair<double, double> parse_range(const std::string& text);
/// Applies "p=3,c=-1,t=0.3" to the family parameters.
void apply_family_spec(RunConfig& cfg, const std::string& spec);

}  // namespace tool
