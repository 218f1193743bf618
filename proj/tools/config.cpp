#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace tool {

namespace {

double to_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot read " + what + " from '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw ConfigError("cannot read " + what + " from '" + text + "'");
    return v;
}

int env_threads() {
    const char* v = std::getenv("ASPH_THREADS");
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (!v || !*v) return hw;
    const double n = to_number(v, "ASPH_THREADS");
    if (n < 1 || n != std::floor(n)) throw ConfigError("ASPH_THREADS must be a positive integer");
    return static_cast<int>(n);
}

}  // namespace

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) throw ConfigError("grid must look like AxB, got '" + text + "'");
    const double a = to_number(text.substr(0, x), "grid width"), b = to_number(text.substr(x + 1), "grid height");
    if (a < 2 || b < 2 || a != std::floor(a) || b != std::floor(b) || a > 1e5 || b > 1e5)
        throw ConfigError("grid sides must be integers between 2 and 100000, got '" + text + "'");
    return {static_cast<int>(a), static_cast<int>(b)};
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto sep = text.find(':', 1);
    if (sep == std::string::npos) throw ConfigError("range must look like LO:HI, got '" + text + "'");
    const double lo = to_number(text.substr(0, sep), "range start"), hi = to_number(text.substr(sep + 1), "range end");
    if (!(lo < hi)) throw ConfigError("range start must be below its end in '" + text + "'");
    return {lo, hi};
}

void apply_family_spec(RunConfig& cfg, const std::string& spec) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("family entries must be key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        const double v = to_number(val, "family parameter " + key);
        if (key == "p") cfg.p = v;
        else if (key == "q") cfg.q = v;
        else if (key == "c") cfg.c = v;
        else if (key == "t") cfg.t = v;
        else if (key == "s") {
            cfg.s = static_cast<int>(v);
            cfg.s_given = true;
        }
        else throw ConfigError("unknown family parameter '" + key + "'");
    }
    cfg.surface = "family";
}

double RunConfig::resolved_q() const { return q ? *q : p / (p - 1.0); }

void RunConfig::validate() const {
    if (!(p >= 2.0) || !std::isfinite(p)) throw ConfigError("--p must be a finite number >= 2");
    if (q && std::abs(1.0 / p + 1.0 / *q - 1.0) > 1e-12) throw ConfigError("--q must satisfy 1/p + 1/q = 1");
    const double lim = 2.0 * (p + resolved_q());
    if (command != "match-modulus" && (!(c <= 0.0) || c < -lim * (1.0 + 1e-12)))
        throw ConfigError("--c must lie in [-2(p+q), 0] = [" + std::to_string(-lim) + ", 0]");
    if (s != 1 && s != -1) throw ConfigError("--s must be +1 or -1");
    if (t && !std::isfinite(*t)) throw ConfigError("--t must be finite");
    if (surface == "family" && s_given && t && std::cos(3.0 * *t) != 0.0 && s != (std::cos(3.0 * *t) > 0.0 ? -1 : 1))
        throw ConfigError("--s contradicts --t: the family uses s = -sign(cos 3t)");
    if (tol && !(*tol > 0.0)) throw ConfigError("--tol must be positive");
    if (cone && (*cone < 1 || *cone > 5)) throw ConfigError("--cone must be one of 1..5");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("--alpha must lie in (0, 1]");
    if (steps < 1) throw ConfigError("--steps must be positive");
    if (threads < 1) throw ConfigError("thread count must be positive");
    if (!format.empty() && format != "obj" && format != "csv" && format != "json")
        throw ConfigError("--format must be obj, csv or json");
    if (command == "mesh" && surface.empty() && !cone) throw ConfigError("mesh needs --surface, --family or --cone");
    if (command == "sweep" && !surface.empty() && surface != "case1-family" && surface != "family" &&
        surface != "coth-family")
        throw ConfigError("sweep runs over case1-family, family or coth-family");
}

std::optional<RunConfig> parse_args(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Explicit hyperbolic affine spheres: meshes, invariant checks, family sweeps"};
    app.set_config("--config", "", "key=value file mirroring the long flags; flags on the command line win");
    app.require_subcommand(1);
    app.fallthrough();

    std::string grid, xrange, yrange, family;
    double t = 0.0;
    app.add_option("--surface", cfg.surface,
                   "case1-raw, case1-iso, case1-family, general, family, c0, coth5, coth3, coth-family, ellipsoid, hildebrand");
    app.add_option("--cone", cfg.cone, "cone case 1..5 (mesh only)");
    app.add_option("--family", family, "shorthand p=..,c=..,t=.. selecting the family surface");
    app.add_option("--p", cfg.p, "exponent p >= 2");
    app.add_option("--q", cfg.q, "conjugate exponent (defaults to p/(p-1))");
    app.add_option("--c", cfg.c, "parameter c in [-2(p+q), 0]");
    auto* s_opt = app.add_option("--s", cfg.s, "branch sign +1 or -1");
    auto* t_opt = app.add_option("--t", t, "family angle t");
    app.add_option("--alpha", cfg.alpha, "case-4 cone opening in (0, 1]");
    app.add_option("--grid", grid, "resolution AxB");
    app.add_option("--xrange", xrange, "chart range LO:HI in the first coordinate");
    app.add_option("--yrange", yrange, "chart range LO:HI in the second coordinate");
    app.add_option("--out", cfg.out, "output file (stdout when omitted)");
    app.add_option("--format", cfg.format, "obj, csv or json");
    app.add_option("--tol", cfg.tol, "tolerance override for the selected checks");
    app.add_option("--only", cfg.only, "check name or name:surface");
    app.add_option("--steps", cfg.steps, "number of t values in a sweep");
    app.add_option("--p1", cfg.p1, "source exponent for match-modulus");
    app.add_option("--c1", cfg.c1, "source parameter for match-modulus");

    app.add_subcommand("mesh", "write a triangle mesh of a surface or cone boundary");
    app.add_subcommand("verify", "run the numerical checks and write a report");
    app.add_subcommand("sweep", "tabulate family invariants against t");
    app.add_subcommand("match-modulus", "solve k^2(p, c) = k^2(p1, c1) for c");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return std::nullopt;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (t_opt->count() > 0) cfg.t = t;
    cfg.s_given = s_opt->count() > 0;
    if (!family.empty()) apply_family_spec(cfg, family);
    if (!grid.empty()) std::tie(cfg.nx, cfg.ny) = parse_grid(grid);
    if (!xrange.empty()) cfg.xrange = parse_range(xrange);
    if (!yrange.empty()) cfg.yrange = parse_range(yrange);
    cfg.threads = env_threads();
    cfg.validate();
    return cfg;
}

}  // namespace tool
