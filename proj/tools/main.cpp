#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "asph/checks.hpp"
#include "asph/cones.hpp"
#include "asph/structure.hpp"
#include "config.hpp"
#include "json.hpp"

using namespace asph;
using tool::ConfigError;
using tool::RunConfig;

namespace {

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(cfg.out);
    const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw ConfigError("cannot open " + tmp.string() + " for writing");
        f << text;
        if (!f.flush()) throw ConfigError("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot move output into place at " + target.string() + ": " + ec.message());
    }
}

std::ostringstream number_stream() {
    std::ostringstream os;
    os << std::setprecision(17);
    return os;
}

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

// A sampler with optional jets; points-only surfaces leave `jet` empty.
struct Selected {
    std::string name;
    std::function<Vec3(double, double)> point;
    JetSampler jet;
    Rect domain;
};

Selected select_surface(const RunConfig& cfg) {
    const std::string& s = cfg.surface;
    const double p = cfg.p, c = cfg.c;
    const double t = cfg.t.value_or(0.3);
    auto from = [](Surface surf) {
        Selected out;
        out.name = surf.name;
        out.jet = surf.jet;
        out.point = [j = surf.jet](double x, double y) { return j(x, y).r; };
        out.domain = surf.domain;
        return out;
    };
    if (s == "case1-raw") return from(Surface{"case1-raw", case1_raw, Rect{0.3, 3.0, 0.3, 3.0}});
    if (s == "case1-iso") return from(case1_isothermal_surface());
    if (s == "case1-family") return from(case1_family(t));
    if (s == "general") return from(general_surface(p, c, cfg.s).surface("general"));
    if (s == "family") return from(family_surface(p, c, t).surface("family"));
    if (s == "c0") return from(c_zero_surface(p, cfg.s));
    if (s == "coth5") return from(coth_case5(p));
    if (s == "coth3") return from(coth_case3(p));
    if (s == "coth-family") return from(coth_family(p, t));
    if (s == "ellipsoid") return from(Surface{"ellipsoid", ellipsoid_jet, Rect{-1.0, 1.0, -1.0, 1.0}});
    if (s == "hildebrand") {
        const HildebrandBranch b = hildebrand_original(p, c, cfg.s);
        Selected out;
        out.name = "hildebrand";
        out.point = [b](double xi, double mu) { return b.point(xi, mu); };
        out.domain = Rect{b.xi_lo + 1e-3, b.xi_lo + 5.0, -1.0, 1.0};
        return out;
    }
    throw ConfigError("unknown --surface '" + s + "'");
}

Grid chart_grid(const RunConfig& cfg, const Rect& dom) {
    Grid g{dom.x0, dom.x1, dom.y0, dom.y1, cfg.nx, cfg.ny};
    if (cfg.xrange) std::tie(g.x0, g.x1) = *cfg.xrange;
    if (cfg.yrange) std::tie(g.y0, g.y1) = *cfg.yrange;
    return g;
}

template <class F>
void parallel_rows(int rows, int threads, F&& body) {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(rows));
    auto worker = [&] {
        for (int r = next++; r < rows; r = next++) {
            try {
                body(r);
            } catch (...) {
                errors[static_cast<std::size_t>(r)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < std::min(threads, rows); ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string write_mesh(const Mesh& mesh, const std::string& format, const std::vector<std::array<double, 2>>* chart,
                       const std::vector<std::array<double, 4>>* inv) {
    if (format == "json") {
        nlohmann::json j;
        j["vertices"] = nlohmann::json::array();
        for (const Vec3& v : mesh.vertices) j["vertices"].push_back({v[0], v[1], v[2]});
        j["faces"] = mesh.faces;
        return j.dump() + "\n";
    }
    std::ostringstream os = number_stream();
    if (format == "csv") {
        os << "index,u,v,x,y,z";
        if (inv) os << ",H,conformal,U_re,U_im";
        os << "\n";
        for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
            const Vec3& v = mesh.vertices[k];
            os << k << ',' << (chart ? (*chart)[k][0] : 0.0) << ',' << (chart ? (*chart)[k][1] : 0.0) << ',' << v[0]
               << ',' << v[1] << ',' << v[2];
            if (inv)
                for (double x : (*inv)[k]) os << ',' << x;
            os << "\n";
        }
        return os.str();
    }
    for (const Vec3& v : mesh.vertices) os << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << "\n";
    for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << "\n";
    return os.str();
}

int cmd_mesh(const RunConfig& cfg) {
    const std::string format = cfg.format.empty() ? "obj" : cfg.format;
    if (cfg.cone) {
        const ConeSpec spec = ConeSpec::make(*cfg.cone, cfg.p, cfg.alpha);
        emit(cfg, write_mesh(cone_mesh(spec, std::max(cfg.nx, 2)), format, nullptr, nullptr));
        return 0;
    }
    const Selected sel = select_surface(cfg);
    const Grid g = chart_grid(cfg, sel.domain);
    Mesh mesh;
    mesh.vertices.assign(g.size(), Vec3::Zero());
    std::vector<std::array<double, 2>> chart(g.size());
    std::vector<std::array<double, 4>> inv;
    const bool with_inv = format == "csv" && static_cast<bool>(sel.jet);
    if (with_inv) inv.assign(g.size(), {NAN, NAN, NAN, NAN});
    parallel_rows(g.ny, cfg.threads, [&](int j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
            const double x = g.x(i), y = g.y(j);
            chart[k] = {x, y};
            if (with_inv) {
                const Jet2 jet = sel.jet(x, y);
                mesh.vertices[k] = jet.r;
                try {
                    const AffineSample a = invariants_isothermal(jet, 1e-6);
                    inv[k] = {a.H, a.conformal, a.U.real(), a.U.imag()};
                } catch (const Error&) {
                }
            } else {
                mesh.vertices[k] = sel.point(x, y);
            }
        }
    });
    mesh.faces = grid_faces(g.nx, g.ny);
    emit(cfg, write_mesh(mesh, format, &chart, with_inv ? &inv : nullptr));
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    CheckFilter filter;
    filter.only = cfg.only;
    filter.surface = cfg.surface;
    filter.tol = cfg.tol;
    const auto records = run_checks(filter, cfg.threads);
    if (records.empty()) throw ConfigError("no check matches --only '" + cfg.only + "' and --surface '" + cfg.surface + "'");
    bool all = true;
    for (const auto& r : records) all = all && r.pass;
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (format == "csv") {
        std::ostringstream os = number_stream();
        os << "name,residual,tol,pass\n";
        for (const auto& r : records) os << r.name << ',' << r.residual << ',' << r.tol << ',' << (r.pass ? 1 : 0) << "\n";
        emit(cfg, os.str());
    } else if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : records) {
            nlohmann::json rec{{"name", r.name}, {"residual", num(r.residual)}, {"tol", r.tol}, {"pass", r.pass}};
            if (!r.error.empty()) rec["error"] = r.error;
            j.push_back(rec);
        }
        emit(cfg, j.dump(2) + "\n");
    } else {
        throw ConfigError("verify writes csv or json");
    }
    for (const auto& r : records)
        if (!r.pass)
            std::cerr << "FAIL " << r.name << " residual " << r.residual << " tol " << r.tol
                      << (r.error.empty() ? "" : " (" + r.error + ")") << "\n";
    return all ? 0 : 1;
}

struct SweepRow {
    double t = 0.0;
    double h_err = NAN, drift = NAN, arg_defect = NAN;
    bool guard = false;
    std::string note;
};

int cmd_sweep(const RunConfig& cfg) {
    const std::string which = cfg.surface.empty() ? "case1-family" : cfg.surface;
    std::vector<double> ts;
    if (cfg.t) {
        ts.push_back(*cfg.t);
    } else {
        for (int k = 0; k < cfg.steps; ++k) ts.push_back(2.0 * kPi / 3.0 * k / cfg.steps);
    }
    for (double t : ts)
        if (t < 0.0 || t >= 2.0 * kPi / 3.0) throw ConfigError("sweep angles must lie in [0, 2pi/3)");
    auto member = [&](double t) -> Surface {
        if (which == "case1-family") return case1_family(t);
        if (which == "family") return family_surface(cfg.p, cfg.c, t).surface("family");
        return coth_family(cfg.p, t);
    };
    Rect dom = which == "case1-family" ? Rect{0.3, 1.5, -1.0, 1.0} : member(ts.front()).domain;
    const Grid g = chart_grid(cfg, dom);
    const Grid probe{g.x0, g.x1, g.y0, g.y1, std::min(g.nx, 6), std::min(g.ny, 6)};

    std::vector<SweepRow> rows(ts.size());
    std::vector<std::vector<double>> conformal(ts.size());
    std::vector<double> offset(ts.size(), NAN);
    parallel_rows(static_cast<int>(ts.size()), cfg.threads, [&](int k) {
        SweepRow& row = rows[static_cast<std::size_t>(k)];
        row.t = ts[static_cast<std::size_t>(k)];
        try {
            const Surface s = member(row.t);
            row.h_err = 0.0;
            for (int j = 0; j < probe.ny; ++j)
                for (int i = 0; i < probe.nx; ++i) {
                    const AffineSample a = invariants_isothermal(s.jet(probe.x(i), probe.y(j)), 1e-6);
                    row.h_err = std::max(row.h_err, std::abs(a.H + 1.0));
                    conformal[static_cast<std::size_t>(k)].push_back(a.conformal);
                    if (i == 0 && j == 0) offset[static_cast<std::size_t>(k)] = std::remainder(std::arg(a.U) - 3.0 * row.t, 2.0 * kPi);
                }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BranchAmbiguity && e.kind() != ErrorKind::SingularGauge) throw;
            row.guard = true;
            row.note = e.what();
        }
    });
    std::size_t ref = 0;
    while (ref < rows.size() && rows[ref].guard) ++ref;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].guard || ref == rows.size()) continue;
        double drift = 0.0;
        for (std::size_t m = 0; m < conformal[k].size(); ++m)
            drift = std::max(drift, std::abs(conformal[k][m] - conformal[ref][m]) / conformal[ref][m]);
        rows[k].drift = drift;
        rows[k].arg_defect = std::abs(std::remainder(offset[k] - offset[ref], 2.0 * kPi));
    }
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
            j.push_back({{"t", r.t},
                         {"max_H_error", num(r.h_err)},
                         {"conformal_drift", num(r.drift)},
                         {"arg_U_defect", num(r.arg_defect)},
                         {"guard", r.guard}});
        emit(cfg, j.dump(2) + "\n");
    } else if (format == "csv") {
        std::ostringstream os = number_stream();
        os << "t,max_H_error,conformal_drift,arg_U_defect,guard\n";
        for (const auto& r : rows)
            os << r.t << ',' << r.h_err << ',' << r.drift << ',' << r.arg_defect << ',' << (r.guard ? 1 : 0) << "\n";
        emit(cfg, os.str());
    } else {
        throw ConfigError("sweep writes csv or json");
    }
    for (const auto& r : rows)
        if (r.guard) std::cerr << "guard band at t = " << r.t << ": " << r.note << "\n";
    return 0;
}

int cmd_match_modulus(const RunConfig& cfg) {
    const ModulusMatch m = modulus_match(cfg.p1, cfg.c1, cfg.p);
    std::ostringstream os = number_stream();
    if (cfg.format == "json") {
        os << nlohmann::json{{"c", m.c}, {"k2", m.k2}, {"k2_defect", m.k2_defect}}.dump(2) << "\n";
    } else {
        os << "c = " << m.c << "\n" << "k2 = " << m.k2 << "\n";
    }
    emit(cfg, os.str());
    return 0;
}

bool is_config_kind(ErrorKind k) {
    return k == ErrorKind::DomainViolation || k == ErrorKind::InvalidArgument || k == ErrorKind::BranchAmbiguity ||
           k == ErrorKind::SingularGauge;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const auto cfg = tool::parse_args(argc, argv);
        if (!cfg) return 0;
        if (cfg->command == "mesh") return cmd_mesh(*cfg);
        if (cfg->command == "verify") return cmd_verify(*cfg);
        if (cfg->command == "sweep") return cmd_sweep(*cfg);
        if (cfg->command == "match-modulus") return cmd_match_modulus(*cfg);
        throw ConfigError("unknown command");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_config_kind(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
