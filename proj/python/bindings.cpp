#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asph/checks.hpp"
#include "asph/cones.hpp"
#include "asph/structure.hpp"

namespace py = pybind11;
using namespace asph;

namespace {

// Samples a surface on an nx-by-ny grid into an (ny, nx, 3) array.
py::array_t<double> sample(const Surface& s, const Rect& r, int nx, int ny) {
    const Grid g = r.grid(nx, ny);
    g.validate();
    py::array_t<double> out({ny, nx, 3});
    auto a = out.mutable_unchecked<3>();
    {
        py::gil_scoped_release release;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const Vec3 v = s.point(g.x(i), g.y(j));
                for (int k = 0; k < 3; ++k) a(j, i, k) = v[k];
            }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_asph, m) {
    m.doc() = "Explicit hyperbolic affine spheres with analytic jets";

    static py::exception<Error> error_type(m, "AsphError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error_type.ptr(), e.what());
        }
    });

    py::class_<Jet2>(m, "Jet2")
        .def_readonly("r", &Jet2::r)
        .def_readonly("r_x", &Jet2::r_x)
        .def_readonly("r_y", &Jet2::r_y)
        .def_readonly("r_xx", &Jet2::r_xx)
        .def_readonly("r_xy", &Jet2::r_xy)
        .def_readonly("r_yy", &Jet2::r_yy)
        .def_readonly("x", &Jet2::x)
        .def_readonly("y", &Jet2::y);

    py::class_<AffineSample>(m, "AffineSample")
        .def_readonly("L", &AffineSample::L)
        .def_readonly("M", &AffineSample::M)
        .def_readonly("N", &AffineSample::N)
        .def_readonly("conformal", &AffineSample::conformal)
        .def_readonly("xi", &AffineSample::xi)
        .def_readonly("U", &AffineSample::U)
        .def_readonly("H", &AffineSample::H)
        .def_readonly("isothermal_defect", &AffineSample::isothermal_defect);

    py::class_<Rect>(m, "Rect")
        .def_readonly("x0", &Rect::x0)
        .def_readonly("x1", &Rect::x1)
        .def_readonly("y0", &Rect::y0)
        .def_readonly("y1", &Rect::y1);

    py::class_<Surface>(m, "Surface")
        .def_readonly("name", &Surface::name)
        .def_readonly("domain", &Surface::domain)
        .def("jet", [](const Surface& s, double x, double y) { return s.jet(x, y); })
        .def("point", &Surface::point)
        .def("invariants", [](const Surface& s, double x, double y) { return invariants_isothermal(s.jet(x, y), 1e-6); })
        .def("sample", [](const Surface& s, int nx, int ny) { return sample(s, s.domain, nx, ny); }, py::arg("nx"),
             py::arg("ny"));

    py::class_<EllipticContext>(m, "EllipticContext")
        .def_readonly("g2", &EllipticContext::g2)
        .def_readonly("g3", &EllipticContext::g3)
        .def_readonly("e1", &EllipticContext::e1)
        .def_readonly("e2", &EllipticContext::e2)
        .def_readonly("e3", &EllipticContext::e3)
        .def_readonly("omega1", &EllipticContext::omega1)
        .def_readonly("k2", &EllipticContext::k2)
        .def_readonly("degenerate", &EllipticContext::degenerate);

    m.def("make_context", &make_context, py::arg("g2"), py::arg("g3"), py::arg("root_tol") = 1e-12);
    m.def("wp", &wp);
    m.def("wp_prime", &wp_prime);
    m.def("zeta", &zeta);
    m.def("jacobi_sn", &jacobi_sn);
    m.def("cubic_roots", [](double a3, double a2, double a1, double a0) {
        const CubicRoots r = cubic_roots(a3, a2, a1, a0);
        return std::vector<cplx>(r.roots.begin(), r.roots.end());
    });

    m.def("case1_isothermal", &case1_isothermal_surface);
    m.def("case1_family", &case1_family, py::arg("t"));
    m.def("general_surface", [](double p, double c, int s) {
        const WeierstrassSurface w = general_surface(p, c, s);
        return w.surface("general");
    }, py::arg("p"), py::arg("c"), py::arg("s") = 1);
    m.def("family_surface", [](double p, double c, double t) { return family_surface(p, c, t).surface("family"); },
          py::arg("p"), py::arg("c"), py::arg("t"));
    m.def("c_zero_surface", &c_zero_surface, py::arg("p"), py::arg("t_sign") = 1);
    m.def("coth_case5", &coth_case5, py::arg("p"));
    m.def("coth_case3", &coth_case3, py::arg("p"));
    m.def("family_base_angle", &family_base_angle);
    m.def("U_modulus", &weierstrass_U_modulus, py::arg("p"), py::arg("c"));

    m.def("modulus_match", [](double p1, double c1, double p) {
        const ModulusMatch r = modulus_match(p1, c1, p);
        return py::make_tuple(r.c, r.k2);
    }, py::arg("p1"), py::arg("c1"), py::arg("p"));

    m.def("cone_contains", [](int case_id, double p, double alpha, const Vec3& x) {
        const ConeMembership c = cone_contains(ConeSpec::make(case_id, p, alpha), x);
        return c.region == ConeRegion::Inside ? "inside" : c.region == ConeRegion::Boundary ? "boundary" : "outside";
    }, py::arg("case_id"), py::arg("p"), py::arg("alpha"), py::arg("x"));

    m.def("tzitzeica_residual_case1", [](double x0, double x1, int n) {
        return tzitzeica_residual(tzitzeica_case1(), Grid{x0, x1, -1.0, 1.0, n, 3});
    });

    m.def("run_checks", [](const std::string& only, int threads) {
        CheckFilter f;
        f.only = only;
        std::vector<CheckRecord> recs;
        {
            py::gil_scoped_release release;
            recs = run_checks(f, threads);
        }
        py::list out;
        for (const CheckRecord& r : recs) {
            py::dict d;
            d["name"] = r.name;
            d["criterion"] = r.criterion;
            d["residual"] = r.residual;
            d["tol"] = r.tol;
            d["pass"] = r.pass;
            d["error"] = r.error;
            out.append(d);
        }
        return out;
    }, py::arg("only") = "", py::arg("threads") = 1);
}
