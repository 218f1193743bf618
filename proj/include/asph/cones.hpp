#pragma once

#include <array>
#include <vector>

#include "asph/families.hpp"

namespace asph {

struct ConeSpec {
    int case_id = 2;
    double p = 2.0;
    double q = 2.0;
    double alpha = 1.0;
    double beta = 1.0;

    static ConeSpec make(int case_id, double p = 2.0, double alpha = 1.0, double beta = 1.0);
    void validate() const;
};

enum class ConeRegion { Inside, Boundary, Outside };

struct ConeMembership {
    ConeRegion region = ConeRegion::Outside;
    double distance = 0.0;  ///< smallest normalized slack; negative outside
};

/// Classifies x against the closed cone; |slack| <= tol counts as boundary.
ConeMembership cone_contains(const ConeSpec& spec, const Vec3& x, double tol = 1e-9);

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
};

/// Triangulated boundary of the cone truncated to the unit box, resolution vertices per side.
Mesh cone_mesh(const ConeSpec& spec, int resolution);

/// Triangles of a row-major nx-by-ny vertex grid.
std::vector<std::array<int, 3>> grid_faces(int nx, int ny);

/// A cone together with the linear map T sending surface points into it.
struct ConeFrame {
    ConeSpec spec;
    Mat3 T = Mat3::Identity();
    ConeMembership classify(const Vec3& r, double tol = 1e-9) const { return cone_contains(spec, T * r, tol); }
};

ConeFrame case1_raw_frame();
ConeFrame case1_isothermal_frame();
/// Frame of a sigma-quotient surface from the limits of x2 / (x1^(1/p) x3^(1/q)) at the two chart edges.
ConeFrame weierstrass_frame(const WeierstrassSurface& surface);
ConeFrame c_zero_frame(double p);
ConeFrame coth_case5_frame(double p);
ConeFrame coth_case3_frame(double p);
/// Frame for the original ODE chart: (r1, r3, r2) against the branch's cone.
ConeFrame hildebrand_frame(const HildebrandBranch& branch);

}  // namespace asph
