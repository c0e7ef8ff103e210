#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "slicekit/algebra.hpp"

namespace slicekit {

// ============================================================================
// Domains
//
// Open intervals and axis-aligned open boxes, with +-inf endpoints allowed.
// ============================================================================

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return lo < x && x < hi; }
};

struct Box {
    std::vector<Interval> sides;
    int dim() const { return static_cast<int>(sides.size()); }
    bool contains(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != dim()) return false;
        for (int i = 0; i < dim(); ++i)
            if (!sides[i].contains(x[i])) return false;
        return true;
    }
};

Box box_all(int n);                       // (-inf, inf)^n
Box box_uniform(int n, double lo, double hi);

// ============================================================================
// DiffeoMap
//
// a(x) = x0 + sum a_i(vec x) e_i: a bijection U -> V on the spatial part with
// x0 passed through, restricted to x0 in (s,t).  Partial-derivative closures
// are exact for the built-in families and finite-difference for custom maps.
// sampleU is a bounded sub-box of U on which the map is invertible; samplers
// and the verification suites draw from it.
// ============================================================================

struct DiffeoMap {
    std::string name;
    int n = 3;
    Interval interval;  // (s,t)
    Box domainU, codomainV, sampleU;
    std::function<std::vector<double>(const std::vector<double>&)> forward;
    std::function<std::vector<double>(const std::vector<double>&)> inverse;
    std::function<double(int, int, const std::vector<double>&)> inv_partial; // d(a^-1)_i/dy_j at y
    std::function<double(int, int, const std::vector<double>&)> fwd_partial; // d(a)_i/dx_j at x
};

// Built-in families.  All use (s,t) = (-inf, inf).
DiffeoMap diffeo_identity(int n);
DiffeoMap diffeo_affine(const std::vector<double>& r, const std::vector<double>& s); // r_j x_j + s_j
DiffeoMap diffeo_power(const std::vector<double>& alpha);                            // x_j^alpha_j
DiffeoMap diffeo_exp(int n);                                                         // e^{x_j}
DiffeoMap diffeo_sin(int n);                                                         // sin x_j
DiffeoMap diffeo_log(int n);                                                         // ln x_j
DiffeoMap diffeo_rotation(const Quaternion& c); // vec x -> c vec(x) conj(c), n = 3

// Custom map from forward/inverse closures; partial derivatives fall back to
// central differences with step 1e-5 * max(1, |coordinate|).
DiffeoMap make_custom_diffeo(std::string name, int n,
                             std::function<std::vector<double>(const std::vector<double>&)> forward,
                             std::function<std::vector<double>(const std::vector<double>&)> inverse,
                             Box domainU, Box codomainV, Box sampleU);

// ============================================================================
// Operations
// ============================================================================

// y = a(x): strict domain check (x0 in (s,t), vec x in U).
Paravector diffeo_apply(const DiffeoMap& a, const Paravector& x);
Quaternion diffeo_apply(const DiffeoMap& a, const Quaternion& x); // n = 3

// x = a^{-1}(y): strict codomain check.
Paravector diffeo_inverse_apply(const DiffeoMap& a, const Paravector& y);
Quaternion diffeo_inverse_apply(const DiffeoMap& a, const Quaternion& y); // n = 3

// u_i = sum_j a_j(vec x) * d(a^-1)_i/dy_j (a(vec x)).  Strict domain check;
// throws domain_error where the velocity is undefined (sin family at pi/2).
std::vector<double> material_velocity(const DiffeoMap& a, const Paravector& x);
std::vector<double> material_velocity(const DiffeoMap& a, const Quaternion& x); // n = 3

// M_a = |det(Jacobian of the full (n+1)-dimensional map)| = |det J_spatial|.
// Evaluates wherever the closures do (no domain check); a singular Jacobian
// raises singular_error.
double volume_factor(const DiffeoMap& a, const Paravector& x);
double volume_factor(const DiffeoMap& a, const Quaternion& x); // n = 3

// Spatial Jacobians as dense matrices.
std::vector<std::vector<double>> jac_forward(const DiffeoMap& a, const std::vector<double>& x);
std::vector<std::vector<double>> jac_inverse(const DiffeoMap& a, const std::vector<double>& y);

// Determinant by Gaussian elimination with partial pivoting (n <= 8).
double det_matrix(std::vector<std::vector<double>> m);

} // namespace slicekit
