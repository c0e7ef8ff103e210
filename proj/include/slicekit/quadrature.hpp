#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "slicekit/algebra.hpp"
#include "slicekit/diffeo.hpp"

namespace slicekit {

// ============================================================================
// Contour, boundary-surface, and volume rules
//
// Surfaces are 3-spheres parametrized hypersphericly,
// omega(psi, theta, phi) = (cos psi, sin psi n(theta, phi)),
// dS = r^3 sin^2 psi sin theta, with tensor Gauss-Legendre nodes in all
// three angles.  Volume rules anchor at a chosen interior point and put
// Gauss-Legendre nodes on each ray up to the boundary; the rho^3 factor of
// the measure absorbs integrands as singular as ||y - anchor||^{-3}.
//
// Node evaluations are pure and summed in a fixed two-level chunk order, so
// the OpenMP path is bitwise equal to the serial:: reference.  The
// SLICEKIT_THREADS environment variable caps the worker count.
// ============================================================================

// Nodes and weights on (-1, 1) by Newton iteration on the recurrence.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

struct BallDomain {
    Quaternion center;
    double radius = 0.5;
};

// Validates radius > 0 and closure off the real axis:
// ||vec center|| - radius > 0.
BallDomain make_ball(const Quaternion& center, double radius);

struct ContourRule {
    std::vector<double> axis; // unit slice axis
    double u0 = 0, v0 = 0, radius = 1;
    int n = 256;
};

ContourRule make_contour(std::vector<double> axis, double u0, double v0, double radius,
                         int n = 256); // validates unit axis, radius > 0, n >= 8

// sum F(s_k) ds_I with ds_I = rho e^{I theta} d theta, trapezoidal in theta.
Multivector contour_integrate(const ContourRule& rule,
                              const std::function<Multivector(const Paravector&)>& integrand);

// sum L(s_k) ds_I R(s_k) for integrands sandwiching the measure.
Multivector contour_integrate_sandwich(const ContourRule& rule,
                                       const std::function<Multivector(const Paravector&)>& lhs,
                                       const std::function<Multivector(const Paravector&)>& rhs);

struct SurfaceNode {
    Quaternion pos;
    std::array<double, 4> normal; // outward unit
    double weight;                // scalar area element
};

struct SurfaceRule {
    int n_psi = 32, n_theta = 32, n_phi = 32;
    std::vector<SurfaceNode> nodes; // materialized table; empty = build from the domain
};

SurfaceRule make_surface_rule(const BallDomain& dom, int n_psi = 32, int n_theta = 32,
                              int n_phi = 32);

using SurfaceIntegrand = std::function<Quaternion(const Quaternion&, const std::array<double, 4>&)>;
using VolumeIntegrand = std::function<Quaternion(const Quaternion&)>;

Quaternion surface_integrate(const BallDomain& domain, const SurfaceRule& rule,
                             const SurfaceIntegrand& integrand);

struct VolumeRule {
    int n_radial = 24;
    int n_psi = 32, n_theta = 32, n_phi = 32;
};

// Hyperspherical rule centered at the anchor; anchor strictly inside.
Quaternion volume_integrate_singular(const BallDomain& dom, const Quaternion& anchor,
                                     const VolumeRule& rule, const VolumeIntegrand& integrand);

// Image surface a(boundary) with transformed positions, cofactor normals,
// and area scaling folded into the weights.  Needs a.n = 3.
SurfaceRule push_forward_surface(const DiffeoMap& a, const BallDomain& domain,
                                 const SurfaceRule& rule);

struct RefinementReport {
    std::vector<Quaternion> values; // one per level, counts doubling each time
    std::vector<double> deltas;     // successive differences
    bool converged = false;
};

RefinementReport volume_refinement_probe(const BallDomain& dom, const Quaternion& anchor,
                                         const VolumeRule& base, const VolumeIntegrand& integrand,
                                         int levels = 3);

// Serial reference implementations; bitwise equal to the parallel versions.
namespace serial {
Quaternion surface_integrate(const BallDomain& domain, const SurfaceRule& rule,
                             const SurfaceIntegrand& integrand);
Quaternion volume_integrate_singular(const BallDomain& dom, const Quaternion& anchor,
                                     const VolumeRule& rule, const VolumeIntegrand& integrand);
} // namespace serial

} // namespace slicekit
