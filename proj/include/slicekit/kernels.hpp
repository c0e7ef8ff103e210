#pragma once

#include <array>
#include <utility>

#include "slicekit/algebra.hpp"
#include "slicekit/jets.hpp"

namespace slicekit {

// ============================================================================
// Cauchy and reproducing kernels
//
//   S^{-1}(s, x) = -(x^2 - 2 x Re[s] + |s|^2)^{-1} (x - conj(s))
//
//   A(tau, x) = (1/2pi^2) vec(x) conj(tau - x) vec(tau)
//               / (||vec x||^2 ||tau - x||^4 ||vec tau||^2)
//
//   B(tau, x) = (1/pi^2) (vec x / ||vec x||^2)
//               [ (tau + 3 conj(x) - 4 conj(tau)) / ||tau - x||^4
//                 + 4 conj(tau - x) ((x_0 - tau) vec(tau) - <vec tau, vec x>)
//                   / ||tau - x||^6 ]
//
//   C(x, tau) mirrors B with the conj(tau - x) factor and the vec(x) weight
//   multiplying from the right.
//
//   nu(x; n) = 2 n_0 + 2 (vec x / ||vec x||^2) sum_k x_k n_k
//
// S^{-1} is singular exactly on the sphere [s]; A, B, C need vec parts and
// tau - x nonzero.
// ============================================================================

// Clifford paravector Cauchy kernel; same-slice pairs reduce to (s - x)^{-1}.
Multivector cauchy_kernel_S(const Paravector& s, const Paravector& x);
Quaternion cauchy_kernel_S(const Quaternion& s, const Quaternion& x);

Quaternion kernel_A(const Quaternion& tau, const Quaternion& x);
Quaternion kernel_B(const Quaternion& tau, const Quaternion& x);
Quaternion kernel_C(const Quaternion& x, const Quaternion& tau);

// Density of the boundary 3-form against scalar surface measure, with the
// k-th coordinate form identified with n_k dS for a unit normal n.
Quaternion nu_weight(const Quaternion& x, const std::array<double, 4>& normal);

// (|| G_x[S^{-1}(s, .)](x) ||, || G_{r,s}[S^{-1}(., x)](s) ||) via FD jets.
// Both slots are reported; each vanishes as the step shrinks.
std::pair<double, double> kernel_membership_residual(const Paravector& s, const Paravector& x,
                                                     FDConfig fd = {});

} // namespace slicekit
