#pragma once

#include <array>
#include <functional>
#include <vector>

#include "slicekit/algebra.hpp"

namespace slicekit {

// ============================================================================
// Power series
//
// f(x) = sum x^m a_m (left) or sum a_m x^m (right).  Evaluation is exact
// polynomial arithmetic; partial derivatives use
//    d(x^m)/dx_k = sum_{i+j=m-1} x^i e_k x^j,   e_0 := 1,
// which is exact as well.
// ============================================================================

enum class Side { left, right };

struct QPowerSeries {
    std::vector<Quaternion> coeffs;
    Side side = Side::left;

    Quaternion eval(const Quaternion& x) const;
    Quaternion partial(int k, const Quaternion& x) const; // k = 0..3
};

struct MPowerSeries {
    int n = 3;
    std::vector<Multivector> coeffs;
    Side side = Side::left;

    Multivector eval(const Paravector& x) const;
    Multivector partial(int k, const Paravector& x) const; // k = 0..n
};

// ============================================================================
// Representation formula
//
// 1/2 (1 - I_x J) f(u + J v) + 1/2 (1 + I_x J) f(u - J v), where x = u + I_x v.
// ============================================================================

Quaternion representation_eval(const std::function<Quaternion(const Quaternion&)>& f,
                               const Quaternion& x, const std::array<double, 3>& J);

Multivector representation_eval(const std::function<Multivector(const Paravector&)>& f,
                                const Paravector& x, const std::vector<double>& J);

// ============================================================================
// Splitting
//
// For a unit 1-vector I_1 = I and a completion I_2..I_n with
// I_r I_s + I_s I_r = -2 delta_rs, every value m in R_{0,n} decomposes as
//   m = sum_{A subset of {2..n}} (alpha_A + I beta_A) I_A ,
// and for f slice regular the complex components F_A = alpha_A + i beta_A are
// holomorphic on the slice.  A is kept as a bitmask over completion slots.
// ============================================================================

struct SplittingFrame {
    int n = 0;
    std::vector<double> axis;                        // I_1
    std::vector<std::vector<double>> completion;     // I_2..I_n
    std::vector<Multivector> blade;                  // I_A, indexed by A bitmask
    std::vector<Multivector> blade_i;                // I_1 * I_A
};

// Checks the anticommutation relations of (I, completion) to 1e-12.
SplittingFrame make_splitting_frame(const std::vector<double>& axis,
                                    const std::vector<std::vector<double>>& completion);

// Orthonormal completion of a unit axis, via Gram-Schmidt over the standard
// basis.
std::vector<std::vector<double>> complete_axis(const std::vector<double>& axis);

struct Complex2 {
    double re = 0.0, im = 0.0;
};

// Components F_A(value) for all 2^{n-1} subsets, in A-bitmask order.
std::vector<Complex2> splitting_components(const SplittingFrame& frame, const Multivector& value);

// sum (re_A + I im_A) I_A.
Multivector splitting_reassemble(const SplittingFrame& frame, const std::vector<Complex2>& comps);

// ============================================================================
// Cauchy-Riemann residual
//
// max(|d alpha/du - d beta/dv|, |d alpha/dv + d beta/du|) by central
// differences with step h; | | is the value norm.
// ============================================================================

double cr_residual(const std::function<double(double, double)>& alpha,
                   const std::function<double(double, double)>& beta,
                   double u, double v, double h);

double cr_residual(const std::function<Quaternion(double, double)>& alpha,
                   const std::function<Quaternion(double, double)>& beta,
                   double u, double v, double h);

// ============================================================================
// Intrinsic pair
//
// alpha(u,v) = 1/2 (f(u+Iv) + f(u-Iv)),  beta(u,v) = I/2 (f(u-Iv) - f(u+Iv))
// extracted on the canonical slice I = e1.  alpha is even and beta odd in v
// when f is a slice function.
// ============================================================================

struct IntrinsicPair {
    std::function<Quaternion(double, double)> alpha;
    std::function<Quaternion(double, double)> beta;
};

IntrinsicPair intrinsic_pair(std::function<Quaternion(const Quaternion&)> f);

// ============================================================================
// AxSymDomain
//
// Axially symmetric set described by its half-slice profile {(u, v >= 0)}
// plus a bounding box for samplers.
// ============================================================================

struct AxSymDomain {
    std::function<bool(double, double)> contains_uv;
    std::array<double, 2> u_range{0, 0};
    std::array<double, 2> v_range{0, 0};

    bool contains(const Paravector& x) const {
        const auto s = slice_decompose(x);
        return contains_uv(s.u, s.v);
    }
    bool contains(const Quaternion& q) const {
        const auto s = slice_decompose(q);
        return contains_uv(s.u, s.v);
    }
};

// Solid of revolution of the disc |(u,v) - (u0,v0)| < rho; with v0 = 0 this is
// the ball of radius rho around the real point u0.
AxSymDomain axsym_from_disc(double u0, double v0, double rho);

} // namespace slicekit
