#pragma once

#include <functional>

#include "slicekit/algebra.hpp"
#include "slicekit/diffeo.hpp"
#include "slicekit/jets.hpp"

namespace slicekit {

// ============================================================================
// Quaternionic Moebius transformations
//
//   T(x) = (a x + b)(c x + d)^{-1}
//
// Nondegeneracy: b - a c^{-1} d != 0 when c != 0, and a, d != 0 when c = 0.
// The covariance constraint class additionally needs a conj(c),
// (b - a c^{-1} d) conj(c) and d conj(b - a c^{-1} d) real with c != 0; it
// carries the factors
//
//   A_T = conj(c),   B_T(y) = |c| |b - a c^{-1} d| conj(c) (y - a c^{-1})^{-2}.
// ============================================================================

struct MoebiusMap {
    Quaternion a, b, c, d;
};

// Validates nondegeneracy.
MoebiusMap make_moebius(const Quaternion& a, const Quaternion& b, const Quaternion& c,
                        const Quaternion& d);

// The canonical covariance family: a, d, r real, b = a d + r, c = 1.  Every
// member satisfies the constraint class; r = b - a c^{-1} d.
MoebiusMap moebius_canonical(double a, double d, double r);

Quaternion moebius_apply(const MoebiusMap& T, const Quaternion& x); // pole -> singular_error

// dT/dx_k = a e_k P^{-1} - (a x + b) P^{-1} (c e_k) P^{-1},  P = c x + d.
Quaternion moebius_partial(const MoebiusMap& T, int k, const Quaternion& x);

// g o T with exact chain-rule partials.
QJet qjet_moebius_compose(const QJet& g, const MoebiusMap& T);

bool covariance_constraints_ok(const MoebiusMap& T, double tol = 1e-12);

struct CovarianceFactors {
    Quaternion A;
    std::function<Quaternion(const Quaternion&)> B; // pole at a c^{-1} -> singular_error
};

CovarianceFactors covariance_factors(const MoebiusMap& T); // contract_error unless constraints ok

// || G[A_T (g o T)](x) - B_T(T(x)) (G[g])(T(x)) ||.
double conformal_residual_G(const MoebiusMap& T, const QJet& g, const Quaternion& x);

// Pointwise covariance of script H_a:
// || -vec(q) H_a[(A o a)(g o T o a)](a^{-1}(q))
//    - B_T(T(q)) vec(T(q)) (H_a[g o a] o a^{-1})(T(q)) ||.
// q and T(q) must lie in (s,t) x V.  The multiplier acquires an extra factor
// -sign(b - a c^{-1} d) relative to the G identity; see moebius.cpp.
double conformal_residual_Ha(const MoebiusMap& T, const DiffeoMap& a, const QJet& g,
                             const Quaternion& q);

// The D_u corollary, evaluated through the substitution
// H_a = (1 + vec a) d0 - D_u on both sides; algebraically identical to
// conformal_residual_Ha, so the two agree to roundoff.
double conformal_residual_Du(const MoebiusMap& T, const DiffeoMap& a, const QJet& g,
                             const Quaternion& q);

} // namespace slicekit
