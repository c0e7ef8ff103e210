#pragma once

#include "slicekit/algebra.hpp"
#include "slicekit/diffeo.hpp"
#include "slicekit/jets.hpp"

namespace slicekit {

// ============================================================================
// Global operators
//
//   G[f](x)      = |vec x|^2 d0 f + vec(x) sum_j x_j d_j f
//   G_r[f](x)    = |vec x|^2 d0 f + (sum_j x_j d_j f) vec(x)
//   H_{a,b}[f]   = (G[b] o a) f + |vec a|^2 (b o a) d0 f
//                  + vec(a) (b o a) sum_j u_j d_j f
//   H_a(f)       = vec(a) d0 f - sum_i u_i d_i f          (script H)
//   H_{a,r}(f)   = d0 f vec(a) - sum_i u_i d_i f
//   D_u(f)       = d0 f + sum_j u_j d_j f
//
// with u = material_velocity(a, .).  Multiplication orders are exactly as
// written.  vec(a) means the 1-vector (pure imaginary) part of a(x).
// ============================================================================

Multivector apply_G(const MJet& f, const Paravector& x);
Quaternion apply_G(const QJet& f, const Quaternion& x);

Multivector apply_G_r(const MJet& f, const Paravector& x);
Quaternion apply_G_r(const QJet& f, const Quaternion& x);

Multivector apply_H_ab(const DiffeoMap& a, const MJet& b, const MJet& f, const Paravector& x);

Multivector apply_H_a(const DiffeoMap& a, const MJet& f, const Paravector& x);
Quaternion apply_H_a(const DiffeoMap& a, const QJet& f, const Quaternion& x);

Quaternion apply_H_ar(const DiffeoMap& a, const QJet& f, const Quaternion& x); // n = 3 only

Multivector apply_D_u(const DiffeoMap& a, const MJet& f, const Paravector& x);
Quaternion apply_D_u(const DiffeoMap& a, const QJet& f, const Quaternion& x);

// || D_u f - [(1 + vec a) d0 f - H_a f] ||: an algebraic identity, so the
// residual vanishes to roundoff.
double du_relation_residual(const DiffeoMap& a, const MJet& f, const Paravector& x);
double du_relation_residual(const DiffeoMap& a, const QJet& f, const Quaternion& x);

// || H_{a,b}[f](x) - G[b (f o a^{-1})](a(x)) ||: the conjugation identity
// H_{a,b} = W_a o G o bM o W_{a^{-1}} evaluated through independent code paths.
double conjugation_residual(const DiffeoMap& a, const MJet& b, const MJet& f, const Paravector& x);

} // namespace slicekit
