#pragma once

#include <functional>

#include "slicekit/algebra.hpp"
#include "slicekit/diffeo.hpp"
#include "slicekit/slice.hpp"

namespace slicekit {

// ============================================================================
// Jets: a function bundled with its first partial derivatives
//
// Every operator consumes jets.  Exact jets (power series, coordinates,
// conjugation, compositions with diffeomorphisms) keep theorem residuals free
// of differentiation error; finite-difference jets cover everything else.
// ============================================================================

struct FDConfig {
    double h = 1e-5;
    bool richardson = true; // one extrapolation level: (4 D_{h/2} - D_h) / 3
};

struct QJet {
    std::function<Quaternion(const Quaternion&)> value;
    std::function<Quaternion(int, const Quaternion&)> partial; // k = 0..3
};

struct MJet {
    int n = 3;
    std::function<Multivector(const Paravector&)> value;
    std::function<Multivector(int, const Paravector&)> partial; // k = 0..n
};

// Finite-difference jets.
QJet qjet_from_fn(std::function<Quaternion(const Quaternion&)> f, FDConfig fd = {});
MJet mjet_from_fn(int n, std::function<Multivector(const Paravector&)> f, FDConfig fd = {});

// Exact jets.
QJet qjet_from_series(QPowerSeries s);
MJet mjet_from_series(MPowerSeries s);
QJet qjet_const(const Quaternion& c);
MJet mjet_const(const Multivector& c);
QJet qjet_coordinate(int k);          // f(x) = x_k
MJet mjet_coordinate(int n, int k);
QJet qjet_identity();                 // f(x) = x
QJet qjet_conjugation();              // f(x) = conj(x)
MJet mjet_pv_identity(int n);         // f(x) = x0 + vec x
MJet mjet_pv_conjugation(int n);      // f(x) = x0 - vec x

// Compositions with a diffeomorphism (exact chain rule through the map's
// partial closures).  The composed-with-a jet lives on (s,t) x U, the
// composed-with-a^{-1} jet on (s,t) x V.
QJet qjet_compose_diffeo(const QJet& f, const DiffeoMap& a);         // f o a
QJet qjet_compose_diffeo_inverse(const QJet& f, const DiffeoMap& a); // f o a^{-1}
MJet mjet_compose_diffeo(const MJet& f, const DiffeoMap& a);
MJet mjet_compose_diffeo_inverse(const MJet& f, const DiffeoMap& a);

// Pointwise algebra (Leibniz rule for products).
QJet qjet_add(const QJet& f, const QJet& g);
MJet mjet_add(const MJet& f, const MJet& g);
QJet qjet_product(const QJet& f, const QJet& g);
MJet mjet_product(const MJet& f, const MJet& g);
QJet qjet_scale_left(const Quaternion& c, const QJet& f);
QJet qjet_conj_of(const QJet& f); // x -> conj(f(x))

} // namespace slicekit
