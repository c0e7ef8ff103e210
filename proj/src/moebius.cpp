#include "slicekit/moebius.hpp"

#include <cmath>
#include <memory>

#include "slicekit/errors.hpp"
#include "slicekit/operators.hpp"

namespace slicekit {

// ============================================================================
// Construction and evaluation
// ============================================================================

MoebiusMap make_moebius(const Quaternion& a, const Quaternion& b, const Quaternion& c,
                        const Quaternion& d) {
    if (c.norm() > 0.0) {
        Quaternion beta = b - a * c.inverse() * d;
        if (beta.norm() < 1e-14)
            throw contract_error("make_moebius: degenerate map, b - a c^-1 d = 0");
    } else {
        if (a.norm() == 0.0 || d.norm() == 0.0)
            throw contract_error("make_moebius: affine map needs a != 0 and d != 0");
    }
    return {a, b, c, d};
}

MoebiusMap moebius_canonical(double a, double d, double r) {
    if (r == 0.0) throw contract_error("moebius_canonical: r must be nonzero");
    return {Quaternion{a, 0, 0, 0}, Quaternion{a * d + r, 0, 0, 0}, Quaternion{1, 0, 0, 0},
            Quaternion{d, 0, 0, 0}};
}

Quaternion moebius_apply(const MoebiusMap& T, const Quaternion& x) {
    Quaternion P = T.c * x + T.d;
    if (P.norm() < 1e-13) throw singular_error("moebius_apply: evaluation at the pole");
    return (T.a * x + T.b) * P.inverse();
}

Quaternion moebius_partial(const MoebiusMap& T, int k, const Quaternion& x) {
    if (k < 0 || k > 3) throw contract_error("moebius_partial: k must be in 0..3");
    Quaternion P = T.c * x + T.d;
    if (P.norm() < 1e-13) throw singular_error("moebius_partial: evaluation at the pole");
    Quaternion ek{0, 0, 0, 0};
    ek.set_coord(k, 1.0);
    Quaternion Pinv = P.inverse();
    return T.a * ek * Pinv - (T.a * x + T.b) * Pinv * (T.c * ek) * Pinv;
}

QJet qjet_moebius_compose(const QJet& g, const MoebiusMap& T) {
    auto gp = std::make_shared<QJet>(g);
    auto Tp = std::make_shared<MoebiusMap>(T);
    QJet out;
    out.value = [gp, Tp](const Quaternion& x) { return gp->value(moebius_apply(*Tp, x)); };
    out.partial = [gp, Tp](int k, const Quaternion& x) {
        Quaternion y = moebius_apply(*Tp, x);
        Quaternion dT = moebius_partial(*Tp, k, x);
        Quaternion acc{0, 0, 0, 0};
        for (int m = 0; m < 4; ++m) acc = acc + gp->partial(m, y) * dT.coord(m);
        return acc;
    };
    return out;
}

// ============================================================================
// Covariance class
// ============================================================================

bool covariance_constraints_ok(const MoebiusMap& T, double tol) {
    if (T.c.norm() == 0.0) return false;
    Quaternion beta = T.b - T.a * T.c.inverse() * T.d;
    if (beta.norm() < 1e-14) return false;
    Quaternion cbar = T.c.conjugate();
    Quaternion p1 = T.a * cbar;
    Quaternion p2 = beta * cbar;
    Quaternion p3 = T.d * beta.conjugate();
    return p1.vec_norm() <= tol && p2.vec_norm() <= tol && p3.vec_norm() <= tol;
}

CovarianceFactors covariance_factors(const MoebiusMap& T) {
    if (!covariance_constraints_ok(T))
        throw contract_error("covariance_factors: map is not in the covariance class");
    Quaternion cbar = T.c.conjugate();
    Quaternion beta = T.b - T.a * T.c.inverse() * T.d;
    double scale = T.c.norm() * beta.norm();
    Quaternion pole = T.a * T.c.inverse();
    auto B = [cbar, scale, pole](const Quaternion& y) {
        Quaternion w = y - pole;
        if (w.norm() < 1e-13) throw singular_error("covariance factor B: evaluation at the pole");
        Quaternion winv = w.inverse();
        return cbar * (winv * winv) * scale;
    };
    return {cbar, std::function<Quaternion(const Quaternion&)>(B)};
}

// ============================================================================
// Covariance residuals
// ============================================================================

double conformal_residual_G(const MoebiusMap& T, const QJet& g, const Quaternion& x) {
    CovarianceFactors F = covariance_factors(T);
    QJet h = qjet_scale_left(F.A, qjet_moebius_compose(g, T));
    Quaternion lhs = apply_G(h, x);
    Quaternion y = moebius_apply(T, x);
    Quaternion rhs = F.B(y) * apply_G(g, y);
    return (lhs - rhs).norm();
}

double conformal_residual_Ha(const MoebiusMap& T, const DiffeoMap& a, const QJet& g,
                             const Quaternion& q) {
    CovarianceFactors F = covariance_factors(T);
    QJet h = qjet_scale_left(F.A, qjet_compose_diffeo(qjet_moebius_compose(g, T), a));
    Quaternion xq = diffeo_inverse_apply(a, q);
    Quaternion lhs = -q.vec() * apply_H_a(a, h, xq);
    Quaternion p = moebius_apply(T, q);
    QJet ga = qjet_compose_diffeo(g, a);
    Quaternion xp = diffeo_inverse_apply(a, p);
    Quaternion rhs = F.B(p) * (p.vec() * apply_H_a(a, ga, xp));
    return (lhs - rhs).norm();
}

double conformal_residual_Du(const MoebiusMap& T, const DiffeoMap& a, const QJet& g,
                             const Quaternion& q) {
    CovarianceFactors F = covariance_factors(T);
    QJet h = qjet_scale_left(F.A, qjet_compose_diffeo(qjet_moebius_compose(g, T), a));
    Quaternion xq = diffeo_inverse_apply(a, q);
    Quaternion one{1, 0, 0, 0};
    Quaternion qv = q.vec();
    Quaternion lhs = qv * apply_D_u(a, h, xq) - qv * (one + qv) * h.partial(0, xq);
    Quaternion p = moebius_apply(T, q);
    QJet ga = qjet_compose_diffeo(g, a);
    Quaternion xp = diffeo_inverse_apply(a, p);
    Quaternion pv = p.vec();
    Quaternion Bp = F.B(p);
    Quaternion rhs = Bp * (pv * (one + pv)) * ga.partial(0, xp) - Bp * (pv * apply_D_u(a, ga, xp));
    return (lhs - rhs).norm();
}

} // namespace slicekit
