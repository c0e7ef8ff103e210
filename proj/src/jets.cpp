#include "slicekit/jets.hpp"

#include <memory>
#include <utility>

#include "slicekit/errors.hpp"

namespace slicekit {

namespace {

Quaternion q_shift(const Quaternion& x, int k, double h) {
    Quaternion y = x;
    y.set_coord(k, y.coord(k) + h);
    return y;
}

Paravector pv_shift(const Paravector& x, int k, double h) {
    Paravector y = x;
    if (k == 0)
        y.x0 += h;
    else
        y.v[k - 1] += h;
    return y;
}

} // namespace

// ============================================================================
// Finite-difference jets
// ============================================================================

QJet qjet_from_fn(std::function<Quaternion(const Quaternion&)> f, FDConfig fd) {
    if (fd.h <= 0) throw contract_error("FD step must be positive");
    QJet j;
    j.value = f;
    j.partial = [f, fd](int k, const Quaternion& x) {
        auto central = [&](double h) {
            return (f(q_shift(x, k, h)) - f(q_shift(x, k, -h))) * (0.5 / h);
        };
        const Quaternion d1 = central(fd.h);
        if (!fd.richardson) return d1;
        const Quaternion d2 = central(fd.h / 2);
        return (d2 * 4.0 - d1) * (1.0 / 3.0);
    };
    return j;
}

MJet mjet_from_fn(int n, std::function<Multivector(const Paravector&)> f, FDConfig fd) {
    if (fd.h <= 0) throw contract_error("FD step must be positive");
    MJet j;
    j.n = n;
    j.value = f;
    j.partial = [f, fd](int k, const Paravector& x) {
        auto central = [&](double h) {
            return (f(pv_shift(x, k, h)) - f(pv_shift(x, k, -h))) * (0.5 / h);
        };
        const Multivector d1 = central(fd.h);
        if (!fd.richardson) return d1;
        const Multivector d2 = central(fd.h / 2);
        return (d2 * 4.0 - d1) * (1.0 / 3.0);
    };
    return j;
}

// ============================================================================
// Exact jets
// ============================================================================

QJet qjet_from_series(QPowerSeries s) {
    auto sp = std::make_shared<QPowerSeries>(std::move(s));
    QJet j;
    j.value = [sp](const Quaternion& x) { return sp->eval(x); };
    j.partial = [sp](int k, const Quaternion& x) { return sp->partial(k, x); };
    return j;
}

MJet mjet_from_series(MPowerSeries s) {
    auto sp = std::make_shared<MPowerSeries>(std::move(s));
    MJet j;
    j.n = sp->n;
    j.value = [sp](const Paravector& x) { return sp->eval(x); };
    j.partial = [sp](int k, const Paravector& x) { return sp->partial(k, x); };
    return j;
}

QJet qjet_const(const Quaternion& c) {
    QJet j;
    j.value = [c](const Quaternion&) { return c; };
    j.partial = [](int, const Quaternion&) { return Quaternion{}; };
    return j;
}

MJet mjet_const(const Multivector& c) {
    MJet j;
    j.n = c.dim();
    j.value = [c](const Paravector&) { return c; };
    const Multivector zero(c.dim());
    j.partial = [zero](int, const Paravector&) { return zero; };
    return j;
}

QJet qjet_coordinate(int k) {
    if (k < 0 || k > 3) throw contract_error("coordinate index must be 0..3");
    QJet j;
    j.value = [k](const Quaternion& x) { return Quaternion{x.coord(k), 0, 0, 0}; };
    j.partial = [k](int m, const Quaternion&) {
        return (m == k) ? Quaternion{1, 0, 0, 0} : Quaternion{};
    };
    return j;
}

MJet mjet_coordinate(int n, int k) {
    if (k < 0 || k > n) throw contract_error("coordinate index must be 0..n");
    MJet j;
    j.n = n;
    j.value = [n, k](const Paravector& x) {
        return Multivector::scalar(n, k == 0 ? x.x0 : x.v[k - 1]);
    };
    j.partial = [n, k](int m, const Paravector&) {
        return Multivector::scalar(n, m == k ? 1.0 : 0.0);
    };
    return j;
}

QJet qjet_identity() {
    QJet j;
    j.value = [](const Quaternion& x) { return x; };
    j.partial = [](int k, const Quaternion&) {
        Quaternion e{};
        e.set_coord(k, 1.0);
        return e;
    };
    return j;
}

QJet qjet_conjugation() {
    QJet j;
    j.value = [](const Quaternion& x) { return x.conjugate(); };
    j.partial = [](int k, const Quaternion&) {
        Quaternion e{};
        e.set_coord(k, k == 0 ? 1.0 : -1.0);
        return e;
    };
    return j;
}

MJet mjet_pv_identity(int n) {
    MJet j;
    j.n = n;
    j.value = [](const Paravector& x) { return x.to_multivector(); };
    j.partial = [n](int k, const Paravector&) {
        return (k == 0) ? Multivector::scalar(n, 1.0) : Multivector::basis(n, 1u << (k - 1));
    };
    return j;
}

MJet mjet_pv_conjugation(int n) {
    MJet j;
    j.n = n;
    j.value = [](const Paravector& x) { return x.conjugate().to_multivector(); };
    j.partial = [n](int k, const Paravector&) {
        return (k == 0) ? Multivector::scalar(n, 1.0) : Multivector::basis(n, 1u << (k - 1), -1.0);
    };
    return j;
}

// ============================================================================
// Composition with a diffeomorphism
//
// a fixes x0 and maps the spatial part, so d(f o a)/dx0 = (d0 f) o a and
// d(f o a)/dx_k = sum_m (d_m f)(a(x)) da_m/dx_k.
// ============================================================================

QJet qjet_compose_diffeo(const QJet& f, const DiffeoMap& a) {
    if (a.n != 3) throw unsupported_dimension_error("quaternion jets require n = 3");
    QJet j;
    j.value = [f, a](const Quaternion& x) { return f.value(diffeo_apply(a, x)); };
    j.partial = [f, a](int k, const Quaternion& x) {
        const Quaternion y = diffeo_apply(a, x);
        if (k == 0) return f.partial(0, y);
        const std::vector<double> xv{x.x, x.y, x.z};
        Quaternion out{};
        for (int m = 1; m <= 3; ++m) out += f.partial(m, y) * a.fwd_partial(m - 1, k - 1, xv);
        return out;
    };
    return j;
}

QJet qjet_compose_diffeo_inverse(const QJet& f, const DiffeoMap& a) {
    if (a.n != 3) throw unsupported_dimension_error("quaternion jets require n = 3");
    QJet j;
    j.value = [f, a](const Quaternion& y) { return f.value(diffeo_inverse_apply(a, y)); };
    j.partial = [f, a](int k, const Quaternion& y) {
        const Quaternion x = diffeo_inverse_apply(a, y);
        if (k == 0) return f.partial(0, x);
        const std::vector<double> yv{y.x, y.y, y.z};
        Quaternion out{};
        for (int m = 1; m <= 3; ++m) out += f.partial(m, x) * a.inv_partial(m - 1, k - 1, yv);
        return out;
    };
    return j;
}

MJet mjet_compose_diffeo(const MJet& f, const DiffeoMap& a) {
    if (a.n != f.n) throw contract_error("jet/diffeo dimension mismatch");
    MJet j;
    j.n = f.n;
    j.value = [f, a](const Paravector& x) { return f.value(diffeo_apply(a, x)); };
    j.partial = [f, a](int k, const Paravector& x) {
        const Paravector y = diffeo_apply(a, x);
        if (k == 0) return f.partial(0, y);
        Multivector out(f.n);
        for (int m = 1; m <= f.n; ++m) out += f.partial(m, y) * a.fwd_partial(m - 1, k - 1, x.v);
        return out;
    };
    return j;
}

MJet mjet_compose_diffeo_inverse(const MJet& f, const DiffeoMap& a) {
    if (a.n != f.n) throw contract_error("jet/diffeo dimension mismatch");
    MJet j;
    j.n = f.n;
    j.value = [f, a](const Paravector& y) { return f.value(diffeo_inverse_apply(a, y)); };
    j.partial = [f, a](int k, const Paravector& y) {
        const Paravector x = diffeo_inverse_apply(a, y);
        if (k == 0) return f.partial(0, x);
        Multivector out(f.n);
        for (int m = 1; m <= f.n; ++m) out += f.partial(m, x) * a.inv_partial(m - 1, k - 1, y.v);
        return out;
    };
    return j;
}

// ============================================================================
// Pointwise algebra
// ============================================================================

QJet qjet_add(const QJet& f, const QJet& g) {
    QJet j;
    j.value = [f, g](const Quaternion& x) { return f.value(x) + g.value(x); };
    j.partial = [f, g](int k, const Quaternion& x) { return f.partial(k, x) + g.partial(k, x); };
    return j;
}

MJet mjet_add(const MJet& f, const MJet& g) {
    if (f.n != g.n) throw contract_error("jet dimension mismatch");
    MJet j;
    j.n = f.n;
    j.value = [f, g](const Paravector& x) { return f.value(x) + g.value(x); };
    j.partial = [f, g](int k, const Paravector& x) { return f.partial(k, x) + g.partial(k, x); };
    return j;
}

QJet qjet_product(const QJet& f, const QJet& g) {
    QJet j;
    j.value = [f, g](const Quaternion& x) { return f.value(x) * g.value(x); };
    j.partial = [f, g](int k, const Quaternion& x) {
        return f.partial(k, x) * g.value(x) + f.value(x) * g.partial(k, x);
    };
    return j;
}

MJet mjet_product(const MJet& f, const MJet& g) {
    if (f.n != g.n) throw contract_error("jet dimension mismatch");
    MJet j;
    j.n = f.n;
    j.value = [f, g](const Paravector& x) { return f.value(x) * g.value(x); };
    j.partial = [f, g](int k, const Paravector& x) {
        return f.partial(k, x) * g.value(x) + f.value(x) * g.partial(k, x);
    };
    return j;
}

QJet qjet_scale_left(const Quaternion& c, const QJet& f) {
    QJet j;
    j.value = [c, f](const Quaternion& x) { return c * f.value(x); };
    j.partial = [c, f](int k, const Quaternion& x) { return c * f.partial(k, x); };
    return j;
}

QJet qjet_conj_of(const QJet& f) {
    QJet j;
    j.value = [f](const Quaternion& x) { return f.value(x).conjugate(); };
    j.partial = [f](int k, const Quaternion& x) { return f.partial(k, x).conjugate(); };
    return j;
}

} // namespace slicekit
