#include "slicekit/operators.hpp"

#include <vector>

#include "slicekit/errors.hpp"

namespace slicekit {

namespace {

Multivector vec_part_mv(int n, const std::vector<double>& v) {
    Multivector m(n);
    for (int k = 0; k < n; ++k) m.coeff(1u << k) = v[k];
    return m;
}

double norm_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

void require_n3(const DiffeoMap& a, const char* what) {
    if (a.n != 3) throw unsupported_dimension_error(std::string(what) + " requires n = 3");
}

} // namespace

// ============================================================================
// G and G_r
// ============================================================================

Multivector apply_G(const MJet& f, const Paravector& x) {
    const int n = f.n;
    const Multivector xv = vec_part_mv(n, x.v);
    Multivector sum(n);
    for (int j = 1; j <= n; ++j) sum += f.partial(j, x) * x.v[j - 1];
    return f.partial(0, x) * x.vec_norm_sq() + xv * sum;
}

Quaternion apply_G(const QJet& f, const Quaternion& x) {
    const Quaternion xv = x.vec();
    Quaternion sum{};
    for (int j = 1; j <= 3; ++j) sum += f.partial(j, x) * x.coord(j);
    return f.partial(0, x) * x.vec_norm_sq() + xv * sum;
}

Multivector apply_G_r(const MJet& f, const Paravector& x) {
    const int n = f.n;
    const Multivector xv = vec_part_mv(n, x.v);
    Multivector sum(n);
    for (int j = 1; j <= n; ++j) sum += f.partial(j, x) * x.v[j - 1];
    return f.partial(0, x) * x.vec_norm_sq() + sum * xv;
}

Quaternion apply_G_r(const QJet& f, const Quaternion& x) {
    const Quaternion xv = x.vec();
    Quaternion sum{};
    for (int j = 1; j <= 3; ++j) sum += f.partial(j, x) * x.coord(j);
    return f.partial(0, x) * x.vec_norm_sq() + sum * xv;
}

// ============================================================================
// H_{a,b} and the script variants
// ============================================================================

Multivector apply_H_ab(const DiffeoMap& a, const MJet& b, const MJet& f, const Paravector& x) {
    const int n = f.n;
    if (a.n != n || b.n != n) throw contract_error("H_ab: dimension mismatch");
    const std::vector<double> u = material_velocity(a, x); // also checks the domain
    const Paravector y = diffeo_apply(a, x);
    const Multivector av = vec_part_mv(n, y.v);
    const Multivector by = b.value(y);
    Multivector sum(n);
    for (int j = 1; j <= n; ++j) sum += f.partial(j, x) * u[j - 1];
    return apply_G(b, y) * f.value(x) + by * f.partial(0, x) * norm_sq(y.v) + av * by * sum;
}

Multivector apply_H_a(const DiffeoMap& a, const MJet& f, const Paravector& x) {
    const int n = f.n;
    if (a.n != n) throw contract_error("H_a: dimension mismatch");
    const std::vector<double> u = material_velocity(a, x);
    const Multivector av = vec_part_mv(n, a.forward(x.v));
    Multivector sum(n);
    for (int i = 1; i <= n; ++i) sum += f.partial(i, x) * u[i - 1];
    return av * f.partial(0, x) - sum;
}

Quaternion apply_H_a(const DiffeoMap& a, const QJet& f, const Quaternion& x) {
    require_n3(a, "quaternionic H_a");
    const std::vector<double> u = material_velocity(a, x);
    const std::vector<double> av = a.forward({x.x, x.y, x.z});
    const Quaternion aq{0, av[0], av[1], av[2]};
    Quaternion sum{};
    for (int i = 1; i <= 3; ++i) sum += f.partial(i, x) * u[i - 1];
    return aq * f.partial(0, x) - sum;
}

Quaternion apply_H_ar(const DiffeoMap& a, const QJet& f, const Quaternion& x) {
    require_n3(a, "H_{a,r}");
    const std::vector<double> u = material_velocity(a, x);
    const std::vector<double> av = a.forward({x.x, x.y, x.z});
    const Quaternion aq{0, av[0], av[1], av[2]};
    Quaternion sum{};
    for (int i = 1; i <= 3; ++i) sum += f.partial(i, x) * u[i - 1];
    return f.partial(0, x) * aq - sum;
}

// ============================================================================
// Material derivative and identities
// ============================================================================

Multivector apply_D_u(const DiffeoMap& a, const MJet& f, const Paravector& x) {
    if (a.n != f.n) throw contract_error("D_u: dimension mismatch");
    const std::vector<double> u = material_velocity(a, x);
    Multivector out = f.partial(0, x);
    for (int j = 1; j <= f.n; ++j) out += f.partial(j, x) * u[j - 1];
    return out;
}

Quaternion apply_D_u(const DiffeoMap& a, const QJet& f, const Quaternion& x) {
    require_n3(a, "quaternionic D_u");
    const std::vector<double> u = material_velocity(a, x);
    Quaternion out = f.partial(0, x);
    for (int j = 1; j <= 3; ++j) out += f.partial(j, x) * u[j - 1];
    return out;
}

double du_relation_residual(const DiffeoMap& a, const MJet& f, const Paravector& x) {
    const Multivector av = vec_part_mv(f.n, a.forward(x.v));
    const Multivector one = Multivector::scalar(f.n, 1.0);
    const Multivector rhs = (one + av) * f.partial(0, x) - apply_H_a(a, f, x);
    return (apply_D_u(a, f, x) - rhs).norm();
}

double du_relation_residual(const DiffeoMap& a, const QJet& f, const Quaternion& x) {
    const std::vector<double> av = a.forward({x.x, x.y, x.z});
    const Quaternion aq{1, av[0], av[1], av[2]}; // 1 + vec a
    const Quaternion rhs = aq * f.partial(0, x) - apply_H_a(a, f, x);
    return (apply_D_u(a, f, x) - rhs).norm();
}

double conjugation_residual(const DiffeoMap& a, const MJet& b, const MJet& f, const Paravector& x) {
    const Multivector lhs = apply_H_ab(a, b, f, x);
    const MJet g = mjet_product(b, mjet_compose_diffeo_inverse(f, a));
    const Multivector rhs = apply_G(g, diffeo_apply(a, x));
    return (lhs - rhs).norm();
}

} // namespace slicekit
