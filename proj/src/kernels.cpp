#include "slicekit/kernels.hpp"

#include <cmath>

#include "slicekit/errors.hpp"
#include "slicekit/operators.hpp"

namespace slicekit {

namespace {

const double kPi = 3.14159265358979323846;

void require_offaxis(const Quaternion& q, const char* who) {
    if (q.vec_norm() < 1e-13) throw singular_error(std::string(who) + ": point on the real axis");
}

void require_separated(const Quaternion& tau, const Quaternion& x, const char* who) {
    if ((tau - x).norm() < 1e-13) throw singular_error(std::string(who) + ": tau = x");
}

double vec_inner(const Quaternion& a, const Quaternion& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

} // namespace

// ============================================================================
// Cauchy kernel
// ============================================================================

Multivector cauchy_kernel_S(const Paravector& s, const Paravector& x) {
    if (s.dim() != x.dim()) throw contract_error("cauchy_kernel_S: dimension mismatch");
    Paravector x2 = pv_pow(x, 2);
    // P = x^2 - 2 Re[s] x + |s|^2 stays in the slice plane of x
    std::vector<double> pv(x.v.size());
    for (size_t i = 0; i < pv.size(); ++i) pv[i] = x2.v[i] - 2.0 * s.x0 * x.v[i];
    Paravector P(x2.x0 - 2.0 * s.x0 * x.x0 + s.norm_sq(), pv);
    if (P.norm() < 1e-12 * (1.0 + x.norm_sq() + s.norm_sq()))
        throw singular_error("cauchy_kernel_S: x lies on the sphere [s]");
    std::vector<double> dv(x.v.size());
    for (size_t i = 0; i < dv.size(); ++i) dv[i] = x.v[i] + s.v[i];
    Paravector diff(x.x0 - s.x0, dv); // x - conj(s)
    return paravector_inverse(P) * diff.to_multivector() * -1.0;
}

Quaternion cauchy_kernel_S(const Quaternion& s, const Quaternion& x) {
    Quaternion P = x * x - x * (2.0 * s.w) + Quaternion{s.norm_sq(), 0, 0, 0};
    if (P.norm() < 1e-12 * (1.0 + x.norm_sq() + s.norm_sq()))
        throw singular_error("cauchy_kernel_S: x lies on the sphere [s]");
    return -(P.inverse() * (x - s.conjugate()));
}

// ============================================================================
// Reproducing kernels
// ============================================================================

Quaternion kernel_A(const Quaternion& tau, const Quaternion& x) {
    require_offaxis(tau, "kernel_A");
    require_offaxis(x, "kernel_A");
    require_separated(tau, x, "kernel_A");
    Quaternion d = tau - x;
    double den = 2.0 * kPi * kPi * x.vec_norm_sq() * d.norm_sq() * d.norm_sq() * tau.vec_norm_sq();
    return x.vec() * d.conjugate() * tau.vec() * (1.0 / den);
}

Quaternion kernel_B(const Quaternion& tau, const Quaternion& x) {
    require_offaxis(x, "kernel_B");
    require_offaxis(tau, "kernel_B");
    require_separated(tau, x, "kernel_B");
    Quaternion d = tau - x;
    double r2 = d.norm_sq(), r4 = r2 * r2, r6 = r4 * r2;
    Quaternion num1 = tau + x.conjugate() * 3.0 - tau.conjugate() * 4.0;
    Quaternion bracket =
        (Quaternion{x.w, 0, 0, 0} - tau) * tau.vec() - Quaternion{vec_inner(tau, x), 0, 0, 0};
    Quaternion sum = num1 * (1.0 / r4) + d.conjugate() * bracket * (4.0 / r6);
    return x.vec() * (1.0 / x.vec_norm_sq()) * sum * (1.0 / (kPi * kPi));
}

Quaternion kernel_C(const Quaternion& x, const Quaternion& tau) {
    require_offaxis(x, "kernel_C");
    require_offaxis(tau, "kernel_C");
    require_separated(tau, x, "kernel_C");
    Quaternion d = tau - x;
    double r2 = d.norm_sq(), r4 = r2 * r2, r6 = r4 * r2;
    Quaternion num1 = tau + x.conjugate() * 3.0 - tau.conjugate() * 4.0;
    Quaternion bracket =
        (Quaternion{x.w, 0, 0, 0} - tau) * tau.vec() - Quaternion{vec_inner(tau, x), 0, 0, 0};
    Quaternion sum = num1 * (1.0 / r4) + bracket * d.conjugate() * (4.0 / r6);
    return sum * (x.vec() * (1.0 / x.vec_norm_sq())) * (1.0 / (kPi * kPi));
}

Quaternion nu_weight(const Quaternion& x, const std::array<double, 4>& normal) {
    double nn = normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2] +
                normal[3] * normal[3];
    if (std::abs(nn - 1.0) > 1e-10) throw contract_error("nu_weight: normal must be unit length");
    require_offaxis(x, "nu_weight");
    double dot = x.x * normal[1] + x.y * normal[2] + x.z * normal[3];
    return Quaternion{2.0 * normal[0], 0, 0, 0} + x.vec() * (2.0 * dot / x.vec_norm_sq());
}

// ============================================================================
// Membership residuals
// ============================================================================

std::pair<double, double> kernel_membership_residual(const Paravector& s, const Paravector& x,
                                                     FDConfig fd) {
    if (s.dim() != x.dim()) throw contract_error("kernel_membership_residual: dimension mismatch");
    if (x.vec_norm() < 1e-12 || s.vec_norm() < 1e-12)
        throw contract_error("kernel_membership_residual: points must be off the real axis");
    int n = x.dim();
    Paravector sc = s, xc = x;
    MJet in_x = mjet_from_fn(n, [sc](const Paravector& xx) { return cauchy_kernel_S(sc, xx); }, fd);
    MJet in_s = mjet_from_fn(n, [xc](const Paravector& ss) { return cauchy_kernel_S(ss, xc); }, fd);
    return {apply_G(in_x, x).norm(), apply_G_r(in_s, s).norm()};
}

} // namespace slicekit
