#include "slicekit/slice.hpp"

#include <cmath>
#include <cstddef>

#include "slicekit/errors.hpp"

namespace slicekit {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Coefficient inner product of two multivectors.
double mv_dot(const Multivector& a, const Multivector& b) {
    double s = 0.0;
    for (unsigned blade = 0; blade < (1u << a.dim()); ++blade) s += a.coeff(blade) * b.coeff(blade);
    return s;
}

Multivector vec_to_mv(int n, const std::vector<double>& v) {
    Multivector m(n);
    for (int k = 0; k < n; ++k) m.coeff(1u << k) = v[k];
    return m;
}

void require_unit(double norm_sq, const char* what) {
    if (std::abs(norm_sq - 1.0) > 1e-10) throw contract_error(std::string(what) + " must be a unit vector");
}

} // namespace

// ============================================================================
// Power series
// ============================================================================

Quaternion QPowerSeries::eval(const Quaternion& x) const {
    if (coeffs.empty()) return Quaternion{};
    Quaternion acc = coeffs.back();
    for (std::size_t m = coeffs.size() - 1; m-- > 0;)
        acc = (side == Side::left) ? x * acc + coeffs[m] : acc * x + coeffs[m];
    return acc;
}

Quaternion QPowerSeries::partial(int k, const Quaternion& x) const {
    if (k < 0 || k > 3) throw contract_error("quaternion partial index must be 0..3");
    if (coeffs.size() < 2) return Quaternion{};
    const std::size_t top = coeffs.size() - 1; // highest power
    std::vector<Quaternion> pow(top);
    pow[0] = Quaternion{1, 0, 0, 0};
    for (std::size_t i = 1; i < top; ++i) pow[i] = pow[i - 1] * x;
    Quaternion ek{};
    ek.set_coord(k, 1.0);
    Quaternion out{};
    for (std::size_t m = 1; m <= top; ++m) {
        Quaternion d{}; // d(x^m)/dx_k
        for (std::size_t i = 0; i + 1 <= m; ++i) d += pow[i] * ek * pow[m - 1 - i];
        out += (side == Side::left) ? d * coeffs[m] : coeffs[m] * d;
    }
    return out;
}

Multivector MPowerSeries::eval(const Paravector& x) const {
    Multivector acc(n);
    if (coeffs.empty()) return acc;
    acc = coeffs.back();
    const Multivector xm = x.to_multivector();
    for (std::size_t m = coeffs.size() - 1; m-- > 0;)
        acc = (side == Side::left) ? xm * acc + coeffs[m] : acc * xm + coeffs[m];
    return acc;
}

Multivector MPowerSeries::partial(int k, const Paravector& x) const {
    if (k < 0 || k > n) throw contract_error("paravector partial index must be 0..n");
    Multivector out(n);
    if (coeffs.size() < 2) return out;
    const std::size_t top = coeffs.size() - 1;
    std::vector<Multivector> pow(top, Multivector(n));
    pow[0] = Multivector::scalar(n, 1.0);
    const Multivector xm = x.to_multivector();
    for (std::size_t i = 1; i < top; ++i) pow[i] = pow[i - 1] * xm;
    const Multivector ek = (k == 0) ? Multivector::scalar(n, 1.0) : Multivector::basis(n, 1u << (k - 1));
    for (std::size_t m = 1; m <= top; ++m) {
        Multivector d(n);
        for (std::size_t i = 0; i + 1 <= m; ++i) d += pow[i] * ek * pow[m - 1 - i];
        out += (side == Side::left) ? d * coeffs[m] : coeffs[m] * d;
    }
    return out;
}

// ============================================================================
// Representation formula
// ============================================================================

Quaternion representation_eval(const std::function<Quaternion(const Quaternion&)>& f,
                               const Quaternion& x, const std::array<double, 3>& J) {
    require_unit(J[0] * J[0] + J[1] * J[1] + J[2] * J[2], "J");
    const SliceTriple s = slice_decompose(x);
    const Quaternion Ix{0, s.axis[0], s.axis[1], s.axis[2]};
    const Quaternion Jq{0, J[0], J[1], J[2]};
    const Quaternion fp = f(q_from_slice(s.u, J, s.v));
    const Quaternion fm = f(q_from_slice(s.u, J, -s.v));
    const Quaternion one{1, 0, 0, 0};
    return (one - Ix * Jq) * fp * 0.5 + (one + Ix * Jq) * fm * 0.5;
}

Multivector representation_eval(const std::function<Multivector(const Paravector&)>& f,
                                const Paravector& x, const std::vector<double>& J) {
    const int n = x.dim();
    if (static_cast<int>(J.size()) != n) throw contract_error("J dimension mismatch");
    require_unit(dot(J, J), "J");
    const SliceTriple s = slice_decompose(x);
    const Multivector Ix = vec_to_mv(n, s.axis);
    const Multivector Jm = vec_to_mv(n, J);
    std::vector<double> up(J), dn(J);
    for (int k = 0; k < n; ++k) {
        up[k] *= s.v;
        dn[k] *= -s.v;
    }
    const Multivector fp = f(Paravector(s.u, up));
    const Multivector fm = f(Paravector(s.u, dn));
    const Multivector one = Multivector::scalar(n, 1.0);
    return (one - Ix * Jm) * fp * 0.5 + (one + Ix * Jm) * fm * 0.5;
}

// ============================================================================
// Splitting
// ============================================================================

SplittingFrame make_splitting_frame(const std::vector<double>& axis,
                                    const std::vector<std::vector<double>>& completion) {
    const int n = static_cast<int>(axis.size());
    if (n < 1 || n > 8) throw unsupported_dimension_error("splitting frame needs 1 <= n <= 8");
    if (static_cast<int>(completion.size()) != n - 1)
        throw contract_error("splitting frame needs n-1 completion vectors");

    std::vector<std::vector<double>> all;
    all.push_back(axis);
    for (const auto& c : completion) {
        if (static_cast<int>(c.size()) != n) throw contract_error("completion vector dimension mismatch");
        all.push_back(c);
    }
    // Orthonormality of the 1-vectors is exactly I_r I_s + I_s I_r = -2 delta.
    for (std::size_t r = 0; r < all.size(); ++r)
        for (std::size_t s = r; s < all.size(); ++s) {
            const double want = (r == s) ? 1.0 : 0.0;
            if (std::abs(dot(all[r], all[s]) - want) > 1e-12)
                throw contract_error("splitting frame vectors are not orthonormal");
        }

    SplittingFrame fr;
    fr.n = n;
    fr.axis = axis;
    fr.completion = completion;
    const unsigned subsets = 1u << (n - 1);
    const Multivector I1 = vec_to_mv(n, axis);
    fr.blade.reserve(subsets);
    fr.blade_i.reserve(subsets);
    for (unsigned A = 0; A < subsets; ++A) {
        Multivector b = Multivector::scalar(n, 1.0);
        for (int slot = 0; slot < n - 1; ++slot)
            if (A & (1u << slot)) b = b * vec_to_mv(n, completion[slot]);
        fr.blade.push_back(b);
        fr.blade_i.push_back(I1 * b);
    }
    return fr;
}

std::vector<std::vector<double>> complete_axis(const std::vector<double>& axis) {
    const int n = static_cast<int>(axis.size());
    require_unit(dot(axis, axis), "axis");
    std::vector<std::vector<double>> frame{axis};
    for (int k = 0; k < n && static_cast<int>(frame.size()) < n; ++k) {
        std::vector<double> cand(n, 0.0);
        cand[k] = 1.0;
        for (const auto& prev : frame) {
            const double p = dot(cand, prev);
            for (int i = 0; i < n; ++i) cand[i] -= p * prev[i];
        }
        const double nn = std::sqrt(dot(cand, cand));
        if (nn > 1e-8) {
            for (auto& c : cand) c /= nn;
            frame.push_back(cand);
        }
    }
    if (static_cast<int>(frame.size()) != n) throw contract_error("axis completion failed");
    frame.erase(frame.begin());
    return frame;
}

std::vector<Complex2> splitting_components(const SplittingFrame& frame, const Multivector& value) {
    if (value.dim() != frame.n) throw contract_error("splitting value dimension mismatch");
    std::vector<Complex2> out(frame.blade.size());
    for (std::size_t A = 0; A < frame.blade.size(); ++A)
        out[A] = Complex2{mv_dot(value, frame.blade[A]), mv_dot(value, frame.blade_i[A])};
    return out;
}

Multivector splitting_reassemble(const SplittingFrame& frame, const std::vector<Complex2>& comps) {
    if (comps.size() != frame.blade.size()) throw contract_error("splitting component count mismatch");
    Multivector out(frame.n);
    for (std::size_t A = 0; A < comps.size(); ++A)
        out += frame.blade[A] * comps[A].re + frame.blade_i[A] * comps[A].im;
    return out;
}

// ============================================================================
// Cauchy-Riemann residual
// ============================================================================

namespace {

template <class V>
double cr_residual_impl(const std::function<V(double, double)>& alpha,
                        const std::function<V(double, double)>& beta, double u, double v, double h,
                        double (*norm_of)(const V&)) {
    const V au = (alpha(u + h, v) - alpha(u - h, v)) * (0.5 / h);
    const V av = (alpha(u, v + h) - alpha(u, v - h)) * (0.5 / h);
    const V bu = (beta(u + h, v) - beta(u - h, v)) * (0.5 / h);
    const V bv = (beta(u, v + h) - beta(u, v - h)) * (0.5 / h);
    return std::max(norm_of(au - bv), norm_of(av + bu));
}

} // namespace

double cr_residual(const std::function<double(double, double)>& alpha,
                   const std::function<double(double, double)>& beta, double u, double v, double h) {
    const double au = (alpha(u + h, v) - alpha(u - h, v)) / (2 * h);
    const double av = (alpha(u, v + h) - alpha(u, v - h)) / (2 * h);
    const double bu = (beta(u + h, v) - beta(u - h, v)) / (2 * h);
    const double bv = (beta(u, v + h) - beta(u, v - h)) / (2 * h);
    return std::max(std::abs(au - bv), std::abs(av + bu));
}

double cr_residual(const std::function<Quaternion(double, double)>& alpha,
                   const std::function<Quaternion(double, double)>& beta, double u, double v,
                   double h) {
    return cr_residual_impl<Quaternion>(alpha, beta, u, v, h,
                                        +[](const Quaternion& q) { return q.norm(); });
}

// ============================================================================
// Intrinsic pair
// ============================================================================

IntrinsicPair intrinsic_pair(std::function<Quaternion(const Quaternion&)> f) {
    const Quaternion I{0, 1, 0, 0};
    IntrinsicPair p;
    p.alpha = [f](double u, double v) {
        return (f(Quaternion{u, v, 0, 0}) + f(Quaternion{u, -v, 0, 0})) * 0.5;
    };
    p.beta = [f, I](double u, double v) {
        return I * (f(Quaternion{u, -v, 0, 0}) - f(Quaternion{u, v, 0, 0})) * 0.5;
    };
    return p;
}

// ============================================================================
// AxSymDomain
// ============================================================================

AxSymDomain axsym_from_disc(double u0, double v0, double rho) {
    if (rho <= 0) throw contract_error("disc radius must be positive");
    AxSymDomain d;
    d.contains_uv = [u0, v0, rho](double u, double v) {
        const double du = u - u0, dv = v - v0;
        return du * du + dv * dv < rho * rho;
    };
    d.u_range = {u0 - rho, u0 + rho};
    d.v_range = {std::max(0.0, v0 - rho), v0 + rho};
    return d;
}

} // namespace slicekit
