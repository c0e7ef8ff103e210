#include "slicekit/algebra.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace slicekit {

// ============================================================================
// Blade helpers
// ============================================================================

int blade_sign(unsigned a, unsigned b) {
    // Swap count: for every generator of a, the generators of b below it must
    // move past it when the lists merge.
    int swaps = 0;
    unsigned t = a >> 1;
    while (t != 0) {
        swaps += std::popcount(t & b);
        t >>= 1;
    }
    // Contraction: repeated generators pair up and contribute e_j^2 = -1.
    swaps += std::popcount(a & b);
    return (swaps & 1) ? -1 : 1;
}

std::vector<unsigned> graded_lex_blades(int n) {
    std::vector<unsigned> order;
    order.reserve(1u << n);
    for (unsigned m = 0; m < (1u << n); ++m) order.push_back(m);
    std::sort(order.begin(), order.end(), [](unsigned a, unsigned b) {
        const int ga = std::popcount(a), gb = std::popcount(b);
        if (ga != gb) return ga < gb;
        // Lexicographic on ascending index lists == numeric order on reversed
        // bit patterns; for masks of equal grade, comparing the lowest set
        // bits first does it.
        unsigned x = a, y = b;
        while (x != 0 && y != 0) {
            const unsigned lx = x & -x, ly = y & -y;
            if (lx != ly) return lx < ly;
            x &= x - 1;
            y &= y - 1;
        }
        return false;
    });
    return order;
}

std::string blade_name(unsigned blade) {
    if (blade == 0) return "1";
    std::string s = "e";
    for (int j = 0; j < 8; ++j)
        if (blade & (1u << j)) s += std::to_string(j + 1);
    return s;
}

// ============================================================================
// Multivector
// ============================================================================

Multivector::Multivector(int n) : n_(n) {
    if (n < 1 || n > 8) throw unsupported_dimension_error("multivector dimension must be 1..8");
    c_.assign(std::size_t{1} << n, 0.0);
}

Multivector Multivector::scalar(int n, double v) {
    Multivector m(n);
    m.c_[0] = v;
    return m;
}

Multivector Multivector::basis(int n, unsigned blade, double v) {
    Multivector m(n);
    if (blade >= m.c_.size()) throw contract_error("blade index out of range");
    m.c_[blade] = v;
    return m;
}

Multivector Multivector::operator+(const Multivector& o) const {
    if (n_ != o.n_) throw contract_error("multivector dimension mismatch");
    Multivector r(n_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

Multivector Multivector::operator-(const Multivector& o) const {
    if (n_ != o.n_) throw contract_error("multivector dimension mismatch");
    Multivector r(n_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

Multivector Multivector::operator-() const {
    Multivector r(n_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

Multivector Multivector::operator*(const Multivector& o) const {
    if (n_ != o.n_) throw contract_error("multivector dimension mismatch");
    Multivector r(n_);
    const std::size_t m = c_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double ci = c_[i];
        if (ci == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            const double cj = o.c_[j];
            if (cj == 0.0) continue;
            const unsigned a = static_cast<unsigned>(i), b = static_cast<unsigned>(j);
            r.c_[a ^ b] += blade_sign(a, b) * ci * cj;
        }
    }
    return r;
}

Multivector Multivector::operator*(double s) const {
    Multivector r(n_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    if (n_ != o.n_) throw contract_error("multivector dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

double Multivector::norm() const {
    double s = 0.0;
    for (double c : c_) s += c * c;
    return std::sqrt(s);
}

bool Multivector::approx_equal(const Multivector& o, double tol) const {
    return (*this - o).norm() <= tol;
}

// ============================================================================
// Paravector
// ============================================================================

double Paravector::vec_norm_sq() const {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

Paravector Paravector::conjugate() const {
    Paravector r = *this;
    for (double& c : r.v) c = -c;
    return r;
}

Multivector Paravector::to_multivector() const {
    Multivector m(dim());
    m.coeff(0) = x0;
    for (int j = 0; j < dim(); ++j) m.coeff(1u << j) = v[j];
    return m;
}

Multivector paravector_inverse(const Paravector& x) {
    const double n2 = x.norm_sq();
    if (n2 == 0.0) throw singular_error("paravector inverse at 0");
    return x.conjugate().to_multivector() * (1.0 / n2);
}

Multivector pv_mul(const Paravector& a, const Paravector& b) {
    return a.to_multivector() * b.to_multivector();
}

Paravector pv_pow(const Paravector& x, int k) {
    if (k < 0) throw contract_error("pv_pow needs k >= 0");
    // Work in the slice plane: (u + I v)^k is complex arithmetic.
    const SliceTriple s = slice_decompose(x);
    double ru = 1.0, rv = 0.0;
    for (int i = 0; i < k; ++i) {
        const double nu = ru * s.u - rv * s.v;
        const double nv = ru * s.v + rv * s.u;
        ru = nu;
        rv = nv;
    }
    Paravector r(ru, std::vector<double>(x.dim(), 0.0));
    for (int j = 0; j < x.dim(); ++j) r.v[j] = rv * s.axis[j];
    return r;
}

// ============================================================================
// Slice decomposition
// ============================================================================

SliceTriple slice_decompose(const Paravector& x) {
    SliceTriple s;
    s.u = x.x0;
    s.v = x.vec_norm();
    s.axis.assign(x.dim(), 0.0);
    if (s.v > 0.0) {
        for (int j = 0; j < x.dim(); ++j) s.axis[j] = x.v[j] / s.v;
    } else {
        s.axis[0] = 1.0; // real points: axis defaults to e1
    }
    return s;
}

Paravector slice_compose(const SliceTriple& s) {
    Paravector x(s.u, s.axis);
    for (double& c : x.v) c *= s.v;
    return x;
}

// ============================================================================
// Quaternion
// ============================================================================

Quaternion Quaternion::inverse() const {
    const double n2 = norm_sq();
    if (n2 == 0.0) throw singular_error("quaternion inverse at 0");
    return conjugate() * (1.0 / n2);
}

double Quaternion::coord(int k) const {
    switch (k) {
        case 0: return w;
        case 1: return x;
        case 2: return y;
        case 3: return z;
    }
    throw contract_error("quaternion coordinate index out of range");
}

void Quaternion::set_coord(int k, double val) {
    switch (k) {
        case 0: w = val; return;
        case 1: x = val; return;
        case 2: y = val; return;
        case 3: z = val; return;
    }
    throw contract_error("quaternion coordinate index out of range");
}

SliceTriple slice_decompose(const Quaternion& q) {
    SliceTriple s;
    s.u = q.w;
    s.v = q.vec_norm();
    s.axis.assign(3, 0.0);
    if (s.v > 0.0) {
        s.axis = {q.x / s.v, q.y / s.v, q.z / s.v};
    } else {
        s.axis[0] = 1.0;
    }
    return s;
}

Quaternion q_slice_compose(const SliceTriple& s) {
    if (s.axis.size() != 3) throw contract_error("quaternion slice needs a 3-vector axis");
    return {s.u, s.v * s.axis[0], s.v * s.axis[1], s.v * s.axis[2]};
}

Quaternion q_pow(const Quaternion& q, int k) {
    if (k < 0) throw contract_error("q_pow needs k >= 0");
    Quaternion r = Quaternion::real(1.0);
    for (int i = 0; i < k; ++i) r = r * q;
    return r;
}

Quaternion q_from_slice(double u, const std::array<double, 3>& axis, double v) {
    return {u, v * axis[0], v * axis[1], v * axis[2]};
}

// ============================================================================
// Embedding
// ============================================================================

Multivector quat_to_mv(const Quaternion& q, int n) {
    if (n < 2) throw unsupported_dimension_error("quaternion embedding needs n >= 2");
    Multivector m(n);
    m.coeff(0) = q.w;
    m.coeff(0b01) = q.x;  // e1
    m.coeff(0b10) = q.y;  // e2
    m.coeff(0b11) = q.z;  // e12 <-> e3
    return m;
}

Quaternion mv_to_quat(const Multivector& m, double tol) {
    double off = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (i != 0 && i != 1 && i != 2 && i != 3) off += m.coeff(static_cast<unsigned>(i)) * m.coeff(static_cast<unsigned>(i));
    if (std::sqrt(off) > tol)
        throw contract_error("multivector is not supported on span{1,e1,e2,e12}");
    return {m.coeff(0), m.coeff(1), m.coeff(2), m.coeff(3)};
}

Quaternion pv_to_quat(const Paravector& p) {
    if (p.dim() != 3) throw unsupported_dimension_error("paravector-quaternion bridge needs n = 3");
    return {p.x0, p.v[0], p.v[1], p.v[2]};
}

Paravector quat_to_pv(const Quaternion& q) {
    return {q.w, {q.x, q.y, q.z}};
}

} // namespace slicekit
