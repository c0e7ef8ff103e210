#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "slicekit/errors.hpp"

namespace slicekit {

// ============================================================================
// Blade index helpers
//
// Basis blades of R_{0,n} are bitmasks over the generators: bit j-1 set means
// e_j is a factor.  Generators square to -1 and anticommute.
// ============================================================================

// Sign of e_A * e_B before coefficient multiplication: count the swaps needed
// to merge the two index lists, then contract repeated generators with -1.
int blade_sign(unsigned a, unsigned b);

// Blade bitmasks of R_{0,n} in graded-lexicographic order: grade first, then
// lexicographic on the index lists.  This is the public coefficient order.
std::vector<unsigned> graded_lex_blades(int n);

// Printable name of a blade, e.g. "1", "e1", "e13".
std::string blade_name(unsigned blade);

// ============================================================================
// Multivector
//
// Dense element of R_{0,n}, 1 <= n <= 8.  Coefficients are stored indexed by
// blade bitmask; graded_lex_blades() gives the external ordering.
// ============================================================================

class Multivector {
  public:
    explicit Multivector(int n);
    static Multivector scalar(int n, double v);
    static Multivector basis(int n, unsigned blade, double v = 1.0);

    int dim() const { return n_; }
    std::size_t size() const { return c_.size(); }

    double coeff(unsigned blade) const { return c_[blade]; }
    double& coeff(unsigned blade) { return c_[blade]; }

    Multivector operator+(const Multivector& o) const;
    Multivector operator-(const Multivector& o) const;
    Multivector operator-() const;
    Multivector operator*(const Multivector& o) const; // Clifford product
    Multivector operator*(double s) const;
    Multivector& operator+=(const Multivector& o);

    // Euclidean norm of the coefficient vector.
    double norm() const;

    double scalar_part() const { return c_[0]; }

    bool approx_equal(const Multivector& o, double tol) const;

  private:
    int n_;
    std::vector<double> c_;
};

inline Multivector operator*(double s, const Multivector& m) { return m * s; }

// ============================================================================
// Paravector
//
// x = x0 + x_1 e_1 + ... + x_n e_n, the points of R^{n+1} inside R_{0,n}.
// ============================================================================

struct Paravector {
    double x0 = 0.0;
    std::vector<double> v; // spatial components, size n

    Paravector() = default;
    Paravector(double x0_, std::vector<double> v_) : x0(x0_), v(std::move(v_)) {}

    int dim() const { return static_cast<int>(v.size()); }

    double vec_norm_sq() const;
    double vec_norm() const { return std::sqrt(vec_norm_sq()); }
    double norm_sq() const { return x0 * x0 + vec_norm_sq(); }
    double norm() const { return std::sqrt(norm_sq()); }

    Paravector conjugate() const;

    Multivector to_multivector() const;
};

// conj(x) / |x|^2; throws singular_error at 0.
Multivector paravector_inverse(const Paravector& x);

// Clifford product of two paravectors (general multivector: the slices of the
// factors need not agree).
Multivector pv_mul(const Paravector& a, const Paravector& b);

// x^k for k >= 0.  Powers of a paravector stay in its slice plane.
Paravector pv_pow(const Paravector& x, int k);

// ============================================================================
// SliceTriple
//
// x = u + I v with v = |vec(x)| >= 0 and I the unit spatial axis; for v = 0
// the axis defaults to e_1 so the decomposition is total.
// ============================================================================

struct SliceTriple {
    double u = 0.0;
    double v = 0.0;               // >= 0
    std::vector<double> axis;     // unit vector, size n
};

SliceTriple slice_decompose(const Paravector& x);
Paravector slice_compose(const SliceTriple& s);

// ============================================================================
// Quaternion
//
// Hamilton units: e1 e2 = e3, e2 e3 = e1, e3 e1 = e2.
// ============================================================================

struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    Quaternion() = default;
    Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    static Quaternion real(double r) { return {r, 0, 0, 0}; }
    static Quaternion from_vec3(const std::array<double, 3>& v) { return {0, v[0], v[1], v[2]}; }

    Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    Quaternion operator-() const { return {-w, -x, -y, -z}; }
    Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }

    Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    Quaternion conjugate() const { return {w, -x, -y, -z}; }
    double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }
    double vec_norm_sq() const { return x * x + y * y + z * z; }
    double vec_norm() const { return std::sqrt(vec_norm_sq()); }

    Quaternion vec() const { return {0, x, y, z}; }
    std::array<double, 3> vec3() const { return {x, y, z}; }

    Quaternion inverse() const;

    double coord(int k) const;      // k = 0..3
    void set_coord(int k, double val);
};

inline Quaternion operator*(double s, const Quaternion& q) { return q * s; }

SliceTriple slice_decompose(const Quaternion& q);
Quaternion q_slice_compose(const SliceTriple& s);

// q^k for k >= 0.
Quaternion q_pow(const Quaternion& q, int k);

// u + I v as a quaternion, I a unit 3-vector.
Quaternion q_from_slice(double u, const std::array<double, 3>& axis, double v);

// ============================================================================
// Quaternion <-> Clifford embedding
//
// H sits inside R_{0,n} (n >= 2) as span{1, e1, e2, e12} with e3 <-> e1 e2;
// the span is closed under the Clifford product and the products agree with
// Hamilton's.
// ============================================================================

Multivector quat_to_mv(const Quaternion& q, int n);
Quaternion mv_to_quat(const Multivector& m, double tol = 1e-12);

// Paravector in R^{3+1} <-> quaternion coordinates (x0,x1,x2,x3).
Quaternion pv_to_quat(const Paravector& p);
Paravector quat_to_pv(const Quaternion& q);

} // namespace slicekit
