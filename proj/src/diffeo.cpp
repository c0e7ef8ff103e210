#include "slicekit/diffeo.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <utility>

#include "slicekit/errors.hpp"

namespace slicekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const DiffeoMap& a, int got) {
    if (got != a.n) throw contract_error(a.name + ": spatial dimension mismatch");
}

void check_domain(const DiffeoMap& a, const Paravector& x) {
    check_dim(a, x.dim());
    if (!a.interval.contains(x.x0)) throw domain_error(a.name + ": x0 outside (s,t)");
    if (!a.domainU.contains(x.v)) throw domain_error(a.name + ": spatial part outside U");
}

// Separable family scaffold: a_i acts on x_i alone, so both Jacobians are
// diagonal and exact closures are one-dimensional.
struct Separable1D {
    std::function<double(double)> f, df, finv, dfinv;
};

DiffeoMap make_separable(std::string name, std::vector<Separable1D> comps, Box U, Box V, Box sample) {
    DiffeoMap a;
    a.name = std::move(name);
    a.n = static_cast<int>(comps.size());
    a.domainU = std::move(U);
    a.codomainV = std::move(V);
    a.sampleU = std::move(sample);
    auto c = std::make_shared<std::vector<Separable1D>>(std::move(comps));
    a.forward = [c](const std::vector<double>& x) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = (*c)[i].f(x[i]);
        return y;
    };
    a.inverse = [c](const std::vector<double>& y) {
        std::vector<double> x(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = (*c)[i].finv(y[i]);
        return x;
    };
    a.inv_partial = [c](int i, int j, const std::vector<double>& y) {
        return (i == j) ? (*c)[i].dfinv(y[i]) : 0.0;
    };
    a.fwd_partial = [c](int i, int j, const std::vector<double>& x) {
        return (i == j) ? (*c)[i].df(x[i]) : 0.0;
    };
    return a;
}

} // namespace

Box box_all(int n) {
    Box b;
    b.sides.assign(n, Interval{});
    return b;
}

Box box_uniform(int n, double lo, double hi) {
    Box b;
    b.sides.assign(n, Interval{lo, hi});
    return b;
}

// ============================================================================
// Built-in families
// ============================================================================

DiffeoMap diffeo_identity(int n) {
    std::vector<Separable1D> comps(n, Separable1D{[](double x) { return x; },
                                                  [](double) { return 1.0; },
                                                  [](double y) { return y; },
                                                  [](double) { return 1.0; }});
    return make_separable("identity", std::move(comps), box_all(n), box_all(n),
                          box_uniform(n, -2.0, 2.0));
}

DiffeoMap diffeo_affine(const std::vector<double>& r, const std::vector<double>& s) {
    if (r.size() != s.size() || r.empty()) throw contract_error("affine: r and s must match in size");
    std::vector<Separable1D> comps;
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double rj = r[j], sj = s[j];
        if (rj == 0.0) throw contract_error("affine: r_j must be nonzero");
        comps.push_back(Separable1D{[rj, sj](double x) { return rj * x + sj; },
                                    [rj](double) { return rj; },
                                    [rj, sj](double y) { return (y - sj) / rj; },
                                    [rj](double) { return 1.0 / rj; }});
    }
    const int n = static_cast<int>(r.size());
    return make_separable("affine", std::move(comps), box_all(n), box_all(n),
                          box_uniform(n, -2.0, 2.0));
}

DiffeoMap diffeo_power(const std::vector<double>& alpha) {
    if (alpha.empty()) throw contract_error("power: empty exponent list");
    std::vector<Separable1D> comps;
    for (double aj : alpha) {
        if (aj == 0.0) throw contract_error("power: alpha_j must be nonzero");
        comps.push_back(Separable1D{[aj](double x) { return std::pow(x, aj); },
                                    [aj](double x) { return aj * std::pow(x, aj - 1.0); },
                                    [aj](double y) { return std::pow(y, 1.0 / aj); },
                                    [aj](double y) { return std::pow(y, 1.0 / aj - 1.0) / aj; }});
    }
    const int n = static_cast<int>(alpha.size());
    return make_separable("power", std::move(comps), box_uniform(n, 0.0, kInf),
                          box_uniform(n, 0.0, kInf), box_uniform(n, 0.1, 2.5));
}

DiffeoMap diffeo_exp(int n) {
    std::vector<Separable1D> comps(n, Separable1D{[](double x) { return std::exp(x); },
                                                  [](double x) { return std::exp(x); },
                                                  [](double y) { return std::log(y); },
                                                  [](double y) { return 1.0 / y; }});
    return make_separable("exp", std::move(comps), box_uniform(n, 0.0, kInf),
                          box_uniform(n, 1.0, kInf), box_uniform(n, 0.05, 3.0));
}

DiffeoMap diffeo_sin(int n) {
    // sin is injective only up to pi/2; sampleU keeps round-trips and
    // quadrature on the invertible branch while the map itself stays
    // evaluable on all of (0, pi).
    const double pi = 3.14159265358979323846;
    std::vector<Separable1D> comps(n, Separable1D{[](double x) { return std::sin(x); },
                                                  [](double x) { return std::cos(x); },
                                                  [](double y) { return std::asin(y); },
                                                  [](double y) { return 1.0 / std::sqrt(1.0 - y * y); }});
    return make_separable("sin", std::move(comps), box_uniform(n, 0.0, pi), box_uniform(n, 0.0, 1.0),
                          box_uniform(n, 0.05, pi / 2 - 0.05));
}

DiffeoMap diffeo_log(int n) {
    std::vector<Separable1D> comps(n, Separable1D{[](double x) { return std::log(x); },
                                                  [](double x) { return 1.0 / x; },
                                                  [](double y) { return std::exp(y); },
                                                  [](double y) { return std::exp(y); }});
    return make_separable("log", std::move(comps), box_uniform(n, 0.0, kInf), box_all(n),
                          box_uniform(n, 0.2, 4.0));
}

DiffeoMap diffeo_rotation(const Quaternion& c) {
    if (std::abs(c.norm() - 1.0) > 1e-10) throw contract_error("rotation: c must be unit");
    // R_ij = <e_i, c e_j conj(c)>: the 3x3 matrix of vec x -> c vec(x) conj(c).
    auto R = std::make_shared<std::array<std::array<double, 3>, 3>>();
    for (int j = 0; j < 3; ++j) {
        Quaternion ej{};
        ej.set_coord(j + 1, 1.0);
        const Quaternion im = c * ej * c.conjugate();
        (*R)[0][j] = im.x;
        (*R)[1][j] = im.y;
        (*R)[2][j] = im.z;
    }
    DiffeoMap a;
    a.name = "rotation";
    a.n = 3;
    a.domainU = box_all(3);
    a.codomainV = box_all(3);
    a.sampleU = box_uniform(3, -2.0, 2.0);
    a.forward = [R](const std::vector<double>& x) {
        std::vector<double> y(3, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) y[i] += (*R)[i][j] * x[j];
        return y;
    };
    a.inverse = [R](const std::vector<double>& y) {
        std::vector<double> x(3, 0.0); // R is orthogonal: inverse = transpose
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) x[i] += (*R)[j][i] * y[j];
        return x;
    };
    a.inv_partial = [R](int i, int j, const std::vector<double>&) { return (*R)[j][i]; };
    a.fwd_partial = [R](int i, int j, const std::vector<double>&) { return (*R)[i][j]; };
    return a;
}

DiffeoMap make_custom_diffeo(std::string name, int n,
                             std::function<std::vector<double>(const std::vector<double>&)> forward,
                             std::function<std::vector<double>(const std::vector<double>&)> inverse,
                             Box domainU, Box codomainV, Box sampleU) {
    DiffeoMap a;
    a.name = std::move(name);
    a.n = n;
    a.domainU = std::move(domainU);
    a.codomainV = std::move(codomainV);
    a.sampleU = std::move(sampleU);
    a.forward = forward;
    a.inverse = inverse;
    a.inv_partial = [inverse](int i, int j, const std::vector<double>& y) {
        const double h = 1e-5 * std::max(1.0, std::abs(y[j]));
        std::vector<double> p(y), m(y);
        p[j] += h;
        m[j] -= h;
        return (inverse(p)[i] - inverse(m)[i]) / (2 * h);
    };
    a.fwd_partial = [forward](int i, int j, const std::vector<double>& x) {
        const double h = 1e-5 * std::max(1.0, std::abs(x[j]));
        std::vector<double> p(x), m(x);
        p[j] += h;
        m[j] -= h;
        return (forward(p)[i] - forward(m)[i]) / (2 * h);
    };
    return a;
}

// ============================================================================
// Operations
// ============================================================================

Paravector diffeo_apply(const DiffeoMap& a, const Paravector& x) {
    check_domain(a, x);
    return Paravector(x.x0, a.forward(x.v));
}

Quaternion diffeo_apply(const DiffeoMap& a, const Quaternion& x) {
    return pv_to_quat(diffeo_apply(a, quat_to_pv(x)));
}

Paravector diffeo_inverse_apply(const DiffeoMap& a, const Paravector& y) {
    check_dim(a, y.dim());
    if (!a.interval.contains(y.x0)) throw domain_error(a.name + ": y0 outside (s,t)");
    if (!a.codomainV.contains(y.v)) throw domain_error(a.name + ": spatial part outside V");
    return Paravector(y.x0, a.inverse(y.v));
}

Quaternion diffeo_inverse_apply(const DiffeoMap& a, const Quaternion& y) {
    return pv_to_quat(diffeo_inverse_apply(a, quat_to_pv(y)));
}

std::vector<double> material_velocity(const DiffeoMap& a, const Paravector& x) {
    check_domain(a, x);
    const std::vector<double> y = a.forward(x.v);
    std::vector<double> u(a.n, 0.0);
    for (int i = 0; i < a.n; ++i) {
        for (int j = 0; j < a.n; ++j) u[i] += y[j] * a.inv_partial(i, j, y);
        if (!std::isfinite(u[i]))
            throw domain_error(a.name + ": velocity undefined at this point");
    }
    return u;
}

std::vector<double> material_velocity(const DiffeoMap& a, const Quaternion& x) {
    return material_velocity(a, quat_to_pv(x));
}

double det_matrix(std::vector<std::vector<double>> m) {
    const int n = static_cast<int>(m.size());
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (m[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            const double t = m[r][col] / m[col][col];
            for (int cc = col; cc < n; ++cc) m[r][cc] -= t * m[col][cc];
        }
    }
    return det;
}

std::vector<std::vector<double>> jac_forward(const DiffeoMap& a, const std::vector<double>& x) {
    std::vector<std::vector<double>> J(a.n, std::vector<double>(a.n, 0.0));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) J[i][j] = a.fwd_partial(i, j, x);
    return J;
}

std::vector<std::vector<double>> jac_inverse(const DiffeoMap& a, const std::vector<double>& y) {
    std::vector<std::vector<double>> J(a.n, std::vector<double>(a.n, 0.0));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) J[i][j] = a.inv_partial(i, j, y);
    return J;
}

double volume_factor(const DiffeoMap& a, const Paravector& x) {
    check_dim(a, x.dim());
    const double d = det_matrix(jac_forward(a, x.v));
    if (!std::isfinite(d) || std::abs(d) < 1e-13)
        throw singular_error(a.name + ": Jacobian is singular here");
    return std::abs(d);
}

double volume_factor(const DiffeoMap& a, const Quaternion& x) {
    return volume_factor(a, quat_to_pv(x));
}

} // namespace slicekit
