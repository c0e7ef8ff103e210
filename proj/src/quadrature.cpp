#include "slicekit/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "slicekit/errors.hpp"

namespace slicekit {

namespace {

const double kPi = 3.14159265358979323846;

// ============================================================================
// Node generation
// ============================================================================

struct Angular {
    // flattened (psi, theta, phi) grid: direction, area density, weight
    std::vector<std::array<double, 4>> dir;
    std::vector<double> weight; // sin^2 psi sin theta w_psi w_theta w_phi
};

// Gauss-Legendre mapped onto (lo, hi).
void gl_mapped(int n, double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
    auto [t, u] = gauss_legendre(n);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 0.5 * (hi - lo) * t[i] + 0.5 * (hi + lo);
        w[i] = 0.5 * (hi - lo) * u[i];
    }
}

Angular make_angular(int n_psi, int n_theta, int n_phi) {
    if (n_psi < 2 || n_theta < 2 || n_phi < 2)
        throw contract_error("angular grid needs at least two nodes per angle");
    std::vector<double> psi, wpsi, th, wth, ph, wph;
    gl_mapped(n_psi, 0, kPi, psi, wpsi);
    gl_mapped(n_theta, 0, kPi, th, wth);
    gl_mapped(n_phi, 0, 2 * kPi, ph, wph);
    Angular a;
    a.dir.reserve(size_t(n_psi) * n_theta * n_phi);
    a.weight.reserve(a.dir.capacity());
    for (int i = 0; i < n_psi; ++i) {
        double sp = std::sin(psi[i]), cp = std::cos(psi[i]);
        for (int j = 0; j < n_theta; ++j) {
            double st = std::sin(th[j]), ct = std::cos(th[j]);
            for (int k = 0; k < n_phi; ++k) {
                a.dir.push_back({cp, sp * st * std::cos(ph[k]), sp * st * std::sin(ph[k]),
                                 sp * ct});
                a.weight.push_back(sp * sp * st * wpsi[i] * wth[j] * wph[k]);
            }
        }
    }
    return a;
}

// ============================================================================
// Deterministic chunked summation, shared by the serial and OpenMP paths
// ============================================================================

constexpr size_t kChunk = 512;

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* cap = std::getenv("SLICEKIT_THREADS")) {
        int t = std::atoi(cap);
        if (t > 0) omp_set_num_threads(t);
    }
#endif
}

Quaternion chunk_partial(size_t begin, size_t end, const std::function<Quaternion(size_t)>& eval) {
    Quaternion acc{0, 0, 0, 0};
    for (size_t i = begin; i < end; ++i) acc = acc + eval(i);
    return acc;
}

Quaternion chunked_sum(size_t n, const std::function<Quaternion(size_t)>& eval, bool parallel) {
    size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<Quaternion> part(chunks, Quaternion{0, 0, 0, 0});
    std::vector<std::exception_ptr> errs(chunks);
    if (parallel) {
        apply_thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long c = 0; c < (long long)chunks; ++c) {
            size_t begin = (size_t)c * kChunk;
            try {
                part[c] = chunk_partial(begin, std::min(n, begin + kChunk), eval);
            } catch (...) {
                errs[c] = std::current_exception();
            }
        }
    } else {
        for (size_t c = 0; c < chunks; ++c) {
            size_t begin = c * kChunk;
            try {
                part[c] = chunk_partial(begin, std::min(n, begin + kChunk), eval);
            } catch (...) {
                errs[c] = std::current_exception();
            }
        }
    }
    for (size_t c = 0; c < chunks; ++c)
        if (errs[c]) std::rethrow_exception(errs[c]);
    Quaternion acc{0, 0, 0, 0};
    for (size_t c = 0; c < chunks; ++c) acc = acc + part[c];
    return acc;
}

void require_finite(const Quaternion& v, const char* who, size_t node) {
    if (!std::isfinite(v.w) || !std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
        throw eval_error(std::string(who) + ": non-finite integrand at node " +
                         std::to_string(node));
}

std::vector<SurfaceNode> sphere_nodes(const BallDomain& dom, int n_psi, int n_theta, int n_phi) {
    Angular ang = make_angular(n_psi, n_theta, n_phi);
    double r3 = dom.radius * dom.radius * dom.radius;
    std::vector<SurfaceNode> nodes(ang.dir.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        const auto& w = ang.dir[i];
        nodes[i].pos = dom.center + Quaternion{w[0], w[1], w[2], w[3]} * dom.radius;
        nodes[i].normal = w;
        nodes[i].weight = r3 * ang.weight[i];
    }
    return nodes;
}

Quaternion surface_sum(const BallDomain& domain, const SurfaceRule& rule,
                       const SurfaceIntegrand& integrand, bool parallel) {
    std::vector<SurfaceNode> local;
    const std::vector<SurfaceNode>* nodes = &rule.nodes;
    if (rule.nodes.empty()) {
        local = sphere_nodes(domain, rule.n_psi, rule.n_theta, rule.n_phi);
        nodes = &local;
    }
    const std::vector<SurfaceNode>& nd = *nodes;
    return chunked_sum(
        nd.size(),
        [&](size_t i) {
            Quaternion v = integrand(nd[i].pos, nd[i].normal) * nd[i].weight;
            require_finite(v, "surface_integrate", i);
            return v;
        },
        parallel);
}

Quaternion volume_sum(const BallDomain& dom, const Quaternion& anchor, const VolumeRule& rule,
                      const VolumeIntegrand& integrand, bool parallel) {
    Quaternion delta = anchor - dom.center;
    double d2 = delta.norm_sq();
    double r2 = dom.radius * dom.radius;
    if (d2 >= r2 * (1.0 - 1e-12))
        throw contract_error("volume_integrate_singular: anchor must be strictly inside");
    if (rule.n_radial < 2)
        throw contract_error("volume_integrate_singular: needs at least two radial nodes");
    Angular ang = make_angular(rule.n_psi, rule.n_theta, rule.n_phi);
    auto [t, u] = gauss_legendre(rule.n_radial);
    std::vector<double> rt = t, ru = u;
    return chunked_sum(
        ang.dir.size(),
        [&](size_t i) {
            const auto& w = ang.dir[i];
            double od = w[0] * delta.w + w[1] * delta.x + w[2] * delta.y + w[3] * delta.z;
            double R = -od + std::sqrt(od * od + r2 - d2);
            Quaternion omega{w[0], w[1], w[2], w[3]};
            Quaternion acc{0, 0, 0, 0};
            for (size_t k = 0; k < rt.size(); ++k) {
                double rho = 0.5 * R * (rt[k] + 1.0);
                double wr = 0.5 * R * ru[k];
                Quaternion v = integrand(anchor + omega * rho) * (rho * rho * rho * wr);
                acc = acc + v;
            }
            require_finite(acc, "volume_integrate_singular", i);
            return acc * ang.weight[i];
        },
        parallel);
}

} // namespace

// ============================================================================
// Gauss-Legendre nodes
// ============================================================================

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw contract_error("gauss_legendre: n must be positive");
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p2 = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            p2 = n * (t * p1 - p0) / (t * t - 1.0); // P_n'
            double dt = p1 / p2;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        double wi = 2.0 / ((1.0 - t * t) * p2 * p2);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    return {x, w};
}

// ============================================================================
// Domains and rules
// ============================================================================

BallDomain make_ball(const Quaternion& center, double radius) {
    if (radius <= 0) throw contract_error("make_ball: radius must be positive");
    if (center.vec_norm() - radius <= 0)
        throw contract_error("make_ball: closure must avoid the real axis");
    return {center, radius};
}

ContourRule make_contour(std::vector<double> axis, double u0, double v0, double radius, int n) {
    double nn = 0;
    for (double a : axis) nn += a * a;
    if (std::abs(nn - 1.0) > 1e-10) throw contract_error("make_contour: axis must be unit length");
    if (radius <= 0) throw contract_error("make_contour: radius must be positive");
    if (n < 8) throw contract_error("make_contour: need at least 8 nodes");
    return {std::move(axis), u0, v0, radius, n};
}

Multivector contour_integrate(const ContourRule& rule,
                              const std::function<Multivector(const Paravector&)>& integrand) {
    return contour_integrate_sandwich(rule, integrand, {});
}

Multivector contour_integrate_sandwich(const ContourRule& rule,
                                       const std::function<Multivector(const Paravector&)>& lhs,
                                       const std::function<Multivector(const Paravector&)>& rhs) {
    int n = (int)rule.axis.size();
    Multivector acc(n);
    double h = 2.0 * kPi / rule.n;
    for (int k = 0; k < rule.n; ++k) {
        double theta = h * k;
        double u = rule.u0 + rule.radius * std::cos(theta);
        double v = rule.v0 + rule.radius * std::sin(theta);
        std::vector<double> vec(n);
        for (int i = 0; i < n; ++i) vec[i] = v * rule.axis[i];
        Paravector s(u, vec);
        // ds_I = rho e^{I theta} d theta
        Multivector m(n);
        m.coeff(0) = rule.radius * std::cos(theta);
        for (int i = 0; i < n; ++i) m.coeff(1u << i) = rule.radius * std::sin(theta) * rule.axis[i];
        Multivector term = lhs(s) * m;
        if (rhs) term = term * rhs(s);
        for (unsigned b = 0; b < (1u << n); ++b)
            if (!std::isfinite(term.coeff(b)))
                throw eval_error("contour_integrate: non-finite integrand at node " +
                                 std::to_string(k));
        acc += term * h;
    }
    return acc;
}

SurfaceRule make_surface_rule(const BallDomain& dom, int n_psi, int n_theta, int n_phi) {
    SurfaceRule rule;
    rule.n_psi = n_psi;
    rule.n_theta = n_theta;
    rule.n_phi = n_phi;
    rule.nodes = sphere_nodes(dom, n_psi, n_theta, n_phi);
    return rule;
}

Quaternion surface_integrate(const BallDomain& domain, const SurfaceRule& rule,
                             const SurfaceIntegrand& integrand) {
    return surface_sum(domain, rule, integrand, true);
}

Quaternion volume_integrate_singular(const BallDomain& dom, const Quaternion& anchor,
                                     const VolumeRule& rule, const VolumeIntegrand& integrand) {
    return volume_sum(dom, anchor, rule, integrand, true);
}

namespace serial {

Quaternion surface_integrate(const BallDomain& domain, const SurfaceRule& rule,
                             const SurfaceIntegrand& integrand) {
    return surface_sum(domain, rule, integrand, false);
}

Quaternion volume_integrate_singular(const BallDomain& dom, const Quaternion& anchor,
                                     const VolumeRule& rule, const VolumeIntegrand& integrand) {
    return volume_sum(dom, anchor, rule, integrand, false);
}

} // namespace serial

// ============================================================================
// Push-forward and refinement
// ============================================================================

SurfaceRule push_forward_surface(const DiffeoMap& a, const BallDomain& domain,
                                 const SurfaceRule& rule) {
    if (a.n != 3) throw unsupported_dimension_error("push_forward_surface: needs n = 3");
    const std::vector<SurfaceNode>* nodes = &rule.nodes;
    std::vector<SurfaceNode> local;
    if (rule.nodes.empty()) {
        local = sphere_nodes(domain, rule.n_psi, rule.n_theta, rule.n_phi);
        nodes = &local;
    }
    SurfaceRule out;
    out.n_psi = rule.n_psi;
    out.n_theta = rule.n_theta;
    out.n_phi = rule.n_phi;
    out.nodes.reserve(nodes->size());
    for (const SurfaceNode& nd : *nodes) {
        SurfaceNode img;
        img.pos = diffeo_apply(a, nd.pos);
        if (img.pos.vec_norm() < 1e-12)
            throw domain_error("push_forward_surface: image touches the real axis");
        std::vector<double> xv{nd.pos.x, nd.pos.y, nd.pos.z};
        auto J = jac_forward(a, xv);
        // vector area transform: (n0, vec n) -> det J3 (n0, J3^{-T} vec n);
        // det J3 * J3^{-T} is the cofactor matrix
        double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
        double cof[3][3];
        cof[0][0] = J[1][1] * J[2][2] - J[1][2] * J[2][1];
        cof[0][1] = -(J[1][0] * J[2][2] - J[1][2] * J[2][0]);
        cof[0][2] = J[1][0] * J[2][1] - J[1][1] * J[2][0];
        cof[1][0] = -(J[0][1] * J[2][2] - J[0][2] * J[2][1]);
        cof[1][1] = J[0][0] * J[2][2] - J[0][2] * J[2][0];
        cof[1][2] = -(J[0][0] * J[2][1] - J[0][1] * J[2][0]);
        cof[2][0] = J[0][1] * J[1][2] - J[0][2] * J[1][1];
        cof[2][1] = -(J[0][0] * J[1][2] - J[0][2] * J[1][0]);
        cof[2][2] = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        std::array<double, 4> nn{};
        nn[0] = det * nd.normal[0];
        for (int i = 0; i < 3; ++i) {
            double s = 0;
            for (int j = 0; j < 3; ++j) s += cof[i][j] * nd.normal[j + 1];
            nn[i + 1] = s;
        }
        double len = std::sqrt(nn[0] * nn[0] + nn[1] * nn[1] + nn[2] * nn[2] + nn[3] * nn[3]);
        if (len < 1e-14) throw singular_error("push_forward_surface: degenerate Jacobian");
        for (double& c : nn) c /= len;
        img.normal = nn;
        img.weight = nd.weight * len;
        out.nodes.push_back(img);
    }
    return out;
}

RefinementReport volume_refinement_probe(const BallDomain& dom, const Quaternion& anchor,
                                         const VolumeRule& base, const VolumeIntegrand& integrand,
                                         int levels) {
    if (levels < 2) throw contract_error("volume_refinement_probe: need at least two levels");
    RefinementReport rep;
    VolumeRule rule = base;
    for (int l = 0; l < levels; ++l) {
        rep.values.push_back(volume_integrate_singular(dom, anchor, rule, integrand));
        rule.n_radial *= 2;
        rule.n_psi *= 2;
        rule.n_theta *= 2;
        rule.n_phi *= 2;
    }
    for (size_t i = 1; i < rep.values.size(); ++i)
        rep.deltas.push_back((rep.values[i] - rep.values[i - 1]).norm());
    double scale = 1.0 + rep.values.back().norm();
    rep.converged = rep.deltas.back() <= 0.25 * rep.deltas.front() + 1e-13 * scale;
    return rep;
}

} // namespace slicekit
