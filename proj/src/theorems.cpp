#include "slicekit/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "slicekit/errors.hpp"
#include "slicekit/jets.hpp"
#include "slicekit/kernels.hpp"
#include "slicekit/moebius.hpp"
#include "slicekit/operators.hpp"
#include "slicekit/rng.hpp"

namespace slicekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

double rel_err(const Quaternion& got, const Quaternion& want) {
    return (got - want).norm() / (1.0 + want.norm());
}

VerificationReport make_report(const CheckCase& c, double residual, long long nodes, double ms) {
    VerificationReport r;
    r.suite = c.suite;
    r.case_id = c.id;
    r.quantity = c.quantity;
    r.residual = residual;
    r.tolerance = c.tolerance;
    r.nodes = nodes;
    r.runtime_ms = ms;
    r.pass = residual <= c.tolerance; // NaN compares false
    return r;
}

// ============================================================================
// Random corpus helpers
// ============================================================================

Quaternion rand_quat(Rng& rng, double lo = -1.0, double hi = 1.0) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

std::array<double, 3> rand_unit3(Rng& rng) {
    for (;;) {
        std::array<double, 3> v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n < 0.2 || n > 1.0) continue;
        for (double& c : v) c /= n;
        return v;
    }
}

// Coefficients shrink geometrically so the series stays O(1) where its
// argument can reach |y| ~ 1/decay.
QPowerSeries rand_qseries(Rng& rng, Side side, int deg, double decay) {
    QPowerSeries s;
    s.side = side;
    double scale = 1.0;
    for (int m = 0; m <= deg; ++m) {
        s.coeffs.push_back(rand_quat(rng) * scale);
        scale *= decay;
    }
    return s;
}

Multivector rand_mv(Rng& rng, int n) {
    Multivector m(n);
    for (unsigned b = 0; b < (1u << n); ++b) m.coeff(b) = rng.uniform(-1, 1);
    return m;
}

MPowerSeries rand_mseries(Rng& rng, int n, Side side, int deg, double decay) {
    MPowerSeries s;
    s.n = n;
    s.side = side;
    double scale = 1.0;
    for (int m = 0; m <= deg; ++m) {
        s.coeffs.push_back(rand_mv(rng, n) * scale);
        scale *= decay;
    }
    return s;
}

// Largest image magnitude the series will ever see, over the closed domain.
double image_bound(const DiffeoMap& a, const BallDomain& dom, std::uint64_t seed) {
    Rng rng(seed ^ 0xB0DEu);
    double bound = 1.0;
    for (int i = 0; i < 128; ++i) {
        Quaternion d = rand_quat(rng);
        double n = d.norm();
        if (n < 1e-6) continue;
        Quaternion x = dom.center + d * (dom.radius * rng.uniform(0.0, 1.0) / n);
        std::vector<double> xv{x.x, x.y, x.z};
        if (!a.domainU.contains(xv) || !a.interval.contains(x.w)) continue;
        bound = std::max(bound, diffeo_apply(a, x).norm());
    }
    return bound * 1.05;
}

Quaternion ball_point(Rng& rng, const BallDomain& dom, double lo, double hi) {
    for (;;) {
        Quaternion d = rand_quat(rng);
        double n = d.norm();
        if (n < 0.15 || n > 1.0) continue;
        return dom.center + d * (dom.radius * rng.uniform(lo, hi) / n);
    }
}

// Points at radius fraction [lo, hi] of the ball that stay inside the map's
// chart and keep both x and a(x) off the real axis.
std::vector<Quaternion> sample_points(Rng& rng, const BallDomain& dom, const DiffeoMap& a,
                                      int count, double lo, double hi) {
    std::vector<Quaternion> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 100000) throw contract_error("sample_points: domain rejects everything");
        Quaternion x = ball_point(rng, dom, lo, hi);
        std::vector<double> xv{x.x, x.y, x.z};
        if (!a.domainU.contains(xv) || !a.interval.contains(x.w)) continue;
        if (x.vec_norm() < 0.2) continue;
        if (diffeo_apply(a, x).vec_norm() < 0.2) continue;
        out.push_back(x);
    }
    return out;
}

// Image-ball analogue: draws q in the shell [lo, hi] x radius of the image
// ball and returns the preimages a^{-1}(q).
std::vector<Quaternion> sample_points_image(Rng& rng, const BallDomain& dom, const DiffeoMap& a,
                                            int count, double lo, double hi) {
    std::vector<Quaternion> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 100000)
            throw contract_error("sample_points_image: image ball rejects everything");
        const Quaternion q = ball_point(rng, dom, lo, hi);
        if (q.vec_norm() < 0.2) continue;
        Quaternion x;
        try {
            x = diffeo_inverse_apply(a, q);
        } catch (const error&) {
            continue;
        }
        if (x.vec_norm() < 0.2) continue;
        out.push_back(x);
    }
    return out;
}

// Largest argument magnitude a series composed against the ball can see.
double ball_bound(const BallDomain& dom) { return dom.center.norm() + 1.5 * dom.radius; }

// ============================================================================
// Case function pairs
// ============================================================================

struct CasePair {
    QJet f, g;
    std::function<Quaternion(const Quaternion&)> fv, gv;
};

QJet series_jet(const QPowerSeries& l, const QPowerSeries& r, const DiffeoMap& a, bool exact,
                double h, bool richardson) {
    QJet composed = qjet_compose_diffeo(qjet_add(qjet_from_series(l), qjet_from_series(r)), a);
    if (exact) return composed;
    return qjet_from_fn(composed.value, FDConfig{h, richardson});
}

// Exact members of Ker(D_u) for the separable families:
//   w1 = a_2(x_2) / a_1(x_1),   w2 = e^{-x0} a_3(x_3),
// since u_i = a_i / a_i' turns D_u w into a_2/a_1 - a_2/a_1 resp.
// -w2 + w2.  Rotations share the identity's velocity u = vec x, so they
// borrow its components.
CasePair build_du_pair(const DiffeoMap& family, std::uint64_t seed) {
    const DiffeoMap a = (family.name == "rotation") ? diffeo_identity(3) : family;
    Rng rng(seed ^ 0xD0u);
    const Quaternion c1 = rand_quat(rng), c2 = rand_quat(rng);
    const Quaternion c3 = rand_quat(rng), c4 = rand_quat(rng);

    auto comp = [a](const Quaternion& x, int i) {
        std::vector<double> xv{x.x, x.y, x.z};
        return a.forward(xv)[i - 1];
    };
    auto dcomp = [a](const Quaternion& x, int i) {
        std::vector<double> xv{x.x, x.y, x.z};
        return a.fwd_partial(i - 1, i - 1, xv);
    };
    auto w1 = [comp](const Quaternion& x) { return comp(x, 2) / comp(x, 1); };
    auto dw1 = [comp, dcomp](int k, const Quaternion& x) -> double {
        if (k == 1) return -comp(x, 2) * dcomp(x, 1) / (comp(x, 1) * comp(x, 1));
        if (k == 2) return dcomp(x, 2) / comp(x, 1);
        return 0.0;
    };
    auto w2 = [comp](const Quaternion& x) { return std::exp(-x.w) * comp(x, 3); };
    auto dw2 = [comp, dcomp](int k, const Quaternion& x) -> double {
        if (k == 0) return -std::exp(-x.w) * comp(x, 3);
        if (k == 3) return std::exp(-x.w) * dcomp(x, 3);
        return 0.0;
    };

    CasePair P;
    P.f.value = [=](const Quaternion& x) { return c1 * w1(x) + c2 * w2(x); };
    P.f.partial = [=](int k, const Quaternion& x) { return c1 * dw1(k, x) + c2 * dw2(k, x); };
    P.g.value = [=](const Quaternion& x) { return c3 * w1(x) + c4 * w2(x); };
    P.g.partial = [=](int k, const Quaternion& x) { return c3 * dw1(k, x) + c4 * dw2(k, x); };
    P.fv = P.f.value;
    P.gv = P.g.value;
    return P;
}

CasePair build_pair(const CheckCase& c) {
    CasePair P;
    if (c.builtin == "one") {
        P.f = qjet_const(Quaternion::real(1.0));
        P.g = qjet_const(Quaternion{});
    } else if (c.builtin == "du_kernel_pair") {
        return build_du_pair(c.a, c.seed);
    } else if (c.builtin.empty()) {
        P.f = series_jet(c.f_left, c.f_right, c.a, c.exact_jets, c.fd_step, c.richardson);
        P.g = series_jet(c.g_left, c.g_right, c.a, c.exact_jets, c.fd_step, c.richardson);
    } else {
        throw contract_error("unknown builtin '" + c.builtin + "'");
    }
    P.fv = P.f.value;
    P.gv = P.g.value;
    return P;
}

// ============================================================================
// Integral assemblies
//
// assemble() accumulates boundary + kernel volume + (optionally) operator
// volume of the reproducing formulas.  The G variant integrates over the
// ball itself.  The Ha/Du variants integrate every group in image
// coordinates over an image ball dom = a(Omega): the kernel volume is only
// conditionally convergent (its hom(-4) core has an even, mean-zero angular
// part), so its principal value must be taken over balls around a(x).
// Anchoring the singular rule in the image realizes exactly that; a
// pulled-back source-ball rule would shift the value by a finite,
// resolution-independent shape offset.  f, g and the operators stay
// evaluated at source points a^{-1}(node).  Operator blocks:
//    G:  2 [ A(y,x) G[f]  -  G_r[g] A(x,y) ]
//    Ha: 2 [ -A(y, a x) vec(y) H_a f  +  H_{a,r} g vec(y) A(a x, y) ]
//    Du: the same block written through D_u and d0 only,
//        H_a f = (1 + vec a) d0 f - D_u f applied on both slots.
// VolTerm::du_rest keeps just the d0 part, which is what remains of the Du
// block on Ker(D_u) test pairs.
// ============================================================================

enum class VolTerm { none, bp, du_rest };

struct Assembly {
    Quaternion value{};
    long long nodes = 0;
};

Assembly assemble(OpVariant v, const DiffeoMap& a, const CasePair& P, const BallDomain& dom,
                  const Quaternion& x, int n_ang, int n_rad, VolTerm term) {
    Assembly out;
    const bool source_lane = (v == OpVariant::G);
    const SurfaceRule base = make_surface_rule(dom, n_ang, n_ang, n_ang);
    const Quaternion xi = source_lane ? x : diffeo_apply(a, x);
    const auto src = [&](const Quaternion& q) { return source_lane ? q : diffeo_inverse_apply(a, q); };

    out.value += surface_integrate(
        dom, base, [&](const Quaternion& sig, const std::array<double, 4>& n) {
            const Quaternion tau = src(sig);
            const Quaternion nu = nu_weight(sig, n);
            return (P.gv(tau) * nu * kernel_A(xi, sig) - kernel_A(sig, xi) * nu * P.fv(tau)) *
                   sig.vec_norm_sq();
        });
    out.nodes += static_cast<long long>(base.nodes.size());

    const bool inside = (xi - dom.center).norm() < dom.radius;
    const Quaternion anchor = inside ? xi : dom.center;
    const VolumeRule vrule{n_rad, n_ang, n_ang, n_ang};
    const long long vol_nodes = static_cast<long long>(n_rad) * n_ang * n_ang * n_ang;

    out.value += volume_integrate_singular(dom, anchor, vrule, [&](const Quaternion& y) {
        const Quaternion s = src(y);
        return kernel_B(y, xi) * P.fv(s) + P.gv(s) * kernel_C(xi, y);
    });
    out.nodes += vol_nodes;

    if (term == VolTerm::none) return out;

    VolumeIntegrand op;
    if (v == OpVariant::G) {
        op = [&](const Quaternion& y) {
            return kernel_A(y, xi) * apply_G(P.f, y) - apply_G_r(P.g, y) * kernel_A(xi, y);
        };
    } else if (v == OpVariant::Ha) {
        op = [&](const Quaternion& y) {
            const Quaternion s = src(y);
            const Quaternion vy = y.vec();
            return -(kernel_A(y, xi) * vy * apply_H_a(a, P.f, s)) +
                   apply_H_ar(a, P.g, s) * vy * kernel_A(xi, y);
        };
    } else if (term == VolTerm::bp) { // Du, full block
        op = [&](const Quaternion& y) {
            const Quaternion s = src(y);
            const Quaternion vy = y.vec();
            const Quaternion one_vy = Quaternion::real(1.0) + vy;
            return kernel_A(y, xi) * vy * (apply_D_u(a, P.f, s) - one_vy * P.f.partial(0, s)) +
                   (P.g.partial(0, s) * one_vy - apply_D_u(a, P.g, s)) * vy * kernel_A(xi, y);
        };
    } else { // Du, d0 remainder on Ker(D_u) pairs
        op = [&](const Quaternion& y) {
            const Quaternion s = src(y);
            const Quaternion vy = y.vec();
            const Quaternion one_vy = Quaternion::real(1.0) + vy;
            return -(kernel_A(y, xi) * vy * (one_vy * P.f.partial(0, s))) +
                   (P.g.partial(0, s) * one_vy) * vy * kernel_A(xi, y);
        };
    }
    out.value += volume_integrate_singular(dom, anchor, vrule, op) * 2.0;
    out.nodes += vol_nodes;
    return out;
}

// Boundary integral of g nu f against its volume form.
struct StokesPair {
    Quaternion lhs{}, rhs{};
    long long nodes = 0;
};

StokesPair assemble_stokes(OpVariant v, const DiffeoMap& a, const CasePair& P,
                           const BallDomain& dom, int n_ang, int n_rad) {
    StokesPair out;
    const bool source_lane = (v == OpVariant::G);
    const SurfaceRule base = make_surface_rule(dom, n_ang, n_ang, n_ang);

    if (source_lane) {
        out.lhs = surface_integrate(dom, base,
                                    [&](const Quaternion& tau, const std::array<double, 4>& n) {
                                        return P.gv(tau) * nu_weight(tau, n) * P.fv(tau);
                                    });
    } else {
        const SurfaceRule pushed = push_forward_surface(a, dom, base);
        Quaternion acc{};
        for (std::size_t i = 0; i < base.nodes.size(); ++i) {
            const Quaternion& tau = base.nodes[i].pos;
            acc += P.gv(tau) * nu_weight(pushed.nodes[i].pos, pushed.nodes[i].normal) * P.fv(tau) *
                   pushed.nodes[i].weight;
        }
        out.lhs = acc;
    }
    out.nodes += static_cast<long long>(base.nodes.size());

    const VolumeRule vrule{n_rad, n_ang, n_ang, n_ang};
    const long long vol_nodes = static_cast<long long>(n_rad) * n_ang * n_ang * n_ang;

    if (source_lane) {
        out.rhs = volume_integrate_singular(dom, dom.center, vrule, [&](const Quaternion& y) {
                      return P.gv(y) * y.vec() * P.fv(y) * (4.0 / y.vec_norm_sq());
                  }) +
                  volume_integrate_singular(dom, dom.center, vrule, [&](const Quaternion& y) {
                      return (apply_G_r(P.g, y) * P.fv(y) + P.gv(y) * apply_G(P.f, y)) *
                             (2.0 / y.vec_norm_sq());
                  });
        out.nodes += 2 * vol_nodes;
        return out;
    }

    out.rhs = volume_integrate_singular(dom, dom.center, vrule, [&](const Quaternion& y) {
        const Quaternion ay = diffeo_apply(a, y);
        const Quaternion va = ay.vec();
        return P.gv(y) * va * P.fv(y) * (4.0 * volume_factor(a, y) / va.norm_sq());
    });
    if (v == OpVariant::Ha) {
        out.rhs += volume_integrate_singular(dom, dom.center, vrule, [&](const Quaternion& y) {
            const Quaternion ay = diffeo_apply(a, y);
            const Quaternion va = ay.vec();
            return (apply_H_ar(a, P.g, y) * va * P.fv(y) + P.gv(y) * va * apply_H_a(a, P.f, y)) *
                   (-2.0 * volume_factor(a, y) / va.norm_sq());
        });
        out.nodes += 2 * vol_nodes;
    } else {
        out.rhs += volume_integrate_singular(dom, dom.center, vrule, [&](const Quaternion& y) {
            const Quaternion ay = diffeo_apply(a, y);
            const Quaternion va = ay.vec();
            const Quaternion one_va = Quaternion::real(1.0) + va;
            return (P.g.partial(0, y) * one_va * va * P.fv(y) +
                    P.gv(y) * va * one_va * P.f.partial(0, y)) *
                   (-2.0 * volume_factor(a, y) / va.norm_sq());
        });
        out.rhs += volume_integrate_singular(dom, dom.center, vrule, [&](const Quaternion& y) {
            const Quaternion ay = diffeo_apply(a, y);
            const Quaternion va = ay.vec();
            return (apply_D_u(a, P.g, y) * va * P.fv(y) + P.gv(y) * va * apply_D_u(a, P.f, y)) *
                   (2.0 * volume_factor(a, y) / va.norm_sq());
        });
        out.nodes += 3 * vol_nodes;
    }
    return out;
}

// Shared quantity dispatch for the reproducing-formula checks.
VerificationReport run_reproducing(const CheckCase& c, OpVariant v, VolTerm term) {
    const auto t0 = Clock::now();
    const CasePair P = build_pair(c);
    double worst = 0.0;
    long long nodes = 0;

    if (c.quantity == "interior" || c.quantity == "exterior") {
        for (const Quaternion& x : c.points) {
            const Assembly A = assemble(v, c.a, P, c.domain, x, c.surface_nodes, c.radial_nodes, term);
            const Quaternion probe = (v == OpVariant::G) ? x : diffeo_apply(c.a, x);
            const bool inside = (probe - c.domain.center).norm() < c.domain.radius;
            const Quaternion rhs = inside ? P.fv(x) + P.gv(x) : Quaternion{};
            worst = std::max(worst, rel_err(A.value, rhs));
            nodes += A.nodes;
        }
    } else if (c.quantity == "refinement_quotient") {
        const Quaternion& x = c.points.front();
        const Quaternion rhs = P.fv(x) + P.gv(x);
        const Assembly A0 = assemble(v, c.a, P, c.domain, x, c.surface_nodes, c.radial_nodes, term);
        const Assembly A1 =
            assemble(v, c.a, P, c.domain, x, 2 * c.surface_nodes, 2 * c.radial_nodes, term);
        worst = (A1.value - rhs).norm() / (A0.value - rhs).norm();
        nodes = A0.nodes + A1.nodes;
    } else if (c.quantity == "identity_reduction" || c.quantity == "substitution_reduction") {
        const OpVariant ref = (c.quantity == "identity_reduction") ? OpVariant::G : OpVariant::Ha;
        for (const Quaternion& x : c.points) {
            const Assembly A = assemble(v, c.a, P, c.domain, x, c.surface_nodes, c.radial_nodes, term);
            const Assembly B =
                assemble(ref, c.a, P, c.domain, x, c.surface_nodes, c.radial_nodes, term);
            worst = std::max(worst, rel_err(A.value, B.value));
            nodes += A.nodes + B.nodes;
        }
    } else if (c.quantity == "kernel_residual") {
        for (const Quaternion& x : c.points) {
            worst = std::max(worst, std::max(apply_D_u(c.a, P.f, x).norm(),
                                             apply_D_u(c.a, P.g, x).norm()));
        }
        nodes = static_cast<long long>(c.points.size());
    } else {
        throw contract_error("unknown quantity '" + c.quantity + "' for suite " + c.suite);
    }
    return make_report(c, worst, nodes, elapsed_ms(t0));
}

MoebiusMap case_moebius(const CheckCase& c) {
    const auto& m = c.moebius;
    return make_moebius({m[0], m[1], m[2], m[3]}, {m[4], m[5], m[6], m[7]},
                        {m[8], m[9], m[10], m[11]}, {m[12], m[13], m[14], m[15]});
}

QJet conformal_g_jet(const CheckCase& c) {
    QJet base = qjet_add(qjet_from_series(c.g_left), qjet_from_series(c.g_right));
    if (c.builtin == "nonkernel") {
        Rng rng(c.seed ^ 0xC0FFEEu);
        base = qjet_add(base, qjet_scale_left(rand_quat(rng), qjet_conjugation()));
    }
    if (!c.exact_jets) base = qjet_from_fn(base.value, FDConfig{c.fd_step, c.richardson});
    return base;
}

} // namespace

// ============================================================================
// Checks
// ============================================================================

VerificationReport check_representation(const CheckCase& c) {
    const auto t0 = Clock::now();
    Rng rng(c.seed ^ fnv1a("axes"));
    auto F = [&](const Quaternion& y) { return c.f_left.eval(y) + c.f_right.eval(y); };
    std::vector<std::array<double, 3>> axes;
    for (int i = 0; i < 10; ++i) axes.push_back(rand_unit3(rng));

    double worst = 0.0;
    long long samples = 0;
    for (const Quaternion& p : c.points) {
        const Quaternion y = diffeo_apply(c.a, p);
        const Quaternion want = F(y);
        if (c.quantity == "axis_spread") {
            std::vector<Quaternion> vals;
            for (const auto& J : axes) vals.push_back(representation_eval(F, y, J));
            for (std::size_t i = 0; i < vals.size(); ++i)
                for (std::size_t j = i + 1; j < vals.size(); ++j)
                    worst = std::max(worst, (vals[i] - vals[j]).norm() / (1.0 + want.norm()));
        } else {
            for (const auto& J : axes)
                worst = std::max(worst, rel_err(representation_eval(F, y, J), want));
        }
        samples += static_cast<long long>(axes.size());
    }
    return make_report(c, worst, samples, elapsed_ms(t0));
}

VerificationReport check_splitting(const CheckCase& c) {
    const auto t0 = Clock::now();
    Rng rng(c.seed ^ fnv1a("splitting"));
    const int n = c.fm.n;
    const std::array<double, 3> a3 = rand_unit3(rng);
    const std::vector<double> axis(a3.begin(), a3.end());
    const SplittingFrame frame = make_splitting_frame(axis, complete_axis(axis));

    double worst = 0.0;
    long long samples = 0;
    if (c.quantity == "reassembly") {
        for (int i = 0; i < 50; ++i) {
            const Multivector m = rand_mv(rng, n);
            const Multivector back = splitting_reassemble(frame, splitting_components(frame, m));
            worst = std::max(worst, (back - m).norm() / (1.0 + m.norm()));
            ++samples;
        }
        for (const Paravector& x : c.mpoints) {
            const Multivector m = c.fm.eval(x);
            const Multivector back = splitting_reassemble(frame, splitting_components(frame, m));
            worst = std::max(worst, (back - m).norm() / (1.0 + m.norm()));
            ++samples;
        }
    } else if (c.quantity == "cr_order_defect") {
        const double h = 1e-3;
        const int comps = 1 << (n - 1);
        for (const Paravector& p : c.mpoints) {
            const SliceTriple st = slice_decompose(p);
            for (int A = 0; A < comps; ++A) {
                auto alpha = [&](double u, double v) {
                    const Paravector x = slice_compose({u, v, frame.axis});
                    return splitting_components(frame, c.fm.eval(x))[A].re;
                };
                auto beta = [&](double u, double v) {
                    const Paravector x = slice_compose({u, v, frame.axis});
                    return splitting_components(frame, c.fm.eval(x))[A].im;
                };
                const double r1 = cr_residual(alpha, beta, st.u, st.v, h);
                const double r2 = cr_residual(alpha, beta, st.u, st.v, h / 2);
                samples += 2;
                if (r1 < 1e-12 || r2 < 1e-14) continue; // below truncation floor
                const double order = std::log2(r1 / r2);
                worst = std::max(worst, std::max(0.0, 2.0 - order));
            }
        }
    } else {
        throw contract_error("unknown quantity '" + c.quantity + "' for suite " + c.suite);
    }
    return make_report(c, worst, samples, elapsed_ms(t0));
}

VerificationReport check_power_series_kernel(const CheckCase& c) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    long long samples = 0;
    if (!c.f_left.coeffs.empty()) {
        QJet jet = series_jet(c.f_left, QPowerSeries{}, c.a, c.exact_jets, c.fd_step, c.richardson);
        for (const Quaternion& x : c.points) {
            worst = std::max(worst, apply_H_a(c.a, jet, x).norm() / (1.0 + jet.value(x).norm()));
            ++samples;
        }
    }
    if (!c.f_right.coeffs.empty()) {
        QJet jet = series_jet(QPowerSeries{}, c.f_right, c.a, c.exact_jets, c.fd_step, c.richardson);
        for (const Quaternion& x : c.points) {
            worst = std::max(worst, apply_H_ar(c.a, jet, x).norm() / (1.0 + jet.value(x).norm()));
            ++samples;
        }
    }
    return make_report(c, worst, samples, elapsed_ms(t0));
}

VerificationReport check_slice_cauchy(const CheckCase& c) {
    const auto t0 = Clock::now();
    const double u0 = c.domain.center.w;
    const double v0 = c.domain.center.vec_norm();
    const double rho = c.domain.radius;
    std::vector<double> axisI{1, 0, 0};
    if (v0 > 1e-12) {
        axisI = {c.domain.center.x / v0, c.domain.center.y / v0, c.domain.center.z / v0};
    }

    auto reproduce = [&](const Paravector& y, const std::vector<double>& axis,
                         double r) -> Multivector {
        auto lhs = [&](const Paravector& s) { return cauchy_kernel_S(s, y); };
        auto rhs = [&](const Paravector& s) { return c.fm.eval(s); };
        const ContourRule upper = make_contour(axis, u0, v0, r, c.contour_nodes);
        Multivector acc = contour_integrate_sandwich(upper, lhs, rhs);
        if (v0 > 1e-12) { // mirror circle of the slice section
            const ContourRule lower = make_contour(axis, u0, -v0, r, c.contour_nodes);
            acc += contour_integrate_sandwich(lower, lhs, rhs);
        }
        return acc * (1.0 / (2.0 * kPi));
    };

    double worst = 0.0;
    long long nodes = 0;
    const long long per_call = (v0 > 1e-12 ? 2ll : 1ll) * c.contour_nodes;
    if (c.quantity == "reproduction") {
        for (const Paravector& y : c.mpoints) {
            const Multivector want = c.fm.eval(y);
            worst = std::max(worst,
                             (reproduce(y, axisI, rho) - want).norm() / (1.0 + want.norm()));
            nodes += per_call;
        }
    } else if (c.quantity == "independence_spread") {
        Rng rng(c.seed ^ fnv1a("slice_axis"));
        const auto a2 = rand_unit3(rng);
        const std::vector<double> axisJ(a2.begin(), a2.end());
        const Paravector& y = c.mpoints.front();
        const double norm_scale = 1.0 + c.fm.eval(y).norm();
        std::vector<Multivector> vals;
        for (const auto& axis : {axisI, axisJ}) {
            for (double r : {rho, 0.7 * rho}) {
                vals.push_back(reproduce(y, axis, r));
                nodes += per_call;
            }
        }
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                worst = std::max(worst, (vals[i] - vals[j]).norm() / norm_scale);
    } else {
        throw contract_error("unknown quantity '" + c.quantity + "' for suite " + c.suite);
    }
    return make_report(c, worst, nodes, elapsed_ms(t0));
}

VerificationReport check_borel_pompeiu(const CheckCase& c, OpVariant variant) {
    return run_reproducing(c, variant, VolTerm::bp);
}

VerificationReport check_cauchy_type(const CheckCase& c, OpVariant variant) {
    return run_reproducing(c, variant, variant == OpVariant::Du ? VolTerm::du_rest : VolTerm::none);
}

VerificationReport check_stokes(const CheckCase& c, OpVariant variant) {
    const auto t0 = Clock::now();
    const CasePair P = build_pair(c);
    double worst = 0.0;
    long long nodes = 0;
    if (c.quantity == "identity") {
        const StokesPair S = assemble_stokes(variant, c.a, P, c.domain, c.surface_nodes,
                                             c.radial_nodes);
        worst = (S.lhs - S.rhs).norm() / (1.0 + S.lhs.norm());
        nodes = S.nodes;
    } else if (c.quantity == "identity_reduction" || c.quantity == "substitution_reduction") {
        const OpVariant ref = (c.quantity == "identity_reduction") ? OpVariant::G : OpVariant::Ha;
        const StokesPair A = assemble_stokes(variant, c.a, P, c.domain, c.surface_nodes,
                                             c.radial_nodes);
        const StokesPair B = assemble_stokes(ref, c.a, P, c.domain, c.surface_nodes,
                                             c.radial_nodes);
        worst = std::max(rel_err(A.lhs, B.lhs), rel_err(A.rhs, B.rhs));
        nodes = A.nodes + B.nodes;
    } else {
        throw contract_error("unknown quantity '" + c.quantity + "' for suite " + c.suite);
    }
    return make_report(c, worst, nodes, elapsed_ms(t0));
}

VerificationReport check_kernel_membership(const CheckCase& c) {
    const auto t0 = Clock::now();
    Rng rng(c.seed ^ fnv1a("membership"));
    double worst = 0.0;
    long long samples = 0;
    for (int i = 0; i < 8; ++i) {
        // real parts split so x never meets the sphere through s
        const Paravector s{rng.uniform(-0.6, -0.2), rng.vec(3, 0.4, 1.2)};
        const Paravector x{rng.uniform(0.2, 0.6), rng.vec(3, 0.4, 1.2)};
        if (c.quantity == "residual") {
            const auto r = kernel_membership_residual(s, x, FDConfig{c.fd_step, c.richardson});
            worst = std::max(worst, std::max(r.first, r.second));
            samples += 1;
            continue;
        }
        const bool x_slot = (c.quantity == "x_slot_order_defect");
        if (!x_slot && c.quantity != "s_slot_order_defect")
            throw contract_error("unknown quantity '" + c.quantity + "' for suite " + c.suite);
        const auto r1 = kernel_membership_residual(s, x, FDConfig{c.fd_step, false});
        const auto r2 = kernel_membership_residual(s, x, FDConfig{c.fd_step / 2, false});
        const double e1 = x_slot ? r1.first : r1.second;
        const double e2 = x_slot ? r2.first : r2.second;
        samples += 2;
        if (e1 < 1e-12 || e2 < 1e-14) continue;
        worst = std::max(worst, std::max(0.0, 2.0 - std::log2(e1 / e2)));
    }
    return make_report(c, worst, samples, elapsed_ms(t0));
}

VerificationReport check_conformal(const CheckCase& c, OpVariant variant) {
    const auto t0 = Clock::now();
    const MoebiusMap T = case_moebius(c);
    const QJet g = conformal_g_jet(c);
    double worst = 0.0;
    long long samples = 0;

    if (c.quantity == "covariance") {
        for (const Quaternion& q : c.points) {
            const double r = (variant == OpVariant::G) ? conformal_residual_G(T, g, q)
                                                       : conformal_residual_Ha(T, c.a, g, q);
            worst = std::max(worst, r);
            ++samples;
        }
    } else if (c.quantity == "du_equivalence") {
        for (const Quaternion& q : c.points) {
            const double rha = conformal_residual_Ha(T, c.a, g, q);
            const double rdu = conformal_residual_Du(T, c.a, g, q);
            worst = std::max(worst, std::abs(rha - rdu) / (1.0 + rha));
            ++samples;
        }
    } else if (c.quantity == "kernel_preservation") {
        const CovarianceFactors F = covariance_factors(T);
        if (variant == OpVariant::G) {
            const QJet comp = qjet_scale_left(F.A, qjet_moebius_compose(g, T));
            for (const Quaternion& x : c.points) {
                worst = std::max(worst,
                                 apply_G(comp, x).norm() / (1.0 + comp.value(x).norm()));
                ++samples;
            }
        } else {
            const QJet comp =
                qjet_scale_left(F.A, qjet_compose_diffeo(qjet_moebius_compose(g, T), c.a));
            for (const Quaternion& q : c.points) {
                const Quaternion xq = diffeo_inverse_apply(c.a, q);
                worst = std::max(worst,
                                 apply_H_a(c.a, comp, xq).norm() / (1.0 + comp.value(xq).norm()));
                ++samples;
            }
        }
    } else {
        throw contract_error("unknown quantity '" + c.quantity + "' for suite " + c.suite);
    }
    return make_report(c, worst, samples, elapsed_ms(t0));
}

VerificationReport check_du_relation(const CheckCase& c) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    long long samples = 0;
    if (!c.fm.coeffs.empty()) {
        MJet jet = mjet_compose_diffeo(
            mjet_add(mjet_from_series(c.fm), mjet_pv_conjugation(c.fm.n)), c.a);
        for (const Paravector& x : c.mpoints) {
            worst = std::max(worst, du_relation_residual(c.a, jet, x));
            ++samples;
        }
    } else {
        Rng rng(c.seed ^ fnv1a("du_relation"));
        QJet jet = qjet_compose_diffeo(
            qjet_add(qjet_add(qjet_from_series(c.f_left), qjet_from_series(c.f_right)),
                     qjet_scale_left(rand_quat(rng), qjet_conjugation())),
            c.a);
        for (const Quaternion& x : c.points) {
            worst = std::max(worst, du_relation_residual(c.a, jet, x));
            ++samples;
        }
    }
    return make_report(c, worst, samples, elapsed_ms(t0));
}

// ============================================================================
// Suite corpora
// ============================================================================

namespace {

struct FamilySpec {
    std::string tag;
    DiffeoMap map;
    BallDomain dom;
};

BallDomain tuned_domain(const std::string& family) {
    if (family == "power") return {Quaternion{0, 1.5, 1.5, 1.5}, 0.4};
    if (family == "exp") return {Quaternion{0, 1, 1, 1}, 0.4};
    if (family == "sin") return {Quaternion{0, 0.8, 0.8, 0.8}, 0.3};
    if (family == "log") return {Quaternion{0, 3, 3, 3}, 0.5};
    return {Quaternion{0, 2, 0, 0}, 0.5}; // identity, affine, rotation
}

DiffeoMap tuned_map(const std::string& family, const SuiteParams& p) {
    if (family == "identity") return diffeo_identity(3);
    if (family == "affine") return diffeo_affine({2, 1.5, 0.8}, {0.1, -0.2, 0.3});
    if (family == "power") return diffeo_power(p.alpha);
    if (family == "exp") return diffeo_exp(3);
    if (family == "sin") return diffeo_sin(3);
    if (family == "log") return diffeo_log(3);
    if (family == "rotation") return diffeo_rotation({0.8, 0.6, 0, 0});
    throw contract_error("tuned_map: unknown family " + family);
}

// Image-side integration ball for the reproducing suites: centered at a(c),
// radius contracted by the smallest axis stretch of the Jacobian there so
// the ball stays inside the codomain box.
BallDomain image_ball(const DiffeoMap& map, const BallDomain& src) {
    const std::vector<double> cv{src.center.x, src.center.y, src.center.z};
    double scale = std::numeric_limits<double>::max();
    for (int i = 0; i < 3; ++i) {
        double col = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double d = map.fwd_partial(j, i, cv);
            col += d * d;
        }
        scale = std::min(scale, std::sqrt(col));
    }
    return {diffeo_apply(map, src.center), 0.95 * scale * src.radius};
}

// With `a` set in the config the suite runs that one family on the configured
// domain; otherwise it runs its built-in corpus on per-family tuned domains.
std::vector<FamilySpec> corpus(const SuiteParams& p, std::initializer_list<const char*> names) {
    std::vector<FamilySpec> out;
    if (!p.family.empty()) {
        const auto& dc = p.domain_center;
        out.push_back({p.family, family_from_params(p),
                       BallDomain{Quaternion{dc[0], dc[1], dc[2], dc[3]}, p.domain_radius}});
        return out;
    }
    for (const char* name : names) out.push_back({name, tuned_map(name, p), tuned_domain(name)});
    return out;
}

// The G-variant suites have no pullback, so the family key does not apply;
// the configured domain still does.
std::vector<FamilySpec> g_corpus(const SuiteParams& p) {
    const auto& dc = p.domain_center;
    return {{"identity", diffeo_identity(3),
             BallDomain{Quaternion{dc[0], dc[1], dc[2], dc[3]}, p.domain_radius}}};
}

CheckCase base_case(const std::string& suite, const SuiteParams& p, std::uint64_t seed) {
    CheckCase c;
    c.suite = suite;
    c.seed = seed;
    c.surface_nodes = p.surface_nodes;
    c.radial_nodes = p.radial_nodes;
    c.contour_nodes = p.contour_nodes;
    c.fd_step = p.fd_step;
    c.richardson = p.richardson;
    return c;
}

// Mixed two-sided pair: both operator slots of the reproducing formulas see
// nonzero input.
void fill_mixed_pair(CheckCase& c, Rng& rng, double bound) {
    const double decay = 1.0 / bound;
    c.f_left = rand_qseries(rng, Side::left, 4, decay);
    c.f_right = rand_qseries(rng, Side::right, 3, decay);
    c.g_left = rand_qseries(rng, Side::left, 3, decay);
    c.g_right = rand_qseries(rng, Side::right, 4, decay);
}

void fill_kernel_pair(CheckCase& c, Rng& rng, double bound) {
    const double decay = 1.0 / bound;
    c.f_left = rand_qseries(rng, Side::left, 5, decay);
    c.g_right = rand_qseries(rng, Side::right, 5, decay);
}

std::vector<CheckCase> cases_reproducing(const std::string& suite, const SuiteParams& p,
                                         std::uint64_t seed, OpVariant v, bool cauchy) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a(suite));
    const bool du = (v == OpVariant::Du);
    std::vector<FamilySpec> fams =
        (v == OpVariant::G) ? g_corpus(p) : corpus(p, {"affine", "exp"});
    // Ha/Du integrate over the image ball; a configured domain already names
    // that ball, the tuned source balls get mapped through the family.
    if (v != OpVariant::G && p.family.empty())
        for (FamilySpec& fs : fams) fs.dom = image_ball(fs.map, fs.dom);
    const auto pick = [v](Rng& r, const BallDomain& d, const DiffeoMap& m, int n, double lo,
                          double hi) {
        return (v == OpVariant::G) ? sample_points(r, d, m, n, lo, hi)
                                   : sample_points_image(r, d, m, n, lo, hi);
    };

    for (const FamilySpec& fs : fams) {
        const std::string prefix = (v == OpVariant::G) ? "" : fs.tag + "_";
        CheckCase c = base_case(suite, p, seed);
        c.a = fs.map;
        c.domain = fs.dom;
        c.tolerance = 5e-2;
        if (du) {
            c.builtin = cauchy ? "du_kernel_pair" : "";
        }
        if (c.builtin.empty()) {
            if (cauchy) {
                fill_kernel_pair(c, rng, ball_bound(fs.dom));
            } else {
                fill_mixed_pair(c, rng, ball_bound(fs.dom));
            }
        }

        CheckCase ci = c;
        ci.id = prefix + "interior";
        ci.quantity = "interior";
        ci.points = pick(rng, fs.dom, fs.map, 2, 0.1, 0.45);
        out.push_back(ci);

        CheckCase ce = c;
        ce.id = prefix + "exterior";
        ce.quantity = "exterior";
        ce.points = pick(rng, fs.dom, fs.map, 2, 1.25, 1.45);
        out.push_back(ce);

        if (cauchy && du) {
            CheckCase ck = c;
            ck.id = prefix + "du_membership";
            ck.quantity = "kernel_residual";
            ck.tolerance = 1e-12;
            ck.points = pick(rng, fs.dom, fs.map, 6, 0.1, 0.9);
            out.push_back(ck);
        }
    }

    // calibration: the kernel-volume bracket must reproduce constants alone
    if (v == OpVariant::G && !cauchy) {
        CheckCase cc = base_case(suite, p, seed);
        cc.a = fams.front().map;
        cc.domain = fams.front().dom;
        cc.builtin = "one";
        cc.id = "calibration_interior";
        cc.quantity = "interior";
        cc.tolerance = 5e-2;
        cc.points = sample_points(rng, cc.domain, cc.a, 1, 0.1, 0.3);
        out.push_back(cc);
    }

    // one refinement halves the budgets and must cut the error at least 2x
    {
        CheckCase cr = base_case(suite, p, seed);
        const FamilySpec& fs = fams.front();
        cr.a = fs.map;
        cr.domain = fs.dom;
        cr.id = (v == OpVariant::G) ? "refinement" : fs.tag + "_refinement";
        cr.quantity = "refinement_quotient";
        cr.tolerance = 0.5;
        cr.surface_nodes = std::max(8, p.surface_nodes / 2);
        cr.radial_nodes = std::max(6, p.radial_nodes / 2);
        if (du && cauchy) {
            cr.builtin = "du_kernel_pair";
        } else if (cauchy) {
            fill_kernel_pair(cr, rng, ball_bound(fs.dom));
        } else {
            fill_mixed_pair(cr, rng, ball_bound(fs.dom));
        }
        cr.points = pick(rng, fs.dom, fs.map, 1, 0.1, 0.35);
        out.push_back(cr);
    }

    // exact reductions: Ha at the identity is G, Du rewrites Ha
    if (v == OpVariant::Ha) {
        CheckCase cd = base_case(suite, p, seed);
        cd.a = diffeo_identity(3);
        cd.domain = tuned_domain("identity");
        cd.id = "identity_reduction";
        cd.quantity = "identity_reduction";
        cd.tolerance = 1e-12;
        cd.surface_nodes = 8;
        cd.radial_nodes = 6;
        if (cauchy) {
            fill_kernel_pair(cd, rng, ball_bound(cd.domain));
        } else {
            fill_mixed_pair(cd, rng, ball_bound(cd.domain));
        }
        cd.points = pick(rng, cd.domain, cd.a, 1, 0.1, 0.4);
        CheckCase cdx = cd;
        cdx.points = pick(rng, cd.domain, cd.a, 1, 1.25, 1.45);
        cdx.id = "identity_reduction_exterior";
        out.push_back(cd);
        out.push_back(cdx);
    }
    if (du && !cauchy) {
        CheckCase cs = base_case(suite, p, seed);
        const FamilySpec& fs = fams.front();
        cs.a = fs.map;
        cs.domain = fs.dom;
        cs.id = fs.tag + "_substitution";
        cs.quantity = "substitution_reduction";
        cs.tolerance = 1e-12;
        cs.surface_nodes = 8;
        cs.radial_nodes = 6;
        fill_mixed_pair(cs, rng, ball_bound(fs.dom));
        cs.points = pick(rng, fs.dom, fs.map, 1, 0.1, 0.4);
        out.push_back(cs);
    }
    return out;
}

std::vector<CheckCase> cases_stokes(const std::string& suite, const SuiteParams& p,
                                    std::uint64_t seed, OpVariant v) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a(suite));
    const std::vector<FamilySpec> fams =
        (v == OpVariant::G) ? g_corpus(p) : corpus(p, {"affine", "exp"});

    for (const FamilySpec& fs : fams) {
        CheckCase c = base_case(suite, p, seed);
        c.a = fs.map;
        c.domain = fs.dom;
        c.id = (v == OpVariant::G) ? "identity" : fs.tag + "_identity";
        c.quantity = "identity";
        c.tolerance = 1e-3;
        fill_mixed_pair(c, rng, image_bound(fs.map, fs.dom, seed));
        out.push_back(c);
    }

    if (v == OpVariant::G) {
        // finite-difference jets must agree with the exact path
        CheckCase c = out.front();
        c.id = "identity_fd";
        c.exact_jets = false;
        c.surface_nodes = std::max(8, p.surface_nodes / 2);
        c.radial_nodes = std::max(6, p.radial_nodes / 2);
        out.push_back(c);
    }
    if (v == OpVariant::Ha) {
        CheckCase c = base_case(suite, p, seed);
        c.a = diffeo_identity(3);
        c.domain = tuned_domain("identity");
        c.id = "identity_reduction";
        c.quantity = "identity_reduction";
        c.tolerance = 1e-12;
        c.surface_nodes = 10;
        c.radial_nodes = 8;
        fill_mixed_pair(c, rng, image_bound(c.a, c.domain, seed));
        out.push_back(c);
    }
    if (v == OpVariant::Du) {
        CheckCase c = base_case(suite, p, seed);
        const FamilySpec& fs = fams.front();
        c.a = fs.map;
        c.domain = fs.dom;
        c.id = fs.tag + "_substitution";
        c.quantity = "substitution_reduction";
        c.tolerance = 1e-12;
        c.surface_nodes = 10;
        c.radial_nodes = 8;
        fill_mixed_pair(c, rng, image_bound(fs.map, fs.dom, seed));
        out.push_back(c);
    }
    return out;
}

std::vector<CheckCase> cases_du_relation(const SuiteParams& p, std::uint64_t seed) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a("du_relation"));
    for (const FamilySpec& fs :
         corpus(p, {"identity", "affine", "power", "exp", "sin", "log"})) {
        CheckCase c = base_case("du_relation", p, seed);
        c.a = fs.map;
        c.domain = fs.dom;
        c.id = fs.tag;
        c.quantity = "residual";
        c.tolerance = 1e-12;
        const double decay = 1.0 / image_bound(fs.map, fs.dom, seed);
        c.f_left = rand_qseries(rng, Side::left, 4, decay);
        c.f_right = rand_qseries(rng, Side::right, 4, decay);
        c.points = sample_points(rng, fs.dom, fs.map, 40, 0.1, 0.9);
        out.push_back(c);
    }
    if (p.family.empty()) {
        // Clifford lanes: the relation is dimension-generic
        for (int n : {3, 2}) {
            CheckCase c = base_case("du_relation", p, seed);
            std::vector<double> r(n, 1.5), s(n, 0.2);
            r[0] = 2.0;
            c.a = diffeo_affine(r, s);
            c.id = "clifford_n" + std::to_string(n);
            c.quantity = "residual";
            c.tolerance = 1e-12;
            c.fm = rand_mseries(rng, n, Side::left, 4, 1.0 / 8.0);
            for (int i = 0; i < 25; ++i)
                c.mpoints.push_back(Paravector{rng.uniform(-0.5, 0.5), rng.vec(n, 0.9, 1.8)});
            out.push_back(c);
        }
    }
    return out;
}

std::vector<CheckCase> cases_power_series(const SuiteParams& p, std::uint64_t seed) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a("power_series"));
    for (const FamilySpec& fs :
         corpus(p, {"identity", "affine", "power", "exp", "sin", "log"})) {
        const double decay = 1.0 / image_bound(fs.map, fs.dom, seed);
        CheckCase cl = base_case("power_series", p, seed);
        cl.a = fs.map;
        cl.domain = fs.dom;
        cl.id = fs.tag + "_left";
        cl.quantity = "residual";
        cl.tolerance = 1e-6;
        cl.f_left = rand_qseries(rng, Side::left, 6, decay);
        cl.points = sample_points(rng, fs.dom, fs.map, 100, 0.1, 0.9);
        out.push_back(cl);

        CheckCase cr = base_case("power_series", p, seed);
        cr.a = fs.map;
        cr.domain = fs.dom;
        cr.id = fs.tag + "_right";
        cr.quantity = "residual";
        cr.tolerance = 1e-6;
        cr.f_right = rand_qseries(rng, Side::right, 6, decay);
        cr.points = sample_points(rng, fs.dom, fs.map, 100, 0.1, 0.9);
        out.push_back(cr);
    }
    return out;
}

std::vector<CheckCase> cases_representation(const SuiteParams& p, std::uint64_t seed) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a("representation"));
    for (const FamilySpec& fs : corpus(p, {"identity", "affine", "power", "exp"})) {
        const double decay = 1.0 / image_bound(fs.map, fs.dom, seed);
        CheckCase c = base_case("representation", p, seed);
        c.a = fs.map;
        c.domain = fs.dom;
        c.tolerance = 1e-10;
        c.f_left = rand_qseries(rng, Side::left, 6, decay);
        c.points = sample_points(rng, fs.dom, fs.map, 20, 0.1, 0.9);

        CheckCase cr = c;
        cr.id = fs.tag + "_reproduction";
        cr.quantity = "reproduction";
        out.push_back(cr);

        CheckCase cs = c;
        cs.id = fs.tag + "_axis_spread";
        cs.quantity = "axis_spread";
        out.push_back(cs);
    }
    return out;
}

std::vector<CheckCase> cases_splitting(const SuiteParams& p, std::uint64_t seed) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a("splitting"));
    CheckCase c = base_case("splitting", p, seed);
    c.fm = rand_mseries(rng, 3, Side::left, 5, 1.0 / 4.0);
    for (int i = 0; i < 10; ++i)
        c.mpoints.push_back(Paravector{rng.uniform(-0.8, 0.8), rng.vec(3, 0.3, 1.0)});

    CheckCase ca = c;
    ca.id = "reassembly";
    ca.quantity = "reassembly";
    ca.tolerance = 1e-12;
    out.push_back(ca);

    CheckCase cb = c;
    cb.id = "cr_order";
    cb.quantity = "cr_order_defect";
    cb.tolerance = 0.5;
    cb.mpoints.clear();
    for (int i = 0; i < 6; ++i)
        cb.mpoints.push_back(Paravector{rng.uniform(-0.8, 0.8), rng.vec(3, 0.35, 0.9)});
    out.push_back(cb);
    return out;
}

std::vector<CheckCase> cases_slice_cauchy(const SuiteParams& p, std::uint64_t seed) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a("slice_cauchy"));
    const auto& dc = p.domain_center;
    CheckCase base = base_case("slice_cauchy", p, seed);
    base.domain = BallDomain{Quaternion{dc[0], dc[1], dc[2], dc[3]}, p.domain_radius};
    base.tolerance = 1e-10;
    const double u0 = base.domain.center.w;
    const double v0 = base.domain.center.vec_norm();
    const double rho = base.domain.radius;
    base.fm = rand_mseries(rng, 3, Side::left, 6,
                           1.0 / (std::abs(u0) + v0 + rho + 1.0));
    std::vector<double> axisI{1, 0, 0};
    if (v0 > 1e-12)
        axisI = {base.domain.center.x / v0, base.domain.center.y / v0, base.domain.center.z / v0};

    auto disc_point = [&](const std::vector<double>& axis) {
        const double ang = rng.uniform(0, 2 * kPi);
        const double rr = rho * rng.uniform(0.1, 0.5);
        return slice_compose(
            {u0 + rr * std::cos(ang), v0 + rr * std::sin(ang), axis});
    };

    CheckCase cin = base;
    cin.id = "in_plane";
    cin.quantity = "reproduction";
    for (int i = 0; i < 4; ++i) cin.mpoints.push_back(disc_point(axisI));
    out.push_back(cin);

    CheckCase coff = base;
    coff.id = "off_plane";
    coff.quantity = "reproduction";
    for (int i = 0; i < 4; ++i) {
        const auto a3 = rand_unit3(rng);
        coff.mpoints.push_back(disc_point({a3[0], a3[1], a3[2]}));
    }
    out.push_back(coff);

    CheckCase cball = base;
    cball.id = "ball";
    cball.quantity = "reproduction";
    cball.domain = BallDomain{Quaternion{0.3, 0, 0, 0}, 0.6};
    cball.fm = rand_mseries(rng, 3, Side::left, 6, 1.0 / 2.0);
    for (int i = 0; i < 4; ++i) {
        const auto a3 = rand_unit3(rng);
        const double ang = rng.uniform(0.15 * kPi, 0.85 * kPi); // v > 0
        const double rr = 0.6 * rng.uniform(0.1, 0.5);
        cball.mpoints.push_back(
            slice_compose({0.3 + rr * std::cos(ang), rr * std::sin(ang),
                           std::vector<double>{a3[0], a3[1], a3[2]}}));
    }
    out.push_back(cball);

    CheckCase cspread = base;
    cspread.id = "independence";
    cspread.quantity = "independence_spread";
    {
        const auto a3 = rand_unit3(rng);
        const double ang = rng.uniform(0, 2 * kPi);
        const double rr = rho * rng.uniform(0.1, 0.3); // inside the smaller disc too
        cspread.mpoints.push_back(slice_compose({u0 + rr * std::cos(ang), v0 + rr * std::sin(ang),
                                                 std::vector<double>{a3[0], a3[1], a3[2]}}));
    }
    out.push_back(cspread);
    return out;
}

std::vector<CheckCase> cases_kernel_membership(const SuiteParams& p, std::uint64_t seed) {
    std::vector<CheckCase> out;
    CheckCase cx = base_case("kernel_membership", p, seed);
    cx.id = "x_slot_order";
    cx.quantity = "x_slot_order_defect";
    cx.tolerance = 0.5;
    cx.fd_step = 1e-3; // order is read off the truncation regime
    out.push_back(cx);

    CheckCase cs = cx;
    cs.id = "s_slot_order";
    cs.quantity = "s_slot_order_defect";
    out.push_back(cs);

    CheckCase cr = base_case("kernel_membership", p, seed);
    cr.id = "residual";
    cr.quantity = "residual";
    cr.tolerance = 1e-6;
    out.push_back(cr);
    return out;
}

std::vector<CheckCase> cases_conformal(const std::string& suite, const SuiteParams& p,
                                       std::uint64_t seed, OpVariant v) {
    std::vector<CheckCase> out;
    Rng rng(seed ^ fnv1a(suite));
    const double half = (v == OpVariant::G) ? -1.3 : 1.3; // matching half-family
    std::array<double, 16> canonical{0.4, 0, 0, 0, 0.4 * 2.0 + half, 0, 0, 0,
                                     1,   0, 0, 0, 2.0,              0, 0, 0};
    std::array<double, 16> inversion{0, 0, 0, 0, -10, 0, 0, 0,
                                     1, 0, 0, 0, 0,   0, 0, 0}; // q -> -10 q^{-1}
    const std::array<double, 16> identity_T{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0};
    const bool user_T = (p.moebius != identity_T);
    if (user_T) { // a configured map overrides the corpus
        canonical = p.moebius;
        inversion = p.moebius;
    }

    auto box_points = [&](int count, double lo, double hi) {
        std::vector<Quaternion> pts;
        for (int i = 0; i < count; ++i)
            pts.push_back({rng.uniform(-0.5, 0.5), rng.uniform(lo, hi), rng.uniform(lo, hi),
                           rng.uniform(lo, hi)});
        return pts;
    };

    CheckCase c = base_case(suite, p, seed);
    c.moebius = canonical;
    c.g_left = rand_qseries(rng, Side::left, 3, 0.5);
    if (v == OpVariant::Ha) c.a = p.family.empty() ? diffeo_identity(3) : family_from_params(p);

    CheckCase ce = c;
    ce.id = "covariance_exact";
    ce.quantity = "covariance";
    ce.builtin = "nonkernel";
    ce.tolerance = 1e-6;
    ce.points = box_points(50, 0.3, 1.0);
    out.push_back(ce);

    CheckCase cf = ce;
    cf.id = "covariance_fd";
    cf.exact_jets = false;
    cf.tolerance = 1e-5;
    cf.points = box_points(10, 0.3, 1.0);
    out.push_back(cf);

    CheckCase ck = c;
    ck.id = "kernel_preservation";
    ck.quantity = "kernel_preservation";
    ck.tolerance = 1e-6;
    if (v == OpVariant::G) {
        ck.points = box_points(20, 0.3, 1.0);
    } else {
        // image-side points; exp pulls back through the chart
        ck.moebius = inversion;
        ck.a = p.family.empty() ? diffeo_exp(3) : family_from_params(p);
        ck.points = box_points(10, 1.1, 1.4);
    }
    out.push_back(ck);

    if (v == OpVariant::G) {
        // slice-regular g kills both sides on either half-family
        CheckCase cs = c;
        cs.id = "series_other_half";
        cs.quantity = "covariance";
        cs.tolerance = 1e-6;
        if (!user_T) cs.moebius[4] = 0.4 * 2.0 - half; // flip the sign of the r slot
        cs.points = box_points(20, 0.3, 1.0);
        out.push_back(cs);
    } else {
        CheckCase cd = c;
        cd.id = "du_equivalence";
        cd.quantity = "du_equivalence";
        cd.builtin = "nonkernel";
        cd.tolerance = 1e-12;
        cd.a = p.family.empty() ? diffeo_log(3) : family_from_params(p);
        cd.points = box_points(10, 1.1, 1.6);
        out.push_back(cd);

        CheckCase cx = c;
        cx.id = "exp_series";
        cx.quantity = "covariance";
        cx.tolerance = 1e-6;
        cx.moebius = inversion;
        cx.a = p.family.empty() ? diffeo_exp(3) : family_from_params(p);
        cx.points = box_points(10, 1.1, 1.4);
        out.push_back(cx);
    }
    return out;
}

std::vector<CheckCase> build_cases(const std::string& suite, const SuiteParams& p,
                                   std::uint64_t seed) {
    if (suite == "borel_pompeiu_g") return cases_reproducing(suite, p, seed, OpVariant::G, false);
    if (suite == "borel_pompeiu_ha") return cases_reproducing(suite, p, seed, OpVariant::Ha, false);
    if (suite == "borel_pompeiu_du") return cases_reproducing(suite, p, seed, OpVariant::Du, false);
    if (suite == "cauchy_g") return cases_reproducing(suite, p, seed, OpVariant::G, true);
    if (suite == "cauchy_ha") return cases_reproducing(suite, p, seed, OpVariant::Ha, true);
    if (suite == "cauchy_du") return cases_reproducing(suite, p, seed, OpVariant::Du, true);
    if (suite == "stokes_g") return cases_stokes(suite, p, seed, OpVariant::G);
    if (suite == "stokes_ha") return cases_stokes(suite, p, seed, OpVariant::Ha);
    if (suite == "stokes_du") return cases_stokes(suite, p, seed, OpVariant::Du);
    if (suite == "du_relation") return cases_du_relation(p, seed);
    if (suite == "power_series") return cases_power_series(p, seed);
    if (suite == "representation") return cases_representation(p, seed);
    if (suite == "splitting") return cases_splitting(p, seed);
    if (suite == "slice_cauchy") return cases_slice_cauchy(p, seed);
    if (suite == "kernel_membership") return cases_kernel_membership(p, seed);
    if (suite == "conformal_g") return cases_conformal(suite, p, seed, OpVariant::G);
    if (suite == "conformal_ha") return cases_conformal(suite, p, seed, OpVariant::Ha);
    throw contract_error("build_cases: unknown suite " + suite);
}

VerificationReport dispatch(const std::string& suite, const CheckCase& c) {
    if (suite == "borel_pompeiu_g") return check_borel_pompeiu(c, OpVariant::G);
    if (suite == "borel_pompeiu_ha") return check_borel_pompeiu(c, OpVariant::Ha);
    if (suite == "borel_pompeiu_du") return check_borel_pompeiu(c, OpVariant::Du);
    if (suite == "cauchy_g") return check_cauchy_type(c, OpVariant::G);
    if (suite == "cauchy_ha") return check_cauchy_type(c, OpVariant::Ha);
    if (suite == "cauchy_du") return check_cauchy_type(c, OpVariant::Du);
    if (suite == "stokes_g") return check_stokes(c, OpVariant::G);
    if (suite == "stokes_ha") return check_stokes(c, OpVariant::Ha);
    if (suite == "stokes_du") return check_stokes(c, OpVariant::Du);
    if (suite == "du_relation") return check_du_relation(c);
    if (suite == "power_series") return check_power_series_kernel(c);
    if (suite == "representation") return check_representation(c);
    if (suite == "splitting") return check_splitting(c);
    if (suite == "slice_cauchy") return check_slice_cauchy(c);
    if (suite == "kernel_membership") return check_kernel_membership(c);
    if (suite == "conformal_g") return check_conformal(c, OpVariant::G);
    if (suite == "conformal_ha") return check_conformal(c, OpVariant::Ha);
    throw contract_error("dispatch: unknown suite " + suite);
}

} // namespace

// ============================================================================
// Suite driver and report emission
// ============================================================================

std::vector<VerificationReport> run_suite(const RunConfig& cfg) {
    std::vector<std::string> suites = cfg.suites.empty() ? suite_registry() : cfg.suites;
    for (const std::string& s : suites)
        if (!suite_registered(s)) throw contract_error("run_suite: unknown suite " + s);

    std::vector<VerificationReport> reports;
    for (const std::string& suite : suites) {
        const SuiteParams p = effective_params(cfg, suite);
        for (const CheckCase& c : build_cases(suite, p, cfg.seed)) {
            try {
                reports.push_back(dispatch(suite, c));
            } catch (const error&) {
                // a case that cannot even evaluate is an honest failure
                reports.push_back(
                    make_report(c, std::numeric_limits<double>::infinity(), 0, 0));
            }
        }
    }
    return reports;
}

std::string emit_reports(const std::vector<VerificationReport>& reports,
                         const std::string& format) {
    std::ostringstream os;
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };
    if (format == "csv") {
        // timings are zeroed so repeated runs emit identical bytes
        os << "suite,case,quantity,residual,tolerance,nodes,runtime_ms,pass\n";
        for (const auto& r : reports)
            os << r.suite << ',' << r.case_id << ',' << r.quantity << ',' << num(r.residual)
               << ',' << num(r.tolerance) << ',' << r.nodes << ",0," << (r.pass ? 1 : 0) << "\n";
        return os.str();
    }
    if (format != "text") throw contract_error("emit_reports: format must be text|csv");

    std::vector<std::array<std::string, 8>> rows;
    rows.push_back({"suite", "case", "quantity", "residual", "tolerance", "nodes", "runtime_ms",
                    "status"});
    int passed = 0;
    for (const auto& r : reports) {
        char ms[32];
        std::snprintf(ms, sizeof(ms), "%.1f", r.runtime_ms);
        rows.push_back({r.suite, r.case_id, r.quantity, num(r.residual), num(r.tolerance),
                        std::to_string(r.nodes), ms, r.pass ? "PASS" : "FAIL"});
        if (r.pass) ++passed;
    }
    std::array<std::size_t, 8> width{};
    for (const auto& row : rows)
        for (int i = 0; i < 8; ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : rows) {
        for (int i = 0; i < 8; ++i) {
            os << row[i];
            if (i < 7) os << std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << "\n";
    }
    os << passed << "/" << reports.size() << " checks passed\n";
    return os.str();
}

} // namespace slicekit
