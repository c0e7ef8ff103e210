#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slicekit/algebra.hpp"
#include "slicekit/errors.hpp"
#include "slicekit/rng.hpp"
#include "slicekit/slice.hpp"

using namespace slicekit;

namespace {

Quaternion rand_quat(Rng& rng, double lo = -1.0, double hi = 1.0) {
    return Quaternion{rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi),
                      rng.uniform(lo, hi)};
}

Multivector rand_mv(Rng& rng, int n) {
    Multivector m(n);
    for (unsigned b = 0; b < (1u << n); ++b) m.coeff(b) = rng.uniform(-1.0, 1.0);
    return m;
}

} // namespace

TEST_CASE("quaternion power series evaluates by Horner") {
    // f(q) = q^2, left coefficients {0, 0, 1}.
    QPowerSeries f{{Quaternion{}, Quaternion{}, Quaternion{1, 0, 0, 0}}, Side::left};
    const Quaternion x{1, 0, 1, 0}; // 1 + e2
    const Quaternion got = f.eval(x);
    CHECK(got.w == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(got.y == doctest::Approx(2.0).epsilon(1e-14)); // (1+e2)^2 = 2 e2

    // Left vs right placement of a non-real coefficient differ.
    const Quaternion c{0, 0, 0, 1};
    QPowerSeries l{{Quaternion{}, c}, Side::left};  // x * c
    QPowerSeries r{{Quaternion{}, c}, Side::right}; // c * x
    const Quaternion xl = l.eval(x), xr = r.eval(x);
    CHECK((xl - x * c).norm() < 1e-14);
    CHECK((xr - c * x).norm() < 1e-14);
    CHECK((xl - xr).norm() > 1.0);
}

TEST_CASE("quaternion power series partials follow the product rule exactly") {
    // d(x^2)/dx_0 = 2x, d(x^2)/dx_k = x e_k + e_k x.
    QPowerSeries f{{Quaternion{}, Quaternion{}, Quaternion{1, 0, 0, 0}}, Side::left};
    const Quaternion x{1, 0, 1, 0};
    CHECK((f.partial(0, x) - x * 2.0).norm() < 1e-14);
    const Quaternion e2{0, 0, 1, 0};
    CHECK((f.partial(2, x) - (x * e2 + e2 * x)).norm() < 1e-14);

    // Cross-check all partials of a random degree-5 series by central differences.
    Rng rng(7);
    QPowerSeries g;
    for (int m = 0; m <= 5; ++m) g.coeffs.push_back(rand_quat(rng));
    const Quaternion p = rand_quat(rng, -0.5, 0.5);
    const double h = 1e-5;
    for (int k = 0; k < 4; ++k) {
        Quaternion a = p, b = p;
        a.set_coord(k, a.coord(k) + h);
        b.set_coord(k, b.coord(k) - h);
        const Quaternion fd = (g.eval(a) - g.eval(b)) * (0.5 / h);
        CHECK((g.partial(k, p) - fd).norm() < 1e-8);
    }
}

TEST_CASE("multivector power series agrees with the quaternion one in R_{0,2}") {
    // R_{0,2} is the quaternions (i,j,k) = (e1,e2,e12); the paravector
    // x0 + x1 e1 + x2 e2 is the quaternion with z = 0.
    Rng rng(11);
    for (Side side : {Side::left, Side::right}) {
        QPowerSeries qf;
        MPowerSeries mf;
        mf.n = 2;
        mf.side = qf.side = side;
        for (int m = 0; m <= 4; ++m) {
            const Quaternion c = rand_quat(rng);
            qf.coeffs.push_back(c);
            mf.coeffs.push_back(quat_to_mv(c, 2));
        }
        const Quaternion q{rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8),
                           0.0};
        const Paravector x(q.w, {q.x, q.y});
        CHECK((quat_to_mv(qf.eval(q), 2) - mf.eval(x)).norm() < 1e-12);
        for (int k = 0; k <= 2; ++k)
            CHECK((quat_to_mv(qf.partial(k, q), 2) - mf.partial(k, x)).norm() < 1e-12);
    }
}

TEST_CASE("real-coefficient series agree across algebras through the coordinate bridge") {
    // Powers of the variable stay in the slice plane, so with real coefficients
    // the paravector series in R_{0,3} matches the quaternion series.
    Rng rng(29);
    QPowerSeries qf;
    MPowerSeries mf;
    mf.n = 3;
    for (int m = 0; m <= 5; ++m) {
        const double a = rng.uniform(-1, 1);
        qf.coeffs.push_back(Quaternion{a, 0, 0, 0});
        mf.coeffs.push_back(Multivector::scalar(3, a));
    }
    const Quaternion q = rand_quat(rng, -0.8, 0.8);
    const Paravector x = quat_to_pv(q);
    const Quaternion e = qf.eval(q);
    const Multivector r = mf.eval(x);
    CHECK(std::abs(r.coeff(0) - e.w) < 1e-12);
    CHECK(std::abs(r.coeff(1) - e.x) < 1e-12);
    CHECK(std::abs(r.coeff(2) - e.y) < 1e-12);
    CHECK(std::abs(r.coeff(4) - e.z) < 1e-12);
    for (unsigned b : {3u, 5u, 6u, 7u}) CHECK(std::abs(r.coeff(b)) < 1e-12);
}

TEST_CASE("multivector power series partials match central differences for n = 4") {
    Rng rng(13);
    MPowerSeries f;
    f.n = 4;
    for (int m = 0; m <= 4; ++m) f.coeffs.push_back(rand_mv(rng, 4));
    const Paravector x(0.2, {0.1, -0.3, 0.2, 0.4});
    const double h = 1e-5;
    for (int k = 0; k <= 4; ++k) {
        Paravector a = x, b = x;
        if (k == 0) {
            a.x0 += h;
            b.x0 -= h;
        } else {
            a.v[k - 1] += h;
            b.v[k - 1] -= h;
        }
        const Multivector fd = (f.eval(a) - f.eval(b)) * (0.5 / h);
        CHECK((f.partial(k, x) - fd).norm() < 1e-8);
    }
}

TEST_CASE("representation formula reproduces a slice regular function from one slice") {
    // f(q) = q^2 at x = 1 + e2 with J = e1 gives exactly x^2 = 2 e2.
    auto f = [](const Quaternion& q) { return q * q; };
    const Quaternion x{1, 0, 1, 0};
    const Quaternion got = representation_eval(f, x, {1, 0, 0});
    CHECK((got - Quaternion{0, 0, 2, 0}).norm() < 1e-13);

    // The reconstruction is independent of J.
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        const Quaternion p = rand_quat(rng);
        double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), c = rng.uniform(-1, 1);
        const double nn = std::sqrt(a * a + b * b + c * c);
        const std::array<double, 3> J{a / nn, b / nn, c / nn};
        CHECK((representation_eval(f, p, J) - p * p).norm() < 1e-12);
    }

    // Real points short-circuit to a direct evaluation.
    CHECK((representation_eval(f, Quaternion{2, 0, 0, 0}, {0, 1, 0}) - Quaternion{4, 0, 0, 0}).norm() <
          1e-13);

    CHECK_THROWS_AS(representation_eval(f, x, {1, 1, 0}), contract_error);
}

TEST_CASE("representation formula for multivector series, n = 3 and n = 4") {
    Rng rng(19);
    for (int n : {3, 4}) {
        MPowerSeries f;
        f.n = n;
        for (int m = 0; m <= 3; ++m) {
            // Real coefficients keep the series slice regular for every slice.
            f.coeffs.push_back(Multivector::scalar(n, rng.uniform(-1, 1)));
        }
        auto feval = [&f](const Paravector& x) { return f.eval(x); };
        std::vector<double> vpart = rng.vec(n, -0.7, 0.7);
        const Paravector x(rng.uniform(-0.5, 0.5), vpart);
        std::vector<double> J = rng.vec(n, -1, 1);
        double nn = 0;
        for (double c : J) nn += c * c;
        nn = std::sqrt(nn);
        for (auto& c : J) c /= nn;
        CHECK((representation_eval(feval, x, J) - f.eval(x)).norm() < 1e-12);
    }
}

TEST_CASE("splitting of quaternionic values over the e1 slice") {
    // R_{0,2} is the quaternions: I = e1, completion I_2 = e2, subsets {} and {2}.
    const auto frame = make_splitting_frame({1, 0}, {{0, 1}});
    REQUIRE(frame.blade.size() == 2);

    auto on_slice = [](double u, double v) {
        Multivector m(2);
        m.coeff(0) = u;
        m.coeff(1) = v; // u + I v
        return m;
    };

    // f(q) = q: F_{}(z) = z, F_2 = 0.
    {
        const auto c = splitting_components(frame, on_slice(0.7, -0.4));
        CHECK(c[0].re == doctest::Approx(0.7));
        CHECK(c[0].im == doctest::Approx(-0.4));
        CHECK(std::abs(c[1].re) < 1e-15);
        CHECK(std::abs(c[1].im) < 1e-15);
    }

    // f = e2 constant: F_2 = 1.
    {
        Multivector m(2);
        m.coeff(2) = 1.0;
        const auto c = splitting_components(frame, m);
        CHECK(std::abs(c[0].re) < 1e-15);
        CHECK(c[1].re == doctest::Approx(1.0));
        CHECK(std::abs(c[1].im) < 1e-15);
    }

    // f(q) = q e2 on the slice: (u + Iv) e2 -> F_2(z) = u + iv.
    {
        Multivector m = on_slice(0.7, -0.4) * Multivector::basis(2, 2u);
        const auto c = splitting_components(frame, m);
        CHECK(std::abs(c[0].re) < 1e-15);
        CHECK(c[1].re == doctest::Approx(0.7));
        CHECK(c[1].im == doctest::Approx(-0.4));
    }
}

TEST_CASE("splitting components reassemble the value for a rotated frame, n = 3") {
    Rng rng(23);
    // Tilted unit axis and Gram-Schmidt completion.
    std::vector<double> axis = {2, -1, 2};
    for (auto& a : axis) a /= 3.0;
    const auto frame = make_splitting_frame(axis, complete_axis(axis));
    REQUIRE(frame.blade.size() == 4);
    for (int t = 0; t < 25; ++t) {
        const Multivector m = rand_mv(rng, 3);
        const Multivector back = splitting_reassemble(frame, splitting_components(frame, m));
        CHECK((back - m).norm() < 1e-12);
    }
    CHECK_THROWS_AS(make_splitting_frame({1, 0, 0}, {{0, 1, 0}, {0, 1, 0}}), contract_error);
}

TEST_CASE("splitting components of a slice regular series are holomorphic") {
    // f(x) = x^2 + x c + d with quaternionic right coefficients, restricted to
    // the slice through a tilted axis; every F_A satisfies Cauchy-Riemann.
    const std::vector<double> axis = {0.6, 0.0, 0.8};
    const auto frame = make_splitting_frame(axis, complete_axis(axis));
    MPowerSeries f;
    f.n = 3;
    f.coeffs = {quat_to_mv(Quaternion{0.3, -0.2, 0.5, 0.1}, 3),
                quat_to_mv(Quaternion{1.0, 0.7, -0.4, 0.2}, 3),
                quat_to_mv(Quaternion{1, 0, 0, 0}, 3)};

    auto comp = [&](double u, double v) {
        std::vector<double> vv(3);
        for (int i = 0; i < 3; ++i) vv[i] = axis[i] * v;
        return splitting_components(frame, f.eval(Paravector(u, vv)));
    };
    for (std::size_t A = 0; A < frame.blade.size(); ++A) {
        auto alpha = [&, A](double u, double v) { return comp(u, v)[A].re; };
        auto beta = [&, A](double u, double v) { return comp(u, v)[A].im; };
        CHECK(cr_residual(alpha, beta, 0.4, 0.3, 1e-5) < 1e-9);
    }
}

TEST_CASE("cr_residual flags a non-holomorphic pair") {
    // alpha = u, beta = -v: d alpha/du - d beta/dv = 2.
    auto alpha = [](double u, double) { return u; };
    auto beta = [](double, double v) { return -v; };
    CHECK(cr_residual(alpha, beta, 0.3, 0.8, 1e-5) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("intrinsic pair of q^2 and slice reconstruction") {
    auto f = [](const Quaternion& q) { return q * q; };
    const auto p = intrinsic_pair(f);
    const double u = 0.7, v = 0.4;
    CHECK((p.alpha(u, v) - Quaternion{u * u - v * v, 0, 0, 0}).norm() < 1e-14);
    CHECK((p.beta(u, v) - Quaternion{2 * u * v, 0, 0, 0}).norm() < 1e-14);

    // Even/odd symmetry in v.
    CHECK((p.alpha(u, -v) - p.alpha(u, v)).norm() < 1e-14);
    CHECK((p.beta(u, -v) + p.beta(u, v)).norm() < 1e-14);

    // f(x) = alpha(u,v) + I_x beta(u,v) off the extraction slice.
    const Quaternion x{1, 0, 1, 0};
    const auto s = slice_decompose(x);
    const Quaternion Ix{0, s.axis[0], s.axis[1], s.axis[2]};
    CHECK((p.alpha(s.u, s.v) + Ix * p.beta(s.u, s.v) - x * x).norm() < 1e-13);

    // The pair satisfies Cauchy-Riemann (polynomial, so exact under central
    // differences up to roundoff).
    CHECK(cr_residual(p.alpha, p.beta, u, v, 1e-4) < 1e-9);
}

TEST_CASE("axially symmetric domains test membership through the slice profile") {
    const AxSymDomain d = axsym_from_disc(1.0, 0.0, 0.5);
    CHECK(d.contains(Quaternion{1.0, 0.0, 0.0, 0.3}));
    CHECK(d.contains(Quaternion{1.2, 0.1, 0.1, 0.1}));
    CHECK_FALSE(d.contains(Quaternion{2.0, 0, 0, 0}));
    CHECK(d.contains(Paravector(0.9, {0.0, 0.2, 0.0})));
    CHECK_FALSE(d.contains(Paravector(0.9, {0.0, 0.9, 0.0})));
    CHECK(d.u_range[0] == doctest::Approx(0.5));
    CHECK(d.v_range[0] == doctest::Approx(0.0));
    CHECK_THROWS_AS(axsym_from_disc(0, 0, -1), contract_error);
}
