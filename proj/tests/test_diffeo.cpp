#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "slicekit/diffeo.hpp"
#include "slicekit/errors.hpp"
#include "slicekit/rng.hpp"

using namespace slicekit;

namespace {

const double kPi = 3.14159265358979323846;

std::vector<DiffeoMap> all_families() {
    return {diffeo_identity(3),
            diffeo_affine({2, 2, 2}, {1, 1, 1}),
            diffeo_power({2, 3, 0.5}),
            diffeo_exp(3),
            diffeo_sin(3),
            diffeo_log(3),
            diffeo_rotation(Quaternion{0.5, 0.5, 0.5, 0.5})};
}

std::vector<double> sample_point(Rng& rng, const Box& b) {
    std::vector<double> x(b.dim());
    for (int i = 0; i < b.dim(); ++i) x[i] = rng.uniform(b.sides[i].lo, b.sides[i].hi);
    return x;
}

} // namespace

TEST_CASE("diffeo_apply maps the spatial part and passes x0 through") {
    CHECK((diffeo_apply(diffeo_identity(3), Paravector(1, {2, 0, 0})).to_multivector() -
           Paravector(1, {2, 0, 0}).to_multivector())
              .norm() < 1e-15);

    // affine r=2, s=1: e1 -> 3e1 + e2 + e3.
    const Paravector y = diffeo_apply(diffeo_affine({2, 2, 2}, {1, 1, 1}), Paravector(0, {1, 0, 0}));
    CHECK(y.x0 == 0.0);
    CHECK(y.v[0] == doctest::Approx(3.0));
    CHECK(y.v[1] == doctest::Approx(1.0));
    CHECK(y.v[2] == doctest::Approx(1.0));

    // exp family rejects x3 = 0: U = (0, inf)^3.
    CHECK_THROWS_AS(diffeo_apply(diffeo_exp(3), Paravector(0, {1, 1, 0})), domain_error);
    CHECK_THROWS_AS(diffeo_apply(diffeo_log(3), Quaternion{0, -1, 1, 1}), domain_error);
    CHECK_THROWS_AS(diffeo_apply(diffeo_exp(3), Paravector(0, {1, 1})), contract_error);
}

TEST_CASE("material velocity matches the closed forms of the separable families") {
    // identity: u = vec x.
    const auto u_id = material_velocity(diffeo_identity(3), Paravector(1, {2, 3, 0.5}));
    CHECK(u_id[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(u_id[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(u_id[2] == doctest::Approx(0.5).epsilon(1e-12));

    // exp: u = (1,1,1) everywhere in U.
    const auto u_exp = material_velocity(diffeo_exp(3), Paravector(0, {0.3, 1.7, 2.2}));
    for (double ui : u_exp) CHECK(ui == doctest::Approx(1.0).epsilon(1e-12));

    // sin at pi/4: tan(pi/4) = 1.
    const auto u_sin = material_velocity(diffeo_sin(3), Paravector(0, {kPi / 4, kPi / 4, kPi / 4}));
    for (double ui : u_sin) CHECK(ui == doctest::Approx(1.0).epsilon(1e-12));

    // affine: u_i = x_i + s_i/r_i; power: u_i = x_i/alpha_i; log: u_i = x_i ln x_i.
    const auto u_aff = material_velocity(diffeo_affine({2, 4, 8}, {1, 1, 2}), Paravector(0, {1, 1, 1}));
    CHECK(u_aff[0] == doctest::Approx(1.5));
    CHECK(u_aff[1] == doctest::Approx(1.25));
    CHECK(u_aff[2] == doctest::Approx(1.25));
    const auto u_pow = material_velocity(diffeo_power({2, 3, 0.5}), Paravector(0, {0.8, 0.9, 1.1}));
    CHECK(u_pow[0] == doctest::Approx(0.4));
    CHECK(u_pow[1] == doctest::Approx(0.3));
    CHECK(u_pow[2] == doctest::Approx(2.2));
    const auto u_log = material_velocity(diffeo_log(3), Paravector(0, {2, 3, 0.5}));
    CHECK(u_log[0] == doctest::Approx(2 * std::log(2.0)));
    CHECK(u_log[1] == doctest::Approx(3 * std::log(3.0)));
    CHECK(u_log[2] == doctest::Approx(0.5 * std::log(0.5)));
}

TEST_CASE("velocity formula agrees with a finite-difference evaluation of its definition") {
    // u_i = sum_j a_j(x) * d(a^-1)_i/dy_j at a(x), with the partial taken
    // numerically from the inverse closure alone.
    Rng rng(31);
    for (const auto& a : all_families()) {
        for (int t = 0; t < 10; ++t) {
            const std::vector<double> x = sample_point(rng, a.sampleU);
            const std::vector<double> y = a.forward(x);
            const auto u = material_velocity(a, Paravector(0.0, x));
            for (int i = 0; i < a.n; ++i) {
                double fd = 0.0;
                for (int j = 0; j < a.n; ++j) {
                    const double h = 1e-6 * std::max(1.0, std::abs(y[j]));
                    std::vector<double> p(y), m(y);
                    p[j] += h;
                    m[j] -= h;
                    fd += y[j] * (a.inverse(p)[i] - a.inverse(m)[i]) / (2 * h);
                }
                CHECK(std::abs(u[i] - fd) < 5e-6);
            }
        }
    }
}

TEST_CASE("rotation family: velocity is the identity field and matches the anticommutator form") {
    Rng rng(37);
    Quaternion c{0.3, -0.5, 0.7, 0.2};
    c = c * (1.0 / c.norm());
    const DiffeoMap a = diffeo_rotation(c);
    for (int t = 0; t < 20; ++t) {
        const std::vector<double> xv = rng.vec(3, -2, 2);
        const auto u = material_velocity(a, Paravector(0.0, xv));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(u[i] - xv[i]) < 1e-12);

        // One quarter of sum_j (c x c' e_j + e_j c x c')(c' e_j c e_i + e_i c' e_j c).
        const Quaternion xq{0, xv[0], xv[1], xv[2]};
        const Quaternion rx = c * xq * c.conjugate();
        for (int i = 0; i < 3; ++i) {
            Quaternion ei{};
            ei.set_coord(i + 1, 1.0);
            Quaternion acc{};
            for (int j = 0; j < 3; ++j) {
                Quaternion ej{};
                ej.set_coord(j + 1, 1.0);
                const Quaternion rej = c.conjugate() * ej * c;
                acc += (rx * ej + ej * rx) * (rej * ei + ei * rej);
            }
            acc = acc * 0.25;
            CHECK(std::abs(acc.w - u[i]) < 1e-8);
            CHECK(acc.vec_norm() < 1e-8);
        }
    }
    CHECK(volume_factor(a, Paravector(0, {1, 2, 3})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(diffeo_rotation(Quaternion{1, 1, 0, 0}), contract_error);
}

TEST_CASE("volume factor is the absolute Jacobian determinant") {
    CHECK(volume_factor(diffeo_identity(3), Paravector(0, {0.4, -1, 2})) == doctest::Approx(1.0));
    CHECK(volume_factor(diffeo_affine({2, 2, 2}, {0, 0, 0}), Paravector(0, {1, 1, 1})) ==
          doctest::Approx(8.0));
    // Evaluates from the derivative closures alone; (ln 2, 0, 0) lies outside
    // U yet has a perfectly good Jacobian.
    CHECK(volume_factor(diffeo_exp(3), Paravector(0, {std::log(2.0), 0, 0})) == doctest::Approx(2.0));
    // sin at pi/2 has a' = 0: degenerate.
    CHECK_THROWS_AS(volume_factor(diffeo_sin(3), Paravector(0, {kPi / 2, 0.3, 0.3})), singular_error);
}

TEST_CASE("sin family: velocity excluded at pi/2, map evaluable beyond it") {
    const DiffeoMap a = diffeo_sin(1);
    CHECK_THROWS_AS(material_velocity(a, Paravector(0, {kPi / 2})), domain_error);
    // Forward evaluation past the fold is allowed by U = (0, pi).
    const Paravector y = diffeo_apply(a, Paravector(0, {3 * kPi / 4}));
    CHECK(y.v[0] == doctest::Approx(std::sin(3 * kPi / 4)));
    // The principal inverse lands on the invertible branch.
    CHECK(diffeo_inverse_apply(a, Paravector(0, {0.5})).v[0] == doctest::Approx(kPi / 6));
}

TEST_CASE("round-trip and Jacobian-consistency invariants hold on sampled points") {
    Rng rng(41);
    for (const auto& a : all_families()) {
        for (int t = 0; t < 500; ++t) {
            const std::vector<double> x = sample_point(rng, a.sampleU);
            const std::vector<double> back = a.inverse(a.forward(x));
            for (int i = 0; i < a.n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-10);
        }
        // J_inv(a(x)) * J_fwd(x) = identity.
        for (int t = 0; t < 100; ++t) {
            const std::vector<double> x = sample_point(rng, a.sampleU);
            const auto Jf = jac_forward(a, x);
            const auto Ji = jac_inverse(a, a.forward(x));
            for (int i = 0; i < a.n; ++i)
                for (int j = 0; j < a.n; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < a.n; ++k) s += Ji[i][k] * Jf[k][j];
                    CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-8);
                }
        }
    }
}

TEST_CASE("custom maps fall back to finite-difference partials") {
    // Forward (x1, x2) -> (x1 + x2^3, x2), a shear with known exact Jacobian.
    auto fwd = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] + x[1] * x[1] * x[1], x[1]};
    };
    auto inv = [](const std::vector<double>& y) {
        return std::vector<double>{y[0] - y[1] * y[1] * y[1], y[1]};
    };
    const DiffeoMap a = make_custom_diffeo("shear", 2, fwd, inv, box_all(2), box_all(2),
                                           box_uniform(2, -1.5, 1.5));
    const std::vector<double> x{0.7, -0.4};
    CHECK(std::abs(a.fwd_partial(0, 1, x) - 3 * x[1] * x[1]) < 1e-7);
    CHECK(std::abs(a.inv_partial(0, 1, x) + 3 * x[1] * x[1]) < 1e-7);
    CHECK(std::abs(volume_factor(a, Paravector(0, x)) - 1.0) < 1e-7);
    const auto u = material_velocity(a, Paravector(0, x));
    // u_1 = a_1 - 3 y_2^2 a_2 = x1 + x2^3 - 3 x2^3 = x1 - 2 x2^3, u_2 = x2.
    CHECK(std::abs(u[0] - (x[0] - 2 * std::pow(x[1], 3))) < 1e-6);
    CHECK(std::abs(u[1] - x[1]) < 1e-9);
}

TEST_CASE("determinant helper handles pivoting and singularity") {
    CHECK(det_matrix({{0, 1}, {1, 0}}) == doctest::Approx(-1.0));
    CHECK(det_matrix({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}) == doctest::Approx(4.0));
    CHECK(det_matrix({{1, 2}, {2, 4}}) == doctest::Approx(0.0));
}
