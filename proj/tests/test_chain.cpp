#include <doctest.h>

#include "helpers.hpp"
#include "noneq/chain.hpp"
#include "noneq/cyclespace.hpp"
#include "noneq/solver1ne.hpp"
#include "noneq/synth.hpp"

using namespace noneq;
using noneq::testing::cyclic3;
using noneq::testing::random_strict;

TEST_SUITE("chain") {

TEST_CASE("validate accepts the symmetric two-state chain") {
    MatD raw(2, 2);
    raw << -1, 1, 1, -1;
    auto g = validate_generator<double>(raw);
    CHECK(g.size() == 2);
    CHECK(g.rate(1, 2) == 1.0);
    CHECK(g.rate(1, 1) == -1.0);
}

TEST_CASE("validate recomputes the diagonal from the off-diagonal rates") {
    MatD raw(3, 3);
    raw << 999, 2, 1,
           1, 0, 2,
           2, 1, -123;
    auto g = validate_generator<double>(raw);
    for (int i = 1; i <= 3; ++i) CHECK(g.rate(i, i) == -3.0);
    MatD row_sums = g.matrix() * MatD::Constant(3, 1, 1.0);
    CHECK(max_abs(row_sums) == 0.0);
}

TEST_CASE("validate rejects bad inputs") {
    MatD not_square(2, 3);
    not_square.setZero();
    CHECK_THROWS_AS(validate_generator<double>(not_square), NotSquare);

    MatD zero_rate(3, 3);
    zero_rate << 0, 0, 1, 1, 0, 2, 2, 1, 0;
    try {
        validate_generator<double>(zero_rate);
        FAIL("expected NonPositiveRate");
    } catch (const NonPositiveRate& e) {
        CHECK(e.i == 1);
        CHECK(e.j == 2);
    }

    // Non-strict mode tolerates zeros but not negatives.
    CHECK_NOTHROW(validate_generator<double>(zero_rate, false));
    zero_rate(0, 1) = -1;
    CHECK_THROWS_AS(validate_generator<double>(zero_rate, false), NegativeRate);
}

TEST_CASE("stationary solve reports singular systems for reducible non-strict chains") {
    // Two disconnected components.
    MatD raw(4, 4);
    raw << 0, 1, 0, 0,
           1, 0, 0, 0,
           0, 0, 0, 1,
           0, 0, 1, 0;
    auto g = validate_generator<double>(raw, false);
    CHECK_THROWS_AS(stationary_distribution(g), SingularSystem);

    // Absorbing state: the solve succeeds but the distribution leaves the
    // interior of the simplex.
    MatD absorbing(2, 2);
    absorbing << 0, 0, 1, 0;
    auto ga = validate_generator<double>(absorbing, false);
    CHECK_THROWS_AS(stationary_distribution(ga), NonPositive);
}

TEST_CASE("stationary distribution of the symmetric two-state chain") {
    MatD raw(2, 2);
    raw << -1, 1, 1, -1;
    auto pi = stationary_distribution(validate_generator<double>(raw));
    CHECK(pi.at(1) == doctest::Approx(0.5));
    CHECK(pi.at(2) == doctest::Approx(0.5));
}

TEST_CASE("stationary distribution of the three-state ring is uniform, exactly in rational mode") {
    auto pi = stationary_distribution(cyclic3<Rational>());
    for (int i = 1; i <= 3; ++i) CHECK(pi.at(i) == Rational(1, 3));

    auto pid = stationary_distribution(cyclic3<double>());
    for (int i = 1; i <= 3; ++i) CHECK(pid.at(i) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("stationary distribution solves pi Q = 0 over random strict chains") {
    for (int n = 2; n <= 12; ++n)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto g = random_strict(n, 1000 * n + seed);
            auto pi = stationary_distribution(g);
            VecD residual = g.matrix().transpose() * pi.vector();
            CHECK(max_abs(residual) <= 1e-10 * g.max_rate());
            CHECK(std::abs(pi.sum() - 1.0) <= 1e-12);
            for (int i = 1; i <= n; ++i) CHECK(pi.at(i) > 0.0);
        }
}

TEST_CASE("current matrix of the ring carries 1/3 on ring edges") {
    auto g = cyclic3<Rational>();
    auto pi = stationary_distribution(g);
    auto d = current_matrix(g, pi);
    CHECK(d.at(1, 2) == Rational(1, 3));
    CHECK(d.at(2, 3) == Rational(1, 3));
    CHECK(d.at(1, 3) == Rational(-1, 3));
    CHECK(d.at(2, 1) == Rational(-1, 3));
    // D = (1/3)(Lambda - Lambda^t)
    MatR expected = Rational(1, 3) * lambda_antisym<Rational>(3, 1).matrix();
    CHECK(exactly_equal<Rational>(d.matrix(), expected));
}

TEST_CASE("currents vanish under detailed balance") {
    MatD raw(2, 2);
    raw << -1, 1, 1, -1;
    auto g = validate_generator<double>(raw);
    auto pi = stationary_distribution(g);
    CHECK(max_abs(current_matrix(g, pi).matrix()) == 0.0);
}

TEST_CASE("current matrix is antisymmetric with vanishing row sums") {
    for (int n = 3; n <= 12; ++n) {
        auto g = random_strict(n, 77 * n);
        auto pi = stationary_distribution(g);
        auto d = current_matrix(g, pi);
        CHECK(max_abs(MatD(d.matrix() + d.matrix().transpose())) == 0.0);
        VecD row_sums = d.matrix() * VecD::Constant(n, 1.0);
        CHECK(max_abs(row_sums) <= 1e-10 * g.max_rate());
    }
}

TEST_CASE("current vector reads the upper triangle in theta order") {
    auto g = cyclic3<Rational>();
    auto d = current_matrix(g, stationary_distribution(g));
    auto j = current_vector(d);
    CHECK(j.at(1) == Rational(1, 3));
    CHECK(j.at(2) == Rational(-1, 3));
    CHECK(j.at(3) == Rational(1, 3));

    auto zero = CurrentMatrix<double>(4, MatD::Zero(4, 4));
    auto jz = current_vector(zero);
    CHECK(jz.size() == 6);
    CHECK(max_abs(jz.vector()) == 0.0);
}

TEST_CASE("current vector of the four-state shift pattern") {
    MatR m = lambda_antisym<Rational>(4, 1).matrix();
    CurrentMatrix<Rational> d(4, m);
    auto j = current_vector(d);
    int expected[] = {1, 0, -1, 1, 0, 1};
    for (int r = 1; r <= 6; ++r) CHECK(j.at(r) == Rational(expected[r - 1]));
}

TEST_CASE("stationary currents lie in the kernel of the incidence matrix") {
    for (int n = 3; n <= 10; ++n) {
        auto g = random_strict(n, 31 * n + 1);
        auto d = current_matrix(g, stationary_distribution(g));
        auto j = current_vector(d);
        IncidenceMatrix inc = incidence_matrix(n);
        CHECK(kernel_check<double>(inc, j, 1e-10 * g.max_rate()));
    }
}

TEST_CASE("detailed balance detection") {
    MatD raw(2, 2);
    raw << -1, 1, 1, -1;
    auto g2 = validate_generator<double>(raw);
    CHECK(is_detailed_balance(g2, stationary_distribution(g2)));

    auto g3 = cyclic3<double>();
    CHECK_FALSE(is_detailed_balance(g3, stationary_distribution(g3)));

    auto eq = random_instance(5, Regime::Equilibrium, 42);
    CHECK(is_detailed_balance(eq, stationary_distribution(eq)));
}

TEST_CASE("detailed balance agrees with a vanishing current matrix") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = (seed % 2 == 0) ? random_instance(4, Regime::Equilibrium, seed)
                                 : random_strict(4, seed);
        auto pi = stationary_distribution(g);
        double tol = 1e-10 * g.max_rate();
        bool db = is_detailed_balance(g, pi);
        bool zero_d = !(max_abs(current_matrix(g, pi).matrix()) > tol);
        CHECK(db == zero_d);
    }
}

TEST_CASE("kolmogorov gap on the ring") {
    CHECK(kolmogorov_gap(cyclic3<Rational>()) == Rational(7));
    CHECK(kolmogorov_gap(cyclic3<double>()) == doctest::Approx(7.0));

    auto db = random_instance(6, Regime::Equilibrium, 9);
    CHECK(std::abs(kolmogorov_gap(db)) <= 1e-9 * delta_scale(db));

    MatD two(2, 2);
    two << -1, 1, 1, -1;
    CHECK_THROWS_AS(kolmogorov_gap(validate_generator<double>(two)), TooSmall);
}

TEST_CASE("kolmogorov gap is the negative of the ring determinant") {
    CHECK(kolmogorov_gap(cyclic3<Rational>()) + delta_determinant_closed(cyclic3<Rational>()) ==
          Rational(0));
    for (int n = 3; n <= 10; ++n)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto g = random_strict(n, 555 * n + seed);
            double gap = kolmogorov_gap(g);
            double det = delta_determinant_closed(g);
            CHECK(std::abs(gap + det) <= 1e-9 * delta_scale(g));
        }
}

TEST_CASE("synthesized equilibrium chains report their prescribed distribution") {
    VecR pi(4);
    pi << Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8);
    SynthSpec<Rational> spec;
    spec.n = 4;
    spec.pi = pi;
    spec.d = Rational(0);
    spec.ring_forward = VecR::Constant(4, Rational(3));
    spec.chord_forward = MatR::Constant(4, 4, Rational(2));
    auto g = synth_one_ne(spec);
    auto stat = stationary_distribution(g);
    for (int i = 1; i <= 4; ++i) CHECK(stat.at(i) == pi(i - 1));
    CHECK(is_detailed_balance(g, stat));
}

}  // TEST_SUITE
