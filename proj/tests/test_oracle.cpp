#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netclear/gen.hpp"
#include "netclear/kernels.hpp"
#include "netclear/linsolve.hpp"
#include "netclear/oracle.hpp"
#include "netclear/solver.hpp"
#include "test_helpers.hpp"

using namespace netclear;
using testing::demo3;

TEST_CASE("linear solve: unique system") {
    // x - y = 1, x + y = 3
    const auto sol = detail::solve_with_nullspace({1, -1, 1, 1}, {1, 3}, 2);
    REQUIRE(sol.kind == detail::LinearSolution::Kind::unique);
    CHECK(sol.particular[0] == doctest::Approx(2));
    CHECK(sol.particular[1] == doctest::Approx(1));
}

TEST_CASE("linear solve: singular consistent system yields the null direction") {
    // x - y = 0 twice
    const auto sol = detail::solve_with_nullspace({1, -1, -1, 1}, {0, 0}, 2);
    REQUIRE(sol.kind == detail::LinearSolution::Kind::family);
    CHECK(sol.particular == Vec{0, 0});
    REQUIRE(sol.null_basis.size() == 1);
    const auto& d = sol.null_basis[0];
    CHECK(d[0] == doctest::Approx(d[1]));  // direction along (1, 1)
    CHECK(std::abs(d[0]) > 0.5);

    // The particular solution respects a nonzero right-hand side.
    const auto shifted = detail::solve_with_nullspace({1, -1, -1, 1}, {2, -2}, 2);
    REQUIRE(shifted.kind == detail::LinearSolution::Kind::family);
    CHECK(shifted.particular[0] - shifted.particular[1] == doctest::Approx(2));
}

TEST_CASE("linear solve: inconsistent system") {
    // x - y = 1, -x + y = 1
    const auto sol = detail::solve_with_nullspace({1, -1, -1, 1}, {1, 1}, 2);
    CHECK(sol.kind == detail::LinearSolution::Kind::inconsistent);
}

TEST_CASE("linear solve: 3x3 rank-1 null space") {
    // x + y + z = 6 with two dependent copies
    const std::vector<double> a{1, 1, 1, 2, 2, 2, 3, 3, 3};
    const auto sol = detail::solve_with_nullspace(a, {6, 12, 18}, 3);
    REQUIRE(sol.kind == detail::LinearSolution::Kind::family);
    CHECK(sol.null_basis.size() == 2);
    for (const auto& d : sol.null_basis) CHECK(d[0] + d[1] + d[2] == 0.0);
}

TEST_CASE("enumeration oracle finds the demo network's unique vector") {
    const auto fps = brute_force_fixed_points(demo3());
    CHECK(fps.is_singleton);
    CHECK_FALSE(fps.continuum_detected);
    REQUIRE(fps.points.size() == 1);
    CHECK(fps.points[0] == Vec{1, 1, 1});
}

TEST_CASE("enumeration oracle detects the cashless continuum") {
    const auto fps = brute_force_fixed_points(testing::cashless_cycle2());
    CHECK(fps.continuum_detected);
    CHECK_FALSE(fps.is_singleton);
    CHECK(fps.singular_candidates > 0);
    REQUIRE(fps.points.size() == 2);
    CHECK(fps.points[0] == Vec{0, 0});
    CHECK(fps.points[1] == Vec{0.5, 0.5});

    REQUIRE(fps.family.has_value());
    const auto& fam = *fps.family;
    // The family covers every scaling of the cycle weights.
    for (double lam : {0.0, 0.25, 0.5, 1.0}) {
        const Vec p{lam * 0.5, lam * 0.5};
        double t = (p[0] - fam.base[0]) / fam.direction[0];
        CHECK(t >= fam.t_lo - 1e-12);
        CHECK(t <= fam.t_hi + 1e-12);
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(fam.base[j] + t * fam.direction[j] == doctest::Approx(p[j]).epsilon(1e-12));
    }
}

TEST_CASE("zero payments always appear for cashless systems") {
    GenSpec spec;
    spec.n = 4;
    spec.seed = 17;
    spec.family = Family::cashless;
    const auto fps = brute_force_fixed_points(generate(spec));
    REQUIRE(!fps.points.empty());
    CHECK(fps.points.front() == Vec(4, 0.0));
}

TEST_CASE("enumeration oracle parameterizes the stranded cycle's family") {
    // Fixed points are (2, t, t) for t in [0, 1]; the convention picks (2, 0, 0).
    const auto sys = testing::funded_plus_stranded_cycle();
    const auto fps = brute_force_fixed_points(sys);
    CHECK(fps.continuum_detected);
    CHECK_FALSE(fps.is_singleton);
    REQUIRE(fps.points.size() == 2);
    CHECK(fps.points[0] == Vec{2, 0, 0});
    CHECK(fps.points[1] == Vec{2, 1, 1});

    REQUIRE(fps.family.has_value());
    const auto& fam = *fps.family;
    CHECK(fam.direction[0] == 0.0);
    CHECK(fam.direction[1] == fam.direction[2]);
    CHECK(fam.t_hi - fam.t_lo == doctest::Approx(1.0));

    CHECK(solve_clearing(sys).p_star == Vec{2, 0, 0});
}

TEST_CASE("every oracle point passes both feasibility checks") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GenSpec spec;
        spec.n = 4 + seed % 3;
        spec.seed = seed;
        spec.family = seed % 3 == 0   ? Family::pan_mixed
                      : seed % 3 == 1 ? Family::random_sparse
                                      : Family::cashless;
        spec.density = 0.4;
        const auto sys = generate(spec);
        const auto fps = brute_force_fixed_points(sys);
        REQUIRE(!fps.points.empty());
        for (const auto& q : fps.points) {
            CHECK(check_limited_liability(sys, q).all_ok);
            CHECK(check_absolute_priority(sys, q).all_ok);
            const Vec stepped = apply_clearing(sys, q);
            CHECK(kernels::sup_diff(stepped.data(), q.data(), q.size()) <= 1e-9);
        }
    }
}

TEST_CASE("oracle singletons match the solver") {
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        GenSpec spec;
        spec.n = 2 + seed % 5;
        spec.seed = seed * 31 + 7;
        spec.family = seed % 2 ? Family::random_dense : Family::random_sparse;
        spec.density = 0.5;
        const auto sys = generate(spec);
        const auto fps = brute_force_fixed_points(sys);
        if (!fps.is_singleton) continue;
        ++compared;
        const auto report = solve_clearing(sys);
        CHECK(kernels::sup_diff(report.p_star.data(), fps.points[0].data(), sys.size()) <= 1e-8);
    }
    CHECK(compared > 100);
}

TEST_CASE("size limits") {
    GenSpec spec;
    spec.n = 13;
    spec.seed = 0;
    spec.family = Family::random_sparse;
    const auto sys = generate(spec);
    CHECK_THROWS_AS(brute_force_fixed_points(sys), SizeLimitError);
    CHECK_THROWS_AS(grid_fixed_points(sys, 10), SizeLimitError);
    CHECK_THROWS_AS(grid_fixed_points(demo3(), 51), SizeLimitError);
    CHECK_THROWS_AS(grid_fixed_points(demo3(), 0), SizeLimitError);
}

TEST_CASE("grid oracle on the demo network") {
    const auto fps = grid_fixed_points(demo3(), 20);
    CHECK(fps.is_singleton);
    REQUIRE(fps.points.size() == 1);
    CHECK(fps.points[0] == Vec{1, 1, 1});
}

TEST_CASE("grid oracle sees many points along the cashless family") {
    const auto fps = grid_fixed_points(testing::cashless_cycle2(), 20);
    CHECK(fps.points.size() >= 3);
    CHECK(fps.continuum_detected);
    CHECK_FALSE(fps.is_singleton);
}

TEST_CASE("grid oracle on the single node") {
    const auto fps = grid_fixed_points(testing::single_node(), 10);
    CHECK(fps.is_singleton);
    REQUIRE(fps.points.size() == 1);
    CHECK(fps.points[0] == Vec{2});
}
