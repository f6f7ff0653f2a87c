#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "netclear/gen.hpp"
#include "netclear/graph.hpp"
#include "test_helpers.hpp"

using namespace netclear;
using testing::demo3;

namespace {

// Reachability expressed through boolean powers of the share pattern:
// reach(i, j) iff sum_{k=0}^{n-1} pattern^k (i, j) is nonzero.  Slower than
// the search the library uses, kept as an independent cross-check.
std::vector<char> reach_by_matrix_powers(const FinancialSystem& sys) {
    const std::size_t n = sys.size();
    std::vector<char> pattern(n * n, 0), power(n * n, 0), acc(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        acc[i * n + i] = 1;      // k = 0
        power[i * n + i] = 1;
        for (std::size_t j = 0; j < n; ++j) pattern[i * n + j] = sys.share(i, j) > 0.0;
    }
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<char> next(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t m = 0; m < n; ++m)
                if (power[i * n + m])
                    for (std::size_t j = 0; j < n; ++j)
                        if (pattern[m * n + j]) next[i * n + j] = 1;
        power = next;
        for (std::size_t i = 0; i < n * n; ++i) acc[i] = acc[i] || power[i];
    }
    return acc;
}

FinancialSystem identity3() {
    RawSystem raw;
    raw.n = 3;
    raw.pi = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    raw.p_bar = {1, 1, 1};
    raw.e = {0.5, 0, 1};
    return validate_system(raw);
}

}  // namespace

TEST_CASE("reachability on the demo network") {
    const auto sys = demo3();
    const Reachability r(sys);
    // node 1 reaches everything; 2 and 3 only each other and themselves
    CHECK(r.reach(0, 0));
    CHECK(r.reach(0, 1));
    CHECK(r.reach(0, 2));
    CHECK_FALSE(r.reach(1, 0));
    CHECK(r.reach(1, 1));
    CHECK(r.reach(1, 2));
    CHECK_FALSE(r.reach(2, 0));
    CHECK(r.reach(2, 1));
    CHECK(r.reach(2, 2));
}

TEST_CASE("reachability of the identity is the diagonal") {
    const Reachability r(identity3());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(r.reach(i, j) == (i == j));
}

TEST_CASE("two-cycle reaches everything") {
    const Reachability r(testing::cashless_cycle2());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(r.reach(i, j));
}

TEST_CASE("reachability is reflexive and transitive, and matches matrix powers") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GenSpec spec;
        spec.n = 3 + seed % 6;
        spec.seed = seed;
        spec.family = Family::random_sparse;
        spec.density = 0.25;
        const auto sys = generate(spec);
        const Reachability r(sys);
        const auto oracle = reach_by_matrix_powers(sys);
        const std::size_t n = sys.size();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(r.reach(i, i));
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(r.reach(i, j) == static_cast<bool>(oracle[i * n + j]));
                for (std::size_t k = 0; k < n; ++k)
                    if (r.reach(i, j) && r.reach(j, k)) CHECK(r.reach(i, k));
            }
        }
    }
}

TEST_CASE("risk orbits") {
    const auto sys = demo3();
    CHECK(risk_orbit(sys, 1) == NodeSet{1, 2});     // nodes 2 and 3, 1-based
    CHECK(risk_orbit(sys, 0) == NodeSet{0, 1, 2});
    CHECK(risk_orbit(identity3(), 1) == NodeSet{1});
    CHECK_THROWS_AS(risk_orbit(sys, 3), std::out_of_range);
}

TEST_CASE("regularity") {
    const auto demo = is_regular(demo3());
    CHECK_FALSE(demo.regular);
    REQUIRE(demo.witness.has_value());
    CHECK(*demo.witness == 1);  // node 2: its orbit {2, 3} holds no cash

    GenSpec spec;
    spec.n = 6;
    spec.seed = 9;
    spec.family = Family::random_dense;
    spec.cash_fraction = 1.0;  // everyone holds cash: trivially regular
    CHECK(is_regular(generate(spec)).regular);

    RawSystem raw;  // 2-cycle with cash at node 1: orbit of 2 contains node 1
    raw.n = 2;
    raw.pi = {{0, 1}, {1, 0}};
    raw.p_bar = {1, 1};
    raw.e = {1, 0};
    CHECK(is_regular(validate_system(raw)).regular);
}

TEST_CASE("cash accessible set") {
    CHECK(cash_accessible_set(demo3()) == NodeSet{0, 1, 2});
    CHECK(cash_accessible_set(testing::funded_plus_stranded_cycle()) == NodeSet{0});
    CHECK(cash_accessible_set(testing::cashless_cycle2()).empty());
}

TEST_CASE("node partition on the named instances") {
    const auto all = partition_nodes(demo3());
    CHECK(all.funded == NodeSet{0, 1, 2});
    CHECK(all.upstream.empty());
    CHECK(all.stranded.empty());

    const auto split = partition_nodes(testing::funded_plus_stranded_cycle());
    CHECK(split.funded == NodeSet{0});
    CHECK(split.upstream.empty());
    CHECK(split.stranded == NodeSet{1, 2});

    const auto chain = partition_nodes(testing::chain_to_cash_sink());
    CHECK(chain.funded == NodeSet{2});
    CHECK(chain.upstream == NodeSet{0, 1});
    CHECK(chain.stranded.empty());
}

TEST_CASE("partition classes: funded and stranded absorb, upstream never does") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        GenSpec spec;
        spec.n = 3 + seed % 6;
        spec.seed = seed;
        spec.family =
            seed % 3 == 0 ? Family::pan_mixed
                          : (seed % 3 == 1 ? Family::random_sparse : Family::non_regular);
        spec.density = 0.35;
        const auto sys = generate(spec);
        const auto part = partition_nodes(sys);

        CHECK(part.funded.size() + part.upstream.size() + part.stranded.size() == sys.size());
        if (!part.funded.empty()) CHECK(is_absorbing(sys, part.funded));
        if (!part.stranded.empty()) CHECK(is_absorbing(sys, part.stranded));
        if (!part.upstream.empty()) CHECK_FALSE(is_absorbing(sys, part.upstream));
    }
}

TEST_CASE("degenerate partitions") {
    GenSpec spec;
    spec.n = 5;
    spec.seed = 77;
    spec.family = Family::cashless;
    const auto part = partition_nodes(generate(spec));
    CHECK(part.funded.empty());
    CHECK(part.upstream.empty());
    CHECK(part.stranded == NodeSet{0, 1, 2, 3, 4});

    spec.family = Family::random_dense;
    spec.cash_fraction = 1.0;
    const auto full = partition_nodes(generate(spec));
    CHECK(full.funded == NodeSet{0, 1, 2, 3, 4});
    CHECK(full.upstream.empty());
    CHECK(full.stranded.empty());
}

TEST_CASE("is_absorbing on explicit sets") {
    const auto sys = demo3();
    CHECK_FALSE(is_absorbing(sys, {1}));  // node 2 pays node 3, which is outside
    CHECK(is_absorbing(sys, {1, 2}));
    CHECK(is_absorbing(sys, {0, 1, 2}));
}

TEST_CASE("restriction to an absorbing set") {
    const auto sys = testing::chain_to_cash_sink();
    const auto sub = restrict_system(sys, {2});
    CHECK(sub.system.size() == 1);
    CHECK(sub.system.share(0, 0) == 1.0);
    CHECK(sub.system.obligations() == Vec{0.5});
    CHECK(sub.system.cash() == Vec{1});
    CHECK(sub.to_parent == NodeSet{2});

    // Restricting to everything gives the system back.
    const auto whole = restrict_system(sys, {0, 1, 2});
    CHECK(whole.system == sys);

    CHECK_THROWS_AS(restrict_system(demo3(), NodeSet{1}), NotAbsorbingError);
    CHECK_THROWS_AS(restrict_system(sys, NodeSet{}), EmptySetError);
}

TEST_CASE("restricted shares are bitwise slices of the parent") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GenSpec spec;
        spec.n = 6;
        spec.seed = seed;
        spec.family = Family::pan_mixed;
        const auto sys = generate(spec);
        const auto part = partition_nodes(sys);
        if (part.funded.empty()) continue;
        const auto sub = restrict_system(sys, part.funded);
        for (std::size_t a = 0; a < sub.to_parent.size(); ++a)
            for (std::size_t b = 0; b < sub.to_parent.size(); ++b)
                CHECK(sub.system.share(a, b) == sys.share(sub.to_parent[a], sub.to_parent[b]));
    }
}
