#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "netclear/model.hpp"

namespace netclear {

/// splitmix64.  Chosen over <random> engines because the output is fixed by
/// these constants alone, so instances reproduce bit for bit across
/// platforms and reimplementations.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 significant bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Uniform in [0, bound).  Modulo bias is irrelevant at test-instance
    /// sizes and keeps the draw count deterministic.
    std::size_t next_index(std::size_t bound) {
        return static_cast<std::size_t>(next() % bound);
    }
};

enum class Family {
    random_dense,   // fully populated rows
    random_sparse,  // Bernoulli(density) support per row, at least one entry
    non_regular,    // contains a cashless cycle that cannot reach any cash
    cashless,       // no cash anywhere; every payment is zero by convention
    pan_mixed,      // funded, upstream and stranded regions all nonempty
};

Family family_from_name(std::string_view name);
std::string_view family_name(Family f);

struct GenSpec {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    Family family = Family::random_dense;
    std::optional<double> density;        // (0, 1]; per-family default when unset
    std::optional<double> cash_fraction;  // [0, 1]; per-family default when unset
};

/// Deterministic function of the spec: equal specs produce bitwise equal
/// systems.  The result always passes validate_system.  Family contracts:
/// random_* place cash on exactly ceil(cash_fraction * n) nodes, non_regular
/// systems fail the regularity check, cashless systems have zero cash, and
/// pan_mixed systems (n >= 3) have all three partition classes nonempty.
/// Throws InfeasibleSpecError when the spec cannot be met.
FinancialSystem generate(const GenSpec& spec);

}  // namespace netclear
