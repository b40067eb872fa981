#pragma once

#include <cstdint>

namespace parikh {

/// Resource guards and parallelism for the counting engines.
///
/// The defaults are the desk-scale limits of the oracles; none of them
/// changes a computed value, they only decide when to refuse.
struct EngineOptions {
    /// Largest Parikh norm accepted by word enumeration.
    std::uint64_t enumerate_cap = 10;
    /// Largest prod(p(a)+1) accepted by the sub-vector DP.
    std::uint64_t dp_lattice_cap = 10'000'000;
    /// Largest formula constant c accepted by the Parikh-vector probability engine.
    std::uint64_t parikh_cost_cap = 64;
    /// Largest (c+1)*|Q| accepted by the cost-layer DP.
    std::uint64_t cost_dp_cap = 50'000'000;
    /// Worker threads for flow and Parikh-vector enumeration. Results never depend on it.
    unsigned workers = 1;

    /// Defaults overridden by PARIKH_ENUM_CAP, PARIKH_DP_CAP, PARIKH_COST_CAP,
    /// PARIKH_COST_DP_CAP and PARIKH_WORKERS when set.
    static EngineOptions from_env();
};

} // namespace parikh
