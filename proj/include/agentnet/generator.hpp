#pragma once

#include <cstdint>

#include "agentnet/lts.hpp"

namespace agentnet {

/// Bounds for seeded random AMAS instances. Sizes are drawn per instance
/// within the bounds; shared labels arise from overlapping per-agent
/// alphabets drawn from one small pool.
struct GenOptions {
    std::uint64_t seed = 0;
    std::size_t max_agents = 4;
    std::size_t max_states = 5;   // per agent
    std::size_t max_labels = 6;   // global pool
};

/// Deterministic: equal options give identical models on every platform.
Amas generate_amas(const GenOptions& options);

}  // namespace agentnet
