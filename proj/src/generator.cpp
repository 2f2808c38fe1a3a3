#include "agentnet/generator.hpp"

#include <random>

#include "agentnet/model_format.hpp"

namespace agentnet {

namespace {

// mt19937_64 output is standardized; modulo reduction keeps draws identical
// across platforms (distribution classes are implementation-defined).
std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
    return bound == 0 ? 0 : static_cast<std::size_t>(rng() % bound);
}

// min..max inclusive
std::size_t draw_between(std::mt19937_64& rng, std::size_t min, std::size_t max) {
    if (max <= min)
        return min;
    return min + draw(rng, max - min + 1);
}

}  // namespace

Amas generate_amas(const GenOptions& options) {
    std::mt19937_64 rng(options.seed);

    const std::size_t n_agents = draw_between(rng, std::min<std::size_t>(2, options.max_agents),
                                              std::max<std::size_t>(1, options.max_agents));
    const std::size_t pool_size = draw_between(rng, std::min<std::size_t>(2, options.max_labels),
                                               std::max<std::size_t>(1, options.max_labels));
    std::vector<Label> pool;
    for (std::size_t i = 0; i < pool_size; ++i)
        pool.push_back("e" + std::to_string(i));

    Amas amas;
    for (std::size_t i = 0; i < n_agents; ++i) {
        const std::size_t n_states = draw_between(rng, std::min<std::size_t>(2, options.max_states),
                                                  std::max<std::size_t>(1, options.max_states));
        // Per-agent alphabet: a small slice of the pool, so labels overlap
        // between agents often enough to exercise synchronization.
        const std::size_t alpha_size = draw_between(rng, 1, std::min<std::size_t>(4, pool_size));
        std::vector<Label> shuffled = pool;
        for (std::size_t k = shuffled.size(); k > 1; --k)
            std::swap(shuffled[k - 1], shuffled[draw(rng, k)]);
        shuffled.resize(alpha_size);

        Lts agent;
        std::vector<StateId> states;
        for (std::size_t s = 0; s < n_states; ++s)
            states.push_back(namespaced_state(i, "s" + std::to_string(s)));
        agent.states.insert(states.begin(), states.end());
        agent.initial = states[0];

        for (const auto& src : states) {
            const std::size_t degree = draw(rng, alpha_size + 1);
            std::vector<Label> labels = shuffled;
            for (std::size_t k = labels.size(); k > 1; --k)
                std::swap(labels[k - 1], labels[draw(rng, k)]);
            for (std::size_t d = 0; d < degree; ++d) {
                const StateId& dst = states[draw(rng, n_states)];
                agent.trans.emplace(std::make_pair(src, labels[d]), dst);
            }
        }
        // Events are exactly the labels in use.
        for (const auto& [key, dst] : agent.trans)
            agent.events.insert(key.second);
        agent.validate();
        amas.agents.push_back(std::move(agent));
        amas.agent_names.push_back("a" + std::to_string(i));
    }
    amas.validate();
    return amas;
}

}  // namespace agentnet
