#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agentnet/lts.hpp"
#include "agentnet/net.hpp"

namespace agentnet {

/// A region of an LTS: a state subset every label uniformly enters,
/// uniformly leaves, or does not cross. Regions are the place candidates of
/// 1-safe synthesis.
struct Region {
    std::vector<StateId> members;  // sorted unique
    auto operator<=>(const Region&) const = default;
};

bool is_region(const Lts& lts, const std::vector<StateId>& subset);

/// All regions, including the two trivial ones, by exhaustive subset search.
/// Throws std::invalid_argument when the state count exceeds `max_states`
/// (the search is 2^|states|); large systems should use the states-as-places
/// translation `agent_to_net` instead.
std::vector<Region> enumerate_regions(const Lts& lts, std::size_t max_states = 20);

/// Non-empty regions containing no strictly smaller non-empty region.
std::vector<Region> minimal_regions(const std::vector<Region>& regions);

struct SeparationFailure {
    enum class Kind { State, EventState };
    Kind kind;
    StateId state;
    StateId other;  // second state of an unseparated pair (Kind::State)
    Label event;    // offending label (Kind::EventState)
    std::string to_string() const;
};

struct SeparationCheck {
    bool holds = false;
    std::optional<SeparationFailure> witness;
};

/// State separation: every pair of distinct states is told apart by a region.
SeparationCheck check_ssp(const Lts& lts, const std::vector<Region>& regions);

/// Event-state separation: for every state not enabling a label, some region
/// excludes the state and is left by the label.
SeparationCheck check_essp(const Lts& lts, const std::vector<Region>& regions);

struct SynthesisResult {
    std::optional<LabelledNet> net;
    std::optional<SeparationFailure> failure;
    bool ok() const { return net.has_value(); }
};

/// Exact region-based synthesis over the reachable part of `lts`: one net
/// transition per label, one place per minimal region, flow by the uniform
/// enter/leave/inside rule. Succeeds iff SSP and ESSP hold; the marking graph
/// of the result is then isomorphic to reachable_prune(lts).
SynthesisResult synthesize(const Lts& lts, std::size_t max_states = 20);

/// Identifier of the per-arc transition used by the states-as-places
/// translation.
TransitionId arc_transition_id(const StateId& src, const Label& label, const StateId& dst);

/// States-as-places translation: one place per state, one transition per arc
/// (maximal label splitting), initial marking the singleton initial state.
/// Always succeeds; the labelling is generally non-injective.
LabelledNet agent_to_net(const Lts& agent);

}  // namespace agentnet
