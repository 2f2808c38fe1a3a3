#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace agentnet {

using StateId = std::string;
using Label = std::string;

/// Deterministic initialized labelled transition system: the behavioural
/// skeleton of a single agent or of a composed system. `trans` is a partial
/// function, so there is at most one successor per (state, label).
struct Lts {
    std::set<StateId> states;
    std::set<Label> events;
    std::map<std::pair<StateId, Label>, StateId> trans;
    StateId initial;

    void validate() const;

    bool has_state(const StateId& s) const { return states.count(s) != 0; }

    std::optional<StateId> successor(const StateId& s, const Label& e) const;

    /// Labels available in `s`, read off the domain of `trans` (the agent's
    /// protocol). Throws std::invalid_argument for an unknown state.
    std::set<Label> protocol(const StateId& s) const;

    /// Outgoing arcs of `s` as (label, target), sorted by label.
    std::vector<std::pair<Label, StateId>> out_arcs(const StateId& s) const;
};

/// Ordered collection of agents. State identifier sets must be pairwise
/// disjoint (ingestion namespaces them with the agent index); event sets may
/// overlap, and overlapping labels synchronize.
struct Amas {
    std::vector<Lts> agents;
    std::vector<std::string> agent_names;  // optional; same length when set

    void validate() const;

    /// Indices of the agents whose event set contains `e`, sorted.
    std::vector<std::size_t> agents_sharing(const Label& e) const;

    std::set<Label> alphabet() const;

    std::string agent_name(std::size_t i) const;
};

/// Rendering of a global state as the '+'-joined tuple of local states.
StateId join_global_state(const std::vector<StateId>& locals);
std::vector<StateId> split_global_state(const StateId& global);

enum class IisConstruction {
    ReachableOnly,  // forward exploration from the initial tuple
    FullProduct     // every syntactically constructible tuple
};

/// Interleaved composition of the agents: a shared label is enabled in a
/// global state iff it is locally enabled in every agent owning it, and its
/// occurrence moves exactly the owning agents. By default only the fragment
/// reachable from the initial tuple is built.
Lts compose_iis(const Amas& amas, IisConstruction mode = IisConstruction::ReachableOnly);

/// Sub-LTS induced by the states reachable from the initial state.
Lts reachable_prune(const Lts& lts);

/// Exact isomorphism of two reachable-pruned deterministic LTSs, decided by a
/// synchronized traversal from the initial pair. Throws std::invalid_argument
/// if either input still has unreachable states.
bool iso_check(const Lts& a, const Lts& b);

}  // namespace agentnet
