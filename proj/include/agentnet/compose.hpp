#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agentnet/lts.hpp"
#include "agentnet/net.hpp"

namespace agentnet {

/// Identity of a fused transition: its label plus, for every participating
/// agent, that agent's component transition. Rendered canonically (sorted
/// agent indices) so the same fused transition is recognizable across
/// subsystems.
struct GlobalTransition {
    Label label;
    std::map<std::size_t, TransitionId> components;

    std::string id() const;
    auto operator<=>(const GlobalTransition&) const = default;
};

/// A composed net plus the provenance of its fused transitions.
struct ComposedNet {
    LabelledNet net;
    std::vector<std::size_t> agent_indices;              // sorted global indices
    std::map<TransitionId, GlobalTransition> provenance; // fused id -> identity
};

/// Transition fusion: places are the disjoint union of the agents' places;
/// for each label, every combination of the owning agents' same-labelled
/// transitions becomes one fused transition whose pre/postset is the union of
/// the components'. Fused transitions enabled in no reachable marking are
/// retained. `agent_indices[k]` names the global index of `agent_nets[k]`.
ComposedNet compose_nets(const std::vector<LabelledNet>& agent_nets,
                         const std::vector<std::size_t>& agent_indices);
ComposedNet compose_nets(const std::vector<LabelledNet>& agent_nets);

/// Enumerates the fused transitions of one label in canonical (odometer)
/// order without materializing the whole product. Returning false from the
/// callback stops the enumeration.
void for_each_fused(const std::vector<LabelledNet>& agent_nets, const Label& label,
                    const std::function<bool(const GlobalTransition&)>& fn);

/// The net composed of exactly the agents whose alphabet intersects a label
/// selection, together with the selection that produced it. Labels partly
/// owned by excluded agents synchronize only among the included ones.
struct Subsystem {
    std::vector<std::size_t> agent_indices;  // sorted
    std::set<Label> origin_labels;
    ComposedNet composed;
};

Subsystem make_subsystem(const Amas& amas, const std::vector<LabelledNet>& agent_nets,
                         const std::set<Label>& labels);

/// The subsystem transition carrying the same components as `t`, or absent
/// when some agent owning t's label is excluded from the subsystem. Total and
/// unique when the label belongs to the subsystem's origin selection.
std::optional<TransitionId> project_transition(const GlobalTransition& t, const Subsystem& sub);

/// Label-projected marking graph as a deterministic LTS (states are marking
/// keys). Throws std::runtime_error if the projection is nondeterministic.
Lts lts_from_marking_graph(const MarkingGraph& mg);

/// States-as-places nets for every agent of an AMAS, in agent order.
std::vector<LabelledNet> agent_nets_of(const Amas& amas);

/// Checks that synthesis and composition commute: the marking graph of the
/// fused global net is isomorphic to the pruned interleaved composition.
bool verify_proposition1(const Amas& amas);

}  // namespace agentnet
