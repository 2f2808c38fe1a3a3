#include "agentnet/compose.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "agentnet/support.hpp"
#include "agentnet/synthesis.hpp"

namespace agentnet {

std::string GlobalTransition::id() const {
    std::vector<std::string> parts;
    parts.reserve(components.size());
    for (const auto& [agent, tid] : components)
        parts.push_back(std::to_string(agent) + ":" + tid);
    return label + "[" + support::join(parts, ",") + "]";
}

void for_each_fused(const std::vector<LabelledNet>& agent_nets, const Label& label,
                    const std::function<bool(const GlobalTransition&)>& fn) {
    std::vector<std::size_t> owners;
    std::vector<std::vector<const NetTransition*>> choices;
    for (std::size_t k = 0; k < agent_nets.size(); ++k) {
        std::vector<const NetTransition*> own;
        for (const auto& t : agent_nets[k].transitions)
            if (t.label == label)
                own.push_back(&t);
        if (!own.empty()) {
            owners.push_back(k);
            choices.push_back(std::move(own));
        }
    }
    if (choices.empty())
        return;
    std::vector<std::size_t> odo(choices.size(), 0);
    while (true) {
        GlobalTransition gt;
        gt.label = label;
        for (std::size_t c = 0; c < choices.size(); ++c)
            gt.components[owners[c]] = choices[c][odo[c]]->id;
        if (!fn(gt))
            return;
        std::size_t c = 0;
        for (; c < odo.size(); ++c) {
            if (++odo[c] < choices[c].size())
                break;
            odo[c] = 0;
        }
        if (c == odo.size())
            return;
    }
}

ComposedNet compose_nets(const std::vector<LabelledNet>& agent_nets,
                         const std::vector<std::size_t>& agent_indices) {
    if (agent_nets.empty())
        throw std::invalid_argument("compose_nets: no agent nets");
    if (agent_nets.size() != agent_indices.size())
        throw std::invalid_argument("compose_nets: index list does not match net list");

    ComposedNet out;
    out.agent_indices = agent_indices;
    std::sort(out.agent_indices.begin(), out.agent_indices.end());

    for (const auto& net : agent_nets) {
        for (const auto& p : net.places) {
            if (support::contains(out.net.places, p))
                throw std::invalid_argument("compose_nets: place collision on '" + p + "'");
        }
        out.net.places = support::set_union(out.net.places, net.places);
    }

    std::vector<PlaceId> marked;
    for (const auto& net : agent_nets)
        marked = support::set_union(marked, net.initial_marking.places());
    out.net.initial_marking = Marking(std::move(marked));

    std::vector<Label> labels;
    for (const auto& net : agent_nets)
        labels = support::set_union(labels, net.alphabet());

    for (const auto& label : labels) {
        for_each_fused(agent_nets, label, [&](const GlobalTransition& local) {
            GlobalTransition gt;
            gt.label = label;
            NetTransition fused;
            fused.label = label;
            for (const auto& [position, tid] : local.components) {
                gt.components[agent_indices[position]] = tid;
                const NetTransition& part = agent_nets[position].transition(tid);
                fused.preset = support::set_union(fused.preset, part.preset);
                fused.postset = support::set_union(fused.postset, part.postset);
            }
            fused.id = gt.id();
            out.net.transitions.push_back(std::move(fused));
            out.provenance.emplace(out.net.transitions.back().id, std::move(gt));
            return true;
        });
    }
    std::sort(out.net.transitions.begin(), out.net.transitions.end(),
              [](const NetTransition& a, const NetTransition& b) { return a.id < b.id; });
    out.net.validate();
    return out;
}

ComposedNet compose_nets(const std::vector<LabelledNet>& agent_nets) {
    std::vector<std::size_t> indices(agent_nets.size());
    std::iota(indices.begin(), indices.end(), 0);
    return compose_nets(agent_nets, indices);
}

Subsystem make_subsystem(const Amas& amas, const std::vector<LabelledNet>& agent_nets,
                         const std::set<Label>& labels) {
    if (labels.empty())
        throw std::invalid_argument("subsystem: empty label selection");
    if (agent_nets.size() != amas.agents.size())
        throw std::invalid_argument("subsystem: agent net list does not match AMAS");
    std::vector<std::size_t> selected;
    for (const auto& label : labels)
        selected = support::set_union(selected, amas.agents_sharing(label));
    if (selected.empty())
        throw std::invalid_argument("subsystem: no agent owns any of the selected labels");
    std::vector<LabelledNet> nets;
    nets.reserve(selected.size());
    for (std::size_t i : selected)
        nets.push_back(agent_nets[i]);
    Subsystem sub;
    sub.agent_indices = selected;
    sub.origin_labels = labels;
    sub.composed = compose_nets(nets, selected);
    return sub;
}

std::optional<TransitionId> project_transition(const GlobalTransition& t, const Subsystem& sub) {
    for (const auto& [agent, tid] : t.components) {
        if (!support::contains(sub.agent_indices, agent))
            return std::nullopt;
    }
    const TransitionId id = t.id();
    if (sub.composed.net.find_transition(id) == nullptr)
        return std::nullopt;
    return id;
}

Lts lts_from_marking_graph(const MarkingGraph& mg) {
    Lts lts;
    for (const auto& node : mg.nodes)
        lts.states.insert(node.key());
    lts.initial = mg.nodes[mg.initial].key();
    for (const auto& arc : mg.arcs) {
        lts.events.insert(arc.label);
        auto key = std::make_pair(mg.nodes[arc.source].key(), arc.label);
        auto dst = mg.nodes[arc.target].key();
        auto [it, inserted] = lts.trans.emplace(key, dst);
        if (!inserted && it->second != dst)
            throw std::runtime_error("label projection of the marking graph is nondeterministic at {" +
                                     key.first + "} on '" + arc.label + "'");
    }
    lts.validate();
    return lts;
}

std::vector<LabelledNet> agent_nets_of(const Amas& amas) {
    std::vector<LabelledNet> nets;
    nets.reserve(amas.agents.size());
    for (const auto& agent : amas.agents)
        nets.push_back(agent_to_net(agent));
    return nets;
}

bool verify_proposition1(const Amas& amas) {
    const ComposedNet global = compose_nets(agent_nets_of(amas));
    const Lts behaviour = lts_from_marking_graph(marking_graph(global.net));
    const Lts pruned = reachable_prune(compose_iis(amas));
    return iso_check(behaviour, pruned);
}

}  // namespace agentnet
