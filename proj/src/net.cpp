#include "agentnet/net.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "agentnet/support.hpp"

namespace agentnet {

Marking::Marking(std::vector<PlaceId> places) : places_(std::move(places)) {
    support::sort_unique(places_);
}

bool Marking::contains(const PlaceId& p) const {
    return support::contains(places_, p);
}

bool Marking::covers(const std::vector<PlaceId>& sorted) const {
    return support::is_subset(sorted, places_);
}

std::string Marking::key() const {
    return support::join(places_, ",");
}

void LabelledNet::validate() const {
    if (!std::is_sorted(places.begin(), places.end()))
        throw std::invalid_argument("net places are not sorted");
    if (std::adjacent_find(places.begin(), places.end()) != places.end())
        throw std::invalid_argument("duplicate place identifier");
    for (std::size_t i = 0; i + 1 < transitions.size(); ++i) {
        if (!(transitions[i].id < transitions[i + 1].id))
            throw std::invalid_argument("net transitions are not sorted by unique id");
    }
    for (const auto& t : transitions) {
        if (t.preset.empty() || t.postset.empty())
            throw std::invalid_argument("transition '" + t.id + "' has an empty preset or postset");
        for (const auto& p : t.preset)
            if (!support::contains(places, p))
                throw std::invalid_argument("preset of '" + t.id + "' mentions unknown place '" + p + "'");
        for (const auto& p : t.postset)
            if (!support::contains(places, p))
                throw std::invalid_argument("postset of '" + t.id + "' mentions unknown place '" + p + "'");
    }
    for (const auto& p : initial_marking.places())
        if (!support::contains(places, p))
            throw std::invalid_argument("initial marking mentions unknown place '" + p + "'");
}

const NetTransition* LabelledNet::find_transition(const TransitionId& t) const {
    auto it = std::lower_bound(transitions.begin(), transitions.end(), t,
                               [](const NetTransition& a, const TransitionId& id) { return a.id < id; });
    if (it == transitions.end() || it->id != t)
        return nullptr;
    return &*it;
}

const NetTransition& LabelledNet::transition(const TransitionId& t) const {
    const NetTransition* found = find_transition(t);
    if (found == nullptr)
        throw std::invalid_argument("unknown transition '" + t + "'");
    return *found;
}

std::vector<Label> LabelledNet::alphabet() const {
    std::vector<Label> out;
    out.reserve(transitions.size());
    for (const auto& t : transitions)
        out.push_back(t.label);
    support::sort_unique(out);
    return out;
}

bool enabled(const NetTransition& t, const Marking& m) {
    return m.covers(t.preset);
}

bool enabled(const LabelledNet& net, const Marking& m, const TransitionId& t) {
    return enabled(net.transition(t), m);
}

Marking fire_transition(const NetTransition& t, const Marking& m) {
    if (!enabled(t, m))
        throw std::invalid_argument("transition '" + t.id + "' is not enabled at {" + m.key() + "}");
    // Pure production into an already marked place would create a second
    // token; reject the firing instead of saturating.
    auto produced = support::set_difference(t.postset, t.preset);
    for (const auto& p : produced) {
        if (m.contains(p))
            throw std::runtime_error("1-safety violation: firing '" + t.id + "' at {" + m.key() +
                                     "} would double-mark place '" + p + "'");
    }
    auto tokens = support::set_difference(m.places(), t.preset);
    return Marking(support::set_union(tokens, t.postset));
}

Marking fire(const LabelledNet& net, const Marking& m, const TransitionId& t) {
    return fire_transition(net.transition(t), m);
}

std::vector<Marking> replay_sequence(const LabelledNet& net, const Marking& from,
                                     const std::vector<TransitionId>& steps) {
    std::vector<Marking> visited{from};
    for (const auto& t : steps)
        visited.push_back(fire(net, visited.back(), t));
    return visited;
}

std::span<const MarkingGraph::Arc> MarkingGraph::out_arcs(std::size_t node) const {
    auto lo = std::lower_bound(arcs.begin(), arcs.end(), node,
                               [](const Arc& a, std::size_t n) { return a.source < n; });
    auto hi = std::upper_bound(arcs.begin(), arcs.end(), node,
                               [](std::size_t n, const Arc& a) { return n < a.source; });
    return {arcs.data() + (lo - arcs.begin()), static_cast<std::size_t>(hi - lo)};
}

namespace {

struct Exploration {
    MarkingGraph graph;
    bool safe = true;
    std::string message;
    std::vector<TransitionId> trace;
};

// Shared BFS for marking_graph and check_one_safe; `tolerate` selects
// diagnostic reporting over throwing when a firing breaks 1-safety.
Exploration explore(const LabelledNet& net, bool tolerate) {
    net.validate();
    Exploration ex;
    std::map<Marking, std::size_t> index;
    std::vector<std::pair<std::size_t, TransitionId>> parent;  // node -> (pred, firing)

    ex.graph.nodes.push_back(net.initial_marking);
    index.emplace(net.initial_marking, 0);
    parent.emplace_back(0, TransitionId{});

    for (std::size_t current = 0; current < ex.graph.nodes.size(); ++current) {
        const Marking m = ex.graph.nodes[current];
        for (const auto& t : net.transitions) {
            if (!enabled(t, m))
                continue;
            Marking next;
            try {
                next = fire_transition(t, m);
            } catch (const std::runtime_error& violation) {
                if (!tolerate)
                    throw;
                ex.safe = false;
                ex.message = violation.what();
                for (std::size_t n = current; n != 0; n = parent[n].first)
                    ex.trace.push_back(parent[n].second);
                std::reverse(ex.trace.begin(), ex.trace.end());
                ex.trace.push_back(t.id);
                return ex;
            }
            auto [it, inserted] = index.emplace(next, ex.graph.nodes.size());
            if (inserted) {
                ex.graph.nodes.push_back(next);
                parent.emplace_back(current, t.id);
            }
            ex.graph.arcs.push_back({current, t.id, t.label, it->second});
        }
    }
    return ex;
}

}  // namespace

MarkingGraph marking_graph(const LabelledNet& net) {
    return explore(net, /*tolerate=*/false).graph;
}

std::set<TransitionId> live_transitions(const MarkingGraph& mg) {
    std::set<TransitionId> out;
    for (const auto& arc : mg.arcs)
        out.insert(arc.transition);
    return out;
}

bool is_one_live_bruteforce(const LabelledNet& net, const TransitionId& t) {
    net.transition(t);  // unknown transition -> error
    return live_transitions(marking_graph(net)).count(t) != 0;
}

PairRelation classify_pair(const LabelledNet& net, const Marking& m, const TransitionId& t1,
                           const TransitionId& t2) {
    if (t1 == t2)
        throw std::invalid_argument("classify_pair requires two distinct transitions");
    const NetTransition& a = net.transition(t1);
    const NetTransition& b = net.transition(t2);
    if (!enabled(a, m))
        throw std::invalid_argument("transition '" + t1 + "' is not enabled at {" + m.key() + "}");
    if (!enabled(b, m))
        throw std::invalid_argument("transition '" + t2 + "' is not enabled at {" + m.key() + "}");
    if (support::intersects(a.preset, b.preset))
        return PairRelation::Conflict;
    if (!support::intersects(a.postset, b.postset))
        return PairRelation::Concurrent;
    return PairRelation::Neither;
}

SafetyReport check_one_safe(const LabelledNet& net) {
    Exploration ex = explore(net, /*tolerate=*/true);
    return {ex.safe, ex.message, ex.trace};
}

}  // namespace agentnet
