#include "agentnet/lts.hpp"

#include <deque>
#include <stdexcept>

#include "agentnet/support.hpp"

namespace agentnet {

void Lts::validate() const {
    if (states.empty())
        throw std::invalid_argument("LTS has no states");
    if (states.count(initial) == 0)
        throw std::invalid_argument("initial state '" + initial + "' is not a state");
    for (const auto& [key, target] : trans) {
        const auto& [src, event] = key;
        if (states.count(src) == 0)
            throw std::invalid_argument("arc source '" + src + "' is not a state");
        if (states.count(target) == 0)
            throw std::invalid_argument("arc target '" + target + "' is not a state");
        if (events.count(event) == 0)
            throw std::invalid_argument("arc label '" + event + "' is not an event");
    }
}

std::optional<StateId> Lts::successor(const StateId& s, const Label& e) const {
    auto it = trans.find({s, e});
    if (it == trans.end())
        return std::nullopt;
    return it->second;
}

std::set<Label> Lts::protocol(const StateId& s) const {
    if (!has_state(s))
        throw std::invalid_argument("protocol: unknown state '" + s + "'");
    std::set<Label> out;
    for (auto it = trans.lower_bound({s, Label{}}); it != trans.end() && it->first.first == s; ++it)
        out.insert(it->first.second);
    return out;
}

std::vector<std::pair<Label, StateId>> Lts::out_arcs(const StateId& s) const {
    std::vector<std::pair<Label, StateId>> out;
    for (auto it = trans.lower_bound({s, Label{}}); it != trans.end() && it->first.first == s; ++it)
        out.emplace_back(it->first.second, it->second);
    return out;
}

void Amas::validate() const {
    if (agents.empty())
        throw std::invalid_argument("AMAS has no agents");
    if (!agent_names.empty() && agent_names.size() != agents.size())
        throw std::invalid_argument("agent name list does not match agent count");
    std::set<StateId> seen;
    for (const auto& agent : agents) {
        agent.validate();
        for (const auto& s : agent.states) {
            if (!seen.insert(s).second)
                throw std::invalid_argument("agent state sets are not disjoint: '" + s + "'");
        }
    }
}

std::vector<std::size_t> Amas::agents_sharing(const Label& e) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (agents[i].events.count(e) != 0)
            out.push_back(i);
    }
    return out;
}

std::set<Label> Amas::alphabet() const {
    std::set<Label> out;
    for (const auto& agent : agents)
        out.insert(agent.events.begin(), agent.events.end());
    return out;
}

std::string Amas::agent_name(std::size_t i) const {
    if (i < agent_names.size() && !agent_names[i].empty())
        return agent_names[i];
    return "a" + std::to_string(i);
}

StateId join_global_state(const std::vector<StateId>& locals) {
    return support::join(locals, "+");
}

std::vector<StateId> split_global_state(const StateId& global) {
    std::vector<StateId> out;
    std::size_t start = 0;
    while (true) {
        auto pos = global.find('+', start);
        if (pos == std::string::npos) {
            out.push_back(global.substr(start));
            break;
        }
        out.push_back(global.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

namespace {

// Arcs of the global transition function at one tuple: for every event, the
// successor tuple if every owning agent locally enables the event.
std::vector<std::pair<Label, std::vector<StateId>>> global_arcs(
    const Amas& amas, const std::map<Label, std::vector<std::size_t>>& owners,
    const std::vector<StateId>& locals) {
    std::vector<std::pair<Label, std::vector<StateId>>> out;
    for (const auto& [event, owning] : owners) {
        std::vector<StateId> next = locals;
        bool enabled = true;
        for (std::size_t i : owning) {
            auto succ = amas.agents[i].successor(locals[i], event);
            if (!succ) {
                enabled = false;
                break;
            }
            next[i] = *succ;
        }
        if (enabled)
            out.emplace_back(event, std::move(next));
    }
    return out;
}

}  // namespace

Lts compose_iis(const Amas& amas, IisConstruction mode) {
    amas.validate();

    std::map<Label, std::vector<std::size_t>> owners;
    for (const Label& e : amas.alphabet())
        owners.emplace(e, amas.agents_sharing(e));

    Lts result;
    for (const auto& [e, who] : owners)
        result.events.insert(e);

    std::vector<StateId> init_tuple;
    init_tuple.reserve(amas.agents.size());
    for (const auto& agent : amas.agents)
        init_tuple.push_back(agent.initial);
    result.initial = join_global_state(init_tuple);

    if (mode == IisConstruction::ReachableOnly) {
        std::deque<std::vector<StateId>> queue;
        queue.push_back(init_tuple);
        result.states.insert(result.initial);
        while (!queue.empty()) {
            std::vector<StateId> locals = std::move(queue.front());
            queue.pop_front();
            const StateId src = join_global_state(locals);
            for (auto& [event, next] : global_arcs(amas, owners, locals)) {
                StateId dst = join_global_state(next);
                result.trans.emplace(std::make_pair(src, event), dst);
                if (result.states.insert(dst).second)
                    queue.push_back(std::move(next));
            }
        }
    } else {
        // Full product: every tuple of local states, arcs wherever the global
        // transition function is defined.
        std::vector<std::vector<StateId>> locals_of;
        for (const auto& agent : amas.agents)
            locals_of.emplace_back(agent.states.begin(), agent.states.end());
        std::vector<std::size_t> odo(amas.agents.size(), 0);
        while (true) {
            std::vector<StateId> locals;
            locals.reserve(odo.size());
            for (std::size_t i = 0; i < odo.size(); ++i)
                locals.push_back(locals_of[i][odo[i]]);
            const StateId src = join_global_state(locals);
            result.states.insert(src);
            for (auto& [event, next] : global_arcs(amas, owners, locals))
                result.trans.emplace(std::make_pair(src, event), join_global_state(next));
            std::size_t k = 0;
            for (; k < odo.size(); ++k) {
                if (++odo[k] < locals_of[k].size())
                    break;
                odo[k] = 0;
            }
            if (k == odo.size())
                break;
        }
    }
    result.validate();
    return result;
}

Lts reachable_prune(const Lts& lts) {
    std::set<StateId> reached{lts.initial};
    std::deque<StateId> queue{lts.initial};
    while (!queue.empty()) {
        StateId s = std::move(queue.front());
        queue.pop_front();
        for (const auto& [label, target] : lts.out_arcs(s)) {
            if (reached.insert(target).second)
                queue.push_back(target);
        }
    }
    Lts result;
    result.states = reached;
    result.events = lts.events;
    result.initial = lts.initial;
    for (const auto& [key, target] : lts.trans) {
        if (reached.count(key.first) != 0)
            result.trans.insert({key, target});
    }
    return result;
}

bool iso_check(const Lts& a, const Lts& b) {
    if (reachable_prune(a).states.size() != a.states.size() ||
        reachable_prune(b).states.size() != b.states.size())
        throw std::invalid_argument("iso_check requires reachable-pruned inputs");

    if (a.states.size() != b.states.size() || a.trans.size() != b.trans.size())
        return false;

    // Deterministic + reachable: the isomorphism, if any, is forced by a
    // synchronized traversal from the initial pair.
    std::map<StateId, StateId> a_to_b, b_to_a;
    std::deque<std::pair<StateId, StateId>> queue;
    a_to_b[a.initial] = b.initial;
    b_to_a[b.initial] = a.initial;
    queue.emplace_back(a.initial, b.initial);
    while (!queue.empty()) {
        auto [x, y] = std::move(queue.front());
        queue.pop_front();
        auto xs = a.out_arcs(x);
        auto ys = b.out_arcs(y);
        if (xs.size() != ys.size())
            return false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i].first != ys[i].first)
                return false;
            const StateId& xt = xs[i].second;
            const StateId& yt = ys[i].second;
            auto fwd = a_to_b.find(xt);
            auto bwd = b_to_a.find(yt);
            if (fwd == a_to_b.end() && bwd == b_to_a.end()) {
                a_to_b[xt] = yt;
                b_to_a[yt] = xt;
                queue.emplace_back(xt, yt);
            } else if (fwd == a_to_b.end() || bwd == b_to_a.end() || fwd->second != yt ||
                       bwd->second != xt) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace agentnet
