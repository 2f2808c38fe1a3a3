#include "agentnet/liveness.hpp"

#include <algorithm>
#include <stdexcept>

#include "agentnet/support.hpp"

namespace agentnet {

std::set<Label> MinimalPath::label_set() const {
    return {step_labels.begin(), step_labels.end()};
}

MinimalPathStream::MinimalPathStream(const MarkingGraph& mg, TransitionId target)
    : mg_(&mg), target_(std::move(target)), on_path_(mg.nodes.size(), false) {
    stack_.push_back({mg.initial, 0});
    on_path_[mg.initial] = true;
}

MinimalPath MinimalPathStream::materialize(const MarkingGraph::Arc& last) const {
    MinimalPath path;
    path.steps.reserve(path_arcs_.size() + 1);
    path.markings.reserve(path_arcs_.size() + 2);
    path.markings.push_back(mg_->nodes[stack_.front().node]);
    for (const auto* arc : path_arcs_) {
        path.steps.push_back(arc->transition);
        path.step_labels.push_back(arc->label);
        path.markings.push_back(mg_->nodes[arc->target]);
    }
    path.steps.push_back(last.transition);
    path.step_labels.push_back(last.label);
    path.markings.push_back(mg_->nodes[last.target]);
    return path;
}

std::optional<MinimalPath> MinimalPathStream::next() {
    while (!stack_.empty()) {
        Frame& frame = stack_.back();
        const auto arcs = mg_->out_arcs(frame.node);
        const std::size_t arc_offset = frame.cursor / 2;
        if (arc_offset >= arcs.size()) {
            on_path_[frame.node] = false;
            stack_.pop_back();
            if (!path_arcs_.empty())
                path_arcs_.pop_back();
            continue;
        }
        const MarkingGraph::Arc& arc = arcs[arc_offset];
        if (frame.cursor % 2 == 0) {
            // Emission phase: a target occurrence ends a minimal path here.
            // The final marking is allowed to revisit an on-path marking.
            frame.cursor += 1;
            if (arc.transition == target_)
                return materialize(arc);
            continue;
        }
        // Descent phase: extend the path while markings stay distinct.
        frame.cursor += 1;
        if (!on_path_[arc.target]) {
            on_path_[arc.target] = true;
            path_arcs_.push_back(&arc);
            stack_.push_back({arc.target, 0});
        }
    }
    return std::nullopt;
}

PathQueue::PathQueue(MinimalPathStream stream, std::size_t frontier_capacity)
    : stream_(std::move(stream)), capacity_(std::max<std::size_t>(1, frontier_capacity)) {}

void PathQueue::refill() {
    while (!stream_done_ && frontier_.size() < capacity_) {
        auto path = stream_.next();
        if (!path) {
            stream_done_ = true;
            break;
        }
        frontier_.push_back(std::move(*path));
    }
}

bool PathQueue::empty() {
    refill();
    return frontier_.empty();
}

MinimalPath PathQueue::select(PathHeuristic heuristic, const AgentCost& new_agent_count) {
    refill();
    if (frontier_.empty())
        throw std::logic_error("select_path: empty path collection");

    std::size_t best = 0;
    if (heuristic != PathHeuristic::InputOrder) {
        auto better = [&](std::size_t lhs, std::size_t rhs) {
            const MinimalPath& a = frontier_[lhs];
            const MinimalPath& b = frontier_[rhs];
            if (heuristic == PathHeuristic::FewestNewAgents) {
                const std::size_t ca = new_agent_count(a);
                const std::size_t cb = new_agent_count(b);
                if (ca != cb)
                    return ca < cb;
            }
            if (a.length() != b.length())
                return a.length() < b.length();
            return a.steps < b.steps;
        };
        for (std::size_t i = 1; i < frontier_.size(); ++i)
            if (better(i, best))
                best = i;
    }
    MinimalPath chosen = std::move(frontier_[best]);
    frontier_.erase(frontier_.begin() + static_cast<std::ptrdiff_t>(best));
    return chosen;
}

LivenessAnalyzer::LivenessAnalyzer(const Amas& amas, const std::vector<LabelledNet>& agent_nets,
                                   LivenessOptions options)
    : amas_(amas), nets_(agent_nets), options_(options) {
    if (agent_nets.size() != amas.agents.size())
        throw std::invalid_argument("liveness: agent net list does not match AMAS");
    std::vector<PlaceId> marked;
    for (const auto& net : nets_)
        marked = support::set_union(marked, net.initial_marking.places());
    global_initial_ = Marking(std::move(marked));
}

std::vector<std::size_t> LivenessAnalyzer::agents_of_labels(const std::set<Label>& labels) const {
    std::vector<std::size_t> out;
    for (const auto& label : labels)
        out = support::set_union(out, amas_.agents_sharing(label));
    return out;
}

const LivenessAnalyzer::CachedSubsystem& LivenessAnalyzer::subsystem_for(
    const std::vector<std::size_t>& agents, const std::set<Label>& labels) {
    auto it = cache_.find(agents);
    if (it == cache_.end()) {
        CachedSubsystem entry;
        entry.sub = make_subsystem(amas_, nets_, labels);
        entry.mg = marking_graph(entry.sub.composed.net);
        it = cache_.emplace(agents, std::move(entry)).first;
    }
    if (explored_seen_.insert(agents).second)
        explored_.push_back({agents, it->second.mg.nodes.size(), it->second.mg.arcs.size()});
    return it->second;
}

MinimalPath LivenessAnalyzer::replay_on_global(const MinimalPath& path, const Subsystem& sub,
                                               const GlobalTransition& target) const {
    MinimalPath global;
    global.steps = path.steps;
    global.step_labels = path.step_labels;
    global.markings.push_back(global_initial_);
    Marking current = global_initial_;
    for (const auto& step : path.steps) {
        const GlobalTransition& gt = sub.composed.provenance.at(step);
        // Every agent owning the step's label must be a component; otherwise
        // the sequence is under-synchronized and proves nothing globally.
        const auto owners = amas_.agents_sharing(gt.label);
        for (std::size_t owner : owners) {
            if (gt.components.find(owner) == gt.components.end())
                throw std::logic_error("liveness witness misses owner of '" + gt.label + "'");
        }
        NetTransition fused;
        fused.id = step;
        fused.label = gt.label;
        for (const auto& [agent, tid] : gt.components) {
            const NetTransition& part = nets_[agent].transition(tid);
            fused.preset = support::set_union(fused.preset, part.preset);
            fused.postset = support::set_union(fused.postset, part.postset);
        }
        current = fire_transition(fused, current);  // throws if the theorem is violated
        global.markings.push_back(current);
    }
    if (sub.composed.provenance.at(path.steps.back()) != target)
        throw std::logic_error("liveness witness does not end with the queried transition");
    return global;
}

LivenessAnalyzer::Outcome LivenessAnalyzer::run(const GlobalTransition& target,
                                                const std::set<Label>& labels) {
    if (labels.count(target.label) == 0)
        throw std::invalid_argument("check_1liveness: label '" + target.label +
                                    "' is not in the selection");

    const std::vector<std::size_t> agents = agents_of_labels(labels);
    if (failed_.count(agents) != 0)
        return {false, true, std::nullopt};
    if (std::find(stack_.begin(), stack_.end(), agents) != stack_.end())
        return {false, false, std::nullopt};

    const CachedSubsystem& cached = subsystem_for(agents, labels);
    const auto projected = project_transition(target, cached.sub);
    if (!projected)
        throw std::logic_error("target transition does not project into its own subsystem");

    PathQueue queue(MinimalPathStream(cached.mg, *projected), options_.frontier);
    if (queue.empty()) {
        failed_.insert(agents);
        return {false, true, std::nullopt};
    }

    auto new_agents = [&](const MinimalPath& path) {
        return support::set_difference(agents_of_labels(path.label_set()), agents).size();
    };

    stack_.push_back(agents);
    bool truncated = false;
    std::set<std::vector<std::size_t>> tried;
    Outcome outcome{false, true, std::nullopt};
    while (!queue.empty()) {
        const MinimalPath path = queue.select(options_.heuristic, new_agents);
        const std::set<Label> path_labels = path.label_set();
        const std::vector<std::size_t> path_agents = agents_of_labels(path_labels);
        if (path_agents == agents) {
            // The path's labels select exactly this subsystem, so it is a
            // firing sequence of the global net; verify by replaying it.
            outcome = {true, true, replay_on_global(path, cached.sub, target)};
            break;
        }
        if (!tried.insert(path_agents).second)
            continue;
        Outcome sub = run(target, path_labels);
        if (sub.live) {
            outcome = std::move(sub);
            break;
        }
        truncated |= !sub.definitive;
    }
    stack_.pop_back();
    if (outcome.live)
        return outcome;
    // A failure derived from a stack-guard cut is only valid in this call
    // context; never memoize it.
    if (!truncated)
        failed_.insert(agents);
    return {false, !truncated, std::nullopt};
}

LivenessResult LivenessAnalyzer::check(const GlobalTransition& target,
                                       const std::set<Label>& labels) {
    if (target.components.empty())
        throw std::invalid_argument("check_1liveness: transition has no components");
    failed_.clear();
    stack_.clear();
    explored_.clear();
    explored_seen_.clear();
    Outcome outcome = run(target, labels);
    LivenessResult result;
    result.live = outcome.live;
    result.witness = std::move(outcome.witness);
    result.explored = std::move(explored_);
    return result;
}

LivenessResult check_1liveness(const GlobalTransition& target, const Amas& amas,
                               const std::vector<LabelledNet>& agent_nets,
                               const std::set<Label>& labels, const LivenessOptions& options) {
    LivenessAnalyzer analyzer(amas, agent_nets, options);
    return analyzer.check(target, labels);
}

std::vector<TransitionVerdict> analyze_liveness(const Amas& amas,
                                                const std::vector<LabelledNet>& agent_nets,
                                                const LivenessOptions& options,
                                                const std::optional<Label>& only_label) {
    std::vector<Label> labels;
    if (only_label) {
        labels.push_back(*only_label);
    } else {
        for (const auto& net : agent_nets)
            labels = support::set_union(labels, net.alphabet());
    }
    LivenessAnalyzer analyzer(amas, agent_nets, options);
    std::vector<TransitionVerdict> verdicts;
    for (const auto& label : labels) {
        for_each_fused(agent_nets, label, [&](const GlobalTransition& gt) {
            verdicts.push_back({gt, analyzer.check(gt, {label})});
            return true;
        });
    }
    return verdicts;
}

std::vector<GlobalTransition> find_dead_transitions(const Amas& amas,
                                                    const std::vector<LabelledNet>& agent_nets,
                                                    const LivenessOptions& options) {
    std::vector<GlobalTransition> dead;
    for (const auto& verdict : analyze_liveness(amas, agent_nets, options)) {
        if (!verdict.result.live)
            dead.push_back(verdict.transition);
    }
    return dead;
}

}  // namespace agentnet
