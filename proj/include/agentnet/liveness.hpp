#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agentnet/compose.hpp"
#include "agentnet/lts.hpp"
#include "agentnet/net.hpp"

namespace agentnet {

/// A firing sequence whose visited markings are pairwise distinct up to (but
/// not necessarily including) the final one, and whose last step is an
/// occurrence of the queried transition.
struct MinimalPath {
    std::vector<TransitionId> steps;
    std::vector<Label> step_labels;   // parallel to steps
    std::vector<Marking> markings;    // steps.size() + 1 entries

    std::size_t length() const { return steps.size(); }
    std::set<Label> label_set() const;
};

/// Lazy depth-first enumeration of every minimal firing sequence of a marking
/// graph ending with `target`, in deterministic order. The stream is finite;
/// it is empty when no occurrence of `target` is reachable. The marking graph
/// is borrowed and must outlive the stream.
class MinimalPathStream {
public:
    MinimalPathStream(const MarkingGraph& mg, TransitionId target);

    std::optional<MinimalPath> next();

private:
    struct Frame {
        std::size_t node;
        std::size_t cursor;  // 2 * arc offset + phase (0: emit check, 1: descend)
    };

    MinimalPath materialize(const MarkingGraph::Arc& last) const;

    const MarkingGraph* mg_;
    TransitionId target_;
    std::vector<Frame> stack_;
    std::vector<bool> on_path_;
    std::vector<const MarkingGraph::Arc*> path_arcs_;
};

enum class PathHeuristic {
    FewestNewAgents,  // fewest agents beyond the current subsystem, then shorter
    ShortestFirst,
    InputOrder
};

/// The pending path collection of the checker: a bounded frontier
/// materialized from the lazy stream. `select` removes and returns the best
/// candidate of the frontier under the chosen heuristic.
class PathQueue {
public:
    using AgentCost = std::function<std::size_t(const MinimalPath&)>;

    PathQueue(MinimalPathStream stream, std::size_t frontier_capacity);

    bool empty();

    /// Throws std::logic_error when the collection is empty.
    MinimalPath select(PathHeuristic heuristic, const AgentCost& new_agent_count);

private:
    void refill();

    MinimalPathStream stream_;
    bool stream_done_ = false;
    std::size_t capacity_;
    std::deque<MinimalPath> frontier_;
};

struct LivenessOptions {
    PathHeuristic heuristic = PathHeuristic::FewestNewAgents;
    std::size_t frontier = 256;
};

struct SubsystemTrace {
    std::vector<std::size_t> agents;
    std::size_t mg_nodes = 0;
    std::size_t mg_arcs = 0;
};

struct LivenessResult {
    bool live = false;
    /// Replay-verified firing sequence of the global net when live.
    std::optional<MinimalPath> witness;
    std::vector<SubsystemTrace> explored;
};

/// Decides 1-liveness of fused transitions by recursive subsystem
/// exploration, sharing composed subsystems and their marking graphs across
/// queries. Recursion is keyed on the selected agent set: a set already on
/// the recursion stack is not re-entered, and definitively failed sets are
/// memoized per target. One analyzer is single-threaded; use one instance
/// per thread to check distinct targets concurrently.
class LivenessAnalyzer {
public:
    LivenessAnalyzer(const Amas& amas, const std::vector<LabelledNet>& agent_nets,
                     LivenessOptions options = {});

    /// Algorithm entry point; `labels` must contain the target's label.
    LivenessResult check(const GlobalTransition& target, const std::set<Label>& labels);

private:
    struct CachedSubsystem {
        Subsystem sub;
        MarkingGraph mg;
    };
    struct Outcome {
        bool live = false;
        bool definitive = true;  // false when truncated by the stack guard
        std::optional<MinimalPath> witness;
    };

    Outcome run(const GlobalTransition& target, const std::set<Label>& labels);
    const CachedSubsystem& subsystem_for(const std::vector<std::size_t>& agents,
                                         const std::set<Label>& labels);
    std::vector<std::size_t> agents_of_labels(const std::set<Label>& labels) const;
    MinimalPath replay_on_global(const MinimalPath& path, const Subsystem& sub,
                                 const GlobalTransition& target) const;

    const Amas& amas_;
    const std::vector<LabelledNet>& nets_;
    LivenessOptions options_;
    Marking global_initial_;
    std::map<std::vector<std::size_t>, CachedSubsystem> cache_;
    // per-check state
    std::set<std::vector<std::size_t>> failed_;
    std::vector<std::vector<std::size_t>> stack_;
    std::vector<SubsystemTrace> explored_;
    std::set<std::vector<std::size_t>> explored_seen_;
};

/// One-shot form of LivenessAnalyzer::check.
LivenessResult check_1liveness(const GlobalTransition& target, const Amas& amas,
                               const std::vector<LabelledNet>& agent_nets,
                               const std::set<Label>& labels, const LivenessOptions& options = {});

struct TransitionVerdict {
    GlobalTransition transition;
    LivenessResult result;
};

/// Runs the checker on every fused transition (of `only_label` when given),
/// enumerating each label's product lazily.
std::vector<TransitionVerdict> analyze_liveness(const Amas& amas,
                                                const std::vector<LabelledNet>& agent_nets,
                                                const LivenessOptions& options = {},
                                                const std::optional<Label>& only_label = {});

/// The fused transitions that are not 1-live in the global net; they can be
/// removed without changing its behaviour.
std::vector<GlobalTransition> find_dead_transitions(const Amas& amas,
                                                    const std::vector<LabelledNet>& agent_nets,
                                                    const LivenessOptions& options = {});

}  // namespace agentnet
