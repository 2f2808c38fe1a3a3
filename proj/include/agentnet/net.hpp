#pragma once

#include <compare>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "agentnet/lts.hpp"

namespace agentnet {

using PlaceId = std::string;
using TransitionId = std::string;

/// A 1-safe marking: a set of places, kept as a sorted unique vector so the
/// encoding is canonical (hashable, deterministically ordered).
class Marking {
public:
    Marking() = default;
    explicit Marking(std::vector<PlaceId> places);

    const std::vector<PlaceId>& places() const { return places_; }
    std::size_t size() const { return places_.size(); }
    bool empty() const { return places_.empty(); }
    bool contains(const PlaceId& p) const;
    /// All of `sorted` present in this marking.
    bool covers(const std::vector<PlaceId>& sorted) const;
    std::string key() const;

    auto operator<=>(const Marking&) const = default;

private:
    std::vector<PlaceId> places_;
};

struct NetTransition {
    TransitionId id;
    Label label;
    std::vector<PlaceId> preset;   // sorted unique, non-empty
    std::vector<PlaceId> postset;  // sorted unique, non-empty
};

/// 1-safe labelled Petri net. Markings are place sets; a firing that would
/// put a second token on a place is an error, not saturation.
struct LabelledNet {
    std::vector<PlaceId> places;            // sorted unique
    std::vector<NetTransition> transitions; // sorted by id
    Marking initial_marking;

    void validate() const;
    const NetTransition* find_transition(const TransitionId& t) const;
    /// Throws std::invalid_argument for an unknown transition.
    const NetTransition& transition(const TransitionId& t) const;
    std::vector<Label> alphabet() const;
};

bool enabled(const NetTransition& t, const Marking& m);
bool enabled(const LabelledNet& net, const Marking& m, const TransitionId& t);

/// Fires `t` at `m`: (m \ preset) ∪ postset; self-loop places keep their
/// token. Throws if `t` is not enabled or if the firing would double-mark a
/// place (1-safety violation).
Marking fire(const LabelledNet& net, const Marking& m, const TransitionId& t);
Marking fire_transition(const NetTransition& t, const Marking& m);

/// Validates a firing sequence by replay: the markings visited when firing
/// `steps` from `from`, starting with `from` itself. Throws on the first step
/// that is not executable.
std::vector<Marking> replay_sequence(const LabelledNet& net, const Marking& from,
                                     const std::vector<TransitionId>& steps);

struct MarkingGraph {
    struct Arc {
        std::size_t source;
        TransitionId transition;
        Label label;
        std::size_t target;
    };
    std::vector<Marking> nodes;  // discovery (BFS) order; nodes[initial] is m0
    std::vector<Arc> arcs;       // grouped by source, ascending
    std::size_t initial = 0;

    std::span<const Arc> out_arcs(std::size_t node) const;
};

/// Breadth-first exploration of the reachable markings. Throws
/// std::runtime_error identifying the offending firing if the net is not
/// 1-safe from its initial marking.
MarkingGraph marking_graph(const LabelledNet& net);

/// Identifiers of the transitions appearing on some arc.
std::set<TransitionId> live_transitions(const MarkingGraph& mg);

/// Reachability-based liveness oracle: true iff some reachable marking
/// enables `t`. Used as the ground truth the subsystem algorithm is checked
/// against.
bool is_one_live_bruteforce(const LabelledNet& net, const TransitionId& t);

enum class PairRelation { Conflict, Concurrent, Neither };

/// Relation of two distinct transitions enabled at `m`: conflict when the
/// presets intersect, concurrent when presets and postsets are both disjoint.
PairRelation classify_pair(const LabelledNet& net, const Marking& m, const TransitionId& t1,
                           const TransitionId& t2);

struct SafetyReport {
    bool safe = true;
    std::string message;
    std::vector<TransitionId> trace;  // firings from m0 up to and including the violation
};

/// Whole-exploration 1-safety check; never throws, reports a diagnostic
/// trace on violation.
SafetyReport check_one_safe(const LabelledNet& net);

}  // namespace agentnet
