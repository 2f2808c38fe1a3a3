#include "agentnet/synthesis.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "agentnet/support.hpp"

namespace agentnet {

namespace {

struct IndexedArcs {
    std::vector<StateId> states;  // sorted
    // per label: (source index, target index)
    std::map<Label, std::vector<std::pair<std::size_t, std::size_t>>> arcs;

    explicit IndexedArcs(const Lts& lts) : states(lts.states.begin(), lts.states.end()) {
        for (const auto& [key, target] : lts.trans) {
            auto src = index_of(key.first);
            auto dst = index_of(target);
            arcs[key.second].emplace_back(src, dst);
        }
    }

    std::size_t index_of(const StateId& s) const {
        return static_cast<std::size_t>(
            std::lower_bound(states.begin(), states.end(), s) - states.begin());
    }
};

bool mask_is_region(const IndexedArcs& ix, std::uint64_t mask) {
    for (const auto& [label, arcs] : ix.arcs) {
        bool all_enter = true, all_leave = true, none_cross = true;
        for (const auto& [src, dst] : arcs) {
            const bool s_in = (mask >> src) & 1u;
            const bool d_in = (mask >> dst) & 1u;
            all_enter &= (!s_in && d_in);
            all_leave &= (s_in && !d_in);
            none_cross &= (s_in == d_in);
            if (!all_enter && !all_leave && !none_cross)
                return false;
        }
    }
    return true;
}

enum class Gradient { Enters, Leaves, Inside, Detached };

// How `label` relates to a region: Enters/Leaves for uniform border crossing,
// Inside when every arc stays within the region (self-loop flow), Detached
// otherwise. Labels without arcs are Detached.
Gradient gradient(const IndexedArcs& ix, const Label& label, std::uint64_t mask) {
    auto it = ix.arcs.find(label);
    if (it == ix.arcs.end() || it->second.empty())
        return Gradient::Detached;
    bool all_enter = true, all_leave = true, all_inside = true;
    for (const auto& [src, dst] : it->second) {
        const bool s_in = (mask >> src) & 1u;
        const bool d_in = (mask >> dst) & 1u;
        all_enter &= (!s_in && d_in);
        all_leave &= (s_in && !d_in);
        all_inside &= (s_in && d_in);
    }
    if (all_enter)
        return Gradient::Enters;
    if (all_leave)
        return Gradient::Leaves;
    if (all_inside)
        return Gradient::Inside;
    return Gradient::Detached;
}

std::uint64_t mask_of(const IndexedArcs& ix, const std::vector<StateId>& subset) {
    std::uint64_t mask = 0;
    for (const auto& s : subset) {
        if (!support::contains(ix.states, s))
            throw std::invalid_argument("is_region: '" + s + "' is not a state of the LTS");
        mask |= std::uint64_t{1} << ix.index_of(s);
    }
    return mask;
}

std::uint64_t mask_of_region(const IndexedArcs& ix, const Region& r) {
    std::uint64_t mask = 0;
    for (const auto& s : r.members)
        mask |= std::uint64_t{1} << ix.index_of(s);
    return mask;
}

PlaceId region_place_id(const Region& r) {
    return "{" + support::join(r.members, ",") + "}";
}

}  // namespace

bool is_region(const Lts& lts, const std::vector<StateId>& subset) {
    IndexedArcs ix(lts);
    return mask_is_region(ix, mask_of(ix, subset));
}

std::vector<Region> enumerate_regions(const Lts& lts, std::size_t max_states) {
    if (lts.states.size() > max_states)
        throw std::invalid_argument(
            "region enumeration bound exceeded (" + std::to_string(lts.states.size()) + " states > " +
            std::to_string(max_states) + "); use the states-as-places translation agent_to_net");
    IndexedArcs ix(lts);
    const std::size_t n = ix.states.size();
    std::vector<Region> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (!mask_is_region(ix, mask))
            continue;
        Region r;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u)
                r.members.push_back(ix.states[i]);
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Region> minimal_regions(const std::vector<Region>& regions) {
    std::vector<Region> candidates;
    for (const auto& r : regions)
        if (!r.members.empty())
            candidates.push_back(r);
    std::sort(candidates.begin(), candidates.end(),
              [](const Region& a, const Region& b) {
                  return a.members.size() != b.members.size() ? a.members.size() < b.members.size()
                                                              : a.members < b.members;
              });
    std::vector<Region> kept;
    for (const auto& r : candidates) {
        bool minimal = true;
        for (const auto& smaller : kept) {
            if (smaller.members.size() < r.members.size() &&
                support::is_subset(smaller.members, r.members)) {
                minimal = false;
                break;
            }
        }
        if (minimal)
            kept.push_back(r);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::string SeparationFailure::to_string() const {
    if (kind == Kind::State)
        return "SSP violated: no region separates states '" + state + "' and '" + other + "'";
    return "ESSP violated: no region excludes state '" + state + "' and is left by label '" + event +
           "'";
}

SeparationCheck check_ssp(const Lts& lts, const std::vector<Region>& regions) {
    IndexedArcs ix(lts);
    std::vector<std::uint64_t> masks;
    masks.reserve(regions.size());
    for (const auto& r : regions)
        masks.push_back(mask_of_region(ix, r));
    const std::size_t n = ix.states.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool separated = false;
            for (auto mask : masks) {
                if (((mask >> i) & 1u) != ((mask >> j) & 1u)) {
                    separated = true;
                    break;
                }
            }
            if (!separated)
                return {false, SeparationFailure{SeparationFailure::Kind::State, ix.states[i],
                                                 ix.states[j], Label{}}};
        }
    }
    return {true, std::nullopt};
}

SeparationCheck check_essp(const Lts& lts, const std::vector<Region>& regions) {
    IndexedArcs ix(lts);
    for (const auto& s : ix.states) {
        const auto available = lts.protocol(s);
        const std::size_t s_idx = ix.index_of(s);
        for (const auto& [label, arcs] : ix.arcs) {
            if (available.count(label) != 0)
                continue;
            bool witnessed = false;
            for (const auto& r : regions) {
                std::uint64_t mask = mask_of_region(ix, r);
                if (((mask >> s_idx) & 1u) == 0 && gradient(ix, label, mask) == Gradient::Leaves) {
                    witnessed = true;
                    break;
                }
            }
            if (!witnessed)
                return {false,
                        SeparationFailure{SeparationFailure::Kind::EventState, s, StateId{}, label}};
        }
    }
    return {true, std::nullopt};
}

SynthesisResult synthesize(const Lts& lts, std::size_t max_states) {
    // Synthesis targets the behaviour, i.e. the reachable part.
    const Lts pruned = reachable_prune(lts);
    const auto regions = enumerate_regions(pruned, max_states);

    if (auto ssp = check_ssp(pruned, regions); !ssp.holds)
        return {std::nullopt, ssp.witness};
    if (auto essp = check_essp(pruned, regions); !essp.holds)
        return {std::nullopt, essp.witness};

    IndexedArcs ix(pruned);
    std::vector<Region> places = minimal_regions(regions);

    auto build_flow = [&](const std::vector<Region>& place_regions) {
        std::vector<NetTransition> ts;
        for (const auto& [label, arcs] : ix.arcs) {
            NetTransition t;
            t.id = label;
            t.label = label;
            for (const auto& r : place_regions) {
                switch (gradient(ix, label, mask_of_region(ix, r))) {
                    case Gradient::Leaves:
                        t.preset.push_back(region_place_id(r));
                        break;
                    case Gradient::Enters:
                        t.postset.push_back(region_place_id(r));
                        break;
                    case Gradient::Inside:
                        t.preset.push_back(region_place_id(r));
                        t.postset.push_back(region_place_id(r));
                        break;
                    case Gradient::Detached:
                        break;
                }
            }
            ts.push_back(std::move(t));
        }
        return ts;
    };

    std::vector<NetTransition> transitions = build_flow(places);
    // A label enabled in every state only via self-loops relates to no
    // minimal region; the full-state region (always marked) carries its
    // self-loop flow then.
    const bool needs_full = std::any_of(transitions.begin(), transitions.end(),
                                        [](const NetTransition& t) {
                                            return t.preset.empty() || t.postset.empty();
                                        });
    if (needs_full) {
        Region full{std::vector<StateId>(pruned.states.begin(), pruned.states.end())};
        places.push_back(full);
        std::sort(places.begin(), places.end());
        transitions = build_flow(places);
    }

    LabelledNet net;
    for (const auto& r : places)
        net.places.push_back(region_place_id(r));
    support::sort_unique(net.places);
    for (auto& t : transitions) {
        support::sort_unique(t.preset);
        support::sort_unique(t.postset);
    }
    std::sort(transitions.begin(), transitions.end(),
              [](const NetTransition& a, const NetTransition& b) { return a.id < b.id; });
    net.transitions = std::move(transitions);
    std::vector<PlaceId> marked;
    for (const auto& r : places)
        if (support::contains(r.members, pruned.initial))
            marked.push_back(region_place_id(r));
    net.initial_marking = Marking(std::move(marked));
    net.validate();
    return {std::move(net), std::nullopt};
}

TransitionId arc_transition_id(const StateId& src, const Label& label, const StateId& dst) {
    return src + ">" + label + ">" + dst;
}

LabelledNet agent_to_net(const Lts& agent) {
    agent.validate();
    LabelledNet net;
    net.places.assign(agent.states.begin(), agent.states.end());
    for (const auto& [key, target] : agent.trans) {
        const auto& [src, label] = key;
        NetTransition t;
        t.id = arc_transition_id(src, label, target);
        t.label = label;
        t.preset = {src};
        t.postset = {target};
        net.transitions.push_back(std::move(t));
    }
    std::sort(net.transitions.begin(), net.transitions.end(),
              [](const NetTransition& a, const NetTransition& b) { return a.id < b.id; });
    net.initial_marking = Marking({agent.initial});
    net.validate();
    return net;
}

}  // namespace agentnet
