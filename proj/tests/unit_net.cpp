#include <doctest.h>

#include <algorithm>

#include "agentnet/compose.hpp"
#include "agentnet/generator.hpp"
#include "agentnet/net.hpp"
#include "agentnet/support.hpp"
#include "agentnet/synthesis.hpp"
#include "helpers.hpp"

using namespace agentnet;
using testing::fused_with_label;
using testing::load_model;

namespace {

LabelledNet make_net(std::vector<PlaceId> places,
                     std::vector<NetTransition> transitions,
                     std::vector<PlaceId> marked) {
    LabelledNet net;
    net.places = std::move(places);
    support::sort_unique(net.places);
    for (auto& t : transitions) {
        support::sort_unique(t.preset);
        support::sort_unique(t.postset);
    }
    std::sort(transitions.begin(), transitions.end(),
              [](const NetTransition& a, const NetTransition& b) { return a.id < b.id; });
    net.transitions = std::move(transitions);
    net.initial_marking = Marking(std::move(marked));
    net.validate();
    return net;
}

}  // namespace

TEST_CASE("enabled needs the whole preset marked") {
    const LabelledNet net = make_net({"p", "q", "r"},
                                     {{"t1", "a", {"p"}, {"q"}}, {"t2", "b", {"p", "q"}, {"r"}}},
                                     {"p"});
    CHECK(enabled(net, Marking({"p"}), "t1"));
    CHECK_FALSE(enabled(net, Marking({"p"}), "t2"));
    CHECK_FALSE(enabled(net, Marking{}, "t1"));
    CHECK_THROWS_AS(enabled(net, Marking({"p"}), "ghost"), std::invalid_argument);
}

TEST_CASE("fire moves tokens and keeps self-loops") {
    const LabelledNet chain = make_net({"p", "q"}, {{"t", "a", {"p"}, {"q"}}}, {"p"});
    CHECK(fire(chain, Marking({"p"}), "t") == Marking({"q"}));
    CHECK_THROWS_AS(fire(chain, Marking({"q"}), "t"), std::invalid_argument);

    const LabelledNet loop = make_net({"p"}, {{"t", "a", {"p"}, {"p"}}}, {"p"});
    CHECK(fire(loop, Marking({"p"}), "t") == Marking({"p"}));
}

TEST_CASE("fire refuses to double-mark a place") {
    const LabelledNet net = make_net({"p", "q", "r"},
                                     {{"t", "a", {"p"}, {"r"}}},
                                     {"p", "r"});
    CHECK_THROWS_WITH_AS(fire(net, Marking({"p", "r"}), "t"),
                         doctest::Contains("1-safety violation"), std::runtime_error);
}

TEST_CASE("firing the fused n1 of the TGC net moves train1 and the controller") {
    const Amas tgc = load_model("tgc.amas");
    const ComposedNet composed = compose_nets(agent_nets_of(tgc));
    const auto n1 = fused_with_label(composed, "n1");
    REQUIRE(n1.size() == 1);
    const Marking after = fire(composed.net, composed.net.initial_marking, n1[0]->id);

    const Lts iis = compose_iis(tgc);
    const StateId expected = *iis.successor(iis.initial, "n1");
    CHECK(after == Marking(split_global_state(expected)));
    CHECK(after == Marking({"0.t1", "1.u0", "2.c1"}));
}

TEST_CASE("marking graph shapes") {
    SUBCASE("nothing enabled: one node, no arcs") {
        const LabelledNet net = make_net({"p", "q"}, {{"t", "a", {"q"}, {"p"}}}, {"p"});
        const MarkingGraph mg = marking_graph(net);
        CHECK(mg.nodes.size() == 1);
        CHECK(mg.arcs.empty());
    }
    SUBCASE("two independent transitions: a diamond") {
        const LabelledNet net = make_net(
            {"p0", "p1", "q0", "q1"},
            {{"t1", "a", {"p0"}, {"p1"}}, {"t2", "b", {"q0"}, {"q1"}}},
            {"p0", "q0"});
        const MarkingGraph mg = marking_graph(net);
        CHECK(mg.nodes.size() == 4);
        CHECK(mg.arcs.size() == 4);
    }
    SUBCASE("TGC: as many markings as pruned global states") {
        const Amas tgc = load_model("tgc.amas");
        const MarkingGraph mg = marking_graph(compose_nets(agent_nets_of(tgc)).net);
        CHECK(mg.nodes.size() == reachable_prune(compose_iis(tgc)).states.size());
        CHECK(mg.nodes.size() == 8);
    }
}

TEST_CASE("marking_graph reports the offending firing of an unsafe net") {
    // Two producers feed r with no consumer in between.
    const LabelledNet net = make_net(
        {"p", "q", "r"},
        {{"t1", "a", {"p"}, {"r"}}, {"t2", "b", {"q"}, {"r"}}},
        {"p", "q"});
    CHECK_THROWS_WITH_AS(marking_graph(net), doctest::Contains("1-safety violation"),
                         std::runtime_error);
    const SafetyReport report = check_one_safe(net);
    CHECK_FALSE(report.safe);
    CHECK_FALSE(report.trace.empty());
    CHECK(report.message.find("1-safety") != std::string::npos);
    // the trace replays up to the offending firing, which then fails
    const std::vector<TransitionId> prefix(report.trace.begin(), report.trace.end() - 1);
    const auto visited = replay_sequence(net, net.initial_marking, prefix);
    CHECK_THROWS_AS(fire(net, visited.back(), report.trace.back()), std::runtime_error);
}

TEST_CASE("check_one_safe accepts state machines") {
    const LabelledNet net = make_net({"p", "q"},
                                     {{"t1", "a", {"p"}, {"q"}}, {"t2", "b", {"q"}, {"p"}}},
                                     {"p"});
    CHECK(check_one_safe(net).safe);
}

TEST_CASE("is_one_live_bruteforce") {
    SUBCASE("initially enabled transition is live") {
        const LabelledNet net = make_net({"p", "q"}, {{"t", "a", {"p"}, {"q"}}}, {"p"});
        CHECK(is_one_live_bruteforce(net, "t"));
    }
    SUBCASE("transition behind an unmarked source place with no producer is dead") {
        const LabelledNet net = make_net({"p", "q", "r"},
                                         {{"t", "a", {"p"}, {"q"}}, {"u", "b", {"r"}, {"q"}}},
                                         {"r"});
        CHECK_FALSE(is_one_live_bruteforce(net, "t"));
        CHECK(is_one_live_bruteforce(net, "u"));
    }
    SUBCASE("the blocked-chain global net never fires d") {
        const Amas amas = load_model("blocked_chain.amas");
        const ComposedNet composed = compose_nets(agent_nets_of(amas));
        const auto d = fused_with_label(composed, "d");
        REQUIRE(d.size() == 1);
        CHECK_FALSE(is_one_live_bruteforce(composed.net, d[0]->id));
    }
}

TEST_CASE("classify_pair distinguishes conflict, concurrency and neither") {
    const LabelledNet net = make_net(
        {"p", "q", "r", "w1", "w2", "shared"},
        {
            {"c1", "a", {"p"}, {"w1"}},
            {"c2", "b", {"p"}, {"w2"}},      // conflict with c1 on p
            {"k1", "c", {"q"}, {"w1"}},
            {"k2", "d", {"r"}, {"w2"}},      // concurrent with k1
            {"n1", "e", {"q"}, {"shared"}},
            {"n2", "f", {"r"}, {"shared"}},  // disjoint presets, shared postset
        },
        {"p", "q", "r"});
    const Marking m({"p", "q", "r"});
    CHECK(classify_pair(net, m, "c1", "c2") == PairRelation::Conflict);
    CHECK(classify_pair(net, m, "k1", "k2") == PairRelation::Concurrent);
    CHECK(classify_pair(net, m, "n1", "n2") == PairRelation::Neither);
    CHECK_THROWS_AS(classify_pair(net, Marking({"q", "r"}), "c1", "k1"), std::invalid_argument);
    CHECK_THROWS_AS(classify_pair(net, m, "c1", "c1"), std::invalid_argument);
}

TEST_CASE("marking graph replay properties over random instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Amas amas = generate_amas({seed});
        const ComposedNet composed = compose_nets(agent_nets_of(amas));
        const MarkingGraph mg = marking_graph(composed.net);

        const auto live = live_transitions(mg);
        for (const auto& arc : mg.arcs) {
            const Marking& m = mg.nodes[arc.source];
            // replay soundness
            REQUIRE(enabled(composed.net, m, arc.transition));
            const Marking fired = fire(composed.net, m, arc.transition);
            REQUIRE(fired == mg.nodes[arc.target]);
            CHECK(composed.net.transition(arc.transition).label == arc.label);

            // token conservation
            const NetTransition& t = composed.net.transition(arc.transition);
            const auto consumed = support::set_difference(t.preset, t.postset);
            const auto produced = support::set_difference(t.postset, t.preset);
            CHECK(fired.size() == m.size() - consumed.size() + produced.size());

            // reverse-fire identity when preset and postset are disjoint
            if (support::set_intersection(t.preset, t.postset).empty()) {
                const auto undone = support::set_union(
                    support::set_difference(fired.places(), t.postset), t.preset);
                CHECK(Marking(undone) == m);
            }
        }

        // closure + oracle equivalence: enabled somewhere iff on some arc
        for (const auto& t : composed.net.transitions) {
            bool enabled_somewhere = false;
            for (const auto& m : mg.nodes) {
                if (enabled(t, m)) {
                    enabled_somewhere = true;
                    const Marking next = fire_transition(t, m);
                    CHECK(std::find(mg.nodes.begin(), mg.nodes.end(), next) != mg.nodes.end());
                }
            }
            CHECK(enabled_somewhere == (live.count(t.id) != 0));
        }
    }
}
