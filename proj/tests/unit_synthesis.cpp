#include <doctest.h>

#include <algorithm>

#include "agentnet/compose.hpp"
#include "agentnet/generator.hpp"
#include "agentnet/synthesis.hpp"
#include "agentnet/support.hpp"
#include "helpers.hpp"

using namespace agentnet;
using testing::load_model;
using testing::make_lts;

namespace {

const Lts chain = make_lts({"s0", "s1"}, "s0", {{"s0", "a", "s1"}});

std::vector<std::vector<StateId>> member_sets(const std::vector<Region>& regions) {
    std::vector<std::vector<StateId>> out;
    for (const auto& r : regions)
        out.push_back(r.members);
    return out;
}

}  // namespace

TEST_CASE("is_region") {
    CHECK(is_region(chain, {}));
    CHECK(is_region(chain, {"s0", "s1"}));
    CHECK(is_region(chain, {"s0"}));  // a leaves

    const Lts cycle = make_lts({"s0", "s1"}, "s0", {{"s0", "a", "s1"}, {"s1", "a", "s0"}});
    CHECK_FALSE(is_region(cycle, {"s0"}));  // a both enters and leaves
    CHECK(is_region(cycle, {}));
    CHECK(is_region(cycle, {"s0", "s1"}));
}

TEST_CASE("enumerate_regions") {
    SUBCASE("the lockstep middle agent has only the trivial regions") {
        const Amas amas = load_model("lockstep.amas");
        const auto regions = enumerate_regions(amas.agents[1]);
        CHECK(member_sets(regions) ==
              std::vector<std::vector<StateId>>{{}, {"1.b0", "1.b1", "1.b2"}});
    }
    SUBCASE("single state without arcs") {
        const auto regions = enumerate_regions(make_lts({"s"}, "s", {}));
        CHECK(member_sets(regions) == std::vector<std::vector<StateId>>{{}, {"s"}});
    }
    SUBCASE("two-state chain: every subset is a region") {
        const auto regions = enumerate_regions(chain);
        CHECK(regions.size() == 4);
        for (const auto& members : member_sets(regions))
            CHECK(is_region(chain, members));
    }
    SUBCASE("state bound is enforced") {
        std::vector<StateId> states;
        std::vector<std::tuple<StateId, Label, StateId>> arcs;
        for (int i = 0; i < 21; ++i)
            states.push_back("s" + std::to_string(i));
        for (int i = 0; i + 1 < 21; ++i)
            arcs.emplace_back(states[i], "a" + std::to_string(i), states[i + 1]);
        CHECK_THROWS_WITH_AS(enumerate_regions(make_lts(states, "s0", arcs)),
                             doctest::Contains("agent_to_net"), std::invalid_argument);
    }
}

TEST_CASE("minimal_regions keeps the inclusion-minimal non-empty ones") {
    const std::vector<Region> regions{
        Region{{}}, Region{{"a"}}, Region{{"a", "b"}}, Region{{"a", "b", "c"}}, Region{{"c"}}};
    CHECK(member_sets(minimal_regions(regions)) ==
          std::vector<std::vector<StateId>>{{"a"}, {"c"}});

    const std::vector<Region> trivial{Region{{}}, Region{{"x", "y"}}};
    CHECK(member_sets(minimal_regions(trivial)) ==
          std::vector<std::vector<StateId>>{{"x", "y"}});

    CHECK(member_sets(minimal_regions(enumerate_regions(chain))) ==
          std::vector<std::vector<StateId>>{{"s0"}, {"s1"}});
}

TEST_CASE("state separation") {
    const Amas amas = load_model("lockstep.amas");
    const Lts& middle = amas.agents[1];
    const auto check = check_ssp(middle, enumerate_regions(middle));
    CHECK_FALSE(check.holds);
    REQUIRE(check.witness.has_value());
    CHECK(check.witness->kind == SeparationFailure::Kind::State);

    const Lts single = make_lts({"s"}, "s", {});
    CHECK(check_ssp(single, enumerate_regions(single)).holds);
    CHECK(check_ssp(chain, enumerate_regions(chain)).holds);
}

TEST_CASE("event-state separation") {
    SUBCASE("vacuous when every label is enabled everywhere") {
        const Lts loop = make_lts({"s"}, "s", {{"s", "a", "s"}});
        CHECK(check_essp(loop, enumerate_regions(loop)).holds);
    }
    SUBCASE("trivial-regions system with a disabled pair fails") {
        // 3-loop on label 3 plus a self-loop label z available only at b0:
        // regions stay trivial and (b1, z) cannot be separated.
        const Lts lts = make_lts({"b0", "b1", "b2"}, "b0",
                                 {{"b0", "3", "b1"},
                                  {"b1", "3", "b2"},
                                  {"b2", "3", "b0"},
                                  {"b0", "z", "b0"}});
        const auto check = check_essp(lts, enumerate_regions(lts));
        CHECK_FALSE(check.holds);
        REQUIRE(check.witness.has_value());
        CHECK(check.witness->kind == SeparationFailure::Kind::EventState);
        CHECK(check.witness->event == "z");
    }
    SUBCASE("chain: (s1, a) is separated by region {s0}") {
        CHECK(check_essp(chain, enumerate_regions(chain)).holds);
    }
}

TEST_CASE("synthesize") {
    SUBCASE("two-state chain becomes p0 -> a -> p1") {
        const SynthesisResult result = synthesize(chain);
        REQUIRE(result.ok());
        const LabelledNet& net = *result.net;
        CHECK(net.places == std::vector<PlaceId>{"{s0}", "{s1}"});
        REQUIRE(net.transitions.size() == 1);
        CHECK(net.transitions[0].label == "a");
        CHECK(net.transitions[0].preset == std::vector<PlaceId>{"{s0}"});
        CHECK(net.transitions[0].postset == std::vector<PlaceId>{"{s1}"});
        CHECK(net.initial_marking == Marking({"{s0}"}));
        CHECK(iso_check(lts_from_marking_graph(marking_graph(net)), reachable_prune(chain)));
    }
    SUBCASE("trivial-regions system fails with an SSP witness") {
        const Amas amas = load_model("lockstep.amas");
        const SynthesisResult result = synthesize(amas.agents[1]);
        CHECK_FALSE(result.ok());
        REQUIRE(result.failure.has_value());
        CHECK(result.failure->kind == SeparationFailure::Kind::State);
    }
    SUBCASE("independence diamond synthesizes two unconnected transitions") {
        const Lts diamond = make_lts({"s00", "s01", "s10", "s11"}, "s00",
                                     {{"s00", "a", "s10"},
                                      {"s00", "b", "s01"},
                                      {"s01", "a", "s11"},
                                      {"s10", "b", "s11"}});
        const SynthesisResult result = synthesize(diamond);
        REQUIRE(result.ok());
        const LabelledNet& net = *result.net;
        REQUIRE(net.transitions.size() == 2);
        CHECK(net.initial_marking.size() == 2);
        const NetTransition& ta = net.transition("a");
        const NetTransition& tb = net.transition("b");
        const auto touches = [](const NetTransition& t) {
            return support::set_union(t.preset, t.postset);
        };
        CHECK(support::set_intersection(touches(ta), touches(tb)).empty());
        CHECK(iso_check(lts_from_marking_graph(marking_graph(net)), reachable_prune(diamond)));
    }
}

TEST_CASE("agent_to_net splits per arc") {
    SUBCASE("TGC agents: one transition per arc, singleton pre/postsets") {
        const Amas tgc = load_model("tgc.amas");
        for (const auto& agent : tgc.agents) {
            const LabelledNet net = agent_to_net(agent);
            CHECK(net.places.size() == agent.states.size());
            CHECK(net.transitions.size() == agent.trans.size());
            CHECK(net.initial_marking == Marking({agent.initial}));
            for (const auto& t : net.transitions) {
                CHECK(t.preset.size() == 1);
                CHECK(t.postset.size() == 1);
            }
        }
    }
    SUBCASE("single state without arcs: one marked place, no transitions") {
        const LabelledNet net = agent_to_net(make_lts({"s"}, "s", {}));
        CHECK(net.places == std::vector<PlaceId>{"s"});
        CHECK(net.transitions.empty());
        CHECK(net.initial_marking == Marking({"s"}));
    }
    SUBCASE("two arcs with one label become two transitions with that label") {
        const Lts lts = make_lts({"s0", "s1", "s2"}, "s0",
                                 {{"s0", "x", "s1"}, {"s1", "x", "s2"}});
        const LabelledNet net = agent_to_net(lts);
        REQUIRE(net.transitions.size() == 2);
        CHECK(net.transitions[0].label == "x");
        CHECK(net.transitions[1].label == "x");
    }
    SUBCASE("self-loop arcs keep non-empty pre/postsets") {
        const LabelledNet net = agent_to_net(make_lts({"s"}, "s", {{"s", "a", "s"}}));
        REQUIRE(net.transitions.size() == 1);
        CHECK(net.transitions[0].preset == std::vector<PlaceId>{"s"});
        CHECK(net.transitions[0].postset == std::vector<PlaceId>{"s"});
    }
}

TEST_CASE("synthesis properties over random agents") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Amas amas = generate_amas({seed});
        for (const auto& agent : amas.agents) {
            // round-trip through the states-as-places net
            const LabelledNet net = agent_to_net(agent);
            const MarkingGraph mg = marking_graph(net);
            CHECK(iso_check(lts_from_marking_graph(mg), reachable_prune(agent)));
            for (const auto& m : mg.nodes)
                CHECK(m.size() == 1);  // state machines carry one token

            // trivial regions always pass, complement closure holds
            const std::vector<StateId> all(agent.states.begin(), agent.states.end());
            CHECK(is_region(agent, {}));
            CHECK(is_region(agent, all));
            const auto regions = enumerate_regions(agent);
            for (const auto& r : regions)
                CHECK(is_region(agent, support::set_difference(all, r.members)));

            // exact synthesis, when it succeeds, satisfies the separation
            // properties on the minimal regions and round-trips
            const SynthesisResult result = synthesize(agent);
            if (result.ok()) {
                const Lts pruned = reachable_prune(agent);
                const auto minimal = minimal_regions(enumerate_regions(pruned));
                CHECK(check_ssp(pruned, minimal).holds);
                CHECK(check_essp(pruned, minimal).holds);
                CHECK(iso_check(lts_from_marking_graph(marking_graph(*result.net)), pruned));
            } else {
                CHECK(result.failure.has_value());
            }
        }
    }
}
