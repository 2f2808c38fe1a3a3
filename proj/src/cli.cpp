#include "agentnet/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "agentnet/compose.hpp"
#include "agentnet/dot.hpp"
#include "agentnet/generator.hpp"
#include "agentnet/liveness.hpp"
#include "agentnet/lts.hpp"
#include "agentnet/model_format.hpp"
#include "agentnet/net.hpp"
#include "agentnet/support.hpp"
#include "agentnet/synthesis.hpp"

namespace agentnet {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

bool use_color(const std::ostream& out) {
    return &out == &std::cout && isatty(fileno(stdout)) != 0 &&
           std::getenv("NO_COLOR") == nullptr;
}

std::string verdict_word(bool live, bool color) {
    if (!color)
        return live ? "live" : "dead";
    return live ? "\033[32mlive\033[0m" : "\033[31mdead\033[0m";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file '" + path + "'");
    out << content;
}

std::string label_sequence(const MinimalPath& path) {
    return support::join(path.step_labels, " ");
}

std::string agent_set_names(const Amas& amas, const std::vector<std::size_t>& agents) {
    std::vector<std::string> names;
    names.reserve(agents.size());
    for (std::size_t i : agents)
        names.push_back(amas.agent_name(i));
    return "{" + support::join(names, ",") + "}";
}

PathHeuristic parse_heuristic(const std::string& name) {
    if (name == "agents")
        return PathHeuristic::FewestNewAgents;
    if (name == "short")
        return PathHeuristic::ShortestFirst;
    if (name == "fifo")
        return PathHeuristic::InputOrder;
    throw CLI::ValidationError("--heuristic", "expected one of: agents, short, fifo");
}

ordered_json lts_json(const Lts& lts) {
    ordered_json j;
    j["states"] = lts.states;
    j["events"] = lts.events;
    j["initial"] = lts.initial;
    ordered_json arcs = ordered_json::array();
    for (const auto& [key, dst] : lts.trans)
        arcs.push_back({{"source", key.first}, {"label", key.second}, {"target", dst}});
    j["arcs"] = std::move(arcs);
    return j;
}

ordered_json net_json(const LabelledNet& net) {
    ordered_json j;
    j["places"] = net.places;
    j["initial_marking"] = net.initial_marking.places();
    ordered_json ts = ordered_json::array();
    for (const auto& t : net.transitions) {
        ts.push_back({{"id", t.id},
                      {"label", t.label},
                      {"preset", t.preset},
                      {"postset", t.postset}});
    }
    j["transitions"] = std::move(ts);
    return j;
}

ordered_json marking_graph_json(const MarkingGraph& mg) {
    ordered_json j;
    j["node_count"] = mg.nodes.size();
    j["arc_count"] = mg.arcs.size();
    j["initial"] = mg.initial;
    ordered_json nodes = ordered_json::array();
    for (const auto& node : mg.nodes)
        nodes.push_back(node.places());
    j["nodes"] = std::move(nodes);
    ordered_json arcs = ordered_json::array();
    for (const auto& arc : mg.arcs)
        arcs.push_back({{"source", arc.source},
                        {"transition", arc.transition},
                        {"label", arc.label},
                        {"target", arc.target}});
    j["arcs"] = std::move(arcs);
    return j;
}

void print_net(std::ostream& out, const std::string& name, const LabelledNet& net) {
    out << "net " << name << "\n";
    for (const auto& p : net.places) {
        out << "  place " << p;
        if (net.initial_marking.contains(p))
            out << " (marked)";
        out << "\n";
    }
    for (const auto& t : net.transitions) {
        out << "  transition " << t.id << " label=" << t.label << " pre={"
            << support::join(t.preset, ",") << "} post={" << support::join(t.postset, ",")
            << "}\n";
    }
}

int cmd_iis(const std::string& model_path, bool eager, const std::string& dot_path, bool json,
            std::ostream& out) {
    const Amas amas = load_model_file(model_path);
    Lts lts = compose_iis(amas, eager ? IisConstruction::FullProduct
                                      : IisConstruction::ReachableOnly);
    lts = reachable_prune(lts);
    if (!dot_path.empty())
        write_file(dot_path, to_dot(lts, "iis"));
    if (json) {
        out << lts_json(lts).dump(2) << "\n";
        return kOk;
    }
    out << "states " << lts.states.size() << "\n";
    out << "init " << lts.initial << "\n";
    for (const auto& [key, dst] : lts.trans)
        out << "arc " << key.first << " " << key.second << " " << dst << "\n";
    return kOk;
}

int cmd_synth(const std::string& model_path, bool exact, const std::string& agent_filter,
              const std::string& dot_path, bool json, std::ostream& out, std::ostream& err) {
    const Amas amas = load_model_file(model_path);
    if (!dot_path.empty() && agent_filter.empty())
        throw CLI::ValidationError("--dot", "requires --agent to pick one net");
    if (!agent_filter.empty()) {
        bool known = false;
        for (std::size_t i = 0; i < amas.agents.size(); ++i)
            known = known || amas.agent_name(i) == agent_filter;
        if (!known) {
            err << "error: unknown agent '" << agent_filter << "'\n";
            return kInputError;
        }
    }

    bool any_failure = false;
    ordered_json report = ordered_json::array();
    for (std::size_t i = 0; i < amas.agents.size(); ++i) {
        const std::string name = amas.agent_name(i);
        if (!agent_filter.empty() && name != agent_filter)
            continue;
        if (exact) {
            SynthesisResult result = synthesize(amas.agents[i]);
            if (result.ok()) {
                if (!dot_path.empty())
                    write_file(dot_path, to_dot(*result.net, name));
                if (json)
                    report.push_back({{"agent", name}, {"net", net_json(*result.net)}});
                else
                    print_net(out, name, *result.net);
            } else {
                any_failure = true;
                if (json)
                    report.push_back({{"agent", name}, {"failure", result.failure->to_string()}});
                else
                    out << "net " << name << ": " << result.failure->to_string() << "\n";
            }
        } else {
            LabelledNet net = agent_to_net(amas.agents[i]);
            if (!dot_path.empty())
                write_file(dot_path, to_dot(net, name));
            if (json)
                report.push_back({{"agent", name}, {"net", net_json(net)}});
            else
                print_net(out, name, net);
        }
    }
    if (json)
        out << report.dump(2) << "\n";
    return any_failure ? kViolation : kOk;
}

int cmd_compose(const std::string& model_path, const std::string& dot_path, bool json,
                std::ostream& out) {
    const Amas amas = load_model_file(model_path);
    const ComposedNet composed = compose_nets(agent_nets_of(amas));
    if (!dot_path.empty())
        write_file(dot_path, to_dot(composed, "global"));
    if (json) {
        ordered_json j = net_json(composed.net);
        ordered_json prov = ordered_json::object();
        for (const auto& [tid, gt] : composed.provenance) {
            ordered_json comps = ordered_json::object();
            for (const auto& [agent, part] : gt.components)
                comps[std::to_string(agent)] = part;
            prov[tid] = {{"label", gt.label}, {"components", std::move(comps)}};
        }
        j["provenance"] = std::move(prov);
        out << j.dump(2) << "\n";
        return kOk;
    }
    print_net(out, "global", composed.net);
    std::map<Label, std::size_t> per_label;
    for (const auto& t : composed.net.transitions)
        ++per_label[t.label];
    out << "fused transitions per label:";
    for (const auto& [label, count] : per_label)
        out << " " << label << "=" << count;
    out << "\n";
    return kOk;
}

int cmd_mg(const std::string& model_path, const std::vector<std::string>& labels,
           const std::string& dot_path, bool json, std::ostream& out) {
    const Amas amas = load_model_file(model_path);
    const auto nets = agent_nets_of(amas);
    ComposedNet composed;
    if (labels.empty()) {
        composed = compose_nets(nets);
    } else {
        composed = make_subsystem(amas, nets, {labels.begin(), labels.end()}).composed;
    }
    const MarkingGraph mg = marking_graph(composed.net);
    if (!dot_path.empty())
        write_file(dot_path, to_dot(mg, "mg"));
    if (json) {
        out << marking_graph_json(mg).dump(2) << "\n";
        return kOk;
    }
    out << "nodes " << mg.nodes.size() << "\n";
    out << "arcs " << mg.arcs.size() << "\n";
    out << "initial {" << mg.nodes[mg.initial].key() << "}\n";
    for (const auto& arc : mg.arcs) {
        out << "arc {" << mg.nodes[arc.source].key() << "} " << arc.label << " {"
            << mg.nodes[arc.target].key() << "} via " << arc.transition << "\n";
    }
    return kOk;
}

int cmd_regions(const std::string& model_path, const std::string& agent_filter, bool json,
                std::ostream& out) {
    const Amas amas = load_model_file(model_path);
    ordered_json report = ordered_json::array();
    for (std::size_t i = 0; i < amas.agents.size(); ++i) {
        const std::string name = amas.agent_name(i);
        if (!agent_filter.empty() && name != agent_filter)
            continue;
        const Lts& agent = amas.agents[i];
        const auto regions = enumerate_regions(agent);
        const auto minimal = minimal_regions(regions);
        const auto ssp = check_ssp(agent, regions);
        const auto essp = check_essp(agent, regions);
        if (json) {
            ordered_json entry;
            entry["agent"] = name;
            ordered_json rs = ordered_json::array();
            for (const auto& r : regions)
                rs.push_back(r.members);
            entry["regions"] = std::move(rs);
            ordered_json ms = ordered_json::array();
            for (const auto& r : minimal)
                ms.push_back(r.members);
            entry["minimal_regions"] = std::move(ms);
            entry["ssp"] = ssp.holds;
            entry["essp"] = essp.holds;
            if (!ssp.holds)
                entry["ssp_witness"] = ssp.witness->to_string();
            if (!essp.holds)
                entry["essp_witness"] = essp.witness->to_string();
            report.push_back(std::move(entry));
        } else {
            out << "agent " << name << "\n";
            out << "  regions " << regions.size() << "\n";
            for (const auto& r : regions)
                out << "  region {" << support::join(r.members, ",") << "}\n";
            for (const auto& r : minimal)
                out << "  minimal {" << support::join(r.members, ",") << "}\n";
            out << "  ssp " << (ssp.holds ? "ok" : "fail: " + ssp.witness->to_string()) << "\n";
            out << "  essp " << (essp.holds ? "ok" : "fail: " + essp.witness->to_string()) << "\n";
        }
    }
    if (json)
        out << report.dump(2) << "\n";
    return kOk;
}

int cmd_liveness(const std::string& model_path, const std::string& label, bool all,
                 const std::string& transition_id, const std::string& heuristic_name,
                 std::size_t frontier, bool fail_on_dead, bool json, std::ostream& out,
                 std::ostream& err) {
    const Amas amas = load_model_file(model_path);
    const auto nets = agent_nets_of(amas);
    if (label.empty() && !all && transition_id.empty()) {
        err << "error: pick --label <l>, --transition <id> or --all\n";
        return kInputError;
    }
    LivenessOptions options;
    options.heuristic = parse_heuristic(heuristic_name);
    options.frontier = frontier;

    std::optional<Label> only;
    if (!label.empty()) {
        bool known = false;
        for (const auto& agent : amas.agents)
            known = known || agent.events.count(label) != 0;
        if (!known) {
            err << "error: no agent owns label '" << label << "'\n";
            return kInputError;
        }
        only = label;
    }
    std::vector<TransitionVerdict> verdicts = analyze_liveness(amas, nets, options, only);
    if (!transition_id.empty()) {
        std::erase_if(verdicts, [&](const TransitionVerdict& v) {
            return v.transition.id() != transition_id;
        });
        if (verdicts.empty()) {
            err << "error: no fused transition with id '" << transition_id << "'\n";
            return kInputError;
        }
    }

    std::size_t dead = 0;
    const bool color = use_color(out);
    ordered_json report;
    ordered_json rows = ordered_json::array();
    for (const auto& v : verdicts) {
        if (!v.result.live)
            ++dead;
        if (json) {
            ordered_json row;
            row["id"] = v.transition.id();
            row["label"] = v.transition.label;
            ordered_json comps = ordered_json::object();
            for (const auto& [agent, tid] : v.transition.components)
                comps[std::to_string(agent)] = tid;
            row["components"] = std::move(comps);
            row["live"] = v.result.live;
            if (v.result.witness) {
                row["witness"] = {{"steps", v.result.witness->steps},
                                  {"labels", v.result.witness->step_labels}};
            }
            ordered_json subs = ordered_json::array();
            for (const auto& trace : v.result.explored)
                subs.push_back({{"agents", trace.agents},
                                {"nodes", trace.mg_nodes},
                                {"arcs", trace.mg_arcs}});
            row["subsystems"] = std::move(subs);
            rows.push_back(std::move(row));
        } else {
            out << verdict_word(v.result.live, color) << " " << v.transition.id();
            if (v.result.witness)
                out << "  witness: " << label_sequence(*v.result.witness);
            out << "  explored:";
            for (const auto& trace : v.result.explored)
                out << " " << agent_set_names(amas, trace.agents) << "(" << trace.mg_nodes
                    << " nodes)";
            out << "\n";
        }
    }
    if (json) {
        report["model"] = model_path;
        report["heuristic"] = heuristic_name;
        report["transitions"] = std::move(rows);
        report["live_count"] = verdicts.size() - dead;
        report["dead_count"] = dead;
        out << report.dump(2) << "\n";
    } else {
        out << "summary: " << (verdicts.size() - dead) << " live, " << dead << " dead (of "
            << verdicts.size() << ")\n";
    }
    if (fail_on_dead && dead > 0)
        return kViolation;
    return kOk;
}

int cmd_verify_prop1(const std::string& model_path, bool json, std::ostream& out) {
    const Amas amas = load_model_file(model_path);
    const bool iso = verify_proposition1(amas);
    if (json)
        out << ordered_json{{"isomorphic", iso}}.dump(2) << "\n";
    else
        out << "isomorphic: " << (iso ? "true" : "false") << "\n";
    return iso ? kOk : kViolation;
}

int cmd_gen(std::uint64_t seed, std::size_t agents, std::size_t states, std::size_t labels,
            const std::string& out_path, std::ostream& out) {
    GenOptions options;
    options.seed = seed;
    options.max_agents = agents;
    options.max_states = states;
    options.max_labels = labels;
    const std::string text = render_model(generate_amas(options));
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
    return kOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Asynchronous multi-agent systems as 1-safe labelled Petri nets: "
                 "composition by transition fusion and subsystem-based 1-liveness checking"};
    app.name("agentnet");
    app.require_subcommand(1);

    // iis
    std::string iis_model, iis_dot;
    bool iis_eager = false, iis_json = false;
    auto* iis = app.add_subcommand("iis", "Interleaved composition of the agents, pruned");
    iis->add_option("model", iis_model, "model file")->required();
    iis->add_flag("--eager", iis_eager, "build the full state product before pruning");
    iis->add_option("--dot", iis_dot, "write a DOT rendering to this path");
    iis->add_flag("--json", iis_json, "machine-readable output");

    // synth
    std::string synth_model, synth_agent, synth_dot;
    bool synth_exact = false, synth_json = false;
    auto* synth = app.add_subcommand("synth", "Translate agents to 1-safe labelled nets");
    synth->add_option("model", synth_model, "model file")->required();
    synth->add_flag("--exact", synth_exact, "region-based synthesis instead of states-as-places");
    synth->add_option("--agent", synth_agent, "only this agent");
    synth->add_option("--dot", synth_dot, "write a DOT rendering (requires --agent)");
    synth->add_flag("--json", synth_json, "machine-readable output");

    // compose
    std::string compose_model, compose_dot;
    bool compose_json = false;
    auto* compose = app.add_subcommand("compose", "Fused global net of all agents");
    compose->add_option("model", compose_model, "model file")->required();
    compose->add_option("--dot", compose_dot, "write a DOT rendering to this path");
    compose->add_flag("--json", compose_json, "machine-readable output");

    // mg
    std::string mg_model, mg_dot;
    std::vector<std::string> mg_labels;
    bool mg_json = false;
    auto* mg = app.add_subcommand("mg", "Marking graph of the global net or of a subsystem");
    mg->add_option("model", mg_model, "model file")->required();
    mg->add_option("--labels", mg_labels, "compose only the agents sharing these labels")
        ->delimiter(',');
    mg->add_option("--dot", mg_dot, "write a DOT rendering to this path");
    mg->add_flag("--json", mg_json, "machine-readable output");

    // regions
    std::string regions_model, regions_agent;
    bool regions_json = false;
    auto* regions = app.add_subcommand("regions", "Region enumeration and separation report");
    regions->add_option("model", regions_model, "model file")->required();
    regions->add_option("--agent", regions_agent, "only this agent");
    regions->add_flag("--json", regions_json, "machine-readable output");

    // liveness
    std::string live_model, live_label, live_transition;
    std::string live_heuristic = "agents";
    std::size_t live_frontier = 256;
    bool live_all = false, live_fail = false, live_json = false;
    auto* live = app.add_subcommand("liveness", "1-liveness of fused transitions via subsystems");
    live->add_option("model", live_model, "model file")->required();
    live->add_option("--label", live_label, "check every fused transition with this label");
    live->add_option("--transition", live_transition, "check one fused transition by id");
    live->add_flag("--all", live_all, "check every fused transition");
    live->add_option("--heuristic", live_heuristic, "path selection: agents, short, fifo")
        ->capture_default_str();
    live->add_option("--frontier", live_frontier, "materialized candidate paths")
        ->capture_default_str();
    live->add_flag("--fail-on-dead", live_fail, "exit 1 when a dead transition is found");
    live->add_flag("--json", live_json, "machine-readable output");

    // verify-prop1
    std::string prop1_model;
    bool prop1_json = false;
    auto* prop1 = app.add_subcommand(
        "verify-prop1", "Check that the fused net's behaviour matches the pruned composition");
    prop1->add_option("model", prop1_model, "model file")->required();
    prop1->add_flag("--json", prop1_json, "machine-readable output");

    // gen
    std::uint64_t gen_seed = 0;
    std::size_t gen_agents = 4, gen_states = 5, gen_labels = 6;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Seeded random model for testing");
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--agents", gen_agents, "max agents")->capture_default_str();
    gen->add_option("--states", gen_states, "max states per agent")->capture_default_str();
    gen->add_option("--labels", gen_labels, "max distinct labels")->capture_default_str();
    gen->add_option("--out", gen_out, "write to this path instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream usage;
        const int code = app.exit(e, usage, usage);
        (code == 0 ? out : err) << usage.str();
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (iis->parsed())
            return cmd_iis(iis_model, iis_eager, iis_dot, iis_json, out);
        if (synth->parsed())
            return cmd_synth(synth_model, synth_exact, synth_agent, synth_dot, synth_json, out, err);
        if (compose->parsed())
            return cmd_compose(compose_model, compose_dot, compose_json, out);
        if (mg->parsed())
            return cmd_mg(mg_model, mg_labels, mg_dot, mg_json, out);
        if (regions->parsed())
            return cmd_regions(regions_model, regions_agent, regions_json, out);
        if (live->parsed())
            return cmd_liveness(live_model, live_label, live_all, live_transition, live_heuristic,
                                live_frontier, live_fail, live_json, out, err);
        if (prop1->parsed())
            return cmd_verify_prop1(prop1_model, prop1_json, out);
        if (gen->parsed())
            return cmd_gen(gen_seed, gen_agents, gen_states, gen_labels, gen_out, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace agentnet
