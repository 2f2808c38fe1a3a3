#include "agentnet/dot.hpp"

#include <sstream>

#include "agentnet/support.hpp"

namespace agentnet {

namespace {

std::string quoted(const std::string& id) {
    std::string out = "\"";
    for (char c : id) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void net_body(std::ostream& out, const LabelledNet& net,
              const std::map<TransitionId, GlobalTransition>* provenance) {
    for (const auto& p : net.places) {
        out << "  " << quoted(p) << " [shape=circle";
        if (net.initial_marking.contains(p))
            out << ", peripheries=2";
        out << "];\n";
    }
    for (const auto& t : net.transitions) {
        std::string label = t.label;
        if (provenance != nullptr) {
            if (auto it = provenance->find(t.id); it != provenance->end()) {
                std::vector<std::string> parts;
                for (const auto& [agent, tid] : it->second.components)
                    parts.push_back(std::to_string(agent) + ":" + tid);
                label += "\\n[" + support::join(parts, ",") + "]";
            }
        }
        out << "  " << quoted(t.id) << " [shape=box, label=" << quoted(label) << "];\n";
        for (const auto& p : t.preset)
            out << "  " << quoted(p) << " -> " << quoted(t.id) << ";\n";
        for (const auto& p : t.postset)
            out << "  " << quoted(t.id) << " -> " << quoted(p) << ";\n";
    }
}

}  // namespace

std::string to_dot(const Lts& lts, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << quoted(graph_name) << " {\n";
    for (const auto& s : lts.states) {
        out << "  " << quoted(s);
        if (s == lts.initial)
            out << " [peripheries=2]";
        out << ";\n";
    }
    for (const auto& [key, dst] : lts.trans) {
        out << "  " << quoted(key.first) << " -> " << quoted(dst)
            << " [label=" << quoted(key.second) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const LabelledNet& net, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << quoted(graph_name) << " {\n";
    net_body(out, net, nullptr);
    out << "}\n";
    return out.str();
}

std::string to_dot(const ComposedNet& net, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << quoted(graph_name) << " {\n";
    net_body(out, net.net, &net.provenance);
    out << "}\n";
    return out.str();
}

std::string to_dot(const MarkingGraph& mg, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << quoted(graph_name) << " {\n";
    for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
        out << "  " << quoted(mg.nodes[i].key()) << " [label=" << quoted("{" + mg.nodes[i].key() + "}");
        if (i == mg.initial)
            out << ", peripheries=2";
        out << "];\n";
    }
    for (const auto& arc : mg.arcs) {
        out << "  " << quoted(mg.nodes[arc.source].key()) << " -> "
            << quoted(mg.nodes[arc.target].key()) << " [label=" << quoted(arc.label) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace agentnet
