#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "agentnet/compose.hpp"
#include "agentnet/lts.hpp"
#include "agentnet/model_format.hpp"
#include "agentnet/net.hpp"

namespace testing {

inline std::string models_path(const std::string& name) {
    return std::string(AGENTNET_MODELS_DIR) + "/" + name;
}

inline agentnet::Amas load_model(const std::string& name) {
    return agentnet::load_model_file(models_path(name));
}

inline agentnet::Lts make_lts(
    const std::vector<agentnet::StateId>& states, const agentnet::StateId& init,
    const std::vector<std::tuple<agentnet::StateId, agentnet::Label, agentnet::StateId>>& arcs) {
    agentnet::Lts lts;
    lts.states.insert(states.begin(), states.end());
    lts.initial = init;
    for (const auto& [src, label, dst] : arcs) {
        lts.events.insert(label);
        lts.trans.emplace(std::make_pair(src, label), dst);
    }
    lts.validate();
    return lts;
}

inline agentnet::Lts rename_states(const agentnet::Lts& lts, const std::string& prefix) {
    agentnet::Lts out;
    out.events = lts.events;
    for (const auto& s : lts.states)
        out.states.insert(prefix + s);
    out.initial = prefix + lts.initial;
    for (const auto& [key, dst] : lts.trans)
        out.trans.emplace(std::make_pair(prefix + key.first, key.second), prefix + dst);
    return out;
}

// All fused transitions of the composed net carrying this label.
inline std::vector<const agentnet::NetTransition*> fused_with_label(
    const agentnet::ComposedNet& composed, const agentnet::Label& label) {
    std::vector<const agentnet::NetTransition*> out;
    for (const auto& t : composed.net.transitions)
        if (t.label == label)
            out.push_back(&t);
    return out;
}

// Cheap structural sanity of a DOT rendering: digraph header, balanced
// braces and quotes.
inline bool dot_well_formed(const std::string& dot) {
    if (dot.rfind("digraph ", 0) != 0)
        return false;
    long depth = 0;
    bool in_quote = false;
    for (std::size_t i = 0; i < dot.size(); ++i) {
        const char c = dot[i];
        if (in_quote) {
            if (c == '\\')
                ++i;
            else if (c == '"')
                in_quote = false;
            continue;
        }
        if (c == '"')
            in_quote = true;
        else if (c == '{')
            ++depth;
        else if (c == '}') {
            --depth;
            if (depth < 0)
                return false;
        }
    }
    return depth == 0 && !in_quote;
}

}  // namespace testing
