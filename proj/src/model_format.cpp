#include "agentnet/model_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace agentnet {

namespace {

bool valid_identifier(const std::string& token) {
    if (token.empty())
        return false;
    return std::all_of(token.begin(), token.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '.' || c == '+' || c == '-';
    });
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token)
        tokens.push_back(token);
    return tokens;
}

struct AgentDraft {
    std::string name;
    std::size_t declared_at = 0;
    std::set<std::string> states;
    std::string init;
    bool has_init = false;
    std::map<std::pair<std::string, std::string>, std::string> arcs;  // (src, label) -> dst
};

Lts finalize(const AgentDraft& draft, std::size_t index) {
    if (!draft.has_init)
        throw ParseError(draft.declared_at, "agent '" + draft.name + "' has no 'init' line");
    Lts lts;
    for (const auto& s : draft.states)
        lts.states.insert(namespaced_state(index, s));
    lts.initial = namespaced_state(index, draft.init);
    for (const auto& [key, dst] : draft.arcs) {
        lts.events.insert(key.second);
        lts.trans.emplace(std::make_pair(namespaced_state(index, key.first), key.second),
                          namespaced_state(index, dst));
    }
    lts.validate();
    return lts;
}

}  // namespace

StateId namespaced_state(std::size_t agent_index, const std::string& local) {
    return std::to_string(agent_index) + "." + local;
}

std::string local_state(std::size_t agent_index, const StateId& namespaced) {
    const std::string prefix = std::to_string(agent_index) + ".";
    if (namespaced.rfind(prefix, 0) == 0)
        return namespaced.substr(prefix.size());
    return namespaced;
}

Amas parse_model(const std::string& text) {
    std::vector<AgentDraft> drafts;
    std::set<std::string> agent_names;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const auto tokens = tokenize(raw);
        if (tokens.empty())
            continue;
        const std::string& keyword = tokens[0];

        if (keyword == "agent") {
            if (tokens.size() != 2)
                throw ParseError(line_no, "'agent' expects exactly one name");
            if (!valid_identifier(tokens[1]))
                throw ParseError(line_no, "invalid agent name '" + tokens[1] + "'");
            if (!agent_names.insert(tokens[1]).second)
                throw ParseError(line_no, "duplicate agent name '" + tokens[1] + "'");
            AgentDraft draft;
            draft.name = tokens[1];
            draft.declared_at = line_no;
            drafts.push_back(std::move(draft));
            continue;
        }
        if (drafts.empty())
            throw ParseError(line_no, "'" + keyword + "' before any 'agent' declaration");
        AgentDraft& agent = drafts.back();

        if (keyword == "states") {
            if (tokens.size() < 2)
                throw ParseError(line_no, "'states' expects at least one state");
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (!valid_identifier(tokens[i]))
                    throw ParseError(line_no, "invalid state name '" + tokens[i] + "'");
                if (!agent.states.insert(tokens[i]).second)
                    throw ParseError(line_no, "duplicate state '" + tokens[i] + "'");
            }
        } else if (keyword == "init") {
            if (tokens.size() != 2)
                throw ParseError(line_no, "'init' expects exactly one state");
            if (agent.has_init)
                throw ParseError(line_no, "duplicate 'init' for agent '" + agent.name + "'");
            if (agent.states.count(tokens[1]) == 0)
                throw ParseError(line_no, "unknown state '" + tokens[1] +
                                              "' (declare it with 'states' first)");
            agent.init = tokens[1];
            agent.has_init = true;
        } else if (keyword == "arc") {
            if (tokens.size() != 4)
                throw ParseError(line_no, "'arc' expects <source> <label> <target>");
            const std::string& src = tokens[1];
            const std::string& label = tokens[2];
            const std::string& dst = tokens[3];
            if (!valid_identifier(label))
                throw ParseError(line_no, "invalid label '" + label + "'");
            if (agent.states.count(src) == 0)
                throw ParseError(line_no,
                                 "unknown state '" + src + "' (declare it with 'states' first)");
            if (agent.states.count(dst) == 0)
                throw ParseError(line_no,
                                 "unknown state '" + dst + "' (declare it with 'states' first)");
            if (!agent.arcs.emplace(std::make_pair(src, label), dst).second)
                throw ParseError(line_no, "duplicate arc from '" + src + "' on label '" + label +
                                              "' (agents are deterministic)");
        } else {
            throw ParseError(line_no, "unknown keyword '" + keyword + "'");
        }
    }
    if (drafts.empty())
        throw ParseError(line_no == 0 ? 1 : line_no, "model declares no agents");

    Amas amas;
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        amas.agents.push_back(finalize(drafts[i], i));
        amas.agent_names.push_back(drafts[i].name);
    }
    amas.validate();
    return amas;
}

std::string render_model(const Amas& amas) {
    std::ostringstream out;
    for (std::size_t i = 0; i < amas.agents.size(); ++i) {
        const Lts& agent = amas.agents[i];
        if (i > 0)
            out << "\n";
        out << "agent " << amas.agent_name(i) << "\n";
        out << "states";
        for (const auto& s : agent.states)
            out << " " << local_state(i, s);
        out << "\n";
        out << "init " << local_state(i, agent.initial) << "\n";
        for (const auto& [key, dst] : agent.trans) {
            out << "arc " << local_state(i, key.first) << " " << key.second << " "
                << local_state(i, dst) << "\n";
        }
    }
    return out.str();
}

Amas load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

}  // namespace agentnet
