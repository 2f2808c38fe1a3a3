#pragma once

#include <stdexcept>
#include <string>

#include "agentnet/lts.hpp"

namespace agentnet {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses the line-oriented model format:
///
///   # comment
///   agent <name>
///   states <s> <s> ...
///   init <s>
///   arc <src> <label> <dst>
///
/// State identifiers are namespaced with the agent index on ingestion, so
/// the agents' state sets are disjoint. Duplicate (source, label) arcs are
/// rejected to keep each agent deterministic.
Amas parse_model(const std::string& text);

/// Canonical rendering of an AMAS in the model format; parse_model is its
/// inverse on namespaced models.
std::string render_model(const Amas& amas);

/// Reads and parses a model file; throws std::runtime_error on I/O failure.
Amas load_model_file(const std::string& path);

/// "<idx>.<local>" namespacing applied on ingestion.
StateId namespaced_state(std::size_t agent_index, const std::string& local);
std::string local_state(std::size_t agent_index, const StateId& namespaced);

}  // namespace agentnet
