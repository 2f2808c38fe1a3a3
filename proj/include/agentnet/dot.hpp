#pragma once

#include <string>

#include "agentnet/compose.hpp"
#include "agentnet/lts.hpp"
#include "agentnet/net.hpp"

namespace agentnet {

// Graphviz digraph renderings. Node naming: LTS nodes are state identifiers,
// net places/transitions their own identifiers, marking-graph nodes the
// canonical "{p,q}" marking keys. Initial states / marked places are drawn
// with doubled borders.

std::string to_dot(const Lts& lts, const std::string& graph_name = "lts");
std::string to_dot(const LabelledNet& net, const std::string& graph_name = "net");
std::string to_dot(const ComposedNet& net, const std::string& graph_name = "net");
std::string to_dot(const MarkingGraph& mg, const std::string& graph_name = "mg");

}  // namespace agentnet
