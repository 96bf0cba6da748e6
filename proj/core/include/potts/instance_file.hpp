#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "potts/graph.hpp"

namespace potts {

// Pin directive as it appears in an instance file: vertex id and a 0-based
// color (the file itself is 1-based).
struct PinDirective {
  Vertex vertex = 0;
  int color = 0;
  friend bool operator==(const PinDirective&, const PinDirective&) = default;
};

struct InstanceFile {
  Graph graph;
  std::vector<PinDirective> pins;  // sorted by vertex
};

// Parses the line-oriented instance format:
//
//   # comment
//   graph <n>        first directive, exactly once
//   edge <u> <v>
//   pin <v> <c>      c in 1..q
//
// When `q` is given pin colors above q are rejected as well. Errors are
// ParseError with the 1-based line number in the message.
InstanceFile parse_instance(std::string_view text, std::optional<int> q = std::nullopt);

InstanceFile load_instance(const std::string& path, std::optional<int> q = std::nullopt);

std::string serialize_instance(const Graph& g, const std::vector<PinDirective>& pins = {});

}  // namespace potts
