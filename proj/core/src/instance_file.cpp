#include "potts/instance_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "potts/errors.hpp"

namespace potts {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError(what + " at line " + std::to_string(line));
}

std::uint64_t parse_uint(std::string_view word, std::size_t line) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || end != word.data() + word.size()) {
    fail(line, "expected a non-negative integer, got '" + std::string(word) + "'");
  }
  return value;
}

}  // namespace

InstanceFile parse_instance(std::string_view text, std::optional<int> q) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<PinDirective> pins;
  std::vector<std::pair<Edge, std::size_t>> seen_edges;  // canonical edge, line
  std::vector<std::size_t> pin_line;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto words = split_words(line);
    if (words.empty() || words[0].front() == '#') continue;

    const std::string_view directive = words[0];
    if (directive == "graph") {
      if (n) fail(line_no, "duplicate 'graph' directive");
      if (words.size() != 2) fail(line_no, "malformed 'graph' directive");
      n = parse_uint(words[1], line_no);
      if (*n < 1) fail(line_no, "graph must have at least one vertex");
      pin_line.assign(*n, 0);
      continue;
    }
    if (!n) fail(line_no, "expected 'graph <n>' before '" + std::string(directive) + "'");

    if (directive == "edge") {
      if (words.size() != 3) fail(line_no, "malformed 'edge' directive");
      auto u = parse_uint(words[1], line_no);
      auto v = parse_uint(words[2], line_no);
      if (u >= *n || v >= *n) fail(line_no, "vertex id >= n");
      if (u == v) fail(line_no, "self-loop");
      if (u > v) std::swap(u, v);
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
      seen_edges.emplace_back(edges.back(), line_no);
    } else if (directive == "pin") {
      if (words.size() != 3) fail(line_no, "malformed 'pin' directive");
      const auto v = parse_uint(words[1], line_no);
      const auto c = parse_uint(words[2], line_no);
      if (v >= *n) fail(line_no, "vertex id >= n");
      if (c < 1 || (q && c > static_cast<std::uint64_t>(*q))) {
        fail(line_no, "pin color out of range");
      }
      if (pin_line[v] != 0) fail(line_no, "vertex pinned twice");
      pin_line[v] = line_no;
      pins.push_back({static_cast<Vertex>(v), static_cast<int>(c - 1)});
    } else {
      fail(line_no, "unknown directive '" + std::string(directive) + "'");
    }
  }
  if (!n) throw ParseError("missing 'graph <n>' directive");

  std::stable_sort(seen_edges.begin(), seen_edges.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < seen_edges.size(); ++k) {
    if (seen_edges[k].first == seen_edges[k - 1].first) {
      fail(seen_edges[k].second, "duplicate edge");
    }
  }
  std::sort(pins.begin(), pins.end(),
            [](const PinDirective& a, const PinDirective& b) { return a.vertex < b.vertex; });
  return {Graph(*n, std::move(edges)), std::move(pins)};
}

InstanceFile load_instance(const std::string& path, std::optional<int> q) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), q);
}

std::string serialize_instance(const Graph& g, const std::vector<PinDirective>& pins) {
  std::ostringstream out;
  out << "graph " << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) out << "edge " << e.u << ' ' << e.v << '\n';
  for (const auto& p : pins) out << "pin " << p.vertex << ' ' << (p.color + 1) << '\n';
  return out.str();
}

}  // namespace potts
