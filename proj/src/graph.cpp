#include "ktm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>

#include "ktm/error.hpp"

namespace ktm {

Graph Graph::from_pairs(std::size_t vertex_count,
                        std::span<const std::pair<VertexId, VertexId>> pairs,
                        std::vector<Label> labels) {
  Graph g;
  g.edges_.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a == b) continue;
    if (a >= vertex_count || b >= vertex_count)
      throw ContractViolation("vertex id out of range");
    g.edges_.push_back(EdgeKey::canonical(a, b));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(vertex_count + 1, 0);
  for (std::size_t u = 0; u < vertex_count; ++u) g.offsets_[u + 1] = g.offsets_[u] + deg[u];
  g.neighbors_.resize(g.offsets_.back());
  g.incident_.resize(g.offsets_.back());

  // Edges are sorted by (u, v), so filling in edge order leaves every
  // adjacency list sorted: for vertex x, entries with x as the larger
  // endpoint arrive ordered by u, then those with x as the smaller
  // endpoint arrive ordered by v, and every u < x < v.
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto [u, v] = g.edges_[id];
    g.neighbors_[cursor[v]] = u;
    g.incident_[cursor[v]++] = id;
  }
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto [u, v] = g.edges_[id];
    g.neighbors_[cursor[u]] = v;
    g.incident_[cursor[u]++] = id;
  }

  if (labels.empty()) {
    labels.resize(vertex_count);
    std::iota(labels.begin(), labels.end(), Label{0});
  }
  g.labels_ = std::move(labels);
  return g;
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const noexcept {
  if (a >= vertex_count() || b >= vertex_count() || a == b) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return std::nullopt;
  return incident_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
}

EdgeId Graph::edge_id(EdgeKey key) const {
  auto id = find_edge(key.u, key.v);
  if (!id) throw ContractViolation("unknown edge");
  return *id;
}

std::optional<VertexId> Graph::vertex_of_label(Label l) const noexcept {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  if (it == labels_.end() || *it != l) return std::nullopt;
  return static_cast<VertexId>(it - labels_.begin());
}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; }

// Next token in [pos, end); returns false at end of line.
bool next_token(const std::string& s, std::size_t& pos, std::string_view& tok) {
  while (pos < s.size() && is_blank(s[pos])) ++pos;
  if (pos >= s.size()) return false;
  std::size_t start = pos;
  while (pos < s.size() && !is_blank(s[pos])) ++pos;
  tok = std::string_view(s).substr(start, pos - start);
  return true;
}

ParseError parse_error(const std::string& what, std::size_t line_no) {
  return ParseError("line " + std::to_string(line_no) + ": " + what, line_no);
}

Label parse_label(std::string_view tok, std::size_t line_no) {
  Label value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw parse_error("expected an integer vertex label, got '" + std::string(tok) + "'", line_no);
  if (value < 0) throw parse_error("negative vertex label '" + std::string(tok) + "'", line_no);
  return value;
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<std::pair<Label, Label>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = 0;
    std::string_view first, second;
    if (!next_token(line, pos, first)) continue;
    if (first.front() == '#') continue;
    if (!next_token(line, pos, second)) throw parse_error("expected two vertex labels", line_no);
    Label a = parse_label(first, line_no);
    Label b = parse_label(second, line_no);
    if (a == b) continue;
    raw.emplace_back(std::min(a, b), std::max(a, b));
  }
  if (in.bad()) throw IoError("read failure");

  std::vector<Label> labels;
  labels.reserve(raw.size() * 2);
  for (auto [a, b] : raw) {
    labels.push_back(a);
    labels.push_back(b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto dense = [&](Label l) {
    return static_cast<VertexId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(raw.size());
  for (auto [a, b] : raw) pairs.emplace_back(dense(a), dense(b));
  const std::size_t n = labels.size();
  return Graph::from_pairs(n, pairs, std::move(labels));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return load_edge_list(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

std::vector<VertexId> common_neighbors(const Graph& g, EdgeKey e) {
  const EdgeId id = g.edge_id(e);
  std::vector<VertexId> out;
  g.for_each_triangle(id, [&](VertexId w, EdgeId, EdgeId) { out.push_back(w); });
  return out;
}

int support(const Graph& g, EdgeId e, const EdgeMask& alive) {
  if (e >= g.edge_count() || !alive.test(e)) throw ContractViolation("edge not alive");
  int s = 0;
  g.for_each_triangle(e, [&](VertexId, EdgeId a, EdgeId b) {
    if (alive.test(a) && alive.test(b)) ++s;
  });
  return s;
}

int support(const Graph& g, EdgeKey e, const EdgeMask& alive) {
  return support(g, g.edge_id(e), alive);
}

std::vector<int> compute_supports(const Graph& g, const EdgeMask& alive) {
  const std::size_t n = g.vertex_count();
  std::vector<int> sup(g.edge_count(), 0);
  // Orient every alive edge towards the endpoint of higher (degree, id) and
  // list each triangle once from its lowest vertex; out-degrees are then
  // O(sqrt(m)).
  auto before = [&](VertexId a, VertexId b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::size_t> offsets(n + 1, 0);
  alive.for_each([&](std::size_t e) {
    const auto& [u, v] = g.edge(static_cast<EdgeId>(e));
    ++offsets[(before(u, v) ? u : v) + 1];
  });
  for (std::size_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
  std::vector<std::pair<VertexId, EdgeId>> out(offsets[n]);
  {
    auto next = offsets;
    alive.for_each([&](std::size_t e) {
      const auto& [u, v] = g.edge(static_cast<EdgeId>(e));
      if (before(u, v))
        out[next[u]++] = {v, static_cast<EdgeId>(e)};
      else
        out[next[v]++] = {u, static_cast<EdgeId>(e)};
    });
  }
  std::vector<EdgeId> mark(n, kNoEdge);
  for (VertexId u = 0; u < n; ++u) {
    const std::size_t lo = offsets[u], hi = offsets[u + 1];
    for (std::size_t i = lo; i < hi; ++i) mark[out[i].first] = out[i].second;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto [v, uv] = out[i];
      for (std::size_t j = offsets[v]; j < offsets[v + 1]; ++j) {
        const auto [w, vw] = out[j];
        const EdgeId uw = mark[w];
        if (uw == kNoEdge) continue;
        ++sup[uv];
        ++sup[vw];
        ++sup[uw];
      }
    }
    for (std::size_t i = lo; i < hi; ++i) mark[out[i].first] = kNoEdge;
  }
  return sup;
}

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t n = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    g.for_each_triangle(e, [&](VertexId, EdgeId a, EdgeId b) {
      if (a > e && b > e) ++n;
    });
  return n;
}

}  // namespace ktm
