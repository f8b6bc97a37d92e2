#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ktm/graph.hpp"
#include "ktm/truss.hpp"

namespace helpers {

inline ktm::Graph parse(const std::string& text) {
  std::istringstream in(text);
  return ktm::load_edge_list(in);
}

inline std::vector<bool> to_vector(const ktm::EdgeMask& m) {
  std::vector<bool> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m.test(i);
  return out;
}

inline std::vector<bool> to_vector(const ktm::TrussSubgraph& t) { return to_vector(t.alive); }

inline ktm::EdgeMask to_mask(const std::vector<bool>& v) {
  ktm::EdgeMask m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) m.set(i);
  return m;
}

inline ktm::EdgeId eid(const ktm::Graph& g, ktm::VertexId a, ktm::VertexId b) {
  return g.edge_id(ktm::EdgeKey::canonical(a, b));
}

}  // namespace helpers
