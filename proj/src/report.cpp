#include "ktm/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "ktm/error.hpp"

namespace ktm {

using nlohmann::ordered_json;

std::string report_to_json(const MinimizationReport& r, bool include_timing) {
  ordered_json j;
  j["config"] = {{"k", r.config.k}, {"b", r.config.b}, {"algorithm", to_string(r.config.algorithm)}};
  j["iterations"] = ordered_json::array();
  for (const auto& it : r.iterations) {
    ordered_json row;
    row["edge"] = {it.u, it.v};
    row["followers"] = it.followers;
    row["candidates_total"] = it.candidates_total;
    row["candidates_evaluated"] = it.candidates_evaluated;
    if (include_timing) row["time_ms"] = it.time_ms;
    j["iterations"].push_back(std::move(row));
  }
  j["totals"] = {{"followers_total", r.followers_total},
                 {"b_effective", r.b_effective},
                 {"initial_truss_edges", r.initial_truss_edges},
                 {"final_truss_edges", r.final_truss_edges}};
  j["warnings"] = r.warnings;
  if (include_timing) j["timing"] = {{"setup_ms", r.setup_ms}, {"total_ms", r.total_ms}};
  return j.dump(2) + "\n";
}

std::string report_to_human(const MinimizationReport& r) {
  std::ostringstream out;
  out << "k=" << r.config.k << " b=" << r.config.b << " algorithm=" << to_string(r.config.algorithm) << "\n";
  out << "truss edges: " << r.initial_truss_edges << " -> " << r.final_truss_edges << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-5s %-24s %10s %11s %10s %10s\n", "iter", "edge", "followers", "candidates",
                "evaluated", "time_ms");
  out << line;
  for (std::size_t i = 0; i < r.iterations.size(); ++i) {
    const auto& it = r.iterations[i];
    const std::string edge = "(" + std::to_string(it.u) + ", " + std::to_string(it.v) + ")";
    std::snprintf(line, sizeof line, "%-5zu %-24s %10lld %11zu %10zu %10.2f\n", i + 1, edge.c_str(),
                  static_cast<long long>(it.followers), it.candidates_total, it.candidates_evaluated, it.time_ms);
    out << line;
  }
  out << "total followers: " << r.followers_total << " (b_effective=" << r.b_effective << ")\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

std::string groups_to_json(const Graph& g, const SupportGroupScan& scan, const GroupIndex& index) {
  auto edge_json = [&](EdgeId e) {
    const auto& key = g.edge(e);
    return ordered_json::array({g.label(key.u), g.label(key.v)});
  };
  ordered_json j;
  j["k"] = index.primary_level();
  j["support_groups"] = ordered_json::array();
  for (const auto& grp : scan.groups) {
    ordered_json o;
    o["gid"] = grp.gid;
    o["size"] = grp.members.size();
    o["members"] = ordered_json::array();
    for (EdgeId e : grp.members) o["members"].push_back(edge_json(e));
    o["pruned_followers"] = ordered_json::array();
    for (EdgeId e : grp.pruned_followers) o["pruned_followers"].push_back(edge_json(e));
    j["support_groups"].push_back(std::move(o));
  }
  j["candidates"] = ordered_json::array();
  for (EdgeId e : scan.candidates) j["candidates"].push_back(edge_json(e));

  j["truss_groups"] = ordered_json::array();
  if (const auto* lv = index.level(index.primary_level())) {
    std::vector<std::pair<EdgeId, std::int32_t>> order;
    for (const auto& [gid, members] : lv->members) order.emplace_back(members.front(), gid);
    std::sort(order.begin(), order.end());
    for (const auto& [first, gid] : order) {
      const auto& members = lv->members.at(gid);
      ordered_json o;
      o["gid"] = gid;
      o["size"] = members.size();
      o["members"] = ordered_json::array();
      for (EdgeId e : members) o["members"].push_back(edge_json(e));
      j["truss_groups"].push_back(std::move(o));
    }
  }
  return j.dump(2) + "\n";
}

void BenchMatrix::validate() const {
  if (ks.empty() || bs.empty() || algorithms.empty()) throw ArgumentError("bench matrix has an empty axis");
  if (repetitions < 1) throw ArgumentError("repetitions must be at least 1");
  for (int k : ks)
    if (k < 3) throw ArgumentError("k must be at least 3, got " + std::to_string(k));
  for (int b : bs)
    if (b < 1) throw ArgumentError("b must be at least 1, got " + std::to_string(b));
}

std::vector<BenchRow> run_bench(const Graph& g, const BenchMatrix& matrix, unsigned threads,
                                std::uint64_t exact_cap) {
  matrix.validate();
  std::vector<BenchRow> rows;
  for (int k : matrix.ks)
    for (int b : matrix.bs)
      for (Algorithm alg : matrix.algorithms)
        for (int rep = 0; rep < matrix.repetitions; ++rep) {
          BenchRow row{k, b, alg, rep, 0, 0.0, 0, {}};
          try {
            SolverConfig cfg;
            cfg.k = k;
            cfg.b = b;
            cfg.algorithm = alg;
            cfg.threads = threads;
            cfg.exact_cap = exact_cap;
            const auto report = solve(g, cfg);
            row.followers_total = report.followers_total;
            row.time_ms = report.total_ms;
            for (const auto& it : report.iterations) row.candidates_evaluated += it.candidates_evaluated;
          } catch (const ExactCapExceeded&) {
            row.error = "exact_cap";
          } catch (const Error& e) {
            row.error = e.what();
          }
          rows.push_back(std::move(row));
        }
  return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows, bool include_timing) {
  std::ostringstream out;
  out << kBenchCsvHeader << "\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.k << "," << r.b << "," << to_string(r.algorithm) << "," << r.rep << ",";
    if (!r.error.empty()) {
      // Failed cell: error tag in the followers column, other fields empty.
      std::string tag = r.error;
      for (char& c : tag)
        if (c == ',' || c == '\n') c = ' ';
      out << "error:" << tag << ",,\n";
      continue;
    }
    std::snprintf(buf, sizeof buf, "%.3f", include_timing ? r.time_ms : 0.0);
    out << r.followers_total << "," << buf << "," << r.candidates_evaluated << "\n";
  }
  return out.str();
}

}  // namespace ktm
