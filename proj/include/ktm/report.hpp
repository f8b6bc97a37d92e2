#pragma once

#include <string>
#include <vector>

#include "ktm/groups.hpp"
#include "ktm/minimize.hpp"

namespace ktm {

// {config, iterations:[{edge:[u,v], followers, candidates_total,
// candidates_evaluated, time_ms}], totals, warnings, timing}. Without
// timing, every wall-clock field is omitted so identical runs serialize to
// identical bytes.
std::string report_to_json(const MinimizationReport& r, bool include_timing = true);
std::string report_to_human(const MinimizationReport& r);

// Debug dump of the support groups and primary-level truss groups, edges
// in original labels.
std::string groups_to_json(const Graph& g, const SupportGroupScan& scan, const GroupIndex& index);

struct BenchMatrix {
  std::vector<int> ks;
  std::vector<int> bs;
  std::vector<Algorithm> algorithms;
  int repetitions = 1;

  void validate() const;  // throws ArgumentError on an empty axis
};

struct BenchRow {
  int k = 0;
  int b = 0;
  Algorithm algorithm = Algorithm::baseline;
  int rep = 0;
  std::int64_t followers_total = 0;
  double time_ms = 0.0;
  std::size_t candidates_evaluated = 0;
  std::string error;  // non-empty when the cell failed
};

inline constexpr const char* kBenchCsvHeader = "k,b,algorithm,rep,followers_total,time_ms,candidates_evaluated";

// One row per (k, b, algorithm, repetition); a failing cell is recorded
// and the run continues.
std::vector<BenchRow> run_bench(const Graph& g, const BenchMatrix& matrix, unsigned threads = 1,
                                std::uint64_t exact_cap = kDefaultExactCap);
std::string bench_to_csv(const std::vector<BenchRow>& rows, bool include_timing = true);

}  // namespace ktm
