#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ktm/cascade.hpp"
#include "ktm/groups.hpp"

namespace ktm {

enum class Algorithm { exact, support, baseline, gp_edge, up_edge };

std::string_view to_string(Algorithm a) noexcept;
// Accepts the canonical names plus "gp" and "up". Throws ArgumentError.
Algorithm parse_algorithm(std::string_view name);

inline constexpr std::uint64_t kDefaultExactCap = 2'000'000;

struct SolverConfig {
  int k = 3;
  int b = 1;
  Algorithm algorithm = Algorithm::up_edge;
  unsigned threads = 0;  // 0: all hardware threads
  bool full_index_rebuild = false;
  std::uint64_t exact_cap = kDefaultExactCap;

  void validate() const;  // throws ArgumentError
};

struct IterationRecord {
  EdgeId edge = kNoEdge;
  Label u = 0, v = 0;  // original labels
  std::int64_t followers = 0;
  std::size_t candidates_total = 0;
  std::size_t candidates_evaluated = 0;
  double time_ms = 0.0;
};

struct MinimizationReport {
  SolverConfig config;
  std::vector<IterationRecord> iterations;
  std::size_t initial_truss_edges = 0;
  std::size_t final_truss_edges = 0;
  std::int64_t followers_total = 0;
  int b_effective = 0;
  std::vector<std::string> warnings;
  double setup_ms = 0.0;
  double total_ms = 0.0;

  std::vector<EdgeId> chosen() const;
  // followers_total + b_effective == initial - final
  bool accounting_holds() const noexcept;
};

// Computes T_k once and dispatches. An empty T_k yields zero iterations and
// an "empty truss" warning. Throws ExactCapExceeded when the exact solver's
// enumeration would pass the cap.
MinimizationReport solve(const Graph& g, const SolverConfig& cfg);

// Per-algorithm entry points over an already computed truss. The report's
// config.k is taken from t.
MinimizationReport solve_exact(const TrussSubgraph& t, int b, std::uint64_t cap = kDefaultExactCap);
MinimizationReport solve_support(const TrussSubgraph& t, int b);
MinimizationReport solve_baseline(const TrussSubgraph& t, int b, unsigned threads = 1);
MinimizationReport solve_gp_edge(const TrussSubgraph& t, int b, unsigned threads = 1);

struct UpEdgeOptions {
  unsigned threads = 1;
  bool full_index_rebuild = false;
  // Test hook: called after every iteration's index maintenance.
  std::function<void(const TrussnessMap&, const GroupIndex&)> after_iteration;
};
MinimizationReport solve_up_edge(const TrussSubgraph& t, int b, const UpEdgeOptions& opts = {});

// Number of b-subsets of n items, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t b) noexcept;

// Runs baseline, gp_edge and up_edge and checks that they pick the same
// edges with the same follower counts in every iteration.
bool verify_equivalence(const Graph& g, int k, int b);

}  // namespace ktm
