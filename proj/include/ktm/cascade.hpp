#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ktm/truss.hpp"

namespace ktm {

struct DeletionOutcome {
  std::vector<EdgeId> deleted;    // B restricted to the truss, in input order
  std::vector<EdgeId> followers;  // removed by the cascade, B excluded
  TrussSubgraph surviving;
};

struct CascadeResult {
  std::vector<EdgeId> deleted;
  std::vector<EdgeId> followers;
};

// Runs "what if B were deleted" cascades against a read-only truss
// snapshot. Supports are read as snapshot value minus a private delta; each
// run undoes its own changes from the touched list, so repeated calls cost
// only the size of the cascade.
//
// One simulator per worker; the snapshot must outlive it and must not be
// modified while a run is in progress.
class CascadeSimulator {
 public:
  explicit CascadeSimulator(const TrussSubgraph& t);

  // Number of followers of B (B members that are not alive are ignored).
  std::size_t run(std::span<const EdgeId> b);
  std::size_t run(EdgeId e) { return run(std::span<const EdgeId>(&e, 1)); }

  // Followers found by the most recent run.
  std::span<const EdgeId> followers() const noexcept {
    return std::span<const EdgeId>(removed_).subspan(seeds_);
  }

 private:
  const TrussSubgraph* t_;
  std::vector<int> delta_;
  std::vector<std::uint8_t> state_;  // 0 alive, 1 queued, 2 removed
  std::vector<EdgeId> touched_;
  std::vector<EdgeId> removed_;
  std::size_t seeds_ = 0;
};

// Deletes B from t and cascades to the k-truss fixpoint, mutating t.
CascadeResult cascade_in_place(TrussSubgraph& t, std::span<const EdgeId> b);

DeletionOutcome delete_and_cascade(const TrussSubgraph& t, std::span<const EdgeId> b);

// Throws ContractViolation when e is not alive in t.
std::size_t followers_of_edge(const TrussSubgraph& t, EdgeId e);

// Exhaustive single-edge maximiser, ties to the smallest EdgeId. Throws
// EmptyTruss on an empty truss.
std::pair<EdgeId, std::size_t> oracle_best_single(const TrussSubgraph& t);

}  // namespace ktm
