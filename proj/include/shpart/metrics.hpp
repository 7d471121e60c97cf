// metrics.hpp - from-scratch quality metrics, independent of incremental bookkeeping
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "shpart/hypergraph.hpp"
#include "shpart/types.hpp"

namespace shpart {

// Connectivity-minus-one cutsize recomputed from the pin structure: each net
// with pins in lambda parts contributes max(lambda - 1, 0). Every pin's vertex
// must have a part; throws input_error otherwise.
std::int64_t connectivity_cutsize(const hypergraph& hg, std::span<const part_id> part);

// Same sum over the assigned prefix only: pins of unassigned vertices
// (part == kUnassigned) are skipped. Used to audit in-progress runs.
std::int64_t prefix_cutsize(const hypergraph& hg, std::span<const part_id> part);

// Nets with at least one assigned pin.
std::int64_t prefix_nets_seen(const hypergraph& hg, std::span<const part_id> part);

struct evaluation {
  std::int64_t cut = 0;
  std::int64_t imbalance = 0;
  std::int64_t boundary_vertices = 0;
  std::map<std::int64_t, std::int64_t> lambda_histogram;  // connectivity -> net count
  std::vector<std::int64_t> part_weights;
};

// Full report for a completed part vector. Requires every vertex assigned and
// every part id below num_parts.
evaluation evaluate_partition(const hypergraph& hg, std::span<const part_id> part, int num_parts);

}  // namespace shpart
