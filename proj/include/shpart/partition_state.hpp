// partition_state.hpp - part weights, balance law, dynamic slack
#pragma once

#include <cstdint>
#include <vector>

#include "shpart/types.hpp"

namespace shpart {

// Slack in force while placing the (i+1)-th vertex: max(1, floor(beta * i / K))
// with i the number of vertices already assigned. Truncation is integer floor;
// the max with 1 dominates near the start of the stream.
std::int64_t dynamic_slack(std::int64_t assigned, int num_parts, double beta);

// Part weights, part vector and the least-loaded part of one in-progress run.
// Single writer; assignments are final unless explicitly unassigned by the
// refinement machinery.
class partition_state {
 public:
  partition_state(int num_parts, double beta);

  int num_parts() const { return num_parts_; }
  double beta() const { return beta_; }
  std::int64_t assigned() const { return assigned_; }
  part_id min_part() const { return min_part_; }
  std::int64_t weight(part_id p) const { return weights_[static_cast<std::size_t>(p)]; }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  const std::vector<part_id>& parts() const { return part_; }

  // Slack in force for the next assignment.
  std::int64_t slack() const { return dynamic_slack(assigned_, num_parts_, beta_); }

  // A part can take the next vertex iff its lead over the least-loaded part
  // stays strictly below the slack in force.
  bool eligible(part_id p) const {
    return weights_[static_cast<std::size_t>(p)] - weights_[static_cast<std::size_t>(min_part_)] <
           slack();
  }

  part_id part_of(vertex_id v) const {
    return v < part_.size() ? part_[v] : kUnassigned;
  }

  // Place v into p. Throws invariant_error if p is not eligible or v already
  // has a part.
  void assign(vertex_id v, part_id p);

  // Take v out of its part (refinement only). Decrements the weight and the
  // assigned counter and repairs min_part in O(1).
  void unassign(vertex_id v);

  // Max pairwise weight difference.
  std::int64_t imbalance() const;

  std::int64_t max_weight() const;

  std::int64_t empty_parts() const;

 private:
  int num_parts_;
  double beta_;
  std::vector<std::int64_t> weights_;
  std::vector<part_id> part_;
  part_id min_part_ = 0;
  std::int64_t assigned_ = 0;

  void rescan_min_part();
};

}  // namespace shpart
