#include "shpart/partition_state.hpp"

#include <cmath>
#include <stdexcept>

namespace shpart {

std::int64_t dynamic_slack(std::int64_t assigned, int num_parts, double beta) {
  if (assigned < 0 || num_parts < 1 || beta < 0.0) {
    throw invariant_error("dynamic_slack: bad arguments");
  }
  const double raw =
      beta * (static_cast<double>(assigned) / static_cast<double>(num_parts));
  const std::int64_t truncated = static_cast<std::int64_t>(std::floor(raw));
  return truncated < 1 ? 1 : truncated;
}

partition_state::partition_state(int num_parts, double beta)
    : num_parts_(num_parts), beta_(beta), weights_(static_cast<std::size_t>(num_parts), 0) {
  if (num_parts < 1) throw std::invalid_argument("partition_state: num_parts must be >= 1");
  if (beta < 0.0) throw std::invalid_argument("partition_state: beta must be >= 0");
}

void partition_state::assign(vertex_id v, part_id p) {
  if (p < 0 || p >= num_parts_) throw invariant_error("assign: part id out of range");
  if (!eligible(p)) throw invariant_error("assign: part is not eligible");
  if (v >= part_.size()) part_.resize(v + 1, kUnassigned);
  if (part_[v] != kUnassigned) throw invariant_error("assign: vertex already assigned");
  part_[v] = p;
  ++weights_[static_cast<std::size_t>(p)];
  ++assigned_;
  if (p == min_part_) rescan_min_part();
}

void partition_state::unassign(vertex_id v) {
  if (v >= part_.size() || part_[v] == kUnassigned) {
    throw invariant_error("unassign: vertex has no part");
  }
  const part_id p = part_[v];
  part_[v] = kUnassigned;
  --weights_[static_cast<std::size_t>(p)];
  --assigned_;
  // A decremented weight can only lower the minimum.
  if (weights_[static_cast<std::size_t>(p)] < weights_[static_cast<std::size_t>(min_part_)]) {
    min_part_ = p;
  }
}

std::int64_t partition_state::imbalance() const {
  std::int64_t lo = weights_[0];
  std::int64_t hi = weights_[0];
  for (const std::int64_t w : weights_) {
    if (w < lo) lo = w;
    if (w > hi) hi = w;
  }
  return hi - lo;
}

std::int64_t partition_state::max_weight() const {
  std::int64_t hi = weights_[0];
  for (const std::int64_t w : weights_) {
    if (w > hi) hi = w;
  }
  return hi;
}

std::int64_t partition_state::empty_parts() const {
  std::int64_t n = 0;
  for (const std::int64_t w : weights_) {
    if (w == 0) ++n;
  }
  return n;
}

void partition_state::rescan_min_part() {
  part_id best = 0;
  for (part_id p = 1; p < num_parts_; ++p) {
    if (weights_[static_cast<std::size_t>(p)] < weights_[static_cast<std::size_t>(best)]) {
      best = p;
    }
  }
  min_part_ = best;
}

}  // namespace shpart
