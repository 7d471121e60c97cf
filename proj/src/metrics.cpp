#include "shpart/metrics.hpp"

#include <algorithm>

namespace shpart {
namespace {

// Distinct parts among the (optionally filtered) pins of one net, using a
// stamped mark array so no per-net reset is needed.
struct lambda_counter {
  std::vector<std::uint32_t> mark;
  std::uint32_t stamp = 0;

  explicit lambda_counter(std::size_t num_parts) : mark(num_parts, 0) {}

  template <typename Pins, typename Part>
  std::int64_t count(const Pins& pins, const Part& part, bool skip_unassigned, bool* any_unassigned) {
    ++stamp;
    std::int64_t lambda = 0;
    for (const vertex_id v : pins) {
      const part_id p = v < part.size() ? part[v] : kUnassigned;
      if (p == kUnassigned) {
        if (!skip_unassigned && any_unassigned) *any_unassigned = true;
        continue;
      }
      if (mark[static_cast<std::size_t>(p)] != stamp) {
        mark[static_cast<std::size_t>(p)] = stamp;
        ++lambda;
      }
    }
    return lambda;
  }
};

int max_part_plus_one(std::span<const part_id> part) {
  part_id hi = -1;
  for (const part_id p : part) hi = std::max(hi, p);
  return static_cast<int>(hi) + 1;
}

}  // namespace

std::int64_t connectivity_cutsize(const hypergraph& hg, std::span<const part_id> part) {
  if (part.size() < hg.num_vertices()) {
    throw input_error("connectivity_cutsize: part vector shorter than vertex count");
  }
  const int k = std::max(1, max_part_plus_one(part));
  lambda_counter counter(static_cast<std::size_t>(k));
  std::int64_t cut = 0;
  for (net_id n = 0; n < hg.num_nets(); ++n) {
    bool unassigned = false;
    const std::int64_t lambda = counter.count(hg.pins_of(n), part, false, &unassigned);
    if (unassigned) throw input_error("connectivity_cutsize: unassigned vertex in a net");
    if (lambda > 1) cut += lambda - 1;
  }
  return cut;
}

std::int64_t prefix_cutsize(const hypergraph& hg, std::span<const part_id> part) {
  const int k = std::max(1, max_part_plus_one(part));
  lambda_counter counter(static_cast<std::size_t>(k));
  std::int64_t cut = 0;
  for (net_id n = 0; n < hg.num_nets(); ++n) {
    const std::int64_t lambda = counter.count(hg.pins_of(n), part, true, nullptr);
    if (lambda > 1) cut += lambda - 1;
  }
  return cut;
}

std::int64_t prefix_nets_seen(const hypergraph& hg, std::span<const part_id> part) {
  std::int64_t seen = 0;
  for (net_id n = 0; n < hg.num_nets(); ++n) {
    for (const vertex_id v : hg.pins_of(n)) {
      if (v < part.size() && part[v] != kUnassigned) {
        ++seen;
        break;
      }
    }
  }
  return seen;
}

evaluation evaluate_partition(const hypergraph& hg, std::span<const part_id> part, int num_parts) {
  if (num_parts < 1) throw input_error("evaluate_partition: num_parts must be >= 1");
  if (part.size() != hg.num_vertices()) {
    throw input_error("evaluate_partition: part vector length does not match vertex count");
  }
  for (const part_id p : part) {
    if (p == kUnassigned) throw input_error("evaluate_partition: unassigned vertex");
    if (p < 0 || p >= num_parts) throw input_error("evaluate_partition: part id out of range");
  }

  evaluation ev;
  ev.part_weights.assign(static_cast<std::size_t>(num_parts), 0);
  for (const part_id p : part) ++ev.part_weights[static_cast<std::size_t>(p)];
  const auto [lo, hi] = std::minmax_element(ev.part_weights.begin(), ev.part_weights.end());
  ev.imbalance = *hi - *lo;

  lambda_counter counter(static_cast<std::size_t>(num_parts));
  std::vector<bool> boundary(hg.num_vertices(), false);
  for (net_id n = 0; n < hg.num_nets(); ++n) {
    const std::int64_t lambda = counter.count(hg.pins_of(n), part, false, nullptr);
    ++ev.lambda_histogram[lambda];
    if (lambda > 1) {
      ev.cut += lambda - 1;
      for (const vertex_id v : hg.pins_of(n)) boundary[v] = true;
    }
  }
  for (const bool b : boundary) {
    if (b) ++ev.boundary_vertices;
  }
  return ev;
}

}  // namespace shpart
