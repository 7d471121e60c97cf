// hypergraph.hpp - offline pin structure for ingestion and the metrics oracle
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shpart/types.hpp"

namespace shpart {

// Whole-hypergraph view in CSR form, both directions. Streaming partitioners
// never hold one of these; it backs ingestion, evaluation and the from-scratch
// cut oracle.
class hypergraph {
 public:
  hypergraph() = default;

  // Build from per-vertex net lists (duplicate-free). num_nets may exceed the
  // largest referenced id so empty nets are representable.
  static hypergraph from_net_lists(std::vector<std::vector<net_id>> nets_per_vertex,
                                   std::size_t num_nets);

  std::size_t num_vertices() const { return vertex_offsets_.empty() ? 0 : vertex_offsets_.size() - 1; }
  std::size_t num_nets() const { return net_offsets_.empty() ? 0 : net_offsets_.size() - 1; }
  std::int64_t num_pins() const { return static_cast<std::int64_t>(vertex_nets_.size()); }

  std::span<const net_id> nets_of(vertex_id v) const {
    return {vertex_nets_.data() + vertex_offsets_[v], vertex_nets_.data() + vertex_offsets_[v + 1]};
  }
  std::span<const vertex_id> pins_of(net_id n) const {
    return {net_pins_.data() + net_offsets_[n], net_pins_.data() + net_offsets_[n + 1]};
  }

  std::size_t degree(vertex_id v) const { return nets_of(v).size(); }
  std::size_t net_size(net_id n) const { return pins_of(n).size(); }

 private:
  std::vector<std::size_t> vertex_offsets_;  // |V| + 1
  std::vector<net_id> vertex_nets_;          // |H|
  std::vector<std::size_t> net_offsets_;     // |N| + 1
  std::vector<vertex_id> net_pins_;          // |H|
};

}  // namespace shpart
