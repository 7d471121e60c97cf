#include "shpart/hypergraph.hpp"

namespace shpart {

hypergraph hypergraph::from_net_lists(std::vector<std::vector<net_id>> nets_per_vertex,
                                      std::size_t num_nets) {
  hypergraph hg;
  const std::size_t nv = nets_per_vertex.size();

  hg.vertex_offsets_.assign(nv + 1, 0);
  std::size_t pins = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    pins += nets_per_vertex[v].size();
    hg.vertex_offsets_[v + 1] = pins;
  }
  hg.vertex_nets_.reserve(pins);
  for (std::size_t v = 0; v < nv; ++v) {
    for (const net_id n : nets_per_vertex[v]) {
      if (n >= num_nets) throw input_error("hypergraph: net id out of range");
      hg.vertex_nets_.push_back(n);
    }
  }

  // Transpose into per-net pin lists.
  hg.net_offsets_.assign(num_nets + 1, 0);
  for (const net_id n : hg.vertex_nets_) ++hg.net_offsets_[n + 1];
  for (std::size_t n = 0; n < num_nets; ++n) hg.net_offsets_[n + 1] += hg.net_offsets_[n];
  hg.net_pins_.resize(pins);
  std::vector<std::size_t> cursor(hg.net_offsets_.begin(), hg.net_offsets_.end() - 1);
  for (std::size_t v = 0; v < nv; ++v) {
    for (const net_id n : nets_per_vertex[v]) {
      hg.net_pins_[cursor[n]++] = static_cast<vertex_id>(v);
    }
  }
  return hg;
}

}  // namespace shpart
