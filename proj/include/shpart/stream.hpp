// stream.hpp - on-disk vertex stream format and stream ordering
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shpart/hypergraph.hpp"
#include "shpart/types.hpp"

namespace shpart {

// A hypergraph serialized as a sequence of (vertex, nets) elements in the
// order a partitioner will consume them. Little-endian binary layout:
//
//   magic    8 bytes  "SHPSTRM1"
//   u64      vertex count
//   u64      net count
//   u64      pin count
//   u64      order seed (0 = natural order)
//   elements vertex u32, degree u32, then degree net ids (u32 each)
//
// Every vertex appears exactly once; net lists are duplicate-free.
struct stream_file {
  std::uint64_t num_nets = 0;
  std::uint64_t order_seed = 0;
  std::vector<stream_element> elements;

  std::uint64_t num_vertices() const { return elements.size(); }
  std::uint64_t num_pins() const;
};

// Build a stream from a hypergraph, shuffling vertex order when seed != 0.
stream_file stream_order(const hypergraph& h, std::uint64_t seed);

void save_stream(const stream_file& s, const std::string& path);

// Load and validate: magic, counts, exactly-once vertex coverage,
// duplicate-free net lists, in-range ids. Throws input_error on any defect.
stream_file load_stream(const std::string& path);

// Reassemble the hypergraph a stream describes (vertex ids keep their
// original values regardless of element order).
hypergraph hypergraph_from_stream(const stream_file& s);

}  // namespace shpart
