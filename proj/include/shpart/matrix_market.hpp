// matrix_market.hpp - Matrix Market coordinate parsing and the column-net model
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shpart/hypergraph.hpp"
#include "shpart/types.hpp"

namespace shpart {

// Sparsity pattern of a matrix: deduplicated (row, col) coordinates, symmetry
// already expanded, values dropped.
struct sparse_matrix_pattern {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> nonzeros;  // sorted row-major
};

// Parse the coordinate subset of Matrix Market. Supported banner:
//   %%MatrixMarket matrix coordinate <real|integer|complex|pattern>
//                  <general|symmetric|skew-symmetric|hermitian>
// Values are ignored except that explicit zeros are dropped; 1-based indices
// shift to 0-based; symmetric variants expand each off-diagonal entry to its
// transpose. Malformed input raises input_error with a line number.
sparse_matrix_pattern parse_matrix(std::istream& in, const std::string& name = "<stream>");
sparse_matrix_pattern parse_matrix_file(const std::string& path);

// Column-net model: one vertex per row, one net per column, vertex i is a pin
// of net j iff (i, j) is a nonzero. Rectangular inputs are fine.
hypergraph column_net(const sparse_matrix_pattern& m);

}  // namespace shpart
