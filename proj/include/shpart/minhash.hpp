// minhash.hpp - MinHash-based part selection
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shpart/types.hpp"

namespace shpart {

// Family of k universal hash functions h_i(x) = (a_i * x + b_i) mod q with
// coefficients drawn from a seeded generator. For a vertex's net list the
// per-function minima form a signature whose product mod K names a part, so
// vertices sharing nets tend to collide on the same part without any stored
// connectivity state.
class minhash_family {
 public:
  static constexpr std::uint64_t kDefaultModulus = (1ull << 31) - 1;  // Mersenne prime

  minhash_family(int num_hashes, std::uint64_t seed, std::uint64_t modulus = kDefaultModulus);

  // Prescribed coefficients, mostly for testing against hand arithmetic.
  minhash_family(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                 std::uint64_t modulus);

  int num_hashes() const { return static_cast<int>(a_.size()); }
  std::uint64_t modulus() const { return q_; }

  // min over nets of h_i(net), for each i.
  std::vector<std::uint64_t> signature(std::span<const net_id> nets) const;

  // (prod_i min_i) mod num_parts. Throws invariant_error on an empty net
  // list; the caller decides the fallback for isolated vertices.
  part_id part(std::span<const net_id> nets, int num_parts) const;

  // Coefficient words held, for memory accounting.
  std::uint64_t storage_words() const { return a_.size() + b_.size(); }

 private:
  std::uint64_t q_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

}  // namespace shpart
