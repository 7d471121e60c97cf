// bloom_filter.hpp - Bloom filter over (net, part) membership tuples
#pragma once

#include <cstdint>
#include <vector>

#include "shpart/types.hpp"

namespace shpart {

// Tracks which parts a net has pins in, approximately. Keys are the tuples
// (net, part) encoded as net * num_parts + part; k probe positions come from
// double hashing over two independent 64-bit mixers.
class bloom_filter {
 public:
  // m = filter size in bits, k = hashes per key.
  bloom_filter(std::uint64_t bits, int num_hashes, int num_parts);

  // (n, p) -> n * num_parts + p; injective while p < num_parts.
  static std::uint64_t encode(net_id n, part_id p, int num_parts) {
    return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(num_parts) +
           static_cast<std::uint64_t>(p);
  }

  void insert(net_id n, part_id p);
  bool query(net_id n, part_id p) const;

  std::uint64_t bits() const { return bits_; }
  int num_hashes() const { return hashes_; }
  std::uint64_t inserted_keys() const { return inserted_; }

  // Words of backing storage, for memory accounting.
  std::uint64_t storage_words() const { return words_.size(); }

 private:
  std::uint64_t key(net_id n, part_id p) const;

  std::uint64_t bits_;
  int hashes_;
  int num_parts_;
  std::uint64_t inserted_ = 0;
  std::vector<std::uint64_t> words_;
};

// Expected false-positive probability (1 - e^{-kn/m})^k for a filter of m
// bits holding n keys under k hashes.
double bf_fpp(int num_hashes, std::uint64_t keys, std::uint64_t bits);

}  // namespace shpart
