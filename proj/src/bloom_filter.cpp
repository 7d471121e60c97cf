#include "shpart/bloom_filter.hpp"

#include <cmath>

namespace shpart {

namespace {

// splitmix64 finalizer with a salt folded into the input.
std::uint64_t mix(std::uint64_t x, std::uint64_t salt) {
  x += salt + 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

bloom_filter::bloom_filter(std::uint64_t bits, int num_hashes, int num_parts)
    : bits_(bits), hashes_(num_hashes), num_parts_(num_parts) {
  if (bits == 0) throw invariant_error("bloom filter needs a positive bit count");
  if (num_hashes < 1) throw invariant_error("bloom filter needs at least one hash");
  if (num_parts < 1) throw invariant_error("bloom filter needs a positive part count");
  words_.assign((bits + 63) / 64, 0);
}

std::uint64_t bloom_filter::key(net_id n, part_id p) const {
  return encode(n, p, num_parts_);
}

void bloom_filter::insert(net_id n, part_id p) {
  const std::uint64_t x = key(n, p);
  const std::uint64_t ha = mix(x, 0x8BADF00D5EAF00Dull);
  std::uint64_t hb = mix(x, 0xC0FFEE0DDBA11ull) | 1;  // odd stride
  std::uint64_t pos = ha;
  for (int i = 0; i < hashes_; ++i) {
    const std::uint64_t bit = pos % bits_;
    words_[bit >> 6] |= 1ull << (bit & 63);
    pos += hb;
  }
  ++inserted_;
}

bool bloom_filter::query(net_id n, part_id p) const {
  const std::uint64_t x = key(n, p);
  const std::uint64_t ha = mix(x, 0x8BADF00D5EAF00Dull);
  std::uint64_t hb = mix(x, 0xC0FFEE0DDBA11ull) | 1;
  std::uint64_t pos = ha;
  for (int i = 0; i < hashes_; ++i) {
    const std::uint64_t bit = pos % bits_;
    if ((words_[bit >> 6] & (1ull << (bit & 63))) == 0) return false;
    pos += hb;
  }
  return true;
}

double bf_fpp(int num_hashes, std::uint64_t keys, std::uint64_t bits) {
  if (bits == 0) return 1.0;
  const double k = static_cast<double>(num_hashes);
  const double exponent = -k * static_cast<double>(keys) / static_cast<double>(bits);
  return std::pow(1.0 - std::exp(exponent), k);
}

}  // namespace shpart
