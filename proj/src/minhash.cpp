#include "shpart/minhash.hpp"

namespace shpart {

minhash_family::minhash_family(int num_hashes, std::uint64_t seed, std::uint64_t modulus)
    : q_(modulus) {
  if (num_hashes < 1) throw invariant_error("minhash family needs at least one hash");
  if (modulus < 2) throw invariant_error("minhash modulus must be at least 2");
  rng r(seed);
  a_.reserve(num_hashes);
  b_.reserve(num_hashes);
  for (int i = 0; i < num_hashes; ++i) {
    a_.push_back(r.next_below(q_));
    b_.push_back(r.next_below(q_));
  }
}

minhash_family::minhash_family(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                               std::uint64_t modulus)
    : q_(modulus), a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || a_.size() != b_.size())
    throw invariant_error("coefficient lists must be non-empty and equally long");
  if (modulus < 2) throw invariant_error("minhash modulus must be at least 2");
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] >= q_ || b_[i] >= q_) throw invariant_error("coefficients must lie below q");
}

std::vector<std::uint64_t> minhash_family::signature(std::span<const net_id> nets) const {
  if (nets.empty()) throw invariant_error("minhash signature of an empty net list");
  std::vector<std::uint64_t> sig(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    std::uint64_t best = q_;
    for (net_id n : nets) {
      // a < q < 2^31 and n < 2^32, so a*n + b stays below 2^64.
      const std::uint64_t h = (a_[i] * static_cast<std::uint64_t>(n) + b_[i]) % q_;
      if (h < best) best = h;
    }
    sig[i] = best;
  }
  return sig;
}

part_id minhash_family::part(std::span<const net_id> nets, int num_parts) const {
  const auto sig = signature(nets);
  const auto k = static_cast<std::uint64_t>(num_parts);
  std::uint64_t acc = 1 % k;
  // Reduce mod K at each step; factors are below q < 2^31 and acc below K,
  // so the product never overflows 64 bits.
  for (std::uint64_t m : sig) acc = (acc * (m % k)) % k;
  return static_cast<part_id>(acc);
}

}  // namespace shpart
