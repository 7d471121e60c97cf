// types.hpp - id types, error categories, seeded RNG
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace shpart {

using vertex_id = std::uint32_t;
using net_id = std::uint32_t;
using part_id = std::int32_t;

constexpr part_id kUnassigned = -1;

// Malformed or inconsistent external input (files, flags).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal bookkeeping; fail fast.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Seedable generator with portable bounded draws. mt19937_64 emits the same
// sequence on every conforming implementation; the rejection step keeps
// next_below unbiased without std::uniform_int_distribution, whose output is
// implementation-defined.
class rng {
 public:
  explicit rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform draw from [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

// One stream arrival: a vertex and the nets it is a pin of.
struct stream_element {
  vertex_id vertex = 0;
  std::vector<net_id> nets;  // duplicate-free

  std::size_t degree() const { return nets.size(); }
};

}  // namespace shpart
