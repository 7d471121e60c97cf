// flat_set.hpp - open-addressing set of 32-bit keys
#pragma once

#include <cstdint>
#include <vector>

namespace shpart::detail {

// Insert-only hash set tuned for the hot membership probes in the per-part
// net tables. Linear probing over a power-of-two table kept at most half
// full; 0xFFFFFFFF is reserved as the empty slot marker.
class flat_set {
 public:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

  flat_set() : slots_(kMinCapacity, kEmpty) {}

  bool contains(std::uint32_t key) const {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = index(key, mask);
    while (true) {
      const std::uint32_t s = slots_[i];
      if (s == key) return true;
      if (s == kEmpty) return false;
      i = (i + 1) & mask;
    }
  }

  // Returns true if the key was new.
  bool insert(std::uint32_t key) {
    if ((size_ + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = index(key, mask);
    while (true) {
      const std::uint32_t s = slots_[i];
      if (s == key) return false;
      if (s == kEmpty) {
        slots_[i] = key;
        ++size_;
        return true;
      }
      i = (i + 1) & mask;
    }
  }

  std::size_t size() const { return size_; }

 private:
  static constexpr std::size_t kMinCapacity = 16;

  static std::size_t index(std::uint32_t key, std::size_t mask) {
    // Fibonacci hashing spreads consecutive ids across the table.
    return static_cast<std::size_t>((key * 0x9E3779B9u) >> 7) & mask;
  }

  void grow() {
    std::vector<std::uint32_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    const std::size_t mask = slots_.size() - 1;
    for (std::uint32_t s : old) {
      if (s == kEmpty) continue;
      std::size_t i = index(s, mask);
      while (slots_[i] != kEmpty) i = (i + 1) & mask;
      slots_[i] = s;
    }
  }

  std::vector<std::uint32_t> slots_;
  std::size_t size_ = 0;
};

}  // namespace shpart::detail
