// net_connectivity.hpp - net-to-part connectivity map (n2p) with optional pin counts
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shpart/types.hpp"

namespace shpart {

// Per-net part sets, the net-oriented organization of connectivity. In
// counted mode every (net, part) entry also carries the number of assigned
// pins of that net inside the part, which is what refinement needs to detect
// gains; set-only mode skips those integers.
//
// Maintains three running totals: entries (sum of part-set sizes), nets seen
// (distinct net ids ever touched), and the connectivity-minus-one cut of the
// assigned pins.
class net_connectivity {
 public:
  enum class mode { set_only, counted };

  explicit net_connectivity(mode m = mode::set_only) : mode_(m) {}

  mode storage_mode() const { return mode_; }
  bool counted() const { return mode_ == mode::counted; }

  // Register one assigned pin of net n in part p. First touch of a net id
  // counts it as seen.
  void add_pin(net_id n, part_id p);

  // Drop one pin of net n from part p (counted mode only). When the count
  // reaches zero the part leaves the net's part set. Underflow fails fast.
  void remove_pin(net_id n, part_id p);

  std::span<const part_id> parts(net_id n) const {
    if (n >= nets_.size()) return {};
    return {nets_[n].parts.data(), nets_[n].parts.size()};
  }

  bool seen(net_id n) const { return n < nets_.size() && nets_[n].seen; }

  // Pins of net n currently assigned to part p; zero when absent.
  std::uint32_t pin_count(net_id n, part_id p) const;

  std::int64_t connectivity(net_id n) const {
    return n < nets_.size() ? static_cast<std::int64_t>(nets_[n].parts.size()) : 0;
  }

  std::int64_t entry_count() const { return entries_; }
  std::int64_t peak_entry_count() const { return peak_entries_; }
  std::int64_t nets_seen() const { return nets_seen_; }

  // Incrementally tracked sum over nets of max(connectivity - 1, 0).
  std::int64_t cut() const { return cut_; }

  // Structural memory: one integer per entry in counted mode, none otherwise.
  std::int64_t counted_ints() const { return counted() ? entries_ : 0; }

 private:
  struct net_entry {
    std::vector<part_id> parts;
    std::vector<std::uint32_t> counts;  // parallel to parts, counted mode only
    bool seen = false;
  };

  mode mode_;
  std::vector<net_entry> nets_;
  std::int64_t entries_ = 0;
  std::int64_t peak_entries_ = 0;
  std::int64_t nets_seen_ = 0;
  std::int64_t cut_ = 0;

  net_entry& touch(net_id n);
};

}  // namespace shpart
