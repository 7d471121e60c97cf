#include "shpart/net_connectivity.hpp"

namespace shpart {

net_connectivity::net_entry& net_connectivity::touch(net_id n) {
  if (n >= nets_.size()) nets_.resize(n + 1);
  net_entry& e = nets_[n];
  if (!e.seen) {
    e.seen = true;
    ++nets_seen_;
  }
  return e;
}

void net_connectivity::add_pin(net_id n, part_id p) {
  net_entry& e = touch(n);
  for (std::size_t i = 0; i < e.parts.size(); ++i) {
    if (e.parts[i] == p) {
      if (counted()) ++e.counts[i];
      return;
    }
  }
  const std::size_t lambda_before = e.parts.size();
  e.parts.push_back(p);
  if (counted()) e.counts.push_back(1);
  ++entries_;
  if (entries_ > peak_entries_) peak_entries_ = entries_;
  if (lambda_before >= 1) ++cut_;
}

void net_connectivity::remove_pin(net_id n, part_id p) {
  if (!counted()) throw invariant_error("remove_pin: set-only connectivity");
  if (n >= nets_.size()) throw invariant_error("remove_pin: unseen net");
  net_entry& e = nets_[n];
  for (std::size_t i = 0; i < e.parts.size(); ++i) {
    if (e.parts[i] == p) {
      if (e.counts[i] == 0) throw invariant_error("remove_pin: count underflow");
      if (--e.counts[i] == 0) {
        const std::size_t lambda_before = e.parts.size();
        e.parts[i] = e.parts.back();
        e.parts.pop_back();
        e.counts[i] = e.counts.back();
        e.counts.pop_back();
        --entries_;
        if (lambda_before >= 2) --cut_;
      }
      return;
    }
  }
  throw invariant_error("remove_pin: part not present for net");
}

std::uint32_t net_connectivity::pin_count(net_id n, part_id p) const {
  if (!counted()) throw invariant_error("pin_count: set-only connectivity");
  if (n >= nets_.size()) return 0;
  const net_entry& e = nets_[n];
  for (std::size_t i = 0; i < e.parts.size(); ++i) {
    if (e.parts[i] == p) return e.counts[i];
  }
  return 0;
}

}  // namespace shpart
