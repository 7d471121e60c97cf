#include "shpart/partitioner.hpp"

#include <chrono>

namespace shpart {

const char* algorithm_name(algorithm a) {
  switch (a) {
    case algorithm::random_assign: return "random";
    case algorithm::minmax: return "minmax";
    case algorithm::minmax_n2p: return "minmax-n2p";
    case algorithm::minmax_l: return "minmax-l";
    case algorithm::minmax_bf: return "minmax-bf";
    case algorithm::minmax_mh: return "minmax-mh";
  }
  return "?";
}

std::optional<algorithm> algorithm_from_name(const std::string& name) {
  for (algorithm a : {algorithm::random_assign, algorithm::minmax, algorithm::minmax_n2p,
                      algorithm::minmax_l, algorithm::minmax_bf, algorithm::minmax_mh}) {
    if (name == algorithm_name(a)) return a;
  }
  return std::nullopt;
}

active_part_scratch::active_part_scratch(int num_parts)
    : save_(static_cast<std::size_t>(num_parts), 0),
      mark_(static_cast<std::size_t>(num_parts), 0),
      pids_(static_cast<std::size_t>(num_parts), 0) {
  if (num_parts < 1) throw invariant_error("scratch needs a positive part count");
}

void active_part_scratch::begin_query() {
  ++stamp_;
  active_ = 0;
}

void active_part_scratch::bump(part_id p) {
  const auto i = static_cast<std::size_t>(p);
  if (mark_[i] != stamp_) {
    mark_[i] = stamp_;
    save_[i] = 1;
    pids_[static_cast<std::size_t>(active_++)] = p;
  } else {
    ++save_[i];
  }
}

partitioner::partitioner(const partitioner_config& cfg, std::uint64_t num_nets,
                         net_connectivity::mode cmode)
    : cfg_(cfg),
      state_(cfg.num_parts, cfg.beta),
      conn_(cmode),
      rng_(cfg.seed),
      scratch_(cfg.num_parts) {
  if (cfg_.num_parts < 2) throw invariant_error("partitioning needs at least two parts");
  switch (cfg_.alg) {
    case algorithm::minmax:
      part_nets_.resize(static_cast<std::size_t>(cfg_.num_parts));
      break;
    case algorithm::minmax_l:
      if (cfg_.ell < 1) throw invariant_error("slot count must be positive");
      truncated_n2p_.resize(num_nets);
      break;
    case algorithm::minmax_bf:
      filter_.emplace(cfg_.bf_bits, cfg_.bf_hashes, cfg_.num_parts);
      break;
    case algorithm::minmax_mh:
      hasher_.emplace(cfg_.mh_hashes, cfg_.seed, cfg_.mh_modulus);
      if (num_nets >= cfg_.mh_modulus)
        throw input_error("hash modulus must exceed the largest net id");
      break;
    default:
      break;
  }
}

part_id partitioner::lowest_eligible() const {
  for (part_id p = 0; p < cfg_.num_parts; ++p)
    if (state_.eligible(p)) return p;
  throw invariant_error("no eligible part");
}

part_id partitioner::step_random(const stream_element&) {
  for (;;) {
    const auto p = static_cast<part_id>(rng_.next_below(cfg_.num_parts));
    if (state_.eligible(p)) return p;
  }
}

part_id partitioner::step_minmax(const stream_element& e) {
  const auto& w = state_.weights();
  const std::int64_t wmin = w[static_cast<std::size_t>(state_.min_part())];
  const std::int64_t slack = state_.slack();

  std::int64_t best_save = -1;
  part_id best = kUnassigned;
  for (part_id p = 0; p < cfg_.num_parts; ++p) {
    if (w[static_cast<std::size_t>(p)] - wmin >= slack) continue;
    const auto& table = part_nets_[static_cast<std::size_t>(p)];
    std::int64_t save = 0;
    for (net_id n : e.nets) save += table.contains(n) ? 1 : 0;
    if (save > best_save) {  // ascending scan, so ties keep the lowest id
      best = p;
      best_save = save;
    }
  }
  return best;
}

part_id partitioner::select_from_scratch() {
  std::int64_t best_save = 0;
  part_id best = kUnassigned;
  for (int i = 0; i < scratch_.active_count(); ++i) {
    const part_id p = scratch_.active_part(i);
    if (!state_.eligible(p)) continue;
    const std::int64_t save = scratch_.saving(p);
    // Active parts come out in discovery order, so the id comparison keeps
    // tie-breaking aligned with the full-scan variant.
    if (save > best_save || (save == best_save && best != kUnassigned && p < best)) {
      best = p;
      best_save = save;
    }
  }
  return best == kUnassigned ? lowest_eligible() : best;
}

part_id partitioner::step_minmax_n2p(const stream_element& e) {
  scratch_.begin_query();
  for (net_id n : e.nets)
    for (part_id p : conn_.parts(n)) scratch_.bump(p);
  return select_from_scratch();
}

part_id partitioner::step_minmax_l(const stream_element& e) {
  scratch_.begin_query();
  for (net_id n : e.nets)
    for (part_id p : truncated_n2p_[n]) scratch_.bump(p);
  return select_from_scratch();
}

part_id partitioner::step_minmax_bf(const stream_element& e) {
  const auto& w = state_.weights();
  const std::int64_t wmin = w[static_cast<std::size_t>(state_.min_part())];
  const std::int64_t slack = state_.slack();

  std::int64_t best_save = -1;
  part_id best = kUnassigned;
  for (part_id p = 0; p < cfg_.num_parts; ++p) {
    if (w[static_cast<std::size_t>(p)] - wmin >= slack) continue;
    std::int64_t save = 0;
    for (net_id n : e.nets) save += filter_->query(n, p) ? 1 : 0;
    if (save > best_save) {
      best = p;
      best_save = save;
    }
  }
  return best;
}

part_id partitioner::step_minmax_mh(const stream_element& e) {
  // No nets means no signature; fall back to the least-loaded part.
  if (e.nets.empty()) return state_.min_part();
  part_id p = hasher_->part(e.nets, cfg_.num_parts);
  for (int probes = 0; probes < cfg_.num_parts; ++probes) {
    if (state_.eligible(p)) return p;
    p = (p + 1) % cfg_.num_parts;
  }
  throw invariant_error("probing found no eligible part");
}

void partitioner::update_truncated(net_id n, part_id p) {
  auto& slots = truncated_n2p_[n];
  for (part_id q : slots)
    if (q == p) return;
  if (slots.size() < static_cast<std::size_t>(cfg_.ell)) {
    slots.push_back(p);
    ++truncated_slots_;
  } else {
    // Evict a uniformly random slot; the stale part just loses visibility.
    slots[static_cast<std::size_t>(rng_.next_below(static_cast<std::uint64_t>(cfg_.ell)))] = p;
  }
}

void partitioner::commit(const stream_element& e, part_id p) {
  state_.assign(e.vertex, p);
  for (net_id n : e.nets) conn_.add_pin(n, p);
  switch (cfg_.alg) {
    case algorithm::minmax:
      for (net_id n : e.nets) part_nets_[static_cast<std::size_t>(p)].insert(n);
      break;
    case algorithm::minmax_l:
      for (net_id n : e.nets) update_truncated(n, p);
      break;
    case algorithm::minmax_bf:
      for (net_id n : e.nets) filter_->insert(n, p);
      break;
    default:
      break;
  }
}

part_id partitioner::place(const stream_element& e) {
  part_id p = kUnassigned;
  switch (cfg_.alg) {
    case algorithm::random_assign: p = step_random(e); break;
    case algorithm::minmax: p = step_minmax(e); break;
    case algorithm::minmax_n2p: p = step_minmax_n2p(e); break;
    case algorithm::minmax_l: p = step_minmax_l(e); break;
    case algorithm::minmax_bf: p = step_minmax_bf(e); break;
    case algorithm::minmax_mh: p = step_minmax_mh(e); break;
  }
  commit(e, p);
  return p;
}

std::uint64_t partitioner::aux_ints() const {
  switch (cfg_.alg) {
    case algorithm::random_assign:
      return 0;
    case algorithm::minmax: {
      std::uint64_t total = 0;
      for (const auto& t : part_nets_) total += t.size();
      return total;
    }
    case algorithm::minmax_n2p:
      return scratch_.ints();
    case algorithm::minmax_l:
      return scratch_.ints() + truncated_slots_;
    case algorithm::minmax_bf:
      return filter_->storage_words();
    case algorithm::minmax_mh:
      return hasher_->storage_words();
  }
  return 0;
}

run_result run(const stream_file& s, const partitioner_config& cfg, const run_options& opts) {
  partitioner part(cfg, s.num_nets);
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  std::int64_t pins = 0;
  std::int64_t elements = 0;
  for (const auto& e : s.elements) {
    const std::int64_t slack_in_force = part.state().slack();
    part.place(e);
    pins += static_cast<std::int64_t>(e.nets.size());
    ++elements;
    if (opts.validate_balance && part.state().imbalance() > slack_in_force)
      throw invariant_error("balance bound violated after assigning vertex " +
                            std::to_string(e.vertex));
    if (opts.checkpoint_every > 0 && opts.on_checkpoint &&
        elements % opts.checkpoint_every == 0) {
      checkpoint c;
      c.vertices = elements;
      c.nets_seen = part.connectivity().nets_seen();
      c.pins = pins;
      c.cut = part.connectivity().cut();
      c.imbalance = part.state().imbalance();
      c.entries = part.connectivity().entry_count();
      c.elapsed_seconds = elapsed();
      opts.on_checkpoint(c);
    }
  }

  run_result r;
  r.wall_seconds = elapsed();
  r.parts.assign(s.num_vertices(), kUnassigned);
  const auto& assigned = part.state().parts();
  for (std::size_t v = 0; v < assigned.size() && v < r.parts.size(); ++v)
    r.parts[v] = assigned[v];
  r.vertices = elements;
  r.pins = pins;
  r.nets_seen = part.connectivity().nets_seen();
  r.cut = part.connectivity().cut();
  r.imbalance = part.state().imbalance();
  r.entries = part.connectivity().entry_count();
  r.peak_entries = part.connectivity().peak_entry_count();
  r.empty_parts = part.state().empty_parts();
  r.aux_ints = part.aux_ints();
  r.pins_per_second = r.wall_seconds > 0.0 ? static_cast<double>(pins) / r.wall_seconds : 0.0;
  if (cfg.num_parts > static_cast<std::int64_t>(s.num_vertices()))
    r.warnings.push_back("more parts than vertices; some parts must stay empty");
  if (r.empty_parts > 0)
    r.warnings.push_back(std::to_string(r.empty_parts) + " part(s) ended empty");
  return r;
}

}  // namespace shpart
