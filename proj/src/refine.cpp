#include "shpart/refine.hpp"

#include <chrono>
#include <cmath>

namespace shpart {

const char* refine_strategy_name(refine_strategy s) {
  switch (s) {
    case refine_strategy::gain_only: return "ref";
    case refine_strategy::relaxed: return "ref-rlx";
    case refine_strategy::relaxed_small: return "ref-rlx-sv";
  }
  return "?";
}

std::optional<refine_strategy> refine_strategy_from_name(const std::string& name) {
  for (refine_strategy s : {refine_strategy::gain_only, refine_strategy::relaxed,
                            refine_strategy::relaxed_small}) {
    if (name == refine_strategy_name(s)) return s;
  }
  return std::nullopt;
}

refine_buffer::refine_buffer(std::int64_t capacity_pins) : capacity_(capacity_pins) {
  if (capacity_pins < 0) throw invariant_error("buffer capacity cannot be negative");
}

void refine_buffer::add(const stream_element& e) {
  if (!fits(e.nets.size())) throw invariant_error("buffer overflow");
  pins_ += static_cast<std::int64_t>(e.nets.size());
  elements_.push_back(e);
}

void refine_buffer::clear() {
  pins_ = 0;
  elements_.clear();
}

std::int64_t leave_gain(const net_connectivity& conn, const stream_element& e, part_id p) {
  if (!conn.counted()) throw invariant_error("leave gain needs counted connectivity");
  std::int64_t gain = 0;
  for (net_id n : e.nets) {
    const std::uint32_t in_part = conn.pin_count(n, p);
    if (in_part == 0) throw invariant_error("vertex has no counted pin in its own part");
    if (in_part == 1 && conn.connectivity(n) > 1) ++gain;
  }
  return gain;
}

bool is_bufferable(refine_strategy strategy, std::size_t degree,
                   std::int64_t small_degree_threshold) {
  if (strategy != refine_strategy::relaxed_small) return true;
  return static_cast<std::int64_t>(degree) <= small_degree_threshold;
}

bool is_moveable(refine_strategy strategy, std::int64_t gain) {
  if (strategy == refine_strategy::gain_only) return gain > 0;
  return true;
}

void remove_vertex(partitioner& part, const stream_element& e) {
  const part_id p = part.state().part_of(e.vertex);
  if (p == kUnassigned) throw invariant_error("removing an unassigned vertex");
  for (net_id n : e.nets) part.connectivity().remove_pin(n, p);
  part.state().unassign(e.vertex);
}

namespace {

// A move is legal only if the slack bound survives it for every eligible
// destination. The one configuration where it would not: the vertex sits in
// a lightest part and some part is already slack-limit heavy; evicting it
// would strand its old part one below the bound no matter where it lands.
bool relocation_keeps_balance(const partition_state& st, part_id from, std::int64_t slack) {
  const auto& w = st.weights();
  const std::int64_t w_from = w[static_cast<std::size_t>(from)];
  std::int64_t max_after = 0;
  for (std::size_t p = 0; p < w.size(); ++p) {
    const std::int64_t v = w[p] - (static_cast<part_id>(p) == from ? 1 : 0);
    if (v > max_after) max_after = v;
  }
  return max_after - (w_from - 1) <= slack;
}

}  // namespace

flush_record refine_flush(partitioner& part, refine_buffer& buf, const refine_config& cfg,
                          const refine_hooks& hooks, std::int64_t stream_position,
                          bool validate_balance) {
  flush_record rec{stream_position, part.connectivity().cut(), 0, 0, cfg.passes};
  auto& st = part.state();

  for (int pass = 0; pass < cfg.passes; ++pass) {
    for (const stream_element& e : buf.elements()) {
      const part_id from = st.part_of(e.vertex);
      const std::int64_t gain = leave_gain(part.connectivity(), e, from);
      if (!is_moveable(cfg.strategy, gain)) continue;

      const std::int64_t slack =
          dynamic_slack(st.assigned() - 1, st.num_parts(), st.beta());
      if (!relocation_keeps_balance(st, from, slack)) continue;

      const std::int64_t cut_before = part.connectivity().cut();
      remove_vertex(part, e);
      const part_id to = part.step_minmax_n2p(e);
      part.commit(e, to);
      const std::int64_t cut_after = part.connectivity().cut();
      if (to != from) ++rec.moves;

      if (validate_balance && st.imbalance() > slack)
        throw invariant_error("balance bound violated by refinement move of vertex " +
                              std::to_string(e.vertex));
      if (hooks.on_move)
        hooks.on_move({e.vertex, from, to, gain, cut_before, cut_after, st.parts()});
    }
  }

  rec.cut_after = part.connectivity().cut();
  buf.clear();
  if (hooks.on_flush) hooks.on_flush(rec, st.parts());
  return rec;
}

refine_result run_refined(const stream_file& s, const partitioner_config& cfg,
                          const refine_config& rcfg, const run_options& opts,
                          const refine_hooks& hooks) {
  if (cfg.alg != algorithm::minmax_n2p)
    throw invariant_error("refinement runs on the net-to-part algorithm only");
  if (rcfg.passes < 1) throw invariant_error("refinement needs at least one pass");
  if (rcfg.buffer_pins < 0) throw invariant_error("buffer capacity cannot be negative");
  if (rcfg.buffer_pins == 0 && !(rcfg.buffer_frac > 0.0 && rcfg.buffer_frac <= 1.0))
    throw invariant_error("buffer fraction must be in (0, 1]");

  partitioner part(cfg, s.num_nets, net_connectivity::mode::counted);
  const std::int64_t capacity =
      rcfg.buffer_pins > 0
          ? rcfg.buffer_pins
          : static_cast<std::int64_t>(rcfg.buffer_frac * static_cast<double>(s.num_pins()));
  refine_buffer buf(capacity);

  refine_result out;
  out.buffer_capacity = capacity;

  const auto t0 = std::chrono::steady_clock::now();
  std::int64_t pins = 0;
  std::int64_t elements = 0;
  for (const auto& e : s.elements) {
    const std::int64_t slack_in_force = part.state().slack();
    part.place(e);
    const auto deg = e.nets.size();
    pins += static_cast<std::int64_t>(deg);
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
      c.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      opts.on_checkpoint(c);
    }

    // Isolated vertices are not refinement candidates: no move can change
    // any net's connectivity, only shuffle weights.
    if (deg == 0) continue;
    const std::int64_t threshold =
        rcfg.degree_threshold > 0
            ? rcfg.degree_threshold
            : static_cast<std::int64_t>(std::ceil(static_cast<double>(pins) /
                                                  static_cast<double>(elements)));
    if (!is_bufferable(rcfg.strategy, deg, threshold)) continue;
    if (static_cast<std::int64_t>(deg) > capacity) {
      ++out.skipped_oversize;
      continue;
    }
    if (!buf.fits(deg)) {
      out.trace.push_back(
          refine_flush(part, buf, rcfg, hooks, elements, opts.validate_balance));
      ++out.flushes;
      continue;  // the element that tripped the overflow is not buffered
    }
    buf.add(e);
    ++out.buffered_elements;
    if (buf.pins() > out.peak_buffer_pins) out.peak_buffer_pins = buf.pins();
  }
  if (!buf.empty()) {
    out.trace.push_back(
        refine_flush(part, buf, rcfg, hooks, elements, opts.validate_balance));
    ++out.flushes;
  }

  auto& r = out.stats;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
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
  out.counted_ints = part.connectivity().peak_entry_count();
  for (const auto& fr : out.trace) out.moves += fr.moves;
  r.aux_ints = part.aux_ints() + static_cast<std::uint64_t>(out.counted_ints) +
               static_cast<std::uint64_t>(out.peak_buffer_pins);
  r.pins_per_second = r.wall_seconds > 0.0 ? static_cast<double>(pins) / r.wall_seconds : 0.0;
  if (out.skipped_oversize > 0)
    r.warnings.push_back(std::to_string(out.skipped_oversize) +
                         " element(s) exceeded buffer capacity and were not buffered");
  if (r.empty_parts > 0)
    r.warnings.push_back(std::to_string(r.empty_parts) + " part(s) ended empty");
  return out;
}

}  // namespace shpart
