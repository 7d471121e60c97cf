#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "shpart/metrics.hpp"
#include "shpart/refine.hpp"
#include "support/synthetic.hpp"

using namespace shpart;

namespace {

stream_file manual_stream(std::vector<stream_element> elems, std::uint64_t num_nets) {
  stream_file s;
  s.num_nets = num_nets;
  s.elements = std::move(elems);
  return s;
}

partitioner_config n2p_config(int K, std::uint64_t seed = 1, double beta = 0.1) {
  partitioner_config cfg;
  cfg.alg = algorithm::minmax_n2p;
  cfg.num_parts = K;
  cfg.seed = seed;
  cfg.beta = beta;
  return cfg;
}

refine_config refine_with(refine_strategy strategy, int passes, double frac,
                          std::int64_t pins = 0) {
  refine_config r;
  r.strategy = strategy;
  r.passes = passes;
  r.buffer_frac = frac;
  r.buffer_pins = pins;
  return r;
}

// Counted bookkeeping must agree with the raw pin lists: per net, the counts
// over all parts sum to the number of currently assigned pins.
void audit_counts(const partitioner& part, const std::vector<stream_element>& elems,
                  std::uint64_t num_nets) {
  std::vector<std::int64_t> assigned_pins(num_nets, 0);
  for (const auto& e : elems) {
    if (part.state().part_of(e.vertex) == kUnassigned) continue;
    for (net_id n : e.nets) ++assigned_pins[n];
  }
  const auto& conn = part.connectivity();
  for (net_id n = 0; n < num_nets; ++n) {
    std::int64_t total = 0;
    for (part_id p = 0; p < part.config().num_parts; ++p)
      total += conn.pin_count(n, p);
    CHECK(total == assigned_pins[n]);
  }
}

bool has_warning(const std::vector<std::string>& warnings, const char* needle) {
  for (const auto& w : warnings)
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("strategy names round-trip") {
  CHECK(std::string(refine_strategy_name(refine_strategy::gain_only)) == "ref");
  CHECK(std::string(refine_strategy_name(refine_strategy::relaxed)) == "ref-rlx");
  CHECK(std::string(refine_strategy_name(refine_strategy::relaxed_small)) == "ref-rlx-sv");
  for (refine_strategy s : {refine_strategy::gain_only, refine_strategy::relaxed,
                            refine_strategy::relaxed_small})
    CHECK(refine_strategy_from_name(refine_strategy_name(s)) == s);
  CHECK_FALSE(refine_strategy_from_name("kernighan-lin").has_value());
}

TEST_CASE("leave gain counts nets the vertex holds alone in a split net") {
  // three parts: net 0 = {v0@0, v9@1}, net 1 = {v0,v1,v2}@0,
  // net 2 = {v0@0, v3@1, v4@2}
  partitioner part(n2p_config(3, 1, 9.0), 3, net_connectivity::mode::counted);
  part.commit({0, {0, 1, 2}}, 0);
  part.commit({1, {1}}, 0);
  part.commit({2, {1}}, 0);
  part.commit({9, {0}}, 1);
  part.commit({3, {2}}, 1);
  part.commit({4, {2}}, 2);
  const auto& conn = part.connectivity();

  // sole pin in a two-part net gains, three own-part pins do not
  CHECK(leave_gain(conn, {0, {0, 1}}, 0) == 1);
  // an internal net never gains, whatever the multiplicity
  CHECK(leave_gain(conn, {1, {1}}, 0) == 0);
  // sole pin of a net spanning three parts still frees exactly one
  CHECK(leave_gain(conn, {0, {2}}, 0) == 1);
  CHECK(leave_gain(conn, {0, {0, 1, 2}}, 0) == 2);
  CHECK(leave_gain(conn, {0, {}}, 0) == 0);

  SUBCASE("asking about a part the vertex has no pin in fails fast") {
    CHECK_THROWS_AS(leave_gain(conn, {1, {1}}, 1), invariant_error);
  }
  SUBCASE("set-only connectivity cannot answer") {
    partitioner flat(n2p_config(2, 1, 9.0), 1);
    flat.commit({0, {0}}, 0);
    CHECK_THROWS_AS(leave_gain(flat.connectivity(), {0, {0}}, 0), invariant_error);
  }
}

TEST_CASE("bufferable filter applies only to the small-degree strategy") {
  CHECK_FALSE(is_bufferable(refine_strategy::relaxed_small, 12, 8));
  CHECK(is_bufferable(refine_strategy::relaxed_small, 8, 8));  // boundary is inclusive
  CHECK(is_bufferable(refine_strategy::relaxed_small, 1, 8));
  CHECK(is_bufferable(refine_strategy::relaxed, 1000, 8));
  CHECK(is_bufferable(refine_strategy::gain_only, 1000, 8));
}

TEST_CASE("moveable filter demands positive gain only for the strict strategy") {
  CHECK_FALSE(is_moveable(refine_strategy::gain_only, 0));
  CHECK(is_moveable(refine_strategy::gain_only, 2));
  CHECK(is_moveable(refine_strategy::relaxed, 0));
  CHECK(is_moveable(refine_strategy::relaxed_small, 0));
}

TEST_CASE("removing a vertex undoes weight, assignment, and pin counts") {
  partitioner part(n2p_config(2, 1, 4.0), 2, net_connectivity::mode::counted);
  part.commit({0, {0, 1}}, 0);
  part.commit({1, {0}}, 1);
  REQUIRE(part.connectivity().cut() == 1);
  REQUIRE(part.connectivity().entry_count() == 3);

  remove_vertex(part, {0, {0, 1}});
  CHECK(part.state().part_of(0) == kUnassigned);
  CHECK(part.state().weights() == std::vector<std::int64_t>{0, 1});
  CHECK(part.state().assigned() == 1);
  CHECK(part.connectivity().pin_count(0, 0) == 0);
  CHECK(part.connectivity().pin_count(0, 1) == 1);
  CHECK(part.connectivity().connectivity(0) == 1);
  CHECK(part.connectivity().connectivity(1) == 0);
  CHECK(part.connectivity().cut() == 0);
  CHECK(part.connectivity().entry_count() == 1);
  CHECK(part.connectivity().nets_seen() == 2);  // seen is forever

  SUBCASE("re-committing restores the original picture") {
    part.commit({0, {0, 1}}, 0);
    CHECK(part.state().weights() == std::vector<std::int64_t>{1, 1});
    CHECK(part.connectivity().cut() == 1);
    CHECK(part.connectivity().entry_count() == 3);
    CHECK(part.connectivity().pin_count(0, 0) == 1);
  }
  SUBCASE("removing twice fails fast") {
    CHECK_THROWS_AS(remove_vertex(part, {0, {0, 1}}), invariant_error);
  }
}

TEST_CASE("a flush leaves zero-gain vertices in place under the strict strategy") {
  partitioner part(n2p_config(2, 1, 4.0), 1, net_connectivity::mode::counted);
  part.commit({0, {0}}, 0);
  part.commit({1, {0}}, 0);

  refine_buffer buf(100);
  buf.add({0, {0}});
  buf.add({1, {0}});
  const auto rec = refine_flush(part, buf, refine_with(refine_strategy::gain_only, 3, 1.0),
                                {}, 2, true);
  CHECK(rec.moves == 0);
  CHECK(rec.cut_before == 0);
  CHECK(rec.cut_after == 0);
  CHECK(rec.pass_count == 3);
  CHECK(rec.stream_position == 2);
  CHECK(buf.empty());
  CHECK(part.state().part_of(0) == 0);
  CHECK(part.state().part_of(1) == 0);
  CHECK(part.connectivity().pin_count(0, 0) == 2);
}

TEST_CASE("a relaxed self-move rebuilds the same placement") {
  partitioner part(n2p_config(2, 1, 4.0), 1, net_connectivity::mode::counted);
  part.commit({0, {0}}, 0);
  part.commit({1, {0}}, 0);

  refine_buffer buf(100);
  buf.add({0, {0}});
  const auto rec = refine_flush(part, buf, refine_with(refine_strategy::relaxed, 2, 1.0),
                                {}, 2, true);
  CHECK(rec.moves == 0);  // landing where it started is not a relocation
  CHECK(rec.cut_after == 0);
  CHECK(part.state().part_of(0) == 0);
  CHECK(part.state().weights() == std::vector<std::int64_t>{2, 0});
  CHECK(part.connectivity().pin_count(0, 0) == 2);
  CHECK(part.state().assigned() == 2);
}

TEST_CASE("a flush relocates a vertex whose nets it holds alone") {
  // v0 sits in part 1 but both its nets otherwise live in part 0
  partitioner part(n2p_config(2, 1, 4.0), 2, net_connectivity::mode::counted);
  part.commit({1, {0}}, 0);
  part.commit({2, {1}}, 0);
  part.commit({0, {0, 1}}, 1);
  part.commit({3, {}}, 1);
  part.commit({4, {}}, 0);
  REQUIRE(part.state().weights() == std::vector<std::int64_t>{3, 2});
  REQUIRE(part.connectivity().cut() == 2);
  REQUIRE(leave_gain(part.connectivity(), {0, {0, 1}}, 1) == 2);

  std::vector<move_event> seen;
  refine_hooks hooks;
  hooks.on_move = [&](const move_event& ev) {
    seen.push_back(ev);
    seen.back().parts = {};
  };

  refine_buffer buf(100);
  buf.add({0, {0, 1}});
  const auto rec = refine_flush(part, buf, refine_with(refine_strategy::gain_only, 2, 1.0),
                                hooks, 5, true);
  CHECK(rec.cut_before == 2);
  CHECK(rec.cut_after == 0);
  CHECK(rec.moves == 1);  // the second pass finds nothing left to do
  CHECK(part.state().part_of(0) == 0);
  CHECK(part.state().weights() == std::vector<std::int64_t>{4, 1});

  REQUIRE(seen.size() == 1);
  CHECK(seen[0].vertex == 0);
  CHECK(seen[0].from == 1);
  CHECK(seen[0].to == 0);
  CHECK(seen[0].gain == 2);
  CHECK(seen[0].cut_before == 2);
  CHECK(seen[0].cut_after == 0);

  const std::vector<stream_element> elems = {
      {1, {0}}, {2, {1}}, {0, {0, 1}}, {3, {}}, {4, {}}};
  audit_counts(part, elems, 2);

  // from-scratch recomputation agrees with the incremental total
  std::vector<std::vector<net_id>> lists = {{0, 1}, {0}, {1}, {}, {}};
  const auto hg = hypergraph::from_net_lists(std::move(lists), 2);
  CHECK(connectivity_cutsize(hg, part.state().parts()) == 0);
}

TEST_CASE("the element tripping an overflow is flushed around, not buffered") {
  // five elements of degree two against a four-pin buffer: the third one
  // forces a flush and passes straight through
  std::vector<stream_element> elems;
  for (vertex_id v = 0; v < 5; ++v) elems.push_back({v, {2 * v, 2 * v + 1}});
  const auto s = manual_stream(std::move(elems), 10);

  const auto r = run_refined(s, n2p_config(2, 1, 4.0),
                             refine_with(refine_strategy::gain_only, 1, 0.0, 4));
  CHECK(r.buffer_capacity == 4);
  CHECK(r.flushes == 2);
  CHECK(r.buffered_elements == 4);
  CHECK(r.peak_buffer_pins == 4);
  CHECK(r.skipped_oversize == 0);
  CHECK(r.moves == 0);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0].stream_position == 3);
  CHECK(r.trace[1].stream_position == 5);
  CHECK(r.stats.cut == 0);  // all nets are single-pin
  CHECK(r.stats.vertices == 5);
  CHECK(r.stats.pins == 10);

  SUBCASE("fractional capacity floors against the stream pin total") {
    std::vector<stream_element> fifty;
    for (vertex_id v = 0; v < 50; ++v) fifty.push_back({v, {2 * v, 2 * v + 1}});
    const auto s100 = manual_stream(std::move(fifty), 100);
    const auto rf = run_refined(s100, n2p_config(2, 1, 4.0),
                                refine_with(refine_strategy::relaxed, 1, 0.15));
    CHECK(rf.buffer_capacity == 15);
  }
}

TEST_CASE("oversize elements are counted and skipped with a warning") {
  const auto s = manual_stream({{0, {0, 1, 2, 3, 4}}, {1, {5}}}, 6);
  const auto r = run_refined(s, n2p_config(2, 1, 4.0),
                             refine_with(refine_strategy::relaxed, 1, 0.0, 4));
  CHECK(r.skipped_oversize == 1);
  CHECK(r.buffered_elements == 1);
  CHECK(r.flushes == 1);
  CHECK(has_warning(r.stats.warnings, "exceeded buffer capacity"));
}

TEST_CASE("isolated vertices are never buffered") {
  const auto s = manual_stream({{0, {}}, {1, {}}, {2, {0}}, {3, {0}}}, 1);
  const auto r = run_refined(s, n2p_config(2, 1, 4.0),
                             refine_with(refine_strategy::relaxed, 2, 1.0));
  CHECK(r.buffered_elements == 2);
  CHECK(r.skipped_oversize == 0);
  CHECK(r.stats.vertices == 4);
}

TEST_CASE("the small-degree strategy tracks the running mean degree") {
  // after the degree-9 element the mean is 5, so 9 is over the cap
  std::vector<stream_element> elems = {{0, {0}}, {1, {1, 2, 3, 4, 5, 6, 7, 8, 9}}};
  const auto s = manual_stream(std::move(elems), 10);

  const auto r = run_refined(s, n2p_config(2, 1, 4.0),
                             refine_with(refine_strategy::relaxed_small, 1, 0.0, 100));
  CHECK(r.buffered_elements == 1);

  SUBCASE("an explicit threshold overrides the running mean") {
    auto rcfg = refine_with(refine_strategy::relaxed_small, 1, 0.0, 100);
    rcfg.degree_threshold = 12;
    const auto r2 = run_refined(s, n2p_config(2, 1, 4.0), rcfg);
    CHECK(r2.buffered_elements == 2);
  }
  SUBCASE("a degree exactly at the mean is still small") {
    const auto s2 = manual_stream({{0, {0, 1, 2}}, {1, {3, 4, 5}}}, 6);
    const auto r2 = run_refined(s2, n2p_config(2, 1, 4.0),
                                refine_with(refine_strategy::relaxed_small, 1, 0.0, 100));
    CHECK(r2.buffered_elements == 2);
  }
}

TEST_CASE("a vanishing buffer fraction degenerates to the plain streaming run") {
  const auto s = testsupport::random_stream(600, 300, 4, 7, 3);
  const auto cfg = n2p_config(8);
  const auto plain = run(s, cfg);
  const auto r = run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 1e-9));

  CHECK(r.buffer_capacity == 0);
  CHECK(r.flushes == 0);
  CHECK(r.moves == 0);
  CHECK(r.buffered_elements == 0);
  CHECK(r.skipped_oversize == 600);
  CHECK(r.stats.parts == plain.parts);
  CHECK(r.stats.cut == plain.cut);
  CHECK(r.stats.entries == plain.entries);
  CHECK(r.stats.imbalance == plain.imbalance);
}

TEST_CASE("a full-stream buffer only improves the final cut") {
  const auto s = testsupport::random_stream(600, 300, 4, 7, 3);
  const auto cfg = n2p_config(8);
  const auto plain = run(s, cfg);
  const auto r = run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 1.0));

  REQUIRE(r.flushes == 1);
  CHECK(r.trace[0].stream_position == 600);
  // up to the single terminal flush the runs are byte-for-byte the same
  CHECK(r.trace[0].cut_before == plain.cut);
  CHECK(r.stats.cut <= plain.cut);
  CHECK(r.stats.cut == r.trace[0].cut_after);

  SUBCASE("more passes never land above fewer") {
    const auto r2 = run_refined(s, cfg, refine_with(refine_strategy::relaxed, 2, 1.0));
    const auto r8 = run_refined(s, cfg, refine_with(refine_strategy::relaxed, 8, 1.0));
    CHECK(r8.stats.cut <= r2.stats.cut);
  }
}

TEST_CASE("every refinement move is audited against the from-scratch oracle") {
  const auto s = testsupport::random_stream(1500, 700, 5, 11, 5);
  const auto hg = hypergraph_from_stream(s);
  const auto cfg = n2p_config(8);

  std::int64_t events = 0;
  std::int64_t relocations = 0;  // on_move also reports self-moves
  refine_hooks hooks;
  hooks.on_move = [&](const move_event& ev) {
    CHECK(ev.cut_after <= ev.cut_before);
    CHECK(ev.gain >= 0);
    CHECK(ev.to >= 0);
    CHECK(ev.to < 8);
    if (ev.to != ev.from) ++relocations;
    if (++events % 16 == 0)
      CHECK(prefix_cutsize(hg, ev.parts) == ev.cut_after);
  };
  hooks.on_flush = [&](const flush_record& rec, std::span<const part_id> parts) {
    CHECK(rec.cut_after <= rec.cut_before);
    CHECK(prefix_cutsize(hg, parts) == rec.cut_after);
  };

  run_options opts;
  opts.validate_balance = true;  // the slack bound is rechecked after every move
  const auto r = run_refined(s, cfg, refine_with(refine_strategy::relaxed, 3, 0.2),
                             opts, hooks);
  CHECK(r.moves >= 1);
  CHECK(r.flushes >= 2);
  CHECK(relocations == r.moves);
  CHECK(connectivity_cutsize(hg, r.stats.parts) == r.stats.cut);
  CHECK(r.stats.imbalance <= dynamic_slack(1499, 8, 0.1));
}

TEST_CASE("the relaxed strategy helps at least as often as not") {
  int wins = 0;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto s = testsupport::random_stream(1200, 500, 4, seed, seed + 10);
    const auto cfg = n2p_config(8, seed);
    const auto plain = run(s, cfg);
    const auto r = run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 0.15));
    if (r.stats.cut <= plain.cut) ++wins;
  }
  CHECK(wins >= 2);
}

TEST_CASE("refinement run validation") {
  const auto s = manual_stream({{0, {0}}}, 1);
  auto cfg = n2p_config(2);
  SUBCASE("only the net-to-part algorithm can be refined") {
    cfg.alg = algorithm::minmax;
    CHECK_THROWS_AS(run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 0.15)),
                    invariant_error);
  }
  SUBCASE("at least one pass") {
    CHECK_THROWS_AS(run_refined(s, cfg, refine_with(refine_strategy::relaxed, 0, 0.15)),
                    invariant_error);
  }
  SUBCASE("fraction must be in (0, 1] unless an absolute capacity is given") {
    CHECK_THROWS_AS(run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 0.0)),
                    invariant_error);
    CHECK_THROWS_AS(run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 1.5)),
                    invariant_error);
    CHECK_NOTHROW(run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 0.0, 8)));
  }
  SUBCASE("negative absolute capacity fails fast") {
    CHECK_THROWS_AS(run_refined(s, cfg, refine_with(refine_strategy::relaxed, 4, 0.5, -4)),
                    invariant_error);
  }
}
