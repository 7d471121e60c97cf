// partitioner.hpp - streaming partitioning algorithms and the run driver
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shpart/bloom_filter.hpp"
#include "shpart/flat_set.hpp"
#include "shpart/hypergraph.hpp"
#include "shpart/minhash.hpp"
#include "shpart/net_connectivity.hpp"
#include "shpart/partition_state.hpp"
#include "shpart/stream.hpp"
#include "shpart/types.hpp"

namespace shpart {

enum class algorithm {
  random_assign,  // uniform redraw until an eligible part comes up
  minmax,         // per-part net tables, full scan over parts
  minmax_n2p,     // net-to-part lists, visits only parts adjacent to the vertex
  minmax_l,       // net-to-part lists truncated to a fixed number of slots
  minmax_bf,      // net/part membership approximated by a Bloom filter
  minmax_mh,      // stateless MinHash placement
};

const char* algorithm_name(algorithm a);
std::optional<algorithm> algorithm_from_name(const std::string& name);

struct partitioner_config {
  algorithm alg = algorithm::minmax_n2p;
  int num_parts = 2;
  double beta = 0.1;
  std::uint64_t seed = 1;
  int ell = 5;                         // slots per net for minmax_l
  std::uint64_t bf_bits = 20'000'000;  // Bloom filter size for minmax_bf
  int bf_hashes = 4;
  int mh_hashes = 4;
  std::uint64_t mh_modulus = minhash_family::kDefaultModulus;
};

// Per-part saving counters that only ever touch parts adjacent to the
// current vertex. A query stamp takes the place of clearing between
// queries, so begin_query is O(1).
class active_part_scratch {
 public:
  explicit active_part_scratch(int num_parts);

  void begin_query();
  void bump(part_id p);

  int active_count() const { return active_; }
  part_id active_part(int idx) const { return pids_[static_cast<std::size_t>(idx)]; }
  std::int64_t saving(part_id p) const { return save_[static_cast<std::size_t>(p)]; }

  // Integers held, for memory accounting.
  std::uint64_t ints() const { return 3 * save_.size() + 1; }

 private:
  std::vector<std::int64_t> save_;
  std::vector<std::uint64_t> mark_;
  std::vector<part_id> pids_;
  std::uint64_t stamp_ = 0;
  int active_ = 0;
};

// One streaming partitioner: algorithm-specific placement state plus the
// shared balance ledger and connectivity store. Each step places one vertex
// permanently; connectivity_mode::counted is what refinement needs to undo
// pins later.
class partitioner {
 public:
  partitioner(const partitioner_config& cfg, std::uint64_t num_nets,
              net_connectivity::mode cmode = net_connectivity::mode::set_only);

  // Places e.vertex and returns the chosen part.
  part_id place(const stream_element& e);

  // Selection without commitment, exposed for the driving loops.
  part_id step_random(const stream_element& e);
  part_id step_minmax(const stream_element& e);
  part_id step_minmax_n2p(const stream_element& e);
  part_id step_minmax_l(const stream_element& e);
  part_id step_minmax_bf(const stream_element& e);
  part_id step_minmax_mh(const stream_element& e);

  // Applies a selection: balance ledger, connectivity, algorithm tables.
  void commit(const stream_element& e, part_id p);

  const partitioner_config& config() const { return cfg_; }
  partition_state& state() { return state_; }
  const partition_state& state() const { return state_; }
  net_connectivity& connectivity() { return conn_; }
  const net_connectivity& connectivity() const { return conn_; }
  active_part_scratch& scratch() { return scratch_; }

  // Auxiliary integers the algorithm holds beyond the part vector and the
  // shared connectivity store (scratch arrays, per-part tables, filter
  // words, hash coefficients).
  std::uint64_t aux_ints() const;

 private:
  part_id select_from_scratch();
  part_id lowest_eligible() const;
  void update_truncated(net_id n, part_id p);

  partitioner_config cfg_;
  partition_state state_;
  net_connectivity conn_;
  rng rng_;
  active_part_scratch scratch_;
  std::vector<detail::flat_set> part_nets_;           // minmax
  std::vector<std::vector<part_id>> truncated_n2p_;   // minmax_l
  std::uint64_t truncated_slots_ = 0;
  std::optional<bloom_filter> filter_;                // minmax_bf
  std::optional<minhash_family> hasher_;              // minmax_mh
};

struct checkpoint {
  std::int64_t vertices = 0;
  std::int64_t nets_seen = 0;
  std::int64_t pins = 0;
  std::int64_t cut = 0;
  std::int64_t imbalance = 0;
  std::int64_t entries = 0;
  double elapsed_seconds = 0.0;  // wall time; excluded from determinism checks
};

struct run_options {
  std::int64_t checkpoint_every = 0;  // elements between checkpoints, 0 = none
  bool validate_balance = false;      // recheck the slack bound after every step
  std::function<void(const checkpoint&)> on_checkpoint;
};

struct run_result {
  std::vector<part_id> parts;  // indexed by vertex id
  std::int64_t vertices = 0;
  std::int64_t pins = 0;
  std::int64_t nets_seen = 0;
  std::int64_t cut = 0;
  std::int64_t imbalance = 0;
  std::int64_t entries = 0;
  std::int64_t peak_entries = 0;
  std::int64_t empty_parts = 0;
  std::uint64_t aux_ints = 0;
  double wall_seconds = 0.0;
  double pins_per_second = 0.0;
  std::vector<std::string> warnings;
};

// Streams every element through one partitioner.
run_result run(const stream_file& s, const partitioner_config& cfg,
               const run_options& opts = {});

}  // namespace shpart
