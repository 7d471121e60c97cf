// refine.hpp - buffered refinement over the net-to-part streaming algorithm
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shpart/partitioner.hpp"

namespace shpart {

enum class refine_strategy {
  gain_only,      // move a vertex only when evicting it frees connectivity
  relaxed,        // re-place every buffered vertex
  relaxed_small,  // relaxed, but buffer only small-degree vertices
};

const char* refine_strategy_name(refine_strategy s);
std::optional<refine_strategy> refine_strategy_from_name(const std::string& name);

struct refine_config {
  refine_strategy strategy = refine_strategy::relaxed;
  int passes = 4;
  double buffer_frac = 0.15;   // of the stream's total pin count
  std::int64_t buffer_pins = 0;       // absolute capacity override when > 0
  std::int64_t degree_threshold = 0;  // relaxed_small cap override when > 0
};

// Holds stream elements awaiting refinement; capacity is measured in pins,
// matching what buffering them actually costs.
class refine_buffer {
 public:
  explicit refine_buffer(std::int64_t capacity_pins);

  std::int64_t capacity() const { return capacity_; }
  std::int64_t pins() const { return pins_; }
  bool empty() const { return elements_.empty(); }
  bool fits(std::size_t degree) const {
    return pins_ + static_cast<std::int64_t>(degree) <= capacity_;
  }

  void add(const stream_element& e);
  void clear();
  const std::vector<stream_element>& elements() const { return elements_; }

 private:
  std::int64_t capacity_;
  std::int64_t pins_ = 0;
  std::vector<stream_element> elements_;
};

// Nets where u is its part's only pin and the net spans several parts;
// evicting u from p drops the cut by exactly this much. Needs counted
// connectivity.
std::int64_t leave_gain(const net_connectivity& conn, const stream_element& e, part_id p);

bool is_bufferable(refine_strategy strategy, std::size_t degree,
                   std::int64_t small_degree_threshold);
bool is_moveable(refine_strategy strategy, std::int64_t gain);

// Undoes a placement: weight, pin counts, assignment.
void remove_vertex(partitioner& part, const stream_element& e);

struct move_event {
  vertex_id vertex;
  part_id from;
  part_id to;
  std::int64_t gain;
  std::int64_t cut_before;
  std::int64_t cut_after;
  std::span<const part_id> parts;  // live view, valid during the callback only
};

struct flush_record {
  std::int64_t stream_position;  // elements consumed when the flush ran
  std::int64_t cut_before;
  std::int64_t cut_after;
  std::int64_t moves;  // relocations, self-moves excluded
  int pass_count;
};

struct refine_hooks {
  std::function<void(const move_event&)> on_move;
  std::function<void(const flush_record&, std::span<const part_id>)> on_flush;
};

// Sweeps the buffer `passes` times; every accepted move immediately updates
// weights and counted connectivity. Returns the flush summary; the buffer
// comes back empty.
flush_record refine_flush(partitioner& part, refine_buffer& buf, const refine_config& cfg,
                          const refine_hooks& hooks, std::int64_t stream_position,
                          bool validate_balance);

struct refine_result {
  run_result stats;  // aux_ints additionally counts pin counters and buffer
  std::int64_t buffer_capacity = 0;
  std::int64_t flushes = 0;
  std::int64_t moves = 0;
  std::int64_t buffered_elements = 0;
  std::int64_t skipped_oversize = 0;
  std::int64_t peak_buffer_pins = 0;
  std::int64_t counted_ints = 0;  // one per connectivity entry, at peak
  std::vector<flush_record> trace;
};

// Streams with the net-to-part algorithm in counted mode, buffering elements
// per the strategy and flushing on overflow and at end-of-stream.
refine_result run_refined(const stream_file& s, const partitioner_config& cfg,
                          const refine_config& rcfg, const run_options& opts = {},
                          const refine_hooks& hooks = {});

}  // namespace shpart
