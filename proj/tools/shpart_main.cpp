// shpart_main.cpp - command-line front end: convert, partition, evaluate, bench
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "shpart/matrix_market.hpp"
#include "shpart/metrics.hpp"
#include "shpart/partitioner.hpp"
#include "shpart/refine.hpp"
#include "shpart/stream.hpp"

using nlohmann::json;
using namespace shpart;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

int usage_error(const std::string& message) {
  std::cerr << "usage error: " << message << '\n';
  return kExitUsage;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write " + path);
  return out;
}

void write_parts_file(const std::string& path, const std::vector<part_id>& parts) {
  auto out = open_output(path);
  for (const part_id p : parts) out << p << '\n';
  if (!out) throw input_error("short write to " + path);
}

std::vector<part_id> read_parts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read " + path);
  std::vector<part_id> parts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = 0;
    long value = 0;
    try {
      value = std::stol(line, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (line.empty() || pos != line.size())
      throw input_error(path + ":" + std::to_string(lineno) + ": expected one part id");
    parts.push_back(static_cast<part_id>(value));
  }
  return parts;
}

bool looks_like_stream(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read " + path);
  char magic[8] = {};
  in.read(magic, sizeof magic);
  return in.gcount() == sizeof magic && std::string(magic, sizeof magic) == "SHPSTRM1";
}

hypergraph load_hypergraph(const std::string& path) {
  if (looks_like_stream(path)) return hypergraph_from_stream(load_stream(path));
  return column_net(parse_matrix_file(path));
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// ---- convert ---------------------------------------------------------------

struct convert_opts {
  std::string matrix_path;
  std::string out_path;
  std::uint64_t seed = 1;
};

int cmd_convert(const convert_opts& o) {
  const auto pattern = parse_matrix_file(o.matrix_path);
  const auto hg = column_net(pattern);
  const auto s = stream_order(hg, o.seed);
  save_stream(s, o.out_path);
  std::cout << "wrote " << o.out_path << ": " << s.num_vertices() << " vertices, "
            << s.num_nets << " nets, " << s.num_pins() << " pins\n";
  return kExitOk;
}

// ---- partition -------------------------------------------------------------

struct partition_opts {
  std::string stream_path;
  std::string out_path;
  std::string stats_path;
  std::string trace_path;
  std::string checkpoint_path;
  std::int64_t checkpoint_every = 0;
  std::string alg = "minmax-n2p";
  std::string refine = "off";
  int parts = 2;
  double beta = 0.1;
  std::uint64_t seed = 1;
  int ell = 5;
  std::uint64_t bf_bits = 20'000'000;
  int bf_hashes = 4;
  int mh_hashes = 4;
  int passes = 4;
  double buffer_frac = 0.15;
  std::int64_t buffer_pins = 0;
  std::int64_t degree_threshold = 0;
  bool verify = false;
  bool validate = false;
};

json stats_json(const partition_opts& o, const run_result& r) {
  return json{
      {"algorithm", o.alg},
      {"K", o.parts},
      {"seed", o.seed},
      {"beta", o.beta},
      {"vertices", r.vertices},
      {"pins", r.pins},
      {"nets_seen", r.nets_seen},
      {"cut", r.cut},
      {"imbalance", r.imbalance},
      {"entries", r.entries},
      {"peak_entries", r.peak_entries},
      {"empty_parts", r.empty_parts},
      {"aux_ints", r.aux_ints},
      {"wall_s", r.wall_seconds},
      {"pins_per_s", r.pins_per_second},
      {"warnings", r.warnings},
  };
}

// Rejects flags that do not belong to the selected algorithm or refinement
// mode, before any input is touched.
int check_partition_flags(const CLI::App* sub, const partition_opts& o, algorithm alg) {
  const auto set = [sub](const char* name) { return sub->count(name) > 0; };
  if (alg != algorithm::minmax_l && set("--ell"))
    return usage_error("--ell applies to --alg minmax-l only");
  if (alg != algorithm::minmax_bf && (set("--bf-bits") || set("--bf-hashes")))
    return usage_error("--bf-bits/--bf-hashes apply to --alg minmax-bf only");
  if (alg != algorithm::minmax_mh && set("--mh-hashes"))
    return usage_error("--mh-hashes applies to --alg minmax-mh only");

  const bool refining = o.refine != "off";
  if (refining && alg != algorithm::minmax_n2p)
    return usage_error("--refine requires --alg minmax-n2p");
  if (!refining) {
    for (const char* name : {"--passes", "--buffer-frac", "--buffer-pins",
                             "--degree-threshold", "--trace"}) {
      if (set(name)) return usage_error(std::string(name) + " requires --refine");
    }
  }
  if (o.refine != "ref-rlx-sv" && set("--degree-threshold"))
    return usage_error("--degree-threshold applies to --refine ref-rlx-sv only");
  if (set("--buffer-frac") && set("--buffer-pins"))
    return usage_error("--buffer-frac and --buffer-pins are mutually exclusive");
  if (set("--checkpoints") != set("--checkpoint-every"))
    return usage_error("--checkpoints and --checkpoint-every go together");
  return kExitOk;
}

int cmd_partition(const CLI::App* sub, const partition_opts& o) {
  const auto alg = algorithm_from_name(o.alg);
  if (!alg) return usage_error("unknown algorithm " + o.alg);
  if (const int rc = check_partition_flags(sub, o, *alg); rc != kExitOk) return rc;

  partitioner_config cfg;
  cfg.alg = *alg;
  cfg.num_parts = o.parts;
  cfg.beta = o.beta;
  cfg.seed = o.seed;
  cfg.ell = o.ell;
  cfg.bf_bits = o.bf_bits;
  cfg.bf_hashes = o.bf_hashes;
  cfg.mh_hashes = o.mh_hashes;

  const stream_file s = load_stream(o.stream_path);

  std::ofstream checkpoint_out;
  run_options opts;
  opts.validate_balance = o.validate;
  if (!o.checkpoint_path.empty()) {
    checkpoint_out = open_output(o.checkpoint_path);
    opts.checkpoint_every = o.checkpoint_every;
    opts.on_checkpoint = [&checkpoint_out](const checkpoint& c) {
      checkpoint_out << json{{"vertices", c.vertices},
                             {"nets_seen", c.nets_seen},
                             {"pins", c.pins},
                             {"cut", c.cut},
                             {"imbalance", c.imbalance},
                             {"entries", c.entries},
                             {"elapsed_seconds", c.elapsed_seconds}}
                            .dump()
                     << '\n';
    };
  }

  json stats;
  std::vector<part_id> parts;
  std::int64_t incremental_cut = 0;
  if (o.refine == "off") {
    const run_result r = run(s, cfg, opts);
    parts = r.parts;
    incremental_cut = r.cut;
    stats = stats_json(o, r);
  } else {
    const auto strategy = refine_strategy_from_name(o.refine);
    if (!strategy) return usage_error("unknown refinement strategy " + o.refine);
    refine_config rcfg;
    rcfg.strategy = *strategy;
    rcfg.passes = o.passes;
    rcfg.buffer_frac = o.buffer_frac;
    rcfg.buffer_pins = o.buffer_pins;
    rcfg.degree_threshold = o.degree_threshold;

    const refine_result rr = run_refined(s, cfg, rcfg, opts);
    parts = rr.stats.parts;
    incremental_cut = rr.stats.cut;
    stats = stats_json(o, rr.stats);
    stats["refine"] = o.refine;
    stats["passes"] = o.passes;
    stats["buffer_capacity"] = rr.buffer_capacity;
    stats["flushes"] = rr.flushes;
    stats["moves"] = rr.moves;
    stats["buffered_elements"] = rr.buffered_elements;
    stats["skipped_oversize"] = rr.skipped_oversize;
    stats["peak_buffer_pins"] = rr.peak_buffer_pins;
    stats["counted_ints"] = rr.counted_ints;

    std::string trace_path = o.trace_path;
    if (trace_path.empty() && !o.stats_path.empty()) trace_path = o.stats_path + ".trace";
    if (!trace_path.empty()) {
      auto trace_out = open_output(trace_path);
      for (const flush_record& rec : rr.trace) {
        trace_out << json{{"stream_position", rec.stream_position},
                          {"cut_before", rec.cut_before},
                          {"cut_after", rec.cut_after},
                          {"moves", rec.moves},
                          {"pass_count", rec.pass_count}}
                         .dump()
                  << '\n';
      }
    }
  }

  // The reported cut is recomputed from scratch; the incremental total has to
  // agree or the bookkeeping is corrupt.
  const hypergraph hg = hypergraph_from_stream(s);
  const std::int64_t oracle = connectivity_cutsize(hg, parts);
  if (oracle != incremental_cut)
    throw invariant_error("incremental cut " + std::to_string(incremental_cut) +
                          " disagrees with recomputed cut " + std::to_string(oracle));
  stats["cut"] = oracle;

  if (o.verify) {
    const std::int64_t entries = stats["entries"].get<std::int64_t>();
    const std::int64_t nets_seen = stats["nets_seen"].get<std::int64_t>();
    if (entries != oracle + nets_seen)
      throw invariant_error("entry total " + std::to_string(entries) +
                            " disagrees with cut + nets seen " +
                            std::to_string(oracle + nets_seen));
    std::vector<std::int64_t> weights(static_cast<std::size_t>(o.parts), 0);
    for (const part_id p : parts) ++weights[static_cast<std::size_t>(p)];
    const auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
    if (*hi - *lo != stats["imbalance"].get<std::int64_t>())
      throw invariant_error("reported imbalance disagrees with the part vector");
    stats["verified"] = true;
  }

  if (!o.out_path.empty()) write_parts_file(o.out_path, parts);
  emit_json(stats, o.stats_path);
  return kExitOk;
}

// ---- evaluate --------------------------------------------------------------

struct evaluate_opts {
  std::string input_path;
  std::string parts_path;
  std::string out_path;
  int parts = 0;
};

int cmd_evaluate(const evaluate_opts& o) {
  const hypergraph hg = load_hypergraph(o.input_path);
  const std::vector<part_id> parts = read_parts_file(o.parts_path);
  const evaluation ev = evaluate_partition(hg, parts, o.parts);

  json hist = json::object();
  for (const auto& [lambda, count] : ev.lambda_histogram)
    hist[std::to_string(lambda)] = count;
  emit_json(json{{"K", o.parts},
                 {"vertices", hg.num_vertices()},
                 {"nets", hg.num_nets()},
                 {"pins", hg.num_pins()},
                 {"cut", ev.cut},
                 {"imbalance", ev.imbalance},
                 {"boundary_vertices", ev.boundary_vertices},
                 {"lambda_histogram", hist},
                 {"part_weights", ev.part_weights}},
            o.out_path);
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct bench_task {
  std::string label;
  int num_parts = 0;
  std::uint64_t seed = 0;
  const stream_file* stream = nullptr;
  partitioner_config cfg;
  std::optional<refine_config> rcfg;
};

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  out += '"';
  return out;
}

std::string bench_row(const bench_task& t) {
  const std::string prefix =
      t.label + ',' + std::to_string(t.num_parts) + ',' + std::to_string(t.seed) + ',';
  try {
    run_result r;
    if (t.rcfg) {
      r = run_refined(*t.stream, t.cfg, *t.rcfg).stats;
    } else {
      r = run(*t.stream, t.cfg);
    }
    return prefix + std::to_string(r.cut) + ',' + std::to_string(r.imbalance) + ',' +
           std::to_string(r.entries) + ',' + std::to_string(r.aux_ints) + ',' +
           format_double("%.6f", r.wall_seconds) + ',' +
           format_double("%.3f", r.pins_per_second);
  } catch (const std::exception& e) {
    // a failed run keeps its identity columns and records the reason in-row
    return prefix + csv_quote(std::string("error: ") + e.what()) + ",,,,,";
  }
}

struct bench_opts {
  std::string manifest_path;
  std::string out_path;
  int jobs = 1;
};

int cmd_bench(const bench_opts& o) {
  std::ifstream in(o.manifest_path);
  if (!in) throw input_error("cannot read " + o.manifest_path);
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw input_error(o.manifest_path + ": " + e.what());
  }
  if (!manifest.is_array()) throw input_error(o.manifest_path + ": expected a JSON array");

  std::vector<std::unique_ptr<stream_file>> streams;
  std::vector<bench_task> tasks;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto entry_context = o.manifest_path + ": entry " + std::to_string(i);
    const json& entry = manifest[i];
    try {
      const auto alg_name = entry.at("algorithm").get<std::string>();
      const auto alg = algorithm_from_name(alg_name);
      if (!alg) throw input_error("unknown algorithm " + alg_name);

      partitioner_config cfg;
      cfg.alg = *alg;
      cfg.num_parts = entry.at("K").get<int>();
      cfg.beta = entry.value("beta", 0.1);
      cfg.ell = entry.value("ell", 5);
      cfg.bf_bits = entry.value("bf_bits", std::uint64_t{20'000'000});
      cfg.bf_hashes = entry.value("bf_hashes", 4);
      cfg.mh_hashes = entry.value("mh_hashes", 4);

      std::optional<refine_config> rcfg;
      std::string label = alg_name;
      const auto refine_name = entry.value("refine", std::string("off"));
      if (refine_name != "off") {
        const auto strategy = refine_strategy_from_name(refine_name);
        if (!strategy) throw input_error("unknown refinement strategy " + refine_name);
        if (*alg != algorithm::minmax_n2p)
          throw input_error("refinement requires algorithm minmax-n2p");
        rcfg.emplace();
        rcfg->strategy = *strategy;
        rcfg->passes = entry.value("passes", 4);
        rcfg->buffer_frac = entry.value("buffer_frac", 0.15);
        rcfg->buffer_pins = entry.value("buffer_pins", std::int64_t{0});
        rcfg->degree_threshold = entry.value("degree_threshold", std::int64_t{0});
        label += "+" + refine_name;
      }

      streams.push_back(std::make_unique<stream_file>(
          load_stream(entry.at("stream").get<std::string>())));
      const stream_file* stream = streams.back().get();

      for (const json& seed : entry.at("seeds")) {
        bench_task t;
        t.label = label;
        t.num_parts = cfg.num_parts;
        t.seed = seed.get<std::uint64_t>();
        t.stream = stream;
        t.cfg = cfg;
        t.cfg.seed = t.seed;
        t.rcfg = rcfg;
        tasks.push_back(std::move(t));
      }
    } catch (const json::exception& e) {
      throw input_error(entry_context + ": " + e.what());
    } catch (const input_error& e) {
      throw input_error(entry_context + ": " + e.what());
    }
  }

  // every task owns disjoint state, so rows can run on parallel workers;
  // output order stays the manifest order regardless
  std::vector<std::string> rows(tasks.size());
  const int workers = std::max(1, std::min<int>(o.jobs, static_cast<int>(tasks.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) rows[i] = bench_row(tasks[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&tasks, &rows, &next] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          rows[i] = bench_row(tasks[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (!o.out_path.empty()) {
    file_out = open_output(o.out_path);
    out = &file_out;
  }
  *out << "algorithm,K,seed,cut,imbalance,entries,aux_ints,wall_s,pins_per_s\n";
  for (const auto& row : rows) *out << row << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming hypergraph partitioner"};
  app.require_subcommand(1);

  convert_opts conv;
  auto* convert = app.add_subcommand("convert", "Matrix Market file to a binary vertex stream");
  convert->add_option("matrix", conv.matrix_path, "Matrix Market coordinate file")->required();
  convert->add_option("output", conv.out_path, "stream file to write")->required();
  convert->add_option("--seed", conv.seed, "vertex order seed, 0 keeps natural order")
      ->capture_default_str();

  partition_opts part;
  auto* partition = app.add_subcommand("partition", "stream a file through one partitioner");
  partition->add_option("stream", part.stream_path, "stream file to partition")->required();
  partition->add_option("--alg", part.alg, "partitioning algorithm")
      ->check(CLI::IsMember({"random", "minmax", "minmax-n2p", "minmax-l", "minmax-bf",
                             "minmax-mh"}))
      ->capture_default_str();
  partition->add_option("--parts", part.parts, "number of parts K")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()))
      ->capture_default_str();
  partition->add_option("--beta", part.beta, "allowed imbalance ratio")
      ->check(CLI::Range(0.0, 1e18))
      ->capture_default_str();
  partition->add_option("--seed", part.seed, "rng seed")->capture_default_str();
  partition->add_option("--ell", part.ell, "slots per net (minmax-l)")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()))
      ->capture_default_str();
  partition->add_option("--bf-bits", part.bf_bits, "Bloom filter bits (minmax-bf)")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  partition->add_option("--bf-hashes", part.bf_hashes, "Bloom filter hash count (minmax-bf)")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  partition->add_option("--mh-hashes", part.mh_hashes, "MinHash function count (minmax-mh)")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  partition->add_option("--refine", part.refine, "refinement strategy")
      ->check(CLI::IsMember({"off", "ref", "ref-rlx", "ref-rlx-sv"}))
      ->capture_default_str();
  partition->add_option("--passes", part.passes, "sweeps per buffer flush")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()))
      ->capture_default_str();
  partition->add_option("--buffer-frac", part.buffer_frac,
                        "buffer capacity as a fraction of the stream's pins")
      ->check(CLI::Range(1e-300, 1.0))
      ->capture_default_str();
  partition->add_option("--buffer-pins", part.buffer_pins, "absolute buffer capacity in pins")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
  partition->add_option("--degree-threshold", part.degree_threshold,
                        "small-degree cap (ref-rlx-sv); 0 tracks the running mean")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
  partition->add_option("--out", part.out_path, "part vector file, one id per line");
  partition->add_option("--stats", part.stats_path, "stats JSON file (default: stdout)");
  partition->add_option("--trace", part.trace_path,
                        "flush-trace JSONL file (default: <stats>.trace when refining)");
  partition->add_option("--checkpoints", part.checkpoint_path, "checkpoint JSONL file");
  partition->add_option("--checkpoint-every", part.checkpoint_every,
                        "elements between checkpoints")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
  partition->add_flag("--verify", part.verify,
                      "re-derive cut, entry total, and imbalance and cross-check");
  partition->add_flag("--validate", part.validate, "assert the balance bound at every step");

  evaluate_opts eval;
  auto* evaluate = app.add_subcommand("evaluate", "score a part vector against its hypergraph");
  evaluate->add_option("input", eval.input_path, "stream file or Matrix Market file")
      ->required();
  evaluate->add_option("partvector", eval.parts_path, "part vector file")->required();
  evaluate->add_option("--parts", eval.parts, "number of parts K")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()))
      ->required();
  evaluate->add_option("--out", eval.out_path, "metrics JSON file (default: stdout)");

  bench_opts bench;
  auto* bench_cmd = app.add_subcommand("bench", "run a manifest of configurations to CSV");
  bench_cmd->add_option("manifest", bench.manifest_path, "JSON manifest of runs")->required();
  bench_cmd->add_option("--out", bench.out_path, "CSV file (default: stdout)");
  bench_cmd->add_option("--jobs", bench.jobs, "parallel workers")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (convert->parsed()) return cmd_convert(conv);
    if (partition->parsed()) return cmd_partition(partition, part);
    if (evaluate->parsed()) return cmd_evaluate(eval);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    return usage_error("no subcommand given");
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}
