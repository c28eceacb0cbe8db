#include "tmotif/cli.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tmotif/analytics.hpp"
#include "tmotif/graph.hpp"
#include "tmotif/ingest.hpp"
#include "tmotif/io.hpp"
#include "tmotif/motif_engine.hpp"
#include "tmotif/null_models.hpp"
#include "tmotif/oracle.hpp"
#include "tmotif/parallel.hpp"
#include "tmotif/temporal_analysis.hpp"

namespace tmotif {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> inputs;
  std::string format = "csv";
  std::string schema = "src=0,dst=1,time=2";
  std::string delimiter = ",";
  std::optional<Seconds> delta;
  std::string deltas;
  std::string delta_range;
  std::string window = "monthly";
  std::uint64_t seed = 0;
  std::size_t realizations = 10;
  std::string out = ".";
  bool strict = false;
  int threads = 0;
  std::size_t oracle_guard = kDefaultOracleGuard;
  bool brute_force = false;
  bool attribute_boundary = false;
  std::size_t top_k = 10;
};

std::vector<Seconds> parse_delta_list(const std::string& text) {
  std::vector<Seconds> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Seconds v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || p != item.data() + item.size()) {
      throw UsageError("bad delta value: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--deltas is empty");
  return out;
}

std::vector<Seconds> parse_delta_range(const std::string& text) {
  std::vector<Seconds> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    Seconds v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || p != item.data() + item.size()) {
      throw UsageError("bad --delta-range field: '" + item + "'");
    }
    parts.push_back(v);
  }
  if (parts.size() != 3) throw UsageError("--delta-range must be START:STOP:STEP");
  try {
    return delta_range(parts[0], parts[1], parts[2]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

class Run {
 public:
  Run(std::string command, Options opt) : command_(std::move(command)), opt_(std::move(opt)) {}

  int execute();

 private:
  using Clock = std::chrono::steady_clock;

  template <typename F>
  auto timed(const std::string& stage, F&& f) {
    const auto start = Clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      timings_[stage] += std::chrono::duration<double>(Clock::now() - start).count();
    } else {
      auto r = f();
      timings_[stage] += std::chrono::duration<double>(Clock::now() - start).count();
      return r;
    }
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = fs::path(opt_.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    body(f);
    if (!f) throw std::runtime_error("error writing " + path.string());
    outputs_.push_back(name);
  }
  void write_json(const std::string& name, const json& j) {
    write(name, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  }

  EdgeList load();
  const TemporalGraph& graph();
  Seconds single_delta();
  std::vector<Seconds> delta_grid(bool sweep_default);
  ShuffleConfig shuffle_config(bool allow_zero);
  void note_counts(const CountTimings& t);
  LocalCounts local_counts(Seconds delta);

  void validate();
  void count_global_cmd();
  void count_local_cmd();
  void multi_delta();
  void sweep();
  void window();
  void null_ratio_cmd();
  void intra_block();
  void ccdf_cmd();
  void signatures();
  void balances_cmd();
  void scatter();

  void write_manifest();

  std::string command_;
  Options opt_;
  int threads_ = 1;
  std::optional<EdgeList> edges_;
  std::optional<TemporalGraph> graph_;
  json params_ = json::object();
  std::vector<std::string> outputs_;
  std::map<std::string, double> timings_;
  CountTimings count_timings_;
};

EdgeList Run::load() {
  Schema schema;
  try {
    schema = Schema::parse(opt_.schema);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (opt_.inputs.empty()) throw UsageError("at least one --input is required");
  if (opt_.delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
  ParseOptions po;
  po.format = opt_.format == "jsonl" ? InputFormat::Jsonl : InputFormat::Csv;
  po.delimiter = opt_.delimiter[0];
  po.strict = opt_.strict;
  return timed("ingest", [&] {
    EdgeListBuilder b(schema, po);
    for (const auto& path : opt_.inputs) {
      std::ifstream f(path, std::ios::binary);
      if (!f) throw IngestError("cannot open input " + path, 0);
      try {
        b.add_stream(f);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    return std::move(b).finish();
  });
}

const TemporalGraph& Run::graph() {
  if (!graph_) graph_ = timed("graph_build", [&] { return TemporalGraph::build(*edges_); });
  return *graph_;
}

Seconds Run::single_delta() {
  if (!opt_.deltas.empty() || !opt_.delta_range.empty()) {
    throw UsageError(command_ + " takes a single --delta");
  }
  if (!opt_.delta) throw UsageError(command_ + " requires --delta");
  if (*opt_.delta < 0) throw UsageError("--delta must be non-negative");
  params_["delta"] = *opt_.delta;
  return *opt_.delta;
}

std::vector<Seconds> Run::delta_grid(bool sweep_default) {
  const int given = (opt_.delta ? 1 : 0) + (opt_.deltas.empty() ? 0 : 1) + (opt_.delta_range.empty() ? 0 : 1);
  if (given > 1) throw UsageError("--delta, --deltas and --delta-range are mutually exclusive");
  std::vector<Seconds> grid;
  if (opt_.delta) {
    grid = {*opt_.delta};
  } else if (!opt_.deltas.empty()) {
    grid = parse_delta_list(opt_.deltas);
  } else if (!opt_.delta_range.empty()) {
    grid = parse_delta_range(opt_.delta_range);
  } else if (sweep_default) {
    grid = default_sweep_grid();
  } else {
    throw UsageError(command_ + " requires --deltas or --delta-range");
  }
  try {
    check_deltas(grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  params_["deltas"] = grid;
  return grid;
}

ShuffleConfig Run::shuffle_config(bool allow_zero) {
  if (opt_.realizations == 0 && !allow_zero) throw UsageError(command_ + " needs --realizations >= 1");
  params_["seed"] = opt_.seed;
  params_["realizations"] = opt_.realizations;
  return ShuffleConfig{opt_.seed, opt_.realizations};
}

void Run::note_counts(const CountTimings& t) {
  count_timings_.triangle_enumeration += t.triangle_enumeration;
  count_timings_.two_node += t.two_node;
  count_timings_.stars += t.stars;
  count_timings_.triangles += t.triangles;
  count_timings_.triangle_enumerations += t.triangle_enumerations;
  count_timings_.static_triangles = t.static_triangles;
}

LocalCounts Run::local_counts(Seconds delta) {
  if (opt_.brute_force) {
    auto r = timed("count", [&] { return brute_force_count(graph(), delta, opt_.oracle_guard); });
    return std::move(r.local);
  }
  auto r = timed("count", [&] { return count_motifs(graph(), {{delta}, true, threads_}); });
  note_counts(r.timings);
  return std::move(r.local.front());
}

void Run::validate() {
  write_json("validation.json", io::validation_json(*edges_));
}

void Run::count_global_cmd() {
  const Seconds delta = single_delta();
  MotifMatrix m;
  if (opt_.brute_force) {
    m = timed("count", [&] { return brute_force_count(graph(), delta, opt_.oracle_guard).global; });
  } else {
    auto r = timed("count", [&] { return count_motifs(graph(), {{delta}, false, threads_}); });
    note_counts(r.timings);
    m = r.global.front();
  }
  timed("write", [&] {
    write("motif_matrix.csv", [&](std::ostream& o) { io::write_motif_matrix_csv(o, m); });
    write_json("motif_matrix.json", io::motif_matrix_json(m));
    write("motif_legend.csv", [&](std::ostream& o) { io::write_legend_csv(o); });
  });
}

void Run::count_local_cmd() {
  const auto lc = local_counts(single_delta());
  timed("write", [&] {
    write("local_motifs.csv", [&](std::ostream& o) { io::write_local_csv(o, lc, edges_->nodes); });
    write("motif_legend.csv", [&](std::ostream& o) { io::write_legend_csv(o); });
  });
}

void Run::multi_delta() {
  const auto grid = delta_grid(false);
  auto r = timed("count", [&] { return count_motifs(graph(), {grid, false, threads_}); });
  note_counts(r.timings);
  timed("write", [&] { write("multi_delta.csv", [&](std::ostream& o) { io::write_multi_delta_csv(o, r.global); }); });
}

void Run::sweep() {
  const auto grid = delta_grid(true);
  const auto cfg = shuffle_config(true);
  std::optional<ShuffleConfig> nulls;
  if (cfg.realizations > 0) nulls = cfg;
  const auto s = timed("count", [&] { return delta_sweep(*edges_, grid, nulls, threads_); });
  note_counts(s.timings);
  timed("write", [&] {
    write("delta_sweep.csv", [&](std::ostream& o) { io::write_sweep_csv(o, s); });
    write("delta_sweep_categories.csv", [&](std::ostream& o) { io::write_sweep_categories_csv(o, s); });
  });
}

void Run::window() {
  const Seconds delta = single_delta();
  WindowSpec spec;
  try {
    spec = WindowSpec::parse(opt_.window);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  params_["window"] = spec.to_string();
  params_["attribute_boundary"] = opt_.attribute_boundary;
  const auto series =
      timed("count", [&] { return windowed_counts(*edges_, spec, delta, threads_, opt_.attribute_boundary); });
  timed("write", [&] { write("window_series.csv", [&](std::ostream& o) { io::write_window_csv(o, series); }); });
}

void Run::null_ratio_cmd() {
  const Seconds delta = single_delta();
  const auto cfg = shuffle_config(false);
  auto real = timed("count", [&] { return count_motifs(graph(), {{delta}, false, threads_}); });
  note_counts(real.timings);
  const auto nulls = timed("null_models", [&] { return null_counts(*edges_, cfg, {{delta}, false, threads_}); });
  std::vector<MotifMatrix> null_global;
  for (const auto& n : nulls) null_global.push_back(n.global.front());
  const auto ratio = null_ratio(real.global.front(), null_global);
  timed("write", [&] {
    write("null_ratio.csv", [&](std::ostream& o) { io::write_null_ratio_csv(o, ratio); });
    write_json("null_ratio.json", io::null_ratio_json(ratio, cfg.seed));
  });
}

void Run::intra_block() {
  const Seconds delta = single_delta();
  const auto cfg = shuffle_config(false);
  const auto rep = timed("null_models", [&] { return intra_block_deviation(*edges_, delta, cfg, threads_); });
  timed("write", [&] {
    write("intra_block.csv", [&](std::ostream& o) { io::write_intra_block_csv(o, rep); });
    write_json("intra_block.json", io::intra_block_json(rep, cfg.seed));
  });
}

void Run::ccdf_cmd() {
  const auto lc = local_counts(single_delta());
  timed("write", [&] { write("ccdf.csv", [&](std::ostream& o) { io::write_ccdf_csv(o, lc); }); });
}

void Run::signatures() {
  const Seconds delta = single_delta();
  const auto cfg = shuffle_config(false);
  if (opt_.top_k == 0) throw UsageError("--top-k must be at least 1");
  params_["top_k"] = opt_.top_k;
  const auto lc = local_counts(delta);
  const auto nulls = timed("null_models", [&] { return null_counts(*edges_, cfg, {{delta}, true, threads_}); });
  std::vector<LocalCounts> null_locals;
  for (const auto& n : nulls) null_locals.push_back(n.local.front());
  const auto mean = mean_local_counts(null_locals);
  const auto sig = node_signatures(lc, mean, opt_.top_k);
  timed("write", [&] {
    write("signatures.csv", [&](std::ostream& o) { io::write_signatures_csv(o, sig, edges_->nodes); });
    write_json("signatures.json",
               io::signatures_json(sig, edges_->nodes, opt_.top_k, cfg.realizations, cfg.seed, delta));
  });
}

void Run::balances_cmd() {
  const auto b = balances(*edges_);
  params_["missing_weights"] = b.missing_weights;
  timed("write", [&] { write("balances.csv", [&](std::ostream& o) { io::write_balances_csv(o, b, edges_->nodes); }); });
}

void Run::scatter() {
  const auto lc = local_counts(single_delta());
  const auto b = balances(*edges_);
  params_["missing_weights"] = b.missing_weights;
  const auto rows = scatter_data(lc, b);
  timed("write", [&] { write("scatter.csv", [&](std::ostream& o) { io::write_scatter_csv(o, rows, edges_->nodes); }); });
}

void Run::write_manifest() {
  json timings = json::object();
  for (const auto& [k, v] : timings_) timings[k] = v;
  timings["triangle_enumeration"] = count_timings_.triangle_enumeration;
  timings["two_node"] = count_timings_.two_node;
  timings["stars"] = count_timings_.stars;
  timings["triangles"] = count_timings_.triangles;
  const double counting = count_timings_.total();
  json m = {{"tool", "tmotif"},
            {"version", kVersion},
            {"command", command_},
            {"inputs", opt_.inputs},
            {"format", opt_.format},
            {"schema", opt_.schema},
            {"strict", opt_.strict},
            {"threads", threads_},
            {"parameters", params_},
            {"outputs", outputs_},
            {"triangle_enumerations", count_timings_.triangle_enumerations},
            {"static_triangles", count_timings_.static_triangles},
            {"triangle_enumeration_share", counting > 0 ? count_timings_.triangle_enumeration / counting : 0.0},
            {"timings_seconds", timings}};
  outputs_.push_back("manifest.json");
  m["outputs"] = outputs_;
  const fs::path path = fs::path(opt_.out) / "manifest.json";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << m.dump(2) << '\n';
}

int Run::execute() {
  threads_ = resolve_threads(opt_.threads);
  if (opt_.format != "csv" && opt_.format != "jsonl") throw UsageError("--format must be csv or jsonl");
  std::error_code ec;
  fs::create_directories(opt_.out, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + opt_.out + ": " + ec.message());
  edges_ = load();

  static const std::map<std::string, void (Run::*)()> dispatch{
      {"validate", &Run::validate},
      {"count-global", &Run::count_global_cmd},
      {"count-local", &Run::count_local_cmd},
      {"multi-delta", &Run::multi_delta},
      {"sweep", &Run::sweep},
      {"window", &Run::window},
      {"null-ratio", &Run::null_ratio_cmd},
      {"intra-block-check", &Run::intra_block},
      {"ccdf", &Run::ccdf_cmd},
      {"signatures", &Run::signatures},
      {"balances", &Run::balances_cmd},
      {"scatter", &Run::scatter},
  };
  (this->*dispatch.at(command_))();
  timed("write", [&] { write_manifest(); });
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.inputs, "Input edge file (repeatable)")->required()->take_all();
  sub->add_option("--format", o.format, "Input format")->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--schema", o.schema, "src=COL,dst=COL,time=COL[,weight=COL][,block=COL]");
  sub->add_option("--delimiter", o.delimiter, "CSV field delimiter");
  sub->add_option("--delta", o.delta, "Time window in seconds");
  sub->add_option("--deltas", o.deltas, "Comma-separated ascending deltas");
  sub->add_option("--delta-range", o.delta_range, "START:STOP:STEP in seconds, STOP inclusive");
  sub->add_option("--window", o.window, "monthly or a window width in seconds");
  sub->add_option("--seed", o.seed, "Null model seed");
  sub->add_option("--realizations", o.realizations, "Null model realizations");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_flag("--strict", o.strict, "Fail on the first malformed row");
  sub->add_option("--threads", o.threads, "Worker threads (default: $MOTIF_THREADS or all cores)");
  sub->add_option("--oracle-guard", o.oracle_guard, "Edge limit for --brute-force");
  sub->add_flag("--brute-force", o.brute_force, "Count with the O(m^3) reference enumeration");
  sub->add_flag("--attribute-boundary", o.attribute_boundary,
                "window: credit boundary motifs to the window of their first edge");
  sub->add_option("--top-k", o.top_k, "signatures: number of nodes");
}

void report(std::ostream& err, const char* kind, const std::string& message, int code) {
  json rec = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  err << rec.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal motif analysis of transaction graphs", "tmotif"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"validate", "Check input parsing and time order"},
      {"count-global", "Global 6x6 motif counts"},
      {"count-local", "Per-node 40-slot motif counts"},
      {"multi-delta", "Global counts for several deltas in one pass"},
      {"sweep", "Cumulative counts and increments over a delta grid"},
      {"window", "Motif counts per calendar month or fixed window"},
      {"null-ratio", "Real over timestamp-shuffled counts"},
      {"intra-block-check", "Count deviation under random intra-block order"},
      {"ccdf", "CCDF of per-node motif totals by category"},
      {"signatures", "Top-k node motif signatures against the null model"},
      {"balances", "Per-node inflow, outflow and balance"},
      {"scatter", "Per-node transactions, motif total and balance"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), opt);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  try {
    return Run(command, opt).execute();
  } catch (const UsageError& e) {
    report(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  } catch (const IngestError& e) {
    report(err, "input", e.what(), kExitInput);
    return kExitInput;
  } catch (const OracleGuardError& e) {
    report(err, "oracle_guard", e.what(), kExitGuard);
    return kExitGuard;
  } catch (const std::exception& e) {
    report(err, "failure", e.what(), kExitFailure);
    return kExitFailure;
  }
}

}  // namespace tmotif
