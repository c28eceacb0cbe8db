#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "tmotif/analytics.hpp"
#include "tmotif/cli.hpp"
#include "tmotif/io.hpp"
#include "tmotif/motif_engine.hpp"
#include "tmotif/null_models.hpp"
#include "tmotif/oracle.hpp"
#include "tmotif/temporal_analysis.hpp"

namespace py = pybind11;
using namespace tmotif;

namespace {

using CountArray = py::array_t<Count>;
using DoubleArray = py::array_t<double>;

CountArray grid(const MotifMatrix& m) {
  CountArray a({kGridSize, kGridSize});
  std::copy(m.counts.begin(), m.counts.end(), a.mutable_data());
  return a;
}

CountArray grids(const std::vector<MotifMatrix>& ms) {
  CountArray a({ms.size(), kGridSize, kGridSize});
  Count* out = a.mutable_data();
  for (const auto& m : ms) out = std::copy(m.counts.begin(), m.counts.end(), out);
  return a;
}

DoubleArray grid(const std::array<double, kGlobalCells>& v) {
  DoubleArray a({kGridSize, kGridSize});
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

CountArray locals(const LocalCounts& lc) {
  CountArray a({lc.num_nodes(), kLocalSlots});
  Count* out = a.mutable_data();
  for (const auto& v : lc.per_node) out = std::copy(v.begin(), v.end(), out);
  return a;
}

EdgeList from_arrays(py::array_t<std::int64_t, py::array::c_style | py::array::forcecast> src,
                     py::array_t<std::int64_t, py::array::c_style | py::array::forcecast> dst,
                     py::array_t<std::int64_t, py::array::c_style | py::array::forcecast> t,
                     std::optional<py::array_t<double, py::array::c_style | py::array::forcecast>> w) {
  const auto n = static_cast<std::size_t>(src.size());
  if (static_cast<std::size_t>(dst.size()) != n || static_cast<std::size_t>(t.size()) != n ||
      (w && static_cast<std::size_t>(w->size()) != n))
    throw std::invalid_argument("src, dst, t and weight must have equal length");
  EdgeListBuilder b;
  const auto* s = src.data();
  const auto* d = dst.data();
  const auto* ts = t.data();
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<double> wi;
    if (w) wi = w->data()[i];
    b.add(std::to_string(s[i]), std::to_string(d[i]), ts[i], wi);
  }
  return std::move(b).finish();
}

EdgeList read_edges(const std::string& path, const std::string& format, const std::optional<std::string>& schema,
                    bool strict, char delimiter) {
  ParseOptions opts;
  opts.format = format == "jsonl" ? InputFormat::Jsonl : InputFormat::Csv;
  if (format != "csv" && format != "jsonl") throw std::invalid_argument("format must be csv or jsonl");
  opts.strict = strict;
  opts.delimiter = delimiter;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Schema s;
  if (schema) s = Schema::parse(*schema);
  return parse_edges(in, s, opts);
}

py::dict ratio_dict(const RatioMatrix& r) {
  py::dict d;
  d["delta"] = r.delta;
  d["realizations"] = r.realizations;
  d["real"] = grid(r.real);
  d["ratio"] = grid(r.ratio);
  d["null_mean"] = grid(r.null_mean);
  d["null_std"] = grid(r.null_std);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal 3-edge motif counting";
  m.attr("__version__") = kVersion;

  py::class_<EdgeList>(m, "Edges")
      .def_property_readonly("num_edges", &EdgeList::size)
      .def_property_readonly("num_nodes", [](const EdgeList& e) { return e.nodes.size(); })
      .def_property_readonly("node_names", [](const EdgeList& e) { return e.nodes.names(); })
      .def_property_readonly("has_weights", [](const EdgeList& e) { return e.has_weights; })
      .def("node_id", [](const EdgeList& e, const std::string& name) { return e.nodes.find(name); })
      .def("arrays",
           [](const EdgeList& e) {
             py::array_t<NodeId> src(e.size()), dst(e.size());
             py::array_t<Timestamp> t(e.size());
             for (std::size_t i = 0; i < e.size(); ++i) {
               src.mutable_data()[i] = e.edges[i].src;
               dst.mutable_data()[i] = e.edges[i].dst;
               t.mutable_data()[i] = e.edges[i].t;
             }
             py::dict d;
             d["src"] = src;
             d["dst"] = dst;
             d["t"] = t;
             return d;
           },
           "Edges in (t, seq) order as numpy arrays of dense node ids and timestamps.")
      .def("__len__", &EdgeList::size);

  m.def("read_edges", &read_edges, py::arg("path"), py::arg("format") = "csv", py::arg("schema") = std::nullopt,
        py::arg("strict") = false, py::arg("delimiter") = ',');
  m.def("parse_edges",
        [](const std::string& text, const std::optional<std::string>& schema, bool strict) {
          ParseOptions opts;
          opts.strict = strict;
          return parse_edges(std::string_view(text), schema ? Schema::parse(*schema) : Schema{}, opts);
        },
        py::arg("text"), py::arg("schema") = std::nullopt, py::arg("strict") = false);
  m.def("from_arrays", &from_arrays, py::arg("src"), py::arg("dst"), py::arg("t"), py::arg("weight") = std::nullopt,
        "Node ids are interned by their decimal text, in order of first appearance.");

  m.def("count_global",
        [](const EdgeList& e, Seconds delta, int threads) {
          MotifMatrix r;
          {
            py::gil_scoped_release release;
            r = count_global(TemporalGraph::build(e), delta, threads);
          }
          return grid(r);
        },
        py::arg("edges"), py::arg("delta"), py::arg("threads") = 0, "6x6 uint64 count matrix, rows and columns 1-based M_ij at [i-1, j-1].");
  m.def("count_local",
        [](const EdgeList& e, Seconds delta, int threads) {
          LocalCounts lc;
          {
            py::gil_scoped_release release;
            lc = count_local(TemporalGraph::build(e), delta, threads);
          }
          return locals(lc);
        },
        py::arg("edges"), py::arg("delta"), py::arg("threads") = 0, "(num_nodes, 40) uint64 per-node counts.");
  m.def("count_global_multi",
        [](const EdgeList& e, std::vector<Seconds> deltas, int threads) {
          std::vector<MotifMatrix> r;
          {
            py::gil_scoped_release release;
            r = count_global_multi(TemporalGraph::build(e), deltas, threads);
          }
          return grids(r);
        },
        py::arg("edges"), py::arg("deltas"), py::arg("threads") = 0);
  m.def("brute_force_count",
        [](const EdgeList& e, Seconds delta, std::size_t guard) {
          auto r = brute_force_count(TemporalGraph::build(e), delta, guard);
          return py::make_tuple(grid(r.global), locals(r.local));
        },
        py::arg("edges"), py::arg("delta"), py::arg("guard") = kDefaultOracleGuard);

  m.def("shuffle_timestamps", &shuffle_timestamps, py::arg("edges"), py::arg("seed"));
  m.def("shuffle_intra_block", &shuffle_intra_block, py::arg("edges"), py::arg("seed"));
  m.def("null_ratio",
        [](const EdgeList& e, Seconds delta, std::uint64_t seed, std::size_t realizations, int threads) {
          const ShuffleConfig cfg{seed, realizations};
          cfg.validate();
          MotifMatrix real;
          std::vector<MotifMatrix> nulls;
          {
            py::gil_scoped_release release;
            real = count_global(TemporalGraph::build(e), delta, threads);
            for (auto& r : null_counts(e, cfg, {{delta}, false, threads})) nulls.push_back(r.global[0]);
          }
          return ratio_dict(null_ratio(real, nulls));
        },
        py::arg("edges"), py::arg("delta"), py::arg("seed") = 0, py::arg("realizations") = 10, py::arg("threads") = 0);
  m.def("delta_sweep",
        [](const EdgeList& e, std::vector<Seconds> grid_, int threads) {
          DeltaSweepSeries s;
          {
            py::gil_scoped_release release;
            s = delta_sweep(e, grid_, std::nullopt, threads);
          }
          return grids(s.cumulative);
        },
        py::arg("edges"), py::arg("grid"), py::arg("threads") = 0, "Cumulative (len(grid), 6, 6) counts.");

  m.def("category_totals",
        [](py::array_t<Count, py::array::c_style | py::array::forcecast> g) {
          if (g.size() != static_cast<py::ssize_t>(kGlobalCells)) throw std::invalid_argument("expected 36 counts");
          MotifMatrix mm;
          std::copy(g.data(), g.data() + kGlobalCells, mm.counts.begin());
          py::dict d;
          const auto t = category_totals(mm);
          for (auto c : kAllCategories) d[py::str(std::string(category_name(c)))] = t[static_cast<std::size_t>(c)];
          return d;
        },
        py::arg("counts"));
  m.def("slot_label", &io::slot_label, py::arg("slot"));

  m.def("run_cli",
        [](std::vector<std::string> args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a tmotif subcommand; returns (exit_code, stdout, stderr).");
}
