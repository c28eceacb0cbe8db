#include "tmotif/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tmotif/format.hpp"

namespace tmotif {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Splits one delimited line; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

struct ParsedTime {
  Timestamp t = 0;
  bool truncated = false;
};

std::optional<ParsedTime> parse_time(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  Timestamp t = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
  if (ec == std::errc{} && p == s.data() + s.size()) return ParsedTime{t, false};
  double d = 0;
  auto [pd, ecd] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ecd != std::errc{} || pd != s.data() + s.size() || !std::isfinite(d)) return std::nullopt;
  const double f = std::floor(d);
  if (f < static_cast<double>(std::numeric_limits<Timestamp>::min()) ||
      f > static_cast<double>(std::numeric_limits<Timestamp>::max())) {
    return std::nullopt;
  }
  return ParsedTime{static_cast<Timestamp>(f), f != d};
}

// nullopt: malformed. Inner nullopt: absent.
std::optional<std::optional<double>> parse_weight(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::optional<double>{};
  double d = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(d) || d < 0) return std::nullopt;
  return std::optional<double>{d};
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

ColumnRef parse_column(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw std::invalid_argument("empty column reference in schema");
  if (all_digits(s)) return std::size_t(std::stoull(std::string(s)));
  return std::string(s);
}

std::string column_to_string(const ColumnRef& c) {
  if (const auto* idx = std::get_if<std::size_t>(&c)) return std::to_string(*idx);
  return std::get<std::string>(c);
}

}  // namespace

NodeId NodeTable::intern(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  if (names_.size() >= static_cast<std::size_t>(kInvalidNode)) throw std::length_error("too many nodes");
  const auto id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<NodeId> NodeTable::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

Schema Schema::parse(std::string_view spec) {
  Schema s;
  bool have_src = false, have_dst = false, have_time = false;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    auto item = trim(spec.substr(pos, comma - pos));
    pos = comma + 1;
    if (item.empty()) {
      if (comma == spec.size()) break;
      continue;
    }
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("schema entry without '=': " + std::string(item));
    auto key = trim(item.substr(0, eq));
    auto col = parse_column(item.substr(eq + 1));
    if (key == "src") {
      s.src = col;
      have_src = true;
    } else if (key == "dst") {
      s.dst = col;
      have_dst = true;
    } else if (key == "time") {
      s.time = col;
      have_time = true;
    } else if (key == "weight") {
      s.weight = col;
    } else if (key == "block") {
      s.block = col;
    } else {
      throw std::invalid_argument("unknown schema key: " + std::string(key));
    }
    if (comma == spec.size()) break;
  }
  if (!have_src || !have_dst || !have_time) {
    throw std::invalid_argument("schema must name src, dst and time columns");
  }
  return s;
}

bool Schema::uses_names() const {
  auto named = [](const ColumnRef& c) { return std::holds_alternative<std::string>(c); };
  return named(src) || named(dst) || named(time) || (weight && named(*weight)) || (block && named(*block));
}

std::string Schema::to_string() const {
  std::string s = "src=" + column_to_string(src) + ",dst=" + column_to_string(dst) +
                  ",time=" + column_to_string(time);
  if (weight) s += ",weight=" + column_to_string(*weight);
  if (block) s += ",block=" + column_to_string(*block);
  return s;
}

EdgeListBuilder::EdgeListBuilder(Schema schema, ParseOptions options)
    : schema_(std::move(schema)), options_(options) {
  out_.has_weights = schema_.weight.has_value();
  out_.has_block_ids = schema_.block.has_value();
}

void EdgeListBuilder::malformed(const std::string& why) {
  if (options_.strict) {
    throw IngestError("malformed row " + std::to_string(next_row_) + ": " + why, next_row_);
  }
  ++out_.stats.malformed;
}

void EdgeListBuilder::add(std::string_view src, std::string_view dst, Timestamp t,
                          std::optional<double> w, std::optional<std::int64_t> block) {
  ++out_.stats.rows;
  const std::uint64_t seq = next_row_++;
  if (src == dst) {
    ++out_.stats.dropped_self_loops;
    return;
  }
  TemporalEdge e;
  e.src = out_.nodes.intern(src);
  e.dst = out_.nodes.intern(dst);
  e.t = t;
  e.seq = seq;
  e.w = w;
  e.block = block;
  if (out_.has_weights && !w) ++out_.stats.missing_weights;
  if (w) out_.has_weights = true;
  if (block) out_.has_block_ids = true;
  out_.edges.push_back(e);
  ++out_.stats.parsed;
}

void EdgeListBuilder::add_stream(std::istream& in) {
  if (!in) throw IngestError("unreadable input stream", next_row_);
  if (options_.format == InputFormat::Csv) {
    add_csv(in);
  } else {
    add_jsonl(in);
  }
  if (in.bad()) throw IngestError("error while reading input stream", next_row_);
}

void EdgeListBuilder::add_csv(std::istream& in) {
  std::size_t src_col = 0, dst_col = 0, time_col = 0;
  std::optional<std::size_t> weight_col, block_col;
  const bool named = schema_.uses_names();

  auto resolve = [](const ColumnRef& c, const std::vector<std::string>* header) -> std::size_t {
    if (const auto* idx = std::get_if<std::size_t>(&c)) return *idx;
    const auto& name = std::get<std::string>(c);
    for (std::size_t i = 0; i < header->size(); ++i) {
      if (trim((*header)[i]) == name) return i;
    }
    throw IngestError("missing column in header: " + name, 0);
  };
  auto resolve_all = [&](const std::vector<std::string>* header) {
    src_col = resolve(schema_.src, header);
    dst_col = resolve(schema_.dst, header);
    time_col = resolve(schema_.time, header);
    if (schema_.weight) weight_col = resolve(*schema_.weight, header);
    if (schema_.block) block_col = resolve(*schema_.block, header);
  };
  if (!named) resolve_all(nullptr);

  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split_fields(view, options_.delimiter);
    if (first) {
      first = false;
      if (named) {
        resolve_all(&fields);
        ++out_.stats.header_rows;
        continue;
      }
      // Index schema: a first row whose time field is not numeric is a header.
      if (time_col < fields.size() && !parse_time(fields[time_col])) {
        ++out_.stats.header_rows;
        continue;
      }
    }
    std::size_t needed = std::max({src_col, dst_col, time_col});
    if (weight_col) needed = std::max(needed, *weight_col);
    if (block_col) needed = std::max(needed, *block_col);
    if (fields.size() <= needed) {
      malformed("expected at least " + std::to_string(needed + 1) + " fields");
      ++out_.stats.rows;
      ++next_row_;
      continue;
    }
    auto src = trim(fields[src_col]);
    auto dst = trim(fields[dst_col]);
    auto t = parse_time(fields[time_col]);
    std::optional<std::optional<double>> w = std::optional<double>{};
    if (weight_col) w = parse_weight(fields[*weight_col]);
    std::optional<std::int64_t> block;
    bool block_ok = true;
    if (block_col) {
      block = parse_int(fields[*block_col]);
      block_ok = block.has_value();
    }
    if (src.empty() || dst.empty() || !t || !w || !block_ok) {
      malformed(src.empty() || dst.empty() ? "empty node id"
                : !t                       ? "bad timestamp"
                : !w                       ? "bad weight"
                                           : "bad block id");
      ++out_.stats.rows;
      ++next_row_;
      continue;
    }
    if (t->truncated) ++out_.stats.truncated_timestamps;
    add(src, dst, t->t, *w, block);
  }
}

void EdgeListBuilder::add_jsonl(std::istream& in) {
  if (!std::holds_alternative<std::string>(schema_.src) || !std::holds_alternative<std::string>(schema_.dst) ||
      !std::holds_alternative<std::string>(schema_.time) ||
      (schema_.weight && !std::holds_alternative<std::string>(*schema_.weight)) ||
      (schema_.block && !std::holds_alternative<std::string>(*schema_.block))) {
    throw std::invalid_argument("jsonl schema must name keys, not column indices");
  }
  const auto& src_key = std::get<std::string>(schema_.src);
  const auto& dst_key = std::get<std::string>(schema_.dst);
  const auto& time_key = std::get<std::string>(schema_.time);

  auto id_of = [](const nlohmann::json& v) -> std::optional<std::string> {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    return std::nullopt;
  };

  std::string line;
  while (std::getline(in, line)) {
    auto view = trim(line);
    if (view.empty()) continue;
    auto fail = [&](const std::string& why) {
      malformed(why);
      ++out_.stats.rows;
      ++next_row_;
    };
    auto obj = nlohmann::json::parse(view, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      fail("not a JSON object");
      continue;
    }
    if (!obj.contains(src_key) || !obj.contains(dst_key) || !obj.contains(time_key)) {
      fail("missing key");
      continue;
    }
    auto src = id_of(obj[src_key]);
    auto dst = id_of(obj[dst_key]);
    std::optional<ParsedTime> t;
    const auto& tv = obj[time_key];
    if (tv.is_number_integer()) {
      t = ParsedTime{tv.get<Timestamp>(), false};
    } else if (tv.is_number()) {
      t = parse_time(format_double(tv.get<double>()));
    } else if (tv.is_string()) {
      t = parse_time(tv.get<std::string>());
    }
    std::optional<double> w;
    bool w_ok = true;
    if (schema_.weight) {
      const auto& key = std::get<std::string>(*schema_.weight);
      if (obj.contains(key) && !obj[key].is_null()) {
        if (obj[key].is_number()) {
          w = obj[key].get<double>();
          w_ok = *w >= 0;
        } else if (obj[key].is_string()) {
          auto pw = parse_weight(obj[key].get<std::string>());
          w_ok = pw.has_value();
          if (pw) w = *pw;
        } else {
          w_ok = false;
        }
      }
    }
    std::optional<std::int64_t> block;
    bool block_ok = true;
    if (schema_.block) {
      const auto& key = std::get<std::string>(*schema_.block);
      if (obj.contains(key) && obj[key].is_number_integer()) {
        block = obj[key].get<std::int64_t>();
      } else {
        block_ok = false;
      }
    }
    if (!src || !dst || src->empty() || dst->empty() || !t || !w_ok || !block_ok) {
      fail("bad field value");
      continue;
    }
    if (t->truncated) ++out_.stats.truncated_timestamps;
    add(*src, *dst, t->t, w, block);
  }
}

void sort_edges(std::vector<TemporalEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
    return a.t != b.t ? a.t < b.t : a.seq < b.seq;
  });
}

EdgeList EdgeListBuilder::finish() && {
  auto& e = out_.edges;
  const bool time_sorted = std::is_sorted(e.begin(), e.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
    return a.t < b.t;
  });
  out_.stats.resorted = !time_sorted;
  if (!time_sorted) sort_edges(e);
  if (e.size() > std::numeric_limits<EdgePos>::max()) throw std::length_error("too many edges");
  return std::move(out_);
}

EdgeList parse_edges(std::istream& in, const Schema& schema, const ParseOptions& options) {
  EdgeListBuilder b(schema, options);
  b.add_stream(in);
  return std::move(b).finish();
}

EdgeList parse_edges(std::string_view text, const Schema& schema, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_edges(in, schema, options);
}

std::vector<std::size_t> tie_group_bounds(const EdgeList& edges) {
  std::vector<std::size_t> bounds;
  const auto& e = edges.edges;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i == 0 || e[i].t != e[i - 1].t || e[i].block != e[i - 1].block) bounds.push_back(i);
  }
  bounds.push_back(e.size());
  return bounds;
}

OrderReport validate_order(const EdgeList& edges) {
  OrderReport r;
  r.num_edges = edges.size();
  r.resorted = edges.stats.resorted;
  r.uses_block_ids = edges.has_block_ids;
  const auto bounds = tie_group_bounds(edges);
  for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
    const std::uint64_t size = bounds[g + 1] - bounds[g];
    r.tie_group_sizes.push_back(size);
    r.largest_group = std::max(r.largest_group, size);
    if (size > 1) ++r.groups_with_ties;
  }
  const auto& e = edges.edges;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const bool less = e[i - 1].t < e[i].t || (e[i - 1].t == e[i].t && e[i - 1].seq < e[i].seq);
    if (!less) {
      r.strict_total_order = false;
      break;
    }
  }
  return r;
}

void write_edges_csv(std::ostream& out, const EdgeList& edges) {
  out << "src,dst,time";
  if (edges.has_weights) out << ",weight";
  if (edges.has_block_ids) out << ",block";
  out << '\n';
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  for (const auto& e : edges.edges) {
    out << quote(edges.nodes.name(e.src)) << ',' << quote(edges.nodes.name(e.dst)) << ',' << e.t;
    if (edges.has_weights) {
      out << ',';
      if (e.w) out << format_double(*e.w);
    }
    if (edges.has_block_ids) {
      out << ',';
      if (e.block) out << *e.block;
    }
    out << '\n';
  }
}

EdgeList slice_edges(const EdgeList& edges, std::size_t begin, std::size_t end) {
  EdgeList out;
  out.nodes = edges.nodes;
  out.has_weights = edges.has_weights;
  out.has_block_ids = edges.has_block_ids;
  end = std::min(end, edges.size());
  begin = std::min(begin, end);
  out.edges.assign(edges.edges.begin() + static_cast<std::ptrdiff_t>(begin),
                   edges.edges.begin() + static_cast<std::ptrdiff_t>(end));
  out.stats.parsed = out.edges.size();
  out.stats.rows = out.edges.size();
  return out;
}

}  // namespace tmotif
