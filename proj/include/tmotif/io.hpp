#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tmotif/analytics.hpp"
#include "tmotif/ingest.hpp"
#include "tmotif/motif_index.hpp"
#include "tmotif/null_models.hpp"
#include "tmotif/temporal_analysis.hpp"

namespace tmotif::io {

/// "M11".."M66" for slots 0..35, "M51r", "M52r", "M61r", "M62r" for 36..39.
std::string slot_label(std::size_t slot);

/// JSON value for a double: number when finite, "inf"/"-inf", null for NaN.
nlohmann::json json_number(double v);

void write_motif_matrix_csv(std::ostream& out, const MotifMatrix& m);
nlohmann::json motif_matrix_json(const MotifMatrix& m);
void write_legend_csv(std::ostream& out);

void write_local_csv(std::ostream& out, const LocalCounts& lc, const NodeTable& nodes);
void write_multi_delta_csv(std::ostream& out, const std::vector<MotifMatrix>& ms);

void write_sweep_csv(std::ostream& out, const DeltaSweepSeries& s);
void write_sweep_categories_csv(std::ostream& out, const DeltaSweepSeries& s);

void write_window_csv(std::ostream& out, const WindowSeries& w);

void write_null_ratio_csv(std::ostream& out, const RatioMatrix& r);
nlohmann::json null_ratio_json(const RatioMatrix& r, std::uint64_t seed);

void write_intra_block_csv(std::ostream& out, const IntraBlockReport& r);
nlohmann::json intra_block_json(const IntraBlockReport& r, std::uint64_t seed);

void write_ccdf_csv(std::ostream& out, const LocalCounts& lc);

void write_signatures_csv(std::ostream& out, const SignatureResult& s, const NodeTable& nodes);
nlohmann::json signatures_json(const SignatureResult& s, const NodeTable& nodes, std::size_t k,
                               std::size_t realizations, std::uint64_t seed, Seconds delta);

void write_balances_csv(std::ostream& out, const Balances& b, const NodeTable& nodes);
void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows, const NodeTable& nodes);

nlohmann::json validation_json(const EdgeList& edges);

}  // namespace tmotif::io
