#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rdsm/ensemble.hpp"

// UCR archive ingestion, time skipping, and partitioning of labeled series
// into path-ensemble collections.

namespace rdsm {

struct LabeledSeries {
  std::string label;
  std::vector<double> values;
};

struct LabeledSeriesSet {
  std::vector<LabeledSeries> series;  // all equal length
  std::string source;
};

struct EnsembleGroup {
  std::string class_label;
  std::vector<PathEnsemble> ensembles;
  // Source row indices into the loaded set, one list per ensemble.
  std::vector<std::vector<int>> source_rows;
};

// Tab- or comma-delimited rows, class label in column 0, auto-detected from
// the first row. Ragged rows, non-numeric fields and empty files raise
// DataError with the row/column position.
LabeledSeriesSet load_ucr(const std::filesystem::path& path);

// Keeps indices 0, s, 2s, ... of the series.
std::vector<double> skip_series(const std::vector<double>& values, int s);

// Per class, draws n_paths series uniformly without replacement (seeded) and
// partitions them into n_pairs ensembles of n_paths/n_pairs paths each.
// Real values are embedded as complex with zero imaginary part.
std::vector<EnsembleGroup> make_ensemble_groups(const LabeledSeriesSet& set,
                                                int n_paths, int n_pairs,
                                                std::uint64_t seed);

// Audit manifest: [{class, ensemble_id, source_row_indices}].
void save_group_manifest(const std::vector<EnsembleGroup>& groups,
                         const std::filesystem::path& path);

}  // namespace rdsm
