#include "rdsm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rdsm/errors.hpp"
#include "rdsm/rng.hpp"

namespace rdsm {

namespace {

double parse_number(const std::string& field, const std::string& where) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw DataError(where + ": non-numeric field '" + field + "'");
  return v;
}

}  // namespace

LabeledSeriesSet load_ucr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path.string());
  LabeledSeriesSet set;
  set.source = path.string();
  std::string line;
  char delim = '\0';
  int lineno = 0;
  std::size_t expected_len = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (delim == '\0')
      delim = line.find('\t') != std::string::npos ? '\t' : ',';
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, delim)) fields.push_back(f);
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (fields.size() < 2)
      throw DataError(where + ": row has no series values");
    LabeledSeries s;
    s.label = fields[0];
    // Strip a float-formatted class id ("1.0" -> "1").
    if (const auto dot = s.label.find('.'); dot != std::string::npos &&
        s.label.find_first_not_of("0", dot + 1) == std::string::npos)
      s.label.erase(dot);
    for (std::size_t c = 1; c < fields.size(); ++c)
      s.values.push_back(
          parse_number(fields[c], where + ":col" + std::to_string(c + 1)));
    if (expected_len == 0) {
      expected_len = s.values.size();
    } else if (s.values.size() != expected_len) {
      throw DataError(where + ": ragged row (" + std::to_string(s.values.size()) +
                      " values, expected " + std::to_string(expected_len) + ")");
    }
    set.series.push_back(std::move(s));
  }
  if (set.series.empty()) throw DataError(path.string() + ": empty file");
  return set;
}

std::vector<double> skip_series(const std::vector<double>& values, int s) {
  if (s < 1) throw ConfigError("skip_series: s must be >= 1");
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); i += static_cast<std::size_t>(s))
    out.push_back(values[i]);
  return out;
}

std::vector<EnsembleGroup> make_ensemble_groups(const LabeledSeriesSet& set,
                                                int n_paths, int n_pairs,
                                                std::uint64_t seed) {
  if (n_paths < 1 || n_pairs < 1)
    throw ConfigError("make_ensemble_groups: n_paths and n_pairs must be >= 1");
  if (n_paths % n_pairs != 0)
    throw ConfigError("make_ensemble_groups: n_paths must be divisible by n_pairs");
  const int n_sub = n_paths / n_pairs;

  // Classes keyed by first appearance.
  std::vector<std::string> class_order;
  std::map<std::string, std::vector<int>> rows_by_class;
  for (std::size_t i = 0; i < set.series.size(); ++i) {
    const auto& label = set.series[i].label;
    if (rows_by_class.find(label) == rows_by_class.end())
      class_order.push_back(label);
    rows_by_class[label].push_back(static_cast<int>(i));
  }

  const int t_len = static_cast<int>(set.series.front().values.size());
  std::vector<EnsembleGroup> groups;
  std::uint64_t draw_counter = 0;
  for (const auto& label : class_order) {
    auto rows = rows_by_class[label];
    if (static_cast<int>(rows.size()) < n_paths)
      throw ConfigError("class '" + label + "' has only " +
                        std::to_string(rows.size()) + " series, need " +
                        std::to_string(n_paths));
    // Seeded partial Fisher-Yates draw of n_paths rows without replacement.
    for (int i = 0; i < n_paths; ++i) {
      const auto j = i + static_cast<int>(rng::uniform_index(
                             seed, draw_counter++, rows.size() - static_cast<std::size_t>(i)));
      std::swap(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
    }
    rows.resize(static_cast<std::size_t>(n_paths));

    EnsembleGroup group;
    group.class_label = label;
    for (int e = 0; e < n_pairs; ++e) {
      PathEnsemble ens = PathEnsemble::zeros(n_sub, t_len, 1);
      std::vector<int> src;
      for (int p = 0; p < n_sub; ++p) {
        const int row = rows[static_cast<std::size_t>(e * n_sub + p)];
        src.push_back(row);
        const auto& vals = set.series[static_cast<std::size_t>(row)].values;
        for (int t = 0; t < t_len; ++t) ens.at(p, t, 0) = {vals[static_cast<std::size_t>(t)], 0.0};
      }
      std::ostringstream meta;
      meta << "ucr class=" << label << " ensemble=" << e << " source=" << set.source
           << " seed=" << seed;
      ens.meta = meta.str();
      group.ensembles.push_back(std::move(ens));
      group.source_rows.push_back(std::move(src));
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

void save_group_manifest(const std::vector<EnsembleGroup>& groups,
                         const std::filesystem::path& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& g : groups)
    for (std::size_t e = 0; e < g.ensembles.size(); ++e)
      j.push_back({{"class", g.class_label},
                   {"ensemble_id", e},
                   {"source_row_indices", g.source_rows[e]}});
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace rdsm
