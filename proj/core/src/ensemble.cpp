#include "rdsm/ensemble.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rdsm/errors.hpp"

namespace rdsm {

PathEnsemble PathEnsemble::zeros(int n_paths, int t_len, int dim) {
  if (n_paths < 1 || t_len < 1 || dim < 1)
    throw ConfigError("PathEnsemble: n_paths, t_len and dim must be >= 1");
  PathEnsemble e;
  e.n_paths = n_paths;
  e.t_len = t_len;
  e.dim = dim;
  e.values.assign(static_cast<std::size_t>(n_paths) * t_len * dim, {0.0, 0.0});
  return e;
}

std::vector<StatePoint> PathEnsemble::slice_at_time(int t) const {
  if (t < 0 || t >= t_len) throw ConfigError("slice_at_time: t out of range");
  std::vector<StatePoint> out;
  out.reserve(n_paths);
  for (int p = 0; p < n_paths; ++p) out.push_back(state_point(p, t));
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void save_ensemble_csv(const PathEnsemble& e, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  if (!e.meta.empty()) out << "# " << e.meta << "\n";
  out << "path,t";
  for (int d = 0; d < e.dim; ++d) out << ",re_" << d << ",im_" << d;
  out << "\n";
  for (int p = 0; p < e.n_paths; ++p)
    for (int t = 0; t < e.t_len; ++t) {
      out << p << ',' << t;
      for (int d = 0; d < e.dim; ++d) {
        const cdouble v = e.at(p, t, d);
        out << ',' << fmt17(v.real()) << ',' << fmt17(v.imag());
      }
      out << "\n";
    }
  if (!out) throw DataError("write failed: " + path.string());
}

PathEnsemble load_ensemble_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path.string());
  std::string line;
  std::string meta;
  bool header_seen = false;
  int dim = 0;
  struct Row {
    int p, t;
    std::vector<cdouble> coords;
  };
  std::vector<Row> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (meta.empty()) meta = line.size() > 2 ? line.substr(2) : "";
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!header_seen) {
      if (fields.size() < 4 || fields[0] != "path" || fields[1] != "t")
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": expected header path,t,re_0,im_0,...");
      if ((fields.size() - 2) % 2 != 0)
        throw DataError(path.string() + ": odd coordinate column count");
      dim = static_cast<int>((fields.size() - 2) / 2);
      header_seen = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != 2 + 2 * dim)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": ragged row");
    Row r;
    try {
      r.p = std::stoi(fields[0]);
      r.t = std::stoi(fields[1]);
      for (int d = 0; d < dim; ++d)
        r.coords.emplace_back(std::stod(fields[2 + 2 * d]),
                              std::stod(fields[3 + 2 * d]));
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": non-numeric field");
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw DataError(path.string() + ": no data rows");
  int n_paths = 0, t_len = 0;
  for (const auto& r : rows) {
    n_paths = std::max(n_paths, r.p + 1);
    t_len = std::max(t_len, r.t + 1);
  }
  if (rows.size() != static_cast<std::size_t>(n_paths) * t_len)
    throw DataError(path.string() + ": incomplete (path, t) grid");
  PathEnsemble e = PathEnsemble::zeros(n_paths, t_len, dim);
  e.meta = meta;
  for (const auto& r : rows)
    for (int d = 0; d < dim; ++d) e.at(r.p, r.t, d) = r.coords[d];
  return e;
}

}  // namespace rdsm
