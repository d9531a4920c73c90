#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rdsm/kernel.hpp"

namespace rdsm {

// N_s sampled trajectories of a random dynamical system, each a
// length-t_len sequence of dim-dimensional complex states. values are
// stored flat as [path][time][component].
struct PathEnsemble {
  int n_paths = 0;
  int t_len = 0;
  int dim = 0;
  std::vector<cdouble> values;
  std::string meta;  // provenance: generator name, parameters, seed

  static PathEnsemble zeros(int n_paths, int t_len, int dim);

  cdouble& at(int p, int t, int d) {
    return values[(static_cast<std::size_t>(p) * t_len + t) * dim + d];
  }
  const cdouble& at(int p, int t, int d) const {
    return values[(static_cast<std::size_t>(p) * t_len + t) * dim + d];
  }
  std::span<const cdouble> state(int p, int t) const {
    return {values.data() + (static_cast<std::size_t>(p) * t_len + t) * dim,
            static_cast<std::size_t>(dim)};
  }
  StatePoint state_point(int p, int t) const {
    auto s = state(p, t);
    return {s.begin(), s.end()};
  }
  // States of all paths at a fixed time (an n-sample slice).
  std::vector<StatePoint> slice_at_time(int t) const;
};

// CSV with header `path,t,re_0,im_0[,re_1,im_1,...]`, one row per
// (path, time); 17 significant digits, lossless round trip. Lines starting
// with '#' carry the meta record and are skipped on load.
void save_ensemble_csv(const PathEnsemble& e, const std::filesystem::path& path);
PathEnsemble load_ensemble_csv(const std::filesystem::path& path);

}  // namespace rdsm
