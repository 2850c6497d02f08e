#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "miniconf/embedding.hpp"
#include "miniconf/projection.hpp"

namespace testing_support {

struct ClusterFixture {
  std::vector<miniconf::DocumentEmbedding> points;
  std::vector<int> labels;
};

/// `k` isotropic unit-variance Gaussian blobs in `dim` dimensions with
/// centers `spread` apart along distinct axes.
inline ClusterFixture gaussian_clusters(std::size_t per_cluster, int k, std::size_t dim, double spread,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  ClusterFixture f;
  for (int c = 0; c < k; ++c)
    for (std::size_t i = 0; i < per_cluster; ++i) {
      miniconf::DocumentEmbedding e;
      e.paper_uid = "c" + std::to_string(c) + "-" + std::to_string(i);
      e.coverage = 1.0;
      e.vector.resize(dim);
      for (std::size_t d = 0; d < dim; ++d) e.vector[d] = noise(rng) + (d == std::size_t(c) ? spread : 0.0);
      f.points.push_back(std::move(e));
      f.labels.push_back(c);
    }
  return f;
}

struct Separation {
  double intra = 0.0;
  double inter = 0.0;
};

inline Separation cluster_separation(const std::vector<miniconf::Point2>& y, const std::vector<int>& labels) {
  double intra = 0, inter = 0;
  std::size_t ni = 0, ne = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      double d = std::hypot(y[i].x - y[j].x, y[i].y - y[j].y);
      if (labels[i] == labels[j]) { intra += d; ++ni; } else { inter += d; ++ne; }
    }
  return {intra / double(ni), inter / double(ne)};
}

}  // namespace testing_support
