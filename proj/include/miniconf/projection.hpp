#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "miniconf/embedding.hpp"
#include "miniconf/model.hpp"

namespace miniconf {

class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major square matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Squared Euclidean distances; symmetric with an exact zero diagonal.
using DistanceMatrix = SquareMatrix;

/// Joint probabilities p_ij: symmetric, zero diagonal, summing to 1.
using AffinityMatrix = SquareMatrix;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

struct Layout {
  std::vector<Point2> y;
  double final_kl = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return y.size(); }
};

struct TsneParams {
  double perplexity = 30.0;
  int iterations = 1000;
  double learning_rate = 200.0;
  double momentum_early = 0.5;
  double momentum_late = 0.8;
  int momentum_switch_iter = 250;
  double early_exaggeration_factor = 12.0;
  int early_exaggeration_iters = 250;
  std::uint64_t seed = 0;

  /// Throws ProjectionError when a field is out of range.
  void check() const;
};

/// Throws ProjectionError on a dimension mismatch.
DistanceMatrix pairwise_sq_distances(const std::vector<std::vector<double>>& vectors);

struct RowCalibration {
  double beta = 1.0;             // precision 1 / (2 sigma^2)
  std::vector<double> p_cond;    // p_{j|i}, zero at self_index
  double perplexity = 0.0;       // exp(H) achieved
  int iterations = 0;
  bool converged = false;
};

/// Binary search on beta until |exp(H) - perplexity| <= tol * perplexity,
/// doubling or halving beta until the target is bracketed. Returns the best
/// row found when max_iter is exhausted (converged == false).
/// Throws ProjectionError when n < 2 or perplexity >= n.
RowCalibration calibrate_row(std::span<const double> d2_row, std::size_t self_index,
                             double perplexity, double tol = 1e-5, int max_iter = 64);

/// Row-conditional probabilities for every point.
SquareMatrix conditional_affinities(const DistanceMatrix& d2, double perplexity,
                                    const LogSink& log = {});

/// p_ij = (p_{j|i} + p_{i|j}) / 2n.
AffinityMatrix symmetrize(const SquareMatrix& p_cond);

/// KL(P || Q) for layout `y`, with the Student-t kernel for Q.
double kl_divergence(const AffinityMatrix& p, const std::vector<Point2>& y);

/// dKL/dy_i = 4 sum_j (exaggeration * p_ij - q_ij)(y_i - y_j)(1 + |y_i - y_j|^2)^-1
std::vector<Point2> tsne_gradient(const AffinityMatrix& p, const std::vector<Point2>& y,
                                  double exaggeration = 1.0);

/// Seeded N(0, sigma^2) initial layout.
std::vector<Point2> initial_layout(std::size_t n, std::uint64_t seed, double sigma = 1e-4);

/// Momentum gradient descent on KL(P || Q) with early exaggeration.
/// Deterministic for fixed (P, params). Output is centred on the origin and
/// final_kl is measured against the un-exaggerated P.
/// Throws ProjectionError naming the iteration if a non-finite value appears.
Layout tsne_optimize(const AffinityMatrix& p, const TsneParams& params, const LogSink& log = {});

/// distances -> calibration -> symmetrize -> optimize. Zero-coverage rows are
/// jittered with seeded noise (sigma 1e-8) first; perplexity is clamped to
/// max(1, (n-1)/3) when n <= perplexity.
Layout project_corpus(const std::vector<DocumentEmbedding>& embeddings, const TsneParams& params,
                      const LogSink& log = {});

}  // namespace miniconf
