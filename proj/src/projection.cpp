#include "miniconf/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include <fmt/format.h>

namespace miniconf {

namespace {

constexpr double kFloor = 1e-12;

bool all_finite(const std::vector<Point2>& pts) {
  for (const auto& p : pts)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  return true;
}

void center(std::vector<Point2>& y) {
  if (y.empty()) return;
  double mx = 0.0, my = 0.0;
  for (const auto& p : y) {
    mx += p.x;
    my += p.y;
  }
  mx /= double(y.size());
  my /= double(y.size());
  for (auto& p : y) {
    p.x -= mx;
    p.y -= my;
  }
}

// Standard normal pairs from raw 64-bit engine output. std::normal_distribution
// is implementation-defined, so it would tie layouts to one standard library.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (spare_) {
      double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = unit();
    double u2 = unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
  }

 private:
  // Uniform on the open interval (0, 1).
  double unit() { return (double(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace

void TsneParams::check() const {
  if (!(perplexity > 0.0)) throw ProjectionError("perplexity must be positive");
  if (iterations < 0) throw ProjectionError("iterations must be non-negative");
  if (!(learning_rate > 0.0)) throw ProjectionError("learning_rate must be positive");
  if (!(momentum_early >= 0.0 && momentum_early < 1.0) ||
      !(momentum_late >= 0.0 && momentum_late < 1.0))
    throw ProjectionError("momentum must lie in [0, 1)");
  if (momentum_switch_iter < 0) throw ProjectionError("momentum_switch_iter must be non-negative");
  if (!(early_exaggeration_factor > 0.0))
    throw ProjectionError("early_exaggeration_factor must be positive");
  if (early_exaggeration_iters < 0 || early_exaggeration_iters > iterations)
    throw ProjectionError("early_exaggeration_iters must lie in [0, iterations]");
}

DistanceMatrix pairwise_sq_distances(const std::vector<std::vector<double>>& vectors) {
  const std::size_t n = vectors.size();
  DistanceMatrix d2(n);
  if (n == 0) return d2;
  const std::size_t dim = vectors.front().size();
  for (std::size_t i = 0; i < n; ++i)
    if (vectors[i].size() != dim)
      throw ProjectionError(
          fmt::format("vector {} has dimension {}, expected {}", i, vectors[i].size(), dim));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        double diff = vectors[i][k] - vectors[j][k];
        s += diff * diff;
      }
      d2(i, j) = s;
      d2(j, i) = s;
    }
  }
  return d2;
}

RowCalibration calibrate_row(std::span<const double> d2_row, std::size_t self_index,
                             double perplexity, double tol, int max_iter) {
  const std::size_t n = d2_row.size();
  if (n < 2) throw ProjectionError("perplexity calibration needs at least 2 points");
  if (self_index >= n) throw ProjectionError("self_index out of range");
  if (!(perplexity > 0.0) || perplexity >= double(n))
    throw ProjectionError(
        fmt::format("perplexity {} must be positive and below the point count {}", perplexity, n));

  // Shift by the nearest distance so the largest weight is exp(0) = 1.
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j)
    if (j != self_index) dmin = std::min(dmin, d2_row[j]);
  std::vector<double> shifted(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    if (j != self_index) shifted[j] = d2_row[j] - dmin;

  std::vector<double> w(n, 0.0);
  auto evaluate = [&](double beta) {
    double sum = 0.0, weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == self_index) {
        w[j] = 0.0;
        continue;
      }
      w[j] = std::exp(-beta * shifted[j]);
      sum += w[j];
      weighted += shifted[j] * w[j];
    }
    double entropy = std::log(sum) + beta * weighted / sum;
    return std::exp(entropy);
  };

  RowCalibration best;
  double best_gap = std::numeric_limits<double>::infinity();
  double beta = 1.0;
  double lo = 0.0, hi = 0.0;
  bool have_lo = false, have_hi = false;

  for (int it = 1; it <= max_iter; ++it) {
    double achieved = evaluate(beta);
    double gap = std::abs(achieved - perplexity);
    if (gap < best_gap) {
      best_gap = gap;
      best.beta = beta;
      best.perplexity = achieved;
      best.p_cond = w;
    }
    best.iterations = it;
    if (gap <= tol * perplexity) {
      best.converged = true;
      break;
    }
    if (achieved > perplexity) {
      // Too flat: sharpen.
      lo = beta;
      have_lo = true;
      beta = have_hi ? 0.5 * (lo + hi) : beta * 2.0;
    } else {
      hi = beta;
      have_hi = true;
      beta = have_lo ? 0.5 * (lo + hi) : beta * 0.5;
    }
  }

  double sum = 0.0;
  for (double v : best.p_cond) sum += v;
  for (auto& v : best.p_cond) v /= sum;
  return best;
}

SquareMatrix conditional_affinities(const DistanceMatrix& d2, double perplexity, const LogSink& log) {
  const std::size_t n = d2.size();
  SquareMatrix p(n);
  std::size_t unconverged = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto cal = calibrate_row(d2.row(i), i, perplexity);
    if (!cal.converged) {
      ++unconverged;
      emit(log, fmt::format("warning: row {} calibrated to perplexity {:.6g} (target {:.6g}) after {} "
                            "iterations",
                            i, cal.perplexity, perplexity, cal.iterations));
    }
    std::copy(cal.p_cond.begin(), cal.p_cond.end(), p.row(i).begin());
  }
  emit(log, fmt::format("calibration: {} row(s), {} not converged, perplexity {:.6g}", n, unconverged,
                        perplexity));
  return p;
}

AffinityMatrix symmetrize(const SquareMatrix& p_cond) {
  const std::size_t n = p_cond.size();
  AffinityMatrix p(n);
  const double denom = 2.0 * double(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = (p_cond(i, j) + p_cond(j, i)) / denom;
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return p;
}

double kl_divergence(const AffinityMatrix& p, const std::vector<Point2>& y) {
  const std::size_t n = p.size();
  if (n < 2) return 0.0;
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double dx = y[i].x - y[j].x, dy = y[i].y - y[j].y;
      z += 1.0 / (1.0 + dx * dx + dy * dy);
    }
  z = std::max(z, kFloor);
  double kl = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || p(i, j) <= 0.0) continue;
      double dx = y[i].x - y[j].x, dy = y[i].y - y[j].y;
      double q = 1.0 / (1.0 + dx * dx + dy * dy) / z;
      kl += p(i, j) * std::log(std::max(p(i, j), kFloor) / std::max(q, kFloor));
    }
  return std::max(kl, 0.0);
}

std::vector<Point2> tsne_gradient(const AffinityMatrix& p, const std::vector<Point2>& y,
                                  double exaggeration) {
  const std::size_t n = p.size();
  std::vector<Point2> grad(n);
  if (n < 2) return grad;

  // Student-t kernel values, computed once per unordered pair.
  SquareMatrix kernel(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = y[i].x - y[j].x, dy = y[i].y - y[j].y;
      double k = 1.0 / (1.0 + dx * dx + dy * dy);
      kernel(i, j) = k;
      kernel(j, i) = k;
      z += 2.0 * k;
    }
  z = std::max(z, kFloor);

  for (std::size_t i = 0; i < n; ++i) {
    double gx = 0.0, gy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double k = kernel(i, j);
      double mult = (exaggeration * p(i, j) - k / z) * k;
      gx += mult * (y[i].x - y[j].x);
      gy += mult * (y[i].y - y[j].y);
    }
    grad[i] = {4.0 * gx, 4.0 * gy};
  }
  return grad;
}

std::vector<Point2> initial_layout(std::size_t n, std::uint64_t seed, double sigma) {
  GaussianSource gauss(seed);
  std::vector<Point2> y(n);
  for (auto& p : y) {
    p.x = sigma * gauss.next();
    p.y = sigma * gauss.next();
  }
  return y;
}

Layout tsne_optimize(const AffinityMatrix& p, const TsneParams& params, const LogSink& log) {
  params.check();
  const std::size_t n = p.size();
  Layout out;
  out.seed = params.seed;
  if (n == 0) return out;
  if (n == 1) {
    out.y = {Point2{}};
    return out;
  }

  auto y = initial_layout(n, params.seed);
  std::vector<Point2> velocity(n);
  for (int it = 0; it < params.iterations; ++it) {
    double exaggeration = it < params.early_exaggeration_iters ? params.early_exaggeration_factor : 1.0;
    double momentum = it < params.momentum_switch_iter ? params.momentum_early : params.momentum_late;
    auto grad = tsne_gradient(p, y, exaggeration);
    if (!all_finite(grad))
      throw ProjectionError(fmt::format("non-finite gradient at iteration {}", it));
    for (std::size_t i = 0; i < n; ++i) {
      velocity[i].x = momentum * velocity[i].x - params.learning_rate * grad[i].x;
      velocity[i].y = momentum * velocity[i].y - params.learning_rate * grad[i].y;
      y[i].x += velocity[i].x;
      y[i].y += velocity[i].y;
    }
    center(y);
    if (!all_finite(y)) throw ProjectionError(fmt::format("non-finite layout at iteration {}", it));
    if (log && (it + 1) % 250 == 0)
      emit(log, fmt::format("iteration {}: KL {:.6f}", it + 1, kl_divergence(p, y)));
  }
  center(y);
  out.y = std::move(y);
  out.final_kl = kl_divergence(p, out.y);
  if (!std::isfinite(out.final_kl)) throw ProjectionError("non-finite final KL divergence");
  emit(log, fmt::format("final KL divergence {:.6f}", out.final_kl));
  return out;
}

Layout project_corpus(const std::vector<DocumentEmbedding>& embeddings, const TsneParams& params,
                      const LogSink& log) {
  params.check();
  const std::size_t n = embeddings.size();
  if (n <= 1) {
    Layout out;
    out.seed = params.seed;
    out.y.assign(n, Point2{});
    return out;
  }

  std::vector<std::vector<double>> vectors;
  vectors.reserve(n);
  GaussianSource jitter(params.seed ^ 0x9E3779B97F4A7C15ull);
  std::size_t jittered = 0;
  for (const auto& e : embeddings) {
    auto v = e.vector;
    bool zero = std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    if (zero) {
      for (auto& x : v) x = 1e-8 * jitter.next();
      ++jittered;
    }
    vectors.push_back(std::move(v));
  }
  if (jittered)
    emit(log, fmt::format("jittered {} zero-vector document(s) with sigma 1e-8", jittered));

  TsneParams effective = params;
  if (double(n) <= params.perplexity) {
    effective.perplexity = std::max(1.0, double(n - 1) / 3.0);
    emit(log, fmt::format("warning: perplexity {:.6g} >= point count {}; clamped to {:.6g}",
                          params.perplexity, n, effective.perplexity));
  }

  auto d2 = pairwise_sq_distances(vectors);
  auto p = symmetrize(conditional_affinities(d2, effective.perplexity, log));
  return tsne_optimize(p, effective, log);
}

}  // namespace miniconf
