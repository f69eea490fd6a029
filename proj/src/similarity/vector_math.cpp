#include "shelfrec/similarity/vector_math.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

FeatureVector::FeatureVector(std::vector<double> components)
    : components_(std::move(components)) {
  if (components_.empty()) fail(ErrorCode::invalid_argument, "feature vector must have n >= 1");
  for (double c : components_)
    if (!std::isfinite(c))
      fail(ErrorCode::invalid_argument, "feature vector components must be finite");
}

FeatureVector::FeatureVector(std::initializer_list<double> components)
    : FeatureVector(std::vector<double>(components)) {}

namespace {

void require_same_length(const FeatureVector& x, const FeatureVector& y) {
  if (x.size() != y.size())
    fail(ErrorCode::invalid_argument, "dimension mismatch: " + std::to_string(x.size()) +
                                          " vs " + std::to_string(y.size()));
}

}  // namespace

double minkowski_distance(const FeatureVector& x, const FeatureVector& y, double p) {
  require_same_length(x, y);
  if (!(p >= 1.0) || !std::isfinite(p))
    fail(ErrorCode::invalid_argument, "minkowski order p must be a finite value >= 1");
  double total = 0.0;
  for (std::size_t u = 0; u < x.size(); ++u) total += std::pow(std::abs(x[u] - y[u]), p);
  return std::pow(total, 1.0 / p);
}

double cosine_from_parts(double dot, double norm_x, double norm_y) noexcept {
  if (norm_x == 0.0 || norm_y == 0.0) return 0.0;
  return std::clamp(dot / (norm_x * norm_y), -1.0, 1.0);
}

double cosine_similarity(const FeatureVector& x, const FeatureVector& y) {
  require_same_length(x, y);
  double dot = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  return cosine_from_parts(dot, std::sqrt(xx), std::sqrt(yy));
}

}  // namespace shelfrec
