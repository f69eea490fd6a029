#pragma once

#include <span>
#include <vector>

namespace shelfrec {

/// Dense list of finite components, length >= 1.
class FeatureVector {
 public:
  explicit FeatureVector(std::vector<double> components);
  FeatureVector(std::initializer_list<double> components);

  std::size_t size() const noexcept { return components_.size(); }
  std::span<const double> components() const noexcept { return components_; }
  double operator[](std::size_t i) const { return components_[i]; }

 private:
  std::vector<double> components_;
};

/// (sum |x_u - y_u|^p)^(1/p). p = 2 gives the Euclidean distance, p = 1 the
/// Manhattan distance. Throws invalid_argument for a length mismatch or p < 1.
double minkowski_distance(const FeatureVector& x, const FeatureVector& y, double p);

/// sum x_i y_i / (|x| |y|), clamped to [-1, 1]. Returns 0.0 when either
/// vector is all zeros. Throws invalid_argument for a length mismatch.
double cosine_similarity(const FeatureVector& x, const FeatureVector& y);

/// Cosine from precomputed parts with the same zero-norm and clamping rules.
double cosine_from_parts(double dot, double norm_x, double norm_y) noexcept;

}  // namespace shelfrec
