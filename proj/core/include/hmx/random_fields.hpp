#pragma once

#include <cstdint>
#include <random>

#include "hmx/chart.hpp"
#include "hmx/field.hpp"

namespace hmx {

/// Seeded band-limited random fields. Deterministic for a fixed seed and chart:
/// values are closed-form trigonometric polynomials evaluated per sample, so
/// they are identical regardless of iteration order or worker count.
class SmoothFieldGen {
 public:
  explicit SmoothFieldGen(std::uint64_t seed, int max_modes = 3)
      : rng_(seed), max_modes_(max_modes) {}

  ScalarField scalar(const ProductChart& chart);
  GradedForm graded(const ProductChart& chart);

 private:
  std::mt19937_64 rng_;
  int max_modes_;
};

}  // namespace hmx
