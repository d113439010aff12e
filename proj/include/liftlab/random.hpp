#pragma once

#include <cstdint>
#include <random>

#include "liftlab/numlin.hpp"

namespace liftlab {

struct Realization;

/// Deterministic source of random test operators. Streams are a pure function
/// of the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  Index uniform_index(Index lo, Index hi) {  // inclusive
    return std::uniform_int_distribution<Index>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  Complex complex_normal() { return Complex(normal(), normal()) / std::sqrt(2.0); }

  /// Point uniformly distributed in the disk of the given radius.
  Complex disk_point(double radius);

  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

CMatrix random_gaussian(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary.
CMatrix random_unitary(Index n, Rng& rng);

/// rows x cols isometry (rows >= cols).
CMatrix random_isometry(Index rows, Index cols, Rng& rng);

/// Gaussian matrix rescaled to operator norm drawn from [min_norm, max_norm].
CMatrix random_contraction(Index rows, Index cols, Rng& rng, double min_norm = 0.1,
                           double max_norm = 0.95);

/// Realization whose system matrix is a strict contraction.
Realization random_contractive_realization(Index dim_in, Index dim_out, Index dim_state, Rng& rng,
                                           double max_norm = 0.95);

/// Realization whose system matrix is an isometry (requires dim_out >= dim_in).
Realization random_isometric_realization(Index dim_in, Index dim_out, Index dim_state, Rng& rng);

}  // namespace liftlab
