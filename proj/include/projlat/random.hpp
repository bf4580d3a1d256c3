#pragma once

// Seeded generators for test and audit samples. Every sampler draws from an
// explicit Rng; independent samples use substreams derived with mix_seed so
// that sample i does not depend on how many draws sample i−1 consumed.

#include <cstdint>
#include <random>
#include <vector>

#include "projlat/algebra.hpp"

namespace projlat {

/// splitmix64 finalizer over (seed, stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  /// Inclusive range.
  int uniform_int(int lo, int hi);
  double normal();
  Complex complex_normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary_matrix(int n, Rng& rng);
Element random_unitary(const Algebra& algebra, Rng& rng);
/// Self-adjoint with operator norm 1.
Element random_hermitian(const Algebra& algebra, Rng& rng);
/// Self-adjoint, norm 1, every pair of eigenvalues separated by ≥ min_gap.
Element random_hermitian_separated(const Algebra& algebra, Rng& rng, double min_gap);
/// General complex element with operator norm 1.
Element random_element(const Algebra& algebra, Rng& rng);
/// Positive, trace one.
Element random_density(const Algebra& algebra, Rng& rng);

/// Uniformly random rank in every block.
Projection random_projection(const Algebra& algebra, Rng& rng);
Projection random_projection(const Algebra& algebra, const std::vector<int>& ranks, Rng& rng);
/// Mutually orthogonal (e, f) from one random unitary frame.
std::pair<Projection, Projection> random_orthogonal_pair(const Algebra& algebra, Rng& rng);
/// f close to e: f = V e V* with V = exp(i·scale·H).
Projection random_perturbation(const Projection& e, double scale, Rng& rng);

/// Deterministic probe set: per block E_ii, (e_i+e_j)/√2, (e_i+i·e_j)/√2
/// and the diagonal flags E_00 + ... + E_kk.
std::vector<Projection> frame_projections(const Algebra& algebra);

/// Algebra with between 1 and max_blocks blocks, sizes in [min_n, max_n],
/// skipping size 2 when exclude_two is set.
Algebra random_algebra(Rng& rng, int min_n, int max_n, int max_blocks, bool exclude_two);

}  // namespace projlat
