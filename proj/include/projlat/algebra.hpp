#pragma once

// Finite-dimensional C*-algebras modeled as direct sums of full matrix
// blocks M_{n_1} ⊕ ... ⊕ M_{n_k}, with the spectral calculus used by every
// other module.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "projlat/error.hpp"

namespace projlat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
/// ε_proj = kProjection · max(n_k)
inline constexpr double kProjection = 1e-10;
/// ε_spec and default eigenvalue clustering, relative to ‖x‖
inline constexpr double kSpectral = 1e-8;
/// Singular values ≤ kRank·‖x‖ count as zero.
inline constexpr double kRank = 1e-9;
/// Meets are the eigenvalue-2 eigenspace of e+f, window [2 − kMeetWindow, 2].
inline constexpr double kMeetWindow = 1e-8;
}  // namespace tol

class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const noexcept { return dims_; }
  std::size_t num_blocks() const noexcept { return dims_.size(); }
  int block_dim(std::size_t k) const { return dims_.at(k); }
  /// Σ n_k², the complex dimension of the algebra.
  int total_dim() const noexcept;
  int max_block_dim() const noexcept;
  /// Σ n_k, the dimension of the defining representation.
  int rep_dim() const noexcept;
  bool has_type_I2_summand() const noexcept;
  double eps_proj() const noexcept { return tol::kProjection * max_block_dim(); }

  bool operator==(const Algebra&) const = default;

 private:
  std::vector<int> dims_;
};

void require_same_algebra(const Algebra& a, const Algebra& b);

/// Block-diagonal element of an Algebra.
class Element {
 public:
  Element() = default;
  Element(Algebra algebra, std::vector<Matrix> blocks);

  static Element zero(const Algebra& algebra);
  static Element identity(const Algebra& algebra);
  /// Convenience for single-block algebras M_n.
  static Element from_matrix(Matrix m);
  /// Element that is `m` in block k and zero elsewhere.
  static Element embed(const Algebra& algebra, std::size_t k, Matrix m);

  const Algebra& algebra() const noexcept { return algebra_; }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
  const Matrix& block(std::size_t k) const { return blocks_.at(k); }
  Matrix& block(std::size_t k) { return blocks_.at(k); }

  Element adjoint() const;
  Element transpose() const;
  Element conjugate() const;
  /// (x + x*)/2
  Element real_part() const;
  /// (x − x*)/(2i); x = real_part() + i·imag_part().
  Element imag_part() const;
  Complex trace() const;
  /// Hilbert–Schmidt norm.
  double hs_norm() const;

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(Complex s);

 private:
  Algebra algebra_;
  std::vector<Matrix> blocks_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator-(Element a);
Element operator*(const Element& a, const Element& b);
Element operator*(Complex s, Element a);
Element operator*(double s, Element a);

/// Self-adjoint idempotent, certified within Algebra::eps_proj().
class Projection {
 public:
  Projection() = default;
  /// Throws NotAProjection when ‖p − p*‖ or ‖p² − p‖ exceeds ε_proj.
  explicit Projection(Element p);
  /// Skips certification; symmetrizes. For results built from orthonormal
  /// frames, where idempotency holds by construction.
  static Projection trusted(Element p);

  static Projection zero(const Algebra& algebra);
  static Projection unit(const Algebra& algebra);
  /// Orthogonal projection onto the column span of the orthonormal `frame`,
  /// placed in block k.
  static Projection from_frame(const Algebra& algebra, std::size_t k, const Matrix& frame);

  const Element& element() const noexcept { return p_; }
  operator const Element&() const noexcept { return p_; }
  const Algebra& algebra() const noexcept { return p_.algebra(); }
  const Matrix& block(std::size_t k) const { return p_.block(k); }

 private:
  Element p_;
};

struct SpectralResolution {
  std::vector<double> eigenvalues;  // strictly increasing
  std::vector<Projection> projections;
};

struct PolarDecomposition {
  Element u;  // partial isometry, u*u = RP(x), uu* = LP(x)
  Element h;  // (x*x)^{1/2}
};

/// Largest singular value over all blocks.
double operator_norm(const Element& x);

/// x = Σ λ_i p_i for self-adjoint x. Eigenvalues (pooled across blocks) whose
/// consecutive gaps are ≤ cluster_tol are merged into one spectral
/// projection at their mean. cluster_tol < 0 selects the default
/// kSpectral·‖x‖. Throws NotSelfAdjoint.
SpectralResolution hermitian_spectral(const Element& x, double cluster_tol = -1.0);

PolarDecomposition polar_decomposition(const Element& x);

/// RP(x): the smallest projection q with x·q = x, i.e. the projection onto
/// the range of x* (row support). LP(x) = RP(x*), see left_projection.
Projection range_projection(const Element& x);
Projection left_projection(const Element& x);

/// Per-block rank with the relative singular-value threshold kRank·‖x‖.
std::vector<int> block_ranks(const Element& x);
/// Projections have norm 0 or 1, so the threshold is absolute: kRank.
std::vector<int> block_ranks(const Projection& p);
int total_rank(const Element& x);
int total_rank(const Projection& p);

/// Orthonormal basis (n_k × r) of the range of projection p in block k,
/// taken from p's own eigenvectors.
Matrix range_frame(const Projection& p, std::size_t k);

/// Rounds the spectrum of the self-adjoint part of x to {0, 1} at ½.
Projection nearest_projection(const Element& x);

bool is_self_adjoint(const Element& x, double tol);
bool is_unitary(const Element& u, double tol);

}  // namespace projlat
