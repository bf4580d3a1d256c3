#pragma once

// Morphisms between projection lattices and their extension to linear maps.
//
// A LatticeMorphism is an oracle P(A) → P(B). Its linear extension is built
// pointwise through the spectral theorem, Φ(Σ λ_i p_i) = Σ λ_i φ(p_i), and the
// audits below test whether that pointwise definition is actually linear,
// Jordan, and equivariant under symmetries 1 − 2p.

#include <cstddef>
#include <functional>
#include <vector>

#include "projlat/algebra.hpp"
#include "projlat/audit.hpp"

namespace projlat {

struct MorphismClaims {
  bool cortho = false;
  bool orthoiso = false;
};

struct LatticeMorphism {
  Algebra source;
  Algebra target;
  std::function<Projection(const Projection&)> evaluate;
  MorphismClaims claims;

  Projection operator()(const Projection& p) const { return evaluate(p); }
};

/// HS-orthonormal Hermitian basis, per block: E_ii, (E_ij+E_ji)/√2,
/// i(E_ij−E_ji)/√2 for i < j. It is also a basis of A over ℂ.
std::vector<Element> hermitian_basis(const Algebra& algebra);
/// c_b = tr(B_b·x)
Vector coordinates(const Element& x);
Element from_coordinates(const Algebra& algebra, const Vector& c);

/// Complex-linear map stored as a (Σ m_k²) × (Σ n_k²) matrix in
/// hermitian_basis coordinates; real for *-preserving maps.
class LinearMapOnAlgebra {
 public:
  LinearMapOnAlgebra() = default;
  LinearMapOnAlgebra(Algebra source, Algebra target, Matrix representation);

  /// Assembles the representation by evaluating f on hermitian_basis(source).
  static LinearMapOnAlgebra from_function(const Algebra& source, const Algebra& target,
                                          const std::function<Element(const Element&)>& f);

  const Algebra& source() const noexcept { return source_; }
  const Algebra& target() const noexcept { return target_; }
  const Matrix& representation() const noexcept { return rep_; }

  Element apply(const Element& x) const;
  Element operator()(const Element& x) const { return apply(x); }

  /// σ_max/σ_min of the representation; infinity when singular or non-square.
  double condition_number() const;
  bool is_bijective() const;

 private:
  Algebra source_;
  Algebra target_;
  Matrix rep_;
};

/// φ(p) = U_k·p_k·U_k* (or U_k·p_kᵀ·U_k* when transpose_first) placed in
/// target block block_permutation[k]. Claims {cortho, orthoiso}.
/// Throws NotUnitary.
LatticeMorphism make_morphism_from_unitary(const Element& unitary, bool transpose_first,
                                           std::vector<std::size_t> block_permutation = {});

/// Same as base except break_at ↦ 1 − base(break_at). Keeps base's claims.
LatticeMorphism make_fault_morphism(LatticeMorphism base, const Projection& break_at);

/// Records "unit", "orthocomplement", "join", "orthogonal_sum".
AuditReport cortho_audit(const LatticeMorphism& phi, const AuditOptions& options = {});

/// ‖φ((1−2p)q(1−2p)) − (1−2φ(p))φ(q)(1−2φ(p))‖. Throws TypeI2Present.
ResidualRecord equivariance_check(const LatticeMorphism& phi, const AuditOptions& options = {});

/// Φ(x) = Σ λ_i φ(p_i) on the self-adjoint parts, Φ(x+iy) = Φ(x) + iΦ(y).
Element spectral_apply(const LatticeMorphism& phi, const Element& x);

/// Matrix of spectral_apply on hermitian_basis(source). Linearity is not
/// assumed; additivity_probe tests it. Throws TypeI2Present.
LinearMapOnAlgebra spectral_extension(const LatticeMorphism& phi);

/// Records "additivity" (spectral definition applied to x, y and x+y for
/// non-commuting pairs) and "representation" (spectral definition vs the
/// assembled matrix).
AuditReport additivity_probe(const LatticeMorphism& phi, const LinearMapOnAlgebra& extension,
                             const AuditOptions& options = {});

/// Records "star", "square", "projection", "triple".
AuditReport jordan_audit(const LinearMapOnAlgebra& map, const AuditOptions& options = {});

struct WignerResult {
  /// Block k holds the reconstructed unitary from source block k onto target
  /// block block_permutation[k].
  Element unitary;
  bool antiunitary = false;  // every block antiunitary
  std::vector<bool> block_antiunitary;
  std::vector<std::size_t> block_permutation;
  /// min over validation of tr(φ(p)·ψ(p)) / max(rank φ(p), rank ψ(p))
  double fidelity = 0.0;
  double max_deviation = 0.0;
};

/// Reconstructs φ(p) = U·p·U* or U·p̄·U* from its values on the frame
/// projections. Throws NotOrthoiso and ReconstructionFailed (fidelity below
/// 1 − 1e-6; the message carries the diagnostics).
WignerResult wigner_reconstruct(const LatticeMorphism& phi, const AuditOptions& options = {});

/// Image of source-side p under the reconstructed implementation.
Projection wigner_apply(const WignerResult& w, const Algebra& target, const Projection& p);

/// Increasing chains: the diagonal flag, block-unit partial sums, and
/// options.samples random flags.
std::vector<std::vector<Projection>> sample_chains(const Algebra& algebra, const AuditOptions& options = {});

/// Records "monotone" (‖φ(e_{i+1})φ(e_i) − φ(e_i)‖) and "supremum"
/// (‖φ(e_m) − ∨_i φ(e_i)‖).
AuditReport join_continuity_audit(const LatticeMorphism& phi, const std::vector<std::vector<Projection>>& chains);

}  // namespace projlat
