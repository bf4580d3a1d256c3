#pragma once

// Canonical forms for a pair of projections. A pair (e, f) splits into four
// commuting corners plus a generic part in which e₀ and f₀ sit in position p;
// on the generic part a unitary W brings the pair to the 2×2 form
//
//   e ↦ [[1, 0], [0, 0]]     f ↦ [[a, √(a−a²)], [√(a−a²), 1−a]]
//
// one 2×2 block per eigenvalue a of e·f·e on ran(e).

#include <utility>
#include <vector>

#include "projlat/algebra.hpp"

namespace projlat {

struct TwoProjDecomposition {
  Projection corner_ef;         // e ∧ f
  Projection corner_ef_perp;    // e ∧ (1−f)
  Projection corner_perp_f;     // (1−e) ∧ f
  Projection corner_perp_perp;  // (1−e) ∧ (1−f)
  Projection generic_e;         // e₀ = e − e∧f − e∧(1−f)
  Projection generic_f;         // f₀ = f − e∧f − (1−e)∧f
  Projection generic_support;   // e₀ ∨ f₀ = 1 − (sum of the corners)
};

TwoProjDecomposition five_part_decomposition(const Projection& e, const Projection& f);

struct HalmosForm {
  /// W with W*W = WW* = corner and W·e·W* = B·(⊕ [[1,0],[0,0]])·B*.
  Element conjugating_unitary;
  /// Increasing within each block; blocks concatenated in order.
  std::vector<double> a_values;
  /// m_k: the generic corner of block k is 2·m_k dimensional.
  std::vector<int> dimension_split;
  Projection corner;
  /// Per block, an orthonormal n_k × 2m_k basis of the corner; the 2×2
  /// pattern is expressed in these coordinates. Identity when the corner
  /// is the whole block.
  std::vector<Matrix> corner_basis;
};

/// Pair must be in position p inside `corner` (e, f ≤ corner and all four
/// meets relative to `corner` vanish). Throws NotInPositionP.
HalmosForm halmos_form(const Projection& e, const Projection& f, const Projection& corner);
/// Uses corner = e ∨ f.
HalmosForm halmos_form(const Projection& e, const Projection& f);

/// The canonical pair B·(⊕ pattern)·B* inside the corner.
std::pair<Element, Element> canonical_pair(const HalmosForm& form);
/// W*·(canonical pair)·W, which reproduces the input pair.
std::pair<Element, Element> reconstruct_pair(const HalmosForm& form);

/// Single-block pair on C^{2m} in the canonical 2×2 pattern, one block per a.
std::pair<Projection, Projection> halmos_pair(const std::vector<double>& a_values);

struct IsoclinicDiagnostics {
  /// 2×2 blocks for which a phase was computed.
  int blocks = 0;
  /// Blocks where the printed arccos argument √(1/a−1)(λ−½)/(λ−λ²) lies
  /// outside [−1, 1].
  int printed_out_of_range = 0;
  /// Blocks where the printed argument is admissible but gives a phase
  /// different (by > 1e-9) from the constraint-derived one.
  int printed_disagreements = 0;
  double max_printed_discrepancy = 0.0;
};

struct IsoclinicResult {
  Projection g;
  double alpha = 0.0;
  IsoclinicDiagnostics diagnostics;
};

/// Projection g isoclinic to both e and f with angle α = ½·arcsin‖e−f‖.
/// Throws NormTooLarge when ‖e−f‖ ≥ 1 and NonzeroMeet when e ∧ f ≠ 0.
IsoclinicResult isoclinic_projection(const Projection& e, const Projection& f);

struct IsoclinicResiduals {
  double efe = 0.0;  // ‖e·f·e − cos²α·e‖
  double fef = 0.0;  // ‖f·e·f − cos²α·f‖
  double worst() const { return std::max(efe, fef); }
};

IsoclinicResiduals isoclinic_residuals(const Projection& e, const Projection& f, double alpha);

struct Halving {
  Projection p;
  Projection q;
  Projection r;
};

/// e = p + q + r with p ∼ q orthogonal and r abelian (rank ≤ 1 per block).
Halving halve(const Projection& e);

}  // namespace projlat
