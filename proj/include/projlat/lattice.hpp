#pragma once

#include <optional>

#include "projlat/algebra.hpp"

namespace projlat {

/// Projection onto ran(e) ∩ ran(f): spectral projection of e+f on the
/// eigenvalue window [2 − tol::kMeetWindow, 2].
Projection meet(const Projection& e, const Projection& f);
/// RP(e + f).
Projection join(const Projection& e, const Projection& f);
Projection orthocomplement(const Projection& e);
/// Unit of every block in which e is nonzero.
Projection central_cover(const Projection& e);

/// e ≤ f within tol: ‖f·e − e‖ ≤ tol.
bool leq(const Projection& e, const Projection& f, double tol);
/// Zero-ness decided by rank, not by norm.
bool is_zero(const Projection& e);

/// Murray–von Neumann equivalence: per-block ranks agree.
bool equivalent(const Projection& e, const Projection& f);
/// Partial isometry v with vv* = e and v*v = f, when e ∼ f.
std::optional<Element> equivalence_witness(const Projection& e, const Projection& f);

struct PositionReport {
  Projection meet_ef;
  Projection meet_e_perp_f;  // e ∧ (1−f)
  Projection meet_e_f_perp;  // (1−e) ∧ f
  Projection meet_perp_perp;
  bool in_position_p_prime = false;
  bool in_position_p = false;
};

PositionReport position_check(const Projection& e, const Projection& f);

}  // namespace projlat
