#pragma once

// Finitely additive measures on the projection lattice and their extension
// to (quasi-)linear functionals.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "projlat/algebra.hpp"
#include "projlat/audit.hpp"

namespace projlat {

/// Oracle ρ: P(A) → ℂ, additive on orthogonal pairs. Evaluation must be
/// deterministic and side-effect free.
struct Measure {
  Algebra algebra;
  std::function<Complex(const Projection&)> evaluate;
  /// sup_p |ρ(p)|
  double norm_bound = 1.0;
  bool is_real = true;
  /// Norm of the linear extension when it is known in closed form
  /// (trace norm of the density).
  std::optional<double> functional_norm;

  Complex operator()(const Projection& p) const { return evaluate(p); }
};

/// μ: A → ℂ, linear on commuting families and split over real/imaginary parts.
struct QuasiLinearFunctional {
  std::function<Complex(const Element&)> evaluate;
  double norm = 0.0;

  Complex operator()(const Element& x) const { return evaluate(x); }
};

struct AdditivityAudit {
  double worst = 0.0;
  int pairs = 0;
  std::optional<std::pair<Projection, Projection>> witness;
};

/// |ρ(e+f) − ρ(e) − ρ(f)| over seeded orthogonal pairs plus every frame
/// projection against its complement.
AdditivityAudit additivity_audit(const Measure& rho, const AuditOptions& options = {});

/// ε_meas = 1e-9 · norm_bound
double measure_tolerance(const Measure& rho);

/// x = Σ_{n≥1} 2⁻ⁿ eₙ for 0 ≤ x ≤ 1; returns e_1..e_depth where eₙ is the
/// spectral projection on eigenvalues whose n-th binary digit is 1.
/// Throws NotSelfAdjoint / SpectrumOutOfRange.
std::vector<Projection> dyadic_decomposition(const Element& x, int depth);

/// μ(x) = Σ λ_i ρ(p_i) over the spectral resolution of each self-adjoint
/// part, with μ(x+iy) = μ(x) + iμ(y). Runs additivity_audit first and throws
/// NotAdditive with the witness pair when it fails.
QuasiLinearFunctional extend_measure(const Measure& rho, const AuditOptions& options = {});

/// The same value for self-adjoint x reached through the dyadic expansion of
/// the rescaled x instead of its spectral resolution.
Complex dyadic_functional_value(const Measure& rho, const Element& x, int depth);

/// Per block, the n² projections onto e_i, (e_i+e_j)/√2, (e_i+i·e_j)/√2.
std::vector<Projection> reconstruction_family(const Algebra& algebra);

struct DensityReconstruction {
  Element density;
  /// max |tr(T·p) − ρ(p)| over the validation sample
  double residual = 0.0;
  std::optional<Projection> worst_projection;
  int validation_size = 0;
};

/// Least-squares T with tr(T·p) = ρ(p) over reconstruction_family.
/// A large residual is a verdict, not an error.
DensityReconstruction reconstruct_density(const Measure& rho, const Algebra& algebra, std::uint64_t seed = 0,
                                          int validation = 200);

Measure make_density_measure(const Element& density);
/// ρ(p) = tr(p) / Σ n_k
Measure make_tracial_measure(const Algebra& algebra);
/// Additive, bounded, and not the restriction of any linear functional.
/// Throws WrongAlgebra unless algebra is M₂.
Measure make_m2_nonlinear_measure(std::uint64_t seed, const Algebra& algebra = Algebra({2}));

struct LipschitzAudit {
  double worst_ratio = 0.0;
  int evaluated = 0;
  std::optional<std::pair<Projection, Projection>> witness;
};

/// Worst |μ(e) − μ(f)| / (‖μ‖·‖e − f‖) over pairs with ‖e − f‖ > 1e-6.
LipschitzAudit lipschitz_audit(const QuasiLinearFunctional& mu,
                               const std::vector<std::pair<Projection, Projection>>& samples);

}  // namespace projlat
