#include "projlat/lattice.hpp"

namespace projlat {

Projection meet(const Projection& e, const Projection& f) {
  require_same_algebra(e.algebra(), f.algebra());
  const Algebra& alg = e.algebra();
  Element out = Element::zero(alg);
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const Matrix s = e.block(k) + f.block(k);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.adjoint()));
    const auto& ev = es.eigenvalues();
    Eigen::Index first = ev.size();
    while (first > 0 && ev(first - 1) >= 2.0 - tol::kMeetWindow) --first;
    const auto frame = es.eigenvectors().rightCols(ev.size() - first);
    out.block(k) = frame * frame.adjoint();
  }
  return Projection::trusted(std::move(out));
}

Projection join(const Projection& e, const Projection& f) {
  require_same_algebra(e.algebra(), f.algebra());
  const Element sum = e.element() + f.element();
  // A nonzero sum of projections has norm ≥ 1; below that it is round-off.
  if (operator_norm(sum) < 0.5) return Projection::zero(e.algebra());
  return range_projection(sum);
}

Projection orthocomplement(const Projection& e) {
  return Projection::trusted(Element::identity(e.algebra()) - e.element());
}

Projection central_cover(const Projection& e) {
  const Algebra& alg = e.algebra();
  const auto ranks = block_ranks(e);
  Element out = Element::zero(alg);
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    if (ranks[k] > 0) out.block(k) = Matrix::Identity(alg.block_dim(k), alg.block_dim(k));
  }
  return Projection::trusted(std::move(out));
}

bool leq(const Projection& e, const Projection& f, double tol) {
  require_same_algebra(e.algebra(), f.algebra());
  return operator_norm(f.element() * e.element() - e.element()) <= tol;
}

bool is_zero(const Projection& e) { return total_rank(e) == 0; }

bool equivalent(const Projection& e, const Projection& f) {
  require_same_algebra(e.algebra(), f.algebra());
  return block_ranks(e) == block_ranks(f);
}

std::optional<Element> equivalence_witness(const Projection& e, const Projection& f) {
  if (!equivalent(e, f)) return std::nullopt;
  const Algebra& alg = e.algebra();
  Element v = Element::zero(alg);
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const Matrix fe = range_frame(e, k);
    const Matrix ff = range_frame(f, k);
    v.block(k) = fe * ff.adjoint();
  }
  return v;
}

PositionReport position_check(const Projection& e, const Projection& f) {
  require_same_algebra(e.algebra(), f.algebra());
  const Projection ep = orthocomplement(e);
  const Projection fp = orthocomplement(f);
  PositionReport r;
  r.meet_ef = meet(e, f);
  r.meet_e_perp_f = meet(e, fp);
  r.meet_e_f_perp = meet(ep, f);
  r.meet_perp_perp = meet(ep, fp);
  r.in_position_p_prime = is_zero(r.meet_e_perp_f) && is_zero(r.meet_e_f_perp);
  r.in_position_p = r.in_position_p_prime && is_zero(r.meet_ef) && is_zero(r.meet_perp_perp);
  return r;
}

}  // namespace projlat
