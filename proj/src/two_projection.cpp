#include "projlat/two_projection.hpp"

#include <cmath>
#include <sstream>

#include "projlat/lattice.hpp"

namespace projlat {

namespace {

// a-values this close to 0 or 1 belong to the commuting corners.
constexpr double kDegenerateA = 1e-9;

void normalize_phase(Eigen::Ref<Matrix> v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index best = 0;
    v.col(j).cwiseAbs().maxCoeff(&best);
    const Complex pivot = v(best, j);
    if (std::abs(pivot) > 0.0) v.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
}

Matrix pattern_e(int m) {
  Matrix out = Matrix::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) out(2 * i, 2 * i) = 1.0;
  return out;
}

Matrix pattern_f(const double* a, int m) {
  Matrix out = Matrix::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    const double off = std::sqrt(std::max(0.0, a[i] - a[i] * a[i]));
    out(2 * i, 2 * i) = a[i];
    out(2 * i, 2 * i + 1) = off;
    out(2 * i + 1, 2 * i) = off;
    out(2 * i + 1, 2 * i + 1) = 1.0 - a[i];
  }
  return out;
}

[[noreturn]] void not_in_position(const std::string& why) { throw Error(ErrorCode::NotInPositionP, why); }

}  // namespace

TwoProjDecomposition five_part_decomposition(const Projection& e, const Projection& f) {
  require_same_algebra(e.algebra(), f.algebra());
  const Projection ep = orthocomplement(e);
  const Projection fp = orthocomplement(f);
  TwoProjDecomposition d;
  d.corner_ef = meet(e, f);
  d.corner_ef_perp = meet(e, fp);
  d.corner_perp_f = meet(ep, f);
  d.corner_perp_perp = meet(ep, fp);
  d.generic_e = nearest_projection(e.element() - d.corner_ef.element() - d.corner_ef_perp.element());
  d.generic_f = nearest_projection(f.element() - d.corner_ef.element() - d.corner_perp_f.element());
  d.generic_support = nearest_projection(Element::identity(e.algebra()) - d.corner_ef.element() -
                                         d.corner_ef_perp.element() - d.corner_perp_f.element() -
                                         d.corner_perp_perp.element());
  return d;
}

HalmosForm halmos_form(const Projection& e, const Projection& f) { return halmos_form(e, f, join(e, f)); }

HalmosForm halmos_form(const Projection& e, const Projection& f, const Projection& corner) {
  require_same_algebra(e.algebra(), f.algebra());
  require_same_algebra(e.algebra(), corner.algebra());
  const Algebra& alg = e.algebra();
  constexpr double kContain = 1e-8;
  if (!leq(e, corner, kContain) || !leq(f, corner, kContain)) not_in_position("pair is not inside the corner");

  const Projection corner_minus_f = Projection::trusted(corner.element() - f.element());
  const Projection corner_minus_e = Projection::trusted(corner.element() - e.element());
  if (!is_zero(meet(e, f))) not_in_position("e ∧ f ≠ 0");
  if (!is_zero(meet(e, corner_minus_f))) not_in_position("e ∧ (1−f) ≠ 0");
  if (!is_zero(meet(corner_minus_e, f))) not_in_position("(1−e) ∧ f ≠ 0");

  const auto re = block_ranks(e);
  const auto rf = block_ranks(f);
  const auto rs = block_ranks(corner);

  HalmosForm form;
  form.corner = corner;
  form.conjugating_unitary = Element::zero(alg);

  // x = (1−e)·f·e relative to the corner; its polar part is the matrix unit
  // carrying ran(e) onto ran(corner − e).
  const Element x = corner_minus_e.element() * f.element() * e.element();
  const PolarDecomposition polar = polar_decomposition(x);

  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int n = alg.block_dim(k);
    if (re[k] != rf[k] || 2 * re[k] != rs[k]) {
      std::ostringstream os;
      os << "block " << k << ": ranks e=" << re[k] << " f=" << rf[k] << " corner=" << rs[k];
      not_in_position(os.str());
    }
    const int m = re[k];
    form.dimension_split.push_back(m);
    if (m == 0) {
      form.corner_basis.push_back(Matrix::Zero(n, 0));
      continue;
    }

    const Matrix frame = range_frame(e, k);
    Eigen::SelfAdjointEigenSolver<Matrix> es(frame.adjoint() * f.block(k) * frame);
    const auto& a = es.eigenvalues();
    for (int i = 0; i < m; ++i) {
      if (a(i) <= kDegenerateA || a(i) >= 1.0 - kDegenerateA) {
        std::ostringstream os;
        os << "block " << k << ": degenerate a-value " << a(i);
        not_in_position(os.str());
      }
      form.a_values.push_back(a(i));
    }
    Matrix v = frame * es.eigenvectors();
    normalize_phase(v);
    const Matrix w = polar.u.block(k) * v;

    Matrix q(n, 2 * m);
    for (int i = 0; i < m; ++i) {
      q.col(2 * i) = v.col(i);
      q.col(2 * i + 1) = w.col(i);
    }

    Matrix basis;
    if (rs[k] == n) {
      basis = Matrix::Identity(n, n);
    } else {
      basis = range_frame(corner, k);
      normalize_phase(basis);
    }
    form.conjugating_unitary.block(k) = basis * q.adjoint();
    form.corner_basis.push_back(std::move(basis));
  }
  return form;
}

std::pair<Element, Element> canonical_pair(const HalmosForm& form) {
  const Algebra& alg = form.corner.algebra();
  Element ce = Element::zero(alg);
  Element cf = Element::zero(alg);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int m = form.dimension_split[k];
    if (m == 0) continue;
    const Matrix& b = form.corner_basis[k];
    ce.block(k) = b * pattern_e(m) * b.adjoint();
    cf.block(k) = b * pattern_f(form.a_values.data() + offset, m) * b.adjoint();
    offset += static_cast<std::size_t>(m);
  }
  return {ce, cf};
}

std::pair<Element, Element> reconstruct_pair(const HalmosForm& form) {
  const auto [ce, cf] = canonical_pair(form);
  const Element& w = form.conjugating_unitary;
  return {w.adjoint() * ce * w, w.adjoint() * cf * w};
}

std::pair<Projection, Projection> halmos_pair(const std::vector<double>& a_values) {
  const int m = static_cast<int>(a_values.size());
  return {Projection::trusted(Element::from_matrix(pattern_e(m))),
          Projection::trusted(Element::from_matrix(pattern_f(a_values.data(), m)))};
}

IsoclinicResult isoclinic_projection(const Projection& e, const Projection& f) {
  require_same_algebra(e.algebra(), f.algebra());
  const double norm = operator_norm(e.element() - f.element());
  if (norm >= 1.0 - kDegenerateA) {
    std::ostringstream os;
    os << "‖e−f‖ = " << norm;
    throw Error(ErrorCode::NormTooLarge, os.str());
  }
  if (!is_zero(meet(e, f))) throw Error(ErrorCode::NonzeroMeet, "e ∧ f ≠ 0");

  IsoclinicResult out;
  out.alpha = 0.5 * std::asin(norm);
  const double lambda = std::cos(out.alpha) * std::cos(out.alpha);
  const double lambda_var = lambda - lambda * lambda;
  const double off = std::sqrt(std::max(0.0, lambda_var));

  const HalmosForm form = halmos_form(e, f, join(e, f));
  const Algebra& alg = e.algebra();
  Element g = Element::zero(alg);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const int m = form.dimension_split[k];
    if (m == 0) continue;
    Matrix canon = Matrix::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
      const double a = form.a_values[offset + static_cast<std::size_t>(i)];
      Complex omega = 1.0;
      if (lambda_var > 0.0) {
        // ⟨f-vector, g-vector⟩ must have squared modulus λ; that pins Re ω.
        const double c = std::sqrt(1.0 / a - 1.0) * (lambda - 0.5) / std::sqrt(lambda_var);
        omega = std::polar(1.0, std::acos(std::clamp(c, -1.0, 1.0)));
        const double printed = std::sqrt(1.0 / a - 1.0) * (lambda - 0.5) / lambda_var;
        ++out.diagnostics.blocks;
        if (std::abs(printed) > 1.0) {
          ++out.diagnostics.printed_out_of_range;
        } else {
          const double d = std::abs(std::polar(1.0, std::acos(printed)) - omega);
          out.diagnostics.max_printed_discrepancy = std::max(out.diagnostics.max_printed_discrepancy, d);
          if (d > 1e-9) ++out.diagnostics.printed_disagreements;
        }
      }
      canon(2 * i, 2 * i) = lambda;
      canon(2 * i, 2 * i + 1) = off * omega;
      canon(2 * i + 1, 2 * i) = off * std::conj(omega);
      canon(2 * i + 1, 2 * i + 1) = 1.0 - lambda;
    }
    const Matrix& basis = form.corner_basis[k];
    const Matrix& w = form.conjugating_unitary.block(k);
    g.block(k) = w.adjoint() * basis * canon * basis.adjoint() * w;
    offset += static_cast<std::size_t>(m);
  }
  out.g = Projection::trusted(std::move(g));
  return out;
}

IsoclinicResiduals isoclinic_residuals(const Projection& e, const Projection& f, double alpha) {
  const double lambda = std::cos(alpha) * std::cos(alpha);
  const Element& pe = e.element();
  const Element& pf = f.element();
  return {operator_norm(pe * pf * pe - lambda * pe), operator_norm(pf * pe * pf - lambda * pf)};
}

Halving halve(const Projection& e) {
  const Algebra& alg = e.algebra();
  Halving h{Projection::zero(alg), Projection::zero(alg), Projection::zero(alg)};
  Element p = Element::zero(alg);
  Element q = Element::zero(alg);
  Element r = Element::zero(alg);
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const Matrix frame = range_frame(e, k);
    const Eigen::Index half = frame.cols() / 2;
    const auto fp = frame.leftCols(half);
    const auto fq = frame.middleCols(half, half);
    const auto fr = frame.rightCols(frame.cols() - 2 * half);
    p.block(k) = fp * fp.adjoint();
    q.block(k) = fq * fq.adjoint();
    r.block(k) = fr * fr.adjoint();
  }
  h.p = Projection::trusted(std::move(p));
  h.q = Projection::trusted(std::move(q));
  h.r = Projection::trusted(std::move(r));
  return h;
}

}  // namespace projlat
