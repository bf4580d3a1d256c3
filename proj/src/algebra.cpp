#include "projlat/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace projlat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NotAProjection: return "NotAProjection";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotInPositionP: return "NotInPositionP";
    case ErrorCode::NormTooLarge: return "NormTooLarge";
    case ErrorCode::NonzeroMeet: return "NonzeroMeet";
    case ErrorCode::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::NotAdditive: return "NotAdditive";
    case ErrorCode::WrongAlgebra: return "WrongAlgebra";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::TypeI2Present: return "TypeI2Present";
    case ErrorCode::NotOrthoiso: return "NotOrthoiso";
    case ErrorCode::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorCode::Usage, "algebra needs at least one block");
  for (int n : dims_) {
    if (n < 1) throw Error(ErrorCode::Usage, "block dimension must be >= 1, got " + std::to_string(n));
  }
}

int Algebra::total_dim() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), 0, [](int acc, int n) { return acc + n * n; });
}

int Algebra::max_block_dim() const noexcept {
  return dims_.empty() ? 0 : *std::max_element(dims_.begin(), dims_.end());
}

int Algebra::rep_dim() const noexcept { return std::accumulate(dims_.begin(), dims_.end(), 0); }

bool Algebra::has_type_I2_summand() const noexcept {
  return std::find(dims_.begin(), dims_.end(), 2) != dims_.end();
}

void require_same_algebra(const Algebra& a, const Algebra& b) {
  if (!(a == b)) throw Error(ErrorCode::AlgebraMismatch, "operands live in different algebras");
}

// ---------------------------------------------------------------- Element

Element::Element(Algebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.num_blocks()) {
    throw Error(ErrorCode::AlgebraMismatch, "block count does not match algebra");
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = algebra_.block_dim(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      std::ostringstream os;
      os << "block " << k << " has shape " << blocks_[k].rows() << "x" << blocks_[k].cols()
         << ", expected " << n << "x" << n;
      throw Error(ErrorCode::AlgebraMismatch, os.str());
    }
  }
}

Element Element::zero(const Algebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(Matrix::Zero(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::identity(const Algebra& algebra) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(Matrix::Identity(n, n));
  return Element(algebra, std::move(blocks));
}

Element Element::from_matrix(Matrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::AlgebraMismatch, "matrix is not square");
  Algebra alg({static_cast<int>(m.rows())});
  return Element(alg, {std::move(m)});
}

Element Element::embed(const Algebra& algebra, std::size_t k, Matrix m) {
  Element out = zero(algebra);
  out.block(k) = std::move(m);
  return Element(algebra, out.blocks_);
}

Element Element::adjoint() const {
  Element out = *this;
  for (auto& b : out.blocks_) b = b.adjoint().eval();
  return out;
}

Element Element::transpose() const {
  Element out = *this;
  for (auto& b : out.blocks_) b = b.transpose().eval();
  return out;
}

Element Element::conjugate() const {
  Element out = *this;
  for (auto& b : out.blocks_) b = b.conjugate().eval();
  return out;
}

Element Element::real_part() const {
  Element out = *this;
  for (auto& b : out.blocks_) b = (0.5 * (b + b.adjoint())).eval();
  return out;
}

Element Element::imag_part() const {
  Element out = *this;
  for (auto& b : out.blocks_) b = ((b - b.adjoint()) / Complex(0.0, 2.0)).eval();
  return out;
}

Complex Element::trace() const {
  Complex t = 0.0;
  for (const auto& b : blocks_) t += b.trace();
  return t;
}

double Element::hs_norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

Element& Element::operator+=(const Element& rhs) {
  require_same_algebra(algebra_, rhs.algebra_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += rhs.blocks_[k];
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  require_same_algebra(algebra_, rhs.algebra_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= rhs.blocks_[k];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator-(Element a) { return a *= -1.0; }
Element operator*(Complex s, Element a) { return a *= s; }
Element operator*(double s, Element a) { return a *= Complex(s, 0.0); }

Element operator*(const Element& a, const Element& b) {
  require_same_algebra(a.algebra(), b.algebra());
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (std::size_t k = 0; k < a.blocks().size(); ++k) blocks.push_back(a.block(k) * b.block(k));
  return Element(a.algebra(), std::move(blocks));
}

// ---------------------------------------------------------------- Projection

namespace {

Element symmetrized(Element p) {
  for (std::size_t k = 0; k < p.blocks().size(); ++k) {
    Matrix& b = p.block(k);
    b = (0.5 * (b + b.adjoint())).eval();
  }
  return p;
}

}  // namespace

Projection::Projection(Element p) {
  const double eps = p.algebra().eps_proj();
  const double skew = operator_norm(p - p.adjoint());
  const double idem = operator_norm(p * p - p);
  if (skew > eps || idem > eps) {
    std::ostringstream os;
    os << "‖p−p*‖=" << skew << ", ‖p²−p‖=" << idem << " exceed ε_proj=" << eps;
    throw Error(ErrorCode::NotAProjection, os.str());
  }
  p_ = symmetrized(std::move(p));
}

Projection Projection::trusted(Element p) {
  Projection out;
  out.p_ = symmetrized(std::move(p));
  return out;
}

Projection Projection::zero(const Algebra& algebra) { return trusted(Element::zero(algebra)); }
Projection Projection::unit(const Algebra& algebra) { return trusted(Element::identity(algebra)); }

Projection Projection::from_frame(const Algebra& algebra, std::size_t k, const Matrix& frame) {
  return trusted(Element::embed(algebra, k, frame * frame.adjoint()));
}

// ---------------------------------------------------------------- spectral calculus

double operator_norm(const Element& x) {
  double best = 0.0;
  for (const auto& b : x.blocks()) {
    if (b.size() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(b);
    best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

bool is_self_adjoint(const Element& x, double tol) { return operator_norm(x - x.adjoint()) <= tol; }

bool is_unitary(const Element& u, double tol) {
  const Element one = Element::identity(u.algebra());
  return operator_norm(u.adjoint() * u - one) <= tol && operator_norm(u * u.adjoint() - one) <= tol;
}

SpectralResolution hermitian_spectral(const Element& x, double cluster_tol) {
  const double norm = operator_norm(x);
  const double skew = operator_norm(x - x.adjoint());
  if (skew > x.algebra().eps_proj() * std::max(1.0, norm)) {
    std::ostringstream os;
    os << "‖x−x*‖=" << skew;
    throw Error(ErrorCode::NotSelfAdjoint, os.str());
  }
  if (cluster_tol < 0.0) cluster_tol = tol::kSpectral * norm;

  const Algebra& alg = x.algebra();
  struct Eig {
    double value;
    std::size_t block;
    Eigen::Index column;
  };
  std::vector<Eig> all;
  std::vector<Matrix> vectors;
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const Matrix h = 0.5 * (x.block(k) + x.block(k).adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    vectors.push_back(es.eigenvectors());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) all.push_back({es.eigenvalues()(i), k, i});
  }
  std::stable_sort(all.begin(), all.end(), [](const Eig& a, const Eig& b) {
    return std::tie(a.value, a.block, a.column) < std::tie(b.value, b.block, b.column);
  });

  SpectralResolution out;
  std::size_t start = 0;
  while (start < all.size()) {
    std::size_t end = start + 1;
    while (end < all.size() && all[end].value - all[end - 1].value <= cluster_tol) ++end;
    double mean = 0.0;
    Element p = Element::zero(alg);
    for (std::size_t i = start; i < end; ++i) {
      mean += all[i].value;
      const auto v = vectors[all[i].block].col(all[i].column);
      p.block(all[i].block) += v * v.adjoint();
    }
    out.eigenvalues.push_back(mean / static_cast<double>(end - start));
    out.projections.push_back(Projection::trusted(std::move(p)));
    start = end;
  }
  return out;
}

PolarDecomposition polar_decomposition(const Element& x) {
  const double threshold = tol::kRank * operator_norm(x);
  PolarDecomposition out{Element::zero(x.algebra()), Element::zero(x.algebra())};
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(x.block(k), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > threshold) ++r;
    const Matrix& u = svd.matrixU();
    const Matrix& v = svd.matrixV();
    out.u.block(k) = u.leftCols(r) * v.leftCols(r).adjoint();
    out.h.block(k) = v * s.cast<Complex>().asDiagonal() * v.adjoint();
  }
  return out;
}

Projection range_projection(const Element& x) {
  const double threshold = tol::kRank * operator_norm(x);
  Element p = Element::zero(x.algebra());
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(x.block(k), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > threshold) ++r;
    const auto vr = svd.matrixV().leftCols(r);
    p.block(k) = vr * vr.adjoint();
  }
  return Projection::trusted(std::move(p));
}

Projection left_projection(const Element& x) { return range_projection(x.adjoint()); }

namespace {

std::vector<int> ranks_above(const Element& x, double threshold) {
  std::vector<int> ranks;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(b);
    const auto& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > threshold) ++r;
    ranks.push_back(r);
  }
  return ranks;
}

}  // namespace

std::vector<int> block_ranks(const Element& x) { return ranks_above(x, tol::kRank * operator_norm(x)); }

std::vector<int> block_ranks(const Projection& p) { return ranks_above(p, tol::kRank); }

int total_rank(const Element& x) {
  const auto r = block_ranks(x);
  return std::accumulate(r.begin(), r.end(), 0);
}

int total_rank(const Projection& p) {
  const auto r = block_ranks(p);
  return std::accumulate(r.begin(), r.end(), 0);
}

Projection nearest_projection(const Element& x) {
  Element out = Element::zero(x.algebra());
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x.block(k) + x.block(k).adjoint()));
    const auto& ev = es.eigenvalues();
    Eigen::Index first = 0;
    while (first < ev.size() && ev(first) <= 0.5) ++first;
    const auto frame = es.eigenvectors().rightCols(ev.size() - first);
    out.block(k) = frame * frame.adjoint();
  }
  return Projection::trusted(std::move(out));
}

Matrix range_frame(const Projection& p, std::size_t k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.block(k));
  const auto& ev = es.eigenvalues();
  Eigen::Index first = 0;
  while (first < ev.size() && ev(first) <= 0.5) ++first;
  return es.eigenvectors().rightCols(ev.size() - first);
}

}  // namespace projlat
