#include "projlat/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace projlat {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

int Rng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

namespace {

Matrix ginibre(int n, Rng& rng) {
  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  return g;
}

Matrix hermitian_block(int n, Rng& rng) {
  const Matrix g = ginibre(n, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

Matrix random_unitary_matrix(int n, Rng& rng) {
  const Matrix g = ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double m = std::abs(d);
    if (m > 0.0) q.col(i) *= d / m;
  }
  return q;
}

Element random_unitary(const Algebra& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(random_unitary_matrix(n, rng));
  return Element(algebra, std::move(blocks));
}

Element random_hermitian(const Algebra& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(hermitian_block(n, rng));
  Element h(algebra, std::move(blocks));
  const double norm = operator_norm(h);
  return norm > 0.0 ? (1.0 / norm) * h : h;
}

Element random_hermitian_separated(const Algebra& algebra, Rng& rng, double min_gap) {
  for (;;) {
    Element h = random_hermitian(algebra, rng);
    std::vector<double> ev;
    for (const auto& b : h.blocks()) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
    }
    std::sort(ev.begin(), ev.end());
    bool ok = true;
    for (std::size_t i = 1; i < ev.size(); ++i) ok = ok && (ev[i] - ev[i - 1] >= min_gap);
    if (ok) return h;
  }
}

Element random_element(const Algebra& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(ginibre(n, rng));
  Element x(algebra, std::move(blocks));
  const double norm = operator_norm(x);
  return norm > 0.0 ? (1.0 / norm) * x : x;
}

Element random_density(const Algebra& algebra, Rng& rng) {
  Element g = random_element(algebra, rng);
  Element rho = g * g.adjoint();
  const double t = rho.trace().real();
  return (1.0 / t) * rho;
}

Projection random_projection(const Algebra& algebra, Rng& rng) {
  std::vector<int> ranks;
  for (int n : algebra.block_dims()) ranks.push_back(rng.uniform_int(0, n));
  return random_projection(algebra, ranks, rng);
}

Projection random_projection(const Algebra& algebra, const std::vector<int>& ranks, Rng& rng) {
  if (ranks.size() != algebra.num_blocks()) throw Error(ErrorCode::Usage, "rank list does not match block count");
  Element p = Element::zero(algebra);
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    const int r = std::clamp(ranks[k], 0, n);
    const Matrix u = random_unitary_matrix(n, rng);
    p.block(k) = u.leftCols(r) * u.leftCols(r).adjoint();
  }
  return Projection::trusted(std::move(p));
}

std::pair<Projection, Projection> random_orthogonal_pair(const Algebra& algebra, Rng& rng) {
  Element e = Element::zero(algebra);
  Element f = Element::zero(algebra);
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    const Matrix u = random_unitary_matrix(n, rng);
    const int re = rng.uniform_int(0, n);
    const int rf = rng.uniform_int(0, n - re);
    e.block(k) = u.leftCols(re) * u.leftCols(re).adjoint();
    f.block(k) = u.middleCols(re, rf) * u.middleCols(re, rf).adjoint();
  }
  return {Projection::trusted(std::move(e)), Projection::trusted(std::move(f))};
}

Projection random_perturbation(const Projection& e, double scale, Rng& rng) {
  const Element h = random_hermitian(e.algebra(), rng);
  Element v = Element::zero(e.algebra());
  for (std::size_t k = 0; k < h.blocks().size(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.block(k));
    const Vector phases = (Complex(0.0, scale) * es.eigenvalues().cast<Complex>()).array().exp();
    v.block(k) = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }
  return Projection::trusted(v * e.element() * v.adjoint());
}

std::vector<Projection> frame_projections(const Algebra& algebra) {
  std::vector<Projection> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    for (int i = 0; i < n; ++i) {
      Matrix v = Matrix::Zero(n, 1);
      v(i, 0) = 1.0;
      out.push_back(Projection::from_frame(algebra, k, v));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Matrix plus = Matrix::Zero(n, 1);
        plus(i, 0) = r;
        plus(j, 0) = r;
        out.push_back(Projection::from_frame(algebra, k, plus));
        Matrix imag = Matrix::Zero(n, 1);
        imag(i, 0) = r;
        imag(j, 0) = Complex(0.0, r);
        out.push_back(Projection::from_frame(algebra, k, imag));
      }
    }
    for (int m = 2; m < n; ++m) {
      out.push_back(Projection::from_frame(algebra, k, Matrix::Identity(n, n).leftCols(m)));
    }
  }
  return out;
}

Algebra random_algebra(Rng& rng, int min_n, int max_n, int max_blocks, bool exclude_two) {
  if (min_n < 1 || max_n < min_n || max_blocks < 1 || (exclude_two && min_n == 2 && max_n == 2)) {
    throw Error(ErrorCode::Usage, "empty range of block sizes");
  }
  const int blocks = rng.uniform_int(1, max_blocks);
  std::vector<int> dims;
  while (static_cast<int>(dims.size()) < blocks) {
    const int n = rng.uniform_int(min_n, max_n);
    if (exclude_two && n == 2) continue;
    dims.push_back(n);
  }
  return Algebra(std::move(dims));
}

}  // namespace projlat
