#include "projlat/dye.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "projlat/lattice.hpp"
#include "projlat/random.hpp"

namespace projlat {

namespace {

constexpr double kFaultMatch = 1e-9;
constexpr double kProbeGap = 1e-6;

void require_no_I2(const Algebra& source) {
  if (source.has_type_I2_summand()) throw Error(ErrorCode::TypeI2Present, "source algebra has an M2 block");
}

void require_cortho(const LatticeMorphism& phi) {
  if (!phi.claims.cortho) throw Error(ErrorCode::Usage, "morphism does not claim COrtho");
}

Element symmetry(const Projection& p) { return Element::identity(p.algebra()) - 2.0 * p.element(); }

}  // namespace

// ---------------------------------------------------------------- coordinates

std::vector<Element> hermitian_basis(const Algebra& algebra) {
  std::vector<Element> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    for (int i = 0; i < n; ++i) {
      Matrix m = Matrix::Zero(n, n);
      m(i, i) = 1.0;
      out.push_back(Element::embed(algebra, k, std::move(m)));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Matrix sym = Matrix::Zero(n, n);
        sym(i, j) = r;
        sym(j, i) = r;
        out.push_back(Element::embed(algebra, k, std::move(sym)));
        Matrix anti = Matrix::Zero(n, n);
        anti(i, j) = Complex(0.0, r);
        anti(j, i) = Complex(0.0, -r);
        out.push_back(Element::embed(algebra, k, std::move(anti)));
      }
    }
  }
  return out;
}

// Same order as hermitian_basis, without materializing it.
Vector coordinates(const Element& x) {
  const Algebra& alg = x.algebra();
  Vector c(alg.total_dim());
  Eigen::Index at = 0;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
    const Matrix& b = x.block(k);
    const int n = alg.block_dim(k);
    for (int i = 0; i < n; ++i) c(at++) = b(i, i);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        c(at++) = r * (b(j, i) + b(i, j));
        c(at++) = Complex(0.0, r) * (b(j, i) - b(i, j));
      }
    }
  }
  return c;
}

Element from_coordinates(const Algebra& algebra, const Vector& c) {
  if (c.size() != algebra.total_dim()) throw Error(ErrorCode::AlgebraMismatch, "coordinate vector has wrong length");
  Element x = Element::zero(algebra);
  Eigen::Index at = 0;
  const double r = 1.0 / std::sqrt(2.0);
  const Complex ir(0.0, r);
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    Matrix& b = x.block(k);
    const int n = algebra.block_dim(k);
    for (int i = 0; i < n; ++i) b(i, i) = c(at++);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Complex s = c(at++);
        const Complex a = c(at++);
        b(i, j) = r * s + ir * a;
        b(j, i) = r * s - ir * a;
      }
    }
  }
  return x;
}

// ---------------------------------------------------------------- LinearMapOnAlgebra

LinearMapOnAlgebra::LinearMapOnAlgebra(Algebra source, Algebra target, Matrix representation)
    : source_(std::move(source)), target_(std::move(target)), rep_(std::move(representation)) {
  if (rep_.rows() != target_.total_dim() || rep_.cols() != source_.total_dim()) {
    throw Error(ErrorCode::AlgebraMismatch, "representation shape does not match the algebras");
  }
}

LinearMapOnAlgebra LinearMapOnAlgebra::from_function(const Algebra& source, const Algebra& target,
                                                     const std::function<Element(const Element&)>& f) {
  const auto basis = hermitian_basis(source);
  Matrix rep(target.total_dim(), source.total_dim());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const Element y = f(basis[b]);
    require_same_algebra(y.algebra(), target);
    rep.col(static_cast<Eigen::Index>(b)) = coordinates(y);
  }
  return LinearMapOnAlgebra(source, target, std::move(rep));
}

Element LinearMapOnAlgebra::apply(const Element& x) const {
  require_same_algebra(x.algebra(), source_);
  return from_coordinates(target_, rep_ * coordinates(x));
}

double LinearMapOnAlgebra::condition_number() const {
  if (rep_.rows() != rep_.cols() || rep_.size() == 0) return std::numeric_limits<double>::infinity();
  const auto s = Eigen::JacobiSVD<Matrix>(rep_).singularValues();
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

bool LinearMapOnAlgebra::is_bijective() const { return condition_number() < 1e10; }

// ---------------------------------------------------------------- generators

LatticeMorphism make_morphism_from_unitary(const Element& unitary, bool transpose_first,
                                           std::vector<std::size_t> block_permutation) {
  const Algebra& source = unitary.algebra();
  if (!is_unitary(unitary, source.eps_proj() * 10.0)) throw Error(ErrorCode::NotUnitary, "U*U ≠ 1");
  const std::size_t nb = source.num_blocks();
  if (block_permutation.empty()) {
    block_permutation.resize(nb);
    std::iota(block_permutation.begin(), block_permutation.end(), std::size_t{0});
  }
  if (block_permutation.size() != nb) throw Error(ErrorCode::Usage, "block permutation has wrong length");
  std::vector<int> target_dims(nb, 0);
  for (std::size_t k = 0; k < nb; ++k) {
    const std::size_t t = block_permutation[k];
    if (t >= nb || target_dims[t] != 0) throw Error(ErrorCode::Usage, "block permutation is not a permutation");
    target_dims[t] = source.block_dim(k);
  }

  LatticeMorphism phi;
  phi.source = source;
  phi.target = Algebra(target_dims);
  phi.claims = {true, true};
  phi.evaluate = [unitary, transpose_first, block_permutation, target = phi.target](const Projection& p) {
    require_same_algebra(p.algebra(), unitary.algebra());
    Element out = Element::zero(target);
    for (std::size_t k = 0; k < block_permutation.size(); ++k) {
      const Matrix& u = unitary.block(k);
      const Matrix pk = transpose_first ? Matrix(p.block(k).transpose()) : p.block(k);
      out.block(block_permutation[k]) = u * pk * u.adjoint();
    }
    return Projection::trusted(std::move(out));
  };
  return phi;
}

LatticeMorphism make_fault_morphism(LatticeMorphism base, const Projection& break_at) {
  LatticeMorphism phi = base;
  phi.evaluate = [base = std::move(base), break_at](const Projection& p) {
    Projection image = base(p);
    if (operator_norm(p.element() - break_at.element()) <= kFaultMatch) return orthocomplement(image);
    return image;
  };
  return phi;
}

// ---------------------------------------------------------------- audits

AuditReport cortho_audit(const LatticeMorphism& phi, const AuditOptions& options) {
  const Algebra& src = phi.source;
  const Element tgt_one = Element::identity(phi.target);
  ResidualRecord unit{"unit"};
  ResidualRecord ortho{"orthocomplement"};
  ResidualRecord sup{"join"};
  ResidualRecord sum{"orthogonal_sum"};

  const Projection zero = Projection::zero(src);
  const Projection one = Projection::unit(src);
  unit.observe(operator_norm(phi(one).element() - tgt_one), {one.element()});
  unit.observe(operator_norm(phi(zero).element()), {zero.element()});

  auto check_complement = [&](const Projection& p) {
    const Projection pc = orthocomplement(p);
    ortho.observe(operator_norm(phi(pc).element() - (tgt_one - phi(p).element())), {p.element()});
    const Element lhs = phi(Projection::trusted(p.element() + pc.element())).element();
    sum.observe(operator_norm(lhs - phi(p).element() - phi(pc).element()), {p.element(), pc.element()});
  };

  for (const auto& p : frame_projections(src)) check_complement(p);
  for (int i = 0; i < options.samples; ++i) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(i)));
    check_complement(random_projection(src, rng));

    const Projection e = random_projection(src, rng);
    const Projection f = random_projection(src, rng);
    sup.observe(operator_norm(phi(join(e, f)).element() - join(phi(e), phi(f)).element()), {e.element(), f.element()});

    const auto [a, b] = random_orthogonal_pair(src, rng);
    const Element lhs = phi(Projection::trusted(a.element() + b.element())).element();
    sum.observe(operator_norm(lhs - phi(a).element() - phi(b).element()), {a.element(), b.element()});
  }
  return {{unit, ortho, sup, sum}};
}

ResidualRecord equivariance_check(const LatticeMorphism& phi, const AuditOptions& options) {
  require_cortho(phi);
  require_no_I2(phi.source);
  const Algebra& src = phi.source;
  ResidualRecord rec{"equivariance"};
  auto check = [&](const Projection& p, const Projection& q) {
    const Element s = symmetry(p);
    const Projection conj = Projection::trusted(s * q.element() * s);
    const Element t = symmetry(phi(p));
    rec.observe(operator_norm(phi(conj).element() - t * phi(q).element() * t), {p.element(), q.element()});
  };
  const auto frame = frame_projections(src);
  for (const auto& q : frame) {
    check(Projection::zero(src), q);
    check(q, q);
  }
  for (std::size_t i = 0; i + 1 < frame.size(); ++i) check(frame[i], frame[i + 1]);
  for (int i = 0; i < options.samples; ++i) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(i)));
    const Projection p = random_projection(src, rng);
    const Projection q = random_projection(src, rng);
    check(p, q);
    check(frame[static_cast<std::size_t>(i) % frame.size()], q);
  }
  return rec;
}

Element spectral_apply(const LatticeMorphism& phi, const Element& x) {
  require_same_algebra(x.algebra(), phi.source);
  auto part = [&](const Element& h) {
    Element out = Element::zero(phi.target);
    if (operator_norm(h) == 0.0) return out;
    const SpectralResolution res = hermitian_spectral(h);
    for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
      if (res.eigenvalues[i] != 0.0) out += res.eigenvalues[i] * phi(res.projections[i]).element();
    }
    return out;
  };
  return part(x.real_part()) + Complex(0.0, 1.0) * part(x.imag_part());
}

LinearMapOnAlgebra spectral_extension(const LatticeMorphism& phi) {
  require_cortho(phi);
  require_no_I2(phi.source);
  return LinearMapOnAlgebra::from_function(phi.source, phi.target,
                                           [&phi](const Element& x) { return spectral_apply(phi, x); });
}

AuditReport additivity_probe(const LatticeMorphism& phi, const LinearMapOnAlgebra& extension,
                             const AuditOptions& options) {
  const Algebra& src = phi.source;
  ResidualRecord add{"additivity"};
  ResidualRecord rep{"representation"};
  auto check = [&](const Element& x, const Element& y) {
    const Element fx = spectral_apply(phi, x);
    const Element fy = spectral_apply(phi, y);
    const Element fxy = spectral_apply(phi, x + y);
    add.observe(operator_norm(fxy - fx - fy), {x, y});
    rep.observe(operator_norm(fx - extension.apply(x)), {x});
  };
  auto separated_sum = [](const Element& x, const Element& y) {
    const SpectralResolution r = hermitian_spectral(x + y, 0.0);
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i)
      if (r.eigenvalues[i] - r.eigenvalues[i - 1] < kProbeGap) return false;
    return true;
  };

  const auto frame = frame_projections(src);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    Rng rng(mix_seed(options.seed ^ 0xf4a3e5ULL, i));
    const Element x = 0.7 * frame[i].element() + 0.2 * orthocomplement(frame[i]).element();
    Element y = random_hermitian_separated(src, rng, kProbeGap);
    while (!separated_sum(x, y)) y = random_hermitian_separated(src, rng, kProbeGap);
    check(x, y);
  }
  for (int i = 0; i < options.samples; ++i) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(i)));
    for (;;) {
      const Element x = random_hermitian_separated(src, rng, kProbeGap);
      const Element y = random_hermitian_separated(src, rng, kProbeGap);
      if (operator_norm(x * y - y * x) < 0.1 && src.max_block_dim() > 1) continue;
      if (!separated_sum(x, y)) continue;
      check(x, y);
      break;
    }
  }
  return {{add, rep}};
}

AuditReport jordan_audit(const LinearMapOnAlgebra& map, const AuditOptions& options) {
  const Algebra& src = map.source();
  ResidualRecord star{"star"};
  ResidualRecord square{"square"};
  ResidualRecord proj{"projection"};
  ResidualRecord triple{"triple"};
  for (int i = 0; i < options.samples; ++i) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(i)));
    const Element x = random_element(src, rng);
    star.observe(operator_norm(map(x.adjoint()) - map(x).adjoint()), {x});

    const Element h = random_hermitian(src, rng);
    const Element fh = map(h);
    square.observe(operator_norm(map(h * h) - fh * fh), {h});

    const Projection p = random_projection(src, rng);
    const Element fp = map(p);
    proj.observe(std::max(operator_norm(fp * fp - fp), operator_norm(fp - fp.adjoint())), {p.element()});

    const Element s = symmetry(random_projection(src, rng));
    const Element fs = map(s);
    triple.observe(operator_norm(map(s * h * s) - fs * fh * fs), {s, h});
  }
  return {{star, square, proj, triple}};
}

// ---------------------------------------------------------------- Wigner reconstruction

namespace {

Vector top_vector(const Matrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.adjoint()));
  return es.eigenvectors().col(es.eigenvalues().size() - 1);
}

double projection_overlap(const Element& a, const Element& b) {
  const double ra = a.trace().real();
  const double rb = b.trace().real();
  const double denom = std::max(ra, rb);
  if (denom < 0.5) return 1.0;
  return (a * b).trace().real() / denom;
}

[[noreturn]] void reconstruction_failed(const std::string& why) {
  throw Error(ErrorCode::ReconstructionFailed, why);
}

}  // namespace

Projection wigner_apply(const WignerResult& w, const Algebra& target, const Projection& p) {
  Element out = Element::zero(target);
  for (std::size_t k = 0; k < w.block_permutation.size(); ++k) {
    const Matrix& u = w.unitary.block(k);
    const Matrix pk = w.block_antiunitary[k] ? Matrix(p.block(k).conjugate()) : p.block(k);
    out.block(w.block_permutation[k]) = u * pk * u.adjoint();
  }
  return Projection::trusted(std::move(out));
}

WignerResult wigner_reconstruct(const LatticeMorphism& phi, const AuditOptions& options) {
  if (!phi.claims.orthoiso) throw Error(ErrorCode::NotOrthoiso, "morphism does not claim orthoisomorphism");
  const Algebra& src = phi.source;
  const Algebra& tgt = phi.target;
  if (src.num_blocks() != tgt.num_blocks()) reconstruction_failed("source and target block counts differ");

  WignerResult out;
  out.unitary = Element::zero(src);
  for (std::size_t k = 0; k < src.num_blocks(); ++k) {
    const int n = src.block_dim(k);
    const Element block_unit = Element::embed(src, k, Matrix::Identity(n, n));
    const Projection image = phi(Projection::trusted(block_unit));
    const auto ranks = block_ranks(image);
    std::size_t t = tgt.num_blocks();
    for (std::size_t j = 0; j < ranks.size(); ++j) {
      if (ranks[j] == 0) continue;
      if (t != tgt.num_blocks()) reconstruction_failed("block unit maps into several target blocks");
      t = j;
    }
    if (t == tgt.num_blocks() || ranks[t] != n || tgt.block_dim(t) != n) {
      std::ostringstream os;
      os << "block " << k << " unit has no full-rank image block";
      reconstruction_failed(os.str());
    }
    out.block_permutation.push_back(t);

    auto probe = [&](const Matrix& v) { return phi(Projection::from_frame(src, k, v)).block(t); };
    auto basis_vec = [n](int i) {
      Matrix v = Matrix::Zero(n, 1);
      v(i, 0) = 1.0;
      return v;
    };
    const double r = 1.0 / std::sqrt(2.0);

    Matrix u(n, n);
    for (int i = 0; i < n; ++i) u.col(i) = top_vector(probe(basis_vec(i)));
    for (int j = 1; j < n; ++j) {
      const Matrix q = probe(r * (basis_vec(0) + basis_vec(j)));
      const Complex z = (u.col(j).adjoint() * q * u.col(0))(0, 0);
      if (std::abs(z) < 1e-3) {
        std::ostringstream os;
        os << "block " << k << ": superposition probe 0," << j << " has no overlap with basis images";
        reconstruction_failed(os.str());
      }
      u.col(j) *= z / std::abs(z);
    }

    double vote = 0.0;
    for (int j = 1; j < n; ++j) {
      const Matrix q = probe(r * basis_vec(0) + Complex(0.0, r) * basis_vec(j));
      const Vector plus = u * (r * basis_vec(0) + Complex(0.0, r) * basis_vec(j));
      const Vector minus = u * (r * basis_vec(0) - Complex(0.0, r) * basis_vec(j));
      vote += (plus.adjoint() * q * plus)(0, 0).real() - (minus.adjoint() * q * minus)(0, 0).real();
    }
    out.block_antiunitary.push_back(vote < 0.0);
    out.unitary.block(k) = u;
  }
  out.antiunitary = std::all_of(out.block_antiunitary.begin(), out.block_antiunitary.end(), [](bool b) { return b; });

  auto validate = [&](const Projection& p) {
    const Element actual = phi(p).element();
    const Element predicted = wigner_apply(out, tgt, p).element();
    out.fidelity = std::min(out.fidelity, projection_overlap(actual, predicted));
    out.max_deviation = std::max(out.max_deviation, operator_norm(actual - predicted));
  };
  out.fidelity = 1.0;
  for (const auto& p : frame_projections(src)) validate(p);
  for (int i = 0; i < options.samples; ++i) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(i)));
    validate(random_projection(src, rng));
  }
  if (out.fidelity < 1.0 - 1e-6) {
    std::ostringstream os;
    os << "validation fidelity " << out.fidelity << ", max deviation " << out.max_deviation;
    reconstruction_failed(os.str());
  }
  return out;
}

// ---------------------------------------------------------------- chains

std::vector<std::vector<Projection>> sample_chains(const Algebra& algebra, const AuditOptions& options) {
  std::vector<std::vector<Projection>> chains;

  std::vector<Projection> diag;
  std::vector<Projection> units;
  Element acc = Element::zero(algebra);
  Element unit_acc = Element::zero(algebra);
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    for (int i = 0; i < n; ++i) {
      acc.block(k)(i, i) = 1.0;
      diag.push_back(Projection::trusted(acc));
    }
    unit_acc.block(k) = Matrix::Identity(n, n);
    units.push_back(Projection::trusted(unit_acc));
  }
  chains.push_back(std::move(diag));
  chains.push_back(std::move(units));

  for (int s = 0; s < options.samples; ++s) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(s)));
    const Element u = random_unitary(algebra, rng);
    std::vector<Projection> chain;
    Element p = Element::zero(algebra);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
      const int n = algebra.block_dim(k);
      for (int i = 0; i < n; ++i) {
        if (rng.uniform() < 0.5 && i + 1 < n) continue;
        const Matrix cols = u.block(k).leftCols(i + 1);
        p.block(k) = cols * cols.adjoint();
        chain.push_back(Projection::trusted(p));
      }
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

AuditReport join_continuity_audit(const LatticeMorphism& phi, const std::vector<std::vector<Projection>>& chains) {
  ResidualRecord mono{"monotone"};
  ResidualRecord sup{"supremum"};
  for (const auto& chain : chains) {
    if (chain.empty()) continue;
    std::vector<Projection> images;
    images.reserve(chain.size());
    for (const auto& e : chain) images.push_back(phi(e));
    Projection running = images.front();
    for (std::size_t i = 0; i + 1 < images.size(); ++i) {
      const Element& lo = images[i].element();
      mono.observe(operator_norm(images[i + 1].element() * lo - lo), {chain[i].element(), chain[i + 1].element()});
      running = join(running, images[i + 1]);
    }
    sup.observe(operator_norm(images.back().element() - running.element()), {chain.back().element()});
  }
  return {{mono, sup}};
}

}  // namespace projlat
