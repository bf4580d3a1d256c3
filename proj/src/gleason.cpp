#include "projlat/gleason.hpp"

#include <cmath>
#include <sstream>

#include "projlat/lattice.hpp"
#include "projlat/random.hpp"

namespace projlat {

double measure_tolerance(const Measure& rho) { return 1e-9 * rho.norm_bound; }

AdditivityAudit additivity_audit(const Measure& rho, const AuditOptions& options) {
  AdditivityAudit audit;
  auto check = [&](const Projection& e, const Projection& f) {
    const Projection sum = Projection::trusted(e.element() + f.element());
    const double r = std::abs(rho(sum) - rho(e) - rho(f));
    ++audit.pairs;
    if (!audit.witness || r > audit.worst) {
      audit.worst = r;
      audit.witness = std::make_pair(e, f);
    }
  };
  for (const auto& p : frame_projections(rho.algebra)) check(p, orthocomplement(p));
  for (int i = 0; i < options.samples; ++i) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(i)));
    const auto [e, f] = random_orthogonal_pair(rho.algebra, rng);
    check(e, f);
  }
  return audit;
}

std::vector<Projection> dyadic_decomposition(const Element& x, int depth) {
  if (depth < 0 || depth > 60) throw Error(ErrorCode::Usage, "dyadic depth must be in [0, 60]");
  const SpectralResolution res = hermitian_spectral(x, 0.0);
  constexpr double kSlack = 1e-12;
  if (res.eigenvalues.front() < -kSlack || res.eigenvalues.back() > 1.0 + kSlack) {
    std::ostringstream os;
    os << "spectrum [" << res.eigenvalues.front() << ", " << res.eigenvalues.back() << "] not inside [0, 1]";
    throw Error(ErrorCode::SpectrumOutOfRange, os.str());
  }
  std::vector<Element> digits(static_cast<std::size_t>(depth), Element::zero(x.algebra()));
  for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
    double rest = std::clamp(res.eigenvalues[i], 0.0, 1.0);
    for (int n = 1; n <= depth; ++n) {
      const double weight = std::ldexp(1.0, -n);
      if (rest >= weight) {
        rest -= weight;
        digits[static_cast<std::size_t>(n - 1)] += res.projections[i].element();
      }
    }
  }
  std::vector<Projection> out;
  out.reserve(digits.size());
  for (auto& d : digits) out.push_back(Projection::trusted(std::move(d)));
  return out;
}

namespace {

Complex spectral_value(const Measure& rho, const Element& h) {
  if (operator_norm(h) == 0.0) return 0.0;
  const SpectralResolution res = hermitian_spectral(h);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
    if (res.eigenvalues[i] != 0.0) sum += res.eigenvalues[i] * rho(res.projections[i]);
  }
  return sum;
}

bool looks_like_projection(const Element& x) {
  const double eps = x.algebra().eps_proj();
  return operator_norm(x - x.adjoint()) <= eps && operator_norm(x * x - x) <= eps;
}

double functional_norm_of(const Measure& rho, const AuditOptions& options) {
  if (rho.functional_norm) return *rho.functional_norm;
  if (rho.is_real) {
    bool positive = true;
    for (int i = 0; i < options.samples && positive; ++i) {
      Rng rng(mix_seed(options.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(i)));
      positive = rho(random_projection(rho.algebra, rng)).real() >= -measure_tolerance(rho);
    }
    if (positive) return rho(Projection::unit(rho.algebra)).real();
    return 2.0 * rho.norm_bound;
  }
  return 4.0 * rho.norm_bound;
}

}  // namespace

QuasiLinearFunctional extend_measure(const Measure& rho, const AuditOptions& options) {
  const AdditivityAudit audit = additivity_audit(rho, options);
  if (audit.worst > measure_tolerance(rho)) {
    std::ostringstream os;
    os << "|ρ(e+f)−ρ(e)−ρ(f)| = " << audit.worst << " > " << measure_tolerance(rho) << " on witness pair of ranks "
       << total_rank(audit.witness->first) << ", " << total_rank(audit.witness->second);
    throw Error(ErrorCode::NotAdditive, os.str());
  }
  QuasiLinearFunctional mu;
  mu.norm = functional_norm_of(rho, options);
  mu.evaluate = [rho](const Element& x) -> Complex {
    require_same_algebra(rho.algebra, x.algebra());
    if (looks_like_projection(x)) return rho(Projection::trusted(x));
    return spectral_value(rho, x.real_part()) + Complex(0.0, 1.0) * spectral_value(rho, x.imag_part());
  };
  return mu;
}

Complex dyadic_functional_value(const Measure& rho, const Element& x, int depth) {
  const SpectralResolution res = hermitian_spectral(x, 0.0);
  const double lo = res.eigenvalues.front();
  const double hi = res.eigenvalues.back();
  const Projection one = Projection::unit(x.algebra());
  if (hi - lo <= tol::kSpectral * std::max(1.0, operator_norm(x))) return lo * rho(one);
  const Element y = (1.0 / (hi - lo)) * (x - lo * Element::identity(x.algebra()));
  const auto digits = dyadic_decomposition(y.real_part(), depth);
  Complex sum = 0.0;
  for (std::size_t n = 0; n < digits.size(); ++n) sum += std::ldexp(1.0, -static_cast<int>(n + 1)) * rho(digits[n]);
  return lo * rho(one) + (hi - lo) * sum;
}

std::vector<Projection> reconstruction_family(const Algebra& algebra) {
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
  }
  return out;
}

DensityReconstruction reconstruct_density(const Measure& rho, const Algebra& algebra, std::uint64_t seed,
                                          int validation) {
  require_same_algebra(rho.algebra, algebra);
  const auto family = reconstruction_family(algebra);
  DensityReconstruction out;
  out.density = Element::zero(algebra);

  std::size_t cursor = 0;
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    const int unknowns = n * n;
    // tr(T·p) = Σ_{r,c} T(r,c)·p(c,r); unknowns are T in column-major order.
    Matrix a(unknowns, unknowns);
    Vector b(unknowns);
    for (int j = 0; j < unknowns; ++j) {
      const Projection& p = family[cursor + static_cast<std::size_t>(j)];
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) a(j, r + c * n) = p.block(k)(c, r);
      b(j) = rho(p);
    }
    cursor += static_cast<std::size_t>(unknowns);

    const Matrix normal = a.adjoint() * a;
    const Vector rhs = a.adjoint() * b;
    Eigen::LDLT<Matrix> ldlt(normal);
    Vector t = ldlt.solve(rhs);
    const double scale = b.norm() + 1.0;
    if (ldlt.info() != Eigen::Success || !t.allFinite() || (a * t - b).norm() > 1e-10 * scale) {
      t = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    }
    out.density.block(k) = Eigen::Map<Matrix>(t.data(), n, n);
  }

  for (int i = 0; i < validation; ++i) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    const Projection p = random_projection(algebra, rng);
    const double r = std::abs((out.density * p.element()).trace() - rho(p));
    if (!out.worst_projection || r > out.residual) {
      out.residual = r;
      out.worst_projection = p;
    }
  }
  out.validation_size = validation;
  return out;
}

Measure make_density_measure(const Element& density) {
  Measure m;
  m.algebra = density.algebra();
  m.evaluate = [density](const Projection& p) { return (density * p.element()).trace(); };
  m.is_real = is_self_adjoint(density, density.algebra().eps_proj() * std::max(1.0, operator_norm(density)));
  double trace_norm = 0.0;
  for (const auto& b : density.blocks()) trace_norm += Eigen::JacobiSVD<Matrix>(b).singularValues().sum();
  m.functional_norm = trace_norm;
  // sup_p |tr(T p)| ≤ ‖T‖₁
  m.norm_bound = trace_norm;
  return m;
}

Measure make_tracial_measure(const Algebra& algebra) {
  Measure m;
  m.algebra = algebra;
  const double n = algebra.rep_dim();
  m.evaluate = [n](const Projection& p) { return Complex(p.element().trace().real() / n, 0.0); };
  m.norm_bound = 1.0;
  m.functional_norm = 1.0;
  return m;
}

Measure make_m2_nonlinear_measure(std::uint64_t seed, const Algebra& algebra) {
  if (!(algebra == Algebra({2}))) throw Error(ErrorCode::WrongAlgebra, "nonlinear measure is defined on M2 only");
  Rng rng(mix_seed(seed, 0x4d32ULL));
  const double amp = rng.uniform(0.2, 0.3);
  const double c0 = rng.uniform(0.8, 1.0);
  const double c1 = rng.uniform(-0.2, 0.2);
  const double c2 = rng.uniform(-0.2, 0.2);
  const double c3 = rng.uniform(-0.2, 0.2);
  const double root27 = 3.0 * std::sqrt(3.0);

  // Rank-one p = (1 + v·σ)/2 on the Bloch sphere. Orthogonal rank-one pairs
  // are antipodal, so an odd g keeps ρ(p) + ρ(1−p) = 1.
  auto g = [=](double x, double y, double z) {
    return amp * (c0 * root27 * x * y * z + c1 * x * (y * y - z * z) + c2 * y * (z * z - x * x) +
                  c3 * z * (x * x - y * y));
  };
  Measure m;
  m.algebra = algebra;
  m.norm_bound = std::max(1.0, 0.5 + amp * (c0 + std::abs(c1) + std::abs(c2) + std::abs(c3)));
  m.evaluate = [g](const Projection& p) -> Complex {
    const Matrix& b = p.block(0);
    const double rank = std::round(b.trace().real());
    if (rank <= 0.0) return 0.0;
    if (rank >= 2.0) return 1.0;
    double x = 2.0 * b(0, 1).real();
    double y = -2.0 * b(0, 1).imag();
    double z = (b(0, 0) - b(1, 1)).real();
    const double len = std::sqrt(x * x + y * y + z * z);
    x /= len;
    y /= len;
    z /= len;
    return 0.5 + g(x, y, z);
  };
  return m;
}

LipschitzAudit lipschitz_audit(const QuasiLinearFunctional& mu,
                               const std::vector<std::pair<Projection, Projection>>& samples) {
  LipschitzAudit audit;
  for (const auto& [e, f] : samples) {
    const double dist = operator_norm(e.element() - f.element());
    if (dist <= 1e-6) continue;
    const double ratio = std::abs(mu(e) - mu(f)) / (mu.norm * dist);
    ++audit.evaluated;
    if (!audit.witness || ratio > audit.worst_ratio) {
      audit.worst_ratio = ratio;
      audit.witness = std::make_pair(e, f);
    }
  }
  return audit;
}

}  // namespace projlat
