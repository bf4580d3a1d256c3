#include <doctest.h>

#include "oracles.hpp"
#include "projlat/gleason.hpp"
#include "projlat/lattice.hpp"
#include "projlat/random.hpp"
#include "projlat/two_projection.hpp"

using namespace projlat;

namespace {

Element diag(std::vector<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return Element::from_matrix(m);
}

Measure squared_trace_measure(const Algebra& a) {
  Measure m;
  m.algebra = a;
  const double n = a.rep_dim();
  m.evaluate = [n](const Projection& p) {
    const double t = p.element().trace().real() / n;
    return Complex(t * t, 0.0);
  };
  return m;
}

double dist_to_dyadic_grid(double t, int depth) {
  const double s = std::ldexp(t, depth);
  return std::ldexp(std::abs(s - std::round(s)), -depth);
}

}  // namespace

TEST_SUITE("gleason") {
  TEST_CASE("dyadic digits of simple diagonals") {
    auto digits = dyadic_decomposition(diag({0.5, 0.25}), 10);
    REQUIRE(digits.size() == 10);
    CHECK(oracle::norm(digits[0].element() - diag({1, 0})) < 1e-12);
    CHECK(oracle::norm(digits[1].element() - diag({0, 1})) < 1e-12);
    for (std::size_t n = 2; n < digits.size(); ++n) CHECK(is_zero(digits[n]));

    digits = dyadic_decomposition((1.0 / 3.0) * Element::identity(Algebra({3})), 40);
    for (std::size_t n = 0; n < digits.size(); ++n) {
      if (n % 2 == 1)
        CHECK(oracle::norm(digits[n].element() - Element::identity(Algebra({3}))) < 1e-12);
      else
        CHECK(is_zero(digits[n]));
    }

    for (const auto& d : dyadic_decomposition(Element::zero(Algebra({2, 3})), 20)) CHECK(is_zero(d));
    for (const auto& d : dyadic_decomposition(Element::identity(Algebra({2})), 20))
      CHECK(oracle::norm(d.element() - Element::identity(Algebra({2}))) < 1e-12);
  }

  TEST_CASE("dyadic truncation error is at most 2^-N") {
    for (int t = 0; t < 80; ++t) {
      Rng rng(mix_seed(41, t));
      const Algebra a = random_algebra(rng, 1, 8, 3, false);
      const Element h = random_hermitian(a, rng);
      const Element x = 0.5 * (h + Element::identity(a));
      const auto digits = dyadic_decomposition(x, 40);
      Element partial = Element::zero(a);
      for (int n = 1; n <= 40; ++n) {
        partial += std::ldexp(1.0, -n) * digits[static_cast<std::size_t>(n - 1)].element();
        CHECK(oracle::norm(x - partial) <= std::ldexp(1.0, -n) + 1e-13);
      }
    }
  }

  TEST_CASE("dyadic digits agree with forward construction") {
    const int depth = 20;
    int compared = 0;
    for (int t = 0; t < 60; ++t) {
      Rng rng(mix_seed(42, t));
      const int n = rng.uniform_int(1, 7);
      std::vector<double> lambda;
      bool clear = true;
      for (int i = 0; i < n; ++i) {
        lambda.push_back(rng.uniform());
        clear = clear && dist_to_dyadic_grid(lambda.back(), depth) > 1e-9;
      }
      if (!clear) continue;
      const Matrix v = random_unitary_matrix(n, rng);
      const oracle::DyadicCase c = oracle::dyadic_case(v, lambda, depth);
      const auto digits = dyadic_decomposition(Element::from_matrix(c.x), depth);
      for (int k = 0; k < depth; ++k)
        CHECK((digits[static_cast<std::size_t>(k)].block(0) - c.digits[static_cast<std::size_t>(k)]).norm() < 1e-8);
      ++compared;
    }
    CHECK(compared > 50);
  }

  TEST_CASE("dyadic decomposition rejects bad input") {
    try {
      dyadic_decomposition(diag({-0.1, 0.5}), 10);
      FAIL("expected SpectrumOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SpectrumOutOfRange);
    }
    CHECK_THROWS_AS(dyadic_decomposition(diag({0.5, 1.5}), 10), Error);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
      dyadic_decomposition(Element::from_matrix(m), 10);
      FAIL("expected NotSelfAdjoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSelfAdjoint);
    }
  }

  TEST_CASE("extension of a density measure is the trace pairing") {
    for (int t = 0; t < 40; ++t) {
      Rng rng(mix_seed(43, t));
      const Algebra a = random_algebra(rng, 1, 6, 3, false);
      const Element density = random_density(a, rng);
      const Measure rho = make_density_measure(density);
      const QuasiLinearFunctional mu = extend_measure(rho, {mix_seed(43, 1000 + t), 50});
      CHECK(std::abs(mu(Element::identity(a)) - Complex(1.0)) <= 1e-10);
      const Element x = random_element(a, rng);
      const Complex expected = (density * x).trace();
      CHECK(std::abs(mu(x) - expected) <= 1e-9);
      const Projection p = random_projection(a, rng);
      CHECK(std::abs(mu(Complex(0.0, 1.0) * p.element()) - Complex(0.0, 1.0) * rho(p)) <= 1e-12);
      const Element y = random_element(a, rng);
      const Complex c1(0.3, -1.2);
      const Complex c2(-0.7, 0.4);
      CHECK(std::abs(mu(c1 * x + c2 * y) - c1 * mu(x) - c2 * mu(y)) <= 1e-9);
      CHECK(mu.norm == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("extension refuses a non-additive measure") {
    const Measure rho = squared_trace_measure(Algebra({3}));
    const AdditivityAudit audit = additivity_audit(rho, {7, 30});
    CHECK(audit.worst > 1e-3);
    REQUIRE(audit.witness);
    const auto& [e, f] = *audit.witness;
    CHECK(oracle::norm(e.element() * f.element()) < 1e-10);
    const double direct = std::abs(rho(Projection::trusted(e.element() + f.element())) - rho(e) - rho(f));
    CHECK(direct == doctest::Approx(audit.worst));
    try {
      extend_measure(rho, {7, 30});
      FAIL("expected NotAdditive");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NotAdditive);
      CHECK(std::string(err.what()).find("witness") != std::string::npos);
    }
  }

  TEST_CASE("density reconstruction examples") {
    const Element t = diag({0.5, 0.3, 0.2});
    DensityReconstruction r = reconstruct_density(make_density_measure(t), Algebra({3}), 1, 100);
    CHECK(oracle::norm(r.density - t) <= 1e-10);
    CHECK(r.residual <= 1e-10);
    CHECK(r.validation_size == 100);

    const Algebra a({2, 3});
    r = reconstruct_density(make_tracial_measure(a), a, 2, 100);
    CHECK(oracle::norm(r.density - (1.0 / 5.0) * Element::identity(a)) <= 1e-10);

    r = reconstruct_density(make_m2_nonlinear_measure(5), Algebra({2}), 3, 200);
    CHECK(r.residual > 0.05);
    REQUIRE(r.worst_projection);
  }

  TEST_CASE("density reconstruction recovers random densities") {
    for (int t = 0; t < 30; ++t) {
      Rng rng(mix_seed(44, t));
      const Algebra a = random_algebra(rng, 3, 7, 3, true);
      const Element density = random_density(a, rng);
      const DensityReconstruction r = reconstruct_density(make_density_measure(density), a, t, 50);
      CHECK(oracle::norm(r.density - density) <= 1e-8);
      CHECK(r.residual <= 1e-9);
    }
  }

  TEST_CASE("M2 measure is additive, odd, and nonlinear") {
    for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
      const Measure rho = make_m2_nonlinear_measure(seed);
      CHECK(additivity_audit(rho, {seed, 300}).worst <= 1e-12);
      Rng rng(seed);
      for (int i = 0; i < 50; ++i) {
        const Projection p = random_projection(Algebra({2}), {1}, rng);
        CHECK(std::abs(rho(p) + rho(orthocomplement(p)) - Complex(1.0)) <= 1e-12);
        CHECK(std::abs(rho(p).real()) <= rho.norm_bound);
      }
      CHECK(std::abs(rho(Projection::unit(Algebra({2}))) - Complex(1.0)) == 0.0);
      CHECK(std::abs(rho(Projection::zero(Algebra({2})))) == 0.0);
    }
    try {
      make_m2_nonlinear_measure(1, Algebra({3}));
      FAIL("expected WrongAlgebra");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WrongAlgebra);
    }
  }

  TEST_CASE("lipschitz audit") {
    const Algebra a({3});
    const QuasiLinearFunctional mu = extend_measure(make_tracial_measure(a));
    Rng rng(8);
    const Projection e = random_projection(a, rng);
    LipschitzAudit audit = lipschitz_audit(mu, {{e, e}});
    CHECK(audit.evaluated == 0);

    std::vector<std::pair<Projection, Projection>> samples;
    for (int i = 0; i < 300; ++i) samples.emplace_back(random_projection(a, rng), random_projection(a, rng));
    audit = lipschitz_audit(mu, samples);
    CHECK(audit.evaluated > 250);
    CHECK(audit.worst_ratio <= 2.0);
    REQUIRE(audit.witness);

    const auto [pe, pf] = halmos_pair({0.4, 0.8});
    const QuasiLinearFunctional tr4 = extend_measure(make_tracial_measure(pe.algebra()));
    audit = lipschitz_audit(tr4, {{pe, pf}});
    CHECK(audit.evaluated == 1);
    CHECK(audit.worst_ratio <= 1e-12);
  }

  TEST_CASE("lipschitz ratio for random density functionals") {
    for (int t = 0; t < 30; ++t) {
      Rng rng(mix_seed(45, t));
      const Algebra a = random_algebra(rng, 1, 6, 2, false);
      Element density = random_density(a, rng);
      if (t % 2 == 1) density = density + Complex(0.0, 0.3) * random_hermitian(a, rng);
      const QuasiLinearFunctional mu = extend_measure(make_density_measure(density), {mix_seed(45, t), 30});
      std::vector<std::pair<Projection, Projection>> samples;
      for (int i = 0; i < 50; ++i) {
        const Projection e = random_projection(a, rng);
        samples.emplace_back(e, random_perturbation(e, rng.uniform(0.01, 1.0), rng));
      }
      CHECK(lipschitz_audit(mu, samples).worst_ratio <= 2.0 + 1e-6);
    }
  }

  TEST_CASE("spectral and dyadic routes agree") {
    for (int t = 0; t < 40; ++t) {
      Rng rng(mix_seed(46, t));
      const Algebra a = random_algebra(rng, 1, 6, 3, false);
      const Measure rho = make_density_measure(random_density(a, rng));
      const QuasiLinearFunctional mu = extend_measure(rho, {1, 20});
      const Element x = 3.0 * random_hermitian(a, rng);
      CHECK(std::abs(dyadic_functional_value(rho, x, 50) - mu(x)) <= 1e-9);
    }
    const Algebra a({2});
    const Measure rho = make_tracial_measure(a);
    CHECK(std::abs(dyadic_functional_value(rho, 0.25 * Element::identity(a), 30) - Complex(0.25)) <= 1e-14);
  }
}
