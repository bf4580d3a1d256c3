#include <doctest.h>

#include "oracles.hpp"
#include "projlat/algebra.hpp"
#include "projlat/random.hpp"

using namespace projlat;

namespace {

Element diag(std::initializer_list<double> d) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return Element::from_matrix(v.asDiagonal());
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("algebra shape bookkeeping") {
    const Algebra a({3, 2, 1});
    CHECK(a.total_dim() == 14);
    CHECK(a.rep_dim() == 6);
    CHECK(a.max_block_dim() == 3);
    CHECK(a.has_type_I2_summand());
    CHECK_FALSE(Algebra({3, 4}).has_type_I2_summand());
    CHECK(a.eps_proj() == doctest::Approx(3e-10));
    CHECK_THROWS_AS(Algebra(std::vector<int>{}), Error);
    CHECK_THROWS_AS(Algebra({3, 0}), Error);
  }

  TEST_CASE("element construction rejects wrong block shapes") {
    CHECK_THROWS_AS(Element(Algebra({2}), {Matrix::Zero(3, 3)}), Error);
    CHECK_THROWS_AS(Element(Algebra({2, 2}), {Matrix::Zero(2, 2)}), Error);
    try {
      Element(Algebra({2}), {Matrix::Zero(3, 3)});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AlgebraMismatch);
    }
  }

  TEST_CASE("mixing algebras is an error") {
    CHECK_THROWS_AS(Element::identity(Algebra({2})) + Element::identity(Algebra({3})), Error);
  }

  TEST_CASE("real and imaginary parts recombine") {
    Rng rng(5);
    const Algebra a({3, 4});
    const Element x = random_element(a, rng);
    const Element back = x.real_part() + Complex(0.0, 1.0) * x.imag_part();
    CHECK(oracle::norm(back - x) < 1e-14);
    CHECK(is_self_adjoint(x.real_part(), 1e-14));
    CHECK(is_self_adjoint(x.imag_part(), 1e-14));
  }

  TEST_CASE("spectral resolution of diag(1,1,0)") {
    const SpectralResolution r = hermitian_spectral(diag({1, 1, 0}));
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK(r.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(total_rank(r.projections[0]) == 1);
    CHECK(total_rank(r.projections[1]) == 2);
  }

  TEST_CASE("spectral resolution of zero is the identity at 0") {
    const SpectralResolution r = hermitian_spectral(Element::zero(Algebra({3})));
    REQUIRE(r.eigenvalues.size() == 1);
    CHECK(r.eigenvalues[0] == 0.0);
    CHECK(oracle::norm(r.projections[0].element() - Element::identity(Algebra({3}))) < 1e-14);
  }

  TEST_CASE("spectral resolution rejects non-self-adjoint input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
      hermitian_spectral(Element::from_matrix(m));
      FAIL("expected NotSelfAdjoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSelfAdjoint);
    }
  }

  TEST_CASE("spectral resolution of random Hermitian matrices") {
    for (int t = 0; t < 60; ++t) {
      Rng rng(mix_seed(11, t));
      const Algebra a = random_algebra(rng, 1, 8, 3, false);
      const Element h = random_hermitian(a, rng);
      const SpectralResolution r = hermitian_spectral(h);
      Element sum = Element::zero(a);
      Element units = Element::zero(a);
      for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        if (i > 0) CHECK(r.eigenvalues[i] > r.eigenvalues[i - 1]);
        sum += r.eigenvalues[i] * r.projections[i].element();
        units += r.projections[i].element();
        for (std::size_t j = 0; j < i; ++j)
          CHECK(oracle::norm(r.projections[i].element() * r.projections[j].element()) < 1e-10);
      }
      CHECK(oracle::norm(h - sum) <= 1e-10);
      CHECK(oracle::norm(units - Element::identity(a)) <= 1e-10);

      // Resolving the resolution returns the same data.
      const SpectralResolution again = hermitian_spectral(sum);
      REQUIRE(again.eigenvalues.size() == r.eigenvalues.size());
      for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        CHECK(std::abs(again.eigenvalues[i] - r.eigenvalues[i]) <= 1e-8);
        CHECK(oracle::norm(again.projections[i].element() - r.projections[i].element()) <= 1e-8);
      }
    }
  }

  TEST_CASE("clustering merges close eigenvalues") {
    const SpectralResolution r = hermitian_spectral(diag({0.0, 1.0, 1.0 + 1e-12}));
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK(total_rank(r.projections[1]) == 2);
    const SpectralResolution split = hermitian_spectral(diag({0.0, 1.0, 1.0 + 1e-12}), 0.0);
    CHECK(split.eigenvalues.size() == 3);
  }

  TEST_CASE("polar decomposition of diag(2,0) and of a unitary") {
    const PolarDecomposition p = polar_decomposition(diag({2, 0}));
    CHECK(oracle::norm(p.u - diag({1, 0})) < 1e-12);
    CHECK(oracle::norm(p.h - diag({2, 0})) < 1e-12);

    Rng rng(3);
    const Element u = random_unitary(Algebra({4}), rng);
    const PolarDecomposition q = polar_decomposition(u);
    CHECK(oracle::norm(q.u - u) < 1e-12);
    CHECK(oracle::norm(q.h - Element::identity(Algebra({4}))) < 1e-12);
  }

  TEST_CASE("polar decomposition reconstructs random elements") {
    for (int t = 0; t < 80; ++t) {
      Rng rng(mix_seed(12, t));
      const Algebra a = random_algebra(rng, 1, 16, 2, false);
      Element x = random_element(a, rng);
      if (t % 3 == 0) x = x * random_projection(a, rng).element();  // rank deficient
      const PolarDecomposition p = polar_decomposition(x);
      CHECK(oracle::norm(p.u * p.h - x) <= 1e-10 * std::max(1.0, oracle::norm(x)));
      const Element uu = p.u.adjoint() * p.u;
      CHECK(oracle::norm(uu * uu - uu) <= 1e-10);
      CHECK(oracle::norm(uu - range_projection(x).element()) <= 1e-9);
      CHECK(oracle::norm(p.u * p.u.adjoint() - left_projection(x).element()) <= 1e-9);
      CHECK(is_self_adjoint(p.h, 1e-12));
      for (const auto& b : p.h.blocks()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(b);
        if (es.eigenvalues().size() > 0) CHECK(es.eigenvalues()(0) >= -1e-12);
      }
    }
  }

  TEST_CASE("range projection examples") {
    Rng rng(4);
    const Algebra a({3});
    CHECK(oracle::norm(range_projection(random_unitary(a, rng)).element() - Element::identity(a)) < 1e-12);
    CHECK(total_rank(range_projection(Element::zero(a))) == 0);

    Matrix v(3, 1);
    v << Complex(1, 1), 2.0, Complex(0, -1);
    Matrix w(3, 1);
    w << 0.5, Complex(0, 2), 1.0;
    // x = w v*: x* = v w*, so the range of x* is span(v).
    const Element x = Element::from_matrix(w * v.adjoint());
    const Matrix expect = oracle::projector(oracle::orthonormal_columns(v));
    CHECK((range_projection(x).block(0) - expect).norm() < 1e-12);
    const Matrix expect_left = oracle::projector(oracle::orthonormal_columns(w));
    CHECK((left_projection(x).block(0) - expect_left).norm() < 1e-12);
  }

  TEST_CASE("range projection of a projection is itself") {
    for (int t = 0; t < 50; ++t) {
      Rng rng(mix_seed(13, t));
      const Algebra a = random_algebra(rng, 1, 12, 3, false);
      const Projection p = random_projection(a, rng);
      CHECK(oracle::norm(range_projection(p).element() - p.element()) <= a.eps_proj());
    }
  }

  TEST_CASE("operator norm examples") {
    CHECK(operator_norm(Element::identity(Algebra({3, 2}))) == doctest::Approx(1.0));
    CHECK(operator_norm(diag({3, -4})) == doctest::Approx(4.0));
    Matrix e = Matrix::Zero(2, 2);
    e(0, 0) = 1.0;
    const Matrix d = e - oracle::halmos_f(0.75);
    CHECK(operator_norm(Element::from_matrix(d)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(oracle::norm(d) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("operator norm agrees with power iteration") {
    for (int t = 0; t < 40; ++t) {
      Rng rng(mix_seed(14, t));
      const Algebra a = random_algebra(rng, 1, 10, 3, false);
      const Element x = 3.0 * random_element(a, rng) + random_hermitian(a, rng);
      CHECK(std::abs(operator_norm(x) - oracle::norm(x)) <= 1e-9 * oracle::norm(x));
    }
  }

  TEST_CASE("projection certification") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    CHECK_NOTHROW(Projection(Element::from_matrix(m)));
    m(0, 1) = 1e-6;
    CHECK_THROWS_AS(Projection(Element::from_matrix(m)), Error);
    m(0, 1) = 0.0;
    m(1, 1) = 0.5;
    try {
      Projection p{Element::from_matrix(m)};
      FAIL("expected NotAProjection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAProjection);
    }
  }

  TEST_CASE("nearest projection rounds the spectrum at one half") {
    const Projection p = nearest_projection(diag({0.9, 0.2, 0.6}));
    CHECK(oracle::norm(p.element() - diag({1, 0, 1})) < 1e-12);
  }

  TEST_CASE("samplers produce what they promise") {
    for (int t = 0; t < 30; ++t) {
      Rng rng(mix_seed(15, t));
      const Algebra a = random_algebra(rng, 1, 9, 3, false);
      const Element u = random_unitary(a, rng);
      CHECK(oracle::norm(u * u.adjoint() - Element::identity(a)) < 1e-12);
      const Element rho = random_density(a, rng);
      CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
      const Projection p = random_projection(a, rng);
      CHECK(oracle::norm(p.element() * p.element() - p.element()) < 1e-12);
      const auto [e, f] = random_orthogonal_pair(a, rng);
      CHECK(oracle::norm(e.element() * f.element()) < 1e-12);
      const Element h = random_hermitian_separated(a, rng, 1e-4);
      CHECK(std::abs(oracle::norm(h) - 1.0) < 1e-9);
    }
    Rng rng(1);
    CHECK_THROWS_AS(random_algebra(rng, 2, 2, 2, true), Error);
  }
}
