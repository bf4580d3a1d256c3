#include <doctest.h>

#include "oracles.hpp"
#include "projlat/dye.hpp"
#include "projlat/lattice.hpp"
#include "projlat/random.hpp"

using namespace projlat;

namespace {

LatticeMorphism identity_morphism(const Algebra& a) {
  return make_morphism_from_unitary(Element::identity(a), false);
}

LatticeMorphism seeded_morphism(std::uint64_t seed, bool allow_two) {
  Rng rng(seed);
  const Algebra a = random_algebra(rng, allow_two ? 2 : 3, 6, 3, !allow_two);
  std::vector<std::size_t> perm(a.num_blocks());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  // swap equal-sized blocks so the permutation is exercised
  for (std::size_t k = 0; k + 1 < perm.size(); ++k)
    if (a.block_dim(k) == a.block_dim(k + 1) && rng.uniform() < 0.5) std::swap(perm[k], perm[k + 1]);
  return make_morphism_from_unitary(random_unitary(a, rng), rng.uniform() < 0.5, perm);
}

}  // namespace

TEST_SUITE("dye") {
  TEST_CASE("hermitian basis is orthonormal and coordinates round-trip") {
    const Algebra a({1, 3, 2});
    const auto basis = hermitian_basis(a);
    REQUIRE(basis.size() == static_cast<std::size_t>(a.total_dim()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(is_self_adjoint(basis[i], 1e-15));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex ip = (basis[i] * basis[j]).trace();
        CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0)) < 1e-14);
      }
    }
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
      const Element x = random_element(a, rng);
      CHECK(oracle::norm(from_coordinates(a, coordinates(x)) - x) < 1e-13);
    }
    CHECK_THROWS_AS(from_coordinates(a, Vector::Zero(3)), Error);
  }

  TEST_CASE("linear maps from functions") {
    const Algebra a({3});
    const auto map = LinearMapOnAlgebra::from_function(a, a, [](const Element& x) { return x.transpose(); });
    CHECK(map.condition_number() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(map.is_bijective());
    CHECK(map.representation().imag().norm() < 1e-14);
    Rng rng(2);
    const Element x = random_element(a, rng);
    CHECK(oracle::norm(map(x) - x.transpose()) < 1e-13);

    const auto collapse = LinearMapOnAlgebra::from_function(
        a, a, [](const Element& y) { return y.trace() * Element::identity(y.algebra()); });
    CHECK_FALSE(collapse.is_bijective());
    CHECK_THROWS_AS(LinearMapOnAlgebra(a, a, Matrix::Zero(3, 3)), Error);
  }

  TEST_CASE("morphisms from unitaries") {
    const Algebra a({3});
    const LatticeMorphism id = identity_morphism(a);
    CHECK(id.claims.cortho);
    CHECK(id.claims.orthoiso);
    Rng rng(3);
    const Projection p = random_projection(a, rng);
    CHECK(oracle::norm(id(p).element() - p.element()) < 1e-14);

    const LatticeMorphism tr = make_morphism_from_unitary(Element::identity(a), true);
    CHECK(oracle::norm(tr(p).element() - p.element().transpose()) < 1e-14);

    const Element u = random_unitary(a, rng);
    const LatticeMorphism conj = make_morphism_from_unitary(u, false);
    CHECK(oracle::norm(conj(p).element() - u * p.element() * u.adjoint()) < 1e-13);

    try {
      make_morphism_from_unitary(2.0 * Element::identity(a), false);
      FAIL("expected NotUnitary");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotUnitary);
    }
    CHECK_THROWS_AS(make_morphism_from_unitary(Element::identity(Algebra({2, 2})), false, {0, 0}), Error);

    const Algebra b({2, 3});
    const LatticeMorphism swap = make_morphism_from_unitary(Element::identity(b), false, {1, 0});
    CHECK(swap.target == Algebra({3, 2}));
    const Projection q = random_projection(b, rng);
    CHECK((swap(q).block(0) - q.block(1)).norm() < 1e-14);
    CHECK((swap(q).block(1) - q.block(0)).norm() < 1e-14);
  }

  TEST_CASE("cortho audit") {
    const Algebra a({3, 1});
    const AuditReport id = cortho_audit(identity_morphism(a), {1, 60});
    CHECK(id.worst() <= 1e-14);
    for (const char* name : {"unit", "orthocomplement", "join", "orthogonal_sum"}) {
      REQUIRE(id.find(name));
      CHECK(id.find(name)->trials > 0);
    }
    for (int t = 0; t < 20; ++t) CHECK(cortho_audit(seeded_morphism(mix_seed(51, t), true), {std::uint64_t(t), 40}).worst() <= 1e-9);

    const LatticeMorphism base = identity_morphism(a);
    const Projection target = frame_projections(a)[2];
    const LatticeMorphism fault = make_fault_morphism(base, target);
    const AuditReport bad = cortho_audit(fault, {1, 40});
    CHECK(bad.worst() >= 0.99);
    const ResidualRecord* ortho = bad.find("orthocomplement");
    REQUIRE(ortho);
    CHECK(ortho->worst >= 0.99);
    REQUIRE_FALSE(ortho->witness.empty());
    bool mentions_target = false;
    for (const auto& w : ortho->witness) mentions_target = mentions_target || oracle::norm(w - target.element()) < 1e-9;
    CHECK(mentions_target);
  }

  TEST_CASE("fault morphism only changes the break point") {
    const Algebra a({3});
    Rng rng(4);
    const LatticeMorphism base = make_morphism_from_unitary(random_unitary(a, rng), false);
    const Projection at = random_projection(a, {1}, rng);
    const LatticeMorphism fault = make_fault_morphism(base, at);
    CHECK(oracle::norm(fault(at).element() - orthocomplement(base(at)).element()) < 1e-12);
    const Projection other = random_projection(a, {1}, rng);
    CHECK(oracle::norm(fault(other).element() - base(other).element()) < 1e-14);
  }

  TEST_CASE("symmetry equivariance") {
    const Algebra a({3});
    const ResidualRecord id = equivariance_check(identity_morphism(a), {1, 50});
    CHECK(id.worst <= 1e-12);
    CHECK(id.trials >= 50);

    const ResidualRecord big = equivariance_check(seeded_morphism(5, false), {5, 500});
    CHECK(big.worst <= 1e-9);
    CHECK(big.trials >= 500);

    try {
      equivariance_check(identity_morphism(Algebra({2, 3})), {1, 5});
      FAIL("expected TypeI2Present");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TypeI2Present);
    }
    LatticeMorphism unclaimed = identity_morphism(a);
    unclaimed.claims.cortho = false;
    CHECK_THROWS_AS(equivariance_check(unclaimed, {1, 5}), Error);
  }

  TEST_CASE("spectral extension of implemented morphisms") {
    Rng rng(6);
    const Algebra a({3, 4});
    const LinearMapOnAlgebra id = spectral_extension(identity_morphism(a));
    const Element x = random_element(a, rng);
    CHECK(oracle::norm(id(x) - x) <= 1e-10);
    CHECK(oracle::norm(spectral_apply(identity_morphism(a), x) - x) <= 1e-10);

    const Element u = random_unitary(a, rng);
    const LinearMapOnAlgebra conj = spectral_extension(make_morphism_from_unitary(u, false));
    for (int t = 0; t < 10; ++t) {
      const Element y = random_element(a, rng);
      CHECK(oracle::norm(conj(y) - u * y * u.adjoint()) <= 1e-9);
    }

    const LinearMapOnAlgebra tr = spectral_extension(make_morphism_from_unitary(Element::identity(a), true));
    const Element p = random_element(a, rng);
    const Element q = random_element(a, rng);
    CHECK(oracle::norm(tr(p) - p.transpose()) <= 1e-9);
    CHECK(oracle::norm(tr(p * q) - tr(p) * tr(q)) > 1e-3);
    CHECK(oracle::norm(tr(p * q) - tr(q) * tr(p)) <= 1e-9);

    CHECK_THROWS_AS(spectral_extension(identity_morphism(Algebra({2}))), Error);
  }

  TEST_CASE("additivity probe") {
    for (int t = 0; t < 10; ++t) {
      const LatticeMorphism phi = seeded_morphism(mix_seed(52, t), false);
      const AuditReport r = additivity_probe(phi, spectral_extension(phi), {std::uint64_t(t), 30});
      CHECK(r.worst() <= 1e-9);
      REQUIRE(r.find("additivity"));
      REQUIRE(r.find("representation"));
    }
    const Algebra a({3});
    const LatticeMorphism fault = make_fault_morphism(identity_morphism(a), frame_projections(a)[0]);
    const AuditReport r = additivity_probe(fault, spectral_extension(fault), {1, 30});
    CHECK(r.find("additivity")->worst > 1e-3);
    CHECK_FALSE(r.find("additivity")->witness.empty());
  }

  TEST_CASE("jordan audit") {
    const Algebra a({3, 1});
    const auto id = LinearMapOnAlgebra::from_function(a, a, [](const Element& x) { return x; });
    CHECK(jordan_audit(id, {1, 30}).worst() == doctest::Approx(0.0).epsilon(1e-14));

    const auto tr = spectral_extension(make_morphism_from_unitary(Element::identity(a), true));
    CHECK(jordan_audit(tr, {1, 30}).worst() <= 1e-10);

    const double n = a.rep_dim();
    const auto shifted = LinearMapOnAlgebra::from_function(a, a, [n](const Element& x) {
      return x + (x.trace() / n) * Element::identity(x.algebra());
    });
    const AuditReport bad = jordan_audit(shifted, {1, 30});
    REQUIRE(bad.find("square"));
    CHECK(bad.find("square")->worst > 0.1);
    CHECK(bad.find("star")->worst <= 1e-12);
  }

  TEST_CASE("wigner reconstruction") {
    const Algebra a({4});
    WignerResult w = wigner_reconstruct(identity_morphism(a), {1, 30});
    CHECK_FALSE(w.antiunitary);
    CHECK(w.fidelity >= 1.0 - 1e-12);
    const Complex phase = w.unitary.block(0)(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
    CHECK((w.unitary.block(0) - phase * Matrix::Identity(4, 4)).norm() < 1e-9);

    w = wigner_reconstruct(make_morphism_from_unitary(Element::identity(a), true), {1, 30});
    CHECK(w.antiunitary);
    CHECK(w.fidelity >= 1.0 - 1e-12);

    for (int t = 0; t < 20; ++t) {
      const LatticeMorphism phi = seeded_morphism(mix_seed(53, t), true);
      w = wigner_reconstruct(phi, {std::uint64_t(t), 30});
      CHECK(w.fidelity >= 1.0 - 1e-8);
      CHECK(is_unitary(w.unitary, 1e-9));
      Rng rng(mix_seed(54, t));
      for (int i = 0; i < 10; ++i) {
        const Projection p = random_projection(phi.source, rng);
        CHECK(oracle::norm(wigner_apply(w, phi.target, p).element() - phi(p).element()) <= 1e-8);
      }
    }

    LatticeMorphism unclaimed = identity_morphism(a);
    unclaimed.claims.orthoiso = false;
    try {
      wigner_reconstruct(unclaimed);
      FAIL("expected NotOrthoiso");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotOrthoiso);
    }
  }

  TEST_CASE("wigner reconstruction detects a broken morphism") {
    const Algebra a({3});
    const LatticeMorphism fault = make_fault_morphism(identity_morphism(a), frame_projections(a)[0]);
    try {
      wigner_reconstruct(fault, {1, 30});
      FAIL("expected ReconstructionFailed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ReconstructionFailed);
    }
  }

  TEST_CASE("join continuity") {
    const Algebra a({4});
    Rng rng(7);
    const Projection p = random_projection(a, rng);
    const LatticeMorphism id = identity_morphism(a);
    CHECK(join_continuity_audit(id, {{p, p, p}}).worst() <= 1e-12);

    const auto chains = sample_chains(a, {1, 10});
    CHECK(chains.size() >= 12);
    for (const auto& chain : chains)
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) CHECK(leq(chain[i], chain[i + 1], 1e-9));
    CHECK(join_continuity_audit(id, chains).worst() <= 1e-10);
    CHECK(join_continuity_audit(seeded_morphism(8, true), sample_chains(seeded_morphism(8, true).source, {2, 10}))
              .worst() <= 1e-9);

    const LatticeMorphism fault = make_fault_morphism(id, frame_projections(a)[0]);
    const AuditReport bad = join_continuity_audit(fault, chains);
    CHECK(bad.worst() > 0.5);
    CHECK_FALSE(bad.find("monotone")->witness.empty());
  }

  TEST_CASE("extension bijectivity for implemented morphisms") {
    for (int t = 0; t < 10; ++t) {
      const LatticeMorphism phi = seeded_morphism(mix_seed(55, t), false);
      const LinearMapOnAlgebra ext = spectral_extension(phi);
      CHECK(ext.is_bijective());
      CHECK(ext.condition_number() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}
