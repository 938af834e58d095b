#include <cmath>

#include "doctest.h"

#include "defseq/classifier.hpp"
#include "defseq/defect.hpp"
#include "defseq/errors.hpp"
#include "defseq/models.hpp"
#include "oracles.hpp"

using namespace defseq;

TEST_CASE("contractivity") {
  CHECK(is_contractive(fock_creation(2, 2)));
  CHECK(is_contractive(OperatorTuple({ComplexMatrix::identity(2)})));
  CHECK(!is_contractive(OperatorTuple({ComplexMatrix::identity(2), ComplexMatrix::identity(2)})));
}

TEST_CASE("purity verdicts") {
  const auto pure = purity(fock_creation(2, 3));
  CHECK(pure.status == PurityStatus::Pure);
  CHECK(pure.iterations == 4);
  CHECK(!pure.limit);

  const auto unitary = purity(OperatorTuple({ComplexMatrix::identity(3)}));
  CHECK(unitary.status == PurityStatus::NotPure);
  REQUIRE(unitary.limit);
  CHECK(max_abs_diff(*unitary.limit, ComplexMatrix::identity(3)) < 1e-12);

  // A lone scalar 0.999 contracts too slowly for a short budget.
  PurityOptions tight;
  tight.max_iter = 50;
  const auto slow = purity(OperatorTuple({ComplexMatrix{{0.999}}}), tight);
  CHECK(slow.status == PurityStatus::Undecided);
  CHECK(slow.iterations == 50);
  CHECK(slow.residual_norm == doctest::Approx(std::pow(0.999, 100)).epsilon(1e-9));

  CHECK(std::string(purity_status_name(PurityStatus::NotPure)) == "not_pure");
  CHECK_THROWS_AS((PurityOptions{0, 1e-10, 1e-12}.validate()), PreconditionError);
}

TEST_CASE("purity limit of a spherical direct sum is a projection") {
  const Complex lambda[] = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  const auto t = dshift_spherical_sum(4, lambda, 1);
  const auto v = purity(t);
  CHECK(v.status == PurityStatus::NotPure);
  REQUIRE(v.limit);
  CHECK(max_abs_diff(*v.limit * *v.limit, *v.limit) < 1e-8);
  CHECK(trace(*v.limit).real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("default horizons") {
  CHECK(default_horizon_noncommutative(2, 31, 1) == 5);
  CHECK(default_horizon_noncommutative(2, 30, 1) == 4);
  CHECK(default_horizon_commuting(2, 15, 1) == 5);
  CHECK(default_horizon_commuting(3, 20, 1) == 4);
  CHECK(default_horizon_noncommutative(2, 5, 0) == 1);
  CHECK(default_horizon_noncommutative(1, 5, 5) == 1);
}

TEST_CASE("maximality on the canonical models") {
  CHECK(is_maximal_noncommutative(fock_creation(2, 4)));
  CHECK(is_maximal_noncommutative(fock_creation(3, 2)));
  CHECK(is_maximal_commuting(symmetric_fock_shift(2, 4)));
  CHECK(is_maximal_commuting(symmetric_fock_shift(3, 3)));
  CHECK(!is_maximal_noncommutative(symmetric_fock_shift(2, 4)));

  const auto rj = maximality_noncommutative(right_creation_compression(2, 3, 1));
  CHECK(!rj.maximal);
  CHECK(rj.first_mismatch == std::optional<std::size_t>(2));
  CHECK(rj.deltas == std::vector<std::size_t>{1, 2});

  CHECK_THROWS_AS(maximality_commuting(fock_creation(2, 2)), PreconditionError);

  const auto fixed = maximality_noncommutative(fock_creation(2, 3), 2);
  CHECK(fixed.maximal);
  CHECK(fixed.horizon == 2);
  CHECK(!fixed.horizon_defaulted);
}

TEST_CASE("commutant dimension") {
  CHECK(commutant_dimension(fock_creation(2, 2)) == 1);
  CHECK(commutant_dimension(OperatorTuple({ComplexMatrix::identity(3)})) == 9);
  const Complex d[] = {1.0, 2.0, 3.0};
  CHECK(commutant_dimension(OperatorTuple({ComplexMatrix::diagonal(d)})) == 3);
  CHECK(commutant_dimension(fock_dshift_sum(2, 2)) >= 2);
  CHECK(!is_irreducible(direct_sum(fock_creation(2, 1), fock_creation(2, 1))));
  CHECK(commutant_dimension(direct_sum(fock_creation(2, 1), fock_creation(2, 1))) == 4);
  SizeLimits tight;
  tight.max_commutant_dim = 4;
  CHECK_THROWS_AS(commutant_dimension(fock_creation(2, 2), {}, tight), ResourceError);
}

TEST_CASE("classification report") {
  const auto r = classify(pure_nonmaximal_example(2, 4, 0.5));
  CHECK(r.contractive);
  CHECK(r.delta_1 == 2);
  REQUIRE(r.purity);
  CHECK(r.purity->status == PurityStatus::Pure);
  REQUIRE(r.maximal_noncomm);
  CHECK(!r.maximal_noncomm->maximal);
  CHECK(r.commuting);
  REQUIRE(r.maximal_comm);
  CHECK(!r.maximal_comm->maximal);
  CHECK(r.irreducible_pure_consistent);

  const auto bad = classify(OperatorTuple({ComplexMatrix::identity(2) * Complex(2.0)}));
  CHECK(!bad.contractive);
  CHECK(!bad.purity);
  CHECK(!bad.maximal_noncomm);

  const auto big = classify(fock_creation(2, 5));
  CHECK(!big.commutant_dim);
  CHECK(big.purity->status == PurityStatus::Pure);
  CHECK(big.maximal_noncomm->maximal);
}
