#include <cstdint>
#include <limits>

#include "doctest.h"

#include "defseq/defect.hpp"
#include "defseq/errors.hpp"
#include "defseq/models.hpp"
#include "defseq/verify.hpp"
#include "oracles.hpp"

using namespace defseq;

namespace {

std::size_t oracle_delta(const OperatorTuple& t, std::size_t n) {
  return oracle::gram_schmidt_rank(ComplexMatrix::identity(t.dim()) - oracle::word_sum(t, n));
}

}  // namespace

TEST_CASE("bounds agree with the summation oracle") {
  for (std::size_t d = 1; d <= 4; ++d) {
    for (std::size_t n = 1; n <= 7; ++n) {
      for (std::uint64_t delta : {0u, 1u, 3u}) {
        CHECK(geometric_bound(d, n, delta) == oracle::geometric(d, n, delta));
        CHECK(binomial_bound(d, n, delta) == oracle::binomial_sum(d, n, delta));
      }
    }
  }
  CHECK(geometric_bound(2, 6, 1) == 63);
  CHECK(binomial_bound(2, 6, 1) == 21);
  CHECK(binomial_bound(3, 4, 1) == 20);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  CHECK(geometric_bound(10, 40, 5) == kMax);
  CHECK(binomial_bound(30, 60, 7) == kMax);
  CHECK(geometric_bound(1, 5, 2) == 10);
}

TEST_CASE("defect dimensions match the Gram-Schmidt oracle on random tuples") {
  for (std::size_t idx = 0; idx < 12; ++idx) {
    const auto s = contractive_sample(5, idx);
    for (std::size_t n = 1; n <= 3; ++n) {
      CAPTURE(s.description);
      CAPTURE(n);
      CHECK(defect_dimension(s.tuple, n) == oracle_delta(s.tuple, n));
    }
  }
}

TEST_CASE("defect operator is I minus the word sum") {
  const auto t = random_contractive(3, 4, 2, 8);
  CHECK(max_abs_diff(defect_operator(t, 2), ComplexMatrix::identity(4) - oracle::word_sum(t, 2)) < 1e-12);
  CHECK(min_defect_eigenvalue(t) > -1e-12);
}

TEST_CASE("non-contractive input is rejected") {
  const auto big = OperatorTuple({ComplexMatrix::identity(2) * Complex(1.5)});
  CHECK(min_defect_eigenvalue(big) == doctest::Approx(-1.25));
  CHECK_THROWS_AS(require_contractive(big, {}), NonContractiveError);
  CHECK_THROWS_AS(defect_sequence(big, 3), NonContractiveError);
}

TEST_CASE("defect sequence of the truncated Fock tuple") {
  const auto r = defect_sequence(fock_creation(2, 4), 10);
  CHECK(r.deltas == std::vector<std::size_t>{1, 3, 7, 15, 31});
  CHECK(r.reached_full);
  CHECK(r.stabilized_at == std::optional<std::size_t>(5));
  CHECK(!r.commuting);
  CHECK(r.comm_bounds.empty());
  for (std::size_t k = 0; k < 5; ++k) CHECK(r.noncomm_bounds[k] == r.deltas[k]);
}

TEST_CASE("early stop reports the first index of the constant tail") {
  // Coisometric block plus a one-dimensional zero block: Delta stays 1.
  const auto u = OperatorTuple({ComplexMatrix::identity(1), ComplexMatrix::zeros(1, 1)});
  const auto t = direct_sum(u, OperatorTuple::zero(2, 1));
  const auto r = defect_sequence(t, 8);
  CHECK(r.deltas == std::vector<std::size_t>{1, 1});
  CHECK(r.stabilized_at == std::optional<std::size_t>(1));
  CHECK(!r.reached_full);
  const auto full = defect_sequence(t, 5, {}, {.early_stop = false});
  CHECK(full.deltas.size() == 5);
  CHECK(full.stabilized_at == std::optional<std::size_t>(1));

  const auto z = defect_sequence(OperatorTuple::zero(2, 3), 4);
  CHECK(z.deltas == std::vector<std::size_t>{3});
  CHECK(z.reached_full);
  CHECK(z.commuting);
  CHECK(z.comm_bounds == std::vector<std::uint64_t>{3});
}

TEST_CASE("property: monotone, bounded, persistent stabilization") {
  for (std::size_t idx = 0; idx < 40; ++idx) {
    const auto s = contractive_sample(11, idx);
    CAPTURE(s.description);
    const auto r = defect_sequence(s.tuple, s.tuple.dim() + 2, {}, {.early_stop = false});
    for (std::size_t k = 0; k < r.deltas.size(); ++k) {
      CHECK(r.deltas[k] <= s.tuple.dim());
      CHECK(r.bound_ok_noncomm[k]);
      if (k > 0) CHECK(r.deltas[k] >= r.deltas[k - 1]);
      if (k > 0 && r.deltas[k] == r.deltas[k - 1]) {
        for (std::size_t j = k; j < r.deltas.size(); ++j) CHECK(r.deltas[j] == r.deltas[k]);
      }
    }
  }
}

TEST_CASE("property: word span equals defect space") {
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const auto s = idx % 2 ? coinvariant_sample(3, idx) : contractive_sample(3, idx);
    CAPTURE(s.description);
    for (std::size_t n = 1; n <= 3; ++n) {
      const Subspace a = defect_space(s.tuple, n);
      const Subspace b = defect_space_via_words(s.tuple, n);
      CHECK(a.dim() == b.dim());
      CHECK(subspace_equal(a, b, RankTolerance{1e-7, 1e-10}));
    }
  }
}

TEST_CASE("word image dimension") {
  CHECK(word_image_dimension(fock_creation(2, 3), 1) == 2);
  CHECK(word_image_dimension(fock_creation(2, 3), 2) == 4);
  CHECK(word_image_dimension(OperatorTuple::zero(2, 3), 1) == 0);
}

TEST_CASE("rank symmetry verdicts") {
  const auto z = rank_symmetry_check(OperatorTuple::zero(2, 1), 1);
  CHECK(z.rank_left == 1);
  CHECK(z.rank_right == 2);
  CHECK(z.ker_dim == 2);
  CHECK(z.coker_dim == 1);
  CHECK(z.biconditional_holds());

  const auto u = rank_symmetry_check(OperatorTuple({ComplexMatrix::identity(3)}), 2);
  CHECK(u.equal_ranks);
  CHECK(u.equal_kernels);

  const auto t = random_contractive(2, 3, 1, 9);
  const auto v = rank_symmetry_check(t, 1);
  CHECK(v.rank_left == 1);
  CHECK(v.rank_right == 4);
  CHECK(v.ker_dim == 3);
  CHECK(v.coker_dim == 0);
  CHECK(v.biconditional_holds());

  SizeLimits tight;
  tight.max_row_width = 8;
  CHECK_THROWS_AS(rank_symmetry_check(t, 3, {}, tight), ResourceError);
}

TEST_CASE("product bounds against the oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto b = random_contractive(2, 4, 1 + seed % 3, seed);
    const auto c = random_contractive(1 + seed % 2, 4, seed % 3, seed + 50);
    const auto p = verify_product_bounds(b, c);
    CHECK(p.m == 2);
    CHECK(p.delta_bc == oracle_delta(tuple_product(b, c), 1));
    CHECK(p.lower_ok);
    CHECK(p.upper_ok);
  }
}
