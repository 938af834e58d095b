#include "doctest.h"

#include "defseq/errors.hpp"
#include "defseq/models.hpp"
#include "defseq/random.hpp"
#include "defseq/tuple.hpp"
#include "oracles.hpp"

using namespace defseq;

TEST_CASE("words are listed lexicographically") {
  const auto w = all_words(3, 2);
  REQUIRE(w.size() == 9);
  CHECK(w[0].letters == std::vector<std::size_t>{0, 0});
  CHECK(w[1].letters == std::vector<std::size_t>{0, 1});
  CHECK(w[8].letters == std::vector<std::size_t>{2, 2});
  const auto ow = oracle::words(3, 2);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i].letters == ow[i]);
  CHECK(all_words(2, 0).size() == 1);
  CHECK(Word{{0, 2}}.to_string() == "(1,3)");
}

TEST_CASE("tuple construction validates shapes") {
  CHECK_THROWS_AS(OperatorTuple({}), PreconditionError);
  CHECK_THROWS_AS(OperatorTuple({ComplexMatrix(2, 2), ComplexMatrix(3, 3)}), DimensionError);
  CHECK_THROWS_AS(OperatorTuple({ComplexMatrix(2, 3)}), DimensionError);
  const auto z = OperatorTuple::zero(2, 3);
  CHECK(z.arity() == 2);
  CHECK(z.dim() == 3);
}

TEST_CASE("iterated CP map equals the sum over words") {
  const auto t = random_contractive(2, 5, 2, 17);
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(max_abs_diff(cp_iterate(t, n), oracle::word_sum(t, n)) < 1e-12);
  }
  const auto x = oracle::word_sum(t, 1);
  CHECK(max_abs_diff(apply_cp_map(t, ComplexMatrix::identity(5)), x) < 1e-13);
}

TEST_CASE("tuple product and power") {
  const auto b = random_contractive(2, 4, 1, 1);
  const auto c = random_contractive(3, 4, 2, 2);
  const auto bc = tuple_product(b, c);
  REQUIRE(bc.arity() == 6);
  CHECK(max_abs_diff(bc[1 * 3 + 2], oracle::multiply(b[1], c[2])) < 1e-14);

  const auto p3 = tuple_power(c, 3);
  REQUIRE(p3.arity() == 27);
  const auto words = oracle::words(3, 3);
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(max_abs_diff(p3[i], oracle::word_product(c, words[i])) < 1e-13);
  }
  SizeLimits tight;
  tight.max_words = 8;
  CHECK_THROWS_AS(tuple_power(c, 2, tight), ResourceError);

  const auto id = OperatorTuple({ComplexMatrix::identity(4)});
  const auto copy = tuple_product(id, c);
  for (std::size_t i = 0; i < 3; ++i) CHECK(copy[i] == c[i]);
}

TEST_CASE("commutation and invariant subspaces") {
  const auto v = fock_creation(2, 2);
  CHECK(!is_commuting(v));
  CHECK(max_commutator_norm(v) > 0.5);
  CHECK(is_commuting(symmetric_fock_shift(2, 3)));
  CHECK(is_commuting(OperatorTuple::zero(3, 2)));

  // The vacuum line is co-invariant but not invariant.
  ComplexMatrix vac(7, 1);
  vac(0, 0) = 1.0;
  const Subspace line(vac);
  CHECK(is_coinvariant(v, line));
  CHECK(!is_invariant(v, line));
  CHECK(!is_reducing(v, line));
  const auto cpr = compress(v, line);
  CHECK(cpr.dim() == 1);
  CHECK(max_abs(cpr[0]) == 0.0);

  const auto ds = direct_sum(v, OperatorTuple::zero(2, 3));
  CHECK(ds.dim() == 10);
  ComplexMatrix tail(10, 3);
  for (std::size_t i = 0; i < 3; ++i) tail(7 + i, i) = 1.0;
  CHECK(is_reducing(ds, Subspace(tail)));
}

TEST_CASE("row operator and word application") {
  const auto t = random_contractive(3, 3, 1, 4);
  const auto r = row_operator(t);
  CHECK(r.rows() == 3);
  CHECK(r.cols() == 9);
  CHECK(max_abs_diff(r.block(0, 3, 3, 3), t[1]) == 0.0);
  CHECK(max_abs_diff(word_apply(t, Word{{2, 0, 1}}), oracle::word_product(t, {2, 0, 1})) < 1e-14);
  CHECK_THROWS_AS(word_apply(t, Word{{3}}), PreconditionError);
}
