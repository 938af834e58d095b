#include "defseq/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "defseq/defect.hpp"
#include "defseq/errors.hpp"
#include "defseq/models.hpp"
#include "defseq/random.hpp"

namespace defseq {

namespace {

std::string hex_seed(std::uint64_t s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(s));
  return buf;
}

std::string join_counts(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string context(const std::string& where, const EnsembleSample& s, const std::string& detail = {}) {
  std::string c = where + " " + s.description;
  if (!detail.empty()) c += ": " + detail;
  return c;
}

OperatorTuple adjoint_tuple(const OperatorTuple& t) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(t.arity());
  for (const auto& op : t.ops()) ops.push_back(op.adjoint());
  return OperatorTuple(std::move(ops), t.label() + "^*");
}

std::vector<EnsembleSample> defect_ensemble(const VerifyOptions& o) {
  std::vector<EnsembleSample> out;
  for (std::size_t i = 0; i < o.samples; ++i) out.push_back(contractive_sample(o.seed, i));
  for (std::size_t i = 0; i < o.samples / 4; ++i) out.push_back(coinvariant_sample(o.seed, i));
  return out;
}

EnsembleSample named(OperatorTuple t) {
  std::string label = t.label();
  return {std::move(t), std::move(label)};
}

std::vector<EnsembleSample> model_tuples(const SizeLimits& limits) {
  const std::array<Complex, 2> half{Complex(std::numbers::sqrt2 / 2, 0), Complex(std::numbers::sqrt2 / 2, 0)};
  std::vector<EnsembleSample> out;
  out.push_back(named(fock_creation(2, 2, limits)));
  out.push_back(named(fock_creation(2, 3, limits)));
  out.push_back(named(fock_creation(3, 2, limits)));
  out.push_back(named(fock_creation(1, 4, limits)));
  out.push_back(named(symmetric_fock_shift(2, 3, limits)));
  out.push_back(named(symmetric_fock_shift(3, 2, limits)));
  out.push_back(named(right_creation_compression(2, 3, 1, limits)));
  out.push_back(named(right_creation_compression(3, 2, 0, limits)));
  out.push_back(named(pure_nonmaximal_example(2, 4, 0.5, limits)));
  out.push_back(named(pure_nonmaximal_example(3, 2, 0.9, limits)));
  out.push_back(named(fock_dshift_sum(2, 2, limits)));
  out.push_back(named(dshift_spherical_sum(3, half, 2, limits)));
  out.push_back(named(OperatorTuple::zero(2, 3)));
  return out;
}

// Delta strictly increases until it reaches h and stays there afterwards.
bool strictly_increasing_to_full(const std::vector<std::size_t>& deltas, std::size_t h) {
  for (std::size_t k = 1; k < deltas.size(); ++k) {
    if (deltas[k - 1] < h ? deltas[k] <= deltas[k - 1] : deltas[k] != h) return false;
  }
  return true;
}

SuiteOutcome suite_lemma21(const VerifyOptions& o) {
  PropertyOutcome mono{"monotone"}, geo{"geometric_bound"}, cap{"bounded_by_dim"}, bin{"binomial_bound_commuting"};
  for (const auto& s : defect_ensemble(o)) {
    const auto rep = defect_sequence(s.tuple, s.tuple.dim() + 1, o.tol, {.early_stop = false});
    const std::string seq = join_counts(rep.deltas);
    bool is_mono = true, in_cap = true;
    for (std::size_t k = 0; k < rep.deltas.size(); ++k) {
      if (k && rep.deltas[k] < rep.deltas[k - 1]) is_mono = false;
      if (rep.deltas[k] > s.tuple.dim()) in_cap = false;
    }
    mono.record(is_mono, context("lemma21", s, seq));
    cap.record(in_cap, context("lemma21", s, seq));
    geo.record(std::all_of(rep.bound_ok_noncomm.begin(), rep.bound_ok_noncomm.end(), [](bool b) { return b; }),
               context("lemma21", s, seq));
    if (rep.commuting) {
      bin.record(std::all_of(rep.bound_ok_comm.begin(), rep.bound_ok_comm.end(), [](bool b) { return b; }),
                 context("lemma21", s, seq));
    } else {
      bin.skip();
    }
  }
  return {"lemma21", {mono, geo, cap, bin}, {}};
}

SuiteOutcome suite_cor23(const VerifyOptions& o) {
  PropertyOutcome eq{"word_span_equals_defect_space"}, nest{"nesting"};
  for (const auto& s : defect_ensemble(o)) {
    const std::size_t n_max = std::min<std::size_t>(4, s.tuple.dim());
    Subspace prev = defect_space(s.tuple, 1, o.tol);
    for (std::size_t n = 1; n <= n_max; ++n) {
      const Subspace direct = n == 1 ? prev : defect_space(s.tuple, n, o.tol);
      const Subspace words = defect_space_via_words(s.tuple, n, o.tol);
      eq.record(subspace_equal(direct, words, o.tol),
                context("cor23", s, "n=" + std::to_string(n) + " dims " + std::to_string(direct.dim()) + " vs " +
                                        std::to_string(words.dim())));
      if (n > 1) nest.record(subspace_contains(direct, prev, o.tol), context("cor23", s, "n=" + std::to_string(n)));
      prev = direct;
    }
  }
  return {"cor23", {eq, nest}, {}};
}

SuiteOutcome suite_thm24(const VerifyOptions& o) {
  PropertyOutcome extra{"persists_one_extra_step"}, tail{"constant_tail"};
  std::size_t below_full = 0, total = 0;
  for (const auto& s : defect_ensemble(o)) {
    const std::size_t h = s.tuple.dim();
    const auto rep = defect_sequence(s.tuple, h + 2, o.tol);
    ++total;
    if (!rep.stabilized_at) {
      extra.skip();
      tail.skip();
      continue;
    }
    const std::size_t at = *rep.stabilized_at;
    const std::size_t value = rep.delta(at);
    if (value < h) ++below_full;
    const std::size_t next = defect_dimension(s.tuple, at + 2, o.tol);
    extra.record(next == value, context("thm24", s,
                                        "stabilized at n=" + std::to_string(at) + " with " + std::to_string(value) +
                                            ", n+2 gives " + std::to_string(next)));
    const auto full = defect_sequence(s.tuple, h + 2, o.tol, {.early_stop = false});
    bool constant = true;
    for (std::size_t n = at; n <= full.deltas.size(); ++n) constant = constant && full.delta(n) == value;
    tail.record(constant, context("thm24", s, join_counts(full.deltas)));
  }
  nlohmann::ordered_json data;
  data["samples"] = total;
  data["stabilized_below_full"] = below_full;
  return {"thm24", {extra, tail}, {{"stabilization_profile", data}}};
}

SuiteOutcome suite_thm27(const VerifyOptions& o) {
  PropertyOutcome bic{"rank_kernel_biconditional"};
  std::size_t equal_cases = 0;
  for (const auto& s : defect_ensemble(o)) {
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto v = rank_symmetry_check(s.tuple, n, o.tol, o.limits);
      if (v.equal_ranks) ++equal_cases;
      bic.record(v.biconditional_holds(),
                 context("thm27", s,
                         "n=" + std::to_string(n) + " ranks " + std::to_string(v.rank_left) + "/" +
                             std::to_string(v.rank_right) + " kernels " + std::to_string(v.ker_dim) + "/" +
                             std::to_string(v.coker_dim)));
    }
  }
  const OperatorTuple zero = OperatorTuple::zero(2, 1);
  const auto v = rank_symmetry_check(zero, 1, o.tol, o.limits);
  bic.record(v.biconditional_holds() && !v.equal_ranks, "thm27 zero 2-tuple on C^1");
  nlohmann::ordered_json data;
  data["equal_rank_cases"] = equal_cases;
  return {"thm27", {bic}, {{"rank_symmetry_profile", data}}};
}

SuiteOutcome suite_lemma25(const VerifyOptions& o) {
  PropertyOutcome strict{"pure_strict_increase"}, gap{"contraction_gap_implies_pure"}, shift{"nilpotent_shift_sequence"};
  for (const auto& s : defect_ensemble(o)) {
    const auto p = purity(s.tuple, o.purity, o.tol);
    if (p.status != PurityStatus::Pure) {
      strict.skip();
      continue;
    }
    const auto rep = defect_sequence(s.tuple, s.tuple.dim() + 1, o.tol, {.early_stop = false});
    strict.record(strictly_increasing_to_full(rep.deltas, s.tuple.dim()), context("lemma25", s, join_counts(rep.deltas)));
  }
  for (std::size_t i = 0; i < o.samples; ++i) {
    SplitMix64 rng(derive_seed(o.seed ^ 0x25, i));
    const std::size_t d = 1 + rng.below(3), h = 2 + rng.below(6);
    const std::uint64_t sub = rng.next();
    const OperatorTuple t = random_contractive(d, h, h, sub);
    const double norm = spectral_norm(cp_iterate(t, 1));
    if (norm > 1.0 - 1e-3) {
      gap.skip();
      continue;
    }
    gap.record(purity(t, o.purity, o.tol).status == PurityStatus::Pure,
               "lemma25 " + t.label() + " |P_T(I)| = " + std::to_string(norm));
  }
  const OperatorTuple nil = fock_creation(1, 4, o.limits);
  const auto rep = defect_sequence(nil, 6, o.tol, {.early_stop = false});
  const std::vector<std::size_t> expected{1, 2, 3, 4, 5, 5};
  shift.record(rep.deltas == expected, "lemma25 nilpotent shift on C^5 " + join_counts(rep.deltas));
  return {"lemma25", {strict, gap, shift}, {}};
}

SuiteOutcome suite_lemma26(const VerifyOptions& o) {
  PropertyOutcome shift{"shift_sequence"}, rank1{"rank_one_pure_sequence"};
  for (std::size_t h = 2; h <= 7; ++h) {
    const OperatorTuple t = fock_creation(1, h - 1, o.limits);
    const auto rep = defect_sequence(t, h + 1, o.tol, {.early_stop = false});
    bool ok = true;
    for (std::size_t n = 1; n <= rep.deltas.size(); ++n) ok = ok && rep.delta(n) == std::min(n, h);
    shift.record(ok, "lemma26 shift on C^" + std::to_string(h) + " " + join_counts(rep.deltas));
  }
  std::vector<EnsembleSample> pool;
  for (std::size_t i = 0; i < o.samples; ++i) {
    SplitMix64 rng(derive_seed(o.seed ^ 0x26, i));
    const std::size_t h = 2 + rng.below(7);
    const std::uint64_t sub = rng.next();
    pool.push_back(named(random_contractive(1, h, 1, sub)));
  }
  for (std::size_t i = 0; i < o.samples / 4; ++i) pool.push_back(coinvariant_sample(o.seed, i));
  for (const auto& s : pool) {
    const OperatorTuple& t = s.tuple;
    if (defect_dimension(t, 1, o.tol) != 1 || purity(t, o.purity, o.tol).status != PurityStatus::Pure) {
      rank1.skip();
      continue;
    }
    const std::size_t h = t.dim();
    const auto rep = defect_sequence(t, h + 1, o.tol, {.early_stop = false});
    bool premise = true, checked = false, ok = true;
    for (std::size_t n = 2; n <= h + 1 && premise; ++n) {
      premise = word_image_dimension(t, n - 1, o.tol) == 1;
      if (!premise) break;
      checked = true;
      ok = ok && rep.delta(n) == std::min(n, h);
    }
    if (!checked) {
      rank1.skip();
      continue;
    }
    rank1.record(ok, context("lemma26", s, join_counts(rep.deltas)));
  }
  return {"lemma26", {shift, rank1}, {}};
}

SuiteOutcome suite_product_bounds(const VerifyOptions& o) {
  PropertyOutcome lower{"lower_bound"}, upper{"upper_bound"};
  for (std::size_t i = 0; i < o.samples; ++i) {
    SplitMix64 rng(derive_seed(o.seed ^ 0xB0C, i));
    const std::size_t m = 1 + rng.below(3), k = 1 + rng.below(3), h = 2 + rng.below(5);
    const std::size_t rb = rng.below(h + 1), rc = rng.below(h + 1);
    const std::uint64_t sb = rng.next(), sc = rng.next();
    const OperatorTuple b = random_contractive(m, h, rb, sb);
    const OperatorTuple c = random_contractive(k, h, rc, sc);
    const auto r = verify_product_bounds(b, c, o.tol);
    const std::string ctx = "product-bounds sample " + std::to_string(i) + " B=" + b.label() + " C=" + c.label() +
                            " deltas " + std::to_string(r.delta_b) + "," + std::to_string(r.delta_c) + "," +
                            std::to_string(r.delta_bc);
    lower.record(r.lower_ok, ctx);
    upper.record(r.upper_ok, ctx);
  }
  return {"product-bounds", {lower, upper}, {}};
}

SuiteOutcome suite_lemma51(const VerifyOptions& o) {
  PropertyOutcome coinv{"coinvariant_verified"}, inv{"invariant_verified"}, coinv_pure{"coinvariant_compression_pure"},
      inv_pure{"invariant_compression_pure"}, adj{"compression_adjoint_is_restriction"};
  for (std::size_t i = 0; i < o.samples; ++i) {
    SplitMix64 rng(derive_seed(o.seed ^ 0x51, i));
    OperatorTuple t = OperatorTuple::zero(1, 1);
    if (i % 2 == 0) {
      static constexpr std::array<std::pair<std::size_t, std::size_t>, 3> shapes{{{2, 2}, {2, 3}, {3, 2}}};
      const auto [d, levels] = shapes[rng.below(shapes.size())];
      t = fock_creation(d, levels, o.limits);
    } else {
      const std::size_t d = 1 + rng.below(3), h = 3 + rng.below(6);
      t = random_contractive(d, h, h, rng.next());
    }
    const std::size_t gens = 1 + rng.below(2);
    std::vector<ComplexMatrix> g;
    for (std::size_t j = 0; j < gens; ++j) g.push_back(random_unit_vector(t.dim(), rng));
    const ComplexMatrix gm = hstack(g);
    const std::string ctx = "lemma51 sample " + std::to_string(i) + " " + t.label();

    const Subspace mc = coinvariant_subspace(t, gm, o.tol);
    coinv.record(is_coinvariant(t, mc, o.tol), ctx + " co-invariant dim " + std::to_string(mc.dim()));
    const OperatorTuple tc = compress(t, mc);
    coinv_pure.record(purity(tc, o.purity, o.tol).status == PurityStatus::Pure, ctx + " co-invariant");
    double worst = 0.0;
    for (std::size_t k = 0; k < t.arity(); ++k) {
      worst = std::max(worst, max_abs_diff(adjoint_multiply(t[k], mc.basis()), mc.basis() * tc[k].adjoint()));
    }
    adj.record(worst <= 1e-10, ctx + " adjoint mismatch " + std::to_string(worst));

    const Subspace mi = coinvariant_subspace(adjoint_tuple(t), gm, o.tol);
    inv.record(is_invariant(t, mi, o.tol), ctx + " invariant dim " + std::to_string(mi.dim()));
    inv_pure.record(purity(compress(t, mi), o.purity, o.tol).status == PurityStatus::Pure, ctx + " invariant");
  }
  return {"lemma51", {coinv, inv, coinv_pure, inv_pure, adj}, {}};
}

SuiteOutcome suite_lemma53(const VerifyOptions& o) {
  PropertyOutcome impl{"irreducible_positive_defect_is_pure"}, witness{"fock_witness"};
  std::vector<EnsembleSample> pool = model_tuples(o.limits);
  for (auto& s : defect_ensemble(o)) pool.push_back(std::move(s));
  std::size_t premise_count = 0;
  for (const auto& s : pool) {
    if (s.tuple.dim() > o.limits.max_commutant_dim) {
      impl.skip();
      continue;
    }
    const std::size_t comm = commutant_dimension(s.tuple, o.tol, o.limits);
    const std::size_t delta = defect_dimension(s.tuple, 1, o.tol);
    if (comm != 1 || delta == 0) {
      impl.skip();
      continue;
    }
    ++premise_count;
    const auto p = purity(s.tuple, o.purity, o.tol);
    impl.record(p.status == PurityStatus::Pure,
                context("lemma53", s, std::string("purity ") + purity_status_name(p.status)));
  }
  const OperatorTuple v = fock_creation(2, 3, o.limits);
  const std::size_t comm = commutant_dimension(v, o.tol, o.limits);
  const auto p = purity(v, o.purity, o.tol);
  witness.record(comm == 1 && p.status == PurityStatus::Pure,
                 "lemma53 fock(d=2,L=3) commutant " + std::to_string(comm) + " purity " + purity_status_name(p.status));
  nlohmann::ordered_json data;
  data["tuples"] = pool.size();
  data["irreducible_with_positive_defect"] = premise_count;
  return {"lemma53", {impl, witness}, {{"premise_coverage", data}}};
}

SuiteOutcome suite_lemma34(const VerifyOptions& o) {
  PropertyOutcome base{"ampliation_maximal"}, red{"reducing_verified"}, res{"restriction_maximal"};
  static constexpr std::array<std::pair<std::size_t, std::size_t>, 4> shapes{{{2, 2}, {2, 3}, {3, 2}, {1, 4}}};
  const std::size_t count = std::max<std::size_t>(1, o.samples / 5);
  for (std::size_t i = 0; i < count; ++i) {
    SplitMix64 rng(derive_seed(o.seed ^ 0x34, i));
    const auto [d, levels] = shapes[rng.below(shapes.size())];
    const std::size_t m = 2 + rng.below(2);
    const std::size_t k = 1 + rng.below(m - 1);
    const OperatorTuple t = fock_ampliation(d, levels, m, o.limits);
    const std::string ctx = "lemma34 sample " + std::to_string(i) + " " + t.label() + " k=" + std::to_string(k);

    const auto vt = maximality_noncommutative(t, std::nullopt, o.tol);
    base.record(vt.maximal, ctx);

    const Subspace kspace = orthonormal_range(ginibre(m, k, rng), o.tol);
    const std::size_t hv = t.dim() / m;
    const Subspace reducing(kron(ComplexMatrix::identity(hv), kspace.basis()), o.tol);
    red.record(is_reducing(t, reducing, o.tol), ctx);
    const auto vr = maximality_noncommutative(compress(t, reducing), vt.horizon, o.tol);
    res.record(vr.maximal, ctx + " deltas " + join_counts(vr.deltas));
  }
  return {"lemma34", {base, red, res}, {}};
}

SuiteOutcome suite_models(const VerifyOptions& o) {
  PropertyOutcome fock{"fock_defect_sequence"}, dshift{"dshift_defect_sequence"}, sym{"symmetrizer_projection"},
      oracle{"dshift_matches_compression"}, rj{"right_creation_defects"}, nonmax{"pure_nonmaximal"},
      sphere{"dshift_spherical_sum"}, vs{"fock_dshift_sum"}, rnd{"random_defect_rank"}, phi1{"phi_single_letter"};
  std::vector<Experiment> experiments;
  const RankTolerance& tol = o.tol;

  auto seq = [&](const OperatorTuple& t, std::size_t n) {
    return defect_sequence(t, n, tol, {.early_stop = false}).deltas;
  };

  for (const auto& [d, levels] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {2, 4}, {3, 2}, {1, 4}}) {
    const auto got = seq(fock_creation(d, levels, o.limits), levels);
    std::vector<std::size_t> want;
    std::size_t sum = 0, term = 1;
    for (std::size_t n = 1; n <= levels; ++n, term *= d) want.push_back(sum += term);
    fock.record(got == want, "models fock(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ") " +
                                 join_counts(got));
  }
  for (const auto& [d, levels] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 4}, {3, 3}, {1, 3}}) {
    const auto got = seq(symmetric_fock_shift(d, levels, o.limits), levels);
    std::vector<std::size_t> want;
    for (std::size_t n = 1; n <= levels; ++n) want.push_back(static_cast<std::size_t>(binomial_bound(d, n, 1)));
    dshift.record(got == want, "models dshift(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ") " +
                                   join_counts(got));
  }
  for (const auto& [d, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const ComplexMatrix p = symmetrizer(d, k, o.limits);
    const double idem = max_abs_diff(p * p, p);
    const double herm = hermitian_defect(p);
    const double tr = trace(p).real();
    std::size_t want = 1;
    for (std::size_t j = 1; j <= k; ++j) want = want * (d - 1 + j) / j;
    sym.record(idem <= 1e-12 && herm <= 1e-12 && std::abs(tr - static_cast<double>(want)) <= 1e-10,
               "models symmetrizer(d=" + std::to_string(d) + ",k=" + std::to_string(k) + ") trace " +
                   std::to_string(tr));
  }
  for (const auto& [d, levels] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {3, 2}, {1, 4}}) {
    const OperatorTuple a = symmetric_fock_shift(d, levels, o.limits);
    const OperatorTuple b = symmetric_shift_via_compression(d, levels, o.limits);
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) worst = std::max(worst, max_abs_diff(a[i], b[i]));
    oracle.record(worst <= 1e-10, "models dshift oracle (d=" + std::to_string(d) + ",L=" + std::to_string(levels) +
                                      ") max diff " + std::to_string(worst));
  }
  for (const std::size_t d : {2, 3}) {
    const OperatorTuple t = right_creation_compression(d, 3, d - 1, o.limits);
    const auto got = seq(t, 2);
    rj.record(got == std::vector<std::size_t>{1, d} && !is_maximal_noncommutative(t, std::nullopt, tol),
              "models " + t.label() + " " + join_counts(got));
  }
  {
    const OperatorTuple t = pure_nonmaximal_example(2, 4, 0.5, o.limits);
    const auto got = seq(t, 2);
    const bool pure = purity(t, o.purity, tol).status == PurityStatus::Pure;
    const bool nc = is_maximal_noncommutative(t, std::nullopt, tol);
    const bool cm = is_commuting(t, tol) && is_maximal_commuting(t, std::nullopt, tol);
    nonmax.record(got == std::vector<std::size_t>{2, 3} && pure && !nc && !cm,
                  "models " + t.label() + " " + join_counts(got));
  }
  {
    const std::array<Complex, 2> half{Complex(std::numbers::sqrt2 / 2, 0), Complex(std::numbers::sqrt2 / 2, 0)};
    const OperatorTuple a = dshift_spherical_sum(4, half, 2, o.limits);
    const OperatorTuple s = symmetric_fock_shift(2, 4, o.limits);
    const auto da = seq(a, 4), ds = seq(s, 4);
    const auto p = purity(a, o.purity, tol);
    double idem = 1.0;
    if (p.limit) idem = max_abs_diff(*p.limit * *p.limit, *p.limit);
    sphere.record(da == ds && p.status == PurityStatus::NotPure && idem <= 1e-8,
                  "models " + a.label() + " " + join_counts(da) + " vs " + join_counts(ds));
  }
  {
    const OperatorTuple t = fock_dshift_sum(2, 2, o.limits);
    const std::size_t delta = defect_dimension(t, 1, tol);
    const bool pure = purity(t, o.purity, tol).status == PurityStatus::Pure;
    const std::size_t comm = commutant_dimension(t, tol, o.limits);
    vs.record(delta == 2 && pure && comm >= 2,
              "models " + t.label() + " delta " + std::to_string(delta) + " commutant " + std::to_string(comm));
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(1, o.samples / 5); ++i) {
    SplitMix64 rng(derive_seed(o.seed ^ 0x30D, i));
    const std::size_t d = 1 + rng.below(3), h = 1 + rng.below(8), r = rng.below(h + 1);
    const OperatorTuple t = random_contractive(d, h, r, rng.next());
    const std::size_t got = defect_dimension(t, 1, tol);
    rnd.record(got == r, "models " + t.label() + " delta " + std::to_string(got));
  }
  {
    const PhiCoefficients phi{{Word{{0}}, Complex(1.0, 0.0)}};
    const Subspace m = phi_complement_subspace(2, 3, phi, o.limits);
    phi1.record(subspace_equal(m, right_creation_subspace(2, 3, 0), tol), "models phi = e_1 vs rj(j=1)");
  }

  // Reported experiments.
  const double inv_sqrt2 = std::numbers::sqrt2 / 2;
  const std::vector<std::pair<std::string, PhiCoefficients>> phis{
      {"phi=(e1+e2)/sqrt2", {{Word{{0}}, inv_sqrt2}, {Word{{1}}, inv_sqrt2}}},
      {"phi=(e11+e22)/sqrt2", {{Word{{0, 0}}, inv_sqrt2}, {Word{{1, 1}}, inv_sqrt2}}},
      {"phi=(e12-e21)/sqrt2", {{Word{{0, 1}}, inv_sqrt2}, {Word{{1, 0}}, -inv_sqrt2}}},
  };
  for (const auto& [name, phi] : phis) {
    for (const std::size_t levels : {3, 4}) {
      const Subspace m = phi_complement_subspace(2, levels, phi, o.limits);
      const OperatorTuple t = compress(fock_creation(2, levels, o.limits), m);
      const auto rep = defect_sequence(t, levels, tol, {.early_stop = false});
      nlohmann::ordered_json data;
      data["d"] = 2;
      data["levels"] = levels;
      data["subspace_dim"] = m.dim();
      data["coinvariant"] = is_coinvariant(fock_creation(2, levels, o.limits), m, tol);
      data["deltas"] = rep.deltas;
      std::vector<std::uint64_t> bounds;
      for (std::size_t n = 1; n <= rep.deltas.size(); ++n) bounds.push_back(geometric_bound(2, n, 1));
      data["noncomm_bounds"] = bounds;
      experiments.push_back({"phi_compression " + name + " L=" + std::to_string(levels), data});
    }
  }
  {
    const auto e = z1_ideal_experiment(2, 5, tol, o.limits);
    nlohmann::ordered_json data;
    data["d"] = 2;
    data["levels"] = 5;
    data["ambient_dim"] = e.ambient_dim;
    data["subspace_dim"] = e.subspace_dim;
    data["defect_rank"] = e.defect_rank;
    data["defect_rank_below_top"] = e.defect_rank_below_top;
    data["at_least_two"] = e.defect_rank_below_top >= 2;
    experiments.push_back({"z1_ideal_restriction", data});
  }
  return {"models", {fock, dshift, sym, oracle, rj, nonmax, sphere, vs, rnd, phi1}, experiments};
}

using SuiteFn = SuiteOutcome (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"lemma21", suite_lemma21}, {"cor23", suite_cor23},     {"thm24", suite_thm24},
      {"thm27", suite_thm27},     {"lemma25", suite_lemma25}, {"lemma26", suite_lemma26},
      {"product-bounds", suite_product_bounds},               {"lemma51", suite_lemma51},
      {"lemma53", suite_lemma53}, {"lemma34", suite_lemma34}, {"models", suite_models},
  };
  return r;
}

}  // namespace

void PropertyOutcome::record(bool ok, const std::string& ctx) {
  ++checked;
  if (ok) {
    ++passed;
  } else {
    ++failed;
    if (!first_failure) first_failure = ctx;
  }
}

bool SuiteOutcome::all_passed() const noexcept { return total_failed() == 0; }

std::size_t SuiteOutcome::total_failed() const noexcept {
  std::size_t n = 0;
  for (const auto& p : properties) n += p.failed;
  return n;
}

const PropertyOutcome* SuiteOutcome::find(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

SuiteOutcome run_suite(const std::string& name, const VerifyOptions& options) {
  options.tol.validate();
  options.purity.validate();
  if (name == "all") {
    SuiteOutcome all{"all", {}, {}};
    for (const auto& [suite, fn] : registry()) {
      SuiteOutcome part = fn(options);
      for (auto& p : part.properties) {
        p.name = suite + "/" + p.name;
        all.properties.push_back(std::move(p));
      }
      for (auto& e : part.experiments) {
        e.name = suite + "/" + e.name;
        all.experiments.push_back(std::move(e));
      }
    }
    return all;
  }
  for (const auto& [suite, fn] : registry())
    if (suite == name) return fn(options);
  throw PreconditionError("unknown suite '" + name + "'");
}

EnsembleSample contractive_sample(std::uint64_t seed, std::size_t idx) {
  const std::uint64_t sub = derive_seed(seed, idx);
  SplitMix64 rng(sub);
  const std::size_t d = 1 + rng.below(3);
  const std::string where = "sample " + std::to_string(idx) + " seed=" + hex_seed(sub) + " ";
  if (idx % 4 == 3) {
    const std::size_t h1 = 3 + rng.below(3), h2 = 1 + rng.below(3);
    const std::size_t r = 1 + rng.below(3);
    const OperatorTuple a = random_contractive(d, h1, r, rng.next());
    const OperatorTuple b = random_contractive(d, h2, 0, rng.next());
    OperatorTuple t = direct_sum(a, b);
    return {t, where + t.label()};
  }
  const std::size_t h = 3 + rng.below(6);
  const std::size_t r = 1 + rng.below(3);
  OperatorTuple t = random_contractive(d, h, r, rng.next());
  return {t, where + t.label()};
}

EnsembleSample coinvariant_sample(std::uint64_t seed, std::size_t idx) {
  const std::uint64_t sub = derive_seed(seed ^ 0xC01, idx);
  SplitMix64 rng(sub);
  static constexpr std::array<std::pair<std::size_t, std::size_t>, 3> shapes{{{2, 2}, {2, 3}, {3, 2}}};
  const auto [d, levels] = shapes[rng.below(shapes.size())];
  const std::size_t gens = 1 + rng.below(2);
  OperatorTuple t = random_coinvariant_compression(d, levels, gens, rng.next());
  return {t, "coinvariant sample " + std::to_string(idx) + " seed=" + hex_seed(sub) + " " + t.label()};
}

}  // namespace defseq
