// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: defseq_acceptance <path-to-defseq-cli> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "defseq/classifier.hpp"
#include "defseq/defect.hpp"
#include "defseq/models.hpp"
#include "defseq/verify.hpp"

using namespace defseq;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::size_t> deltas(const OperatorTuple& t, std::size_t n) {
  return defect_sequence(t, n, {}, {.early_stop = false}).deltas;
}

bool suite_clean(const SuiteOutcome& s, Result& r) {
  bool ok = true;
  for (const auto& p : s.properties) {
    if (!p.ok()) {
      r.require(false, p.name + " failed " + std::to_string(p.failed) + "/" + std::to_string(p.checked) +
                           (p.first_failure ? " first: " + *p.first_failure : ""));
      ok = false;
    }
  }
  return ok;
}

std::size_t checked(const SuiteOutcome& s, const std::string& name) {
  const auto* p = s.find(name);
  return p ? p->checked : 0;
}

Result fock_maximality() {
  Result r;
  const auto t0 = Clock::now();
  const auto got = deltas(fock_creation(2, 6), 6);
  std::vector<std::size_t> want;
  for (std::size_t n = 1; n <= 6; ++n) want.push_back((std::size_t{1} << n) - 1);
  r.require(got == want, "deltas " + join(got) + " expected " + join(want));
  const double s = seconds_since(t0);
  r.require(s < 10.0, "took " + std::to_string(s) + " s");
  r.detail = r.pass ? "deltas " + join(got) + " in " + std::to_string(s) + " s" : r.detail;
  return r;
}

Result dshift_maximality() {
  Result r;
  const auto t0 = Clock::now();
  const auto a = deltas(symmetric_fock_shift(2, 6), 6);
  std::vector<std::size_t> want;
  for (std::size_t n = 1; n <= 6; ++n) want.push_back(n * (n + 1) / 2);
  r.require(a == want, "d=2 deltas " + join(a) + " expected " + join(want));
  const auto b = deltas(symmetric_fock_shift(3, 4), 4);
  r.require(b == std::vector<std::size_t>{1, 4, 10, 20}, "d=3 deltas " + join(b));
  const double s = seconds_since(t0);
  r.require(s < 10.0, "took " + std::to_string(s) + " s");
  if (r.pass) r.detail = "d=2 " + join(a) + ", d=3 " + join(b);
  return r;
}

Result right_creation_counterexample() {
  Result r;
  for (std::size_t d : {2u, 3u}) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto t = right_creation_compression(d, 3, j);
      const auto got = deltas(t, 2);
      const std::string tag = "d=" + std::to_string(d) + " j=" + std::to_string(j + 1);
      r.require(got[0] == 1 && got[1] == d, tag + " deltas " + join(got));
      r.require(!is_maximal_noncommutative(t), tag + " reported maximal");
    }
  }
  if (r.pass) r.detail = "Delta=1, Delta_2=d, non-maximal for d in {2,3}, every j";
  return r;
}

Result ensemble_suite() {
  Result r;
  VerifyOptions o;
  o.samples = 200;
  o.seed = 1;
  const auto t0 = Clock::now();
  std::size_t total = 0;
  for (const char* name : {"lemma21", "cor23", "thm24", "thm27"}) {
    const auto s = run_suite(name, o);
    suite_clean(s, r);
    for (const auto& p : s.properties) total += p.checked;
  }
  const auto l21 = run_suite("lemma21", o);
  r.require(checked(l21, "monotone") == 250, "ensemble size " + std::to_string(checked(l21, "monotone")));
  const double s = seconds_since(t0);
  r.require(s < 120.0, "took " + std::to_string(s) + " s");
  if (r.pass) r.detail = std::to_string(total) + " checks over 200+50 tuples, 0 violations, " + std::to_string(s) + " s";
  return r;
}

Result product_bounds() {
  Result r;
  VerifyOptions o;
  o.samples = 100;
  o.seed = 1;
  const auto s = run_suite("product-bounds", o);
  suite_clean(s, r);
  r.require(checked(s, "lower_bound") == 100 && checked(s, "upper_bound") == 100, "expected 100 pairs");
  if (r.pass) r.detail = "100 pairs, 0 violations";
  return r;
}

Result purity_consequences() {
  Result r;
  VerifyOptions o;
  o.samples = 200;
  o.seed = 1;
  const auto s = run_suite("lemma25", o);
  suite_clean(s, r);
  const auto nil = deltas(fock_creation(1, 4), 5);
  r.require(nil == std::vector<std::size_t>{1, 2, 3, 4, 5}, "nilpotent shift deltas " + join(nil));
  r.require(purity(fock_creation(1, 4)).status == PurityStatus::Pure, "nilpotent shift not pure");
  if (r.pass) {
    r.detail = std::to_string(checked(s, "pure_strict_increase")) + " pure samples strictly increasing; shift " +
               join(nil);
  }
  return r;
}

Result section5_examples() {
  Result r;
  const auto pn = pure_nonmaximal_example(2, 4, 0.5);
  const auto pc = classify(pn);
  const auto pd = deltas(pn, 2);
  r.require(pc.purity && pc.purity->status == PurityStatus::Pure, "pure-nonmax not pure");
  r.require(pd == std::vector<std::size_t>{2, 3}, "pure-nonmax deltas " + join(pd));
  r.require(pc.maximal_noncomm && !pc.maximal_noncomm->maximal, "pure-nonmax noncommutative maximal");
  r.require(pc.maximal_comm && !pc.maximal_comm->maximal, "pure-nonmax commuting maximal");

  const auto vs = classify(fock_dshift_sum(2, 3));
  r.require(vs.delta_1 == 2, "V+S Delta_T=" + std::to_string(vs.delta_1));
  r.require(vs.purity && vs.purity->status == PurityStatus::Pure, "V+S not pure");
  r.require(vs.commutant_dim && *vs.commutant_dim >= 2, "V+S commutant too small");

  const Complex lambda[] = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  const auto a = dshift_spherical_sum(4, lambda, 1);
  const auto s = symmetric_fock_shift(2, 4);
  const auto da = deltas(a, 4), ds = deltas(s, 4);
  r.require(da == ds, "S+Z deltas " + join(da) + " vs " + join(ds));
  const auto pa = purity(a);
  double idem = 1.0;
  if (pa.limit) idem = max_abs_diff(*pa.limit * *pa.limit, *pa.limit);
  r.require(pa.limit && idem <= 1e-8, "S+Z limit idempotence error " + std::to_string(idem));
  if (r.pass) {
    std::ostringstream os;
    os << "pure-nonmax " << join(pd) << "; V+S commutant " << *vs.commutant_dim << "; S+Z " << join(da)
       << " |Q^2-Q|=" << idem;
    r.detail = os.str();
  }
  return r;
}

Result irreducible_implies_pure() {
  Result r;
  VerifyOptions o;
  o.samples = 200;
  o.seed = 1;
  const auto s = run_suite("lemma53", o);
  suite_clean(s, r);
  const auto f = classify(fock_creation(2, 3));
  r.require(f.commutant_dim == std::optional<std::size_t>(1), "Fock commutant not 1");
  r.require(f.purity && f.purity->status == PurityStatus::Pure, "Fock not pure");
  if (r.pass) {
    r.detail = std::to_string(checked(s, "irreducible_positive_defect_is_pure")) +
               " irreducible tuples with positive defect, all pure; Fock witness commutant 1";
  }
  return r;
}

Result symmetrizer_oracle() {
  Result r;
  double worst = 0.0;
  for (auto [d, L] : {std::pair{2u, 3u}, {3u, 2u}}) {
    const auto a = symmetric_fock_shift(d, L);
    const auto b = symmetric_shift_via_compression(d, L);
    for (std::size_t i = 0; i < d; ++i) worst = std::max(worst, max_abs_diff(a[i], b[i]));
    for (std::size_t k = 0; k <= L; ++k) {
      const auto p = symmetrizer(d, k);
      const double idem = max_abs_diff(p * p, p);
      const double herm = max_abs_diff(p.adjoint(), p);
      double binom = 1.0;
      for (std::size_t i = 1; i < d; ++i) binom = binom * static_cast<double>(k + i) / static_cast<double>(i);
      const double tr = std::abs(trace(p).real() - binom);
      r.require(idem < 1e-12 && herm < 1e-12 && tr < 1e-10,
                "symmetrizer d=" + std::to_string(d) + " k=" + std::to_string(k) + " not a projection of rank C");
    }
  }
  r.require(worst <= 1e-10, "d-shift vs compression differ by " + std::to_string(worst));
  if (r.pass) {
    std::ostringstream os;
    os << "max difference " << worst << "; symmetrizers idempotent with binomial trace";
    r.detail = os.str();
  }
  return r;
}

Result ideal_experiment() {
  Result r;
  const auto e = z1_ideal_experiment(2, 5);
  r.require(e.defect_rank_below_top >= 2, "defect below top degree = " + std::to_string(e.defect_rank_below_top));
  std::ostringstream os;
  os << "dim M=" << e.subspace_dim << " of " << e.ambient_dim << ", defect rank " << e.defect_rank
     << " (top degree excluded: " << e.defect_rank_below_top << "); truncation caveat applies";
  r.detail = r.pass ? os.str() : r.detail + "; " + os.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Result reproducibility(const std::string& cli, const std::string& dir) {
  Result r;
  std::vector<std::string> bodies;
  for (int run = 0; run < 2; ++run) {
    const std::string out = dir + "/acceptance_verify_" + std::to_string(run) + ".json";
    const std::string cmd = "\"" + cli + "\" verify --suite all --seed 1 --report \"" + out + "\" > /dev/null";
    const int rc = std::system(cmd.c_str());
    r.require(rc == 0, "run " + std::to_string(run) + " exit status " + std::to_string(rc));
    bodies.push_back(slurp(out));
  }
  r.require(!bodies[0].empty(), "empty report");
  r.require(bodies[0] == bodies[1], "reports differ");
  if (r.pass) r.detail = "two reports of " + std::to_string(bodies[0].size()) + " bytes are identical";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <defseq-cli> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = argv[2];
  std::filesystem::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"Fock tuple is maximal: Delta_n = 2^n - 1", fock_maximality},
      {"d-shift is maximal among commuting tuples", dshift_maximality},
      {"right-creation compression is not maximal", right_creation_counterexample},
      {"random-ensemble structure properties", ensemble_suite},
      {"product bounds", product_bounds},
      {"pure tuples grow strictly until full", purity_consequences},
      {"pure non-maximal, reducible and non-pure direct-sum examples", section5_examples},
      {"irreducible with positive defect implies pure", irreducible_implies_pure},
      {"symmetrizer oracle for the d-shift", symmetrizer_oracle},
      {"z1 ideal restriction has defect at least 2 (experiment)", ideal_experiment},
      {"verify reports are byte-identical across runs", [&] { return reproducibility(cli, dir); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    failures += r.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
