// defseq command-line tool: build model tuples, compute defect sequences,
// classify tuples and run the verification suites.
//
// Exit codes: 0 success, 1 property violation or non-contractive input,
// 2 I/O, format or usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "defseq/classifier.hpp"
#include "defseq/defect.hpp"
#include "defseq/errors.hpp"
#include "defseq/io.hpp"
#include "defseq/models.hpp"
#include "defseq/verify.hpp"

namespace {

using namespace defseq;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct ToleranceFlags {
  double rtol = RankTolerance{}.rtol;
  double atol = RankTolerance{}.atol;

  void add(CLI::App* cmd) {
    cmd->add_option("--rtol", rtol, "relative singular-value threshold")->capture_default_str();
    cmd->add_option("--atol", atol, "absolute singular-value threshold")->capture_default_str();
  }
  RankTolerance get() const {
    RankTolerance t{rtol, atol};
    t.validate();
    return t;
  }
};

struct PurityFlags {
  std::size_t max_iter = PurityOptions{}.max_iter;
  double eps_pure = PurityOptions{}.eps_pure;
  double eps_conv = PurityOptions{}.eps_conv;

  void add(CLI::App* cmd) {
    cmd->add_option("--max-iter", max_iter, "purity iteration budget")->capture_default_str();
    cmd->add_option("--eps-pure", eps_pure, "norm below which P_T^k(I) counts as zero")->capture_default_str();
    cmd->add_option("--eps-conv", eps_conv, "relative step size that counts as converged")->capture_default_str();
  }
  PurityOptions get() const {
    PurityOptions p{max_iter, eps_pure, eps_conv};
    p.validate();
    return p;
  }
};

// "a[:b],c[:d],..." -> complex list, each item re or re:im.
std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        out.emplace_back(std::stod(item), 0.0);
      } else {
        out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      throw PreconditionError("cannot parse coefficient '" + item + "'");
    }
  }
  if (out.empty()) throw PreconditionError("empty coefficient list");
  return out;
}

// "12:0.7,21:0.5:0.1" -> word (1-based letters, one digit each) -> coefficient.
PhiCoefficients parse_phi(const std::string& text, std::size_t d) {
  PhiCoefficients phi;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0) {
      throw PreconditionError("phi term '" + item + "' must look like WORD:RE[:IM]");
    }
    Word w;
    for (char c : item.substr(0, colon)) {
      if (c < '1' || c > '9' || static_cast<std::size_t>(c - '0') > d) {
        throw PreconditionError("phi word '" + item.substr(0, colon) + "' has a letter outside 1.." +
                                std::to_string(d));
      }
      w.letters.push_back(static_cast<std::size_t>(c - '1'));
    }
    const auto coeff = parse_complex_list(item.substr(colon + 1));
    if (coeff.size() != 1) throw PreconditionError("phi term '" + item + "' has more than one coefficient");
    phi.emplace_back(std::move(w), coeff.front());
  }
  if (phi.empty()) throw PreconditionError("empty phi");
  return phi;
}

template <typename Coeffs, typename Get>
void normalize(Coeffs& c, Get get) {
  double norm2 = 0.0;
  for (auto& x : c) norm2 += std::norm(get(x));
  if (!(norm2 > 0.0)) throw PreconditionError("coefficients must not all vanish");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : c) get(x) *= inv;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(j, path);
  }
}

std::string fmt_counts(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

Json input_block(const std::string& path, const TupleFile& f) {
  Json j;
  j["path"] = path;
  j["label"] = f.tuple.label();
  j["d"] = f.tuple.arity();
  j["dim"] = f.tuple.dim();
  j["meta"] = f.meta;
  return j;
}

// ---------------------------------------------------------------- model

struct ModelArgs {
  std::string kind;
  std::size_t d = 2;
  std::size_t levels = 3;
  std::size_t j = 1;
  double r = 0.5;
  std::string phi;
  std::string lambda = "0.7071067811865476,0.7071067811865476";
  std::size_t k = 1;
  std::size_t h = 4;
  std::size_t defect_rank = 1;
  std::uint64_t seed = 1;
  std::size_t generators = 1;
  std::string out;
};

int run_model(const ModelArgs& a, CLI::App* cmd) {
  const SizeLimits limits = SizeLimits::from_environment();
  Json meta;
  meta["generator"] = a.kind;
  Json params;
  std::optional<OperatorTuple> t;
  auto levels_used = [&] {
    params["levels"] = a.levels;
    return a.levels;
  };

  if (a.kind == "fock") {
    params["d"] = a.d;
    t = fock_creation(a.d, levels_used(), limits);
  } else if (a.kind == "dshift") {
    params["d"] = a.d;
    t = symmetric_fock_shift(a.d, levels_used(), limits);
  } else if (a.kind == "rj") {
    if (a.j < 1 || a.j > a.d) throw PreconditionError("--j must lie in 1..d");
    params["d"] = a.d;
    params["j"] = a.j;
    t = right_creation_compression(a.d, levels_used(), a.j - 1, limits);
  } else if (a.kind == "phi") {
    if (cmd->count("--phi") == 0) throw PreconditionError("model phi needs --phi WORD:RE[:IM],...");
    PhiCoefficients phi = parse_phi(a.phi, a.d);
    normalize(phi, [](auto& term) -> Complex& { return term.second; });
    params["d"] = a.d;
    Json terms = Json::array();
    for (const auto& [w, c] : phi) terms.push_back(Json::array({w.to_string(), c.real(), c.imag()}));
    params["phi"] = terms;
    t = finite_phi_compression(a.d, levels_used(), phi, limits);
  } else if (a.kind == "pure-nonmax") {
    params["d"] = a.d;
    params["r"] = a.r;
    t = pure_nonmaximal_example(a.d, levels_used(), a.r, limits);
  } else if (a.kind == "spherical-sum") {
    std::vector<Complex> lambdas = parse_complex_list(a.lambda);
    normalize(lambdas, [](Complex& c) -> Complex& { return c; });
    Json l = Json::array();
    for (const auto& c : lambdas) l.push_back(Json::array({c.real(), c.imag()}));
    params["lambda"] = l;
    params["k"] = a.k;
    t = dshift_spherical_sum(levels_used(), lambdas, a.k, limits);
  } else if (a.kind == "fock-dshift-sum") {
    params["d"] = a.d;
    t = fock_dshift_sum(a.d, levels_used(), limits);
  } else if (a.kind == "random") {
    params["d"] = a.d;
    params["h"] = a.h;
    params["defect_rank"] = a.defect_rank;
    meta["seed"] = a.seed;
    t = random_contractive(a.d, a.h, a.defect_rank, a.seed);
  } else if (a.kind == "random-coinv") {
    params["d"] = a.d;
    params["generators"] = a.generators;
    meta["seed"] = a.seed;
    t = random_coinvariant_compression(a.d, levels_used(), a.generators, a.seed, limits);
  } else if (a.kind == "zero") {
    params["d"] = a.d;
    params["h"] = a.h;
    t = OperatorTuple::zero(a.d, a.h);
  } else {
    throw PreconditionError("unknown model kind '" + a.kind + "'");
  }
  meta["label"] = t->label();
  meta["params"] = params;
  meta["tool_version"] = kToolVersion;
  emit(tuple_to_json(*t, meta), a.out);
  if (!a.out.empty() && a.out != "-") {
    std::cerr << "wrote " << a.out << ": " << t->label() << " d=" << t->arity() << " dim=" << t->dim() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- defect

struct DefectArgs {
  std::string input;
  std::size_t n_max = 10;
  bool no_early_stop = false;
  ToleranceFlags tol;
  std::string report;
  std::string plot;
};

int run_defect(const DefectArgs& a) {
  const TupleFile f = read_tuple(a.input);
  const RankTolerance tol = a.tol.get();
  if (a.n_max == 0) throw PreconditionError("--n-max must be at least 1");

  Json report;
  report["header"] = report_header("defect");
  report["input"] = input_block(a.input, f);
  Json opts;
  opts["n_max"] = a.n_max;
  opts["early_stop"] = !a.no_early_stop;
  opts["tolerance"] = to_json(tol);
  report["options"] = opts;

  if (!is_contractive(f.tuple, tol)) {
    report["result"] = nullptr;
    report["error"] = "not a row contraction";
    report["min_defect_eigenvalue"] = min_defect_eigenvalue(f.tuple);
    if (!a.report.empty()) emit(report, a.report);
    std::cerr << "error: " << a.input << " is not a row contraction (smallest eigenvalue of I - sum T_i T_i^* = "
              << min_defect_eigenvalue(f.tuple) << ")\n";
    return kExitViolation;
  }

  const DefectReport r = defect_sequence(f.tuple, a.n_max, tol, {.early_stop = !a.no_early_stop});
  report["result"] = to_json(r);

  std::printf("%s  d=%zu  dim=%zu  %s\n", f.tuple.label().c_str(), r.arity, r.dim,
              r.commuting ? "commuting" : "noncommuting");
  std::printf("%4s %8s %14s %12s\n", "n", "delta", "noncomm_bound", "comm_bound");
  for (std::size_t k = 0; k < r.deltas.size(); ++k) {
    const std::string comm = r.commuting ? std::to_string(r.comm_bounds[k]) : "-";
    std::printf("%4zu %8zu %14llu %12s\n", k + 1, r.deltas[k], static_cast<unsigned long long>(r.noncomm_bounds[k]),
                comm.c_str());
  }
  if (r.stabilized_at) {
    std::printf("stabilized_at: %zu%s\n", *r.stabilized_at, r.reached_full ? " (full dimension)" : "");
  } else {
    std::printf("stabilized_at: not within n_max\n");
  }

  if (!a.plot.empty()) {
    std::ofstream out(a.plot, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + a.plot + "'");
    out << "n,delta,noncomm_bound,comm_bound\n";
    for (std::size_t k = 0; k < r.deltas.size(); ++k) {
      out << k + 1 << ',' << r.deltas[k] << ',' << r.noncomm_bounds[k] << ',';
      if (r.commuting) out << r.comm_bounds[k];
      out << '\n';
    }
  }
  if (!a.report.empty()) emit(report, a.report);
  return kExitOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string input;
  ToleranceFlags tol;
  PurityFlags purity;
  std::optional<std::size_t> horizon;
  std::string report;
};

int run_classify(const ClassifyArgs& a) {
  const TupleFile f = read_tuple(a.input);
  ClassifyOptions opts;
  opts.tol = a.tol.get();
  opts.purity = a.purity.get();
  opts.horizon = a.horizon;
  opts.limits = SizeLimits::from_environment();
  const ClassificationReport r = classify(f.tuple, opts);

  Json report;
  report["header"] = report_header("classify");
  report["input"] = input_block(a.input, f);
  report["result"] = to_json(r);
  if (!a.report.empty()) emit(report, a.report);

  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::printf("%s  d=%zu  dim=%zu\n", f.tuple.label().c_str(), r.arity, r.dim);
  std::printf("contractive:  %s (min eigenvalue of defect %.3e)\n", yn(r.contractive), r.min_defect_eigenvalue);
  std::printf("commuting:    %s\n", yn(r.commuting));
  if (r.commutant_dim) {
    std::printf("commutant:    %zu (%s)\n", *r.commutant_dim, *r.irreducible ? "irreducible" : "reducible");
  } else {
    std::printf("commutant:    not computed (dim above cap %zu)\n", opts.limits.max_commutant_dim);
  }
  if (!r.contractive) return kExitViolation;
  std::printf("delta_1:      %zu\n", r.delta_1);
  std::printf("purity:       %s after %zu iterations (residual %.3e)\n", purity_status_name(r.purity->status),
              r.purity->iterations, r.purity->residual_norm);
  const auto& nc = *r.maximal_noncomm;
  std::printf("maximal (noncommuting): %s over horizon %zu, deltas %s\n", yn(nc.maximal), nc.horizon,
              fmt_counts(nc.deltas).c_str());
  if (r.maximal_comm) {
    const auto& c = *r.maximal_comm;
    std::printf("maximal (commuting):    %s over horizon %zu, deltas %s\n", yn(c.maximal), c.horizon,
                fmt_counts(c.deltas).c_str());
  }
  if (!r.irreducible_pure_consistent) {
    std::printf("VIOLATION: irreducible with positive defect but not pure\n");
    return kExitViolation;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  ToleranceFlags tol;
  PurityFlags purity;
  std::string report;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions o;
  o.samples = a.samples;
  o.seed = a.seed;
  o.tol = a.tol.get();
  o.purity = a.purity.get();
  o.limits = SizeLimits::from_environment();
  const SuiteOutcome s = run_suite(a.suite, o);

  Json report;
  report["header"] = report_header("verify");
  Json opts;
  opts["suite"] = a.suite;
  opts["samples"] = a.samples;
  opts["seed"] = a.seed;
  opts["tolerance"] = to_json(o.tol);
  opts["max_iter"] = o.purity.max_iter;
  opts["eps_pure"] = o.purity.eps_pure;
  opts["eps_conv"] = o.purity.eps_conv;
  report["options"] = opts;
  report["outcome"] = to_json(s);
  if (!a.report.empty()) emit(report, a.report);

  for (const auto& p : s.properties) {
    std::printf("%-4s %-58s %zu/%zu", p.ok() ? "PASS" : "FAIL", p.name.c_str(), p.passed, p.checked);
    if (p.skipped) std::printf(" (%zu skipped)", p.skipped);
    std::printf("\n");
    if (p.first_failure) std::printf("     first failure: %s\n", p.first_failure->c_str());
  }
  for (const auto& e : s.experiments) std::printf("EXPERIMENT %s %s\n", e.name.c_str(), e.data.dump().c_str());
  std::printf("%s: %s\n", s.suite.c_str(), s.all_passed() ? "all properties passed" : "FAILURES");
  return s.all_passed() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- product

struct ProductArgs {
  std::string a, b, out;
  bool check = false;
  ToleranceFlags tol;
};

int run_product(const ProductArgs& a) {
  const TupleFile fb = read_tuple(a.a);
  const TupleFile fc = read_tuple(a.b);
  const OperatorTuple bc = tuple_product(fb.tuple, fc.tuple);
  Json meta;
  meta["generator"] = "product";
  meta["label"] = bc.label();
  meta["factors"] = Json::array({a.a, a.b});
  meta["tool_version"] = kToolVersion;
  emit(tuple_to_json(bc, meta), a.out);
  if (!a.check) return kExitOk;

  const auto r = verify_product_bounds(fb.tuple, fc.tuple, a.tol.get());
  std::fprintf(stderr, "delta_B=%zu delta_C=%zu delta_BC=%zu m=%zu lower %s upper %s\n", r.delta_b, r.delta_c,
               r.delta_bc, r.m, r.lower_ok ? "ok" : "VIOLATED", r.upper_ok ? "ok" : "VIOLATED");
  return r.lower_ok && r.upper_ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- symmetry

struct SymmetryArgs {
  std::string input;
  std::size_t n = 1;
  ToleranceFlags tol;
  std::string report;
};

int run_symmetry(const SymmetryArgs& a) {
  const TupleFile f = read_tuple(a.input);
  const auto v = rank_symmetry_check(f.tuple, a.n, a.tol.get(), SizeLimits::from_environment());
  Json report;
  report["header"] = report_header("symmetry");
  report["input"] = input_block(a.input, f);
  report["result"] = to_json(v);
  if (!a.report.empty()) emit(report, a.report);
  std::printf("n=%zu ranks %zu/%zu kernels %zu/%zu biconditional %s\n", v.n, v.rank_left, v.rank_right, v.ker_dim,
              v.coker_dim, v.biconditional_holds() ? "holds" : "FAILS");
  return v.biconditional_holds() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Defect sequences of contractive operator tuples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ModelArgs model;
  auto* m = app.add_subcommand("model", "construct a model tuple and write it as a tuple file");
  m->add_option("kind", model.kind,
                "fock | dshift | rj | phi | pure-nonmax | spherical-sum | fock-dshift-sum | random | random-coinv | zero")
      ->required();
  m->add_option("--d", model.d, "number of operators")->capture_default_str();
  m->add_option("--levels,--degree,-L", model.levels, "truncation level")->capture_default_str();
  m->add_option("--j", model.j, "rj: right-creation letter, 1-based")->capture_default_str();
  m->add_option("--r", model.r, "pure-nonmax: scalar block in (0,1)")->capture_default_str();
  m->add_option("--phi", model.phi, "phi: WORD:RE[:IM],... with 1-based letters; normalized");
  m->add_option("--lambda", model.lambda, "spherical-sum: RE[:IM],...; normalized")->capture_default_str();
  m->add_option("--k", model.k, "spherical-sum: size of the scalar block")->capture_default_str();
  m->add_option("--dim", model.h, "random/zero: dimension")->capture_default_str();
  m->add_option("--defect-rank", model.defect_rank, "random: rank of I - sum T_i T_i^*")->capture_default_str();
  m->add_option("--seed", model.seed, "random seed")->capture_default_str();
  m->add_option("--generators", model.generators, "random-coinv: number of generating vectors")
      ->capture_default_str();
  m->add_option("--out,-o", model.out, "output path (stdout when omitted)");

  DefectArgs defect;
  auto* d = app.add_subcommand("defect", "defect sequence of a tuple file");
  d->add_option("input", defect.input, "tuple file")->required();
  d->add_option("--n-max", defect.n_max, "largest power")->capture_default_str();
  d->add_flag("--no-early-stop", defect.no_early_stop, "evaluate every n up to n-max");
  defect.tol.add(d);
  d->add_option("--report", defect.report, "JSON report path");
  d->add_option("--plot", defect.plot, "CSV of n, delta and bounds");

  ClassifyArgs cls;
  auto* c = app.add_subcommand("classify", "contractive / commuting / pure / maximal / irreducible verdicts");
  c->add_option("input", cls.input, "tuple file")->required();
  cls.tol.add(c);
  cls.purity.add(c);
  c->add_option("--horizon", cls.horizon, "maximality horizon (default: saturation)");
  c->add_option("--report", cls.report, "JSON report path");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "run property suites");
  v->add_option("--suite", ver.suite, "suite name")->check(CLI::IsMember(suite_names()))->capture_default_str();
  v->add_option("--samples", ver.samples, "ensemble size")->capture_default_str();
  v->add_option("--seed", ver.seed, "ensemble seed")->capture_default_str();
  ver.tol.add(v);
  ver.purity.add(v);
  v->add_option("--report", ver.report, "JSON report path");

  ProductArgs prod;
  auto* p = app.add_subcommand("product", "tuple product BC of two tuple files");
  p->add_option("b", prod.a, "tuple file for B")->required();
  p->add_option("c", prod.b, "tuple file for C")->required();
  p->add_option("--out,-o", prod.out, "output path (stdout when omitted)");
  p->add_flag("--check-bounds", prod.check, "check delta_B <= delta_BC <= delta_B + m delta_C");
  prod.tol.add(p);

  SymmetryArgs sym;
  auto* s = app.add_subcommand("symmetry", "rank symmetry versus kernel dimensions of the n-th row operator");
  s->add_option("input", sym.input, "tuple file")->required();
  s->add_option("--n", sym.n, "power")->capture_default_str();
  sym.tol.add(s);
  s->add_option("--report", sym.report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*m) return run_model(model, m);
    if (*d) return run_defect(defect);
    if (*c) return run_classify(cls);
    if (*v) return run_verify(ver);
    if (*p) return run_product(prod);
    if (*s) return run_symmetry(sym);
  } catch (const NonContractiveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
