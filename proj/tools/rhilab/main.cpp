#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhilab/constants.hpp"
#include "rhilab/corpus.hpp"
#include "rhilab/dyadic.hpp"
#include "rhilab/errors.hpp"
#include "rhilab/extremal.hpp"
#include "rhilab/io.hpp"
#include "rhilab/maximal.hpp"
#include "rhilab/mugrid.hpp"
#include "rhilab/parallel.hpp"
#include "rhilab/rhi.hpp"

#ifndef RHILAB_VERSION
#define RHILAB_VERSION "dev"
#endif

using namespace rhilab;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct Options {
  std::string weight, measure, theorem, kind, variant, out, manifest, op = "M";
  std::string interval, triple, set, lambda0, corpus = "random";
  std::optional<double> r, p, tol, delta, tau;
  int depth = kDefaultDepth;
  std::uint64_t seed = 1;
  long budget = 10000;
  int pieces = 64;
  int threads = 0;
  int n = 1;
  std::size_t count = 100;
  int samples = 4;
  bool no_escalate = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Interval parse_interval(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw ParseError("interval must be a,b: " + s);
  const Rational a = Rational::parse(parts[0]), b = Rational::parse(parts[1]);
  if (!(a < b)) throw DomainError("interval needs a < b: " + s);
  return Interval(a, b);
}

std::array<Rational, 3> parse_triple(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw ParseError("triple must be a,b,c: " + s);
  return {Rational::parse(parts[0]), Rational::parse(parts[1]), Rational::parse(parts[2])};
}

std::vector<Interval> parse_set(const std::string& s) {
  std::vector<Interval> out;
  for (const auto& piece : split(s, ';'))
    if (!piece.empty()) out.push_back(parse_interval(piece));
  return out;
}

struct Manifest {
  std::string command;
  json inputs = json::object();
  json results = json::array();
  std::optional<int> depth;
  std::optional<std::uint64_t> seed;
};

void add_input(Manifest& m, const std::string& name, const std::string& text) {
  m.inputs[name] = io::fnv1a_hex(text);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text << std::flush;
  else
    io::write_file_atomic(o.out, text);
}

void write_manifest(const Options& o, const Manifest& m, double seconds) {
  if (o.manifest.empty()) return;
  json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["version"] = RHILAB_VERSION;
  j["tolerance"] = io::decimal(tolerance().relative);
  if (m.depth) j["depth"] = *m.depth;
  if (m.seed) j["seed"] = *m.seed;
  j["wallClockSeconds"] = seconds;
  j["results"] = m.results;
  io::write_file_atomic(o.manifest, j.dump(2) + "\n");
}

ConstantReport step_constant(const StepWeight& w, const Options& o) {
  const auto grid = RefinementGrid::for_weight(w, o.depth);
  if (o.kind == "a1") return a1_constant(w);
  if (o.kind == "a1plus") return a1_plus_constant(w);
  if (o.kind == "fw") return fujii_wilson_constant(w, grid);
  if (o.kind == "fwplus") return fujii_wilson_plus_constant(w, grid);
  if (o.kind == "khrushchev") return khrushchev_constant(w, grid);
  if (o.kind == "gr") return gurov_reshetnyak(w, grid);
  if (o.kind == "ap") {
    if (!o.p) throw DomainError("--kind ap needs --p");
    return ap_constant(w, *o.p, grid);
  }
  throw ParseError("unknown constant kind " + o.kind);
}

int run_constants(const Options& o, Manifest& m) {
  const std::string text = io::read_file(o.weight);
  add_input(m, "weight", text);
  const io::WeightFile wf = io::parse_weight(text);
  ConstantReport rep;
  if (const auto* dw = std::get_if<DyadicWeight>(&wf)) {
    if (o.kind != "fw") throw DomainError("dyadic weights support --kind fw only");
    rep = dyadic_fujii_wilson(*dw);
  } else {
    rep = step_constant(std::get<StepWeight>(wf), o);
  }
  const json j = io::to_json(rep);
  m.results.push_back(j);
  emit(o, io::canonical(j));
  return kExitOk;
}

VerifyParams verify_params(const Options& o) {
  VerifyParams vp;
  if (o.r) vp.r = *o.r;
  if (!o.interval.empty()) vp.interval = parse_interval(o.interval);
  if (!o.triple.empty()) vp.triple = parse_triple(o.triple);
  if (!o.set.empty()) vp.set = parse_set(o.set);
  if (!o.lambda0.empty()) vp.lambda0 = Rational::parse(o.lambda0);
  if (o.delta) vp.delta = *o.delta;
  vp.depth = o.depth;
  vp.escalate = !o.no_escalate;
  return vp;
}

Verdict verify_dyadic(TheoremId id, const DyadicWeight& dw, const Options& o, Manifest& m) {
  switch (id) {
    case TheoremId::T4_2:
    case TheoremId::T1_1:
      if (!o.r) throw DomainError(std::string(to_string(id)) + " needs --r");
      return verify_dyadic_rhi(dw, *o.r, id);
    case TheoremId::L4_1:
      return verify_superlevel_lemma(dw);
    case TheoremId::COR4_3: {
      if (o.measure.empty()) throw DomainError("c4.3 needs --measure");
      if (!o.r) throw DomainError("c4.3 needs --r");
      const std::string text = io::read_file(o.measure);
      add_input(m, "measure", text);
      const io::MeasureFile mf = io::parse_measure(text);
      if (static_cast<int>(mf.axes.size()) != dw.dim()) throw DomainError("measure and weight dimensions differ");
      const MuDyadicGrid grid = build_mu_grid(mf.axes, mf.root(), dw.depth());
      return verify_mu_rhi(grid, MuCellWeight{dw.cells()}, *o.r);
    }
    default:
      throw DomainError(std::string(to_string(id)) + " is stated for step weights");
  }
}

int run_verify(const Options& o, Manifest& m) {
  Verdict v;
  if (o.tau) {
    if (!o.r) throw DomainError("the extremizer check needs --r");
    v = verify_extremizer_equality(*o.tau, *o.r);
  } else {
    if (o.weight.empty()) throw DomainError("verify needs --weight (or --tau)");
    const TheoremId id = parse_theorem(o.theorem);
    const std::string text = io::read_file(o.weight);
    add_input(m, "weight", text);
    const io::WeightFile wf = io::parse_weight(text);
    if (const auto* dw = std::get_if<DyadicWeight>(&wf))
      v = verify_dyadic(id, *dw, o, m);
    else
      v = verify(id, std::get<StepWeight>(wf), verify_params(o));
  }
  const json j = io::to_json(v);
  m.results.push_back(j);
  emit(o, io::canonical(j));
  return v.holds ? kExitOk : kExitFailed;
}

bool dyadic_theorem(TheoremId id) {
  return id == TheoremId::T4_2 || id == TheoremId::T1_1 || id == TheoremId::L4_1;
}

bool needs_r(TheoremId id) {
  switch (id) {
    case TheoremId::T1_3:
    case TheoremId::T_AINFTY_ENDPOINT:
    case TheoremId::T_ONESIDED_ENDPOINT_A1:
    case TheoremId::T_ONESIDED_ENDPOINT_AINFTY:
    case TheoremId::L_REARINFTY:
    case TheoremId::WIK_BOUND:
    case TheoremId::EMB_COR_I:
    case TheoremId::EMB_COR_II:
    case TheoremId::L4_1:
      return false;
    default:
      return true;
  }
}

// midpoint of the admissible range, or 2 when the range is unbounded
long double midpoint_r(long double delta, TheoremId id, int n) {
  const long double top = admissible_range(delta, id, n);
  return std::isinf(top) ? 2.0L : 1.0L + (top - 1.0L) / 2.0L;
}

Verdict sweep_step(TheoremId id, const StepWeight& w, const Options& o) {
  VerifyParams vp = verify_params(o);
  const Interval s = w.support();
  const Rational mid = s.lo() + s.length() / Rational(2);
  if (!vp.triple) vp.triple = std::array<Rational, 3>{s.lo(), mid, s.hi()};
  if (vp.set.empty()) vp.set = {Interval(s.lo(), mid)};
  if (!vp.r && needs_r(id)) {
    const long double delta = id == TheoremId::L2_2 ? 1.0L : theorem_delta(id, w, o.depth);
    vp.r = id == TheoremId::L2_2 ? 1.0L : midpoint_r(delta, id, 1);
  }
  return verify(id, w, vp);
}

Verdict sweep_dyadic(TheoremId id, const DyadicWeight& dw, const Options& o) {
  if (id == TheoremId::L4_1) return verify_superlevel_lemma(dw);
  long double r;
  if (o.r) {
    r = *o.r;
  } else {
    const long double delta = dyadic_fujii_wilson(dw).value.value;
    r = midpoint_r(delta, id, dw.dim());
  }
  return verify_dyadic_rhi(dw, r, id);
}

int run_sweep(const Options& o, Manifest& m) {
  if (o.corpus != "random") throw DomainError("only --corpus random is available");
  const TheoremId id = parse_theorem(o.theorem);
  m.seed = o.seed;
  std::vector<Verdict> verdicts(o.count);
  std::vector<std::string> errors(o.count);
  if (dyadic_theorem(id)) {
    std::vector<DyadicWeight> weights;
    std::mt19937_64 rng(o.seed);
    for (std::size_t k = 0; k < o.count; ++k) weights.push_back(corpus::random_dyadic_weight(rng, o.n, o.depth));
    parallel_chunks(o.count, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        try {
          verdicts[k] = sweep_dyadic(id, weights[k], o);
        } catch (const std::exception& e) {
          errors[k] = e.what();
        }
      }
    });
  } else {
    corpus::StepOptions opt;
    opt.max_pieces = std::min(o.pieces, 64);
    const auto weights = corpus::step_corpus(o.seed, o.count, opt);
    m.depth = o.depth;
    parallel_chunks(o.count, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        try {
          verdicts[k] = sweep_step(id, weights[k], o);
        } catch (const std::exception& e) {
          errors[k] = e.what();
        }
      }
    });
  }
  std::size_t failures = 0, skipped = 0;
  long double worst = 0.0L;
  json list = json::array();
  for (std::size_t k = 0; k < o.count; ++k) {
    if (!errors[k].empty()) {
      ++skipped;
      json e;
      e["index"] = k;
      e["error"] = errors[k];
      list.push_back(e);
      continue;
    }
    if (!verdicts[k].holds) ++failures;
    worst = std::max(worst, verdicts[k].ratio.value);
    list.push_back(io::to_json(verdicts[k]));
  }
  json j;
  j["theorem"] = std::string(to_string(id));
  j["count"] = o.count;
  j["seed"] = o.seed;
  j["failures"] = failures;
  j["skipped"] = skipped;
  j["worstRatio"] = io::decimal(worst);
  j["verdicts"] = list;
  m.results = list;
  emit(o, io::canonical(j));
  return failures == 0 && skipped == 0 ? kExitOk : kExitFailed;
}

int run_sharpness(const Options& o, Manifest& m) {
  SearchConfig cfg;
  cfg.variant = parse_variant(o.variant);
  if (o.delta) cfg.delta = *o.delta;
  if (o.r) cfg.r = *o.r;
  cfg.pieces = o.pieces;
  cfg.budget = o.budget;
  cfg.seed = o.seed;
  m.seed = o.seed;
  const SearchResult res = sharpness_search(cfg);
  const json j = io::to_json(res);
  m.results.push_back(j);
  emit(o, io::canonical(j));
  return res.best_ratio <= 1.0L + tolerance().relative ? kExitOk : kExitFailed;
}

int run_grid(const Options& o, Manifest& m) {
  const std::string text = io::read_file(o.measure);
  add_input(m, "measure", text);
  const io::MeasureFile mf = io::parse_measure(text);
  m.depth = o.depth;
  const MuDyadicGrid grid = build_mu_grid(mf.axes, mf.root(), o.depth);
  const json j = io::to_json(grid);
  emit(o, io::canonical(j));
  json summary;
  summary["dim"] = grid.dim();
  summary["depth"] = grid.depth();
  summary["rootMass"] = grid.root_mass().str();
  m.results.push_back(summary);
  return kExitOk;
}

Operator parse_op(const std::string& s) {
  if (s == "M") return Operator::M;
  if (s == "Mplus" || s == "M+") return Operator::Mplus;
  if (s == "Mminus" || s == "M-") return Operator::Mminus;
  throw ParseError("unknown operator " + s + " (expected M, Mplus or Mminus)");
}

int run_profile(const Options& o, Manifest& m) {
  const std::string text = io::read_file(o.weight);
  add_input(m, "weight", text);
  const StepWeight w = io::parse_step_weight(text);
  const Interval i = o.interval.empty() ? w.support() : parse_interval(o.interval);
  const MaximalProfile p = maximal_profile(w, i, parse_op(o.op));
  emit(o, io::profile_csv(p, w, o.samples));
  json summary;
  summary["segments"] = p.segments().size();
  m.results.push_back(summary);
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Write the result here instead of standard output");
  sub->add_option("--manifest", o.manifest, "Also write a run manifest (JSON)");
  sub->add_option("--tol", o.tol, "Relative tolerance for verdicts");
  sub->add_option("--threads", o.threads, "Worker threads (RHI_LAB_THREADS overrides)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Reverse Hoelder inequality lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RHILAB_VERSION);

  auto* constants = app.add_subcommand("constants", "Weight constants as a ConstantReport");
  constants->add_option("--weight", o.weight)->required()->check(CLI::ExistingFile);
  constants->add_option("--kind", o.kind)
      ->required()
      ->check(CLI::IsMember({"fw", "fwplus", "a1", "a1plus", "ap", "khrushchev", "gr"}));
  constants->add_option("--depth", o.depth);
  constants->add_option("--p", o.p);

  auto* verify_cmd = app.add_subcommand("verify", "Check one inequality, print a Verdict");
  verify_cmd->add_option("--theorem", o.theorem);
  verify_cmd->add_option("--weight", o.weight)->check(CLI::ExistingFile);
  verify_cmd->add_option("--measure", o.measure)->check(CLI::ExistingFile);
  verify_cmd->add_option("--r", o.r);
  verify_cmd->add_option("--interval", o.interval, "a,b");
  verify_cmd->add_option("--triple", o.triple, "a,b,c");
  verify_cmd->add_option("--set", o.set, "a,b;c,d");
  verify_cmd->add_option("--lambda0", o.lambda0);
  verify_cmd->add_option("--delta", o.delta);
  verify_cmd->add_option("--tau", o.tau, "Check the power-weight equality instead of a file");
  verify_cmd->add_option("--depth", o.depth);
  verify_cmd->add_flag("--no-escalate", o.no_escalate);

  auto* sweep = app.add_subcommand("sweep", "Verify a theorem over a seeded random corpus");
  sweep->add_option("--theorem", o.theorem)->required();
  sweep->add_option("--corpus", o.corpus);
  sweep->add_option("--n", o.n);
  sweep->add_option("--depth", o.depth, "Grid depth (dyadic) or refinement depth (step)");
  sweep->add_option("--count", o.count);
  sweep->add_option("--seed", o.seed);
  sweep->add_option("--r", o.r);
  sweep->add_option("--delta", o.delta);
  sweep->add_option("--pieces", o.pieces, "Maximum pieces per step weight");

  auto* sharp = app.add_subcommand("sharpness", "Search for near-extremal step weights");
  sharp->add_option("--variant", o.variant)->required();
  sharp->add_option("--delta", o.delta);
  sharp->add_option("--r", o.r);
  sharp->add_option("--pieces", o.pieces);
  sharp->add_option("--budget", o.budget);
  sharp->add_option("--seed", o.seed);

  auto* grid = app.add_subcommand("grid", "Dump the median-split grid of a measure");
  grid->add_option("--measure", o.measure)->required()->check(CLI::ExistingFile);
  grid->add_option("--depth", o.depth);

  auto* profile = app.add_subcommand("profile", "CSV of a maximal function profile");
  profile->add_option("--weight", o.weight)->required()->check(CLI::ExistingFile);
  profile->add_option("--op", o.op);
  profile->add_option("--interval", o.interval);
  profile->add_option("--samples", o.samples);

  for (auto* sub : {constants, verify_cmd, sweep, sharp, grid, profile}) add_common(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Manifest m;
  try {
    if (o.tol) {
      if (!(*o.tol > 0)) throw DomainError("--tol must be positive");
      set_tolerance(TolerancePolicy{static_cast<long double>(*o.tol)});
    }
    int threads = o.threads;
    if (const char* env = std::getenv("RHI_LAB_THREADS")) threads = std::atoi(env);
    if (threads > 0) set_thread_count(threads);
    if (o.depth < 0) throw DomainError("--depth must be >= 0");

    int code = kExitOk;
    m.command = app.get_subcommands().front()->get_name();
    m.depth = o.depth;
    if (constants->parsed()) code = run_constants(o, m);
    if (verify_cmd->parsed()) code = run_verify(o, m);
    if (sweep->parsed()) code = run_sweep(o, m);
    if (sharp->parsed()) code = run_sharpness(o, m);
    if (grid->parsed()) code = run_grid(o, m);
    if (profile->parsed()) code = run_profile(o, m);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(o, m, secs);
    return code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
  } catch (const RangeError& e) {
    std::cerr << "range error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
