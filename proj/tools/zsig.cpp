// Command-line front end: build reduction instances, solve games and
// schemes, and run the verification checks.
//
// Exit status: 0 when every verdict passes, 1 when a verdict fails, 2 on
// invalid input or a size limit.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "zsig/dishonest.hpp"
#include "zsig/harness.hpp"
#include "zsig/io.hpp"
#include "zsig/signaling.hpp"
#include "zsig/solve.hpp"

namespace {

using namespace zsig;

struct Global {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::optional<std::string> tolerance;
  bool rational = false;
  std::size_t jobs = 1;
  std::string report;
};

struct InstanceArgs {
  std::string construction;
  std::string csp;
  std::string instance;
  std::string delta = "1/10";
  std::optional<std::size_t> k;
  std::optional<std::string> epsilon;
  std::optional<std::string> c1;
  std::optional<std::string> c2;
  std::optional<double> eta;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& a, bool positional) {
  if (positional) {
    cmd->add_option("construction", a.construction, "additive, mult or lying")
        ->required()
        ->check(CLI::IsMember({"additive", "mult", "multiplicative", "lying"}));
  } else {
    cmd->add_option("--construction", a.construction, "additive, mult or lying");
  }
  auto* csp = cmd->add_option("--csp", a.csp, "2-CSP instance file")->check(CLI::ExistingFile);
  if (!positional) {
    auto* inst = cmd->add_option("--instance", a.instance, "lazy instance JSON written by reduce --lazy")
                     ->check(CLI::ExistingFile);
    csp->excludes(inst);
  } else {
    csp->required();
  }
  cmd->add_option("--delta", a.delta, "gadget weight delta")->capture_default_str();
  cmd->add_option("--k", a.k, "block parameter of the additive construction");
  cmd->add_option("--epsilon", a.epsilon, "prior mass of the block states in the lying construction");
  cmd->add_option("--c1", a.c1, "lying constant c1");
  cmd->add_option("--c2", a.c2, "lying constant c2");
  cmd->add_option("--eta", a.eta, "soundness gap parameter (recorded, checked against delta)");
}

template <class T>
Instance<T> load_instance(const InstanceArgs& a) {
  if (!a.instance.empty()) {
    const Json j = read_json_file(a.instance);
    if (!is_lazy_instance(j)) throw InvalidInput(a.instance + " is not a lazy instance file");
    return instance_from_json<T>(j);
  }
  if (a.csp.empty()) throw InvalidInput("pass --csp or --instance");
  if (a.construction.empty()) throw InvalidInput("pass --construction with --csp");
  ReductionParams<T> p;
  p.delta = parse_scalar<T>(a.delta);
  p.k = a.k;
  p.eta = a.eta;
  if (a.epsilon) p.epsilon = parse_scalar<T>(*a.epsilon);
  if (a.c1) p.c1 = parse_scalar<T>(*a.c1);
  if (a.c2) p.c2 = parse_scalar<T>(*a.c2);
  p.validate();
  for (const auto& w : p.warnings()) std::cerr << "warning: " << w << "\n";
  return build_instance<T>(parse_construction(a.construction), read_text_file(a.csp), p);
}

Assignment parse_assignment(const std::string& text) {
  Assignment out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidInput("assignment entry '" + item + "' is not a label");
    }
  }
  return out;
}

Assignment assignment_or_search(const std::string& text, const Csp2Instance& csp) {
  if (!text.empty()) return parse_assignment(text);
  const auto found = find_satisfying(csp);
  if (!found) throw InvalidInput("the CSP has no satisfying assignment; completeness does not apply");
  return *found;
}

const Csp2Instance& instance_csp(const auto& inst) {
  switch (inst.construction) {
    case Construction::Additive: return inst.additive->csp();
    case Construction::Multiplicative: return inst.multiplicative->csp();
    case Construction::Lying: break;
  }
  return inst.lying->csp();
}

// Writes the report (file or stdout) and maps verdicts to the exit status.
int emit(const Global& g, const Json& report, bool passed) {
  const std::string text = report.dump(2) + "\n";
  if (g.report.empty()) {
    std::cout << text;
  } else {
    write_text_file(g.report, text);
    std::cout << (passed ? "PASS" : "FAIL") << " (report written to " << g.report << ")\n";
  }
  return passed ? 0 : 1;
}

int emit(const Global& g, const VerificationReport& rep) {
  if (!g.report.empty()) {
    for (const auto& v : rep.verdicts) std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
  }
  return emit(g, rep.to_json(), rep.passed());
}

template <class T>
T tolerance_of(const Global& g) {
  if (g.tolerance) return parse_scalar<T>(*g.tolerance);
  return Numeric<T>::exact ? T(0) : T(1e-8);
}

// ------------------------------------------------------------ subcommands --

struct ReduceArgs {
  InstanceArgs instance;
  std::string out;
  bool lazy = false;
};

template <class T>
int run_reduce(const Global& g, const ReduceArgs& a) {
  const auto inst = load_instance<T>(a.instance);
  Json body = a.lazy ? inst.lazy_json() : game_to_json(inst.game, inst.params.cell_budget);
  if (!a.lazy) body["instance"] = inst.metadata();
  write_text_file(a.out, body.dump(a.lazy ? 2 : -1) + "\n");
  Json summary = inst.metadata();
  summary["out"] = a.out;
  summary["lazy"] = a.lazy;
  return emit(g, summary, true);
}

struct GameArgs {
  std::string game;
  std::string state;
  std::string scheme;
  std::string alleged;
  std::string real;
  std::string policy = "pessimistic";
  std::size_t cap = kDefaultDeterministicCap;
};

template <class T>
BayesianGame<T> load_game(const std::string& path) {
  return game_from_json<T>(read_json_file(path));
}

template <class T>
int run_solve(const Global& g, const GameArgs& a) {
  const auto game = load_game<T>(a.game);
  ZeroSumMatrix<T> m = expected_matrix(game, game.prior());
  Json out;
  if (!a.state.empty()) {
    const auto s = game.find_state(a.state);
    if (!s) throw InvalidInput("no state '" + a.state + "' in the game");
    m = game.state(*s).matrix.materialize();
    out["state"] = a.state;
  } else {
    out["state"] = "prior";
  }
  const auto sol = solve_value(m);
  out["value"] = format_scalar(sol.value);
  out["alice"] = mixed_to_json(sol.alice);
  out["bob"] = mixed_to_json(sol.bob);
  return emit(g, out, true);
}

template <class T>
int run_signal_value(const Global& g, const GameArgs& a) {
  const auto game = load_game<T>(a.game);
  const auto scheme = scheme_from_json<T>(read_json_file(a.scheme));
  const auto parts = decompose(game, scheme);
  std::vector<T> values(parts.size());
  parallel_for(parts.size(), g.jobs, [&](std::size_t k) { values[k] = posterior_value(game, parts[k].posterior); });
  Json out;
  Json records = Json::array();
  T total(0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    total += parts[k].probability * values[k];
    records.push_back({{"signal", parts[k].signal_id},
                       {"probability", format_scalar(parts[k].probability)},
                       {"posterior_support", support_size(parts[k].posterior)},
                       {"value", format_scalar(values[k])}});
  }
  out["value"] = format_scalar(total);
  out["signals"] = std::move(records);
  return emit(g, out, true);
}

template <class T>
int run_brute_opt(const Global& g, const GameArgs& a) {
  const auto game = load_game<T>(a.game);
  const auto opt = optimal_deterministic(game, a.cap, g.jobs);
  Json out;
  out["value"] = format_scalar(opt.value);
  out["partition"] = opt.partition;
  out["scheme"] = scheme_to_json(opt.scheme);
  return emit(g, out, true);
}

template <class T>
int run_lying_eval(const Global& g, const GameArgs& a) {
  const auto game = load_game<T>(a.game);
  const DishonestScheme<T> ds{scheme_from_json<T>(read_json_file(a.alleged)),
                              scheme_from_json<T>(read_json_file(a.real))};
  const auto eval = lying_value(game, ds, parse_policy(a.policy), g.jobs);
  Json out;
  out["policy"] = policy_name(eval.policy);
  out["value"] = format_scalar(eval.value);
  Json records = Json::array();
  for (const auto& r : eval.signals) {
    records.push_back({{"signal", r.signal_id},
                       {"alleged_probability", format_scalar(r.alleged_probability)},
                       {"real_probability", format_scalar(r.real_probability)},
                       {"alleged_value", format_scalar(r.equilibrium.alleged_value)},
                       {"real_payoff", format_scalar(r.equilibrium.real_payoff)},
                       {"contribution", format_scalar(r.contribution)},
                       {"alice", mixed_to_json(r.equilibrium.alice)},
                       {"bob", mixed_to_json(r.equilibrium.bob)}});
  }
  out["signals"] = std::move(records);
  return emit(g, out, true);
}

struct VerifyArgs {
  InstanceArgs instance;
  std::string assignment;
  std::size_t samples = 500;
  bool exhaustive = false;
  std::optional<std::string> reference;
  std::string expect;
  std::string alleged;
  std::string real;
  bool honest = false;
};

template <class T>
int run_verify_completeness(const Global& g, const VerifyArgs& a) {
  const auto inst = load_instance<T>(a.instance);
  if (inst.construction == Construction::Lying)
    throw InvalidInput("verify-completeness covers additive and mult; use verify-lying");
  auto rep = verify_completeness(inst, assignment_or_search(a.assignment, instance_csp(inst)), tolerance_of<T>(g),
                                 g.jobs);
  return emit(g, rep);
}

int run_verify_soundness(const Global& g, const VerifyArgs& a) {
  if (g.rational) throw InvalidInput("verify-soundness samples in floating point; drop --rational");
  if (!g.seed_given) throw InvalidInput("verify-soundness needs --seed");
  const auto inst = load_instance<double>(a.instance);
  SoundnessOptions opt;
  opt.samples = a.samples;
  opt.seed = g.seed;
  opt.tolerance = tolerance_of<double>(g);
  opt.exhaustive = a.exhaustive;
  opt.jobs = g.jobs;
  if (a.reference) opt.reference = parse_scalar<double>(*a.reference);
  return emit(g, verify_soundness_sampled(inst, opt));
}

template <class T>
int run_verify_lying(const Global& g, const VerifyArgs& a) {
  InstanceArgs args = a.instance;
  if (args.instance.empty()) args.construction = "lying";
  const auto inst = load_instance<T>(args);
  if (inst.construction != Construction::Lying) throw InvalidInput("verify-lying needs a lying instance");
  const auto& csp = inst.lying->csp();
  std::optional<Assignment> alpha;
  if (!a.assignment.empty()) {
    alpha = parse_assignment(a.assignment);
    require_satisfying(csp, *alpha);
  } else {
    alpha = find_satisfying(csp);
  }
  LyingExpectation expect = a.expect.empty() ? LyingExpectation::None : parse_lying_expectation(a.expect);
  if (a.expect.empty()) {
    if (a.honest) expect = LyingExpectation::Honest;
    else expect = alpha ? LyingExpectation::Completeness : LyingExpectation::Soundness;
  }
  const bool explicit_pair = !a.alleged.empty() || !a.real.empty();
  if (explicit_pair && (a.alleged.empty() || a.real.empty())) throw InvalidInput("pass both --alleged and --real");
  if (!explicit_pair && !alpha) {
    // No witness: run the enumerated soundness sweep.
    if constexpr (Numeric<T>::exact) {
      throw InvalidInput("the soundness sweep runs in floating point; drop --rational");
    } else {
      return emit(g, verify_lying_sweep(inst, tolerance_of<T>(g), g.jobs));
    }
  }
  DishonestScheme<T> ds;
  if (explicit_pair) {
    ds = {scheme_from_json<T>(read_json_file(a.alleged)), scheme_from_json<T>(read_json_file(a.real))};
  } else {
    ds = lying_scheme_pair(*inst.lying, *alpha);
    if (a.honest) ds = honest_pair(ds.alleged);
  }
  return emit(g, verify_lying(inst, ds, expect, tolerance_of<T>(g), g.jobs));
}

template <class F>
int dispatch(const Global& g, F&& body) {
  return g.rational ? body(Rational{}) : body(double{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum signaling games, lying schemes and CSP hardness reductions"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed for sampled checks (required by verify-soundness)");
  app.add_option("--tolerance", g.tolerance, "verdict tolerance (default 0 rational, 1e-8 floating)");
  app.add_flag("--rational", g.rational, "exact rational arithmetic");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--report", g.report, "write the JSON report here instead of stdout");

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "compile a 2-CSP into a game");
  add_instance_options(reduce_cmd, reduce.instance, true);
  reduce_cmd->add_option("--out", reduce.out, "game file to write")->required();
  reduce_cmd->add_flag("--lazy", reduce.lazy, "write {construction, csp, params} instead of dense matrices");

  GameArgs game;
  auto* solve_cmd = app.add_subcommand("solve", "value and optimal strategies of the prior game or one state");
  solve_cmd->add_option("--game", game.game)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--state", game.state, "solve this state alone");

  auto* signal_cmd = app.add_subcommand("signal-value", "Alice's value under a signaling scheme");
  signal_cmd->add_option("--game", game.game)->required()->check(CLI::ExistingFile);
  signal_cmd->add_option("--scheme", game.scheme)->required()->check(CLI::ExistingFile);

  auto* brute_cmd = app.add_subcommand("brute-opt", "best deterministic scheme by exhaustive partition search");
  brute_cmd->add_option("--game", game.game)->required()->check(CLI::ExistingFile);
  brute_cmd->add_option("--cap", game.cap, "largest state count to enumerate")->capture_default_str();

  auto* lying_cmd = app.add_subcommand("lying-eval", "Alice's payoff under an alleged/real scheme pair");
  lying_cmd->add_option("--game", game.game)->required()->check(CLI::ExistingFile);
  lying_cmd->add_option("--alleged", game.alleged)->required()->check(CLI::ExistingFile);
  lying_cmd->add_option("--real", game.real)->required()->check(CLI::ExistingFile);
  lying_cmd->add_option("--policy", game.policy, "pessimistic, canonical or optimistic")
      ->check(CLI::IsMember({"pessimistic", "canonical", "optimistic"}))
      ->capture_default_str();

  VerifyArgs verify;
  auto* vc_cmd = app.add_subcommand("verify-completeness", "check the per-signal completeness guarantee");
  add_instance_options(vc_cmd, verify.instance, false);
  vc_cmd->add_option("--assignment", verify.assignment, "comma-separated labels (default: first satisfying)");

  auto* vs_cmd = app.add_subcommand("verify-soundness", "sample posteriors and compare against the reference value");
  add_instance_options(vs_cmd, verify.instance, false);
  vs_cmd->add_option("--samples", verify.samples)->capture_default_str();
  vs_cmd->add_flag("--exhaustive", verify.exhaustive, "also maximize over every state subset (mult only)");
  vs_cmd->add_option("--reference", verify.reference, "value to stay below (default: own completeness value)");

  auto* vl_cmd = app.add_subcommand("verify-lying", "lying value under all policies plus Bob's extra-column behavior");
  add_instance_options(vl_cmd, verify.instance, false);
  vl_cmd->add_option("--assignment", verify.assignment, "satisfying labels for the completeness scheme pair");
  vl_cmd->add_option("--alleged", verify.alleged, "alleged scheme file")->check(CLI::ExistingFile);
  vl_cmd->add_option("--real", verify.real, "real scheme file")->check(CLI::ExistingFile);
  vl_cmd->add_flag("--honest", verify.honest, "evaluate the honest pair real = alleged");
  vl_cmd->add_option("--expect", verify.expect, "none, completeness, soundness or honest")
      ->check(CLI::IsMember({"none", "completeness", "soundness", "honest"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*reduce_cmd) return dispatch(g, [&](auto t) { return run_reduce<decltype(t)>(g, reduce); });
    if (*solve_cmd) return dispatch(g, [&](auto t) { return run_solve<decltype(t)>(g, game); });
    if (*signal_cmd) return dispatch(g, [&](auto t) { return run_signal_value<decltype(t)>(g, game); });
    if (*brute_cmd) return dispatch(g, [&](auto t) { return run_brute_opt<decltype(t)>(g, game); });
    if (*lying_cmd) return dispatch(g, [&](auto t) { return run_lying_eval<decltype(t)>(g, game); });
    if (*vc_cmd) return dispatch(g, [&](auto t) { return run_verify_completeness<decltype(t)>(g, verify); });
    if (*vs_cmd) return run_verify_soundness(g, verify);
    if (*vl_cmd) return dispatch(g, [&](auto t) { return run_verify_lying<decltype(t)>(g, verify); });
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
