#pragma once

// JSON interchange for games, schemes and reduction instances.
//
// Game file:   {"rows", "cols", "states": [{"id", "prob", "matrix": [...]}]}
//              with the matrix row-major.  A file may instead hold a lazy
//              instance {"construction", "csp", "params"}, which is rebuilt.
// Scheme file: {"signals": [...], "kernel": {state-id: {signal-id: prob}}}.
// Scalars are written as strings ("p/q" in rational mode, the shortest
// round-trip decimal otherwise) and read from strings or JSON numbers.

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsig/csp.hpp"
#include "zsig/game.hpp"
#include "zsig/reductions/additive.hpp"
#include "zsig/reductions/lying.hpp"
#include "zsig/reductions/multiplicative.hpp"
#include "zsig/signaling.hpp"

namespace zsig {

using Json = nlohmann::ordered_json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

inline Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

template <class T>
T scalar_from_json(const Json& j, const std::string& what) {
  if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
  if (j.is_number_integer()) return T(j.get<std::int64_t>());
  if (j.is_number_float()) return convert_scalar<T>(j.get<double>());
  throw InvalidInput(what + " must be a number or a numeric string");
}

template <class T>
Json scalar_to_json(const T& x) {
  return format_scalar(x);
}

inline const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(where + " is missing '" + key + "'");
  return j.at(key);
}

// ---------------------------------------------------------------- params --

template <class T>
Json params_to_json(const ReductionParams<T>& p) {
  Json j;
  j["delta"] = scalar_to_json(p.delta);
  if (p.k) j["k"] = *p.k;
  if (p.eta) j["eta"] = *p.eta;
  if (p.c1) j["c1"] = scalar_to_json(*p.c1);
  if (p.c2) j["c2"] = scalar_to_json(*p.c2);
  if (p.epsilon) j["epsilon"] = scalar_to_json(*p.epsilon);
  return j;
}

template <class T>
ReductionParams<T> params_from_json(const Json& j) {
  ReductionParams<T> p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw InvalidInput("params must be an object");
  if (j.contains("delta")) p.delta = scalar_from_json<T>(j["delta"], "delta");
  if (j.contains("k")) p.k = j["k"].get<std::size_t>();
  if (j.contains("eta")) p.eta = j["eta"].get<double>();
  if (j.contains("c1")) p.c1 = scalar_from_json<T>(j["c1"], "c1");
  if (j.contains("c2")) p.c2 = scalar_from_json<T>(j["c2"], "c2");
  if (j.contains("epsilon")) p.epsilon = scalar_from_json<T>(j["epsilon"], "epsilon");
  p.validate();
  return p;
}

// ----------------------------------------------------------------- games --

template <class T>
Json game_to_json(const BayesianGame<T>& game, std::size_t cell_budget = kDefaultCellBudget) {
  if (game.rows() * game.cols() * game.num_states() > cell_budget)
    throw SizeLimitExceeded("dense game of " + std::to_string(game.num_states()) + " states of " +
                            std::to_string(game.rows()) + "x" + std::to_string(game.cols()) +
                            " exceeds the cell budget; write it lazily");
  Json j;
  j["rows"] = game.rows();
  j["cols"] = game.cols();
  j["states"] = Json::array();
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    Json st;
    st["id"] = game.state(s).id;
    st["prob"] = scalar_to_json(game.prior()[s]);
    Json m = Json::array();
    for (std::size_t r = 0; r < game.rows(); ++r)
      for (std::size_t c = 0; c < game.cols(); ++c) m.push_back(scalar_to_json(game.state(s).matrix(r, c)));
    st["matrix"] = std::move(m);
    j["states"].push_back(std::move(st));
  }
  return j;
}

enum class Construction { Additive, Multiplicative, Lying };

inline std::string construction_name(Construction c) {
  switch (c) {
    case Construction::Additive: return "additive";
    case Construction::Multiplicative: return "mult";
    case Construction::Lying: return "lying";
  }
  return "?";
}

inline Construction parse_construction(const std::string& name) {
  if (name == "additive") return Construction::Additive;
  if (name == "mult" || name == "multiplicative") return Construction::Multiplicative;
  if (name == "lying") return Construction::Lying;
  throw InvalidInput("unknown construction '" + name + "' (expected additive, mult or lying)");
}

// A reduction instance together with its Bayesian game.  Exactly one of the
// construction pointers is set.
template <class T>
struct Instance {
  Construction construction = Construction::Additive;
  std::string csp_text;
  ReductionParams<T> params;
  std::shared_ptr<const AdditiveReduction<T>> additive;
  std::shared_ptr<const MultiplicativeReduction<T>> multiplicative;
  std::shared_ptr<const LyingReduction<T>> lying;
  BayesianGame<T> game;

  Json metadata() const {
    Json j;
    j["construction"] = construction_name(construction);
    Json p = params_to_json(params);
    Json sizes;
    sizes["states"] = game.num_states();
    sizes["rows"] = game.rows();
    sizes["cols"] = game.cols();
    const T d = params.delta;
    switch (construction) {
      case Construction::Additive:
        p["k"] = additive->k();
        sizes["blocks"] = additive->num_blocks();
        j["payoff_bound"] = scalar_to_json(T(2) + d + d * d + d * d * d);
        break;
      case Construction::Multiplicative: {
        const T n(static_cast<std::int64_t>(multiplicative->csp().num_vars()));
        j["payoff_bound"] = scalar_to_json(T(2) + T(2) / n + power(d, 3) + power(d, 4) + power(d, 5));
        break;
      }
      case Construction::Lying:
        p["c1"] = scalar_to_json(lying->c1());
        p["c2"] = scalar_to_json(lying->c2());
        p["epsilon"] = scalar_to_json(lying->epsilon());
        j["c2_measured"] = lying->c2_measured();
        j["kappa"] = scalar_to_json(lying->kappa());
        {
          // Block entries are 1 - honest payoff, degenerate entries 0 or 1.
          const T n(static_cast<std::int64_t>(lying->csp().num_vars()));
          const T bound = T(2) + T(2) / n + power(d, 3) + power(d, 4) + power(d, 5);
          j["payoff_range"] = Json::array({scalar_to_json(T(T(1) - bound)), scalar_to_json(T(T(1) + bound))});
        }
        break;
    }
    j["params"] = std::move(p);
    j["sizes"] = std::move(sizes);
    return j;
  }

  Json lazy_json() const {
    Json j;
    j["construction"] = construction_name(construction);
    j["csp"] = csp_text;
    j["params"] = params_to_json(params);
    return j;
  }
};

template <class T>
Instance<T> build_instance(Construction construction, const std::string& csp_text, ReductionParams<T> params) {
  Instance<T> inst;
  inst.construction = construction;
  inst.csp_text = csp_text;
  inst.params = params;
  Csp2Instance csp = parse_csp(csp_text);
  switch (construction) {
    case Construction::Additive:
      inst.additive = AdditiveReduction<T>::create(std::move(csp), std::move(params));
      inst.game = inst.additive->game(inst.additive);
      break;
    case Construction::Multiplicative:
      inst.multiplicative = MultiplicativeReduction<T>::create(std::move(csp), std::move(params));
      inst.game = inst.multiplicative->game(inst.multiplicative);
      break;
    case Construction::Lying:
      inst.lying = LyingReduction<T>::create(std::move(csp), std::move(params));
      inst.game = inst.lying->game(inst.lying);
      break;
  }
  return inst;
}

inline bool is_lazy_instance(const Json& j) { return j.is_object() && j.contains("construction"); }

template <class T>
Instance<T> instance_from_json(const Json& j) {
  return build_instance<T>(parse_construction(require(j, "construction", "instance").get<std::string>()),
                           require(j, "csp", "instance").get<std::string>(),
                           params_from_json<T>(j.contains("params") ? j["params"] : Json()));
}

template <class T>
BayesianGame<T> game_from_json(const Json& j) {
  if (is_lazy_instance(j)) return instance_from_json<T>(j).game;
  const std::size_t rows = require(j, "rows", "game").get<std::size_t>();
  const std::size_t cols = require(j, "cols", "game").get<std::size_t>();
  const Json& states = require(j, "states", "game");
  if (!states.is_array() || states.empty()) throw InvalidInput("game 'states' must be a nonempty array");
  std::vector<GameState<T>> out;
  std::vector<T> prior;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const std::string where = "state " + std::to_string(s);
    const Json& st = states[s];
    const Json& m = require(st, "matrix", where);
    if (!m.is_array() || m.size() != rows * cols)
      throw InvalidInput(where + " matrix must have rows*cols = " + std::to_string(rows * cols) + " entries");
    std::vector<T> entries;
    for (const auto& x : m) entries.push_back(scalar_from_json<T>(x, where + " entry"));
    out.push_back({require(st, "id", where).get<std::string>(), ZeroSumMatrix<T>(rows, cols, std::move(entries))});
    prior.push_back(scalar_from_json<T>(require(st, "prob", where), where + " prob"));
  }
  return BayesianGame<T>(std::move(out), std::move(prior));
}

// --------------------------------------------------------------- schemes --

template <class T>
Json scheme_to_json(const SignalingScheme<T>& scheme) {
  Json j;
  j["signals"] = scheme.signals;
  Json kernel = Json::object();
  for (std::size_t s = 0; s < scheme.state_ids.size(); ++s) {
    Json row = Json::object();
    for (std::size_t k = 0; k < scheme.signals.size(); ++k)
      if (scheme.kernel[s][k] != T(0)) row[scheme.signals[k]] = scalar_to_json(scheme.kernel[s][k]);
    kernel[scheme.state_ids[s]] = std::move(row);
  }
  j["kernel"] = std::move(kernel);
  return j;
}

template <class T>
SignalingScheme<T> scheme_from_json(const Json& j) {
  SignalingScheme<T> scheme;
  const Json& signals = require(j, "signals", "scheme");
  if (!signals.is_array()) throw InvalidInput("scheme 'signals' must be an array");
  for (const auto& s : signals) scheme.signals.push_back(s.get<std::string>());
  const Json& kernel = require(j, "kernel", "scheme");
  if (!kernel.is_object()) throw InvalidInput("scheme 'kernel' must be an object");
  for (const auto& [state, row] : kernel.items()) {
    scheme.state_ids.push_back(state);
    std::vector<T> dist(scheme.signals.size(), T(0));
    for (const auto& [signal, prob] : row.items()) {
      const auto k = scheme.find_signal(signal);
      if (!k) throw InvalidInput("state '" + state + "' uses undeclared signal '" + signal + "'");
      dist[*k] = scalar_from_json<T>(prob, "kernel entry");
    }
    scheme.kernel.push_back(std::move(dist));
  }
  scheme.validate();
  return scheme;
}

template <class T>
Json mixed_to_json(const MixedStrategy<T>& x) {
  Json j = Json::object();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != T(0)) j[std::to_string(i)] = scalar_to_json(x[i]);
  return j;
}

}  // namespace zsig
