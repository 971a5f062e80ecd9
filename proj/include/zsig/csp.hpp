#pragma once

// Binary constraint satisfaction instances over a d-regular constraint graph.
//
// Text format:
//
//   csp <n> <alphabet> <degree>
//   <u> <v> : <a>,<b> <a>,<b> ...
//
// one line per edge listing the allowed label pairs (label of u first).
// Blank lines and '#' comments are ignored.  write_csp emits the canonical
// form: edges sorted with u < v, pairs sorted.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zsig/error.hpp"
#include "zsig/scalar.hpp"

namespace zsig {

struct CspEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  // allowed[a * alphabet + b]: label a on u and b on v satisfy the edge.
  std::vector<bool> allowed;
};

class Csp2Instance {
 public:
  Csp2Instance() = default;

  // Edges may be given with u > v; they are flipped into canonical orientation.
  Csp2Instance(std::size_t n, std::size_t alphabet, std::size_t degree, std::vector<CspEdge> edges)
      : n_(n), alphabet_(alphabet), degree_(degree), edges_(std::move(edges)) {
    if (n_ == 0) throw InvalidInput("csp needs at least one variable");
    if (alphabet_ == 0) throw InvalidInput("csp alphabet is empty");
    incident_.assign(n_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto& edge = edges_[e];
      const std::string where = "edge " + std::to_string(edge.u) + "-" + std::to_string(edge.v);
      if (edge.u >= n_ || edge.v >= n_) throw InvalidInput(where + " names a variable out of range");
      if (edge.u == edge.v) throw InvalidInput(where + " is a self-loop");
      if (edge.allowed.size() != alphabet_ * alphabet_) throw InvalidInput(where + " has a relation of wrong size");
      if (edge.u > edge.v) {
        std::vector<bool> flipped(alphabet_ * alphabet_);
        for (std::size_t a = 0; a < alphabet_; ++a)
          for (std::size_t b = 0; b < alphabet_; ++b) flipped[b * alphabet_ + a] = edge.allowed[a * alphabet_ + b];
        edge.allowed = std::move(flipped);
        std::swap(edge.u, edge.v);
      }
      if (std::none_of(edge.allowed.begin(), edge.allowed.end(), [](bool x) { return x; }))
        throw InvalidInput(where + " has an empty relation");
      if (!index_.emplace(std::make_pair(edge.u, edge.v), e).second) throw InvalidInput(where + " is duplicated");
      incident_[edge.u].push_back(e);
      incident_[edge.v].push_back(e);
    }
    for (std::size_t x = 0; x < n_; ++x) {
      if (incident_[x].size() != degree_) {
        throw InvalidInput("variable " + std::to_string(x) + " has degree " + std::to_string(incident_[x].size()) +
                           ", expected " + std::to_string(degree_));
      }
    }
  }

  std::size_t num_vars() const { return n_; }
  std::size_t alphabet() const { return alphabet_; }
  std::size_t degree() const { return degree_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<CspEdge>& edges() const { return edges_; }
  const CspEdge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<std::size_t>& incident(std::size_t x) const { return incident_.at(x); }

  std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const {
    auto it = index_.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool allows(std::size_t e, std::size_t label_u, std::size_t label_v) const {
    return edges_[e].allowed[label_u * alphabet_ + label_v];
  }

  // Whether labels (la on variable a, lb on variable b) satisfy edge {a, b}.
  bool satisfies(std::size_t a, std::size_t la, std::size_t b, std::size_t lb) const {
    auto e = find_edge(a, b);
    if (!e) throw InvalidInput("no constraint between " + std::to_string(a) + " and " + std::to_string(b));
    return a < b ? allows(*e, la, lb) : allows(*e, lb, la);
  }

 private:
  std::size_t n_ = 0;
  std::size_t alphabet_ = 0;
  std::size_t degree_ = 0;
  std::vector<CspEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
};

using Assignment = std::vector<std::size_t>;

namespace detail {

inline std::size_t parse_count(const std::string& token, std::size_t line, const char* what) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InvalidInput("line " + std::to_string(line) + ": expected " + what + ", got '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw InvalidInput("line " + std::to_string(line) + ": " + what + " out of range");
  }
}

}  // namespace detail

inline Csp2Instance parse_csp(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, alphabet = 0, degree = 0;
  std::vector<CspEdge> edges;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (!have_header) {
      if (words.size() != 4 || words[0] != "csp") throw InvalidInput(where + "expected header 'csp n alphabet degree'");
      n = detail::parse_count(words[1], line_no, "variable count");
      alphabet = detail::parse_count(words[2], line_no, "alphabet size");
      degree = detail::parse_count(words[3], line_no, "degree");
      if (n == 0 || alphabet == 0) throw InvalidInput(where + "variable count and alphabet must be positive");
      have_header = true;
      continue;
    }
    if (words.size() < 4 || words[2] != ":") throw InvalidInput(where + "expected 'u v : a,b ...'");
    CspEdge edge;
    edge.u = detail::parse_count(words[0], line_no, "variable");
    edge.v = detail::parse_count(words[1], line_no, "variable");
    if (edge.u >= n || edge.v >= n) throw InvalidInput(where + "variable out of range [0, " + std::to_string(n) + ")");
    if (edge.u == edge.v) throw InvalidInput(where + "self-loop on variable " + std::to_string(edge.u));
    auto key = std::minmax(edge.u, edge.v);
    if (auto it = seen.find(key); it != seen.end())
      throw InvalidInput(where + "duplicate edge (first on line " + std::to_string(it->second) + ")");
    seen.emplace(key, line_no);
    edge.allowed.assign(alphabet * alphabet, false);
    for (std::size_t w = 3; w < words.size(); ++w) {
      auto comma = words[w].find(',');
      if (comma == std::string::npos) throw InvalidInput(where + "pair '" + words[w] + "' lacks a comma");
      std::size_t a = detail::parse_count(words[w].substr(0, comma), line_no, "label");
      std::size_t b = detail::parse_count(words[w].substr(comma + 1), line_no, "label");
      if (a >= alphabet || b >= alphabet)
        throw InvalidInput(where + "label out of range in pair '" + words[w] + "'");
      edge.allowed[a * alphabet + b] = true;
    }
    edges.push_back(std::move(edge));
  }
  if (!have_header) throw InvalidInput("missing 'csp' header");
  return Csp2Instance(n, alphabet, degree, std::move(edges));
}

inline std::string write_csp(const Csp2Instance& inst) {
  std::vector<std::size_t> order(inst.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(inst.edge(a).u, inst.edge(a).v) < std::make_pair(inst.edge(b).u, inst.edge(b).v);
  });
  std::ostringstream out;
  out << "csp " << inst.num_vars() << ' ' << inst.alphabet() << ' ' << inst.degree() << '\n';
  const std::size_t s = inst.alphabet();
  for (std::size_t e : order) {
    const auto& edge = inst.edge(e);
    out << edge.u << ' ' << edge.v << " :";
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        if (edge.allowed[a * s + b]) out << ' ' << a << ',' << b;
    out << '\n';
  }
  return out.str();
}

inline std::size_t satisfied_edges(const Csp2Instance& inst, const Assignment& assignment) {
  if (assignment.size() != inst.num_vars())
    throw InvalidInput("assignment has " + std::to_string(assignment.size()) + " entries, expected " +
                       std::to_string(inst.num_vars()));
  for (std::size_t x = 0; x < assignment.size(); ++x)
    if (assignment[x] >= inst.alphabet()) throw InvalidInput("label out of range for variable " + std::to_string(x));
  std::size_t count = 0;
  for (std::size_t e = 0; e < inst.num_edges(); ++e)
    if (inst.allows(e, assignment[inst.edge(e).u], assignment[inst.edge(e).v])) ++count;
  return count;
}

// Fraction of satisfied edges; an instance without edges has value 1.
template <class T = Rational>
T csp_value(const Csp2Instance& inst, const Assignment& assignment) {
  const std::size_t sat = satisfied_edges(inst, assignment);
  if (inst.num_edges() == 0) return T(1);
  return from_ratio<T>(static_cast<std::int64_t>(sat), static_cast<std::int64_t>(inst.num_edges()));
}

inline bool is_satisfying(const Csp2Instance& inst, const Assignment& assignment) {
  return satisfied_edges(inst, assignment) == inst.num_edges();
}

namespace detail {

using Domains = std::vector<std::vector<char>>;

// Removes from `dom[y]` every label without support on edge e given that the
// other endpoint's domain is `dom[x]`; reports whether anything changed.
inline bool revise(const Csp2Instance& inst, std::size_t e, std::size_t y, Domains& dom) {
  const auto& edge = inst.edge(e);
  const std::size_t x = edge.u == y ? edge.v : edge.u;
  bool changed = false;
  for (std::size_t ly = 0; ly < inst.alphabet(); ++ly) {
    if (!dom[y][ly]) continue;
    bool supported = false;
    for (std::size_t lx = 0; lx < inst.alphabet() && !supported; ++lx)
      if (dom[x][lx]) supported = edge.u == y ? inst.allows(e, ly, lx) : inst.allows(e, lx, ly);
    if (!supported) {
      dom[y][ly] = 0;
      changed = true;
    }
  }
  return changed;
}

inline bool search_satisfying(const Csp2Instance& inst, Domains& dom, std::vector<bool>& fixed, Assignment& out) {
  std::size_t pick = inst.num_vars(), best = 0;
  for (std::size_t x = 0; x < inst.num_vars(); ++x) {
    if (fixed[x]) continue;
    const auto size = static_cast<std::size_t>(std::count(dom[x].begin(), dom[x].end(), 1));
    if (pick == inst.num_vars() || size < best) {
      pick = x;
      best = size;
    }
  }
  if (pick == inst.num_vars()) return true;
  for (std::size_t label = 0; label < inst.alphabet(); ++label) {
    if (!dom[pick][label]) continue;
    Domains trial = dom;
    std::fill(trial[pick].begin(), trial[pick].end(), 0);
    trial[pick][label] = 1;
    bool alive = true;
    for (std::size_t e : inst.incident(pick)) {
      const auto& edge = inst.edge(e);
      const std::size_t y = edge.u == pick ? edge.v : edge.u;
      if (fixed[y]) continue;
      revise(inst, e, y, trial);
      if (std::find(trial[y].begin(), trial[y].end(), 1) == trial[y].end()) {
        alive = false;
        break;
      }
    }
    if (!alive) continue;
    fixed[pick] = true;
    out[pick] = label;
    if (search_satisfying(inst, trial, fixed, out)) return true;
    fixed[pick] = false;
  }
  return false;
}

}  // namespace detail

// Satisfiability by backtracking with forward checking, branching on the
// variable with the fewest remaining labels.  Returns a witness.
inline std::optional<Assignment> find_satisfying(const Csp2Instance& inst) {
  detail::Domains dom(inst.num_vars(), std::vector<char>(inst.alphabet(), 1));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
      changed = detail::revise(inst, e, inst.edge(e).u, dom) || changed;
      changed = detail::revise(inst, e, inst.edge(e).v, dom) || changed;
    }
  }
  for (const auto& d : dom)
    if (std::find(d.begin(), d.end(), 1) == d.end()) return std::nullopt;
  std::vector<bool> fixed(inst.num_vars(), false);
  Assignment out(inst.num_vars(), 0);
  if (!detail::search_satisfying(inst, dom, fixed, out)) return std::nullopt;
  return out;
}

struct Partition {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of;
};

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// |(S_i x S_j) ∩ E| for every pair of blocks; an edge inside one block is
// counted once on the diagonal.
inline std::vector<std::vector<std::size_t>> cross_edge_counts(const Csp2Instance& inst, const Partition& p) {
  const std::size_t m = p.blocks.size();
  std::vector<std::vector<std::size_t>> counts(m, std::vector<std::size_t>(m, 0));
  for (const auto& edge : inst.edges()) {
    const std::size_t a = p.block_of.at(edge.u), b = p.block_of.at(edge.v);
    ++counts[a][b];
    if (a != b) ++counts[b][a];
  }
  return counts;
}

// 8 d^2 k^2 / n as an exact fraction.
inline Rational partition_edge_bound(const Csp2Instance& inst, std::size_t k) {
  const BigInt d(inst.degree()), kk(k);
  return Rational(8 * d * d * kk * kk, BigInt(inst.num_vars()));
}

struct PartitionCheck {
  bool sizes_ok = true;
  bool edges_ok = true;
  std::size_t largest_block = 0;
  std::size_t largest_cross = 0;
  bool ok() const { return sizes_ok && edges_ok; }
};

inline PartitionCheck check_partition(const Csp2Instance& inst, const Partition& p) {
  PartitionCheck out;
  std::vector<bool> seen(inst.num_vars(), false);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    out.largest_block = std::max(out.largest_block, p.blocks[b].size());
    for (std::size_t x : p.blocks[b]) {
      if (x >= inst.num_vars() || seen[x] || p.block_of.at(x) != b) out.sizes_ok = false;
      else seen[x] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) out.sizes_ok = false;
  if (out.largest_block > 2 * p.k) out.sizes_ok = false;
  const Rational bound = partition_edge_bound(inst, p.k);
  for (const auto& row : cross_edge_counts(inst, p))
    for (std::size_t c : row) {
      out.largest_cross = std::max(out.largest_cross, c);
      if (Rational(c) > bound) out.edges_ok = false;
    }
  return out;
}

// Assigns variables in index order.  A block is feasible for the next
// variable if it has fewer than 2k members and its edge count with every
// block stays within 8 d^2 k^2 / n after the insertion; the smallest feasible
// block wins, ties going to the lowest index.
inline Partition greedy_partition(const Csp2Instance& inst, std::size_t k) {
  const std::size_t n = inst.num_vars();
  if (k == 0 || k > n) throw InvalidInput("block parameter k must lie in [1, n]");
  const std::size_t m = ceil_div(n, k);
  const Rational bound = partition_edge_bound(inst, k);
  Partition p{k, std::vector<std::vector<std::size_t>>(m), std::vector<std::size_t>(n, m)};
  std::vector<std::vector<std::size_t>> counts(m, std::vector<std::size_t>(m, 0));
  std::vector<std::size_t> added(m);
  for (std::size_t x = 0; x < n; ++x) {
    // Edges from x to already placed variables, grouped by block.
    std::fill(added.begin(), added.end(), 0);
    for (std::size_t e : inst.incident(x)) {
      const auto& edge = inst.edge(e);
      const std::size_t other = edge.u == x ? edge.v : edge.u;
      if (p.block_of[other] < m) ++added[p.block_of[other]];
    }
    std::size_t chosen = m;
    for (std::size_t b = 0; b < m; ++b) {
      if (p.blocks[b].size() >= 2 * k) continue;
      if (chosen < m && p.blocks[b].size() >= p.blocks[chosen].size()) continue;
      bool fits = true;
      for (std::size_t j = 0; j < m && fits; ++j)
        if (added[j] > 0 && Rational(counts[b][j] + added[j]) > bound) fits = false;
      if (fits) chosen = b;
    }
    if (chosen == m) throw InternalError("greedy partition: no feasible block for variable " + std::to_string(x));
    for (std::size_t j = 0; j < m; ++j) {
      if (added[j] == 0) continue;
      counts[chosen][j] += added[j];
      if (j != chosen) counts[j][chosen] += added[j];
    }
    p.blocks[chosen].push_back(x);
    p.block_of[x] = chosen;
  }
  return p;
}

// Default block parameter: ceil(sqrt(n)).
inline std::size_t default_block_parameter(std::size_t n) {
  std::size_t k = 1;
  while (k * k < n) ++k;
  return k;
}

// Uniform-ish random simple d-regular graph via the configuration model with
// restarts.  Edges come back with u < v in pairing order.
template <class Rng>
std::vector<std::pair<std::size_t, std::size_t>> random_regular_graph(std::size_t n, std::size_t d, Rng& rng) {
  if (d >= n || (n * d) % 2 != 0) throw InvalidInput("no simple d-regular graph on these parameters");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::size_t> stubs;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < d; ++i) stubs.push_back(x);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
      auto key = std::minmax(stubs[i], stubs[i + 1]);
      if (key.first == key.second || !seen.emplace(key, true).second) simple = false;
      edges.push_back(key);
    }
    if (simple) return edges;
  }
  throw InternalError("random regular graph: too many rejected pairings");
}

inline std::vector<bool> equality_relation(std::size_t alphabet) {
  std::vector<bool> r(alphabet * alphabet, false);
  for (std::size_t a = 0; a < alphabet; ++a) r[a * alphabet + a] = true;
  return r;
}

inline std::vector<bool> full_relation(std::size_t alphabet) { return std::vector<bool>(alphabet * alphabet, true); }

// 3-CNF over variables 0..num_vars-1.  Literal +x+1 is variable x, -(x+1)
// its negation.
struct Cnf {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

struct SatConversion {
  Csp2Instance csp;
  std::size_t num_clauses = 0;
  std::size_t num_sat_vars = 0;
  // CSP variable of SAT variable x is num_clauses + x; later ones are padding.
  std::size_t padding_vars = 0;
};

namespace detail {

inline bool literal_true(int lit, bool value) { return lit > 0 ? value : !value; }

inline std::size_t literal_var(int lit) { return static_cast<std::size_t>(lit > 0 ? lit : -lit) - 1; }

// Adds edges so every vertex reaches degree `target`, connecting the most
// deficient vertices first and never duplicating an edge.
inline bool pad_to_degree(std::vector<std::size_t>& degree, std::size_t target,
                          std::map<std::pair<std::size_t, std::size_t>, bool>& present,
                          std::vector<std::pair<std::size_t, std::size_t>>& added) {
  const std::size_t count = degree.size();
  while (true) {
    std::size_t head = count;
    for (std::size_t x = 0; x < count; ++x)
      if (degree[x] < target && (head == count || degree[x] < degree[head])) head = x;
    if (head == count) return true;
    std::vector<std::size_t> partners;
    for (std::size_t x = 0; x < count; ++x)
      if (x != head && degree[x] < target && !present.count(std::minmax(head, x))) partners.push_back(x);
    std::stable_sort(partners.begin(), partners.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });
    const std::size_t need = target - degree[head];
    if (partners.size() < need) return false;
    for (std::size_t i = 0; i < need; ++i) {
      const std::size_t x = partners[i];
      present[std::minmax(head, x)] = true;
      added.emplace_back(head, x);
      ++degree[x];
    }
    degree[head] = target;
  }
}

}  // namespace detail

// Clause/variable incidence 2-CSP.  A clause vertex's label is a bit vector
// over its literal positions; a variable vertex's label is its truth value.
// An incidence edge accepts exactly the pairs where the clause bits make the
// clause true and agree with the variable at every position it occupies.
// Padding edges are unconstrained and may attach fresh vertices to reach a
// common degree.  Satisfiability is preserved both ways; nothing about the
// fraction of satisfiable constraints carries over.
inline SatConversion naive_3sat_to_2csp(const Cnf& cnf) {
  constexpr std::size_t kAlphabet = 8;
  const std::size_t m = cnf.clauses.size();
  for (std::size_t c = 0; c < m; ++c) {
    const auto& clause = cnf.clauses[c];
    if (clause.empty()) throw InvalidInput("clause " + std::to_string(c) + " is empty");
    if (clause.size() > 3) throw InvalidInput("clause " + std::to_string(c) + " has more than 3 literals");
    for (int lit : clause)
      if (lit == 0 || detail::literal_var(lit) >= cnf.num_vars)
        throw InvalidInput("clause " + std::to_string(c) + " has an invalid literal");
  }
  std::vector<CspEdge> edges;
  std::map<std::pair<std::size_t, std::size_t>, bool> present;
  std::vector<std::size_t> degree(m + cnf.num_vars, 0);
  for (std::size_t c = 0; c < m; ++c) {
    const auto& clause = cnf.clauses[c];
    std::vector<std::size_t> vars;
    for (int lit : clause) vars.push_back(detail::literal_var(lit));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (std::size_t x : vars) {
      CspEdge edge{c, m + x, std::vector<bool>(kAlphabet * kAlphabet, false)};
      for (std::size_t bits = 0; bits < kAlphabet; ++bits) {
        if (bits >> clause.size() != 0) continue;
        bool sat = false;
        for (std::size_t p = 0; p < clause.size(); ++p) sat = sat || detail::literal_true(clause[p], bits >> p & 1);
        bool consistent = true;
        for (std::size_t p = 0; p < clause.size(); ++p)
          for (std::size_t q = 0; q < clause.size(); ++q)
            if (detail::literal_var(clause[p]) == detail::literal_var(clause[q]) && (bits >> p & 1) != (bits >> q & 1))
              consistent = false;
        if (!sat || !consistent) continue;
        for (std::size_t value = 0; value < 2; ++value) {
          bool agrees = true;
          for (std::size_t p = 0; p < clause.size(); ++p)
            if (detail::literal_var(clause[p]) == x && (bits >> p & 1) != value) agrees = false;
          if (agrees) edge.allowed[bits * kAlphabet + value] = true;
        }
      }
      present[{c, m + x}] = true;
      ++degree[c];
      ++degree[m + x];
      edges.push_back(std::move(edge));
    }
  }
  std::size_t target = std::max<std::size_t>(1, *std::max_element(degree.begin(), degree.end()));
  for (std::size_t fresh = 0; fresh <= 2 * target + 4; ++fresh) {
    auto deg = degree;
    deg.resize(degree.size() + fresh, 0);
    std::size_t deficit = 0;
    for (std::size_t x : deg) deficit += target - x;
    if (deficit % 2 != 0) continue;
    auto used = present;
    std::vector<std::pair<std::size_t, std::size_t>> added;
    if (!detail::pad_to_degree(deg, target, used, added)) continue;
    auto all = edges;
    for (auto [a, b] : added) all.push_back({a, b, full_relation(kAlphabet)});
    return {Csp2Instance(deg.size(), kAlphabet, target, std::move(all)), m, cnf.num_vars, fresh};
  }
  throw InternalError("could not regularize the incidence graph");
}

// CSP assignment induced by a truth assignment; padding vertices get 0.
inline Assignment induced_assignment(const SatConversion& conv, const Cnf& cnf, const std::vector<bool>& truth) {
  Assignment a(conv.csp.num_vars(), 0);
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    std::size_t bits = 0;
    for (std::size_t p = 0; p < cnf.clauses[c].size(); ++p)
      if (truth.at(detail::literal_var(cnf.clauses[c][p]))) bits |= std::size_t{1} << p;
    a[c] = bits;
  }
  for (std::size_t x = 0; x < cnf.num_vars; ++x) a[conv.num_clauses + x] = truth.at(x) ? 1 : 0;
  return a;
}

}  // namespace zsig
