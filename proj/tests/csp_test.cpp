#include <random>

#include <gtest/gtest.h>

#include "zsig/csp.hpp"

namespace zsig {
namespace {

Csp2Instance single_equality_edge() { return parse_csp("csp 2 2 1\n0 1 : 0,0 1,1\n"); }

Csp2Instance equality_cycle(std::size_t n) {
  std::vector<CspEdge> edges;
  for (std::size_t x = 0; x < n; ++x) edges.push_back({x, (x + 1) % n, equality_relation(2)});
  return Csp2Instance(n, 2, 2, edges);
}

Csp2Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t d, std::size_t alphabet) {
  std::bernoulli_distribution coin(0.5);
  std::vector<CspEdge> edges;
  for (auto [u, v] : random_regular_graph(n, d, rng)) {
    CspEdge e{u, v, std::vector<bool>(alphabet * alphabet)};
    for (std::size_t i = 0; i < e.allowed.size(); ++i) e.allowed[i] = coin(rng);
    e.allowed[0] = true;
    edges.push_back(e);
  }
  return Csp2Instance(n, alphabet, d, edges);
}

TEST(ParseCsp, MinimalInstance) {
  auto inst = single_equality_edge();
  EXPECT_EQ(inst.num_vars(), 2u);
  EXPECT_EQ(inst.degree(), 1u);
  EXPECT_TRUE(inst.allows(0, 1, 1));
  EXPECT_FALSE(inst.allows(0, 0, 1));
}

TEST(ParseCsp, CommentsAndReversedEdges) {
  auto inst = parse_csp("# header next\ncsp 2 3 1\n\n1 0 : 2,0  # reversed\n");
  EXPECT_TRUE(inst.satisfies(0, 0, 1, 2));
  EXPECT_FALSE(inst.satisfies(0, 2, 1, 0));
  EXPECT_EQ(write_csp(inst), "csp 2 3 1\n0 1 : 0,2\n");
}

TEST(ParseCsp, RejectsMalformedInput) {
  EXPECT_THROW(parse_csp("csp 3 2 2\n0 1 : 0,0\n1 2 : 0,0\n"), InvalidInput);  // irregular
  EXPECT_THROW(parse_csp("csp 2 2 1\n0 1 : 0,2\n"), InvalidInput);
  EXPECT_THROW(parse_csp("csp 2 2 1\n0 0 : 0,0\n"), InvalidInput);
  EXPECT_THROW(parse_csp("csp 2 2 1\n0 1 : 0,0\n1 0 : 1,1\n"), InvalidInput);
  EXPECT_THROW(parse_csp("csp 2 2 1\n0 5 : 0,0\n"), InvalidInput);
  EXPECT_THROW(parse_csp("csp 2 2 1\n0 1 0,0\n"), InvalidInput);
  EXPECT_THROW(parse_csp("csp 2 2 1\n0 1 : 00\n"), InvalidInput);
  EXPECT_THROW(parse_csp("0 1 : 0,0\n"), InvalidInput);
  EXPECT_THROW(parse_csp(""), InvalidInput);
}

TEST(ParseCsp, DiagnosticsNameTheLine) {
  try {
    parse_csp("csp 2 2 1\n\n0 1 : 0,7\n");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    parse_csp("csp 3 2 2\n0 1 : 0,0\n1 2 : 0,0\n");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("degree"), std::string::npos);
  }
}

TEST(WriteCsp, RoundTripIsCanonical) {
  std::mt19937_64 rng(5);
  auto inst = random_instance(rng, 20, 3, 3);
  const std::string text = write_csp(inst);
  EXPECT_EQ(write_csp(parse_csp(text)), text);
  // Canonical form sorts edges even if the input lists them in another order.
  std::istringstream lines(text);
  std::string header, line;
  std::getline(lines, header);
  std::vector<std::string> body;
  while (std::getline(lines, line)) body.push_back(line);
  std::reverse(body.begin(), body.end());
  std::string shuffled = header + "\n";
  for (const auto& l : body) shuffled += l + "\n";
  EXPECT_EQ(write_csp(parse_csp(shuffled)), text);
}

TEST(CspValue, Examples) {
  auto edge = single_equality_edge();
  EXPECT_EQ(csp_value(edge, {0, 0}), 1);
  EXPECT_EQ(csp_value(edge, {0, 1}), 0);
  // Cycle 0-1-2-3-0: edges (0,1),(2,3) agree, (1,2),(3,0) differ.
  EXPECT_EQ(csp_value(equality_cycle(4), {0, 0, 1, 1}), Rational(1, 2));
  EXPECT_THROW(csp_value(edge, {0}), InvalidInput);
  EXPECT_THROW(csp_value(edge, {0, 2}), InvalidInput);
}

TEST(CspValue, MultipleOfEdgeFraction) {
  std::mt19937_64 rng(9);
  auto inst = random_instance(rng, 12, 3, 3);
  std::uniform_int_distribution<std::size_t> label(0, 2);
  for (int t = 0; t < 50; ++t) {
    Assignment a(12);
    for (auto& x : a) x = label(rng);
    Rational v = csp_value(inst, a);
    EXPECT_GE(v, 0);
    EXPECT_LE(v, 1);
    EXPECT_EQ(v * inst.num_edges(), Rational(satisfied_edges(inst, a)));
  }
}

TEST(FindSatisfying, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    auto inst = random_instance(rng, 6, 3, 2);
    bool brute = false;
    for (std::size_t mask = 0; mask < 64 && !brute; ++mask) {
      Assignment a(6);
      for (std::size_t x = 0; x < 6; ++x) a[x] = mask >> x & 1;
      brute = is_satisfying(inst, a);
    }
    auto found = find_satisfying(inst);
    EXPECT_EQ(found.has_value(), brute);
    if (found) EXPECT_TRUE(is_satisfying(inst, *found));
  }
}

TEST(GreedyPartition, OneRegularFourVariables) {
  auto inst = parse_csp("csp 4 2 1\n0 1 : 0,0\n2 3 : 1,1\n");
  auto p = greedy_partition(inst, 2);
  ASSERT_EQ(p.blocks.size(), 2u);
  EXPECT_EQ(p.blocks[0].size(), 2u);
  EXPECT_EQ(p.blocks[1].size(), 2u);
  EXPECT_EQ(partition_edge_bound(inst, 2), 8);
  EXPECT_TRUE(check_partition(inst, p).ok());
}

TEST(GreedyPartition, KEqualsNIsOneBlock) {
  auto inst = equality_cycle(5);
  auto p = greedy_partition(inst, 5);
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_EQ(p.blocks[0], (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(cross_edge_counts(inst, p)[0][0], 5u);
}

TEST(GreedyPartition, RandomCubicSixtyVariables) {
  std::mt19937_64 rng(21);
  auto inst = random_instance(rng, 60, 3, 2);
  auto p = greedy_partition(inst, 6);
  EXPECT_EQ(p.blocks.size(), 10u);
  // Independent recount straight from the edge list.
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    EXPECT_LE(p.blocks[i].size(), 12u);
    for (std::size_t j = 0; j < p.blocks.size(); ++j) {
      std::size_t count = 0;
      for (const auto& e : inst.edges()) {
        bool ui = std::count(p.blocks[i].begin(), p.blocks[i].end(), e.u) > 0;
        bool vi = std::count(p.blocks[i].begin(), p.blocks[i].end(), e.v) > 0;
        bool uj = std::count(p.blocks[j].begin(), p.blocks[j].end(), e.u) > 0;
        bool vj = std::count(p.blocks[j].begin(), p.blocks[j].end(), e.v) > 0;
        if ((ui && vj) || (uj && vi)) ++count;
      }
      EXPECT_LE(count, 43u);
    }
  }
}

TEST(GreedyPartition, RejectsBadK) {
  auto inst = equality_cycle(4);
  EXPECT_THROW(greedy_partition(inst, 0), InvalidInput);
  EXPECT_THROW(greedy_partition(inst, 5), InvalidInput);
}

bool brute_force_sat(const Cnf& cnf) {
  for (std::size_t mask = 0; mask < (std::size_t{1} << cnf.num_vars); ++mask) {
    bool all = true;
    for (const auto& clause : cnf.clauses) {
      bool any = false;
      for (int lit : clause) {
        bool value = mask >> (std::abs(lit) - 1) & 1;
        any = any || (lit > 0 ? value : !value);
      }
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

std::vector<bool> truth_from_mask(std::size_t mask, std::size_t n) {
  std::vector<bool> t(n);
  for (std::size_t x = 0; x < n; ++x) t[x] = mask >> x & 1;
  return t;
}

TEST(NaiveSatConversion, SatisfiableFormula) {
  Cnf cnf{3, {{1, 2, -3}, {-1, 3, 2}}};
  auto conv = naive_3sat_to_2csp(cnf);
  auto a = induced_assignment(conv, cnf, {true, false, true});
  EXPECT_EQ(csp_value(conv.csp, a), 1);
}

TEST(NaiveSatConversion, ContradictionHasNoFullAssignment) {
  Cnf cnf{1, {{1, 1, 1}, {-1, -1, -1}}};
  auto conv = naive_3sat_to_2csp(cnf);
  EXPECT_FALSE(find_satisfying(conv.csp).has_value());
  for (bool v : {false, true}) EXPECT_LT(csp_value(conv.csp, induced_assignment(conv, cnf, {v})), 1);
}

TEST(NaiveSatConversion, PreservesSatisfiability) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> var(1, 5), clauses(8, 26);
  std::bernoulli_distribution neg(0.5);
  int sat = 0, unsat = 0;
  for (int t = 0; t < 60; ++t) {
    Cnf cnf{5, {}};
    const int m = clauses(rng);
    for (int c = 0; c < m; ++c) {
      std::vector<int> clause;
      for (int l = 0; l < 3; ++l) clause.push_back(neg(rng) ? -var(rng) : var(rng));
      cnf.clauses.push_back(clause);
    }
    auto conv = naive_3sat_to_2csp(cnf);
    const bool expected = brute_force_sat(cnf);
    EXPECT_EQ(find_satisfying(conv.csp).has_value(), expected);
    (expected ? sat : unsat)++;
    for (std::size_t mask = 0; mask < 32; ++mask) {
      const auto truth = truth_from_mask(mask, 5);
      bool formula = true;
      for (const auto& clause : cnf.clauses) {
        bool any = false;
        for (int lit : clause) any = any || (lit > 0 ? truth[lit - 1] : !truth[-lit - 1]);
        formula = formula && any;
      }
      EXPECT_EQ(is_satisfying(conv.csp, induced_assignment(conv, cnf, truth)), formula);
    }
  }
  EXPECT_GT(sat, 0);
  EXPECT_GT(unsat, 0);
}

TEST(NaiveSatConversion, RejectsEmptyClause) {
  EXPECT_THROW(naive_3sat_to_2csp(Cnf{2, {{1, 2}, {}}}), InvalidInput);
  EXPECT_THROW(naive_3sat_to_2csp(Cnf{2, {{3}}}), InvalidInput);
}

TEST(RandomRegularGraph, IsSimpleAndRegular) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {10u, 31u, 120u}) {
    auto edges = random_regular_graph(n, n % 2 == 0 ? 3 : 2, rng);
    std::vector<std::size_t> degree(n, 0);
    for (auto [u, v] : edges) {
      EXPECT_LT(u, v);
      ++degree[u];
      ++degree[v];
    }
    for (auto d : degree) EXPECT_EQ(d, n % 2 == 0 ? 3u : 2u);
  }
  EXPECT_THROW(random_regular_graph(5, 3, rng), InvalidInput);
}

}  // namespace
}  // namespace zsig
