#include <gtest/gtest.h>

#include "zsig/harness.hpp"
#include "zsig/io.hpp"

namespace zsig {
namespace {

std::string single_edge_text() { return write_csp(Csp2Instance(2, 2, 1, {{0, 1, equality_relation(2)}})); }

std::string matching_text() {
  return write_csp(Csp2Instance(4, 2, 1, {{0, 1, equality_relation(2)}, {2, 3, equality_relation(2)}}));
}

template <class T>
ReductionParams<T> k_one() {
  ReductionParams<T> p;
  p.k = 1;
  return p;
}

TEST(Io, ParamsRoundTrip) {
  ReductionParams<Rational> p;
  p.k = 2;
  p.epsilon = Rational(1, 4);
  const auto back = params_from_json<Rational>(params_to_json(p));
  EXPECT_EQ(back.delta, Rational(1, 10));
  EXPECT_EQ(*back.k, 2u);
  EXPECT_EQ(*back.epsilon, Rational(1, 4));
  EXPECT_THROW(params_from_json<double>(Json{{"delta", 2}}), InvalidInput);
}

TEST(Io, DenseGameRoundTripIsExact) {
  const auto inst = build_instance<Rational>(Construction::Multiplicative, single_edge_text(), {});
  const Json j = game_to_json(inst.game, std::size_t{1} << 22);
  const auto back = game_from_json<Rational>(Json::parse(j.dump()));
  ASSERT_EQ(back.num_states(), inst.game.num_states());
  for (std::size_t s = 0; s < back.num_states(); ++s) {
    EXPECT_EQ(back.state(s).id, inst.game.state(s).id);
    EXPECT_EQ(back.prior()[s], inst.game.prior()[s]);
    for (std::size_t r = 0; r < back.rows(); r += 7)
      for (std::size_t c = 0; c < back.cols(); c += 5)
        EXPECT_EQ(back.state(s).matrix(r, c), inst.game.state(s).matrix(r, c));
  }
  EXPECT_THROW(game_to_json(inst.game, 10), SizeLimitExceeded);
}

TEST(Io, LazyInstanceRebuilds) {
  const auto inst = build_instance<double>(Construction::Additive, single_edge_text(), k_one<double>());
  const auto game = game_from_json<double>(Json::parse(inst.lazy_json().dump()));
  EXPECT_EQ(game.num_states(), inst.game.num_states());
  EXPECT_EQ(game.state(3).matrix(4, 5), inst.game.state(3).matrix(4, 5));
  EXPECT_THROW(game_from_json<double>(Json{{"construction", "cubic"}, {"csp", single_edge_text()}}), InvalidInput);
}

TEST(Io, SchemeRoundTripAndValidation) {
  const auto inst = build_instance<Rational>(Construction::Multiplicative, matching_text(), {});
  const auto scheme = multiplicative_completeness_scheme(*inst.multiplicative, {1, 1, 0, 0}).scheme;
  const auto back = scheme_from_json<Rational>(Json::parse(scheme_to_json(scheme).dump()));
  EXPECT_EQ(back.signals, scheme.signals);
  EXPECT_EQ(back.kernel, scheme.kernel);
  Json bad = scheme_to_json(scheme);
  bad["kernel"][scheme.state_ids[0]] = Json{{"nowhere", "1"}};
  EXPECT_THROW(scheme_from_json<Rational>(bad), InvalidInput);
}

TEST(Harness, CompletenessOnTheMatchingIsExact) {
  const auto inst = build_instance<Rational>(Construction::Multiplicative, matching_text(), {});
  const auto rep = verify_completeness(inst, {1, 1, 0, 0}, Rational(0));
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.records.size(), 4u);
  EXPECT_EQ(rep.aggregate["target_value"], "91/400000");
  EXPECT_THROW(verify_completeness(inst, {1, 0, 0, 0}, Rational(0)), InvalidInput);
}

TEST(Harness, SampledSoundnessIsDeterministicAndCertified) {
  const auto pair = calibration_pair();
  const auto inst = build_instance<double>(Construction::Multiplicative, write_csp(pair.unsatisfiable), {});
  SoundnessOptions opt;
  opt.samples = 12;
  opt.seed = 7;
  opt.reference = MultiplicativeReduction<double>::create(pair.satisfiable, {})->completeness_value();
  const auto a = verify_soundness_sampled(inst, opt);
  opt.jobs = 2;
  const auto b = verify_soundness_sampled(inst, opt);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_TRUE(a.passed()) << a.to_json().dump(2);
}

TEST(Harness, PointMassMaxminIsTheStateValue) {
  const auto inst = build_instance<double>(Construction::Multiplicative, single_edge_text(), {});
  SoundnessOptions opt;
  opt.samples = 3;
  opt.seed = 11;
  const auto rep = verify_soundness_sampled(inst, opt);
  const Json& point = rep.records[2];
  ASSERT_EQ(point["kind"], "point");
  // The point sample reveals one state; recover which by solving every state.
  const double maxmin = std::stod(point["posteriors"][0]["maxmin"].get<std::string>());
  bool found = false;
  for (std::size_t s = 0; s < inst.game.num_states(); ++s)
    found |= std::abs(solve_value(inst.game.state(s).matrix.materialize()).value - maxmin) < 1e-9;
  EXPECT_TRUE(found);
}

TEST(Harness, AdditiveSoundnessUsesWholeSchemes) {
  const auto inst = build_instance<double>(Construction::Additive, single_edge_text(), k_one<double>());
  SoundnessOptions opt;
  opt.samples = 4;
  opt.seed = 3;
  const auto rep = verify_soundness_sampled(inst, opt);
  EXPECT_EQ(rep.check, "soundness-aggregate");
  EXPECT_GT(rep.records[0]["posteriors"].size(), 1u);
  EXPECT_EQ(rep.verdicts.size(), 2u);
  EXPECT_TRUE(rep.verdicts[0].pass);
}

TEST(Harness, LyingCompletenessAndHonestPair) {
  ReductionParams<Rational> p;
  p.epsilon = Rational(1, 4);
  const auto inst = build_instance<Rational>(Construction::Lying, write_csp(calibration_pair().satisfiable), p);
  const auto ds = lying_scheme_pair(*inst.lying, *find_satisfying(inst.lying->csp()));
  const auto rep = verify_lying(inst, ds, LyingExpectation::Completeness, Rational(0));
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
  ReductionParams<double> q;
  q.epsilon = 0.25;
  const auto fast = build_instance<double>(Construction::Lying, inst.csp_text, q);
  const auto alleged = lying_scheme_pair(*fast.lying, *find_satisfying(fast.lying->csp())).alleged;
  const auto honest = verify_lying(fast, honest_pair(alleged), LyingExpectation::Honest, 1e-9);
  EXPECT_TRUE(honest.passed()) << honest.to_json()["aggregate"].dump(2);
  EXPECT_THROW(verify_lying(build_instance<Rational>(Construction::Multiplicative, matching_text(), {}), ds,
                            LyingExpectation::None, Rational(0)),
               InvalidInput);
}

}  // namespace
}  // namespace zsig
