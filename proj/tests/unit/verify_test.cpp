#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "oracles.hpp"
#include "psqm/bounds.hpp"
#include "psqm/verify.hpp"

using namespace psqm;
using namespace psqm::protocols;
using namespace psqm::verify;

TEST(Sweep, ExhaustiveEnumeratesPromiseInputs) {
  const auto s = sweep_inputs(Sum2Protocol(3), {});
  EXPECT_TRUE(s.coverage.exhaustive);
  EXPECT_EQ(s.coverage.domain_size, 64U);
  EXPECT_EQ(s.inputs.size(), 64U);
  EXPECT_EQ(s.coverage.randomness, 8U);
  EXPECT_EQ(format_inputs(s.inputs[1]), "00,00,01");

  // n = 4: 16 equal pairs and 16 * C(4,2) pairs at distance 2.
  const auto dj = sweep_inputs(DjProtocol(4), {});
  EXPECT_EQ(dj.inputs.size(), 16U + 16U * 6U);
}

TEST(Sweep, SamplingNeedsSeedAndIsDeterministic) {
  const DjProtocol p(4);
  SweepOptions o;
  o.budget = 100;
  EXPECT_THROW(sweep_inputs(p, o), std::invalid_argument);
  o.seed = 7;
  const auto a = sweep_inputs(p, o);
  const auto b = sweep_inputs(p, o);
  EXPECT_FALSE(a.coverage.exhaustive);
  EXPECT_EQ(a.coverage.seed, 7U);
  EXPECT_EQ(a.inputs, b.inputs);
  std::map<int, int> per_class;
  for (const auto& x : a.inputs) {
    ++per_class[*p.reference(x)];
  }
  EXPECT_EQ(per_class[0], 64);
  EXPECT_EQ(per_class[1], 64);
  o.seed = 8;
  EXPECT_NE(sweep_inputs(p, o).inputs, a.inputs);
}

TEST(Correctness, PassesOnAllProtocols) {
  for (int k = 2; k <= 4; ++k) {
    const auto r = check_correctness(Sum2Protocol(k));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.failures, 0U);
    EXPECT_NEAR(r.min_mass, 1.0, 1e-10);
    EXPECT_EQ(r.cases, (std::size_t{1} << (2 * k)) * Sum2Protocol(k).randomness_count());
  }
  EXPECT_TRUE(check_correctness(GeqProtocol(2, 1)).pass);
  EXPECT_TRUE(check_correctness(DjProtocol(4)).pass);
}

TEST(Privacy, Sum2ClassesAgreeAndAreOrthogonal) {
  for (int k : {2, 4}) {
    const auto r = check_privacy(Sum2Protocol(k));
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.classes.size(), 4U);
    for (const auto& c : r.classes) {
      EXPECT_LE(c.max_distance, 1e-9);
      EXPECT_NEAR(c.purity, std::ldexp(1.0, -(k - 2)), 1e-9);
      EXPECT_EQ(c.inputs, std::size_t{1} << (2 * k - 2));
    }
    EXPECT_LE(r.max_cross_product, 1e-9);
    EXPECT_FALSE(r.reject_mass_on_zero_strings.has_value());
  }
}

TEST(Privacy, ClassRepresentativesMatchDirectAverages) {
  const Sum2Protocol p(2);
  const auto r = check_privacy(p);
  for (const auto& c : r.classes) {
    // Pick any member of the class and compare against its own average.
    for (const auto& x : sweep_inputs(p, {}).inputs) {
      if (*p.reference(x) == c.output) {
        EXPECT_LE(qsim::matrix_distance(averaged_message(p, x), c.rho), 1e-10);
      }
    }
  }
}

TEST(Privacy, DjRejectClassSpreadsOverDistinctPairs) {
  const auto r4 = check_privacy(DjProtocol(4));
  EXPECT_TRUE(r4.pass);
  ASSERT_TRUE(r4.reject_mass_on_zero_strings.has_value());
  EXPECT_NEAR(*r4.reject_mass_on_zero_strings, 0.5, 1e-12);
}

TEST(WeightSums, OrthonormalListsProperty) {
  const auto basis = qsim::phi_basis(3).vectors();
  for (std::size_t x = 0; x < basis.size(); ++x) {
    const auto s = weight_sums(basis, basis, x);
    EXPECT_NEAR(s.excluding, 0.0, 1e-12);
    EXPECT_NEAR(s.including, 1.0, 1e-12);
  }
  // Against the computational basis, every phi vector splits evenly over two states.
  std::vector<qsim::StateVector> comp;
  for (std::size_t i = 0; i < 8; ++i) {
    comp.push_back(qsim::StateVector::basis(3, i));
  }
  for (std::size_t x = 0; x < 8; ++x) {
    const auto s = weight_sums(basis, comp, x);
    EXPECT_NEAR(s.including, 1.0, 1e-12);
    EXPECT_LE(s.excluding, 1.0 + 1e-12);
  }
}

TEST(WeightLemma, HoldsForSum2AndGeq) {
  for (int k : {2, 3, 4}) {
    const Sum2Protocol p(k);
    for (int party : {0, k - 1}) {
      const auto r = check_weight_lemma(p, party);
      EXPECT_TRUE(r.applicable);
      EXPECT_TRUE(r.pass) << k;
      EXPECT_LE(r.max_excluding, 1.0 + 1e-9);
      EXPECT_LE(r.max_including, 1.0 + 1e-9);
      EXPECT_GT(r.cases, 0U);
      EXPECT_TRUE(r.worst_context.has_value());
    }
  }
  const auto g = check_weight_lemma(GeqProtocol(2, 2), 0);
  EXPECT_TRUE(g.pass);
  EXPECT_NEAR(g.max_including, 1.0, 1e-9);
  EXPECT_THROW(check_weight_lemma(Sum2Protocol(2), 2), std::out_of_range);
}

TEST(WeightLemma, DjReportedButNotGated) {
  const auto r = check_weight_lemma(DjProtocol(4), 0);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.note.empty());
}

TEST(Purity, BoundsOnUniformInputs) {
  std::vector<std::unique_ptr<Protocol>> protocols;
  protocols.push_back(std::make_unique<Sum2Protocol>(2));
  protocols.push_back(std::make_unique<Sum2Protocol>(3));
  protocols.push_back(std::make_unique<GeqProtocol>(2, 1));
  for (const auto& p : protocols) {
    const auto mu = TupleDistribution::uniform(sweep_inputs(*p, {}).inputs);
    const auto r = check_purity_bounds(*p, mu);
    EXPECT_TRUE(r.pass);
    EXPECT_GE(r.purity, r.lower - 1e-10);
    EXPECT_LE(r.purity, 1.0 + 1e-10);
    EXPECT_EQ(r.dimension, std::size_t{1} << p->message_width());
  }
}

TEST(Purity, PointMassOnPureMessage) {
  // One input of Sum2 k=2: the averaged message is still mixed over randomness.
  const auto r = check_purity_bounds(Sum2Protocol(2), TupleDistribution::point_mass(parse_inputs("01,10")));
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.purity, 1.0, 1e-10);
}

TEST(Claim31, CrossTermsMatchPairwiseSum) {
  const Sum2Protocol p(2);
  const auto inputs = sweep_inputs(p, {}).inputs;
  const auto mu = TupleDistribution::uniform(inputs);
  const auto r = check_claim31(p, mu);
  ASSERT_FALSE(r.skipped);
  EXPECT_TRUE(r.pass);

  std::vector<qsim::DensityMatrix> rho;
  std::vector<int> labels;
  for (const auto& x : inputs) {
    rho.push_back(averaged_message(p, x));
    labels.push_back(*p.reference(x));
  }
  double cross = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      if (i != j) {
        cross += mu.weights[i] * mu.weights[j] * qsim::trace_product(rho[i], rho[j]);
      }
    }
  }
  EXPECT_NEAR(r.cross_terms, cross, 1e-10);
  // Four equiprobable members per class.
  EXPECT_NEAR(r.beta, 0.75, 1e-12);
  EXPECT_NEAR(r.rhs, cross / 0.75, 1e-10);
  EXPECT_LE(r.lhs, r.rhs + 1e-9);
}

TEST(Claim31, SkippedWhenBetaIsZero) {
  const auto r = check_claim31(Sum2Protocol(2), TupleDistribution::point_mass(parse_inputs("01,10")));
  EXPECT_TRUE(r.skipped);
  EXPECT_TRUE(r.pass);
}

TEST(Claim31, RejectsOffPromiseMass) {
  EXPECT_THROW(check_claim31(DjProtocol(4), TupleDistribution::point_mass(parse_inputs("0000,0001"))),
               std::invalid_argument);
}

TEST(Cost, ReportedUnits) {
  EXPECT_EQ(communication_cost(Sum2Protocol(3)), (Cost{4, "qubits"}));
  EXPECT_EQ(communication_cost(DjProtocol(4)), (Cost{4, "bits"}));
}
