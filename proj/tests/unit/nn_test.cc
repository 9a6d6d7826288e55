// Copyright 2026 The coevgan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coevgan/nn.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "coevgan/errors.h"

namespace coevgan {
namespace {

NetworkShape Identity1D() { return {1, {}, 1, OutputActivation::kTanh}; }

TEST(NetworkShapeTest, ParameterCountFollowsLayerWidths) {
  NetworkShape s{8, {32, 32}, 2, OutputActivation::kTanh};
  EXPECT_EQ(s.ParameterCount(), 32u * 9 + 32u * 33 + 2u * 33);
  EXPECT_EQ(Identity1D().ParameterCount(), 2u);
}

TEST(NetworkShapeTest, RejectsEmptyLayers) {
  NetworkShape s{2, {0}, 1, OutputActivation::kSigmoid};
  EXPECT_THROW(s.Validate(), ShapeError);
  NetworkShape t = Identity1D();
  t.output_scale = 0.0;
  EXPECT_THROW(t.Validate(), ShapeError);
}

TEST(ForwardTest, ZeroNetworkEmitsZeros) {
  const NetworkShape s = NetworkShape::DefaultGenerator();
  const ParameterVector p(s.ParameterCount(), 0.0);
  std::mt19937_64 rng(3);
  const Batch z = SampleLatents(17, s.input_dim, rng);
  const Batch out = GeneratorForward(p, s, z);
  ASSERT_EQ(out.rows(), 17);
  ASSERT_EQ(out.cols(), 2);
  EXPECT_EQ(out.cwiseAbs().maxCoeff(), 0.0);
}

TEST(ForwardTest, SingleUnitTanh) {
  const ParameterVector p = {1.0, 0.0};
  Batch x(1, 1);
  x << 0.5;
  EXPECT_NEAR(GeneratorForward(p, Identity1D(), x)(0, 0), 0.46211716, 1e-8);
}

TEST(ForwardTest, OutputScaleMultipliesTanh) {
  NetworkShape s = Identity1D();
  s.output_scale = 2.5;
  Batch x(1, 1);
  x << 0.5;
  EXPECT_NEAR(GeneratorForward(ParameterVector{1.0, 0.0}, s, x)(0, 0), 2.5 * std::tanh(0.5),
              1e-15);
}

TEST(ForwardTest, PreservesBatchOrder) {
  const NetworkShape s = NetworkShape::DefaultGenerator();
  std::mt19937_64 rng(5);
  const ParameterVector p = InitializeParameters(s, rng);
  const Batch z = SampleLatents(9, s.input_dim, rng);
  const Batch all = GeneratorForward(p, s, z);
  for (int i = 0; i < 9; ++i) {
    const Batch row = GeneratorForward(p, s, z.row(i));
    EXPECT_NEAR(row(0, 0), all(i, 0), 1e-12);
    EXPECT_NEAR(row(0, 1), all(i, 1), 1e-12);
  }
}

TEST(ForwardTest, DimensionMismatchIsShapeError) {
  const NetworkShape s = NetworkShape::DefaultGenerator();
  const ParameterVector p(s.ParameterCount(), 0.0);
  EXPECT_THROW(GeneratorForward(p, s, Batch::Zero(3, 4)), ShapeError);
  EXPECT_THROW(GeneratorForward(ParameterVector(5), s, Batch::Zero(3, 8)),
               ShapeError);
}

TEST(GanLossTest, HalfEverywhereIsTwoLnTwo) {
  const std::vector<double> half(10, 0.5);
  EXPECT_NEAR(GanLoss(half, half), 2.0 * std::log(2.0), 1e-15);
}

TEST(GanLossTest, PerfectDiscriminatorApproachesZero) {
  const std::vector<double> real(4, 1.0 - 1e-12);
  const std::vector<double> fake(4, 1e-12);
  const double l = GanLoss(real, fake);
  EXPECT_GT(l, 0.0);
  EXPECT_LT(l, 1e-6);
}

TEST(GanLossTest, ClampBoundsTheLoss) {
  const std::vector<double> real(3, 0.0);
  const std::vector<double> fake(3, 1.0);
  const double l = GanLoss(real, fake);
  EXPECT_TRUE(std::isfinite(l));
  EXPECT_LE(l, 2.0 * std::log(1e7) + 1e-9);
}

TEST(GanLossTest, EmptyBatchThrows) {
  EXPECT_THROW(GanLoss({}, std::vector<double>{0.5}), std::invalid_argument);
}

// Central finite differences on the objective each role minimizes.
double MaxRelativeError(const Individual& net, const Individual& opp,
                        const NetworkShapes& shapes, const Batch& real,
                        const Batch& z) {
  const ParameterVector g = ComputeGradients(net, opp, shapes, real, z);
  double worst = 0.0;
  for (std::size_t i = 0; i < net.params.size(); ++i) {
    Individual plus = net;
    Individual minus = net;
    const double h = 1e-5;
    plus.params[i] += h;
    minus.params[i] -= h;
    const double fd = (Objective(plus, opp, shapes, real, z) -
                       Objective(minus, opp, shapes, real, z)) /
                      (2 * h);
    const double denom = std::max({std::abs(fd), std::abs(g[i]), 1e-6});
    worst = std::max(worst, std::abs(fd - g[i]) / denom);
  }
  return worst;
}

TEST(ComputeGradientsTest, MatchesFiniteDifferencesForBothRoles) {
  NetworkShapes shapes;
  shapes.generator = {3, {5}, 2, OutputActivation::kTanh, 2.0};
  shapes.discriminator = {2, {6, 4}, 1, OutputActivation::kSigmoid};
  std::mt19937_64 rng(11);
  Individual g = MakeIndividual(Role::kGenerator, shapes.generator,
                                OptimizerKind::kAdam, 1e-3, {}, rng);
  Individual d = MakeIndividual(Role::kDiscriminator, shapes.discriminator,
                                OptimizerKind::kAdam, 1e-3, {}, rng);
  // Larger weights make the check less trivial than the 0.05 init.
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& p : g.params) p = u(rng);
  for (double& p : d.params) p = u(rng);
  const Batch real = SampleLatents(7, 2, rng);
  const Batch z = SampleLatents(7, 3, rng);
  EXPECT_LT(MaxRelativeError(g, d, shapes, real, z), 1e-4);
  EXPECT_LT(MaxRelativeError(d, g, shapes, real, z), 1e-4);
}

TEST(ComputeGradientsTest, SameRoleOpponentIsRejected) {
  NetworkShapes shapes;
  std::mt19937_64 rng(1);
  Individual g = MakeIndividual(Role::kGenerator, shapes.generator,
                                OptimizerKind::kSgd, 1e-3, {}, rng);
  EXPECT_THROW(ComputeGradients(g, g, shapes, Batch::Zero(2, 2),
                                Batch::Zero(2, 8)),
               std::invalid_argument);
}

TEST(ComputeGradientsTest, NanInputRaisesNumericErrorWithContext) {
  NetworkShapes shapes;
  std::mt19937_64 rng(1);
  Individual g = MakeIndividual(Role::kGenerator, shapes.generator,
                                OptimizerKind::kSgd, 1e-3, {2, 1}, rng);
  Individual d = MakeIndividual(Role::kDiscriminator, shapes.discriminator,
                                OptimizerKind::kSgd, 1e-3, {2, 1}, rng);
  g.params[0] = std::nan("");
  g.iteration = 7;
  try {
    ComputeGradients(g, d, shapes, Batch::Zero(4, 2), Batch::Ones(4, 8));
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("(2,1)"), std::string::npos)
        << e.what();
    EXPECT_NE(std::string(e.what()).find("iteration 7"), std::string::npos);
  }
}

TEST(ApplyUpdateTest, FirstAdamStepMovesByLearningRate) {
  Individual ind;
  ind.params = {1.0, -2.0, 0.5};
  ind.learning_rate = 0.01;
  ind.optimizer = OptimizerState::Adam(3);
  const Individual out = ApplyUpdate(ind, {0.3, -4.0, 0.0});
  // Bias correction makes the first step lr * g / (|g| + eps).
  EXPECT_NEAR(out.params[0], 1.0 - 0.01 * 0.3 / (0.3 + 1e-8), 1e-14);
  EXPECT_NEAR(out.params[1], -2.0 + 0.01 * 4.0 / (4.0 + 1e-8), 1e-14);
  EXPECT_EQ(out.params[2], 0.5);
  EXPECT_EQ(out.optimizer.step_count, 1);
  EXPECT_NEAR(out.optimizer.first_moment[0], 0.1 * 0.3, 1e-17);
  EXPECT_NEAR(out.optimizer.second_moment[1], 0.001 * 16.0, 1e-15);
}

TEST(ApplyUpdateTest, SgdStep) {
  Individual ind;
  ind.params = {1.0, 2.0};
  ind.learning_rate = 0.5;
  ind.optimizer = OptimizerState::Sgd();
  const Individual out = ApplyUpdate(ind, {2.0, -1.0});
  EXPECT_EQ(out.params, (ParameterVector{0.0, 2.5}));
  EXPECT_TRUE(out.optimizer.first_moment.empty());
}

TEST(ApplyUpdateTest, ZeroLearningRateLeavesParametersBitIdentical) {
  std::mt19937_64 rng(2);
  Individual ind = MakeIndividual(Role::kGenerator,
                                  NetworkShape::DefaultGenerator(),
                                  OptimizerKind::kAdam, 0.0, {}, rng);
  ParameterVector grad(ind.params.size());
  for (double& g : grad) g = std::normal_distribution<double>()(rng);
  const Individual out = ApplyUpdate(ind, grad);
  EXPECT_EQ(out.params, ind.params);
}

TEST(ApplyUpdateTest, GradientLengthMismatchThrows) {
  Individual ind;
  ind.params = {1.0};
  ind.optimizer = OptimizerState::Adam(1);
  EXPECT_THROW(ApplyUpdate(ind, {1.0, 2.0}), ShapeError);
}

TEST(OptimizerStateTest, ValidateChecksMomentLayout) {
  OptimizerState sgd = OptimizerState::Sgd();
  EXPECT_NO_THROW(sgd.Validate(10));
  sgd.first_moment = {0.0};
  EXPECT_THROW(sgd.Validate(10), ShapeError);
  OptimizerState adam = OptimizerState::Adam(3);
  EXPECT_THROW(adam.Validate(4), ShapeError);
  adam.second_moment[1] = -1.0;
  EXPECT_THROW(adam.Validate(3), NumericError);
}

TEST(InitializeParametersTest, UniformWithinBound) {
  std::mt19937_64 rng(9);
  const ParameterVector p =
      InitializeParameters(NetworkShape::DefaultDiscriminator(), rng);
  for (double v : p) {
    EXPECT_GE(v, -0.05);
    EXPECT_LT(v, 0.05);
  }
}

}  // namespace
}  // namespace coevgan
