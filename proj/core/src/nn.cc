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

#include <algorithm>
#include <cmath>

#include "coevgan/errors.h"

namespace coevgan {
namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMatrixMap = Eigen::Map<const RowMatrix>;
using MutableRowMatrixMap = Eigen::Map<RowMatrix>;

double ClampProbability(double p) {
  return std::clamp(p, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
}

bool InsideClamp(double p) {
  return p > kProbabilityEpsilon && p < 1.0 - kProbabilityEpsilon;
}

void CheckFinite(const Batch& b, const std::string& what) {
  if (!b.allFinite()) throw NumericError("non-finite values in " + what);
}

std::span<const double> Column(const Batch& b) {
  return {b.data(), static_cast<std::size_t>(b.size())};
}

// Gradients of the discriminator's loss w.r.t. its outputs on real and fake.
void DiscriminatorOutputGrads(const Batch& d_real, const Batch& d_fake,
                              Batch* g_real, Batch* g_fake) {
  const double inv_real = 1.0 / static_cast<double>(d_real.rows());
  const double inv_fake = 1.0 / static_cast<double>(d_fake.rows());
  *g_real = Batch(d_real.rows(), 1);
  *g_fake = Batch(d_fake.rows(), 1);
  for (Eigen::Index i = 0; i < d_real.rows(); ++i) {
    const double p = d_real(i, 0);
    (*g_real)(i, 0) = InsideClamp(p) ? -inv_real / p : 0.0;
  }
  for (Eigen::Index i = 0; i < d_fake.rows(); ++i) {
    const double p = d_fake(i, 0);
    (*g_fake)(i, 0) = InsideClamp(p) ? inv_fake / (1.0 - p) : 0.0;
  }
}

}  // namespace

std::string RoleName(Role role) {
  return role == Role::kGenerator ? "generator" : "discriminator";
}

Role ParseRole(const std::string& name) {
  if (name == "generator") return Role::kGenerator;
  if (name == "discriminator") return Role::kDiscriminator;
  throw std::invalid_argument("unknown role '" + name + "'");
}

std::vector<int> NetworkShape::LayerDims() const {
  std::vector<int> dims;
  dims.reserve(hidden.size() + 2);
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(output_dim);
  return dims;
}

std::size_t NetworkShape::ParameterCount() const {
  const std::vector<int> dims = LayerDims();
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    n += static_cast<std::size_t>(dims[l + 1]) * (dims[l] + 1);
  }
  return n;
}

void NetworkShape::Validate() const {
  for (int d : LayerDims()) {
    if (d < 1) throw ShapeError("network layer widths must be >= 1");
  }
  if (!(output_scale > 0.0) || !std::isfinite(output_scale)) {
    throw ShapeError("network output scale must be positive");
  }
}

NetworkShape NetworkShape::DefaultGenerator() {
  return {8, {32, 32}, 2, OutputActivation::kTanh, 2.5};
}

NetworkShape NetworkShape::DefaultDiscriminator() {
  return {2, {32, 32}, 1, OutputActivation::kSigmoid};
}

OptimizerState OptimizerState::Adam(std::size_t parameter_count) {
  OptimizerState s;
  s.kind = OptimizerKind::kAdam;
  s.first_moment.assign(parameter_count, 0.0);
  s.second_moment.assign(parameter_count, 0.0);
  return s;
}

OptimizerState OptimizerState::Sgd() {
  OptimizerState s;
  s.kind = OptimizerKind::kSgd;
  return s;
}

void OptimizerState::Validate(std::size_t parameter_count) const {
  if (step_count < 0) throw ShapeError("optimizer step_count < 0");
  if (kind == OptimizerKind::kSgd) {
    if (!first_moment.empty() || !second_moment.empty()) {
      throw ShapeError("sgd optimizer state carries moment arrays");
    }
    return;
  }
  if (first_moment.size() != parameter_count ||
      second_moment.size() != parameter_count) {
    throw ShapeError("adam moment length does not match parameter count");
  }
  for (double v : second_moment) {
    if (!(v >= 0.0)) throw NumericError("adam second moment negative or NaN");
  }
}

void Individual::Validate(const NetworkShape& shape) const {
  if (params.size() != shape.ParameterCount()) {
    throw ShapeError(Context() + ": expected " +
                     std::to_string(shape.ParameterCount()) +
                     " parameters, got " + std::to_string(params.size()));
  }
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw NumericError(Context() + ": invalid learning rate");
  }
  if (fitness && !std::isfinite(*fitness)) {
    throw NumericError(Context() + ": non-finite fitness");
  }
  optimizer.Validate(params.size());
}

std::string Individual::Context() const {
  return RoleName(role) + " of cell " + source_cell.ToString() +
         " at iteration " + std::to_string(iteration);
}

ParameterVector InitializeParameters(const NetworkShape& shape,
                                     std::mt19937_64& rng, double bound) {
  shape.Validate();
  std::uniform_real_distribution<double> dist(-bound, bound);
  ParameterVector params(shape.ParameterCount());
  for (double& p : params) p = dist(rng);
  return params;
}

Individual MakeIndividual(Role role, const NetworkShape& shape,
                          OptimizerKind optimizer, double learning_rate,
                          const CellId& cell, std::mt19937_64& rng) {
  Individual ind;
  ind.role = role;
  ind.params = InitializeParameters(shape, rng);
  ind.learning_rate = learning_rate;
  ind.optimizer = optimizer == OptimizerKind::kAdam
                      ? OptimizerState::Adam(ind.params.size())
                      : OptimizerState::Sgd();
  ind.source_cell = cell;
  return ind;
}

namespace {

// Elementwise tanh built on the vectorized exponential. Small inputs use
// the odd Taylor series to avoid cancellation in 1 - exp(-2|x|).
Batch Tanh(const Batch& z) {
  using RowArray =
      Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto x = z.array();
  const RowArray e = (-2.0 * x.abs()).exp();
  const RowArray x2 = x.square();
  const RowArray series = x * (1.0 - x2 * (1.0 / 3.0 - x2 * (2.0 / 15.0)));
  const RowArray wide = x.sign() * (1.0 - e) / (1.0 + e);
  return (x.abs() < 1e-3).select(series, wide).matrix();
}

}  // namespace

Batch Forward(const NetworkShape& shape, std::span<const double> params,
              const Batch& input, ForwardCache* cache) {
  if (params.size() != shape.ParameterCount()) {
    throw ShapeError("parameter vector length " +
                     std::to_string(params.size()) + " != " +
                     std::to_string(shape.ParameterCount()));
  }
  if (input.cols() != shape.input_dim) {
    throw ShapeError("input dimension " + std::to_string(input.cols()) +
                     " != " + std::to_string(shape.input_dim));
  }
  const std::vector<int> dims = shape.LayerDims();
  if (cache != nullptr) {
    cache->activations.clear();
    cache->activations.reserve(dims.size());
    cache->activations.push_back(input);
  }
  Batch h = input;
  std::size_t offset = 0;
  const std::size_t layers = dims.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = dims[l];
    const int out = dims[l + 1];
    // Parameters are copied into Eigen-owned storage: Eigen's summation
    // order depends on data alignment, and std::vector storage varies from
    // run to run, which would break bit-reproducibility.
    const RowMatrix w = RowMatrixMap(params.data() + offset, out, in);
    offset += static_cast<std::size_t>(out) * in;
    const Eigen::RowVectorXd b =
        Eigen::Map<const Eigen::RowVectorXd>(params.data() + offset, out);
    offset += out;

    Batch z = h * w.transpose();
    z.rowwise() += b;
    if (l + 1 == layers && shape.output == OutputActivation::kSigmoid) {
      h = (1.0 / (1.0 + (-z.array()).exp())).matrix();
    } else {
      h = Tanh(z);
    }
    if (cache != nullptr) cache->activations.push_back(h);
  }
  // The cache keeps the unscaled activation; Backward applies the factor.
  if (shape.output_scale != 1.0) h *= shape.output_scale;
  return h;
}

void Backward(const NetworkShape& shape, std::span<const double> params,
              const ForwardCache& cache, const Batch& grad_output,
              std::span<double> grad_params, Batch* grad_input) {
  const std::vector<int> dims = shape.LayerDims();
  const std::size_t layers = dims.size() - 1;
  if (cache.activations.size() != dims.size()) {
    throw ShapeError("forward cache does not match network depth");
  }
  if (!grad_params.empty() && grad_params.size() != params.size()) {
    throw ShapeError("gradient buffer length mismatch");
  }

  // Offsets of each layer's weight block.
  std::vector<std::size_t> offsets(layers);
  std::size_t offset = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    offsets[l] = offset;
    offset += static_cast<std::size_t>(dims[l + 1]) * (dims[l] + 1);
  }

  const Batch& y = cache.activations.back();
  Batch delta;
  const double scale = shape.output_scale;
  if (shape.output == OutputActivation::kSigmoid) {
    delta = (scale * grad_output.array() * y.array() * (1.0 - y.array()))
                .matrix();
  } else {
    delta = (scale * grad_output.array() * (1.0 - y.array().square()))
                .matrix();
  }

  for (std::size_t l = layers; l-- > 0;) {
    const int in = dims[l];
    const int out = dims[l + 1];
    const Batch& h_prev = cache.activations[l];
    // Owned copies for the same reason as in Forward; only elementwise
    // additions touch the caller's buffer.
    const RowMatrix w = RowMatrixMap(params.data() + offsets[l], out, in);
    if (!grad_params.empty()) {
      const RowMatrix layer_gw = delta.transpose() * h_prev;
      const Eigen::RowVectorXd layer_gb = delta.colwise().sum();
      MutableRowMatrixMap(grad_params.data() + offsets[l], out, in) +=
          layer_gw;
      Eigen::Map<Eigen::RowVectorXd>(
          grad_params.data() + offsets[l] + static_cast<std::size_t>(out) * in,
          out) += layer_gb;
    }
    if (l == 0 && grad_input == nullptr) break;
    Batch grad_prev = delta * w;
    if (l == 0) {
      *grad_input = std::move(grad_prev);
      break;
    }
    delta = (grad_prev.array() * (1.0 - h_prev.array().square())).matrix();
  }
}

Batch GeneratorForward(std::span<const double> params,
                       const NetworkShape& shape, const Batch& latent) {
  return Forward(shape, params, latent);
}

double GanLoss(std::span<const double> d_on_real,
               std::span<const double> d_on_fake) {
  if (d_on_real.empty() || d_on_fake.empty()) {
    throw std::invalid_argument("GanLoss requires non-empty batches");
  }
  double real_term = 0.0;
  for (double p : d_on_real) real_term += std::log(ClampProbability(p));
  double fake_term = 0.0;
  for (double p : d_on_fake) fake_term += std::log(1.0 - ClampProbability(p));
  const double loss = -real_term / static_cast<double>(d_on_real.size()) -
                      fake_term / static_cast<double>(d_on_fake.size());
  if (!std::isfinite(loss)) throw NumericError("non-finite GAN loss");
  return loss;
}

Batch SampleLatents(int count, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Batch z(count, dim);
  for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = normal(rng);
  return z;
}

ParameterVector ComputeGradients(const Individual& net,
                                 const Individual& opponent,
                                 const NetworkShapes& shapes,
                                 const Batch& real, const Batch& latents) {
  if (net.role == opponent.role) {
    throw std::invalid_argument("opponent must have the opposite role");
  }
  if (latents.rows() == 0) throw std::invalid_argument("empty latent batch");
  ParameterVector grad(net.params.size(), 0.0);

  try {
    if (net.role == Role::kGenerator) {
      ForwardCache g_cache;
      ForwardCache d_cache;
      const Batch fake =
          Forward(shapes.generator, net.params, latents, &g_cache);
      CheckFinite(fake, "generator output");
      const Batch d_fake =
          Forward(shapes.discriminator, opponent.params, fake, &d_cache);
      CheckFinite(d_fake, "discriminator output");
      // d/dp mean(log(1 - p)) = -1 / (n (1 - p)).
      const double inv = 1.0 / static_cast<double>(d_fake.rows());
      Batch g_out(d_fake.rows(), 1);
      for (Eigen::Index i = 0; i < d_fake.rows(); ++i) {
        const double p = d_fake(i, 0);
        g_out(i, 0) = InsideClamp(p) ? -inv / (1.0 - p) : 0.0;
      }
      Batch g_fake;
      Backward(shapes.discriminator, opponent.params, d_cache, g_out, {},
               &g_fake);
      Backward(shapes.generator, net.params, g_cache, g_fake, grad, nullptr);
    } else {
      if (real.rows() == 0) throw std::invalid_argument("empty data batch");
      const Batch fake = Forward(shapes.generator, opponent.params, latents);
      CheckFinite(fake, "generator output");
      ForwardCache real_cache;
      ForwardCache fake_cache;
      const Batch d_real =
          Forward(shapes.discriminator, net.params, real, &real_cache);
      const Batch d_fake =
          Forward(shapes.discriminator, net.params, fake, &fake_cache);
      CheckFinite(d_real, "discriminator output");
      CheckFinite(d_fake, "discriminator output");
      Batch g_real;
      Batch g_fake;
      DiscriminatorOutputGrads(d_real, d_fake, &g_real, &g_fake);
      Backward(shapes.discriminator, net.params, real_cache, g_real, grad,
               nullptr);
      Backward(shapes.discriminator, net.params, fake_cache, g_fake, grad,
               nullptr);
    }
  } catch (const NumericError& e) {
    throw NumericError(net.Context() + ": " + e.what());
  }
  for (double g : grad) {
    if (!std::isfinite(g)) {
      throw NumericError(net.Context() + ": non-finite gradient");
    }
  }
  return grad;
}

double Objective(const Individual& net, const Individual& opponent,
                 const NetworkShapes& shapes, const Batch& real,
                 const Batch& latents) {
  const Individual& g = net.role == Role::kGenerator ? net : opponent;
  const Individual& d = net.role == Role::kGenerator ? opponent : net;
  const Batch fake = Forward(shapes.generator, g.params, latents);
  const Batch d_fake = Forward(shapes.discriminator, d.params, fake);
  if (net.role == Role::kGenerator) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < d_fake.rows(); ++i) {
      sum += std::log(1.0 - ClampProbability(d_fake(i, 0)));
    }
    return sum / static_cast<double>(d_fake.rows());
  }
  const Batch d_real = Forward(shapes.discriminator, d.params, real);
  return GanLoss(Column(d_real), Column(d_fake));
}

Individual ApplyUpdate(Individual individual,
                       const ParameterVector& gradient) {
  ParameterVector& p = individual.params;
  if (gradient.size() != p.size()) {
    throw ShapeError(individual.Context() + ": gradient length " +
                     std::to_string(gradient.size()) + " != " +
                     std::to_string(p.size()));
  }
  const double lr = individual.learning_rate;
  OptimizerState& opt = individual.optimizer;
  if (opt.kind == OptimizerKind::kSgd) {
    ++opt.step_count;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr * gradient[i];
  } else {
    if (opt.first_moment.size() != p.size() ||
        opt.second_moment.size() != p.size()) {
      throw ShapeError(individual.Context() + ": adam state size mismatch");
    }
    ++opt.step_count;
    const double t = static_cast<double>(opt.step_count);
    const double correction1 = 1.0 - std::pow(opt.beta1, t);
    const double correction2 = 1.0 - std::pow(opt.beta2, t);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double g = gradient[i];
      double& m = opt.first_moment[i];
      double& v = opt.second_moment[i];
      m = opt.beta1 * m + (1.0 - opt.beta1) * g;
      v = opt.beta2 * v + (1.0 - opt.beta2) * g * g;
      const double m_hat = m / correction1;
      const double v_hat = v / correction2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + opt.epsilon);
    }
  }
  for (double v : p) {
    if (!std::isfinite(v)) {
      throw NumericError(individual.Context() +
                         ": update produced non-finite parameters");
    }
  }
  return individual;
}

}  // namespace coevgan
