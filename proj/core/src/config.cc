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

#include "coevgan/config.h"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "coevgan/errors.h"

namespace coevgan {
namespace {

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "experiment.iterations",
      "experiment.seed",
      "experiment.batch_size",
      "experiment.batches_per_iteration",
      "experiment.initial_learning_rate",
      "grid.rows",
      "grid.cols",
      "grid.neighborhood_size",
      "coev.tournament_size",
      "coev.mutation_probability",
      "coev.lr_mutation_scale",
      "coev.mixture_mutation_probability",
      "coev.replacement_size",
      "coev.skip_discriminator_steps",
      "mixture.mutation_scale",
      "mixture.metric",
      "mixture.sample_size",
      "mixture.coverage_min_fraction",
      "network.latent_dim",
      "network.generator_hidden",
      "network.generator_output_scale",
      "network.discriminator_hidden",
      "network.optimizer",
      "dataset.kind",
      "dataset.modes",
      "dataset.radius",
      "dataset.std",
      "dataset.side",
      "dataset.spacing",
      "dataset.center",
      "distribution.poll_interval_ms",
      "distribution.fetch_timeout_ms",
      "distribution.failure_policy",
      "distribution.max_missed_polls",
  };
  return keys;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string StripComment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void Fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

std::int64_t ToInt(const std::string& key, const std::string& raw) {
  std::int64_t v = 0;
  const char* end = raw.data() + raw.size();
  auto [ptr, ec] = std::from_chars(raw.data(), end, v);
  if (ec != std::errc() || ptr != end) Fail(key, "expected an integer");
  return v;
}

double ToDouble(const std::string& key, const std::string& raw) {
  if (raw.empty()) Fail(key, "expected a number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    Fail(key, "expected a number");
  }
  if (used != raw.size()) Fail(key, "expected a number");
  return v;
}

std::string ToString(const std::string& key, const std::string& raw) {
  if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') {
    Fail(key, "expected a double-quoted string");
  }
  return raw.substr(1, raw.size() - 2);
}

std::vector<std::string> ToList(const std::string& key,
                                const std::string& raw) {
  if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') {
    Fail(key, "expected an array");
  }
  std::vector<std::string> items;
  const std::string body = Trim(std::string_view(raw).substr(1, raw.size() - 2));
  if (body.empty()) return items;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(Trim(item));
  return items;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string FormatIntList(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

class KeyReader {
 public:
  explicit KeyReader(std::map<std::string, std::string> values)
      : values_(std::move(values)) {}

  template <typename Fn>
  void Read(const std::string& key, Fn&& apply) {
    auto it = values_.find(key);
    if (it != values_.end()) apply(key, it->second);
  }

  void Int(const std::string& key, int* out) {
    Read(key, [&](const std::string& k, const std::string& raw) {
      const std::int64_t v = ToInt(k, raw);
      if (v < INT32_MIN || v > INT32_MAX) Fail(k, "integer out of range");
      *out = static_cast<int>(v);
    });
  }
  void Double(const std::string& key, double* out) {
    Read(key, [&](const std::string& k, const std::string& raw) {
      *out = ToDouble(k, raw);
    });
  }

 private:
  std::map<std::string, std::string> values_;
};

void RequireAtLeast(const std::string& key, double v, double lo) {
  if (!(v >= lo)) Fail(key, "must be >= " + FormatDouble(lo));
}

void RequirePositive(const std::string& key, double v) {
  if (!(v > 0.0)) Fail(key, "must be > 0");
}

void RequireProbability(const std::string& key, double v) {
  if (!(v >= 0.0 && v <= 1.0)) Fail(key, "must be in [0, 1]");
}

}  // namespace

SyntheticDistribution DatasetConfig::Build(std::uint64_t seed) const {
  switch (kind) {
    case DistributionKind::kGaussianRing:
      return SyntheticDistribution::GaussianRing(modes, radius, std, seed);
    case DistributionKind::kGaussianGrid:
      return SyntheticDistribution::GaussianGrid(side, spacing, std, seed);
    case DistributionKind::kSingleGaussian:
      return SyntheticDistribution::SingleGaussian({center_x, center_y}, std,
                                                   seed);
  }
  throw ConfigError("dataset.kind: unsupported");
}

std::string FailurePolicyName(FailurePolicy policy) {
  return policy == FailurePolicy::kIgnore ? "ignore" : "abort";
}

void ExperimentConfig::Validate() const {
  RequireAtLeast("experiment.iterations", iterations, 0);
  RequireAtLeast("experiment.batch_size", batch_size, 1);
  RequireAtLeast("experiment.batches_per_iteration", batches_per_iteration, 1);
  RequireAtLeast("experiment.initial_learning_rate", initial_learning_rate,
                 0.0);
  RequireAtLeast("grid.rows", grid.rows, 1);
  RequireAtLeast("grid.cols", grid.cols, 1);
  if (neighborhood_size != 1 && neighborhood_size != 5) {
    Fail("grid.neighborhood_size", "only 1 and 5 are supported");
  }
  RequireAtLeast("coev.tournament_size", coev.tournament_size, 1);
  RequireProbability("coev.mutation_probability", coev.mutation_probability);
  RequireAtLeast("coev.lr_mutation_scale", coev.lr_mutation_scale, 0.0);
  RequireProbability("coev.mixture_mutation_probability",
                     coev.mixture_mutation_probability);
  RequireAtLeast("coev.replacement_size", coev.replacement_size, 1);
  RequireAtLeast("coev.skip_discriminator_steps",
                 coev.skip_discriminator_steps, 0);
  RequireAtLeast("mixture.mutation_scale", coev.mixture_mutation_scale, 0.0);
  RequireAtLeast("mixture.sample_size", mixture_sample_size, 100);
  if (!(coverage_min_fraction > 0.0 && coverage_min_fraction < 1.0)) {
    Fail("mixture.coverage_min_fraction", "must be in (0, 1)");
  }
  RequireAtLeast("network.latent_dim", shapes.generator.input_dim, 1);
  if (!(shapes.generator.output_scale > 0.0)) {
    Fail("network.generator_output_scale", "must be > 0");
  }
  for (int h : shapes.generator.hidden) {
    RequireAtLeast("network.generator_hidden", h, 1);
  }
  for (int h : shapes.discriminator.hidden) {
    RequireAtLeast("network.discriminator_hidden", h, 1);
  }
  switch (dataset.kind) {
    case DistributionKind::kGaussianRing:
      RequireAtLeast("dataset.modes", dataset.modes, 2);
      RequirePositive("dataset.radius", dataset.radius);
      break;
    case DistributionKind::kGaussianGrid:
      RequireAtLeast("dataset.side", dataset.side, 1);
      RequirePositive("dataset.spacing", dataset.spacing);
      break;
    case DistributionKind::kSingleGaussian:
      break;
  }
  RequireAtLeast("dataset.std", dataset.std, 0.0);
  RequireAtLeast("distribution.poll_interval_ms", poll_interval_ms, 1);
  RequireAtLeast("distribution.fetch_timeout_ms", fetch_timeout_ms, 1);
  RequireAtLeast("distribution.max_missed_polls", max_missed_polls, 1);
}

ExperimentConfig ParseConfig(std::string_view text) {
  std::map<std::string, std::string> values;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = Trim(StripComment(line));
    if (s.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where + ": malformed section");
      section = Trim(std::string_view(s).substr(1, s.size() - 2));
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string name = Trim(std::string_view(s).substr(0, eq));
    const std::string key = section.empty() ? name : section + "." + name;
    if (!KnownKeys().count(key)) throw ConfigError(key + ": unknown key");
    if (values.count(key)) throw ConfigError(key + ": duplicate key");
    values[key] = Trim(std::string_view(s).substr(eq + 1));
  }

  ExperimentConfig c;
  KeyReader r(std::move(values));
  r.Int("experiment.iterations", &c.iterations);
  r.Read("experiment.seed", [&](const std::string& k, const std::string& v) {
    const std::int64_t seed = ToInt(k, v);
    if (seed < 0) Fail(k, "must be >= 0");
    c.seed = static_cast<std::uint64_t>(seed);
  });
  r.Int("experiment.batch_size", &c.batch_size);
  r.Int("experiment.batches_per_iteration", &c.batches_per_iteration);
  r.Double("experiment.initial_learning_rate", &c.initial_learning_rate);
  r.Int("grid.rows", &c.grid.rows);
  r.Int("grid.cols", &c.grid.cols);
  r.Int("grid.neighborhood_size", &c.neighborhood_size);
  r.Int("coev.tournament_size", &c.coev.tournament_size);
  r.Double("coev.mutation_probability", &c.coev.mutation_probability);
  r.Double("coev.lr_mutation_scale", &c.coev.lr_mutation_scale);
  r.Double("coev.mixture_mutation_probability",
           &c.coev.mixture_mutation_probability);
  r.Int("coev.replacement_size", &c.coev.replacement_size);
  r.Int("coev.skip_discriminator_steps", &c.coev.skip_discriminator_steps);
  r.Double("mixture.mutation_scale", &c.coev.mixture_mutation_scale);
  r.Read("mixture.metric", [&](const std::string& k, const std::string& v) {
    try {
      c.metric = ParseMixtureMetric(ToString(k, v));
    } catch (const std::invalid_argument& e) {
      Fail(k, e.what());
    }
  });
  r.Int("mixture.sample_size", &c.mixture_sample_size);
  r.Double("mixture.coverage_min_fraction", &c.coverage_min_fraction);
  r.Int("network.latent_dim", &c.shapes.generator.input_dim);
  const auto hidden = [](std::vector<int>* out) {
    return [out](const std::string& k, const std::string& v) {
      out->clear();
      for (const std::string& item : ToList(k, v)) {
        const std::int64_t n = ToInt(k, item);
        if (n < 1 || n > INT32_MAX) Fail(k, "layer widths must be >= 1");
        out->push_back(static_cast<int>(n));
      }
    };
  };
  r.Read("network.generator_hidden", hidden(&c.shapes.generator.hidden));
  r.Double("network.generator_output_scale", &c.shapes.generator.output_scale);
  r.Read("network.discriminator_hidden",
         hidden(&c.shapes.discriminator.hidden));
  r.Read("network.optimizer", [&](const std::string& k, const std::string& v) {
    const std::string name = ToString(k, v);
    if (name == "adam") {
      c.optimizer = OptimizerKind::kAdam;
    } else if (name == "sgd") {
      c.optimizer = OptimizerKind::kSgd;
    } else {
      Fail(k, "expected \"adam\" or \"sgd\"");
    }
  });
  r.Read("dataset.kind", [&](const std::string& k, const std::string& v) {
    try {
      c.dataset.kind = ParseDistributionKind(ToString(k, v));
    } catch (const std::invalid_argument& e) {
      Fail(k, e.what());
    }
  });
  r.Int("dataset.modes", &c.dataset.modes);
  r.Double("dataset.radius", &c.dataset.radius);
  r.Double("dataset.std", &c.dataset.std);
  r.Int("dataset.side", &c.dataset.side);
  r.Double("dataset.spacing", &c.dataset.spacing);
  r.Read("dataset.center", [&](const std::string& k, const std::string& v) {
    const std::vector<std::string> items = ToList(k, v);
    if (items.size() != 2) Fail(k, "expected [x, y]");
    c.dataset.center_x = ToDouble(k, items[0]);
    c.dataset.center_y = ToDouble(k, items[1]);
  });
  r.Int("distribution.poll_interval_ms", &c.poll_interval_ms);
  r.Int("distribution.fetch_timeout_ms", &c.fetch_timeout_ms);
  r.Read("distribution.failure_policy",
         [&](const std::string& k, const std::string& v) {
           const std::string name = ToString(k, v);
           if (name == "ignore") {
             c.failure_policy = FailurePolicy::kIgnore;
           } else if (name == "abort") {
             c.failure_policy = FailurePolicy::kAbort;
           } else {
             Fail(k, "expected \"ignore\" or \"abort\"");
           }
         });
  r.Int("distribution.max_missed_polls", &c.max_missed_polls);
  c.Validate();
  return c;
}

std::string SerializeConfig(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[experiment]\n"
    << "iterations = " << c.iterations << "\n"
    << "seed = " << c.seed << "\n"
    << "batch_size = " << c.batch_size << "\n"
    << "batches_per_iteration = " << c.batches_per_iteration << "\n"
    << "initial_learning_rate = " << FormatDouble(c.initial_learning_rate)
    << "\n\n[grid]\n"
    << "rows = " << c.grid.rows << "\n"
    << "cols = " << c.grid.cols << "\n"
    << "neighborhood_size = " << c.neighborhood_size << "\n\n[coev]\n"
    << "tournament_size = " << c.coev.tournament_size << "\n"
    << "mutation_probability = " << FormatDouble(c.coev.mutation_probability)
    << "\n"
    << "lr_mutation_scale = " << FormatDouble(c.coev.lr_mutation_scale) << "\n"
    << "mixture_mutation_probability = "
    << FormatDouble(c.coev.mixture_mutation_probability) << "\n"
    << "replacement_size = " << c.coev.replacement_size << "\n"
    << "skip_discriminator_steps = " << c.coev.skip_discriminator_steps
    << "\n\n[mixture]\n"
    << "mutation_scale = " << FormatDouble(c.coev.mixture_mutation_scale)
    << "\n"
    << "metric = \"" << MixtureMetricName(c.metric) << "\"\n"
    << "sample_size = " << c.mixture_sample_size << "\n"
    << "coverage_min_fraction = " << FormatDouble(c.coverage_min_fraction)
    << "\n\n[network]\n"
    << "latent_dim = " << c.shapes.generator.input_dim << "\n"
    << "generator_hidden = " << FormatIntList(c.shapes.generator.hidden)
    << "\n"
    << "generator_output_scale = "
    << FormatDouble(c.shapes.generator.output_scale) << "\n"
    << "discriminator_hidden = "
    << FormatIntList(c.shapes.discriminator.hidden) << "\n"
    << "optimizer = \""
    << (c.optimizer == OptimizerKind::kAdam ? "adam" : "sgd")
    << "\"\n\n[dataset]\n"
    << "kind = \"" << DistributionKindName(c.dataset.kind) << "\"\n"
    << "modes = " << c.dataset.modes << "\n"
    << "radius = " << FormatDouble(c.dataset.radius) << "\n"
    << "std = " << FormatDouble(c.dataset.std) << "\n"
    << "side = " << c.dataset.side << "\n"
    << "spacing = " << FormatDouble(c.dataset.spacing) << "\n"
    << "center = [" << FormatDouble(c.dataset.center_x) << ", "
    << FormatDouble(c.dataset.center_y) << "]\n\n[distribution]\n"
    << "poll_interval_ms = " << c.poll_interval_ms << "\n"
    << "fetch_timeout_ms = " << c.fetch_timeout_ms << "\n"
    << "failure_policy = \"" << FailurePolicyName(c.failure_policy) << "\"\n"
    << "max_missed_polls = " << c.max_missed_polls << "\n";
  return o.str();
}

ExperimentConfig LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

}  // namespace coevgan
