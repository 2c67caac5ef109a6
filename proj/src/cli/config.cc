// Copyright 2026 The FedGAN Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedgan/cli/config.h"

#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/util/io.h"
#include "nlohmann/json.hpp"

namespace fedgan::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::kStandalone, "standalone"},
    {Scenario::kFedganCentral, "fedgan-central"},
    {Scenario::kFedganBlockchain, "fedgan-blockchain"},
    {Scenario::kVerifyTheory, "verify-theory"},
    {Scenario::kBenchConsensus, "bench-consensus"},
    {Scenario::kSweepMixing, "sweep-mixing"},
    {Scenario::kSweepEpsilon, "sweep-epsilon"},
};

std::string_view LossFormName(nn::GeneratorLossForm form) {
  return form == nn::GeneratorLossForm::kSaturating ? "saturating"
                                                    : "non-saturating";
}

bool IsGanScenario(Scenario s) {
  return s == Scenario::kStandalone || s == Scenario::kFedganCentral ||
         s == Scenario::kFedganBlockchain;
}

std::string DefaultDatasetPreset(Scenario s) {
  switch (s) {
    case Scenario::kSweepMixing:
      return "toy-imbalanced";
    case Scenario::kSweepEpsilon:
      return "toy-blobs";
    default:
      return "gaussian-mixture";
  }
}

// Reads the members of one JSON object, recording a diagnostic for every
// missing-type or unknown key. Fields that fail to read are left untouched.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path,
               std::vector<Diagnostic>* diagnostics)
      : object_(object), path_(std::move(path)), diagnostics_(diagnostics) {}

  ~ObjectReader() {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.contains(key)) Report(key, "unknown field");
    }
  }

  // Returns the member, or nullptr when absent.
  const json* Find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  // Returns the member when it is an object; reports any other type.
  const json* Object(std::string_view key) {
    const json* v = Find(key);
    if (v == nullptr || v->is_null()) return nullptr;
    if (!v->is_object()) {
      Report(key, "expected an object");
      return nullptr;
    }
    return v;
  }

  template <typename Int>
  void Integer(std::string_view key, Int* out) {
    const json* v = Find(key);
    if (v == nullptr) return;
    if (!v->is_number_integer()) {
      Report(key, "expected an integer");
      return;
    }
    if (v->is_number_unsigned()) {
      const auto u = v->get<uint64_t>();
      if (u > static_cast<uint64_t>(std::numeric_limits<Int>::max())) {
        Report(key, "integer out of range");
        return;
      }
      *out = static_cast<Int>(u);
      return;
    }
    const auto i = v->get<int64_t>();
    if constexpr (std::is_unsigned_v<Int>) {
      if (i < 0) {
        Report(key, "must be >= 0");
        return;
      }
    } else if (i < std::numeric_limits<Int>::min() ||
               i > std::numeric_limits<Int>::max()) {
      Report(key, "integer out of range");
      return;
    }
    *out = static_cast<Int>(i);
  }

  void Number(std::string_view key, double* out) {
    const json* v = Find(key);
    if (v == nullptr) return;
    if (!v->is_number()) {
      Report(key, "expected a number");
      return;
    }
    *out = v->get<double>();
  }

  void OptionalNumber(std::string_view key, std::optional<double>* out) {
    const json* v = Find(key);
    if (v == nullptr) return;
    if (v->is_null()) {
      out->reset();
      return;
    }
    if (!v->is_number()) {
      Report(key, "expected a number or null");
      return;
    }
    *out = v->get<double>();
  }

  void Boolean(std::string_view key, bool* out) {
    const json* v = Find(key);
    if (v == nullptr) return;
    if (!v->is_boolean()) {
      Report(key, "expected true or false");
      return;
    }
    *out = v->get<bool>();
  }

  void String(std::string_view key, std::string* out) {
    const json* v = Find(key);
    if (v == nullptr) return;
    if (!v->is_string()) {
      Report(key, "expected a string");
      return;
    }
    *out = v->get<std::string>();
  }

  void NumberList(std::string_view key, std::vector<double>* out) {
    const json* v = Find(key);
    if (v == nullptr) return;
    if (!v->is_array()) {
      Report(key, "expected an array of numbers");
      return;
    }
    std::vector<double> values;
    for (size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) {
        Report(absl::StrCat(std::string(key), "[", i, "]"), "expected a number");
        return;
      }
      values.push_back((*v)[i].get<double>());
    }
    *out = std::move(values);
  }

  void Report(std::string_view key, std::string message) {
    diagnostics_->push_back({Child(key), std::move(message)});
  }

  std::string Child(std::string_view key) const {
    return path_.empty() ? std::string(key) : absl::StrCat(path_, ".", std::string(key));
  }

 private:
  const json& object_;
  std::string path_;
  std::vector<Diagnostic>* diagnostics_;
  std::set<std::string, std::less<>> seen_;
};

void ReadDataset(const json& j, std::vector<Diagnostic>* d, DatasetSection* s) {
  ObjectReader r(j, "dataset", d);
  r.String("preset", &s->preset);
  r.Integer("real_samples", &s->real_samples);
  r.Integer("reference_samples", &s->reference_samples);
  r.Integer("generated_samples", &s->generated_samples);
  r.Integer("histogram_bins", &s->histogram_bins);
  r.Number("scale", &s->scale);
  r.Integer("train_per_class", &s->train_per_class);
  r.Integer("test_per_class", &s->test_per_class);
}

void ReadFederation(const json& j, std::vector<Diagnostic>* d,
                    federation::FederationConfig* f) {
  ObjectReader r(j, "federation", d);
  r.Integer("num_clients", &f->num_clients);
  r.Integer("global_rounds", &f->global_rounds);
  r.Integer("local_epochs", &f->hp.local_epochs);
  r.Integer("minibatch_size", &f->hp.minibatch_size);
  r.Number("learning_rate", &f->hp.learning_rate);
  r.Integer("noise_dim", &f->hp.noise_dim);
  r.Number("dropout_rate", &f->hp.dropout_rate);
  std::string loss(LossFormName(f->hp.generator_loss));
  r.String("generator_loss", &loss);
  if (loss == "saturating") {
    f->hp.generator_loss = nn::GeneratorLossForm::kSaturating;
  } else if (loss == "non-saturating") {
    f->hp.generator_loss = nn::GeneratorLossForm::kNonSaturating;
  } else {
    r.Report("generator_loss",
             absl::StrCat("unknown loss form \"", loss,
                          "\"; expected saturating or non-saturating"));
  }
}

void ReadDp(const json& j, std::vector<Diagnostic>* d, privacy::DpConfig* dp) {
  ObjectReader r(j, "dp", d);
  r.Number("epsilon", &dp->epsilon);
  r.Number("delta", &dp->delta);
  r.Number("clip_norm", &dp->clip_norm);
  r.OptionalNumber("explicit_noise_std", &dp->explicit_noise_std);
}

void ReadConsensus(const json& j, std::vector<Diagnostic>* d,
                   ConsensusSettings* c) {
  ObjectReader r(j, "consensus", d);
  r.Number("latency_threshold_s", &c->latency_threshold_s);
  r.Number("broadcast_coeff", &c->broadcast_coeff);
  r.Number("block_kilobytes", &c->block_kilobytes);
  r.Number("result_kilobytes", &c->result_kilobytes);
  r.Number("cycles_per_kb", &c->cycles_per_kb);
  r.Integer("partition_count", &c->partition_count);
  r.Integer("committee_size", &c->committee_size);
  r.Number("approval_threshold", &c->approval_threshold);
  r.Integer("miners", &c->miners);
  r.NumberList("grid_kilobytes", &c->grid_kilobytes);
  r.Integer("transactions_per_block", &c->transactions_per_block);
}

void ReadClassifier(const json& j, std::vector<Diagnostic>* d,
                    eval::ClassifierConfig* c) {
  ObjectReader r(j, "classifier", d);
  r.Integer("epochs", &c->epochs);
  r.Number("learning_rate", &c->learning_rate);
  r.Integer("minibatch_size", &c->minibatch_size);
  r.Integer("hidden_units", &c->hidden_units);
  r.Integer("hidden_layers", &c->hidden_layers);
}

void ReadMixing(const json& j, std::vector<Diagnostic>* d, MixingSection* m) {
  ObjectReader r(j, "mixing", d);
  r.NumberList("ratios", &m->ratios);
  r.Boolean("per_class", &m->per_class);
  r.Integer("real_train_size", &m->real_train_size);
  r.Integer("seeds", &m->seeds);
}

void ReadEpsilon(const json& j, std::vector<Diagnostic>* d,
                 EpsilonSection* e) {
  ObjectReader r(j, "epsilon_sweep", d);
  r.NumberList("epsilons", &e->epsilons);
  r.Integer("synthetic_per_class", &e->synthetic_per_class);
  r.Integer("seeds", &e->seeds);
}

void ReadTheory(const json& j, std::vector<Diagnostic>* d, TheorySpec* t) {
  ObjectReader r(j, "theory", d);
  r.Integer("pairs", &t->pairs);
  r.Integer("max_support", &t->max_support);
  r.Integer("max_clients", &t->max_clients);
}

// Collects diagnostics under one section.
class Checker {
 public:
  Checker(std::string section, std::vector<Diagnostic>* out)
      : section_(std::move(section)), out_(out) {}

  void Require(bool ok, std::string_view field, std::string message) {
    if (!ok) {
      out_->push_back({field.empty() ? section_
                                     : absl::StrCat(section_, ".", std::string(field)),
                       std::move(message)});
    }
  }

 private:
  std::string section_;
  std::vector<Diagnostic>* out_;
};

bool Positive(double v) { return v > 0.0 && std::isfinite(v); }
bool NonNegative(double v) { return v >= 0.0 && std::isfinite(v); }

void CheckDataset(const ExperimentConfig& c, std::vector<Diagnostic>* out) {
  const DatasetSection& s = c.dataset;
  Checker k("dataset", out);
  const std::string& preset = s.preset;
  if (IsGanScenario(c.scenario)) {
    k.Require(preset == "gaussian-mixture", "preset",
              absl::StrCat("unknown preset \"", preset, "\" for scenario ",
                           std::string(ScenarioName(c.scenario)),
                           "; expected gaussian-mixture"));
    k.Require(s.real_samples >= c.federation.num_clients, "real_samples",
              "must be >= federation.num_clients");
    k.Require(s.reference_samples >= 1, "reference_samples", "must be >= 1");
    k.Require(s.generated_samples >= 1, "generated_samples", "must be >= 1");
    k.Require(s.histogram_bins >= 1, "histogram_bins", "must be >= 1");
  } else if (c.scenario == Scenario::kSweepMixing) {
    k.Require(preset == "toy-imbalanced" || preset == "darkcovid" ||
                  preset == "chestcovid",
              "preset",
              absl::StrCat("unknown preset \"", preset,
                           "\" for scenario sweep-mixing; expected "
                           "toy-imbalanced, darkcovid or chestcovid"));
    k.Require(Positive(s.scale), "scale", "must be > 0");
    k.Require(s.test_per_class >= 1, "test_per_class", "must be >= 1");
  } else if (c.scenario == Scenario::kSweepEpsilon) {
    k.Require(preset == "toy-blobs", "preset",
              absl::StrCat("unknown preset \"", preset,
                           "\" for scenario sweep-epsilon; expected "
                           "toy-blobs"));
    k.Require(s.train_per_class >= c.federation.num_clients, "train_per_class",
              "must be >= federation.num_clients");
    k.Require(s.test_per_class >= 1, "test_per_class", "must be >= 1");
  }
}

void CheckFederation(const ExperimentConfig& c, std::vector<Diagnostic>* out) {
  const federation::FederationConfig& f = c.federation;
  Checker k("federation", out);
  k.Require(f.num_clients >= 1, "num_clients", "must be >= 1");
  k.Require(f.global_rounds >= 1, "global_rounds", "must be >= 1");
  k.Require(f.hp.local_epochs >= 0, "local_epochs", "must be >= 0");
  k.Require(f.hp.minibatch_size >= 1, "minibatch_size", "must be >= 1");
  k.Require(Positive(f.hp.learning_rate), "learning_rate", "must be > 0");
  k.Require(f.hp.noise_dim >= 1, "noise_dim", "must be >= 1");
  k.Require(f.hp.dropout_rate >= 0.0 && f.hp.dropout_rate < 1.0,
            "dropout_rate", "must lie in [0, 1)");
  if (c.scenario == Scenario::kSweepMixing) {
    k.Require(f.num_clients == 1, "num_clients",
              "sweep-mixing trains each class generator on one client");
  }
}

void CheckArchitecture(const ExperimentConfig& c,
                       std::vector<Diagnostic>* out) {
  Checker k("architecture", out);
  if (c.architecture.preset == "full-scale") {
    k.Require(false, "preset",
              "full-scale is a documentation preset; runs use \"toy\"");
  } else {
    k.Require(c.architecture.preset == "toy", "preset",
              absl::StrCat("unknown preset \"", c.architecture.preset,
                           "\"; expected toy"));
  }
  k.Require(c.architecture.hidden_units >= 1, "hidden_units", "must be >= 1");
}

void CheckDp(const privacy::DpConfig& dp, std::vector<Diagnostic>* out) {
  Checker k("dp", out);
  k.Require(Positive(dp.epsilon), "epsilon", "must be > 0 (DpConfig invariant)");
  k.Require(dp.delta > 0.0 && dp.delta < 1.0, "delta",
            "must lie in (0, 1) (DpConfig invariant)");
  k.Require(Positive(dp.clip_norm), "clip_norm",
            "must be > 0 (DpConfig invariant)");
  if (dp.explicit_noise_std.has_value()) {
    k.Require(NonNegative(*dp.explicit_noise_std), "explicit_noise_std",
              "must be >= 0");
  }
}

void CheckConsensus(const ConsensusSettings& s, std::vector<Diagnostic>* out) {
  Checker k("consensus", out);
  k.Require(Positive(s.latency_threshold_s), "latency_threshold_s",
            "tau must be > 0 (ConsensusParams invariant)");
  k.Require(NonNegative(s.broadcast_coeff), "broadcast_coeff",
            "xi must be >= 0 (ConsensusParams invariant)");
  k.Require(Positive(s.block_kilobytes), "block_kilobytes", "must be > 0");
  k.Require(NonNegative(s.result_kilobytes), "result_kilobytes",
            "must be >= 0");
  k.Require(NonNegative(s.cycles_per_kb), "cycles_per_kb", "must be >= 0");
  k.Require(s.partition_count >= 1, "partition_count",
            "K must be >= 1 (ConsensusParams invariant)");
  k.Require(s.committee_size >= 2, "committee_size",
            "M must be >= 2 so that members can cross-check");
  k.Require(s.approval_threshold > 0.5 && s.approval_threshold <= 1.0,
            "approval_threshold",
            "must lie in (0.5, 1] (ConsensusParams invariant)");
  k.Require(s.miners >= s.committee_size, "miners",
            "roster must hold at least committee_size miners");
  k.Require(!s.grid_kilobytes.empty(), "grid_kilobytes", "must not be empty");
  for (size_t i = 0; i < s.grid_kilobytes.size(); ++i) {
    k.Require(Positive(s.grid_kilobytes[i]),
              absl::StrCat("grid_kilobytes[", i, "]"), "must be > 0");
  }
  k.Require(s.transactions_per_block >= 1, "transactions_per_block",
            "must be >= 1");
}

void CheckClassifier(const eval::ClassifierConfig& c,
                     std::vector<Diagnostic>* out) {
  Checker k("classifier", out);
  k.Require(c.epochs >= 0, "epochs", "must be >= 0");
  k.Require(Positive(c.learning_rate), "learning_rate", "must be > 0");
  k.Require(c.minibatch_size >= 1, "minibatch_size", "must be >= 1");
  k.Require(c.hidden_units >= 1, "hidden_units", "must be >= 1");
  k.Require(c.hidden_layers >= 0, "hidden_layers", "must be >= 0");
}

void CheckMixing(const MixingSection& m, std::vector<Diagnostic>* out) {
  Checker k("mixing", out);
  k.Require(!m.ratios.empty(), "ratios", "must not be empty");
  for (size_t i = 0; i < m.ratios.size(); ++i) {
    k.Require(NonNegative(m.ratios[i]), absl::StrCat("ratios[", i, "]"),
              "must be >= 0");
  }
  k.Require(m.real_train_size >= 0, "real_train_size", "must be >= 0");
  k.Require(m.seeds >= 1, "seeds", "must be >= 1");
}

void CheckEpsilon(const EpsilonSection& e, std::vector<Diagnostic>* out) {
  Checker k("epsilon_sweep", out);
  k.Require(!e.epsilons.empty(), "epsilons", "must not be empty");
  for (size_t i = 0; i < e.epsilons.size(); ++i) {
    k.Require(Positive(e.epsilons[i]), absl::StrCat("epsilons[", i, "]"),
              "must be > 0");
  }
  k.Require(e.synthetic_per_class >= 1, "synthetic_per_class", "must be >= 1");
  k.Require(e.seeds >= 1, "seeds", "must be >= 1");
}

void CheckTheory(const TheorySpec& t, std::vector<Diagnostic>* out) {
  Checker k("theory", out);
  k.Require(t.pairs >= 1, "pairs", "must be >= 1");
  k.Require(t.max_support >= 1, "max_support", "must be >= 1");
  k.Require(t.max_clients >= 1, "max_clients", "must be >= 1");
}

}  // namespace

std::string_view ScenarioName(Scenario scenario) {
  for (const auto& [s, name] : kScenarioNames) {
    if (s == scenario) return name;
  }
  return "unknown";
}

absl::StatusOr<Scenario> ParseScenario(std::string_view name) {
  for (const auto& [s, n] : kScenarioNames) {
    if (n == name) return s;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown scenario \"", std::string(name), "\""));
}

ExperimentConfig DefaultConfig(Scenario scenario) {
  ExperimentConfig c;
  c.scenario = scenario;
  c.dataset.preset = DefaultDatasetPreset(scenario);
  switch (scenario) {
    case Scenario::kSweepEpsilon: {
      const EpsilonSweepSpec spec = DefaultEpsilonSweepSpec();
      c.federation = spec.federation;
      c.architecture.hidden_units = spec.hidden_units;
      c.classifier = spec.classifier;
      c.dataset.train_per_class = spec.train_per_class;
      c.dataset.test_per_class = spec.test_per_class;
      c.epsilon_sweep.epsilons = spec.epsilons;
      c.epsilon_sweep.synthetic_per_class = spec.synthetic_per_class;
      break;
    }
    case Scenario::kSweepMixing: {
      const MixingSpec spec = DefaultMixingSpec();
      c.federation = spec.gan;
      c.architecture.hidden_units = spec.hidden_units;
      c.classifier = spec.classifier;
      c.dataset.test_per_class = spec.test_per_class;
      c.mixing.ratios = spec.ratios;
      break;
    }
    default: {
      const FedComparisonSpec spec = DefaultFedComparisonSpec();
      c.federation = spec.federation;
      c.architecture.hidden_units = spec.hidden_units;
      c.dataset.real_samples = spec.real_samples;
      c.dataset.reference_samples = spec.reference_samples;
      c.dataset.generated_samples = spec.generated_samples;
      c.dataset.histogram_bins = spec.histogram_bins;
      c.classifier = DefaultMixingSpec().classifier;
      break;
    }
  }
  c.federation.aggregator = scenario == Scenario::kFedganBlockchain
                                ? federation::AggregatorKind::kBlockchain
                                : federation::AggregatorKind::kCentral;
  return c;
}

std::string FormatDiagnostic(const Diagnostic& diagnostic) {
  return absl::StrCat(diagnostic.path, ": ", diagnostic.message);
}

absl::StatusOr<ParsedConfig> ParseConfig(
    std::string_view text, std::optional<Scenario> scenario_override) {
  const json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    return absl::InvalidArgumentError("config is not valid JSON");
  }
  if (!root.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  std::vector<Diagnostic> diagnostics;
  ExperimentConfig config;
  {
    ObjectReader r(root, "", &diagnostics);
    Scenario scenario = Scenario::kFedganCentral;
    std::string name;
    if (r.Find("scenario") == nullptr && !scenario_override.has_value()) {
      r.Report("scenario", "required field is missing");
    }
    r.String("scenario", &name);
    if (!name.empty()) {
      absl::StatusOr<Scenario> parsed = ParseScenario(name);
      if (parsed.ok()) {
        scenario = *parsed;
      } else if (!scenario_override.has_value()) {
        r.Report("scenario", std::string(parsed.status().message()));
      }
    }
    if (scenario_override.has_value()) scenario = *scenario_override;
    config = DefaultConfig(scenario);

    r.Integer("seed", &config.seed);
    r.String("output_dir", &config.output_dir);
    if (const json* j = r.Object("dataset")) {
      ReadDataset(*j, &diagnostics, &config.dataset);
    }
    if (const json* j = r.Object("architecture")) {
      ObjectReader a(*j, "architecture", &diagnostics);
      a.String("preset", &config.architecture.preset);
      a.Integer("hidden_units", &config.architecture.hidden_units);
    }
    if (const json* j = r.Object("federation")) {
      ReadFederation(*j, &diagnostics, &config.federation);
    }
    if (const json* j = r.Object("dp")) {
      config.dp.emplace();
      ReadDp(*j, &diagnostics, &*config.dp);
    }
    if (const json* j = r.Object("consensus")) {
      config.consensus.emplace();
      ReadConsensus(*j, &diagnostics, &*config.consensus);
    }
    if (const json* j = r.Object("classifier")) {
      ReadClassifier(*j, &diagnostics, &config.classifier);
    }
    if (const json* j = r.Object("mixing")) {
      ReadMixing(*j, &diagnostics, &config.mixing);
    }
    if (const json* j = r.Object("epsilon_sweep")) {
      ReadEpsilon(*j, &diagnostics, &config.epsilon_sweep);
    }
    if (const json* j = r.Object("theory")) {
      ReadTheory(*j, &diagnostics, &config.theory);
    }
  }
  std::vector<Diagnostic> invariants = ValidateConfig(config);
  diagnostics.insert(diagnostics.end(), invariants.begin(), invariants.end());
  return ParsedConfig{std::move(config), std::move(diagnostics)};
}

std::vector<Diagnostic> ValidateConfig(const ExperimentConfig& config) {
  std::vector<Diagnostic> out;
  CheckDataset(config, &out);
  CheckArchitecture(config, &out);
  CheckFederation(config, &out);
  CheckClassifier(config.classifier, &out);
  if (config.dp.has_value()) CheckDp(*config.dp, &out);
  const bool needs_consensus =
      config.scenario == Scenario::kBenchConsensus ||
      config.scenario == Scenario::kFedganBlockchain;
  if (config.consensus.has_value()) {
    CheckConsensus(*config.consensus, &out);
  } else if (needs_consensus) {
    out.push_back({"consensus",
                   absl::StrCat("section is required by scenario ",
                                std::string(ScenarioName(config.scenario)))});
  }
  CheckMixing(config.mixing, &out);
  CheckEpsilon(config.epsilon_sweep, &out);
  CheckTheory(config.theory, &out);
  return out;
}

absl::StatusOr<ParsedConfig> LoadConfig(
    const std::string& path, std::optional<Scenario> scenario_override) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  return ParseConfig(*text, scenario_override);
}

std::string ConfigToJson(const ExperimentConfig& c) {
  ordered_json j;
  j["scenario"] = ScenarioName(c.scenario);
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["dataset"] = {{"preset", c.dataset.preset},
                  {"real_samples", c.dataset.real_samples},
                  {"reference_samples", c.dataset.reference_samples},
                  {"generated_samples", c.dataset.generated_samples},
                  {"histogram_bins", c.dataset.histogram_bins},
                  {"scale", c.dataset.scale},
                  {"train_per_class", c.dataset.train_per_class},
                  {"test_per_class", c.dataset.test_per_class}};
  j["architecture"] = {{"preset", c.architecture.preset},
                       {"hidden_units", c.architecture.hidden_units}};
  const nn::TrainingHyperparams& hp = c.federation.hp;
  j["federation"] = {{"num_clients", c.federation.num_clients},
                     {"global_rounds", c.federation.global_rounds},
                     {"local_epochs", hp.local_epochs},
                     {"minibatch_size", hp.minibatch_size},
                     {"learning_rate", hp.learning_rate},
                     {"noise_dim", hp.noise_dim},
                     {"dropout_rate", hp.dropout_rate},
                     {"generator_loss", LossFormName(hp.generator_loss)}};
  if (c.dp.has_value()) {
    ordered_json dp = {{"epsilon", c.dp->epsilon},
                       {"delta", c.dp->delta},
                       {"clip_norm", c.dp->clip_norm},
                       {"explicit_noise_std", nullptr}};
    if (c.dp->explicit_noise_std.has_value()) {
      dp["explicit_noise_std"] = *c.dp->explicit_noise_std;
    }
    j["dp"] = dp;
  }
  if (c.consensus.has_value()) {
    const ConsensusSettings& s = *c.consensus;
    j["consensus"] = {{"latency_threshold_s", s.latency_threshold_s},
                      {"broadcast_coeff", s.broadcast_coeff},
                      {"block_kilobytes", s.block_kilobytes},
                      {"result_kilobytes", s.result_kilobytes},
                      {"cycles_per_kb", s.cycles_per_kb},
                      {"partition_count", s.partition_count},
                      {"committee_size", s.committee_size},
                      {"approval_threshold", s.approval_threshold},
                      {"miners", s.miners},
                      {"grid_kilobytes", s.grid_kilobytes},
                      {"transactions_per_block", s.transactions_per_block}};
  }
  j["classifier"] = {{"epochs", c.classifier.epochs},
                     {"learning_rate", c.classifier.learning_rate},
                     {"minibatch_size", c.classifier.minibatch_size},
                     {"hidden_units", c.classifier.hidden_units},
                     {"hidden_layers", c.classifier.hidden_layers}};
  j["mixing"] = {{"ratios", c.mixing.ratios},
                 {"per_class", c.mixing.per_class},
                 {"real_train_size", c.mixing.real_train_size},
                 {"seeds", c.mixing.seeds}};
  j["epsilon_sweep"] = {
      {"epsilons", c.epsilon_sweep.epsilons},
      {"synthetic_per_class", c.epsilon_sweep.synthetic_per_class},
      {"seeds", c.epsilon_sweep.seeds}};
  j["theory"] = {{"pairs", c.theory.pairs},
                 {"max_support", c.theory.max_support},
                 {"max_clients", c.theory.max_clients}};
  return j.dump(2) + "\n";
}

}  // namespace fedgan::cli
