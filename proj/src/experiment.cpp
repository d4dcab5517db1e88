// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "pla/experiment.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "pla/error.hpp"

namespace pla {
namespace {

using nlohmann::json;

// Wraps one JSON object and rejects keys outside the allowed list.
class Section {
 public:
  Section(const json& doc, std::string name, std::initializer_list<std::string_view> allowed)
      : name_(std::move(name)) {
    if (!doc.contains(name_)) return;
    node_ = &doc.at(name_);
    require(node_->is_object(), ErrorKind::config, "section '" + name_ + "' must be an object");
    for (const auto& [key, value] : node_->items()) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      require(known, ErrorKind::config, "unknown key '" + name_ + "." + key + "'");
    }
  }

  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  template <typename T>
  bool read(const std::string& key, T& out) const {
    if (!has(key)) return false;
    try {
      out = node_->at(key).get<T>();
    } catch (const json::exception& e) {
      fail(ErrorKind::config, "bad value for '" + name_ + "." + key + "': " + e.what());
    }
    return true;
  }

  const json& at(const std::string& key) const { return node_->at(key); }

 private:
  std::string name_;
  const json* node_ = nullptr;
};

void read_unsigned(const Section& s, const std::string& key, unsigned& out) {
  std::uint64_t v = out;
  if (s.read(key, v)) {
    require(v <= 0xffffffffull, ErrorKind::config, "value of '" + key + "' is too large");
    out = static_cast<unsigned>(v);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    channel.validate();
    require(m >= 1 && m <= kMaxBitsPerSubkey, ErrorKind::config, "protocol.m must lie in [1, 8]");
    require(S % m == 0, ErrorKind::config,
            "key length S = " + std::to_string(S) + " is not divisible by m = " + std::to_string(m));
    require(S == m * channel.num_subcarriers, ErrorKind::config,
            "S must equal m * L (S = " + std::to_string(S) + ", m = " + std::to_string(m) +
                ", L = " + std::to_string(channel.num_subcarriers) + ")");
    require(protocol.tolerance > 0.0, ErrorKind::config, "protocol.tol must be positive");
    require(protocol.phase_noise_kappa >= 0.0, ErrorKind::config,
            "protocol.phase_noise_kappa must be non-negative");
    require(attack.N >= 1, ErrorKind::config, "attack.N must be at least 1");
    if (attack.replay) {
      require(attack.replay->z.size() >= 2, ErrorKind::config,
              "attack.replay.z needs at least two phases");
      require(attack.replay->key.size() == attack.replay->z.size() * m, ErrorKind::config,
              "attack.replay.key must hold m bits per phase of z");
    }
    for (double r : analytics.rho) {
      require(r >= 0.0 && r <= 1.0, ErrorKind::config, "analytics.rho values must lie in [0, 1]");
    }
    for (auto n : analytics.N) require(n >= 1, ErrorKind::config, "analytics.N values must be >= 1");
    for (auto mm : analytics.m) {
      require(mm >= 1 && mm <= kMaxBitsPerSubkey, ErrorKind::config,
              "analytics.m values must lie in [1, 8]");
    }
    randomness.validate();
    guideline.config.validate();
    if (guideline.rho) {
      require(*guideline.rho >= 0.0 && *guideline.rho <= 1.0, ErrorKind::config,
              "guideline.rho must lie in [0, 1]");
    }
    require(guideline.trials >= 1, ErrorKind::config, "guideline.trials must be at least 1");
    require(channel.model != ChannelModel::trace_replay || !trace_path.empty(), ErrorKind::config,
            "trace_replay needs channel.trace");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    fail(ErrorKind::config, e.what());
  }
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, std::string("config is not valid JSON: ") + e.what());
  }
  require(doc.is_object(), ErrorKind::config, "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    static constexpr std::string_view kSections[] = {"channel",    "protocol",  "attack", "analytics",
                                                     "randomness", "guideline", "output"};
    bool known = false;
    for (auto s : kSections) known = known || key == s;
    require(known, ErrorKind::config, "unknown section '" + key + "'");
  }

  ExperimentConfig cfg;

  const Section channel(doc, "channel", {"model", "rho", "L", "seed", "trace"});
  std::string model;
  if (channel.read("model", model)) cfg.channel.model = parse_channel_model(model);
  channel.read("rho", cfg.channel.rho);
  channel.read("seed", cfg.channel.seed);
  channel.read("trace", cfg.trace_path);
  std::size_t L = 0;
  const bool has_L = channel.read("L", L);

  const Section protocol(doc, "protocol", {"m", "S", "tol", "rounds", "phase_noise_kappa"});
  read_unsigned(protocol, "m", cfg.m);
  std::size_t S = 0;
  const bool has_S = protocol.read("S", S);
  protocol.read("tol", cfg.protocol.tolerance);
  protocol.read("rounds", cfg.rounds);
  protocol.read("phase_noise_kappa", cfg.protocol.phase_noise_kappa);
  require(cfg.m >= 1, ErrorKind::config, "protocol.m must be at least 1");
  if (has_L && has_S) {
    cfg.channel.num_subcarriers = L;
    cfg.S = S;
  } else if (has_S) {
    require(S % cfg.m == 0, ErrorKind::config,
            "key length S = " + std::to_string(S) + " is not divisible by m = " +
                std::to_string(cfg.m));
    cfg.S = S;
    cfg.channel.num_subcarriers = S / cfg.m;
  } else {
    if (has_L) cfg.channel.num_subcarriers = L;
    cfg.S = cfg.channel.num_subcarriers * cfg.m;
  }

  const Section attack(doc, "attack", {"N", "trials", "engine", "replay"});
  attack.read("N", cfg.attack.N);
  attack.read("trials", cfg.attack.trials);
  std::string engine;
  if (attack.read("engine", engine)) {
    if (engine == "enumerate") {
      cfg.attack.engine = AttackEngine::enumerate;
    } else if (engine == "rank") {
      cfg.attack.engine = AttackEngine::rank;
    } else {
      fail(ErrorKind::config, "unknown attack.engine '" + engine + "'");
    }
  }
  if (attack.has("replay")) {
    const json& r = attack.at("replay");
    require(r.is_object() && r.contains("z") && r.contains("key") && r.size() == 2,
            ErrorKind::config, "attack.replay must be an object with exactly 'z' and 'key'");
    ReplayFixture fixture;
    try {
      fixture.z = r.at("z").get<PhaseVector>();
      fixture.key = r.at("key").get<std::vector<std::uint8_t>>();
    } catch (const json::exception& e) {
      fail(ErrorKind::config, std::string("bad attack.replay: ") + e.what());
    }
    cfg.attack.replay = std::move(fixture);
  }

  const Section analytics(doc, "analytics", {"trials", "rho", "N", "m", "complete_levels"});
  analytics.read("trials", cfg.analytics.trials);
  analytics.read("rho", cfg.analytics.rho);
  analytics.read("N", cfg.analytics.N);
  analytics.read("m", cfg.analytics.m);
  analytics.read("complete_levels", cfg.analytics.complete_levels);

  const Section randomness(doc, "randomness", {"alpha", "concat", "min_length", "trials"});
  randomness.read("alpha", cfg.randomness.alpha);
  randomness.read("concat", cfg.randomness.concat_snapshots);
  randomness.read("min_length", cfg.randomness.min_sequence_length);
  randomness.read("trials", cfg.randomness_trials);

  const Section guideline(doc, "guideline",
                          {"p_benchmark", "N", "grid_step", "mode", "rho", "min_accept", "trials"});
  guideline.read("p_benchmark", cfg.guideline.config.p_benchmark);
  cfg.guideline.config.N = cfg.attack.N;
  guideline.read("N", cfg.guideline.config.N);
  guideline.read("grid_step", cfg.guideline.config.grid_step);
  std::string mode;
  if (guideline.read("mode", mode)) cfg.guideline.config.mode = parse_guideline_mode(mode);
  double g_rho = 0.0;
  if (guideline.read("rho", g_rho)) cfg.guideline.rho = g_rho;
  guideline.read("min_accept", cfg.guideline.config.min_accept);
  guideline.read("trials", cfg.guideline.trials);

  const Section output(doc, "output", {"directory", "formats"});
  std::string dir;
  if (output.read("directory", dir)) cfg.output.directory = dir;
  std::vector<std::string> formats;
  if (output.read("formats", formats)) {
    cfg.output.csv = cfg.output.jsonl = false;
    for (const auto& f : formats) {
      if (f == "csv") {
        cfg.output.csv = true;
      } else if (f == "jsonl") {
        cfg.output.jsonl = true;
      } else {
        fail(ErrorKind::config, "unknown output format '" + f + "'");
      }
    }
    require(cfg.output.csv, ErrorKind::config, "output.formats must include csv");
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::io, "cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str());
}

}  // namespace pla
