#include "glt/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "glt/errors.hpp"

namespace glt {

namespace {

// A frame misalignment that keeps every X/Y correlator nonzero.
constexpr double kDefaultOmega = std::numbers::pi / 8.0;

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : s_(text) {}

  double parse() {
    const double v = sum();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("bad expression '" + s_ + "': " + why);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double v = product();
    while (true) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }

  double product() {
    double v = unary();
    while (true) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  double primary() {
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip_space();
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    if (s_.compare(pos_, 3, "inf") == 0) {
      pos_ += 3;
      return INFINITY;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail(pos_ < s_.size() ? "expected a number" : "unexpected end");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    Entry e{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("missing key", line);
    if (e.value.empty()) throw ConfigError("missing value for '" + e.key + "'", line);
    out.push_back(std::move(e));
  }
  return out;
}

Mode parse_mode(const std::string& v, std::size_t line) {
  if (v == "asymptotic") return Mode::asymptotic;
  if (v == "finite") return Mode::finite;
  throw ConfigError("mode must be 'asymptotic' or 'finite', got '" + v + "'", line);
}

using Setter = std::function<void(Scenario&, double)>;

const std::unordered_map<std::string, Setter>& scenario_setters() {
  static const std::unordered_map<std::string, Setter> table{
      {"source.delta_im1", [](Scenario& s, double v) { s.source.delta_im1 = v; }},
      {"source.delta_im2", [](Scenario& s, double v) { s.source.delta_im2 = v; }},
      {"source.delta_bs1", [](Scenario& s, double v) { s.source.delta_bs1 = v; }},
      {"source.delta_bs2", [](Scenario& s, double v) { s.source.delta_bs2 = v; }},
      {"source.delta_pm1", [](Scenario& s, double v) { s.source.delta_pm1 = v; }},
      {"source.delta_pm2", [](Scenario& s, double v) { s.source.delta_pm2 = v; }},
      {"source.delta_im",
       [](Scenario& s, double v) {
         s.source.delta_im1 = s.source.delta_im2 = v;
         s.source.delta_bs1 = s.source.delta_bs2 = v;
       }},
      {"source.delta_pm",
       [](Scenario& s, double v) { s.source.delta_pm1 = s.source.delta_pm2 = v; }},
      {"source.theta", [](Scenario& s, double v) { s.source.theta_mode.value = v; }},
      {"source.gamma", [](Scenario& s, double v) { s.source.gamma = v; }},
      {"channel.alpha_db_per_km", [](Scenario& s, double v) { s.channel.alpha_db_per_km = v; }},
      {"channel.eta_det", [](Scenario& s, double v) { s.channel.eta_det = v; }},
      {"channel.p_dark", [](Scenario& s, double v) { s.channel.p_dark = v; }},
      {"channel.omega", [](Scenario& s, double v) { s.channel.omega = v; }},
      {"protocol.mu", [](Scenario& s, double v) { s.fixed_mu = v; }},
      {"protocol.nu", [](Scenario& s, double v) { s.protocol.nu = v; }},
      {"protocol.n_pulses", [](Scenario& s, double v) { s.protocol.n_pulses = v; }},
      {"protocol.epsilon", [](Scenario& s, double v) { s.protocol.epsilon = v; }},
      {"protocol.f_ec", [](Scenario& s, double v) { s.protocol.f_ec = v; }},
      {"protocol.p_signal", [](Scenario& s, double v) { s.protocol.p_signal = v; }},
      {"protocol.p_decoy", [](Scenario& s, double v) { s.protocol.p_decoy = v; }},
      {"protocol.p_vacuum", [](Scenario& s, double v) { s.protocol.p_vacuum = v; }},
  };
  return table;
}

double number(const Entry& e) {
  try {
    return evaluate_expression(e.value);
  } catch (const ConfigError& err) {
    throw ConfigError(err.what(), e.line);
  }
}

// Keys that may appear both at top level and inside a variant.
bool apply_scenario_key(Scenario& s, const std::string& key, const Entry& e) {
  if (key == "mode") {
    s.mode = parse_mode(e.value, e.line);
    return true;
  }
  if (key == "source.theta_mode") {
    if (e.value == "independent") s.source.theta_mode.kind = ThetaMode::Kind::independent;
    else if (e.value == "dependent") s.source.theta_mode.kind = ThetaMode::Kind::dependent;
    else throw ConfigError("theta_mode must be 'independent' or 'dependent'", e.line);
    return true;
  }
  const auto& setters = scenario_setters();
  const auto it = setters.find(key);
  if (it == setters.end()) return false;
  it->second(s, number(e));
  return true;
}

void validate_scenario(const Scenario& s, const std::string& where) {
  try {
    s.source.validate();
    ChannelParams ch = s.channel;
    ch.validate();
    ProtocolParams p = s.protocol;
    if (s.fixed_mu) p.mu = *s.fixed_mu;
    p.validate(s.fixed_mu.has_value());
    if (!(p.nu < 1.0)) throw ParameterError("decoy intensity nu must be below 1");
  } catch (const std::invalid_argument& err) {
    throw ConfigError(where + ": " + err.what());
  }
}

void apply_entries(RunConfig& cfg, const std::vector<Entry>& entries) {
  std::vector<std::pair<std::string, std::vector<Entry>>> overrides;
  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    if (e.key.rfind("variant.", 0) == 0) {
      const auto dot = e.key.find('.', 8);
      if (dot == std::string::npos || dot == 8)
        throw ConfigError("variant keys look like variant.<name>.<key>", e.line);
      const std::string name = e.key.substr(8, dot - 8);
      auto it = std::find_if(overrides.begin(), overrides.end(),
                             [&](const auto& o) { return o.first == name; });
      if (it == overrides.end()) it = overrides.insert(overrides.end(), {name, {}});
      it->second.push_back(e);
      continue;
    }
    if (e.key == "sweep.start") cfg.sweep.start = number(e);
    else if (e.key == "sweep.stop") cfg.sweep.stop = number(e);
    else if (e.key == "sweep.step") cfg.sweep.step = number(e);
    else if (e.key == "keyrate.distance_km") cfg.distance_km = number(e);
    else if (!apply_scenario_key(cfg.base, e.key, e))
      throw ConfigError("unknown key '" + e.key + "'", e.line);
  }

  // Variants start from the final base scenario, so base keys may follow them.
  for (auto& [name, list] : overrides) {
    auto it = std::find_if(cfg.variants.begin(), cfg.variants.end(),
                           [&](const Variant& v) { return v.name == name; });
    if (it == cfg.variants.end()) it = cfg.variants.insert(cfg.variants.end(), {name, cfg.base});
    for (const auto& e : list) {
      const std::string key = e.key.substr(9 + name.size());
      if (!apply_scenario_key(it->scenario, key, e))
        throw ConfigError("unknown variant key '" + key + "'", e.line);
    }
  }
}

RunConfig resolve(const std::string& text) {
  const auto entries = tokenize(text);
  RunConfig cfg;
  cfg.base.channel.omega = kDefaultOmega;
  for (const auto& e : entries)
    if (e.key == "preset") {
      if (cfg.preset) throw ConfigError("preset given twice", e.line);
      const auto& table = preset_sources();
      const auto it = table.find(e.value);
      if (it == table.end()) throw ConfigError("unknown preset '" + e.value + "'", e.line);
      cfg = resolve(it->second);
      cfg.preset = e.value;
    }
  apply_entries(cfg, entries);

  if (!(cfg.sweep.step > 0.0) || !std::isfinite(cfg.sweep.step))
    throw ConfigError("sweep.step must be positive");
  if (!(cfg.sweep.stop >= cfg.sweep.start) || !(cfg.sweep.start >= 0.0))
    throw ConfigError("sweep needs 0 <= start <= stop");
  if (!(cfg.distance_km >= 0.0) || !std::isfinite(cfg.distance_km))
    throw ConfigError("keyrate.distance_km must be finite and >= 0");
  validate_scenario(cfg.base, "base");
  for (const auto& v : cfg.variants) validate_scenario(v.scenario, "variant " + v.name);
  return cfg;
}

}  // namespace

double evaluate_expression(const std::string& text) {
  return ExpressionParser(text).parse();
}

std::vector<Variant> RunConfig::scenarios() const {
  if (variants.empty()) return {{"base", base}};
  return variants;
}

RunConfig parse_config_text(const std::string& text) {
  return resolve(text);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

RunConfig load_preset(const std::string& id) {
  return parse_config_text("preset = " + id + "\n");
}

}  // namespace glt
