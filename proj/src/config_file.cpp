#include "sfr/config_file.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sfr/errors.hpp"

namespace sfr {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"radar", {"f_c", "delta_f", "n_pulses", "pulse_bandwidth", "delta_t", "q_start", "l_bins", "c_light"}},
      {"pulse", {"shape", "window", "truncation_halfwidth", "bandwidth"}},
      {"target", {"kind", "n_scatterers", "path"}},
      {"experiment", {"sweep", "snr_db", "trials_per_point", "seed", "solvers"}},
      {"solver",
       {"max_iters", "rel_change_tol", "epsilon_rule", "epsilon_factor", "epsilon", "lambda_path_steps", "ls_ridge"}},
  };
  return keys;
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

double to_double(const std::string& section, const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(where(section, key) + ": expected a number, got '" + text + "'");
}

long long to_integer(const std::string& section, const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(where(section, key) + ": expected an integer, got '" + text + "'");
}

std::uint64_t to_u64(const std::string& section, const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] != '-') {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(where(section, key) + ": expected an unsigned integer, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> get(const std::string& key) const {
    if (tree_ == nullptr) return std::nullopt;
    auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    return v ? std::optional<std::string>(*v) : std::nullopt;
  }

  template <typename Fn>
  void apply(const std::string& key, Fn&& fn) const {
    if (auto v = get(key)) fn(name_, key, *v);
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

}  // namespace

ExperimentSpec parse_experiment_spec(std::istream& is) {
  pt::ptree root;
  try {
    pt::read_ini(is, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  for (const auto& [section, body] : root) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' must live inside a section");
      throw ConfigError("unknown config section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw ConfigError("unknown config key " + where(section, key));
    }
  }
  auto section = [&](const std::string& name) {
    const auto child = root.find(name);
    return Section(child == root.not_found() ? nullptr : &child->second, name);
  };

  ExperimentSpec spec;
  RadarConfig& radar = spec.radar;
  const Section rs = section("radar");
  rs.apply("f_c", [&](auto& s, auto& k, auto& v) { radar.f_c = to_double(s, k, v); });
  rs.apply("delta_f", [&](auto& s, auto& k, auto& v) { radar.delta_f = to_double(s, k, v); });
  rs.apply("n_pulses", [&](auto& s, auto& k, auto& v) { radar.n_pulses = static_cast<int>(to_integer(s, k, v)); });
  rs.apply("pulse_bandwidth", [&](auto& s, auto& k, auto& v) { radar.pulse_bandwidth = to_double(s, k, v); });
  radar.delta_t = 1.0 / radar.pulse_bandwidth;
  rs.apply("delta_t", [&](auto& s, auto& k, auto& v) { radar.delta_t = to_double(s, k, v); });
  rs.apply("q_start", [&](auto& s, auto& k, auto& v) { radar.q_start = static_cast<int>(to_integer(s, k, v)); });
  rs.apply("l_bins", [&](auto& s, auto& k, auto& v) { radar.l_bins = static_cast<int>(to_integer(s, k, v)); });
  rs.apply("c_light", [&](auto& s, auto& k, auto& v) { radar.c_light = to_double(s, k, v); });

  const Section ps = section("pulse");
  double bandwidth = radar.pulse_bandwidth;
  ps.apply("bandwidth", [&](auto& s, auto& k, auto& v) { bandwidth = to_double(s, k, v); });
  std::string shape_kind = "ideal_sinc";
  ps.apply("shape", [&](auto&, auto&, auto& v) { shape_kind = v; });
  if (shape_kind == "ideal_sinc") {
    spec.shape = PulseShape::ideal_sinc(bandwidth);
  } else if (shape_kind == "windowed_sinc") {
    Window window = Window::Hamming;
    ps.apply("window", [&](auto& s, auto& k, auto& v) {
      if (v == "hamming") window = Window::Hamming;
      else if (v == "hann") window = Window::Hann;
      else if (v == "rect") window = Window::Rect;
      else throw ConfigError(where(s, k) + ": expected hamming, hann or rect, got '" + v + "'");
    });
    double halfwidth = 4.0 / bandwidth;
    ps.apply("truncation_halfwidth", [&](auto& s, auto& k, auto& v) { halfwidth = to_double(s, k, v); });
    spec.shape = PulseShape::windowed_sinc(bandwidth, window, halfwidth);
  } else {
    throw ConfigError("[pulse] shape: expected ideal_sinc or windowed_sinc, got '" + shape_kind + "'");
  }

  const Section ts = section("target");
  ts.apply("kind", [&](auto& s, auto& k, auto& v) {
    if (v == "synthetic_sparse") spec.target.kind = TargetSpec::Kind::SyntheticSparse;
    else if (v == "file") spec.target.kind = TargetSpec::Kind::FromFile;
    else throw ConfigError(where(s, k) + ": expected synthetic_sparse or file, got '" + v + "'");
  });
  ts.apply("n_scatterers",
           [&](auto& s, auto& k, auto& v) { spec.target.n_scatterers = static_cast<int>(to_integer(s, k, v)); });
  ts.apply("path", [&](auto&, auto&, auto& v) { spec.target.path = v; });

  const Section es = section("experiment");
  es.apply("sweep", [&](auto& s, auto& k, auto& v) {
    spec.sweep.clear();
    for (const auto& item : split_list(v)) spec.sweep.push_back(static_cast<int>(to_integer(s, k, item)));
  });
  es.apply("snr_db", [&](auto& s, auto& k, auto& v) {
    spec.snr_db.clear();
    for (const auto& item : split_list(v)) spec.snr_db.push_back(to_double(s, k, item));
  });
  es.apply("trials_per_point",
           [&](auto& s, auto& k, auto& v) { spec.trials_per_point = static_cast<int>(to_integer(s, k, v)); });
  es.apply("seed", [&](auto& s, auto& k, auto& v) { spec.seed = to_u64(s, k, v); });
  es.apply("solvers", [&](auto&, auto&, auto& v) {
    spec.solvers.clear();
    for (const auto& item : split_list(v)) spec.solvers.push_back(parse_method(item));
  });

  SolverOptions& opts = spec.solver_opts;
  const Section ss = section("solver");
  ss.apply("max_iters", [&](auto& s, auto& k, auto& v) { opts.max_iters = static_cast<int>(to_integer(s, k, v)); });
  ss.apply("rel_change_tol", [&](auto& s, auto& k, auto& v) { opts.rel_change_tol = to_double(s, k, v); });
  ss.apply("lambda_path_steps",
           [&](auto& s, auto& k, auto& v) { opts.lambda_path_steps = static_cast<int>(to_integer(s, k, v)); });
  ss.apply("ls_ridge", [&](auto& s, auto& k, auto& v) { opts.ls_ridge = to_double(s, k, v); });
  std::string rule = "from_noise";
  ss.apply("epsilon_rule", [&](auto&, auto&, auto& v) { rule = v; });
  if (rule == "from_noise") {
    opts.epsilon = EpsilonRule::from_noise();
    ss.apply("epsilon_factor", [&](auto& s, auto& k, auto& v) { opts.epsilon.value = to_double(s, k, v); });
    if (ss.get("epsilon")) throw ConfigError("[solver] epsilon requires epsilon_rule = explicit");
  } else if (rule == "explicit") {
    const auto eps = ss.get("epsilon");
    if (!eps) throw ConfigError("[solver] epsilon_rule = explicit needs an epsilon value");
    opts.epsilon = EpsilonRule::explicit_value(to_double("solver", "epsilon", *eps));
    if (ss.get("epsilon_factor")) throw ConfigError("[solver] epsilon_factor requires epsilon_rule = from_noise");
  } else {
    throw ConfigError("[solver] epsilon_rule: expected from_noise or explicit, got '" + rule + "'");
  }

  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  return parse_experiment_spec(is);
}

}  // namespace sfr
