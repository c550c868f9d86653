#include "stocksim/grid_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stocksim {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': not an integer: '" + s + "'");
  }
}

double parse_float(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': not a number: '" + s + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::runtime_error("config key '" + key + "': expected true/false, got '" + s + "'");
}

std::pair<Temporal, int> parse_temporal(const std::string& s) {
  if (s == "timepoint") return {Temporal::timepoint, 0};
  if (s.rfind("window", 0) == 0) {
    const int w = parse_int("temporals", s.substr(6));
    if (w < 2) throw std::runtime_error("config: window size must be >= 2, got '" + s + "'");
    return {Temporal::window, w};
  }
  throw std::runtime_error("config: unknown temporal mode '" + s +
                           "' (expected timepoint or window<N>)");
}

}  // namespace

ExperimentGrid parse_grid_config_text(const std::string& text) {
  ExperimentGrid g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto items = split_list(value);

    if (key == "folds") {
      g.folds = parse_int(key, value);
      if (g.folds < 1) throw std::runtime_error("config: folds must be >= 1");
    } else if (key == "seed") {
      g.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "jobs") {
      g.jobs = parse_int(key, value);
      if (g.jobs < 1) throw std::runtime_error("config: jobs must be >= 1");
    } else if (key == "targets") {
      g.targets = items;
    } else if (key == "feature_modes") {
      g.feature_modes.clear();
      for (const auto& s : items) g.feature_modes.push_back(feature_mode_from_string(s));
    } else if (key == "transforms") {
      g.transforms.clear();
      for (const auto& s : items) g.transforms.push_back(transform_from_string(s));
    } else if (key == "temporals") {
      g.temporals.clear();
      for (const auto& s : items) g.temporals.push_back(parse_temporal(s));
    } else if (key == "predict_values") {
      g.predict_values.clear();
      for (const auto& s : items) g.predict_values.push_back(predict_value_from_string(s));
    } else if (key == "horizons") {
      g.horizons.clear();
      for (const auto& s : items) {
        const int h = parse_int(key, s);
        if (h < 1) throw std::runtime_error("config: horizons must be >= 1");
        g.horizons.push_back(h);
      }
    } else if (key == "models") {
      g.model_kinds.clear();
      for (const auto& s : items) g.model_kinds.push_back(model_kind_from_string(s));
    } else if (key == "modes") {
      g.model_modes.clear();
      for (const auto& s : items) g.model_modes.push_back(model_mode_from_string(s));
    } else if (key == "enrichments") {
      for (const auto& s : items)
        if (s != "none" && s != "similar" && s != "random")
          throw std::runtime_error("config: unknown enrichment '" + s + "'");
      g.enrichments = items;
    } else if (key == "similarity_fns") {
      g.similarity_fns.clear();
      for (const auto& s : items) g.similarity_fns.push_back(similarity_fn_from_string(s));
    } else if (key == "similarity_values") {
      g.similarity_values.clear();
      for (const auto& s : items) g.similarity_values.push_back(value_field_from_string(s));
    } else if (key == "fixers") {
      g.fixers.clear();
      for (const auto& s : items) g.fixers.push_back(fixer_from_string(s));
    } else if (key == "ks") {
      g.ks.clear();
      for (const auto& s : items) {
        const int k = parse_int(key, s);
        if (k < 1) throw std::runtime_error("config: ks must be >= 1");
        g.ks.push_back(k);
      }
    } else if (key == "weighted") {
      g.weighted.clear();
      for (const auto& s : items) g.weighted.push_back(parse_bool(key, s));
    } else if (key == "random_counts") {
      g.random_counts.clear();
      for (const auto& s : items) {
        const int c = parse_int(key, s);
        if (c < 1) throw std::runtime_error("config: random_counts must be >= 1");
        g.random_counts.push_back(c);
      }
    } else if (key == "delay") {
      g.delay = parse_int(key, value);
      if (g.delay < 1) throw std::runtime_error("config: delay must be >= 1");
    } else if (key == "pip_fraction") {
      g.pip_fraction = parse_float(key, value);
      if (!(g.pip_fraction > 0.0 && g.pip_fraction <= 1.0))
        throw std::runtime_error("config: pip_fraction must be in (0, 1]");
    } else if (key == "sax_alphabet") {
      g.sax_alphabet = parse_int(key, value);
      if (g.sax_alphabet < 2) throw std::runtime_error("config: sax_alphabet must be >= 2");
    } else if (key == "proc_span") {
      g.proc_span = parse_int(key, value);
      if (g.proc_span < 1) throw std::runtime_error("config: proc_span must be >= 1");
    } else if (key == "rsi_period") {
      g.rsi_period = parse_int(key, value);
      if (g.rsi_period < 1) throw std::runtime_error("config: rsi_period must be >= 1");
    } else if (key == "rf_trees") {
      g.rf_trees = parse_int(key, value);
      if (g.rf_trees < 1) throw std::runtime_error("config: rf_trees must be >= 1");
    } else if (key == "gbt_stages") {
      g.gbt_stages = parse_int(key, value);
      if (g.gbt_stages < 0) throw std::runtime_error("config: gbt_stages must be >= 0");
    } else if (key == "gbt_learning_rate") {
      g.gbt_learning_rate = parse_float(key, value);
      if (!(g.gbt_learning_rate > 0.0))
        throw std::runtime_error("config: gbt_learning_rate must be > 0");
    } else {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": unknown key '" +
                               key + "'");
    }
  }
  return g;
}

ExperimentGrid parse_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grid_config_text(buf.str());
}

}  // namespace stocksim
