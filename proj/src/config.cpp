#include "semdist/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "semdist/errors.hpp"

namespace semdist {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("not a boolean: " + v);
}

std::vector<int> parse_int_list(const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    out.push_back(std::stoi(part));
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  try {
    if (key == "corpus") {
      config.corpus = value;
    } else if (key == "model") {
      config.model_path = value;
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else if (key == "sigma") {
      config.sigma = std::stod(value);
    } else if (key == "t") {
      config.t = std::stod(value);
    } else if (key == "exclude_top") {
      config.exclude_top = std::stoi(value);
    } else if (key == "sparsify_k") {
      config.sparsify_k = std::stoi(value);
    } else if (key == "stem") {
      config.stem = parse_bool(value);
    } else if (key == "min_token_len") {
      config.min_token_len = std::stoi(value);
    } else if (key == "kernel_sigma") {
      config.kernel_sigma = std::stod(value);
    } else if (key == "knn_k") {
      config.knn_k = std::stoi(value);
    } else if (key == "kpca_dims") {
      config.kpca_dims = parse_int_list(value);
    } else if (key == "train_sizes") {
      config.train_sizes = parse_int_list(value);
    } else if (key == "test_per_class") {
      config.test_per_class = std::stoi(value);
    } else if (key == "realizations") {
      config.realizations = std::stoi(value);
    } else {
      throw UsageError("unknown configuration key: " + key);
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("bad value for " + key + ": " + value);
  } catch (const std::out_of_range&) {
    throw UsageError("value out of range for " + key + ": " + value);
  }

  if ((key == "t" && config.t < 0) || (key == "sigma" && config.sigma < 0) ||
      (key == "kernel_sigma" && config.kernel_sigma <= 0) ||
      (key == "min_token_len" && config.min_token_len < 1) ||
      (key == "knn_k" && config.knn_k < 1) ||
      (key == "test_per_class" && config.test_per_class < 1) ||
      (key == "realizations" && config.realizations < 1))
    throw UsageError("value out of range for " + key + ": " + value);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  RunConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("missing '=' on config line " + std::to_string(line_no));
    apply_config_entry(config, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return config;
}

}  // namespace semdist
