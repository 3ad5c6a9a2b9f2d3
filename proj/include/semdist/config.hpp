#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semdist {

// Flat key = value configuration shared by all CLI commands; command-line
// flags override file values. Unknown keys are rejected.
struct RunConfig {
  std::string corpus;
  std::string model_path;
  std::string out_dir = "out";
  std::uint64_t seed = 42;

  // translation model
  double sigma = 0;      // 0 = median of sampled pairwise distances
  double t = 1.0;        // diffusion time
  int exclude_top = -1;  // -1 = min(2000, 10% of vocabulary); 0 = none
  int sparsify_k = 0;    // 0 = complete graph

  // tokenization
  bool stem = false;
  int min_token_len = 2;

  // evaluation
  double kernel_sigma = 1.0;
  int knn_k = 1;
  std::vector<int> kpca_dims = {1, 2, 5, 10};
  std::vector<int> train_sizes = {10, 20, 40};
  int test_per_class = 40;
  int realizations = 40;
};

RunConfig load_config(const std::string& path);  // UsageError on unknown keys

// Applies one key/value pair; throws UsageError for unknown keys or
// unparsable values.
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace semdist
