#pragma once

#include <string>
#include <vector>

#include "semdist/expected.hpp"

namespace semdist {

// A fitted translation model bound to its vocabulary.
//
// On-disk layout, all little-endian:
//   bytes 0..7  magic "SEMDIST1"
//   u32         format version (1)
//   u64         vocabulary size; per term a u32 byte length + UTF-8 bytes
//   u64         excluded count; u32 vocabulary ids, ascending
//   f64 ×2      diffusion time t, edge-weight bandwidth sigma
//   matrix T:   u64 rows, u64 cols, then rows·cols f64, row-major
//   matrix G:   same encoding
// T and G hold the dense blocks over the non-excluded vocabulary; excluded
// words are implicit identity rows and columns.
struct Model {
  Vocabulary vocab;
  TranslationModel translation;
  GramModel gram;
};

void save_model(const std::string& path, const Model& model);
Model load_model(const std::string& path);  // ModelFormatError on bad files

}  // namespace semdist
