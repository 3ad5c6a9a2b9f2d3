#include "semdist/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace semdist {

namespace {

constexpr char kMagic[8] = {'S', 'E', 'M', 'D', 'I', 'S', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw ModelFormatError("model file truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw ModelFormatError("model file truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void put_matrix(std::ostream& out, const RowMatrixXd& m) {
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (std::int64_t i = 0; i < m.rows(); ++i)
    for (std::int64_t j = 0; j < m.cols(); ++j) put_f64(out, m(i, j));
}

RowMatrixXd get_matrix(std::istream& in) {
  std::uint64_t rows = get_u64(in);
  std::uint64_t cols = get_u64(in);
  if (rows > (1u << 20) || cols > (1u << 20))
    throw ModelFormatError("unreasonable matrix size in model file");
  RowMatrixXd m(static_cast<std::int64_t>(rows), static_cast<std::int64_t>(cols));
  for (std::int64_t i = 0; i < m.rows(); ++i)
    for (std::int64_t j = 0; j < m.cols(); ++j) m(i, j) = get_f64(in);
  return m;
}

}  // namespace

void save_model(const std::string& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path);
  out.write(kMagic, 8);
  put_u32(out, kVersion);

  const auto& terms = model.vocab.terms();
  put_u64(out, terms.size());
  for (const std::string& term : terms) {
    put_u32(out, static_cast<std::uint32_t>(term.size()));
    out.write(term.data(), static_cast<std::streamsize>(term.size()));
  }

  put_u64(out, model.translation.excluded.size());
  for (WordId id : model.translation.excluded)
    put_u32(out, static_cast<std::uint32_t>(id));

  put_f64(out, model.translation.t);
  put_f64(out, model.translation.sigma);
  put_matrix(out, model.translation.block);
  put_matrix(out, RowMatrixXd(model.gram.block));
  if (!out) throw DataError("failed while writing model file: " + path);
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);

  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw ModelFormatError("not a model file (bad magic): " + path);
  if (get_u32(in) != kVersion)
    throw ModelFormatError("unsupported model version: " + path);

  Model model;
  std::uint64_t n_terms = get_u64(in);
  for (std::uint64_t i = 0; i < n_terms; ++i) {
    std::uint32_t len = get_u32(in);
    std::string term(len, '\0');
    in.read(term.data(), len);
    if (!in) throw ModelFormatError("model file truncated");
    model.vocab.add(term);
  }
  const WordId vocab_size = model.vocab.size();

  std::uint64_t n_excluded = get_u64(in);
  std::vector<WordId> excluded;
  excluded.reserve(n_excluded);
  for (std::uint64_t i = 0; i < n_excluded; ++i) {
    WordId id = static_cast<WordId>(get_u32(in));
    if (id < 0 || id >= vocab_size)
      throw ModelFormatError("excluded id out of range");
    excluded.push_back(id);
  }

  double t = get_f64(in);
  double sigma = get_f64(in);
  RowMatrixXd t_block = get_matrix(in);
  RowMatrixXd g_block = get_matrix(in);

  TranslationModel& tr = model.translation;
  tr.t = t;
  tr.sigma = sigma;
  tr.excluded = excluded;
  tr.included = complement_ids(vocab_size, excluded);
  if (static_cast<std::int64_t>(tr.included.size()) != t_block.rows() ||
      t_block.rows() != t_block.cols() || g_block.rows() != t_block.rows() ||
      g_block.rows() != g_block.cols())
    throw ModelFormatError("matrix sizes inconsistent with vocabulary");
  tr.block = std::move(t_block);
  tr.block_index.assign(vocab_size, -1);
  for (std::size_t i = 0; i < tr.included.size(); ++i)
    tr.block_index[tr.included[i]] = static_cast<WordId>(i);

  model.gram.block = std::move(g_block);
  model.gram.included = tr.included;
  model.gram.block_index = tr.block_index;
  return model;
}

}  // namespace semdist
