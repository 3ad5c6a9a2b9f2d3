// Regenerates the bundled corpora under data/. Both corpora are fully
// determined by the seeds below.

#include <cstdio>
#include <string>

#include "semdist/synthetic.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "data";
  try {
    semdist::SyntheticCorpus synonym = semdist::make_synonym_corpus(7);
    semdist::SyntheticCorpus null = semdist::make_null_corpus(11);
    semdist::write_corpus_tsv(dir + "/synonym_corpus.tsv", synonym.docs);
    semdist::write_corpus_tsv(dir + "/null_corpus.tsv", null.docs);
    std::printf("wrote %s/synonym_corpus.tsv (%zu docs) and %s/null_corpus.tsv (%zu docs)\n",
                dir.c_str(), synonym.docs.size(), dir.c_str(), null.docs.size());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
