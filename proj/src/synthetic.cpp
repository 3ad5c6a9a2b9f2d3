#include "semdist/synthetic.hpp"

#include "semdist/rng.hpp"

namespace semdist {

namespace {

constexpr int kClasses = 4;
constexpr int kPairsPerClass = 6;
constexpr int kCtxPerPair = 4;    // pair context, shared by both members
constexpr int kClassCtxWords = 6; // class context pool
constexpr int kClassCtxPerDoc = 3;
constexpr int kFillerWords = 30;
constexpr int kNoiseWords = 300;
constexpr int kDocsPerVariant = 36;  // 'A' and 'B'; divisible by the pair count
constexpr int kMixedDocs = 18;
constexpr int kMemberRepeats = 3;
constexpr int kFillerPerDoc = 5;
constexpr int kNoisePerDoc = 2;

char letter(int i) { return static_cast<char>('a' + i); }

std::string member_word(int cls, int pair, bool second) {
  return std::string("w") + letter(cls) + letter(pair) + (second ? 'y' : 'x');
}

std::string pair_ctx_word(int cls, int pair, int j) {
  return std::string("ctx") + letter(cls) + letter(pair) + letter(j);
}

std::string class_ctx_word(int cls, int j) {
  return std::string("cls") + letter(cls) + letter(j);
}

std::string filler_word(int j) {
  return std::string("fill") + letter(j / 26) + letter(j % 26);
}

std::string noise_word(int j) {
  return std::string("ns") + letter(j / 26) + letter(j % 26);
}

std::string topic_word(int cls, int j) {
  return std::string("top") + letter(cls) + letter(j / 26) + letter(j % 26);
}

void append_common(std::vector<std::string>& tokens, SplitMix64& rng) {
  for (int i = 0; i < kFillerPerDoc; ++i)
    tokens.push_back(filler_word(static_cast<int>(rng.next_below(kFillerWords))));
  for (int i = 0; i < kNoisePerDoc; ++i)
    tokens.push_back(noise_word(static_cast<int>(rng.next_below(kNoiseWords))));
}

std::string join(std::vector<std::string>& tokens, SplitMix64& rng) {
  shuffle(tokens, rng);
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) text += ' ';
    text += tokens[i];
  }
  return text;
}

}  // namespace

SyntheticCorpus make_synonym_corpus(std::uint64_t seed) {
  SyntheticCorpus corpus;
  SplitMix64 rng(mix_seed(seed, 0xc0117));

  for (int cls = 0; cls < kClasses; ++cls) {
    corpus.labels.push_back(std::string("c") + letter(cls));
    for (int pair = 0; pair < kPairsPerClass; ++pair)
      corpus.synonym_pairs.emplace_back(member_word(cls, pair, false),
                                        member_word(cls, pair, true));
  }

  for (int cls = 0; cls < kClasses; ++cls) {
    const std::string label = corpus.labels[cls];

    // One synonym slot per document. Slots rotate round-robin, so every pair
    // context word appears in exactly (2·kDocsPerVariant + kMixedDocs) / 6
    // documents while each member stays below that: the document-frequency
    // exclusion then removes context and filler but never a member.
    auto make_doc = [&](char variant, int index) {
      const int slot = index % kPairsPerClass;
      std::vector<std::string> tokens;
      if (variant == 'M') {
        for (int r = 0; r < 2; ++r) tokens.push_back(member_word(cls, slot, false));
        for (int r = 0; r < 2; ++r) tokens.push_back(member_word(cls, slot, true));
      } else {
        for (int r = 0; r < kMemberRepeats; ++r)
          tokens.push_back(member_word(cls, slot, variant == 'B'));
      }
      for (int j = 0; j < kCtxPerPair; ++j)
        tokens.push_back(pair_ctx_word(cls, slot, j));
      for (int j = 0; j < kClassCtxPerDoc; ++j)
        tokens.push_back(class_ctx_word(
            cls, static_cast<int>(rng.next_below(kClassCtxWords))));
      append_common(tokens, rng);

      RawDoc doc;
      doc.id = std::string("c") + letter(cls) + variant +
               (index < 10 ? "00" : index < 100 ? "0" : "") + std::to_string(index);
      doc.label = label;
      doc.text = join(tokens, rng);
      corpus.docs.push_back(std::move(doc));
      corpus.variant.push_back(variant);
    };
    for (int i = 0; i < kDocsPerVariant; ++i) make_doc('A', i);
    for (int i = 0; i < kDocsPerVariant; ++i) make_doc('B', i);
    for (int i = 0; i < kMixedDocs; ++i) make_doc('M', i);
  }
  return corpus;
}

SyntheticCorpus make_null_corpus(std::uint64_t seed) {
  SyntheticCorpus corpus;
  SplitMix64 rng(mix_seed(seed, 0x9011));
  constexpr int kTopicWords = 12;
  constexpr int kTopicTokens = 12;
  constexpr int kDocsPerClass = 80;

  for (int cls = 0; cls < kClasses; ++cls)
    corpus.labels.push_back(std::string("n") + letter(cls));

  for (int cls = 0; cls < kClasses; ++cls) {
    for (int i = 0; i < kDocsPerClass; ++i) {
      std::vector<std::string> tokens;
      for (int j = 0; j < kTopicTokens; ++j)
        tokens.push_back(topic_word(cls, static_cast<int>(rng.next_below(kTopicWords))));
      append_common(tokens, rng);

      RawDoc doc;
      doc.id = std::string("n") + letter(cls) + "-" + std::to_string(i);
      doc.label = corpus.labels[cls];
      doc.text = join(tokens, rng);
      corpus.docs.push_back(std::move(doc));
      corpus.variant.push_back('-');
    }
  }
  return corpus;
}

}  // namespace semdist
