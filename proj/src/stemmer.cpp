// Porter's suffix-stripping algorithm (steps 1a-5b), operating on lowercase
// ASCII words. Words of length <= 2 are returned unchanged.

#include <string>
#include <string_view>
#include <vector>

#include "semdist/corpus.hpp"

namespace semdist {

namespace {

bool is_cons(const std::string& w, int i) {
  switch (w[static_cast<std::size_t>(i)]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      // y is a vowel when preceded by a consonant
      return i == 0 ? true : !is_cons(w, i - 1);
    default:
      return true;
  }
}

// Number of VC sequences in w[0, end): the form is [C](VC)^m[V].
int measure(const std::string& w, int end) {
  int m = 0, i = 0;
  while (i < end && is_cons(w, i)) ++i;
  while (i < end) {
    while (i < end && !is_cons(w, i)) ++i;
    if (i >= end) break;
    ++m;
    while (i < end && is_cons(w, i)) ++i;
  }
  return m;
}

bool has_vowel(const std::string& w, int end) {
  for (int i = 0; i < end; ++i)
    if (!is_cons(w, i)) return true;
  return false;
}

bool double_cons(const std::string& w, int end) {
  return end >= 2 && w[end - 1] == w[end - 2] && is_cons(w, end - 1);
}

// Stem ends consonant-vowel-consonant where the final consonant is not w, x
// or y; used to restore a final e on short stems.
bool cvc(const std::string& w, int end) {
  if (end < 3) return false;
  if (!is_cons(w, end - 3) || is_cons(w, end - 2) || !is_cons(w, end - 1))
    return false;
  char c = w[end - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suf) {
  return w.size() >= suf.size() &&
         w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Applies the longest matching rule of the table when m(stem) > min_measure.
void apply_table(std::string& w, std::span<const Rule> rules, int min_measure) {
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (ends_with(w, r.suffix) &&
        (best == nullptr || r.suffix.size() > best->suffix.size()))
      best = &r;
  }
  if (best == nullptr) return;
  int stem_end = static_cast<int>(w.size() - best->suffix.size());
  if (measure(w, stem_end) > min_measure) {
    w.resize(stem_end);
    w += best->replacement;
  }
}

}  // namespace

std::string porter_stem(std::string w) {
  if (w.size() <= 2) return w;

  // Step 1a: plurals.
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (!ends_with(w, "ss") && ends_with(w, "s")) {
    w.resize(w.size() - 1);
  }

  // Step 1b: -eed, -ed, -ing.
  if (ends_with(w, "eed")) {
    if (measure(w, static_cast<int>(w.size() - 3)) > 0) w.resize(w.size() - 1);
  } else {
    bool removed = false;
    if (ends_with(w, "ed") && has_vowel(w, static_cast<int>(w.size() - 2))) {
      w.resize(w.size() - 2);
      removed = true;
    } else if (ends_with(w, "ing") &&
               has_vowel(w, static_cast<int>(w.size() - 3))) {
      w.resize(w.size() - 3);
      removed = true;
    }
    if (removed) {
      int end = static_cast<int>(w.size());
      if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
      } else if (double_cons(w, end) && !ends_with(w, "l") &&
                 !ends_with(w, "s") && !ends_with(w, "z")) {
        w.resize(w.size() - 1);
      } else if (measure(w, end) == 1 && cvc(w, end)) {
        w += 'e';
      }
    }
  }

  // Step 1c: terminal y after a vowel.
  if (ends_with(w, "y") && has_vowel(w, static_cast<int>(w.size() - 1)))
    w.back() = 'i';

  static constexpr Rule kStep2[] = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"},
  };
  apply_table(w, kStep2, 0);

  static constexpr Rule kStep3[] = {
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""},
  };
  apply_table(w, kStep3, 0);

  // Step 4: -ion only after s or t; the rest are plain deletions with m > 1.
  {
    static constexpr Rule kStep4[] = {
        {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
        {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""},
        {"ment", ""}, {"ent", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
        {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""},
    };
    const Rule* best = nullptr;
    for (const Rule& r : kStep4) {
      if (ends_with(w, r.suffix) &&
          (best == nullptr || r.suffix.size() > best->suffix.size()))
        best = &r;
    }
    bool ion = ends_with(w, "ion") &&
               (best == nullptr || best->suffix.size() < 3);
    if (ion) {
      int stem_end = static_cast<int>(w.size() - 3);
      if (stem_end >= 1 &&
          (w[stem_end - 1] == 's' || w[stem_end - 1] == 't') &&
          measure(w, stem_end) > 1)
        w.resize(stem_end);
    } else if (best != nullptr) {
      int stem_end = static_cast<int>(w.size() - best->suffix.size());
      if (measure(w, stem_end) > 1) w.resize(stem_end);
    }
  }

  // Step 5a: final e.
  if (ends_with(w, "e")) {
    int stem_end = static_cast<int>(w.size() - 1);
    int m = measure(w, stem_end);
    if (m > 1 || (m == 1 && !cvc(w, stem_end))) w.resize(w.size() - 1);
  }

  // Step 5b: -ll with m > 1.
  if (double_cons(w, static_cast<int>(w.size())) && ends_with(w, "l") &&
      measure(w, static_cast<int>(w.size() - 1)) > 1)
    w.resize(w.size() - 1);

  return w;
}

}  // namespace semdist
