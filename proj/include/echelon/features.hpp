#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace echelon::features {

// Lowercases, splits on non-alphanumeric characters, keeps word-internal
// apostrophes ("we've" stays one token), drops standalone punctuation.
std::vector<std::string> tokenize(std::string_view text);

// A document is a list of token segments. N-grams never cross a segment
// boundary, so callers that care (speaker turns) pass one segment per turn.
struct TokenizedDoc {
  std::vector<std::vector<std::string>> segments;

  TokenizedDoc() = default;
  explicit TokenizedDoc(std::vector<std::string> tokens) {
    segments.push_back(std::move(tokens));
  }
  explicit TokenizedDoc(std::vector<std::vector<std::string>> segs)
      : segments(std::move(segs)) {}

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.size();
    return n;
  }
};

struct Vocabulary {
  std::vector<std::string> terms;  // byte-lexicographic order; index = column
  std::vector<long> df;
  std::vector<double> idf;
  int n_max = 1;
  long doc_count = 0;

  std::size_t size() const { return terms.size(); }
  // Binary search; -1 when the term is out of vocabulary.
  long index_of(const std::string& term) const;
};

struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<long, double>> entries;  // index-sorted, non-zero

  double norm() const;
  double dot_dense(const std::vector<double>& w) const;
};

// Document frequencies over n-grams (n = 1..n_max), idf with add-one
// smoothing: idf(t) = ln((1 + N) / (1 + df(t))) + 1. Terms below min_df are
// dropped. Throws ValidationError when no document has a token.
Vocabulary fit_tfidf(const std::vector<TokenizedDoc>& docs, int n_max,
                     long min_df);

// Term-count times idf, then L2-normalized. Out-of-vocabulary terms are
// ignored; a document with no in-vocabulary term maps to the zero vector.
SparseVector transform_tfidf(const Vocabulary& vocab, const TokenizedDoc& doc);

// Closed-vocabulary category dictionary: per category a set of exact words
// plus stem prefixes ("famil*" matches every token starting with "famil").
struct CategoryDictionary {
  struct Category {
    std::string name;
    std::vector<std::string> exact;     // sorted
    std::vector<std::string> prefixes;  // sorted
  };
  std::vector<Category> categories;  // file order

  static CategoryDictionary parse(const std::string& text);
  static CategoryDictionary load(const std::string& path);
};

// One fraction of matching tokens per category (file order), then the total
// token count as the last element. Zero tokens give zero fractions.
std::vector<double> dict_features(const CategoryDictionary& dict,
                                  const TokenizedDoc& doc);

}  // namespace echelon::features
