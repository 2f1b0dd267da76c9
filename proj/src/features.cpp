#include "echelon/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"

namespace echelon::features {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '\'' && !cur.empty() && i + 1 < text.size() &&
               std::isalnum(static_cast<unsigned char>(text[i + 1]))) {
      cur.push_back('\'');
    } else {
      flush();
    }
  }
  flush();
  return out;
}

long Vocabulary::index_of(const std::string& term) const {
  const auto it = std::lower_bound(terms.begin(), terms.end(), term);
  if (it == terms.end() || *it != term) return -1;
  return static_cast<long>(it - terms.begin());
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [i, v] : entries) s += v * v;
  return std::sqrt(s);
}

double SparseVector::dot_dense(const std::vector<double>& w) const {
  double s = 0.0;
  for (const auto& [i, v] : entries) s += v * w[static_cast<std::size_t>(i)];
  return s;
}

namespace {

// Enumerates the document's n-grams (terms joined with single spaces),
// segment by segment.
template <typename Fn>
void for_each_ngram(const TokenizedDoc& doc, int n_max, Fn&& fn) {
  for (const auto& seg : doc.segments) {
    for (std::size_t i = 0; i < seg.size(); ++i) {
      std::string term;
      for (int n = 0; n < n_max && i + static_cast<std::size_t>(n) < seg.size();
           ++n) {
        if (n > 0) term.push_back(' ');
        term += seg[i + static_cast<std::size_t>(n)];
        fn(term);
      }
    }
  }
}

}  // namespace

Vocabulary fit_tfidf(const std::vector<TokenizedDoc>& docs, int n_max,
                     long min_df) {
  if (n_max < 1) throw ValidationError("fit_tfidf: n_max must be at least 1");
  if (min_df < 1) throw ValidationError("fit_tfidf: min_df must be at least 1");
  bool any_tokens = false;
  for (const auto& d : docs)
    if (d.token_count() > 0) any_tokens = true;
  if (!any_tokens)
    throw ValidationError("fit_tfidf: corpus has no non-empty document");

  std::map<std::string, long> df;
  std::set<std::string> seen;
  for (const auto& doc : docs) {
    seen.clear();
    for_each_ngram(doc, n_max,
                   [&](const std::string& t) { seen.insert(t); });
    for (const auto& t : seen) ++df[t];
  }

  Vocabulary v;
  v.n_max = n_max;
  v.doc_count = static_cast<long>(docs.size());
  for (const auto& [term, count] : df) {
    if (count < min_df) continue;
    v.terms.push_back(term);
    v.df.push_back(count);
  }
  v.idf.reserve(v.terms.size());
  for (const long d : v.df)
    v.idf.push_back(std::log((1.0 + static_cast<double>(v.doc_count)) /
                             (1.0 + static_cast<double>(d))) +
                    1.0);
  return v;
}

SparseVector transform_tfidf(const Vocabulary& vocab, const TokenizedDoc& doc) {
  std::map<long, double> counts;
  for_each_ngram(doc, vocab.n_max, [&](const std::string& t) {
    const long idx = vocab.index_of(t);
    if (idx >= 0) counts[idx] += 1.0;
  });

  SparseVector out;
  out.dim = vocab.size();
  out.entries.reserve(counts.size());
  double sq = 0.0;
  for (const auto& [idx, c] : counts) {
    const double w = c * vocab.idf[static_cast<std::size_t>(idx)];
    out.entries.emplace_back(idx, w);
    sq += w * w;
  }
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& [idx, w] : out.entries) w *= inv;
  }
  return out;
}

CategoryDictionary CategoryDictionary::parse(const std::string& text) {
  const auto lines = ioutil::split_lines(text);
  CategoryDictionary dict;
  std::map<long, std::size_t> by_id;

  // Layout: a '%'-delimited header of "id<TAB>name" rows, then entry rows of
  // "pattern<TAB>id[,id...]". '*' is only legal as a trailing stem marker.
  std::size_t i = 0;
  while (i < lines.size() && ioutil::trim(lines[i]).empty()) ++i;
  if (i >= lines.size() || ioutil::trim(lines[i]) != "%")
    throw ParseError("dictionary: expected '%' header open",
                     static_cast<long>(i + 1));
  ++i;
  for (; i < lines.size(); ++i) {
    const std::string t = ioutil::trim(lines[i]);
    if (t.empty()) continue;
    if (t == "%") break;
    const auto tab = t.find('\t');
    if (tab == std::string::npos)
      throw ParseError("dictionary: expected 'id<TAB>name'",
                       static_cast<long>(i + 1));
    const long id = ioutil::parse_long(t.substr(0, tab), "category id");
    const std::string name = ioutil::trim(t.substr(tab + 1));
    if (name.empty())
      throw ParseError("dictionary: empty category name",
                       static_cast<long>(i + 1));
    if (by_id.count(id))
      throw ParseError("dictionary: duplicate category id " +
                           std::to_string(id),
                       static_cast<long>(i + 1));
    by_id[id] = dict.categories.size();
    dict.categories.push_back({name, {}, {}});
  }
  if (i >= lines.size())
    throw ParseError("dictionary: missing '%' header close");
  ++i;

  for (; i < lines.size(); ++i) {
    const std::string t = ioutil::trim(lines[i]);
    if (t.empty()) continue;
    const auto tab = t.find('\t');
    if (tab == std::string::npos)
      throw ParseError("dictionary: expected 'pattern<TAB>ids'",
                       static_cast<long>(i + 1));
    std::string pat = ioutil::trim(t.substr(0, tab));
    if (pat.empty())
      throw ParseError("dictionary: empty pattern", static_cast<long>(i + 1));
    for (char& c : pat) c = static_cast<char>(std::tolower(
                            static_cast<unsigned char>(c)));
    bool stem = false;
    if (pat.back() == '*') {
      stem = true;
      pat.pop_back();
      if (pat.empty())
        throw ParseError("dictionary: bare '*' pattern",
                         static_cast<long>(i + 1));
    }
    if (pat.find('*') != std::string::npos)
      throw ParseError("dictionary: '*' is only legal as a suffix",
                       static_cast<long>(i + 1));
    for (const auto& id_str : ioutil::split_csv(t.substr(tab + 1))) {
      const long id = ioutil::parse_long(id_str, "category id");
      const auto it = by_id.find(id);
      if (it == by_id.end())
        throw ParseError("dictionary: unknown category id " +
                             std::to_string(id),
                         static_cast<long>(i + 1));
      auto& cat = dict.categories[it->second];
      (stem ? cat.prefixes : cat.exact).push_back(pat);
    }
  }

  if (dict.categories.empty())
    throw ValidationError("dictionary: no categories");
  std::size_t patterns = 0;
  for (auto& c : dict.categories) {
    std::sort(c.exact.begin(), c.exact.end());
    c.exact.erase(std::unique(c.exact.begin(), c.exact.end()), c.exact.end());
    std::sort(c.prefixes.begin(), c.prefixes.end());
    c.prefixes.erase(std::unique(c.prefixes.begin(), c.prefixes.end()),
                     c.prefixes.end());
    patterns += c.exact.size() + c.prefixes.size();
  }
  if (patterns == 0) throw ValidationError("dictionary: no patterns");
  return dict;
}

CategoryDictionary CategoryDictionary::load(const std::string& path) {
  return parse(ioutil::read_file(path));
}

std::vector<double> dict_features(const CategoryDictionary& dict,
                                  const TokenizedDoc& doc) {
  if (dict.categories.empty())
    throw ValidationError("dict_features: empty dictionary");
  std::vector<double> out(dict.categories.size() + 1, 0.0);
  const double total = static_cast<double>(doc.token_count());
  out.back() = total;
  if (total == 0.0) return out;

  for (const auto& seg : doc.segments) {
    for (const auto& tok : seg) {
      for (std::size_t c = 0; c < dict.categories.size(); ++c) {
        const auto& cat = dict.categories[c];
        bool hit = std::binary_search(cat.exact.begin(), cat.exact.end(), tok);
        if (!hit) {
          for (const auto& p : cat.prefixes) {
            if (tok.size() >= p.size() && tok.compare(0, p.size(), p) == 0) {
              hit = true;
              break;
            }
          }
        }
        if (hit) out[c] += 1.0;
      }
    }
  }
  for (std::size_t c = 0; c < dict.categories.size(); ++c) out[c] /= total;
  return out;
}

}  // namespace echelon::features
