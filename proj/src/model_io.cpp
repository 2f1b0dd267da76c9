#include <cmath>
#include <sstream>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"
#include "echelon/pipeline.hpp"

namespace echelon::model {

namespace {

constexpr const char* kMagic = "echelon-model v1";

void write_doubles(std::ostringstream& out, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << ioutil::fmt_exact(v[i]);
    out << ((i % 8 == 7 || i + 1 == v.size()) ? '\n' : ' ');
  }
}

// Sequential reader over the model file's lines.
class LineReader {
 public:
  explicit LineReader(std::vector<std::string> lines)
      : lines_(std::move(lines)) {}

  const std::string& next(const char* what) {
    while (pos_ < lines_.size()) {
      const std::string& l = lines_[pos_];
      if (l.empty() || l[0] == '#') {
        ++pos_;
        continue;
      }
      ++pos_;
      return l;
    }
    throw ParseError(std::string("model file ended early, expected ") + what);
  }

  long line_no() const { return static_cast<long>(pos_); }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

std::string expect_prefix(const std::string& line, const std::string& prefix,
                          long line_no) {
  if (line.compare(0, prefix.size(), prefix) != 0)
    throw ParseError("model file: expected '" + prefix + "', got '" + line + "'",
                     line_no);
  return line.substr(prefix.size());
}

// Parses "k1=v1 k2=v2 ..." in fixed order.
std::vector<std::string> kv_values(const std::string& rest,
                                   const std::vector<std::string>& keys,
                                   long line_no) {
  std::istringstream in(rest);
  std::vector<std::string> out;
  std::string tok;
  for (const auto& key : keys) {
    if (!(in >> tok) || tok.compare(0, key.size() + 1, key + "=") != 0)
      throw ParseError("model file: expected '" + key + "=...'", line_no);
    out.push_back(tok.substr(key.size() + 1));
  }
  return out;
}

std::vector<double> read_doubles(LineReader& r, std::size_t count,
                                 const char* what) {
  std::vector<double> v;
  v.reserve(count);
  while (v.size() < count) {
    std::istringstream in(r.next(what));
    std::string tok;
    while (in >> tok) {
      if (v.size() >= count)
        throw ParseError(std::string("model file: surplus values in ") + what,
                         r.line_no());
      v.push_back(ioutil::parse_double(tok, what));
    }
  }
  return v;
}

}  // namespace

void save_model(const TrainedModel& m, const std::string& path,
                const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << kMagic << "\n";
  out << "name " << m.candidate.name << "\n";
  out << "algorithm " << algorithm_name(m.candidate.algorithm) << "\n";
  const auto& f = m.candidate.features;
  out << "features tfidf=" << (f.use_tfidf ? 1 : 0) << " n_max=" << f.n_max
      << " min_df=" << f.min_df << " dict=" << (f.use_dict ? 1 : 0) << "\n";
  out << "feature_dim " << m.feature_dim << "\n";

  out << "vocab " << m.vocab.size() << " " << m.vocab.doc_count << " "
      << m.vocab.n_max << "\n";
  for (std::size_t i = 0; i < m.vocab.size(); ++i)
    out << m.vocab.terms[i] << '\t' << m.vocab.df[i] << '\t'
        << ioutil::fmt_exact(m.vocab.idf[i]) << "\n";

  if (m.dict) {
    out << "dict " << m.dict->categories.size() << "\n";
    for (const auto& c : m.dict->categories) {
      out << "category " << c.name << " " << c.exact.size() << " "
          << c.prefixes.size() << "\n";
      for (const auto& w : c.exact) out << "e " << w << "\n";
      for (const auto& p : c.prefixes) out << "p " << p << "\n";
    }
  }

  out << "background " << m.background.size() << "\n";
  write_doubles(out, m.background);

  for (labels::Scale s : labels::kScales) {
    const auto& sm = m.scales[static_cast<std::size_t>(s)];
    out << "scale " << labels::scale_name(s) << "\n";
    out << "boxcox lambda=" << ioutil::fmt_exact(sm.boxcox.lambda)
        << " shift=" << ioutil::fmt_exact(sm.boxcox.shift)
        << " loglik=" << ioutil::fmt_exact(sm.boxcox.log_likelihood) << "\n";
    if (sm.algorithm == Algorithm::Svr) {
      if (!sm.svr) throw ValidationError("save_model: missing svr weights");
      const auto& p = sm.svr->params;
      out << "svr c=" << ioutil::fmt_exact(p.c)
          << " epsilon=" << ioutil::fmt_exact(p.epsilon)
          << " tol=" << ioutil::fmt_exact(p.tol)
          << " max_passes=" << p.max_passes << " seed=" << p.seed << "\n";
      out << "svr_bias " << ioutil::fmt_exact(sm.svr->bias) << "\n";
      std::size_t nnz = 0;
      for (double w : sm.svr->weights)
        if (w != 0.0) ++nnz;
      out << "svr_weights " << nnz << "\n";
      std::size_t written = 0;
      for (std::size_t j = 0; j < sm.svr->weights.size(); ++j) {
        if (sm.svr->weights[j] == 0.0) continue;
        out << j << ':' << ioutil::fmt_exact(sm.svr->weights[j]);
        ++written;
        out << ((written % 8 == 0 || written == nnz) ? '\n' : ' ');
      }
    } else {
      if (!sm.mlp) throw ValidationError("save_model: missing mlp weights");
      const auto& mm = *sm.mlp;
      out << "mlp h1=" << mm.config.hidden[0] << " h2=" << mm.config.hidden[1]
          << " epochs=" << mm.config.epochs
          << " lr=" << ioutil::fmt_exact(mm.config.learning_rate)
          << " seed=" << mm.config.seed << "\n";
      out << "mlp_b3 " << ioutil::fmt_exact(mm.b3) << "\n";
      auto block = [&](const char* tag, const std::vector<double>& v) {
        out << tag << " " << v.size() << "\n";
        write_doubles(out, v);
      };
      block("mlp_w1", mm.w1);
      block("mlp_b1", mm.b1);
      block("mlp_w2", mm.w2);
      block("mlp_b2", mm.b2);
      block("mlp_w3", mm.w3);
    }
  }
  out << "end\n";
  ioutil::write_file(path, out.str());
}

TrainedModel load_model(const std::string& path) {
  LineReader r(ioutil::split_lines(ioutil::read_file(path)));

  if (r.next("magic") != kMagic)
    throw ParseError("'" + path + "' is not a model file (bad magic)");

  TrainedModel m;
  m.candidate.name = expect_prefix(r.next("name"), "name ", r.line_no());
  const std::string algo =
      expect_prefix(r.next("algorithm"), "algorithm ", r.line_no());
  if (algo == "svr")
    m.candidate.algorithm = Algorithm::Svr;
  else if (algo == "mlp")
    m.candidate.algorithm = Algorithm::Mlp;
  else
    throw ParseError("model file: unknown algorithm '" + algo + "'");

  {
    const auto vals = kv_values(
        expect_prefix(r.next("features"), "features ", r.line_no()),
        {"tfidf", "n_max", "min_df", "dict"}, r.line_no());
    m.candidate.features.use_tfidf = vals[0] == "1";
    m.candidate.features.n_max =
        static_cast<int>(ioutil::parse_long(vals[1], "n_max"));
    m.candidate.features.min_df = ioutil::parse_long(vals[2], "min_df");
    m.candidate.features.use_dict = vals[3] == "1";
  }
  m.feature_dim = static_cast<std::size_t>(ioutil::parse_long(
      expect_prefix(r.next("feature_dim"), "feature_dim ", r.line_no()),
      "feature_dim"));

  {
    std::istringstream in(
        expect_prefix(r.next("vocab"), "vocab ", r.line_no()));
    long count = 0;
    if (!(in >> count >> m.vocab.doc_count >> m.vocab.n_max))
      throw ParseError("model file: bad vocab line", r.line_no());
    m.vocab.terms.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      const std::string& line = r.next("vocab entry");
      const auto t1 = line.find('\t');
      const auto t2 = line.find('\t', t1 == std::string::npos ? 0 : t1 + 1);
      if (t1 == std::string::npos || t2 == std::string::npos)
        throw ParseError("model file: bad vocab entry", r.line_no());
      m.vocab.terms.push_back(line.substr(0, t1));
      m.vocab.df.push_back(
          ioutil::parse_long(line.substr(t1 + 1, t2 - t1 - 1), "df"));
      m.vocab.idf.push_back(ioutil::parse_double(line.substr(t2 + 1), "idf"));
    }
    for (std::size_t i = 1; i < m.vocab.terms.size(); ++i)
      if (!(m.vocab.terms[i - 1] < m.vocab.terms[i]))
        throw ParseError("model file: vocabulary not sorted");
  }

  if (m.candidate.features.use_dict) {
    const long ncat = ioutil::parse_long(
        expect_prefix(r.next("dict"), "dict ", r.line_no()), "dict count");
    features::CategoryDictionary dict;
    for (long c = 0; c < ncat; ++c) {
      std::istringstream in(
          expect_prefix(r.next("category"), "category ", r.line_no()));
      features::CategoryDictionary::Category cat;
      long ne = 0, np = 0;
      if (!(in >> cat.name >> ne >> np))
        throw ParseError("model file: bad category line", r.line_no());
      for (long i = 0; i < ne; ++i)
        cat.exact.push_back(
            expect_prefix(r.next("exact pattern"), "e ", r.line_no()));
      for (long i = 0; i < np; ++i)
        cat.prefixes.push_back(
            expect_prefix(r.next("prefix pattern"), "p ", r.line_no()));
      dict.categories.push_back(std::move(cat));
    }
    m.dict = std::move(dict);
  }

  {
    const auto count = static_cast<std::size_t>(ioutil::parse_long(
        expect_prefix(r.next("background"), "background ", r.line_no()),
        "background size"));
    m.background = read_doubles(r, count, "background");
  }

  for (labels::Scale s : labels::kScales) {
    const std::string scale_line =
        expect_prefix(r.next("scale"), "scale ", r.line_no());
    if (scale_line != labels::scale_name(s))
      throw ParseError("model file: expected scale " +
                       std::string(labels::scale_name(s)) + ", got '" +
                       scale_line + "'");
    ScaleModel& sm = m.scales[static_cast<std::size_t>(s)];
    sm.algorithm = m.candidate.algorithm;
    {
      const auto vals = kv_values(
          expect_prefix(r.next("boxcox"), "boxcox ", r.line_no()),
          {"lambda", "shift", "loglik"}, r.line_no());
      sm.boxcox.lambda = ioutil::parse_double(vals[0], "lambda");
      sm.boxcox.shift = ioutil::parse_double(vals[1], "shift");
      sm.boxcox.log_likelihood = ioutil::parse_double(vals[2], "loglik");
      sm.boxcox.fitted = true;
    }
    if (sm.algorithm == Algorithm::Svr) {
      SvrModel svr;
      {
        const auto vals =
            kv_values(expect_prefix(r.next("svr"), "svr ", r.line_no()),
                      {"c", "epsilon", "tol", "max_passes", "seed"},
                      r.line_no());
        svr.params.c = ioutil::parse_double(vals[0], "c");
        svr.params.epsilon = ioutil::parse_double(vals[1], "epsilon");
        svr.params.tol = ioutil::parse_double(vals[2], "tol");
        svr.params.max_passes =
            static_cast<int>(ioutil::parse_long(vals[3], "max_passes"));
        svr.params.seed = static_cast<std::uint64_t>(
            ioutil::parse_long(vals[4], "seed"));
      }
      svr.bias = ioutil::parse_double(
          expect_prefix(r.next("svr_bias"), "svr_bias ", r.line_no()),
          "svr_bias");
      const long nnz = ioutil::parse_long(
          expect_prefix(r.next("svr_weights"), "svr_weights ", r.line_no()),
          "svr_weights count");
      svr.weights.assign(m.feature_dim, 0.0);
      long seen = 0;
      while (seen < nnz) {
        std::istringstream in(r.next("svr weight entry"));
        std::string tok;
        while (in >> tok) {
          const auto colon = tok.find(':');
          if (colon == std::string::npos)
            throw ParseError("model file: bad weight entry '" + tok + "'",
                             r.line_no());
          const long idx = ioutil::parse_long(tok.substr(0, colon), "index");
          if (idx < 0 || static_cast<std::size_t>(idx) >= m.feature_dim)
            throw ParseError("model file: weight index out of range",
                             r.line_no());
          svr.weights[static_cast<std::size_t>(idx)] =
              ioutil::parse_double(tok.substr(colon + 1), "weight");
          ++seen;
        }
      }
      sm.svr = std::move(svr);
    } else {
      MlpModel mlp;
      {
        const auto vals =
            kv_values(expect_prefix(r.next("mlp"), "mlp ", r.line_no()),
                      {"h1", "h2", "epochs", "lr", "seed"}, r.line_no());
        mlp.config.hidden[0] =
            static_cast<int>(ioutil::parse_long(vals[0], "h1"));
        mlp.config.hidden[1] =
            static_cast<int>(ioutil::parse_long(vals[1], "h2"));
        mlp.config.epochs =
            static_cast<int>(ioutil::parse_long(vals[2], "epochs"));
        mlp.config.learning_rate = ioutil::parse_double(vals[3], "lr");
        mlp.config.seed =
            static_cast<std::uint64_t>(ioutil::parse_long(vals[4], "seed"));
      }
      mlp.input_dim = m.feature_dim;
      mlp.b3 = ioutil::parse_double(
          expect_prefix(r.next("mlp_b3"), "mlp_b3 ", r.line_no()), "mlp_b3");
      auto block = [&](const char* tag, std::vector<double>& v,
                       std::size_t expected) {
        const auto rest = expect_prefix(r.next(tag), std::string(tag) + " ",
                                        r.line_no());
        const auto count = static_cast<std::size_t>(
            ioutil::parse_long(rest, "block size"));
        if (count != expected)
          throw ParseError(std::string("model file: ") + tag +
                           " size mismatch");
        v = read_doubles(r, count, tag);
      };
      const auto h1 = static_cast<std::size_t>(mlp.config.hidden[0]);
      const auto h2 = static_cast<std::size_t>(mlp.config.hidden[1]);
      block("mlp_w1", mlp.w1, m.feature_dim * h1);
      block("mlp_b1", mlp.b1, h1);
      block("mlp_w2", mlp.w2, h1 * h2);
      block("mlp_b2", mlp.b2, h2);
      block("mlp_w3", mlp.w3, h2);
      sm.mlp = std::move(mlp);
    }
  }
  if (r.next("end") != "end")
    throw ParseError("model file: missing end marker");

  const std::size_t expect_dim =
      m.vocab.size() + (m.dict ? m.dict->categories.size() + 1 : 0);
  if (expect_dim != m.feature_dim)
    throw ParseError("model file: feature_dim inconsistent with contents");
  return m;
}

}  // namespace echelon::model
