#include "echelon/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"

namespace echelon::cli {

namespace {

// Right-aligns every column but the first; pads with spaces.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::size_t cols = 0;
  for (const auto& r : rows) cols = std::max(cols, r.size());
  std::vector<std::size_t> width(cols, 0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c)
      width[c] = std::max(width[c], r[c].size());
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) line += "  ";
      std::size_t pad = width[c] - r[c].size();
      if (c == 0) {
        line += r[c];
        if (c + 1 < r.size()) line.append(pad, ' ');
      } else {
        line.append(pad, ' ');
        line += r[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

std::string f4(double v) {
  if (std::isnan(v)) return "nan";
  return ioutil::fmt_fixed(v, 4);
}

std::string f2(double v) {
  if (std::isnan(v)) return "nan";
  return ioutil::fmt_fixed(v, 2);
}

std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  return ioutil::fmt_exact(v);
}

std::string stars_mark(int stars) { return std::string(stars, '*'); }

const char* part_name(int p) {
  switch (p) {
    case 0: return "train";
    case 1: return "val";
    default: return "test";
  }
}

bool is_fe_term(const std::string& name) {
  return name.rfind("ind_", 0) == 0 || name.rfind("q_", 0) == 0;
}

std::vector<std::vector<std::string>> unit_rows(const corpus::CorpusStats& s) {
  auto row = [](const std::string& name, const corpus::UnitStats& u) {
    return std::vector<std::string>{name, std::to_string(u.sum),
                                    ioutil::fmt_fixed(u.mean, 2),
                                    std::to_string(u.min),
                                    std::to_string(u.max)};
  };
  return {row("utterances", s.utterances), row("sentences", s.sentences),
          row("tokens", s.tokens)};
}

}  // namespace

std::string corpus_stats_text(const corpus::CorpusStats& s) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"documents", std::to_string(s.documents)});
  std::string out = render_table(rows);
  out += '\n';
  rows.clear();
  rows.push_back({"unit", "total", "mean/doc", "min", "max"});
  for (auto& r : unit_rows(s)) rows.push_back(r);
  out += render_table(rows);
  return out;
}

std::string corpus_stats_csv(const corpus::CorpusStats& s) {
  std::string out = "unit,total,mean_per_doc,min,max\n";
  out += "documents," + std::to_string(s.documents) + ",,,\n";
  auto line = [&out](const char* name, const corpus::UnitStats& u) {
    out += std::string(name) + "," + std::to_string(u.sum) + "," +
           csv_num(u.mean) + "," + std::to_string(u.min) + "," +
           std::to_string(u.max) + "\n";
  };
  line("utterances", s.utterances);
  line("sentences", s.sentences);
  line("tokens", s.tokens);
  return out;
}

std::string label_summary_text(const labels::LabelSummary& s, long excluded) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"scale", "mean", "sd", "skew", "histogram"});
  for (int i = 0; i < 4; ++i) {
    const auto& sc = s.scales[static_cast<std::size_t>(i)];
    std::string hist;
    for (std::size_t b = 0; b < sc.histogram.size(); ++b) {
      if (b) hist += ' ';
      hist += std::to_string(sc.histogram[b]);
    }
    rows.push_back({labels::scale_label(static_cast<labels::Scale>(i)),
                    f4(sc.mean), f4(sc.stddev), f4(sc.skewness), hist});
  }
  std::string out = "entities: " + std::to_string(s.n);
  if (excluded > 0)
    out += "  (excluded below vote minimum: " + std::to_string(excluded) + ")";
  out += "\n\n";
  out += render_table(rows);
  return out;
}

std::string label_summary_csv(const labels::LabelSummary& s) {
  std::string out = "scale,n,mean,sd,skew";
  for (int b = 0; b < 10; ++b) out += ",bin" + std::to_string(b);
  out += '\n';
  for (int i = 0; i < 4; ++i) {
    const auto& sc = s.scales[static_cast<std::size_t>(i)];
    out += labels::scale_name(static_cast<labels::Scale>(i));
    out += "," + std::to_string(s.n) + "," + csv_num(sc.mean) + "," +
           csv_num(sc.stddev) + "," + csv_num(sc.skewness);
    for (long c : sc.histogram) out += "," + std::to_string(c);
    out += '\n';
  }
  return out;
}

std::string cross_correlation_csv(const labels::CorrMatrix& m) {
  static const char* kFactors[5] = {"o", "c", "e", "a", "n"};
  std::string out = "scale";
  for (auto* f : kFactors) out += std::string(",") + f;
  out += '\n';
  for (int i = 0; i < 4; ++i) {
    out += labels::scale_name(static_cast<labels::Scale>(i));
    for (int j = 0; j < 5; ++j)
      out += "," + csv_num(m[static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(j)]);
    out += '\n';
  }
  return out;
}

std::string agreement_text(const agreement::AgreementReport& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"scale", "p_a", "kappa_bp", "gamma", "alpha"});
  for (int i = 0; i < 4; ++i) {
    const auto& a = r.scales[static_cast<std::size_t>(i)];
    std::string alpha = f4(a.alpha);
    if (a.alpha_degenerate) alpha += " (degenerate)";
    rows.push_back({labels::scale_label(static_cast<labels::Scale>(i)),
                    f4(a.p_a), f4(a.kappa_bp), f4(a.gamma), alpha});
  }
  return render_table(rows);
}

std::string agreement_csv(const agreement::AgreementReport& r) {
  std::string out =
      "scale,p_a,kappa_bp,gamma,alpha,alpha_degenerate,excluded_subjects\n";
  for (int i = 0; i < 4; ++i) {
    const auto& a = r.scales[static_cast<std::size_t>(i)];
    out += labels::scale_name(static_cast<labels::Scale>(i));
    out += "," + csv_num(a.p_a) + "," + csv_num(a.kappa_bp) + "," +
           csv_num(a.gamma) + "," + csv_num(a.alpha) + "," +
           (a.alpha_degenerate ? "1" : "0") + "," +
           std::to_string(a.excluded_subjects) + "\n";
  }
  return out;
}

std::string split_manifest_csv(const std::vector<std::string>& call_ids,
                               const std::vector<std::string>& groups,
                               const std::vector<int>& parts) {
  if (call_ids.size() != groups.size() || call_ids.size() != parts.size())
    throw ValidationError("split manifest: column length mismatch");
  std::string out = "call_id,ceo,part\n";
  for (std::size_t i = 0; i < call_ids.size(); ++i)
    out += call_ids[i] + "," + groups[i] + "," + part_name(parts[i]) + "\n";
  return out;
}

std::string train_summary_text(const model::TrainedModel& m) {
  std::string out;
  out += "candidate: " + m.candidate.name + "\n";
  out += "algorithm: " +
         std::string(model::algorithm_name(m.candidate.algorithm)) + "\n";
  out += "features: " + std::to_string(m.feature_dim);
  if (m.candidate.features.use_tfidf)
    out += "  (vocabulary " + std::to_string(m.vocab.terms.size()) +
           ", n_max " + std::to_string(m.candidate.features.n_max) + ")";
  out += "\n\n";
  std::vector<std::vector<std::string>> rows;
  if (m.candidate.algorithm == model::Algorithm::Svr) {
    rows.push_back({"scale", "lambda", "passes", "converged", "objective"});
    for (int i = 0; i < 4; ++i) {
      const auto& sc = m.scales[static_cast<std::size_t>(i)];
      const auto& d = sc.svr->diag;
      rows.push_back({labels::scale_label(static_cast<labels::Scale>(i)),
                      f4(sc.boxcox.lambda), std::to_string(d.passes),
                      d.converged ? "yes" : "no", f4(d.final_objective)});
    }
  } else {
    rows.push_back({"scale", "lambda", "epochs", "train_mae"});
    for (int i = 0; i < 4; ++i) {
      const auto& sc = m.scales[static_cast<std::size_t>(i)];
      const auto& mae = sc.mlp->epoch_mae;
      rows.push_back({labels::scale_label(static_cast<labels::Scale>(i)),
                      f4(sc.boxcox.lambda), std::to_string(mae.size()),
                      mae.empty() ? "nan" : f4(mae.back())});
    }
  }
  out += render_table(rows);
  return out;
}

std::string eval_text(const std::array<model::EvalReport, 4>& per_scale,
                      const std::string& space, long n_docs) {
  std::string out = "space: " + space + "  documents: " +
                    std::to_string(n_docs) + "\n\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"scale", "r", "rho", "tau", "mae"});
  for (int i = 0; i < 4; ++i) {
    const auto& e = per_scale[static_cast<std::size_t>(i)];
    rows.push_back({labels::scale_label(static_cast<labels::Scale>(i)),
                    f4(e.pearson_r), f4(e.spearman_rho), f4(e.kendall_tau),
                    f4(e.mae)});
  }
  out += render_table(rows);
  return out;
}

std::string eval_csv(const std::array<model::EvalReport, 4>& per_scale,
                     const std::string& space, long n_docs) {
  std::string out = "scale,space,n,r,rho,tau,mae\n";
  for (int i = 0; i < 4; ++i) {
    const auto& e = per_scale[static_cast<std::size_t>(i)];
    out += labels::scale_name(static_cast<labels::Scale>(i));
    out += "," + space + "," + std::to_string(n_docs) + "," +
           csv_num(e.pearson_r) + "," + csv_num(e.spearman_rho) + "," +
           csv_num(e.kendall_tau) + "," + csv_num(e.mae) + "\n";
  }
  return out;
}

std::string predictions_csv(const std::vector<std::string>& call_ids,
                            const std::vector<std::string>& ceos,
                            const std::vector<labels::MbtiVector>& preds) {
  if (call_ids.size() != ceos.size() || call_ids.size() != preds.size())
    throw ValidationError("predictions: column length mismatch");
  std::string out = "call_id,ceo,ei,sn,tf,jp\n";
  for (std::size_t i = 0; i < call_ids.size(); ++i) {
    out += call_ids[i] + "," + ceos[i];
    for (int s = 0; s < 4; ++s)
      out += "," + ioutil::fmt_exact(preds[i].get(static_cast<labels::Scale>(s)));
    out += '\n';
  }
  return out;
}

std::map<std::string, labels::MbtiVector> read_predictions_csv(
    const std::string& path) {
  auto rows = ioutil::read_csv(path, "call_id,ceo,ei,sn,tf,jp");
  std::map<std::string, labels::MbtiVector> out;
  for (const auto& r : rows) {
    labels::MbtiVector v;
    for (int s = 0; s < 4; ++s)
      v.set(static_cast<labels::Scale>(s),
            ioutil::parse_double(r[static_cast<std::size_t>(2 + s)], "prediction"));
    if (!out.emplace(r[0], v).second)
      throw ValidationError("predictions: duplicate call_id " + r[0] + " in " +
                            path);
  }
  return out;
}

namespace {

std::string coef_cell(const econ::Coefficient& c) {
  return f4(c.beta) + stars_mark(c.stars) + " (" + f2(c.t) + ")";
}

const econ::Coefficient* find_coef(const econ::OlsReport& r,
                                   const std::string& name) {
  for (const auto& c : r.coefficients)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

std::string risk_text(const econ::RiskRegressionResult& r) {
  // Row order follows the joint model when present so the trait block lands
  // after the financial controls, matching the design matrix order.
  const econ::OlsReport& order_src = r.joint ? *r.joint : r.baseline;
  std::vector<std::vector<std::string>> rows;
  rows.push_back(r.joint
                     ? std::vector<std::string>{"term", "baseline", "joint"}
                     : std::vector<std::string>{"term", "baseline"});
  for (const auto& c : order_src.coefficients) {
    if (c.name == "intercept" || is_fe_term(c.name)) continue;
    std::vector<std::string> row{c.name};
    const econ::Coefficient* b = find_coef(r.baseline, c.name);
    row.push_back(b ? coef_cell(*b) : "");
    if (r.joint) {
      const econ::Coefficient* j = find_coef(*r.joint, c.name);
      row.push_back(j ? coef_cell(*j) : "");
    }
    rows.push_back(row);
  }
  auto footer = [&](const std::string& name, auto get) {
    std::vector<std::string> row{name, get(r.baseline, r.baseline_design)};
    if (r.joint) row.push_back(get(*r.joint, *r.joint_design));
    rows.push_back(row);
  };
  footer("industry FE", [](const econ::OlsReport&, const econ::DesignMatrix& d) {
    return d.industry_ref.empty() ? std::string("no") : std::string("yes");
  });
  footer("time FE", [](const econ::OlsReport&, const econ::DesignMatrix& d) {
    return d.period_ref.empty() ? std::string("no") : std::string("yes");
  });
  footer("n", [](const econ::OlsReport& o, const econ::DesignMatrix&) {
    return std::to_string(o.n);
  });
  footer("R2", [](const econ::OlsReport& o, const econ::DesignMatrix&) {
    return f4(o.r2);
  });
  footer("adj R2", [](const econ::OlsReport& o, const econ::DesignMatrix&) {
    return f4(o.adj_r2);
  });
  std::string out = render_table(rows);
  out += "\nstars: * p<=.05  ** p<=.01  *** p<=.001  (t statistics in"
         " parentheses)\n";
  if (r.baseline_design.rows_dropped_btm > 0)
    out += "rows dropped for non-positive book-to-market: " +
           std::to_string(r.baseline_design.rows_dropped_btm) + "\n";
  for (const auto& name : r.baseline_design.dropped_zero_variance)
    out += "dropped zero-variance column: " + name + "\n";
  return out;
}

std::string risk_csv(const econ::RiskRegressionResult& r) {
  std::string out = "model,term,beta,se,t,p,stars\n";
  auto dump = [&out](const std::string& model, const econ::OlsReport& o) {
    for (const auto& c : o.coefficients) {
      out += model + "," + c.name + "," + csv_num(c.beta) + "," +
             csv_num(c.se) + "," + csv_num(c.t) + "," + csv_num(c.p) + "," +
             std::to_string(c.stars) + "\n";
    }
    out += model + ",_n," + std::to_string(o.n) + ",,,,\n";
    out += model + ",_r2," + csv_num(o.r2) + ",,,,\n";
    out += model + ",_adj_r2," + csv_num(o.adj_r2) + ",,,,\n";
    out += model + ",_condition," + csv_num(o.condition) + ",,,,\n";
  };
  dump("baseline", r.baseline);
  if (r.joint) dump("joint", *r.joint);
  return out;
}

std::string vif_text(const std::vector<econ::VifEntry>& v) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"term", "vif"});
  for (const auto& e : v)
    rows.push_back({e.name, e.infinite ? "inf" : f2(e.vif)});
  return render_table(rows);
}

std::string vif_csv(const std::vector<econ::VifEntry>& v) {
  std::string out = "term,vif,infinite\n";
  for (const auto& e : v)
    out += e.name + "," + (e.infinite ? "" : csv_num(e.vif)) + "," +
           (e.infinite ? "1" : "0") + "\n";
  return out;
}

namespace {

std::vector<std::size_t> top_contributions(const model::LinearExplanation& e,
                                           std::size_t top) {
  std::vector<std::size_t> idx(e.contributions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    double fa = std::fabs(e.contributions[a]);
    double fb = std::fabs(e.contributions[b]);
    if (fa != fb) return fa > fb;
    return a < b;
  });
  if (idx.size() > top) idx.resize(top);
  return idx;
}

}  // namespace

std::string explain_text(const model::LinearExplanation& e,
                         const std::vector<std::string>& feature_names,
                         const std::string& call_id, const std::string& scale,
                         std::size_t top) {
  if (feature_names.size() != e.contributions.size())
    throw ValidationError("explain: feature name count mismatch");
  std::string out = "document: " + call_id + "  scale: " + scale + "\n";
  out += "baseline: " + f4(e.baseline) +
         "  prediction (transformed): " + f4(e.prediction) + "\n\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"feature", "contribution"});
  for (std::size_t i : top_contributions(e, top))
    rows.push_back({feature_names[i], f4(e.contributions[i])});
  out += render_table(rows);
  return out;
}

std::string explain_csv(const model::LinearExplanation& e,
                        const std::vector<std::string>& feature_names,
                        std::size_t top) {
  if (feature_names.size() != e.contributions.size())
    throw ValidationError("explain: feature name count mismatch");
  std::string out = "feature,contribution\n";
  for (std::size_t i : top_contributions(e, top))
    out += feature_names[i] + "," + csv_num(e.contributions[i]) + "\n";
  return out;
}

}  // namespace echelon::cli
