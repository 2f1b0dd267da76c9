#pragma once

#include <map>
#include <string>
#include <vector>

#include "echelon/agreement.hpp"
#include "echelon/corpus.hpp"
#include "echelon/econ.hpp"
#include "echelon/labels.hpp"
#include "echelon/pipeline.hpp"

namespace echelon::cli {

// All renderers return complete artifact bodies (no provenance header; the
// caller prepends it). Text variants align columns for reading, CSV variants
// are machine-friendly. Both are deterministic for fixed inputs.

std::string corpus_stats_text(const corpus::CorpusStats& s);
std::string corpus_stats_csv(const corpus::CorpusStats& s);

std::string label_summary_text(const labels::LabelSummary& s, long excluded);
std::string label_summary_csv(const labels::LabelSummary& s);
std::string cross_correlation_csv(const labels::CorrMatrix& m);

std::string agreement_text(const agreement::AgreementReport& r);
std::string agreement_csv(const agreement::AgreementReport& r);

std::string split_manifest_csv(
    const std::vector<std::string>& call_ids,
    const std::vector<std::string>& groups,
    const std::vector<int>& parts);  // 0 train, 1 val, 2 test

std::string train_summary_text(const model::TrainedModel& m);

std::string eval_text(const std::array<model::EvalReport, 4>& per_scale,
                      const std::string& space, long n_docs);
std::string eval_csv(const std::array<model::EvalReport, 4>& per_scale,
                     const std::string& space, long n_docs);

std::string predictions_csv(
    const std::vector<std::string>& call_ids,
    const std::vector<std::string>& ceos,
    const std::vector<labels::MbtiVector>& preds);
// Reads the same format back; keyed by call_id for the risk join.
std::map<std::string, labels::MbtiVector> read_predictions_csv(
    const std::string& path);

// Side-by-side coefficient table, financial controls vs controls + traits.
// Fixed-effect dummies are summarized in the footer, not listed per level.
std::string risk_text(const econ::RiskRegressionResult& r);
std::string risk_csv(const econ::RiskRegressionResult& r);
std::string vif_text(const std::vector<econ::VifEntry>& v);
std::string vif_csv(const std::vector<econ::VifEntry>& v);

std::string explain_text(const model::LinearExplanation& e,
                         const std::vector<std::string>& feature_names,
                         const std::string& call_id, const std::string& scale,
                         std::size_t top);
std::string explain_csv(const model::LinearExplanation& e,
                        const std::vector<std::string>& feature_names,
                        std::size_t top);

}  // namespace echelon::cli
