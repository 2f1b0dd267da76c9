#pragma once

#include <string>

#include "echelon/config.hpp"

namespace echelon::cli {

// One function per subcommand. Each validates the config slice it needs,
// reads its inputs, writes artifacts under config.out_dir and prints a short
// summary to stdout. Errors surface as the exception taxonomy in errors.hpp;
// the binary maps them to exit codes.

void run_synth(const RunConfig& config);
void run_ingest(const RunConfig& config);
void run_labels(const RunConfig& config);
void run_iaa(const RunConfig& config);
void run_split(const RunConfig& config);
void run_train(const RunConfig& config);
void run_eval(const RunConfig& config, const std::string& part);
void run_predict(const RunConfig& config);
void run_risk(const RunConfig& config);
void run_explain(const RunConfig& config, const std::string& call_id,
                 const std::string& scale, long top);

}  // namespace echelon::cli
