#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "echelon/date.hpp"
#include "echelon/features.hpp"

namespace echelon::corpus {

enum class SpeakerRole { Ceo, Analyst, Operator, Other };
enum class Section { Presentation, Qa };

const char* role_name(SpeakerRole r);
SpeakerRole role_from_tag(std::string_view tag);  // unknown tags map to Other

struct FiscalQuarter {
  int year = 0;
  int quarter = 0;  // 1..4
  auto operator<=>(const FiscalQuarter&) const = default;
  bool is_set() const { return year != 0; }
};

struct Utterance {
  std::string speaker_name;
  SpeakerRole role = SpeakerRole::Other;
  Section section = Section::Presentation;
  std::string text;  // single line, non-empty
  int order_index = 0;
  bool operator==(const Utterance&) const = default;
};

struct Transcript {
  std::string call_id;
  std::string company_id;
  FiscalQuarter quarter;
  Date call_date;
  std::vector<Utterance> utterances;
  bool operator==(const Transcript&) const = default;
};

struct FormatConfig {
  std::string qa_marker = "== QA ==";
};

// Line-oriented format: '#key: value' headers (call_id, company, date,
// quarter), then 'Name (Role): text' turn lines with whitespace-indented
// continuations, with an optional marker line separating the prepared
// remarks from Q&A. Throws ParseError with a line number on malformed input.
Transcript parse_transcript(std::string_view raw, const FormatConfig& cfg = {});
std::string serialize_transcript(const Transcript& t,
                                 const FormatConfig& cfg = {});

// Strips honorifics (Dr/Mr/Ms/Sir, with or without periods) and single-letter
// initials, collapses whitespace, preserves case of what remains. A name that
// normalizes to nothing is an error.
std::string normalize_name(std::string_view raw);

struct DocCounts {
  long utterances = 0;
  long sentences = 0;
  long tokens = 0;
};

struct CeoDocument {
  std::string ceo_name;  // normalized
  std::string call_id;
  std::vector<std::string> utterance_texts;  // in transcript order
  std::string text;                          // utterances joined with spaces
  DocCounts counts;
};

// Sentence boundaries: runs of [.!?] followed by whitespace and an uppercase
// letter or digit. Trailing punctuation does not open a new sentence.
long count_sentences(std::string_view text);

// All utterances whose role is Ceo and whose normalized speaker name matches
// the normalized target; NotFoundError when none match.
CeoDocument extract_ceo_document(const Transcript& t, std::string_view ceo);
std::vector<CeoDocument> extract_all_ceo_documents(const Transcript& t);

features::TokenizedDoc tokenized(const CeoDocument& doc);

struct UnitStats {
  long sum = 0;
  double mean = 0.0;
  long min = 0;
  long max = 0;
};

struct CorpusStats {
  long documents = 0;
  UnitStats utterances, sentences, tokens;
};

CorpusStats corpus_stats(const std::vector<CeoDocument>& docs);

struct ManifestEntry {
  std::string path;  // transcript path, relative to the manifest's directory
  std::string ceo;   // optional; empty means "all CEO speakers"
};

// JSON-lines manifest: one {"path": ..., "ceo": ...} object per line.
std::vector<ManifestEntry> read_manifest(const std::string& path);

}  // namespace echelon::corpus
