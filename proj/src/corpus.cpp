#include "echelon/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"

namespace echelon::corpus {

const char* role_name(SpeakerRole r) {
  switch (r) {
    case SpeakerRole::Ceo: return "CEO";
    case SpeakerRole::Analyst: return "Analyst";
    case SpeakerRole::Operator: return "Operator";
    case SpeakerRole::Other: return "Other";
  }
  return "Other";
}

SpeakerRole role_from_tag(std::string_view tag) {
  if (tag == "CEO") return SpeakerRole::Ceo;
  if (tag == "Analyst") return SpeakerRole::Analyst;
  if (tag == "Operator") return SpeakerRole::Operator;
  return SpeakerRole::Other;
}

namespace {

FiscalQuarter parse_quarter(const std::string& s, long line) {
  // "YYYYQn"
  if (s.size() != 6 || (s[4] != 'Q' && s[4] != 'q'))
    throw ParseError("bad quarter '" + s + "', expected YYYYQn", line);
  for (int i : {0, 1, 2, 3, 5})
    if (!std::isdigit(static_cast<unsigned char>(s[static_cast<std::size_t>(i)])))
      throw ParseError("bad quarter '" + s + "', expected YYYYQn", line);
  FiscalQuarter q;
  q.year = std::stoi(s.substr(0, 4));
  q.quarter = s[5] - '0';
  if (q.quarter < 1 || q.quarter > 4)
    throw ParseError("quarter must be 1..4 in '" + s + "'", line);
  return q;
}

std::string format_quarter(const FiscalQuarter& q) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04dQ%d", q.year, q.quarter);
  return buf;
}

}  // namespace

Transcript parse_transcript(std::string_view raw, const FormatConfig& cfg) {
  const auto lines = ioutil::split_lines(std::string(raw));
  Transcript t;
  Section section = Section::Presentation;
  bool marker_seen = false;
  bool any_turn = false;
  std::vector<long> turn_lines;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const long line_no = static_cast<long>(li + 1);
    const std::string& line = lines[li];
    const std::string trimmed = ioutil::trim(line);
    if (trimmed.empty()) continue;

    if (!line.empty() &&
        std::isspace(static_cast<unsigned char>(line[0]))) {
      // Continuation of the previous turn.
      if (t.utterances.empty())
        throw ParseError("continuation line before any turn", line_no);
      auto& u = t.utterances.back();
      if (!u.text.empty()) u.text.push_back(' ');
      u.text += trimmed;
      continue;
    }

    if (trimmed == cfg.qa_marker) {
      if (marker_seen) throw ParseError("duplicate section marker", line_no);
      marker_seen = true;
      section = Section::Qa;
      continue;
    }

    if (trimmed[0] == '#') {
      if (any_turn)
        throw ParseError("header after first turn", line_no);
      const auto colon = trimmed.find(':');
      if (colon == std::string::npos)
        throw ParseError("malformed header '" + trimmed + "'", line_no);
      const std::string key = ioutil::trim(trimmed.substr(1, colon - 1));
      const std::string value = ioutil::trim(trimmed.substr(colon + 1));
      if (key == "call_id") {
        t.call_id = value;
      } else if (key == "company") {
        t.company_id = value;
      } else if (key == "date") {
        try {
          t.call_date = parse_date(value);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line_no);
        }
      } else if (key == "quarter") {
        t.quarter = parse_quarter(value, line_no);
      } else {
        throw ParseError("unknown header '" + key + "'", line_no);
      }
      continue;
    }

    // Turn line: 'Name (Role): text' or 'Name: text'.
    const auto colon = trimmed.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'Speaker: text' turn line", line_no);
    std::string name_part = ioutil::trim(trimmed.substr(0, colon));
    std::string text = ioutil::trim(trimmed.substr(colon + 1));
    if (name_part.empty())
      throw ParseError("turn line with empty speaker", line_no);

    SpeakerRole role = SpeakerRole::Other;
    if (!name_part.empty() && name_part.back() == ')') {
      const auto open = name_part.rfind('(');
      if (open != std::string::npos) {
        const std::string tag = ioutil::trim(
            name_part.substr(open + 1, name_part.size() - open - 2));
        role = role_from_tag(tag);
        name_part = ioutil::trim(name_part.substr(0, open));
        if (name_part.empty())
          throw ParseError("turn line with empty speaker", line_no);
      }
    }

    Utterance u;
    u.speaker_name = name_part;
    u.role = role;
    u.section = section;
    u.text = text;
    u.order_index = static_cast<int>(t.utterances.size());
    t.utterances.push_back(std::move(u));
    any_turn = true;
    turn_lines.push_back(line_no);
  }

  if (t.call_id.empty()) throw ParseError("header missing call_id");
  if (t.utterances.empty()) throw ValidationError("empty transcript");
  for (std::size_t i = 0; i < t.utterances.size(); ++i)
    if (ioutil::trim(t.utterances[i].text).empty())
      throw ParseError("turn with empty text for speaker '" +
                           t.utterances[i].speaker_name + "'",
                       turn_lines[i]);
  return t;
}

std::string serialize_transcript(const Transcript& t, const FormatConfig& cfg) {
  if (t.call_id.empty())
    throw ValidationError("serialize_transcript: missing call_id");
  if (t.utterances.empty())
    throw ValidationError("serialize_transcript: no utterances");

  std::ostringstream out;
  out << "#call_id: " << t.call_id << "\n";
  if (!t.company_id.empty()) out << "#company: " << t.company_id << "\n";
  if (t.call_date.is_set()) out << "#date: " << format_date(t.call_date) << "\n";
  if (t.quarter.is_set()) out << "#quarter: " << format_quarter(t.quarter) << "\n";
  out << "\n";

  bool in_qa = false;
  for (const auto& u : t.utterances) {
    if (u.text.find('\n') != std::string::npos)
      throw ValidationError("serialize_transcript: utterance text contains newline");
    if (ioutil::trim(u.text).empty())
      throw ValidationError("serialize_transcript: empty utterance text");
    if (u.section == Section::Qa && !in_qa) {
      out << cfg.qa_marker << "\n";
      in_qa = true;
    } else if (u.section == Section::Presentation && in_qa) {
      // The format cannot represent a presentation turn after Q&A began.
      throw ValidationError("serialize_transcript: sections out of order");
    }
    out << u.speaker_name << " (" << role_name(u.role) << "): " << u.text
        << "\n";
  }
  return out.str();
}

std::string normalize_name(std::string_view raw) {
  std::istringstream in{std::string(raw)};
  std::string token;
  std::vector<std::string> kept;
  while (in >> token) {
    std::string low;
    for (char c : token)
      low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (!low.empty() && low.back() == '.') low.pop_back();
    if (low == "dr" || low == "mr" || low == "ms" || low == "mrs" ||
        low == "sir")
      continue;
    // Single-letter initials, with or without a period.
    if (low.size() == 1 && std::isalpha(static_cast<unsigned char>(low[0])))
      continue;
    kept.push_back(token);
  }
  if (kept.empty())
    throw ValidationError("name '" + std::string(raw) +
                          "' normalizes to nothing");
  std::string out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i) out.push_back(' ');
    out += kept[i];
  }
  return out;
}

long count_sentences(std::string_view text) {
  // Trim first so trailing punctuation never opens a phantom sentence.
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  if (b == e) return 0;

  long boundaries = 0;
  std::size_t i = b;
  while (i < e) {
    if (text[i] == '.' || text[i] == '!' || text[i] == '?') {
      std::size_t j = i;
      while (j < e && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
      std::size_t k = j;
      while (k < e && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k > j && k < e &&
          (std::isupper(static_cast<unsigned char>(text[k])) ||
           std::isdigit(static_cast<unsigned char>(text[k]))))
        ++boundaries;
      i = j;
    } else {
      ++i;
    }
  }
  return boundaries + 1;
}

namespace {

CeoDocument build_document(const Transcript& t, const std::string& norm_name,
                           const std::vector<const Utterance*>& turns) {
  CeoDocument doc;
  doc.ceo_name = norm_name;
  doc.call_id = t.call_id;
  for (const auto* u : turns) {
    doc.utterance_texts.push_back(u->text);
    if (!doc.text.empty()) doc.text.push_back(' ');
    doc.text += u->text;
  }
  doc.counts.utterances = static_cast<long>(turns.size());
  doc.counts.sentences = count_sentences(doc.text);
  doc.counts.tokens = static_cast<long>(features::tokenize(doc.text).size());
  return doc;
}

}  // namespace

CeoDocument extract_ceo_document(const Transcript& t, std::string_view ceo) {
  const std::string target = normalize_name(ceo);
  std::vector<const Utterance*> turns;
  for (const auto& u : t.utterances) {
    if (u.role != SpeakerRole::Ceo) continue;
    try {
      if (normalize_name(u.speaker_name) == target) turns.push_back(&u);
    } catch (const ValidationError&) {
      // Degenerate speaker names cannot match anything.
    }
  }
  if (turns.empty())
    throw NotFoundError("no CEO utterances for '" + target + "' in call '" +
                        t.call_id + "'");
  return build_document(t, target, turns);
}

std::vector<CeoDocument> extract_all_ceo_documents(const Transcript& t) {
  std::map<std::string, std::vector<const Utterance*>> by_name;
  for (const auto& u : t.utterances) {
    if (u.role != SpeakerRole::Ceo) continue;
    try {
      by_name[normalize_name(u.speaker_name)].push_back(&u);
    } catch (const ValidationError&) {
    }
  }
  std::vector<CeoDocument> docs;
  docs.reserve(by_name.size());
  for (const auto& [name, turns] : by_name)
    docs.push_back(build_document(t, name, turns));
  return docs;
}

features::TokenizedDoc tokenized(const CeoDocument& doc) {
  std::vector<std::vector<std::string>> segs;
  segs.reserve(doc.utterance_texts.size());
  for (const auto& u : doc.utterance_texts)
    segs.push_back(features::tokenize(u));
  return features::TokenizedDoc(std::move(segs));
}

CorpusStats corpus_stats(const std::vector<CeoDocument>& docs) {
  if (docs.empty()) throw ValidationError("corpus_stats: no documents");
  CorpusStats s;
  s.documents = static_cast<long>(docs.size());
  auto acc = [n = s.documents](UnitStats& u, long v, bool first) {
    u.sum += v;
    if (first || v < u.min) u.min = v;
    if (first || v > u.max) u.max = v;
    u.mean = static_cast<double>(u.sum) / static_cast<double>(n);
  };
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const bool first = i == 0;
    acc(s.utterances, docs[i].counts.utterances, first);
    acc(s.sentences, docs[i].counts.sentences, first);
    acc(s.tokens, docs[i].counts.tokens, first);
  }
  return s;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  const std::string text = ioutil::read_file(path);
  const auto lines = ioutil::split_lines(text);
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string t = ioutil::trim(lines[i]);
    if (t.empty() || t[0] == '#') continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("manifest '" + path + "': " + e.what(),
                       static_cast<long>(i + 1));
    }
    if (!j.is_object() || !j.contains("path") || !j["path"].is_string())
      throw ParseError("manifest '" + path + "': expected {\"path\": ...}",
                       static_cast<long>(i + 1));
    ManifestEntry e;
    e.path = j["path"].get<std::string>();
    if (j.contains("ceo") && j["ceo"].is_string())
      e.ceo = j["ceo"].get<std::string>();
    entries.push_back(std::move(e));
  }
  if (entries.empty())
    throw ValidationError("manifest '" + path + "' lists no transcripts");
  return entries;
}

}  // namespace echelon::corpus
