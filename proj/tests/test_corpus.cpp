#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "echelon/corpus.hpp"
#include "echelon/errors.hpp"
#include "echelon/features.hpp"
#include "oracles.hpp"
#include "testfs.hpp"

using namespace echelon;
using corpus::Section;
using corpus::SpeakerRole;

namespace {

const char* kTwoTurn =
    "#call_id: C1\n"
    "#company: ACME\n"
    "#date: 2016-05-12\n"
    "#quarter: 2016Q2\n"
    "Jane Roe (CEO): We grew revenue.\n"
    "Sam Lee (Analyst): What drove it?\n";

corpus::Transcript five_turn() {
  return corpus::parse_transcript(
      "#call_id: C2\n"
      "#company: ACME\n"
      "#date: 2016-05-12\n"
      "#quarter: 2016Q2\n"
      "Jane Roe (CEO): Welcome everyone.\n"
      "Jane Roe (CEO): Results were strong.\n"
      "== QA ==\n"
      "Sam Lee (Analyst): First question.\n"
      "Jane Roe (CEO): Happy to answer.\n"
      "Pat Kim (Analyst): Second question.\n");
}

}  // namespace

TEST_CASE("two-turn dialogue parses into two role-tagged utterances") {
  const auto t = corpus::parse_transcript(kTwoTurn);
  CHECK(t.call_id == "C1");
  CHECK(t.company_id == "ACME");
  CHECK(t.quarter.year == 2016);
  CHECK(t.quarter.quarter == 2);
  CHECK(t.call_date == Date{2016, 5, 12});
  REQUIRE(t.utterances.size() == 2);
  CHECK(t.utterances[0].speaker_name == "Jane Roe");
  CHECK(t.utterances[0].role == SpeakerRole::Ceo);
  CHECK(t.utterances[0].text == "We grew revenue.");
  CHECK(t.utterances[1].role == SpeakerRole::Analyst);
  CHECK(t.utterances[0].order_index == 0);
  CHECK(t.utterances[1].order_index == 1);
}

TEST_CASE("without a QA marker every utterance is Presentation") {
  const auto t = corpus::parse_transcript(kTwoTurn);
  for (const auto& u : t.utterances) CHECK(u.section == Section::Presentation);
}

TEST_CASE("the QA marker flips the section for later turns") {
  const auto t = five_turn();
  REQUIRE(t.utterances.size() == 5);
  CHECK(t.utterances[1].section == Section::Presentation);
  CHECK(t.utterances[2].section == Section::Qa);
  CHECK(t.utterances[4].section == Section::Qa);
}

TEST_CASE("continuation lines extend the previous turn") {
  const auto t = corpus::parse_transcript(
      "#call_id: C3\n"
      "#company: ACME\n"
      "#date: 2016-05-12\n"
      "#quarter: 2016Q2\n"
      "Jane Roe (CEO): First line\n"
      "  and the continuation.\n");
  REQUIRE(t.utterances.size() == 1);
  CHECK(t.utterances[0].text == "First line and the continuation.");
}

TEST_CASE("missing call_id header is a parse error with a line number") {
  const std::string raw =
      "#company: ACME\n"
      "#date: 2016-05-12\n"
      "#quarter: 2016Q2\n"
      "Jane Roe (CEO): Hello.\n";
  CHECK_THROWS_AS(corpus::parse_transcript(raw), ParseError);
}

TEST_CASE("empty transcripts and malformed turns are rejected") {
  CHECK_THROWS_AS(corpus::parse_transcript("#call_id: C9\n"
                                           "#company: A\n"
                                           "#date: 2016-05-12\n"
                                           "#quarter: 2016Q2\n"),
                  ValidationError);
  // A turn line with no "Name (Role):" shape.
  CHECK_THROWS_AS(corpus::parse_transcript("#call_id: C9\n"
                                           "#company: A\n"
                                           "#date: 2016-05-12\n"
                                           "#quarter: 2016Q2\n"
                                           "no colon here\n"),
                  ParseError);
}

TEST_CASE("unknown role tags map to Other") {
  const auto t = corpus::parse_transcript(
      "#call_id: C4\n"
      "#company: ACME\n"
      "#date: 2016-05-12\n"
      "#quarter: 2016Q2\n"
      "Ops Desk (Moderator): Please hold.\n");
  CHECK(t.utterances[0].role == SpeakerRole::Other);
}

TEST_CASE("parse, serialize, parse round-trips to an identical transcript") {
  const auto t1 = five_turn();
  const auto text = corpus::serialize_transcript(t1);
  const auto t2 = corpus::parse_transcript(text);
  CHECK(t1 == t2);
}

TEST_CASE("normalize_name strips honorifics and initials, keeps case") {
  CHECK(corpus::normalize_name("Elon R. Musk") == "Elon Musk");
  CHECK(corpus::normalize_name("Dr. Lisa Su") == "Lisa Su");
  CHECK(corpus::normalize_name("Mr. John Q Public") == "John Public");
  CHECK(corpus::normalize_name("Ms Jane   Roe") == "Jane Roe");
  CHECK(corpus::normalize_name("Sir Patrick Stewart") == "Patrick Stewart");
  CHECK(corpus::normalize_name("McAllister Brown") == "McAllister Brown");
  CHECK_THROWS_AS(corpus::normalize_name("J."), ValidationError);
  CHECK_THROWS_AS(corpus::normalize_name("   "), ValidationError);
}

TEST_CASE("extract_ceo_document keeps only the named CEO's turns in order") {
  const auto t = five_turn();
  const auto doc = corpus::extract_ceo_document(t, "Jane Roe");
  CHECK(doc.ceo_name == "Jane Roe");
  CHECK(doc.call_id == "C2");
  CHECK(doc.counts.utterances == 3);
  REQUIRE(doc.utterance_texts.size() == 3);
  CHECK(doc.utterance_texts[2] == "Happy to answer.");
  CHECK(doc.text == "Welcome everyone. Results were strong. Happy to answer.");
}

TEST_CASE("extraction matches across middle-initial variants") {
  auto t = five_turn();
  t.utterances[0].speaker_name = "Jane R. Roe";
  // The stored variant differs; normalization bridges both directions.
  const auto doc = corpus::extract_ceo_document(t, "Dr. Jane Roe");
  CHECK(doc.counts.utterances == 3);
}

TEST_CASE("unknown CEO name raises not-found") {
  CHECK_THROWS_AS(corpus::extract_ceo_document(five_turn(), "Nobody Here"),
                  NotFoundError);
}

TEST_CASE("analyst speakers are never extracted even with a matching name") {
  auto t = five_turn();
  t.utterances[2].speaker_name = "Jane Roe";  // analyst line, same name
  const auto doc = corpus::extract_ceo_document(t, "Jane Roe");
  CHECK(doc.counts.utterances == 3);
}

TEST_CASE("extract_all_ceo_documents splits by normalized speaker") {
  auto t = five_turn();
  t.utterances[1].speaker_name = "Chris Wu";
  t.utterances[1].role = SpeakerRole::Ceo;
  const auto docs = corpus::extract_all_ceo_documents(t);
  REQUIRE(docs.size() == 2);
  std::vector<std::string> names;
  for (const auto& d : docs) names.push_back(d.ceo_name);
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"Chris Wu", "Jane Roe"});
}

TEST_CASE("document token counts agree with the shared tokenizer") {
  const auto doc = corpus::extract_ceo_document(five_turn(), "Jane Roe");
  const auto toks = features::tokenize(doc.text);
  CHECK(doc.counts.tokens == static_cast<long>(toks.size()));
  CHECK(doc.counts.tokens == static_cast<long>(corpus::tokenized(doc).token_count()));
}

TEST_CASE("sentence counting follows the boundary rule") {
  CHECK(corpus::count_sentences("One. Two! Three?") == 3);
  CHECK(corpus::count_sentences("Ends mid") == 1);
  CHECK(corpus::count_sentences("Revenue was 4.5 million.") == 1);
  CHECK(corpus::count_sentences("Up 20%. Then flat.") == 2);
  CHECK(corpus::count_sentences("") == 0);
}

TEST_CASE("corpus_stats reproduces the worked min-max-sum example") {
  // Token counts 22 and 9968: min 22, max 9968, sum 9990, mean 4995.
  corpus::CeoDocument a, b;
  a.counts = {1, 2, 22};
  b.counts = {3, 4, 9968};
  const auto stats = corpus::corpus_stats({a, b});
  CHECK(stats.documents == 2);
  CHECK(stats.tokens.min == 22);
  CHECK(stats.tokens.max == 9968);
  CHECK(stats.tokens.sum == 9990);
  CHECK(stats.tokens.mean == doctest::Approx(4995.0));
}

TEST_CASE("corpus_stats on a single document collapses min, max, mean") {
  corpus::CeoDocument d;
  d.counts = {4, 9, 120};
  const auto stats = corpus::corpus_stats({d});
  CHECK(stats.utterances.min == 4);
  CHECK(stats.utterances.max == 4);
  CHECK(stats.utterances.mean == doctest::Approx(4.0));
  CHECK(stats.tokens.sum == 120);
}

TEST_CASE("corpus_stats equals a naive loop and ignores document order") {
  oracles::Rand rand(2024);
  std::vector<corpus::CeoDocument> docs(10);
  for (auto& d : docs)
    d.counts = {rand.uniform_int(1, 50), rand.uniform_int(1, 90),
                rand.uniform_int(5, 4000)};

  long sum = 0, mn = docs[0].counts.tokens, mx = docs[0].counts.tokens;
  for (const auto& d : docs) {
    sum += d.counts.tokens;
    mn = std::min(mn, d.counts.tokens);
    mx = std::max(mx, d.counts.tokens);
  }
  const auto stats = corpus::corpus_stats(docs);
  CHECK(stats.tokens.sum == sum);
  CHECK(stats.tokens.min == mn);
  CHECK(stats.tokens.max == mx);
  CHECK(stats.tokens.mean == doctest::Approx(static_cast<double>(sum) / 10.0));

  std::reverse(docs.begin(), docs.end());
  const auto stats2 = corpus::corpus_stats(docs);
  CHECK(stats2.tokens.sum == stats.tokens.sum);
  CHECK(stats2.tokens.mean == stats.tokens.mean);
  CHECK(stats2.sentences.min == stats.sentences.min);

  CHECK_THROWS_AS(corpus::corpus_stats({}), ValidationError);
}

TEST_CASE("manifest entries parse from JSON lines") {
  testfs::TempDir dir("manifest");
  const auto path = dir.file("m.jsonl");
  testfs::write_text(path,
                     "{\"path\": \"a.txt\", \"ceo\": \"Jane Roe\"}\n"
                     "{\"path\": \"b.txt\"}\n");
  const auto entries = corpus::read_manifest(path);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].path == "a.txt");
  CHECK(entries[0].ceo == "Jane Roe");
  CHECK(entries[1].ceo.empty());
}
