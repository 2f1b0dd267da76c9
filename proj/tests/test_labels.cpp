#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "echelon/errors.hpp"
#include "echelon/labels.hpp"
#include "oracles.hpp"
#include "testfs.hpp"

using namespace echelon;
using labels::MbtiVector;
using labels::Scale;
using labels::VoteRecord;
using labels::VoteRow;

namespace {

VoteRecord rec(Scale s, long left, long right) {
  VoteRecord r;
  r.scale = s;
  r.votes_left = left;
  r.votes_right = right;
  return r;
}

}  // namespace

TEST_CASE("normalize_votes computes the right-pole share") {
  CHECK(labels::normalize_votes(rec(Scale::Ei, 10, 0)) == 0.0);
  CHECK(labels::normalize_votes(rec(Scale::Ei, 0, 10)) == 1.0);
  CHECK(labels::normalize_votes(rec(Scale::Ei, 3, 1)) == 0.25);
  CHECK(labels::normalize_votes(rec(Scale::Sn, 1, 2)) ==
        doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(labels::normalize_votes(rec(Scale::Tf, 0, 0)),
                  ValidationError);
}

TEST_CASE("score and complement sum to exactly one, scaling leaves it fixed") {
  // Bit-exact identities over 1000 random vote pairs, including shapes such
  // as (1, 6) where independently rounded divisions would break exactness.
  oracles::Rand rand(31);
  for (int i = 0; i < 1000; ++i) {
    const long left = rand.uniform_int(0, 40);
    const long right = left == 0 ? rand.uniform_int(1, 40)
                                 : rand.uniform_int(0, 40);
    const double score = labels::normalize_votes(rec(Scale::Ei, left, right));
    const double swapped =
        labels::normalize_votes(rec(Scale::Ei, right, left));
    CHECK(score + swapped == 1.0);

    const long k = rand.uniform_int(2, 9);
    const double scaled =
        labels::normalize_votes(rec(Scale::Ei, k * left, k * right));
    CHECK(scaled == score);
  }
}

TEST_CASE("build_mbti_vector normalizes each scale") {
  const auto v = labels::build_mbti_vector(
      {rec(Scale::Ei, 1, 2), rec(Scale::Sn, 1, 2), rec(Scale::Tf, 1, 2),
       rec(Scale::Jp, 1, 2)});
  CHECK(v.ei == doctest::Approx(2.0 / 3.0));
  CHECK(v.sn == doctest::Approx(2.0 / 3.0));
  CHECK(v.tf == doctest::Approx(2.0 / 3.0));
  CHECK(v.jp == doctest::Approx(2.0 / 3.0));
  CHECK(v.total_votes == 3);
}

TEST_CASE("build_mbti_vector errors name the offending scale") {
  try {
    labels::build_mbti_vector({rec(Scale::Ei, 1, 1), rec(Scale::Sn, 2, 2),
                               rec(Scale::Tf, 2, 2), rec(Scale::Jp, 2, 2)},
                              3);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("ei") != std::string::npos);
  }
  // Missing and duplicate scales are both structural errors.
  CHECK_THROWS_AS(labels::build_mbti_vector({rec(Scale::Ei, 3, 3)}),
                  ValidationError);
  CHECK_THROWS_AS(labels::build_mbti_vector(
                      {rec(Scale::Ei, 3, 3), rec(Scale::Ei, 3, 3),
                       rec(Scale::Tf, 3, 3), rec(Scale::Jp, 3, 3)}),
                  ValidationError);
}

TEST_CASE("vector components equal componentwise normalization") {
  oracles::Rand rand(77);
  for (int i = 0; i < 50; ++i) {
    std::vector<VoteRecord> records;
    for (Scale s : labels::kScales) {
      const long left = rand.uniform_int(0, 20);
      const long right = left >= 3 ? rand.uniform_int(0, 20)
                                   : rand.uniform_int(3, 20);
      records.push_back(rec(s, left, right));
    }
    const auto v = labels::build_mbti_vector(records, 3);
    long min_total = records[0].total();
    for (const auto& r : records) min_total = std::min(min_total, r.total());
    CHECK(v.total_votes == min_total);
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(v.get(labels::kScales[k]) ==
            labels::normalize_votes(records[k]));
  }
}

TEST_CASE("labels_from_votes filters thin entities and reports exclusions") {
  std::vector<VoteRow> rows;
  auto add = [&](const std::string& id, Scale s, long l, long r) {
    rows.push_back({id, rec(s, l, r)});
  };
  for (Scale s : labels::kScales) add("full", s, 2, 3);
  for (Scale s : labels::kScales) add("thin", s, 1, 1);
  add("partial", Scale::Ei, 5, 5);

  long excluded = -1;
  const auto out = labels::labels_from_votes(rows, 3, &excluded);
  CHECK(out.size() == 1);
  CHECK(out.count("full") == 1);
  CHECK(excluded == 2);
  CHECK(out.at("full").ei == doctest::Approx(0.6));
}

TEST_CASE("duplicate vote rows for one entity-scale merge by summation") {
  std::vector<VoteRow> rows;
  rows.push_back({"x", rec(Scale::Ei, 1, 1)});
  rows.push_back({"x", rec(Scale::Ei, 1, 2)});
  for (Scale s : {Scale::Sn, Scale::Tf, Scale::Jp})
    rows.push_back({"x", rec(s, 3, 2)});
  const auto out = labels::labels_from_votes(rows, 3, nullptr);
  REQUIRE(out.count("x") == 1);
  CHECK(out.at("x").ei == doctest::Approx(0.6));  // (1+2)/(2+3)
}

TEST_CASE("label_summary matches the direct moment oracle") {
  oracles::Rand rand(909);
  std::vector<MbtiVector> vectors(20);
  std::vector<double> ei;
  for (auto& v : vectors) {
    v.ei = rand.uniform();
    v.sn = rand.uniform();
    v.tf = rand.uniform();
    v.jp = rand.uniform();
    ei.push_back(v.ei);
  }
  const auto s = labels::label_summary(vectors);
  const auto m = oracles::moments(ei);
  CHECK(s.n == 20);
  CHECK(s.scales[0].mean == doctest::Approx(m.mean).epsilon(1e-12));
  CHECK(s.scales[0].stddev == doctest::Approx(m.sd).epsilon(1e-12));
  CHECK(s.scales[0].skewness == doctest::Approx(m.skew).epsilon(1e-12));

  long hist_total = 0;
  for (long c : s.scales[0].histogram) hist_total += c;
  CHECK(hist_total == 20);
}

TEST_CASE("label_summary conventions on degenerate shapes") {
  MbtiVector a;
  a.ei = a.sn = a.tf = a.jp = 0.4;
  const auto s = labels::label_summary({a, a, a});
  CHECK(s.scales[0].stddev == 0.0);
  CHECK(s.scales[0].skewness == 0.0);  // undefined, reported as zero

  MbtiVector lo, hi;
  lo.ei = lo.sn = lo.tf = lo.jp = 0.2;
  hi.ei = hi.sn = hi.tf = hi.jp = 0.8;
  const auto sym = labels::label_summary({lo, hi});
  CHECK(sym.scales[0].mean == doctest::Approx(0.5));
  CHECK(sym.scales[0].skewness == 0.0);

  CHECK_THROWS_AS(labels::label_summary({a}), ValidationError);
}

TEST_CASE("histogram bins span [0,1] with the top edge in the last bin") {
  std::vector<MbtiVector> vectors(3);
  vectors[0].ei = 0.0;
  vectors[1].ei = 0.95;
  vectors[2].ei = 1.0;
  const auto s = labels::label_summary(vectors);
  CHECK(s.scales[0].histogram[0] == 1);
  CHECK(s.scales[0].histogram[9] == 2);
}

TEST_CASE("cross_correlation hits +1 and -1 on copied columns") {
  oracles::Rand rand(5150);
  std::vector<MbtiVector> m(12);
  std::vector<labels::Big5Vector> b(12);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i].ei = rand.uniform();
    m[i].sn = rand.uniform();
    m[i].tf = rand.uniform();
    m[i].jp = rand.uniform();
    b[i].openness = m[i].ei;        // column o copies EI
    b[i].conscientiousness = 1.0 - m[i].sn;  // column c mirrors SN
    b[i].extraversion = rand.uniform();
    b[i].agreeableness = rand.uniform();
    b[i].neuroticism = rand.uniform();
  }
  const auto c = labels::cross_correlation(m, b);
  CHECK(c[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c[1][1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("cross_correlation matches the pearson oracle entrywise") {
  oracles::Rand rand(616);
  const std::size_t n = 25;
  std::vector<MbtiVector> m(n);
  std::vector<labels::Big5Vector> b(n);
  std::vector<double> tf, agree;
  for (std::size_t i = 0; i < n; ++i) {
    m[i].ei = rand.uniform();
    m[i].sn = rand.uniform();
    m[i].tf = rand.uniform();
    m[i].jp = rand.uniform();
    b[i].openness = rand.uniform();
    b[i].conscientiousness = rand.uniform();
    b[i].extraversion = rand.uniform();
    b[i].agreeableness = rand.uniform();
    b[i].neuroticism = rand.uniform();
    tf.push_back(m[i].tf);
    agree.push_back(b[i].agreeableness);
  }
  const auto c = labels::cross_correlation(m, b);
  CHECK(c[2][3] ==
        doctest::Approx(oracles::pearson(tf, agree)).epsilon(1e-10));
}

TEST_CASE("cross_correlation is invariant under positive affine maps") {
  oracles::Rand rand(14);
  const std::size_t n = 15;
  std::vector<MbtiVector> m(n);
  std::vector<labels::Big5Vector> b1(n), b2(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i].ei = rand.uniform();
    b1[i].openness = rand.uniform();
    b2[i].openness = 0.25 * b1[i].openness + 3.0;
  }
  const auto c1 = labels::cross_correlation(m, b1);
  const auto c2 = labels::cross_correlation(m, b2);
  CHECK(c1[0][0] == doctest::Approx(c2[0][0]).epsilon(1e-12));
}

TEST_CASE("zero-variance columns yield NaN correlations, not exceptions") {
  std::vector<MbtiVector> m(5);
  std::vector<labels::Big5Vector> b(5);
  for (std::size_t i = 0; i < 5; ++i) {
    m[i].ei = 0.5;  // constant scale
    m[i].sn = static_cast<double>(i) / 5.0;
    b[i].openness = static_cast<double>(i) / 7.0;
  }
  const auto c = labels::cross_correlation(m, b);
  CHECK(std::isnan(c[0][0]));
  CHECK(!std::isnan(c[1][0]));

  CHECK_THROWS_AS(labels::cross_correlation(m, {}), ValidationError);
}

TEST_CASE("votes and labels survive a CSV round-trip") {
  testfs::TempDir dir("labels");
  std::vector<VoteRow> rows;
  for (Scale s : labels::kScales) rows.push_back({"ceo one", rec(s, 5, 7)});
  const auto votes_path = dir.file("votes.csv");
  labels::write_votes_csv(votes_path, rows, "# probe\n");
  const auto back = labels::read_votes_csv(votes_path);
  REQUIRE(back.size() == 4);
  CHECK(back[0].entity_id == "ceo one");
  CHECK(back[0].rec.votes_left == 5);
  CHECK(back[0].rec.votes_right == 7);

  const auto labels_map = labels::labels_from_votes(back, 3, nullptr);
  const auto labels_path = dir.file("labels.csv");
  labels::write_labels_csv(labels_path, labels_map, "# probe\n");
  const auto labels_back = labels::read_labels_csv(labels_path);
  REQUIRE(labels_back.count("ceo one") == 1);
  // fmt_exact serialization keeps scores bit-identical.
  CHECK(labels_back.at("ceo one").ei == labels_map.at("ceo one").ei);
  CHECK(labels_back.at("ceo one").total_votes == 12);
}

TEST_CASE("scale names parse in both short and dashed forms") {
  CHECK(labels::parse_scale("ei") == Scale::Ei);
  CHECK(labels::parse_scale("EI") == Scale::Ei);
  CHECK(labels::parse_scale("S-N") == Scale::Sn);
  CHECK(labels::parse_scale("jp") == Scale::Jp);
  CHECK(!labels::parse_scale("xy").has_value());
}
