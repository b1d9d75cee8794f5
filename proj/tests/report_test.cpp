#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cachecode/errors.hpp"
#include "cachecode/report.hpp"

using namespace cachecode;

TEST(Rational, ExactAndDecimalStrings) {
  EXPECT_EQ(to_exact_string(Rational(2, 4)), "1/2");
  EXPECT_EQ(to_exact_string(Rational(6, 3)), "2");
  EXPECT_EQ(to_exact_string(Rational(-3, 9)), "-1/3");
  EXPECT_EQ(to_decimal_string(Rational(1, 3)), "0.333333333333");
  EXPECT_EQ(to_decimal_string(Rational(5)), "5");
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("x"), InstanceError);
  EXPECT_THROW(parse_rational("1/0"), InstanceError);
}

TEST(Binomial, ConventionsAndOverflow) {
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(-1, 0), 0);
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_THROW(binomial(200, 100), SizeLimitExceeded);
}

TEST(DemandSpec, ParsesAllForms) {
  EXPECT_EQ(DemandSpec::parse("identity").resolve(3, 3).files, (std::vector<int>{1, 2, 3}));
  const auto random = DemandSpec::parse("random:17");
  EXPECT_EQ(random.kind, DemandSpec::Kind::kRandom);
  EXPECT_EQ(random.seed, 17u);
  EXPECT_EQ(random.describe(), "random:17");
  EXPECT_EQ(random.resolve(5, 2).files, DemandVector::random(5, 2, 17).files);
  const auto list = DemandSpec::parse("2, 2,1");
  EXPECT_EQ(list.resolve(3, 2).files, (std::vector<int>{2, 2, 1}));
  EXPECT_EQ(list.describe(), "2,2,1");
}

TEST(DemandSpec, Rejects) {
  EXPECT_THROW(DemandSpec::parse("1,x"), InstanceError);
  EXPECT_THROW(DemandSpec::parse("random:abc"), InstanceError);
  EXPECT_THROW(DemandSpec::parse("1,2").resolve(3, 3), InstanceError);
  EXPECT_THROW(DemandSpec::parse("1,2,4").resolve(3, 3), InstanceError);
  EXPECT_THROW(DemandSpec::parse("identity").resolve(3, 2), InstanceError);
}

TEST(CsvWriter, QuotesPerRfc4180) {
  CsvWriter csv({"a", "b"});
  csv.add_row({"x,y", "say \"hi\""});
  csv.add_row({"", "plain"});
  EXPECT_EQ(csv.str(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n,plain\n");
  EXPECT_THROW(csv.add_row({"only one"}), InstanceError);
}

TEST(ScheduleJson, FieldsInOrder) {
  const auto s = generate_schedule({6, 6, 4}, DemandVector::identity(6));
  const auto j = schedule_to_json(s);
  EXPECT_EQ(j["schema"], "cachecode/1");
  EXPECT_EQ(j["K"], 6);
  EXPECT_EQ(j["gamma"], 3);
  EXPECT_EQ(j["t"], 4);
  EXPECT_EQ(j["lambda"], 3);
  EXPECT_EQ(j["rate"], "1/2");
  EXPECT_DOUBLE_EQ(j["rate_value"].get<double>(), 0.5);
  ASSERT_EQ(j["codewords"].size(), 3u);
  EXPECT_EQ(j["codewords"][2][3]["user"], 1);
  EXPECT_EQ(j["codewords"][2][3]["packet"], 6);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys.front(), "schema");
  EXPECT_EQ(keys[1], "K");
}

TEST(RateCurve, SixUsers) {
  const auto rows = rate_curve(6);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].new_rate, Rational(6));
  EXPECT_EQ(rows[6].new_rate, Rational(0));
  EXPECT_EQ(rows[4].new_rate, Rational(1, 2));
  EXPECT_EQ(rows[4].mn_rate, Rational(2, 5));
  EXPECT_EQ(rows[4].new_subpacketization, 6);
  EXPECT_EQ(rows[4].mn_subpacketization, 15);
  const auto csv = rate_curve_csv(rows);
  EXPECT_NE(csv.find("\n4,0.666666666667,2/3,0.5,1/2,0.4,2/5,6,15\n"), std::string::npos);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(BoundRows, BreakpointsAndGrid) {
  const CcdnParams p{10, 10, 6, 1};
  const auto rows = ccdn_bound_rows(p, 100);
  int breakpoints = 0;
  for (const auto& r : rows) {
    if (!r.breakpoint) continue;
    ++breakpoints;
    EXPECT_EQ(r.rate, ccdn_upper_bound(r.memory, p));
  }
  EXPECT_EQ(breakpoints, 3);
  EXPECT_EQ(rows.front().memory, Rational(0));
  EXPECT_EQ(rows.back().memory, Rational(3));
  // 3j/99 passes through all three breakpoints.
  EXPECT_EQ(rows.size(), 100u);
  for (std::size_t j = 1; j < rows.size(); ++j) {
    EXPECT_LT(rows[j - 1].memory, rows[j].memory);
    EXPECT_LE(rows[j].rate, rows[j - 1].rate);
  }
}

TEST(Overlay, ReadsTwoColumns) {
  const std::string path = ::testing::TempDir() + "overlay.csv";
  {
    std::ofstream out(path);
    out << "M,R,note\n0,10,a\n0.5,4.25,b\n1,1/2,c\n";
  }
  const auto rows = read_overlay_csv(path, "prior");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].memory, Rational(1, 2));
  EXPECT_EQ(rows[1].rate, Rational(17, 4));
  EXPECT_EQ(rows[2].rate, Rational(1, 2));
  EXPECT_EQ(rows[0].series, "prior");
  std::remove(path.c_str());
  EXPECT_THROW(read_overlay_csv(path, "prior"), InstanceError);
}

TEST(OptimalityOutput, CsvAndText) {
  const auto rows = optimality_table(12);
  const auto csv = optimality_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "L,row,s,R_opt,R_opt_exact,R_new,R_new_exact,R_new_tabulated_exact,match,matches_table");
  EXPECT_NE(csv.find("\n10,K-2,,0.25,1/4,0.25,1/4,1/4,true,true\n"), std::string::npos);
  const auto text = optimality_text(12, rows);
  EXPECT_NE(text.find("match"), std::string::npos);
  const auto j = optimality_json(12, rows);
  EXPECT_EQ(j["schema"], "cachecode/1");
  EXPECT_EQ(j["rows"][0]["L"], 11);
}
