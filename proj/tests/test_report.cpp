#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "annulus_green/parallel.hpp"
#include "annulus_green/report.hpp"

using namespace annulus_green;

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Report, StatusFromTolerance) {
  VerificationReport r;
  r.add_tolerance_check("b", 1.0, 1.05, 0.1);
  r.add_tolerance_check("a", 1.0, 2.0, 0.1);
  r.add_tolerance_check("c", 1.0, 2.0, 0.1, "", true);
  r.add_info("d", 3.0);
  EXPECT_EQ(r.find("b")->status, CheckStatus::pass);
  EXPECT_EQ(r.find("a")->status, CheckStatus::fail);
  EXPECT_EQ(r.find("c")->status, CheckStatus::flagged);
  EXPECT_EQ(r.find("d")->status, CheckStatus::info);
  EXPECT_TRUE(r.has_hard_failure());
  EXPECT_EQ(r.count(CheckStatus::pass), 1);
}

TEST(Report, SortedAndOrderIndependent) {
  VerificationReport r1, r2;
  r1.add_info("zeta", 1.0);
  r1.add_info("alpha", 2.0);
  r2.add_info("alpha", 2.0);
  r2.add_info("zeta", 1.0);
  std::ostringstream s1, s2;
  r1.write_json(s1);
  r2.write_json(s2);
  EXPECT_EQ(s1.str(), s2.str());
  const auto j = nlohmann::json::parse(s1.str());
  EXPECT_EQ(j["checks"][0]["name"], "alpha");
  EXPECT_EQ(j["summary"]["info"], 2);
}

TEST(Report, CsvSchema) {
  VerificationReport r;
  r.add_tolerance_check("x", 0.0, 1e-7, 1e-6, "note, with \"quotes\"");
  std::ostringstream s;
  r.write_csv(s);
  EXPECT_EQ(s.str(), "name,target,measured,tolerance,status,notes\nx,0,1e-07,1e-06,pass,\"note, with \"\"quotes\"\"\"\n");
}

TEST(Report, NonFiniteBecomesNull) {
  VerificationReport r;
  r.add_info("nan", std::nan(""));
  EXPECT_TRUE(r.to_json()["checks"][0]["measured"].is_null());
}

TEST(ParallelFor, SameResultForAnyThreadCount) {
  std::vector<double> a(1000), b(1000);
  parallel_for(a.size(), 1, [&](std::size_t i) { a[i] = std::sqrt(static_cast<double>(i)); });
  parallel_for(b.size(), 7, [&](std::size_t i) { b[i] = std::sqrt(static_cast<double>(i)); });
  EXPECT_EQ(a, b);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 57) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}
