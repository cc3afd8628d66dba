#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "io.hpp"
#include "numerics.hpp"
#include "stochastic.hpp"
#include "trading.hpp"

using namespace logerg;

TEST(Io, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 100.0, 6.02214076e23}) {
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
}

TEST(Io, PathCsvRoundTripWithHeader) {
  const auto w = stochastic::simulate_wiener(TimeGrid::uniform(1.0, 1e-3), 17);
  const auto s = stochastic::simulate_gbm({0.1, 0.2, 100.0}, w);
  io::PathHeader h;
  h.kind = PathKind::kPrice;
  h.seed = 17;
  h.params = {{"mu", 0.1}, {"sigma", 0.2}};
  std::stringstream ss;
  io::write_path_csv(ss, s, &h);
  EXPECT_EQ(ss.str().rfind("# {", 0), 0u);
  io::PathHeader back;
  const auto r = io::read_path_csv(ss, PathKind::kWiener, &back);
  EXPECT_EQ(r.kind(), PathKind::kPrice);
  ASSERT_TRUE(back.seed.has_value());
  EXPECT_EQ(*back.seed, 17u);
  ASSERT_EQ(back.params.size(), 2u);
  ASSERT_EQ(r.size(), s.size());
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(r[k], s[k]);
}

TEST(Io, PathCsvWithoutHeaderUsesFallback) {
  std::stringstream ss("t,value\n0,0\n0.5,1\n1,0\n");
  const auto p = io::read_path_csv(ss, PathKind::kZProcess);
  EXPECT_EQ(p.kind(), PathKind::kZProcess);
  EXPECT_EQ(p.size(), 3u);
}

TEST(Io, NonUniformTimesRejected) {
  std::stringstream ss("t,value\n0,1\n0.5,1\n0.7,1\n");
  EXPECT_THROW(io::read_path_csv(ss), Error);
  std::stringstream bad("t,value\n0,1\n0.5,abc\n");
  EXPECT_THROW(io::read_path_csv(bad), Error);
}

TEST(Io, Fig2MarksRecurrences) {
  const auto g = TimeGrid::uniform(1.0, 0.25);
  const SamplePath z(g, {0.0, 1.0, -1.0, -0.5, 0.5}, PathKind::kZProcess);
  const auto rec = trading::detect_recurrences(z);
  std::stringstream ss;
  io::write_fig2_csv(ss, z, rec);
  const auto t = io::read_csv_table(ss);
  ASSERT_EQ(t.columns, (std::vector<std::string>{"t", "z", "recurrence"}));
  const auto zc = t.column("z");
  const auto mc = t.column("recurrence");
  std::size_t marked = 0;
  for (const auto& row : t.rows) {
    if (row[mc] == 1.0) {
      ++marked;
      EXPECT_LE(std::abs(row[zc]), 1e-12);
    }
  }
  EXPECT_EQ(marked, rec.taus.size());
  EXPECT_EQ(t.rows.size(), g.size() + rec.taus.size() - 1);  // tau=0 sits on a node
  EXPECT_THROW(t.column("nope"), Error);
}

TEST(Io, CsvTableEmptyCellIsNan) {
  std::stringstream ss("# comment\na,b\n1,\n,2\n");
  const auto t = io::read_csv_table(ss);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_TRUE(std::isnan(t.rows[0][1]));
  EXPECT_EQ(t.rows[1][1], 2.0);
}

TEST(Io, PricingRowMatchesHeader) {
  pricing::PricingInputs in;
  in.K = 0.5;
  const auto rec = pricing::evaluate_all(in);
  auto count = [](const std::string& s) {
    std::size_t n = 1;
    bool quoted = false;
    for (char c : s) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) ++n;
    }
    return n;
  };
  EXPECT_EQ(count(io::pricing_csv_header()), count(io::pricing_csv_row(rec)));
  const auto j = nlohmann::json::parse(io::pricing_json(rec));
  EXPECT_TRUE(j["ergodic_bs"]["error"].is_string());
  EXPECT_TRUE(j["rotation"]["error"].is_null());
}
