#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "oneharm/error.hpp"
#include "oneharm_cli/commands.hpp"
#include "oneharm_cli/grid.hpp"
#include "oneharm_cli/svg.hpp"
#include "oneharm_cli/table.hpp"

using namespace oneharm;
using namespace oneharm::cli;

TEST(Grid, ParsesLinearAndLog) {
  const auto g = parse_grid("0.1:3:30");
  EXPECT_DOUBLE_EQ(g.a, 0.1);
  EXPECT_DOUBLE_EQ(g.b, 3.0);
  EXPECT_EQ(g.n, 30);
  EXPECT_FALSE(g.log);
  EXPECT_TRUE(parse_grid("1e-4:3e-3:16,log").log);
}

TEST(Grid, RejectsMalformed) {
  for (const char* bad : {"", "1:2", "1:2:x", "1:2:0", "1:2:3,lin", "a:b:c"}) {
    try {
      parse_grid(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::usage) << bad;
    }
  }
}

TEST(Grid, ApproachOneAxisIsGeometricInDistance) {
  const auto v = expand(parse_grid("0.9:0.999:3,log"), GridAxis::approach_one);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[1], 0.99, 1e-15);
  const auto w = expand(parse_grid("1:100:3,log"), GridAxis::plain);
  EXPECT_NEAR(w[1], 10.0, 1e-13);
}

TEST(Grid, IntRanges) {
  EXPECT_EQ(parse_int_range("3"), std::vector<int>{3});
  EXPECT_EQ(parse_int_range("2..5"), (std::vector<int>{2, 3, 4, 5}));
  EXPECT_THROW(parse_int_range("5..2"), Error);
  EXPECT_THROW(parse_int_range("x"), Error);
}

TEST(Table, CsvLayout) {
  Table t{"demo", {}, {"s", "value", "label"}, {}};
  t.add_meta("level", "quick");
  t.add_row({2LL, 0.1, std::string("a")});
  t.add_row({3LL, std::nan(""), std::string("b")});
  EXPECT_THROW(t.add_row({1LL}), Error);
  const std::string csv = to_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# oneharm-csv schema=demo/v1");
  std::getline(in, line);
  EXPECT_EQ(line, "# level=quick");
  std::getline(in, line);
  EXPECT_EQ(line, "s,value,label");
  std::getline(in, line);
  EXPECT_EQ(line, "2,0.10000000000000001,a");
  std::getline(in, line);
  EXPECT_EQ(line, "3,nan,b");
}

TEST(Table, DoublesRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Table, JsonRoundTrip) {
  Table t{"demo", {{"k", "v"}}, {"x", "y"}, {}};
  t.add_row({1LL, 0.25});
  t.add_row({2LL, INFINITY});
  const auto j = nlohmann::json::parse(to_json(t));
  EXPECT_EQ(j["schema"], "demo/v1");
  EXPECT_EQ(j["columns"][1], "y");
  EXPECT_EQ(j["rows"][0]["y"].get<double>(), 0.25);
  EXPECT_EQ(j["rows"][1]["y"], "inf");
  EXPECT_EQ(j["meta"]["k"], "v");
}

TEST(Svg, OnePolylinePerGroup) {
  Table t{"demo", {}, {"g", "x", "y"}, {}};
  for (int g = 0; g < 2; ++g)
    for (int i = 1; i <= 5; ++i) t.add_row({static_cast<long long>(g), double(i), double(i * i + g)});
  const std::string svg = to_svg(t, PlotSpec{"demo", "x", {"y"}, "g", false, true});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
  EXPECT_EQ(count, 2u);
}

TEST(Commands, ThresholdsExact) {
  Options opt;
  opt.s = "3";
  const auto out = run_command("thresholds", opt);
  const auto& t = out.panels.at(0).table;
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(std::get<std::string>(t.rows[0][t.column("zeta_c_exact")]), "4/27");
  EXPECT_EQ(std::get<std::string>(t.rows[0][t.column("zeta_univ_exact")]), "1/2");
}

TEST(Commands, SigmaKnownValue) {
  Options opt;
  opt.s = "2";
  opt.zeta = 0.1;
  const auto out = run_command("sigma", opt);
  const auto& t = out.panels.at(0).table;
  EXPECT_NEAR(t.number(0, t.column("sigma")), 1.10140853223752, 1e-13);
}

TEST(Commands, Deterministic) {
  Options opt;
  opt.s = "3";
  opt.grid = "0.99:0.9999:4,log";
  const auto a = to_csv(run_command("spectrum", opt).panels.at(0).table);
  const auto b = to_csv(run_command("spectrum", opt).panels.at(0).table);
  EXPECT_EQ(a, b);
}

TEST(Commands, UnknownCommandIsUsageError) {
  try {
    run_command("nope", Options{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::usage);
  }
}
