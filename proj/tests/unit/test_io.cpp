#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "grasscode/io.hpp"
#include "grasscode/reproduce.hpp"

using namespace grasscode;

namespace {

Constellation make(int M, int L) {
  DesignConfig cfg;
  cfg.M = M;
  cfg.L = L;
  return design(cfg);
}

Error parse_error(const std::string& text) {
  try {
    read_constellation(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected a parse error");
  return Error(Errc::Io, "");
}

}  // namespace

TEST_CASE("canonical doubles have 17 significant digits and round-trip exactly") {
  CHECK(format_double(1.0) == "1.0000000000000000e+00");
  CHECK(format_double(-0.25) == "-2.5000000000000000e-01");
  for (double v : {M_PI, 1.0 / 3.0, 1e-300, -7.123456789012345e17, std::sqrt(2.0)}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("constellation file round trip") {
  for (auto [M, L] : {std::pair{1, 4}, std::pair{2, 16}, std::pair{2, 8}, std::pair{3, 32}}) {
    const auto c = make(M, L);
    const auto text = write_constellation(c);
    const auto back = read_constellation(text);
    CHECK(back.T == c.T);
    CHECK(back.M == c.M);
    CHECK(back.L() == c.L());
    CHECK(back.design_case == c.design_case);
    CHECK(back.criterion == c.criterion);
    CHECK(back.x_star == c.x_star);
    CHECK(back.D == c.D);
    CHECK(back.labels == c.labels);
    REQUIRE(back.has_sparse());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      CHECK(back.points[i].matrix() == c.points[i].matrix());
      CHECK(back.origins[i].vector == c.origins[i].vector);
      CHECK(back.origins[i].t == c.origins[i].t);
      CHECK(back.origins[i].pair == c.origins[i].pair);
    }
    CHECK(write_constellation(back) == text);
    CHECK(constellation_hash(back) == constellation_hash(c));
  }
}

TEST_CASE("file layout") {
  const auto text = write_constellation(make(2, 4));
  const auto doc = nlohmann::json::parse(text);
  const auto& h = doc.at("header");
  CHECK(h.at("format_version") == kFormatVersion);
  CHECK(h.at("T") == 4);
  CHECK(h.at("M") == 2);
  CHECK(h.at("L") == 4);
  CHECK(h.at("design_case") == "ii");
  CHECK(h.at("criterion") == "dp");
  CHECK(h.at("basis_ordering_id") == "wh-shift^a-clock^b-phase{1,i}-v1");
  CHECK(doc.at("labels") == nlohmann::json({"00", "11", "01", "10"}));
  CHECK(doc.at("points").size() == 4);
  CHECK(doc.at("points")[0].size() == 4);     // T rows
  CHECK(doc.at("points")[0][0].size() == 2);  // M entries
  CHECK(doc.at("sparse")[0].size() == 4);
}

TEST_CASE("constellation hash is a stable 64-bit hex digest") {
  const auto a = constellation_hash(make(2, 16));
  CHECK(a.size() == 16);
  CHECK(a == constellation_hash(make(2, 16)));
  CHECK(a != constellation_hash(make(2, 8)));
}

TEST_CASE("parse errors carry line and column") {
  const auto e = parse_error("{\n  \"header\": {\n    \"T\": 4,,\n");
  CHECK(e.code() == Errc::Parse);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  CHECK(std::string(e.what()).find("column") != std::string::npos);
}

TEST_CASE("schema violations are rejected") {
  const auto good = nlohmann::json::parse(write_constellation(make(2, 4)));
  SUBCASE("L disagrees with the point count") {
    auto d = good;
    d["header"]["L"] = 8;
    CHECK(parse_error(d.dump()).code() == Errc::Parse);
  }
  SUBCASE("non-orthonormal point") {
    auto d = good;
    d["points"][1][0][0] = {3.0, 0.0};
    const auto e = parse_error(d.dump());
    CHECK(std::string(e.what()).find("/points/1") != std::string::npos);
  }
  SUBCASE("duplicate label") {
    auto d = good;
    d["labels"][1] = "00";
    CHECK(parse_error(d.dump()).code() == Errc::Parse);
  }
  SUBCASE("sparse rows disagree") {
    auto d = good;
    d["sparse"][0][0] = {1, 0.5, 0.0};
    CHECK(parse_error(d.dump()).code() == Errc::Parse);
  }
  SUBCASE("unknown version") {
    auto d = good;
    d["header"]["format_version"] = 99;
    CHECK(parse_error(d.dump()).code() == Errc::Parse);
  }
  SUBCASE("sparse and origins are optional") {
    auto d = good;
    d.erase("sparse");
    d.erase("origins");
    const auto c = read_constellation(d.dump());
    CHECK_FALSE(c.has_sparse());
    CHECK(c.origins.empty());
  }
}

TEST_CASE("a duplicated point reads back and gives zero distance") {
  auto d = nlohmann::json::parse(write_constellation(make(2, 4)));
  d["points"][3] = d["points"][0];
  d.erase("sparse");
  const auto c = read_constellation(d.dump());
  const auto r = compute_metrics_report(c, 2);
  CHECK(r.metrics.d_g_min == doctest::Approx(0.0));
  CHECK(r.metrics.dp_min == 0.0);
  CHECK(format_metrics_report(r).find("inf") != std::string::npos);
}

TEST_CASE("save and load through the filesystem") {
  const auto path = std::filesystem::temp_directory_path() / "grasscode_io_test.json";
  const auto c = make(2, 16);
  save_constellation(c, path);
  const auto back = load_constellation(path);
  CHECK(constellation_hash(back) == constellation_hash(c));
  std::filesystem::remove(path);
  try {
    load_constellation(path);
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Io);
  }
}

TEST_CASE("metrics report matches direct recomputation") {
  const auto c = make(2, 16);
  const auto r = compute_metrics_report(read_constellation(write_constellation(c)), 2);
  const auto m = constellation_metrics(c.points, 2);
  CHECK(r.metrics.d_g_min == m.d_g_min);
  CHECK(r.metrics.d_c_min == m.d_c_min);
  CHECK(r.metrics.dp_min == m.dp_min);
  CHECK(r.metrics.ub == m.ub);
}

TEST_CASE("csv writers") {
  SimResult r;
  r.points.push_back({10.0, 100, 5, 7, 0.05, 0.0175, 0.01, 0.002});
  const auto csv = sim_result_csv(r);
  CHECK(csv.rfind("snr_db,trials,sym_errors,bit_errors,ser,ber,ser_ci,ber_ci\n", 0) == 0);
  CHECK(csv.find("\n1.0000000000000000e+01,100,5,7,") != std::string::npos);
  const auto j = nlohmann::json::parse(sim_result_json(r));
  CHECK(j.at("points")[0].at("sym_errors") == 5);

  MappingSweep s;
  s.trace.push_back({0.0, 1.0, 0.5, 0.0, std::numeric_limits<double>::infinity()});
  const auto sc = sweep_csv(s);
  CHECK(sc.rfind("x,d_g,d_c,dp,ub\n", 0) == 0);
  CHECK(sc.find(",inf\n") != std::string::npos);
}

TEST_CASE("basis dump lists all 2M^2 matrices") {
  const auto doc = nlohmann::json::parse(write_basis_dump(2));
  CHECK(doc.at("points").size() == 8);
  CHECK(doc.at("labels")[3] == "S^0 W^1 *i");
}

TEST_CASE("reference tables") {
  const auto t3 = reproduce_table3();
  CHECK(t3.cells.size() == 12);
  CHECK(t3.pass());
  const auto t4 = reproduce_table4();
  CHECK(t4.cells.size() == 6);
  CHECK(t4.pass());
  CHECK(format_table_report(t3).find("all cells match") != std::string::npos);
  TableCell bad{"x", "DP", 1.0, 1.01};
  CHECK_FALSE(bad.pass());
}
