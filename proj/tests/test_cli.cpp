#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "shearhom/commands.hpp"
#include "shearhom/errors.hpp"
#include "shearhom/report.hpp"

using namespace shearhom;
using namespace fixture;

namespace {

std::string config_path(const std::string& name) {
  return std::string(SHEARHOM_CONFIG_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("shearhom_test_" + name)).string();
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) { header = false; continue; }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

const char* kMinimal = R"({
  "cell": {"a1": 0.01, "a2": 0.01},
  "phases": [
    {"name": "St", "mu_pa": 80e9, "rho_kgm3": 7800, "shape": {"kind": "matrix"}},
    {"name": "Ep", "mu_pa": 1.48e9, "rho_kgm3": 1140,
     "shape": {"kind": "square", "side": 0.5, "center": [0.5, 0.5]}}
  ],
  "run": {"j": 5, "m": 20, "mu0": "mean", "kappa_deg": 30, "path": "direct"}
})";

}  // namespace

TEST_CASE("config parsing") {
  const Config c = parse_config(kMinimal);
  CHECK(c.a1 == 0.01);
  CHECK(c.phases.size() == 2);
  CHECK(c.series.j == 5);
  CHECK(c.series.m == 20);
  CHECK(c.series.mu0.kind == ReferenceModulus::Kind::mean);
  CHECK(c.series.path == ApplyPath::direct);
  CHECK(c.kappa_deg == 30);
  CHECK_FALSE(c.sweep.has_value());
  const Lattice lat = build_lattice(c);
  CHECK(lat.filling_fractions()[1] == doctest::Approx(0.25));

  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"cell":{"a1":1,"a2":1},"phases":[]})"), ConfigError);
  for (const auto& entry : std::filesystem::directory_iterator(SHEARHOM_CONFIG_DIR)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(build_lattice(load_config(entry.path().string())));
  }
}

TEST_CASE("mu0 and path parsing") {
  CHECK(parse_mu0("mid").kind == ReferenceModulus::Kind::midrange);
  CHECK(parse_mu0("mean").kind == ReferenceModulus::Kind::mean);
  CHECK(parse_mu0("5e10").pa == 5e10);
  CHECK_THROWS_AS(parse_mu0("-1"), ConfigError);
  CHECK_THROWS_AS(parse_mu0("fast"), ConfigError);
  CHECK(parse_path("conv") == ApplyPath::convolution);
  CHECK(parse_path("direct") == ApplyPath::direct);
  CHECK_THROWS_AS(parse_path("fft"), ConfigError);
  CHECK(parse_mu0(to_string(ReferenceModulus::value(3e9))).pa == 3e9);
}

TEST_CASE("config hash") {
  Config a = parse_config(kMinimal);
  const Config b = parse_config(kMinimal);
  CHECK(config_hash(a) == config_hash(b));
  CliOptions o;
  o.j = 6;
  apply_overrides(a, o);
  CHECK(config_hash(a) != config_hash(b));
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("number formatting") {
  CHECK(format_number(1664.2012345678912) == "1664.20123457");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("sweep output is byte-identical and has the right endpoints") {
  CliOptions o;
  o.config = config_path("fig1_al_pb.json");
  o.j = 4;
  o.out = temp("sweep_a.csv");
  o.threads = 1;
  std::ostringstream err;
  CHECK(cmd_sweep(o, err) == 0);
  const std::string first = slurp(o.out);
  o.out = temp("sweep_b.csv");
  o.threads = 4;
  CHECK(cmd_sweep(o, err) == 0);
  CHECK(first == slurp(o.out));

  CHECK(first.find("m/s") != std::string::npos);
  CHECK(first.find("config_hash=") != std::string::npos);
  CHECK(first.find(kCsvColumns) != std::string::npos);
  const auto r = rows(first);
  REQUIRE(r.size() == 21);
  CHECK(r.front()[0] == "0");
  CHECK(r.back()[0] == "1");
  const double c_al = std::sqrt(26e9 / 2700.0), c_pb = std::sqrt(14.9e9 / 11600.0);
  for (std::size_t k = 1; k <= 7; ++k) {
    CHECK(rel(std::stod(r.front()[k]), c_al) < 1e-10);
    CHECK(rel(std::stod(r.back()[k]), c_pb) < 1e-10);
  }
  std::filesystem::remove(temp("sweep_a.csv"));
  std::filesystem::remove(temp("sweep_b.csv"));
}

TEST_CASE("estimate and converge") {
  CliOptions o;
  o.config = config_path("homogeneous_steel.json");
  o.out = temp("est.csv");
  std::ostringstream err;
  CHECK(cmd_estimate(o, err) == 0);
  const auto r = rows(slurp(o.out));
  REQUIRE(r.size() == 1);
  CHECK(rel(std::stod(r[0][1]), std::sqrt(80e9 / 7800)) < 1e-12);

  o.config = config_path("fig1_al_pb.json");
  o.out = temp("conv.csv");
  o.j_list = {2, 4};
  o.m_list = {2, 5};
  CHECK(cmd_converge(o, err) == 0);
  const std::string text = slurp(o.out);
  CHECK(text.find("j,N,modes,m,c_numeric,rel_dev,within_1pct") != std::string::npos);
  CHECK(std::filesystem::exists(o.out + ".terms.csv"));
  std::filesystem::remove(temp("est.csv"));
  std::filesystem::remove(o.out);
  std::filesystem::remove(o.out + ".terms.csv");
}

TEST_CASE("validate suites pass") {
  CliOptions o;
  for (const char* suite : {"duality", "bounds", "oracle", "appendix"}) {
    o.suite = suite;
    std::ostringstream out;
    CAPTURE(suite);
    CHECK(cmd_validate(o, out) == 0);
    CHECK(out.str().find("FAIL ") == std::string::npos);
  }
  o.suite = "nonsense";
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_validate(o, out), ConfigError);
}
