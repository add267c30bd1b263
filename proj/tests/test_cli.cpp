#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "entroscope/cft1d.hpp"

using namespace entroscope;
using cli::OutputFormat;

namespace {

struct RunCapture {
  int code;
  std::string out;
  std::string err;
};

RunCapture run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

double first_value(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);
  return std::stod(line.substr(line.find(',') + 1));
}

}  // namespace

TEST_CASE("cft1d --mi emits the closed-form value") {
  const auto r = run_cli({"cft1d", "--mi", "--L", "1", "--x", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("param,value\n", 0) == 0);
  CHECK(std::abs(first_value(r.out) - std::log(4.0 / 3.0) / 3.0) <= 1e-15);
  CHECK(r.out.find("# meta: unit=nats") != std::string::npos);
  CHECK(r.out.find("# meta: L=") != std::string::npos);
}

TEST_CASE("identical configs produce identical bytes") {
  const std::vector<std::string> args{"scan",  "--engine", "twist-flat", "--param",
                                      "x",     "--from",   "0.05",       "--to",
                                      "0.5",   "--points", "7",          "--log-grid",
                                      "--L",   "1",        "--panels",   "128",
                                      "--format", "json"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run_cli({"holo", "--constants", "--format", "json"});
  const auto d = run_cli({"holo", "--constants", "--format", "json"});
  CHECK(c.out == d.out);
}

TEST_CASE("scan + fit pipeline recovers the holographic collision exponent") {
  const auto r = run_cli({"scan", "--engine", "holo", "--param", "x", "--from", "1e-3",
                          "--to", "0.3", "--points", "40", "--log-grid", "--then-fit",
                          "--w", "1", "--L", "100", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"kind\":\"power\"") != std::string::npos);
  const auto pos = r.out.find("\"exponent\":");
  REQUIRE(pos != std::string::npos);
  const double exponent = std::stod(r.out.substr(pos + 11));
  CHECK(std::abs(exponent - 1.0) <= 0.02);
}

TEST_CASE("lattice and cft1d commands agree at L=64, x=16") {
  const auto lat = run_cli({"lattice", "--mi", "--L", "64", "--x", "16"});
  const auto cft = run_cli({"cft1d", "--mi", "--L", "64", "--x", "16"});
  REQUIRE(lat.code == 0);
  REQUIRE(cft.code == 0);
  CHECK(std::abs(first_value(lat.out) - first_value(cft.out)) <= 0.02);
}

TEST_CASE("CSV roundtrip: emit, parse, emit is byte-stable") {
  const auto r = run_cli({"scan", "--engine", "cft1d", "--param", "x", "--from", "0.01",
                          "--to", "1", "--points", "9", "--log-grid", "--L", "2"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto series = cli::parse_csv_series(in);
  std::ostringstream again;
  cli::emit_series(series, std::nullopt, OutputFormat::csv, again);
  CHECK(again.str() == r.out);
  CHECK(series.param_name == "x");
  CHECK(series.points.size() == 9);
}

TEST_CASE("json without a fit carries fit:null") {
  const auto r = run_cli({"cft1d", "--mi", "--L", "1", "--x", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"fit\":null") != std::string::npos);
  CHECK(r.out.find("\"param_name\":\"x\"") != std::string::npos);
}

TEST_CASE("fit subcommand consumes stored series") {
  const auto scan = run_cli({"scan", "--engine", "holo", "--param", "x", "--from",
                             "1e-3", "--to", "3e-2", "--points", "25", "--log-grid",
                             "--w", "1", "--L", "100"});
  REQUIRE(scan.code == 0);
  const std::string path = "cli_fit_input.csv";
  {
    std::ofstream f(path);
    f << scan.out;
  }
  const auto fit = run_cli({"fit", "--input", path});
  std::remove(path.c_str());
  REQUIRE(fit.code == 0);
  CHECK(fit.out.find("# fit: kind=power") != std::string::npos);
}

TEST_CASE("validation failures exit 2 and name the parameter") {
  const auto bad_x = run_cli({"holo", "--mi", "--w", "1", "--L", "100", "--x", "-1"});
  CHECK(bad_x.code == 2);
  CHECK(bad_x.err.find("x") != std::string::npos);

  const auto bad_eps = run_cli({"cft1d", "--single", "--L", "1", "--epsilon", "2"});
  CHECK(bad_eps.code == 2);
  CHECK(bad_eps.err.find("epsilon") != std::string::npos);

  const auto unknown = run_cli({"cft1d", "--mi", "--L", "1", "--x", "1", "--bogus", "3"});
  CHECK(unknown.code == 2);

  const auto wrong_param =
      run_cli({"scan", "--engine", "holo", "--param", "y", "--from", "0.1", "--to",
               "1", "--points", "8", "--w", "1", "--L", "10"});
  CHECK(wrong_param.code == 2);
  CHECK(wrong_param.err.find("param") != std::string::npos);
}

TEST_CASE("config file fills defaults, flags override, unknown keys rejected") {
  const std::string path = "cli_cfg_test.txt";
  {
    std::ofstream f(path);
    f << "L=1\nx=1\n";
  }
  const auto from_file = run_cli({"cft1d", "--mi", "--config", path});
  REQUIRE(from_file.code == 0);
  CHECK(std::abs(first_value(from_file.out) - std::log(4.0 / 3.0) / 3.0) <= 1e-15);

  const auto overridden = run_cli({"cft1d", "--mi", "--config", path, "--x", "2"});
  REQUIRE(overridden.code == 0);
  CHECK(std::abs(first_value(overridden.out) -
                 cft1d::mutual_information_equal_intervals(1.0, 2.0)) <= 1e-15);

  {
    std::ofstream f(path);
    f << "L=1\nnot_a_key=7\n";
  }
  const auto rejected = run_cli({"cft1d", "--mi", "--config", path, "--x", "1"});
  CHECK(rejected.code == 2);
  std::remove(path.c_str());
}

TEST_CASE("unwritable output path exits 2") {
  const auto r = run_cli({"cft1d", "--mi", "--L", "1", "--x", "1", "--output",
                          "no_such_dir/out.csv"});
  CHECK(r.code == 2);
  CHECK(r.err.find("output") != std::string::npos);
}

#ifdef ENTROSCOPE_BIN
TEST_CASE("installed binary behaves like the library entry point") {
  const std::string bin = ENTROSCOPE_BIN;
  const std::string cmd = bin + " cft1d --mi --L 1 --x 1 --output bin_out.csv";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream f("bin_out.csv");
  std::stringstream buf;
  buf << f.rdbuf();
  const auto lib = run_cli({"cft1d", "--mi", "--L", "1", "--x", "1"});
  CHECK(buf.str() == lib.out);
  std::remove("bin_out.csv");

  const int code = std::system((bin + " holo --mi --w 1 --L 1 --x -1 2>/dev/null").c_str());
  CHECK(WEXITSTATUS(code) == 2);
}
#endif
