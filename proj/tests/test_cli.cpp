#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subent/cli.hpp"
#include "subent/io.hpp"
#include "subent/symmetric.hpp"
#include "test_support.hpp"

using namespace subent;
using namespace subent::testing;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "subent");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("state JSON round trip") {
  std::mt19937_64 rng(50);
  const DensityMatrix rho = random_state(rng, 3, 2);
  const DensityMatrix back = parse_state_json(state_to_json(rho));
  CHECK(max_abs(back.matrix() - rho.matrix()) == 0.0);
  CHECK(error_of([] { parse_state_json("{\"dim\": 2, \"entries\": [[1,0]]}"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_state_json("not json"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_state_json("{\"dim\": 1, \"entries\": [[2,0]]}"); }) == ErrorCode::NotUnitTrace);
  CHECK(error_of([] { read_state_file("/nonexistent/state.json"); }) == ErrorCode::IoError);
}

TEST_CASE("decomposition JSON round trip") {
  const ExtremalDecomposition dec = cyclic_orbit_decomposition(orbit_vector(0.5, 0.4));
  const ExtremalDecomposition back = parse_decomposition_json(decomposition_to_json(dec));
  CHECK(back.weights() == dec.weights());
  for (std::size_t j = 0; j < dec.size(); ++j) {
    CHECK(max_abs(back.decomposers()[j].amplitudes() - dec.decomposers()[j].amplitudes()) == 0.0);
  }
}

TEST_CASE("scan table format") {
  std::ostringstream out;
  cli::emit_scan({{1.0, std::log(3.0), std::log(3.0), {0.0}, 0.0}}, cli::Format::Csv, out);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "F,E_closed,E_numeric,theta_stars,gap");
  CHECK(rows[1] == "1.00000000,1.09861229,1.09861229,0.000000000,0.00000000");

  std::ostringstream absent;
  cli::emit_scan({{0.02, std::nullopt, 0.623010528886039, {0.348059742, 1.74633536}, std::nullopt}}, cli::Format::Csv,
                 absent);
  CHECK(lines(absent.str())[1] == "0.0200000000,,0.623010529,0.348059742;1.746335360,");

  std::ostringstream json;
  cli::emit_scan({{0.5, std::nullopt, 0.1, {}, std::nullopt}}, cli::Format::Json, json);
  CHECK(json.str().find("\"E_closed\": null") != std::string::npos);
  CHECK(error_of([] {
          std::ostringstream sink;
          cli::emit_scan({}, cli::Format::Csv, sink);
        }) == ErrorCode::InvalidConfig);
}

TEST_CASE("closed-form lookups") {
  CHECK_FALSE(cli::symmetric_closed_form(3, 0.02).has_value());
  CHECK(*cli::symmetric_closed_form(3, 0.0) == doctest::Approx(std::log(2.0)));
  CHECK(*cli::symmetric_closed_form(3, 1.0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(*cli::symmetric_closed_form(2, 0.75) == doctest::Approx(0.245775366668471).epsilon(1e-13));
  CHECK_FALSE(cli::symmetric_closed_form(4, 0.2).has_value());
  CHECK(*cli::symmetric_closed_form(4, 0.5) == doctest::Approx(0.319368435554353).epsilon(1e-13));

  // Above 4(d-1)/d^2 the isotropic value is the line (F - 1) d ln(d-1)/(d-2) + ln d.
  CHECK(cli::isotropic_closed_form(3, 0.95) == doctest::Approx(0.994640211584118).epsilon(1e-13));
  CHECK(cli::isotropic_closed_form(4, 0.99) == doctest::Approx(1.36432211534653).epsilon(1e-13));
  CHECK(cli::isotropic_closed_form(3, 0.2) == 0.0);
  CHECK(cli::isotropic_closed_form(2, 0.75) == doctest::Approx(0.245775366668471).epsilon(1e-13));
}

TEST_CASE("command examples") {
  const Run top = run({"symmetric", "--d", "3", "--F", "0.888888889", "--method", "closed"});
  CHECK(top.code == 0);
  CHECK(lines(top.out)[0] == "E = 0.867563229");

  const Run third = run({"symmetric", "--d", "3", "--F", "0.333333333", "--method", "closed"});
  CHECK(lines(third.out)[0] == "E = 0.00000000");

  const Run split = run({"bifurcate", "--d", "3", "--f-lo", "0", "--f-hi", "0.2"});
  REQUIRE(split.code == 0);
  const std::string first = lines(split.out)[0];
  CHECK(first.rfind("F* = ", 0) == 0);
  CHECK(std::abs(std::stod(first.substr(5)) - 0.05665) < 5e-4);

  const Run missing = run({"symmetric", "--d", "3", "--F", "0.02", "--method", "closed"});
  CHECK(lines(missing.out)[0] == "E = ");
}

TEST_CASE("scan rows") {
  const Run scan = run({"scan", "--d", "3", "--f-lo", "0", "--f-hi", "0.888888888888889", "--steps", "90"});
  REQUIRE(scan.code == 0);
  const auto rows = lines(scan.out);
  CHECK(rows.size() == 91);
  CHECK(rows[0] == "F,E_closed,E_numeric,theta_stars,gap");
  // Rows 1..5 lie in (0, F*): no closed form, two minimizing angles.
  CHECK(rows[2].find(",,") != std::string::npos);
  CHECK(rows[2].find(';') != std::string::npos);

  const double f_c = 0.5 + std::sqrt(2.0) / 3.0;
  const Run witness = run({"scan", "--d", "3", "--f-lo", std::to_string(f_c), "--f-hi", std::to_string(f_c), "--steps", "1"});
  const std::string row = lines(witness.out)[1];
  const double gap = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(gap > 0.0);
  CHECK(std::abs(gap - 5.7e-4) < 2e-4);
}

TEST_CASE("numeric commands and formats") {
  const Run both = run({"case1", "--a", "0.5", "--b-re", "0.25", "--method", "both", "--restarts", "4"});
  REQUIRE(both.code == 0);
  CHECK(both.out.find("E_closed = 0.245775367") != std::string::npos);
  CHECK(both.out.find("E_numeric = 0.245775367") != std::string::npos);

  const Run json = run({"case1", "--a", "0.5", "--b-re", "0.25", "--format", "json"});
  CHECK(json.out.find("\"decomposition\"") != std::string::npos);

  const Run csv = run({"eof-isotropic", "--d", "2", "--F", "0.75", "--method", "both", "--length", "4",
                       "--restarts", "4", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(lines(csv.out)[0].rfind("E_closed,E_numeric,gap", 0) == 0);

  const Run emb = run({"embed", "--d", "3"});
  CHECK(emb.out.find("F_W1 = 1.00000000") != std::string::npos);
  CHECK(emb.out.find("F_W2 = 0.888888889") != std::string::npos);
}

TEST_CASE("double command reads a state file") {
  const std::string path = "subent_test_state.json";
  {
    std::ofstream f(path);
    f << state_to_json(perm_symmetric_state(2, 0.8));
  }
  const Run r = run({"double", "--state", path, "--restricted", "--restarts", "4"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  const auto out = lines(r.out);
  CHECK(std::abs(std::stod(out[2].substr(out[2].find('=') + 1))) < 1e-6);
}

TEST_CASE("output file") {
  const std::string path = "subent_test_scan.csv";
  const Run r = run({"scan", "--d", "3", "--f-lo", "0.5", "--f-hi", "0.6", "--steps", "2", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "F,E_closed,E_numeric,theta_stars,gap");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const Run range = run({"symmetric", "--F", "1.5"});
  CHECK(range.code == 2);
  CHECK(range.err.find("--F") != std::string::npos);
  const Run unknown = run({"symmetric", "--F", "0.5", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("--bogus") != std::string::npos);
  CHECK(run({"scan", "--steps", "0"}).code == 2);

  const Run domain = run({"eof-isotropic", "--d", "3", "--F", "0.5", "--restricted", "--method", "numeric"});
  CHECK(domain.code == 1);
  CHECK(domain.err.find("NotInDiagonalClass") != std::string::npos);
  const Run nobracket = run({"bifurcate", "--f-lo", "0.5", "--f-hi", "0.8"});
  CHECK(nobracket.code == 1);
  CHECK(nobracket.err.find("NoBracket") != std::string::npos);
  CHECK(run({"double", "--state", "/nonexistent.json"}).code == 1);
}

TEST_CASE("byte-identical reruns") {
  const std::vector<std::string> args = {"scan", "--d", "4", "--f-lo", "0.3", "--f-hi", "0.6", "--steps", "3",
                                         "--restarts", "3", "--seed", "9"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
