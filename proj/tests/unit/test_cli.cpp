#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "doctest.h"
#include "triplewell/errors.hpp"

namespace fs = std::filesystem;
using namespace triplewell;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "triplewell_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const json& doc) {
  const fs::path path = dir / "config.json";
  std::ofstream(path) << doc.dump();
  return path;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(TRIPLEWELL_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& path, std::string* header = nullptr) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string field_of(const json& doc) {
  try {
    app::parse_config(doc);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(app::format_number(0.1) == "0.10000000000000001");
  CHECK(app::format_number(-2.5) == "-2.5");
  CHECK(app::format_number(1.5e-300) == "1.5000000000000001e-300");
  for (double v : {std::numbers::pi, -1.0 / 3.0, 6.02e23}) CHECK(std::stod(app::format_number(v)) == v);
}

TEST_CASE("config parsing") {
  const app::RunConfig defaults = app::parse_config(json::object());
  CHECK(defaults.model.nu == -0.02);
  CHECK(defaults.grid.points == 2001);
  CHECK(defaults.n_max == 40);
  CHECK_FALSE(defaults.packet.has_value());
  const app::RunConfig c = app::parse_config(
      {{"model", {{"mu", -2.0}}}, {"packet", {{"well", "right"}, {"squeeze", 0.5}}}, {"times", {1.0, 2.0}}});
  CHECK(c.model.mu == -2.0);
  CHECK(c.packet->well == Well::right);
  CHECK(c.times.size() == 2);
  CHECK(field_of({{"model", {{"bogus", 1}}}}) == "model.bogus");
  CHECK(field_of({{"extra", 1}}) == "extra");
  CHECK(field_of({{"model", {{"Lambda", -1.0}}}}) == "Lambda");
  CHECK(field_of({{"model", {{"nu", "x"}}}}) == "nu");
  CHECK(field_of({{"grid", {{"points", 2}}}}) == "grid.points");
  CHECK(field_of({{"packet", {{"well", "middle"}}}}) == "packet.well");
  CHECK(field_of({{"packet", {{"well", "left"}, {"center", 0.0}}}}) == "packet");
  CHECK(field_of({{"n_max", 70}}) == "n_max");
  CHECK(field_of({{"times", {-1.0}}}) == "times");
  const json round = app::to_json(c);
  CHECK(app::parse_config(round).model.mu == -2.0);
}

TEST_CASE("potential command") {
  const fs::path dir = scratch("potential");
  const fs::path cfg = write_config(dir, {{"model", {{"mu", -1.0}}}, {"outputs", (dir / "a").string()}});
  REQUIRE(run_cli("potential --config " + cfg.string(), dir / "log") == 0);
  std::string header;
  const auto rows = read_csv(dir / "a" / "potential.csv", &header);
  CHECK(header == "xi,U");
  REQUIRE(rows.size() == 2001);
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) worst = std::max(worst, std::abs(rows[i][1] - rows[rows.size() - 1 - i][1]));
  CHECK(worst < 1e-10);
  const json extrema = json::parse(slurp(dir / "a" / "extrema.json"));
  CHECK(extrema["minima"].size() == 3);
  CHECK(extrema["barriers"].size() == 2);

  REQUIRE(run_cli("potential --config " + cfg.string() + " --out " + (dir / "b").string(), dir / "log") == 0);
  CHECK(slurp(dir / "a" / "potential.csv") == slurp(dir / "b" / "potential.csv"));
}

TEST_CASE("states command") {
  const fs::path dir = scratch("states");
  const fs::path cfg = write_config(dir, {{"model", {{"mu", -1.0}}}, {"states", 6}});
  REQUIRE(run_cli("states --config " + cfg.string() + " --out " + dir.string(), dir / "log") == 0);
  std::string header;
  const auto rows = read_csv(dir / "states.csv", &header);
  CHECK(header == "xi,psi0,psi1,psi2,psi3,psi4,psi5");
  CHECK(rows[1000][0] == 0.0);
  CHECK(std::abs(rows[1000][2]) < 1e-14);
  const double h = rows[1][0] - rows[0][0];
  for (std::size_t col = 1; col <= 6; ++col) {
    double norm = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) norm += (i == 0 || i + 1 == rows.size() ? 0.5 : 1.0) * h * rows[i][col] * rows[i][col];
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
  }
  const json energies = json::parse(slurp(dir / "energies.json"));
  CHECK(energies.size() == 6);
  CHECK(energies[0].get<double>() == doctest::Approx(-0.5));
  CHECK(energies[1].get<double>() == doctest::Approx(0.48));
  CHECK(energies[3].get<double>() == doctest::Approx(1.5));
}

TEST_CASE("expand command") {
  const fs::path dir = scratch("expand");
  const fs::path cfg = write_config(dir, {{"model", {{"mu", -0.03}, {"Lambda", 0.05}}},
                                          {"packet", {{"well", "right"}, {"squeeze", 0.8}}}});
  REQUIRE(run_cli("expand --config " + cfg.string() + " --out " + dir.string(), dir / "log") == 0);
  const json c = json::parse(slurp(dir / "coefficients.json"));
  CHECK(c.size() == 41);
  CHECK(c[1]["index"] == 1);
  CHECK(std::abs(std::abs(c[1]["c"].get<double>()) - 0.96) < 0.02);
  CHECK(slurp(dir / "log").find("state number") != std::string::npos);
}

TEST_CASE("evolve command in both modes") {
  const fs::path dir = scratch("evolve");
  const fs::path cfg = write_config(dir, {{"model", {{"mu", -0.03}}},
                                          {"packet", {{"well", "left"}, {"squeeze", 1.0}}},
                                          {"times", {0.0, 0.7, std::numbers::pi}}});
  REQUIRE(run_cli("evolve --method both --config " + cfg.string() + " --out " + dir.string(), dir / "log") == 0);
  CHECK(slurp(dir / "log").find("caustic-adjacent") != std::string::npos);
  const json d = json::parse(slurp(dir / "discrepancy.json"));
  CHECK(d["max_projected_packet"].get<double>() <= 1e-4);
  std::string header;
  const auto wells = read_csv(dir / "wells.csv", &header);
  CHECK(header == "T,pl,pc,pr,autocorr");
  REQUIRE(wells.size() == 3);
  CHECK(wells[2][0] == doctest::Approx(std::numbers::pi + 1e-2));
  for (const auto& row : wells) CHECK(row[1] + row[2] + row[3] == doctest::Approx(1.0).epsilon(1e-5));
  const auto evolution = read_csv(dir / "evolution.csv", &header);
  CHECK(header == "T,xi,re,im,abs");
  CHECK(evolution.size() == 3 * 2001);
}

TEST_CASE("exit codes and dry run") {
  const fs::path dir = scratch("errors");
  std::ofstream(dir / "bad.json") << R"({"model": {"nu": 0.3}})";
  CHECK(run_cli("potential --config " + (dir / "bad.json").string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("nu") != std::string::npos);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(run_cli("states --config " + (dir / "broken.json").string(), dir / "log") == 2);
  std::ofstream(dir / "lambda.json") << R"({"model": {"Lambda": -0.05}})";
  CHECK(run_cli("verify --config " + (dir / "lambda.json").string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("Lambda") != std::string::npos);
  CHECK(run_cli("expand --out " + dir.string(), dir / "log") == 2);
  CHECK(run_cli("nonsense", dir / "log") == 2);
  CHECK(run_cli("evolve --method fast", dir / "log") == 2);

  const fs::path cfg = write_config(dir, {{"model", {{"mu", -2.0}}}});
  REQUIRE(run_cli("potential --dry-run --config " + cfg.string(), dir / "log") == 0);
  const json resolved = json::parse(slurp(dir / "log"));
  CHECK(resolved["model"]["mu"].get<double>() == -2.0);
  CHECK(resolved["command"] == "potential");
  CHECK_FALSE(fs::exists(dir / "potential.csv"));
}

TEST_CASE("verify command") {
  const fs::path dir = scratch("verify");
  const int code = run_cli("verify --out " + dir.string(), dir / "log");
  const json report = json::parse(slurp(dir / "verify.json"));
  CHECK(code == (report["passed"].get<bool>() ? 0 : 4));
  std::vector<std::string> failing;
  bool has_ratios = false;
  for (const json& c : report["checks"]) {
    if (!c["passed"].get<bool>()) failing.push_back(c["name"]);
    if (c["name"] == "normalization_ratios") has_ratios = c["detail"].size() == 6;
  }
  CHECK(has_ratios);
  // Reference state 9 has no single sign across the Table 2 rows.
  CHECK(failing == std::vector<std::string>{"table2_signs"});
}
