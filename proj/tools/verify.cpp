#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>

#include "app.hpp"
#include "reference_tables.hpp"
#include "triplewell/errors.hpp"
#include "triplewell/oracle.hpp"
#include "triplewell/propagator.hpp"

namespace triplewell::app {

namespace {

using nlohmann::json;

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  double seconds = 0.0;
  json detail;
  std::string error;
};

Check timed(const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  c.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.error = e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::vector<ModelParams> table_models() {
  std::vector<ModelParams> out;
  for (const auto* table : {&table1(), &table2()}) {
    for (const TableRow& row : *table) out.push_back(row.model);
  }
  return out;
}

json params_json(const ModelParams& p) {
  return {{"omega", p.omega}, {"nu", p.nu}, {"mu", p.mu}, {"Lambda", p.Lambda}, {"Lambda1", p.Lambda1}};
}

void wronskian_check(Check& c) {
  c.threshold = 1e-9;
  for (double nu : {-0.02, -0.3, -0.45, -0.03, -1.0, -2.0}) {
    const double exact = 2.0 * std::sqrt(std::numbers::pi) / oracle::gamma_reference(-nu);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double xi = -6.0 + 12.0 * k / 19.0;
      worst = std::max(worst, std::abs(base_wronskian(PcfOrder(nu), 1.0, xi) - exact) / std::abs(exact));
    }
    c.detail[format_number(nu)] = worst;
    c.measured = std::max(c.measured, worst);
  }
  c.passed = c.measured <= c.threshold;
}

void orthonormality_check(Check& c, const std::vector<ModelParams>& models) {
  c.threshold = 1e-7;
  const int intervals = 12000;
  const double h = 24.0 / intervals;
  for (const ModelParams& p : models) {
    const Model m(p);
    std::vector<std::vector<double>> gram(11, std::vector<double>(11));
    std::vector<double> psi(11);
    for (int i = 0; i <= intervals; ++i) {
      m.wavefunctions(-12.0 + i * h, psi);
      const double w = h / 3.0 * (i == 0 || i == intervals ? 1.0 : (i % 2 ? 4.0 : 2.0));
      for (int a = 0; a < 11; ++a) {
        for (int b = 0; b <= a; ++b) gram[a][b] += w * psi[a] * psi[b];
      }
    }
    double worst = 0.0;
    for (int a = 0; a < 11; ++a) {
      for (int b = 0; b <= a; ++b) worst = std::max(worst, std::abs(gram[a][b] - (a == b ? 1.0 : 0.0)));
    }
    c.detail.push_back({{"model", params_json(p)}, {"max_gram_error", worst}});
    c.measured = std::max(c.measured, worst);
  }
  c.passed = c.measured <= c.threshold;
}

void spectrum_check(Check& c, const std::vector<ModelParams>& models) {
  c.threshold = 1e-5;
  double worst_raw = 0.0;
  for (const ModelParams& p : models) {
    const Model m(p);
    const auto s = oracle::fd_eigensolve_extrapolated([&](double x) { return m.potential(x); },
                                                      GridSpec{-10.0, 10.0, 4001}, 10);
    double worst = 0.0, raw = 0.0;
    for (int n = 0; n < 10; ++n) {
      worst = std::max(worst, std::abs(s.extrapolated[n] - m.eigenvalue(n)));
      raw = std::max(raw, std::abs(s.coarse[n] - m.eigenvalue(n)));
    }
    c.detail.push_back({{"model", params_json(p)}, {"extrapolated_error", worst}, {"raw_4001_error", raw}});
    c.measured = std::max(c.measured, worst);
    worst_raw = std::max(worst_raw, raw);
  }
  c.detail.push_back({{"max_raw_4001_error", worst_raw}});
  c.passed = c.measured <= c.threshold;
}

void normalization_check(Check& c, const std::vector<ModelParams>& models) {
  c.threshold = 1e-6;
  for (const ModelParams& p : models) {
    const auto n = Model(p).normalization_constants();
    c.detail.push_back({{"model", params_json(p)}, {"ground_ratio", n.ground_ratio}, {"first_ratio", n.first_ratio}});
    c.measured = std::max({c.measured, std::abs(n.ground_ratio - 1.0), std::abs(n.first_ratio - 1.0)});
  }
  c.passed = c.measured <= c.threshold;
}

void equivalence_check(Check& c) {
  c.threshold = 1e-4;
  const GridSpec grid{};
  for (const TableRow* row : {&table1()[0], &table2()[0]}) {
    const Model m(row->model);
    const auto packet = initial_packet(packet_in_well(m.well_partition(), row->well, row->squeeze), grid);
    const auto coeffs = expand(m, packet, 40);
    const auto projected = evolve_spectral(m, coeffs, 0.0, grid);
    for (double T : {0.7, std::numbers::pi / 2 + 0.2, 3.0 * std::numbers::pi + 0.5}) {
      const auto a = evolve_propagator(m, projected, TimePoint::at(T));
      const auto b = evolve_spectral(m, coeffs, T, grid);
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.points; ++i) {
        if (std::abs(grid.at(i)) <= 6.0) worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
      }
      c.detail.push_back({{"model", params_json(row->model)}, {"T", T}, {"sup", worst}});
      c.measured = std::max(c.measured, worst);
    }
  }
  c.passed = c.measured <= c.threshold;
}

// Computed coefficients for states 1..9 of every row.
std::vector<std::array<double, 9>> table_coefficients(const std::vector<TableRow>& rows) {
  std::vector<std::array<double, 9>> out;
  for (const TableRow& row : rows) {
    const Model m(row.model);
    const auto packet = initial_packet(packet_in_well(m.well_partition(), row.well, row.squeeze), GridSpec{});
    const auto c = expand(m, packet, 9);
    std::array<double, 9> v{};
    for (int n = 0; n < 9; ++n) v[n] = c.c[n];
    out.push_back(v);
  }
  return out;
}

void magnitude_check(Check& c, const std::vector<TableRow>& rows, const std::vector<std::array<double, 9>>& computed) {
  c.threshold = 0.02;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int n = 0; n < 9; ++n) {
      c.measured = std::max(c.measured, std::abs(std::abs(computed[r][n]) - std::abs(rows[r].c[n])));
    }
    c.detail.push_back({{"row", r + 1}, {"computed", computed[r]}, {"reference", rows[r].c}});
  }
  c.passed = c.measured <= c.threshold;
}

// A state passes when one global sign brings every row within the tolerance.
void sign_check(Check& c, const std::vector<TableRow>& rows, const std::vector<std::array<double, 9>>& computed) {
  c.threshold = 0.02;
  json failing = json::array();
  for (int n = 0; n < 9; ++n) {
    double best = 1e300;
    for (double s : {1.0, -1.0}) {
      double worst = 0.0;
      for (std::size_t r = 0; r < rows.size(); ++r) worst = std::max(worst, std::abs(s * computed[r][n] - rows[r].c[n]));
      best = std::min(best, worst);
    }
    if (best > c.threshold) failing.push_back({{"state", n + 1}, {"signed_error", best}});
    c.measured = std::max(c.measured, best);
  }
  c.detail["failing_states"] = failing;
  c.passed = failing.empty();
}

}  // namespace

bool cmd_verify(const std::optional<RunConfig>& config, std::ostream& log) {
  std::vector<ModelParams> models = table_models();
  if (config) models.push_back(config->model);
  std::vector<ModelParams> distinct;
  for (const ModelParams& p : models) {
    const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const ModelParams& q) {
      return p.omega == q.omega && p.nu == q.nu && p.mu == q.mu && p.Lambda == q.Lambda && p.Lambda1 == q.Lambda1;
    });
    if (!seen) distinct.push_back(p);
  }

  std::vector<Check> checks;
  checks.push_back(timed("wronskian_constancy", wronskian_check));
  checks.push_back(timed("orthonormality", [&](Check& c) { orthonormality_check(c, distinct); }));
  checks.push_back(timed("fd_spectrum", [&](Check& c) { spectrum_check(c, distinct); }));
  checks.push_back(timed("normalization_ratios", [&](Check& c) { normalization_check(c, distinct); }));
  checks.push_back(timed("propagator_spectral_equivalence", equivalence_check));
  for (const auto& [label, rows] : {std::pair{"table1", &table1()}, std::pair{"table2", &table2()}}) {
    std::vector<std::array<double, 9>> computed;
    checks.push_back(timed(std::string(label) + "_magnitudes", [&](Check& c) {
      computed = table_coefficients(*rows);
      magnitude_check(c, *rows, computed);
    }));
    checks.push_back(timed(std::string(label) + "_signs", [&](Check& c) { sign_check(c, *rows, computed); }));
  }

  bool all = true;
  json report = json::array();
  for (const Check& c : checks) {
    all = all && c.passed;
    report.push_back({{"name", c.name}, {"passed", c.passed}, {"measured", c.measured},
                      {"threshold", c.threshold}, {"seconds", c.seconds}, {"detail", c.detail}});
    if (!c.error.empty()) report.back()["error"] = c.error;
    log << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured " << c.measured << "  threshold " << c.threshold
        << (c.error.empty() ? "" : "  error: " + c.error) << '\n';
  }
  const std::filesystem::path dir = config ? config->outputs : std::filesystem::path(".");
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "verify.json");
  if (!out) throw Error("cannot write verify.json");
  out << json{{"passed", all}, {"checks", report}}.dump(2) << '\n';
  return all;
}

}  // namespace triplewell::app
