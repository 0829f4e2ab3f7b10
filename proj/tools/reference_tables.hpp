#pragma once

#include <array>
#include <vector>

#include "triplewell/dynamics.hpp"
#include "triplewell/model.hpp"

namespace triplewell::app {

/// One reference row of expansion coefficients for states 1..9.
struct TableRow {
  ModelParams model;
  Well well;
  double squeeze;
  std::array<double, 9> c;
};

inline const std::vector<TableRow>& table1() {
  static const std::vector<TableRow> rows{
      {{1.0, -0.02, -0.03, 1.0, 1.0}, Well::left, 1.0,
       {0.56, 0.699, -0.417, 0.038, -0.048, 0.06, -0.067, 0.062, -0.042}},
      {{1.0, -0.02, -0.032, 1.0, 1.0}, Well::left, 1.0,
       {0.54, 0.698, -0.441, 0.041, -0.052, 0.066, -0.072, 0.066, -0.045}},
      {{1.0, -0.02, -1.0, 1.0, 1.0}, Well::left, 0.66,
       {0.038, 0.68, -0.69, 0.162, -0.138, 0.098, -0.051, 0.016, -0.003}},
      {{1.0, -0.02, -2.0, 1.0, 1.0}, Well::left, 0.6,
       {0.016, 0.68, -0.69, 0.168, -0.134, 0.085, -0.039, 0.015, -0.012}}};
  return rows;
}

inline const std::vector<TableRow>& table2() {
  static const std::vector<TableRow> rows{
      {{1.0, -0.02, -0.03, 0.05, 1.0}, Well::left, 0.6,
       {0.768, 0.21, -0.564, 0.034, -0.026, 0.016, -0.006, 0.005, -0.022}},
      {{1.0, -0.02, -0.03, 0.05, 1.0}, Well::right, 0.8,
       {0.17, -0.96, -0.128, -0.015, -0.014, -0.011, -0.007, 0.009, -0.021}},
      {{1.0, -0.02, -1.0, 0.05, 1.0}, Well::left, 0.3,
       {0.078, 0.209, -0.938, 0.136, -0.072, 0.053, -0.074, 0.11, -0.12}},
      {{1.0, -0.02, -1.0, 0.05, 1.0}, Well::right, 0.5,
       {0.012, -0.95, -0.215, -0.044, -0.029, -0.012, -0.005, -0.02, 0.059}}};
  return rows;
}

}  // namespace triplewell::app
