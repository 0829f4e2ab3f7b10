#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <string>

#include "triplewell/errors.hpp"
#include "triplewell/oracle.hpp"

namespace triplewell::oracle {

namespace {

using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<110>>;
using big50 = boost::multiprecision::cpp_bin_float_50;

constexpr int kTermBudget = 4000;

big rgamma(const big& x) {
  if (x <= 0 && x == floor(x)) return big(0);
  return 1 / boost::math::tgamma(x);
}

// Kummer M(a, b, x) for x >= 0.
// The even and odd parts cancel down to e^{-x} of their size, so the
// truncation tolerance is tightened by that factor.
big kummer(const big& a, const big& b, const big& x, int digits) {
  const big tol = pow(big(10), -(digits + 10)) * exp(-x);
  big term = 1;
  big sum = 1;
  for (int k = 0; k < kTermBudget; ++k) {
    term *= (a + k) * x / ((b + k) * (k + 1));
    sum += term;
    if (term == 0) return sum;
    if (k > x && abs(term) < tol * abs(sum)) return sum;
  }
  throw ConvergenceError("Kummer series exceeded its term budget");
}

}  // namespace

double pcf_series_reference(PcfOrder order, double z, int digits) {
  if (digits > 40 || digits < 1) throw DomainError("pcf_series_reference: digits must lie in [1, 40]");
  if (!(std::abs(z) <= 12.0)) throw DomainError("pcf_series_reference: |z| must not exceed 12");
  const big nu = order.nu();
  const big zz = z;
  const big x = zz * zz / 2;
  const big pi = boost::math::constants::pi<big>();
  const big even = sqrt(pi) * rgamma((1 - nu) / 2) * kummer(-nu / 2, big(0.5), x, digits);
  const big odd = sqrt(2 * pi) * zz * rgamma(-nu / 2) * kummer((1 - nu) / 2, big(1.5), x, digits);
  const big value = pow(big(2), nu / 2) * exp(-zz * zz / 4) * (even - odd);
  return static_cast<double>(value);
}

double gamma_reference(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma_reference: pole");
  return static_cast<double>(boost::math::tgamma(big50(x)));
}

}  // namespace triplewell::oracle
