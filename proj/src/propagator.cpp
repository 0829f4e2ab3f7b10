#include "triplewell/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

constexpr double kZetaMax = 12.0;
constexpr int kPanelOrder = 15;
constexpr std::size_t kPanelBudget = 400000;
constexpr double kTransformTolerance = 1e-10;

using Triple = std::array<complex, 3>;

complex prefactor(const TimePoint& at) {
  // Square root of e^{-i pi (1/2 + n)} taken as e^{-i pi (1/2 + n) / 2}.
  const double phase = -0.5 * std::numbers::pi * (0.5 + at.n());
  return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi * std::sin(at.tau())), phase);
}

complex chirp(double xi, double T, double zeta) {
  const double arg = ((xi * xi + zeta * zeta) * std::cos(T) - 2.0 * xi * zeta) / (2.0 * std::sin(T));
  return std::polar(1.0, arg);
}

double seed_weight(const Model& model, SeedLevel level, double zeta, double xi0) {
  const ModelParams& p = model.params();
  const double z = std::numbers::sqrt2 * zeta;
  if (level == SeedLevel::epsilon) {
    return zeta < xi0 ? p.Lambda * model.d_nu().value(-z) : -model.d_nu().value(z);
  }
  return zeta < xi0 ? p.Lambda1 * model.d_mu().value(-z) : model.d_mu().value(z);
}

struct Panel {
  double a;
  double b;
  Triple estimate;
};

class HalfLineIntegrator {
 public:
  HalfLineIntegrator(const Model& model, const TimePoint& at, double xi, double xi0, SeedLevel level)
      : model_(model), at_(at), xi_(xi), xi0_(xi0), level_(level),
        pre_(prefactor(at)), cot_(std::cos(at.T()) / std::sin(at.T())), sin_(std::sin(at.T())) {}

  Triple run() {
    const double width = std::min(0.5 * std::abs(std::sin(at_.tau())), 0.5);
    const double split = std::clamp(xi0_, -kZetaMax, kZetaMax);
    std::vector<Panel> work;
    double magnitude = 0.0;
    for (auto [lo, hi] : {std::pair{-kZetaMax, split}, std::pair{split, kZetaMax}}) {
      if (hi <= lo) continue;
      const int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
      for (int i = 0; i < count; ++i) {
        const double a = lo + (hi - lo) * i / count;
        const double b = lo + (hi - lo) * (i + 1) / count;
        double abs_part = 0.0;
        work.push_back({a, b, panel(a, b, &abs_part)});
        magnitude += abs_part;
      }
    }
    const double tol = kTransformTolerance * std::max(1.0, magnitude);
    const double total = 2.0 * kZetaMax;
    Triple sum{};
    std::size_t evaluated = work.size();
    while (!work.empty()) {
      const Panel p = work.back();
      work.pop_back();
      const double mid = 0.5 * (p.a + p.b);
      const Triple left = panel(p.a, mid, nullptr);
      const Triple right = panel(mid, p.b, nullptr);
      evaluated += 2;
      double err = 0.0;
      for (int c = 0; c < 3; ++c) err = std::max(err, std::abs(left[c] + right[c] - p.estimate[c]));
      if (err <= tol * (p.b - p.a) / total || p.b - p.a < 1e-9) {
        for (int c = 0; c < 3; ++c) sum[c] += left[c] + right[c];
      } else {
        if (evaluated > kPanelBudget) {
          throw ConvergenceError("half_line_transform exceeded its panel budget");
        }
        work.push_back({p.a, mid, left});
        work.push_back({mid, p.b, right});
      }
    }
    return sum;
  }

 private:
  Triple panel(double a, double b, double* abs_part) const {
    const detail::GaussRule& rule = detail::gauss_legendre(kPanelOrder);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Triple out{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double zeta = mid + half * rule.nodes[i];
      const double w = half * rule.weights[i];
      const complex k = pre_ * chirp(xi_, at_.T(), zeta) * seed_weight(model_, level_, zeta, xi0_);
      const double theta = (xi_ * std::cos(at_.T()) - zeta) / sin_;
      out[0] += w * k;
      out[1] += w * complex(0.0, theta) * k;
      out[2] += w * complex(-theta * theta, cot_) * k;
      if (abs_part) *abs_part += w * std::abs(k) * (1.0 + std::abs(theta) + theta * theta);
    }
    return out;
  }

  const Model& model_;
  const TimePoint& at_;
  double xi_;
  double xi0_;
  SeedLevel level_;
  complex pre_;
  double cot_;
  double sin_;
};

}  // namespace

TimePoint TimePoint::at(double T, double guard) {
  if (!std::isfinite(T) || T < 0.0) throw DomainError("time must be finite and non-negative");
  const int n = static_cast<int>(std::floor(T / std::numbers::pi));
  const double tau = T - n * std::numbers::pi;
  if (!(std::abs(std::sin(tau)) >= guard) || tau <= 0.0) {
    throw CausticError("T = " + std::to_string(T) + " lies within the caustic guard of a multiple of pi");
  }
  return TimePoint(T, n, tau);
}

complex k0(double xi, const TimePoint& at, double zeta) {
  return prefactor(at) * chirp(xi, at.T(), zeta);
}

complex k0_principal_branch(double xi, const TimePoint& at, double zeta) {
  const complex inner = std::polar(1.0, -std::numbers::pi * (0.5 + at.n())) /
                        (2.0 * std::numbers::pi * std::sin(at.tau()));
  return std::sqrt(inner) * chirp(xi, at.T(), zeta);
}

std::array<complex, 3> half_line_transform(const Model& model, const TimePoint& at, double xi,
                                           double xi0, SeedLevel level) {
  return HalfLineIntegrator(model, at, xi, xi0, level).run();
}

complex intertwine(const Model& model, complex f_value, complex f_d1, complex f_d2, double xi) {
  const ValueDeriv phi = model.phi_big(xi);
  const double a = phi.deriv / phi.value;
  const double c = model.wronskian_core(xi).dlog_w;
  return f_d2 - c * f_d1 - (xi * xi - 2.0 * model.eps_bar() - a * c) * f_value;
}

complex k_triple(const Model& model, const TimePoint& at, double xi, double xi0) {
  const Triple big = half_line_transform(model, at, xi, xi0, SeedLevel::epsilon);
  const Triple small = half_line_transform(model, at, xi, xi0, SeedLevel::epsilon1);
  const double u1 = model.first_raw(xi0).value;
  const double u0 = model.ground_raw(xi0).value;
  const double T = at.T();
  complex out = -u1 * intertwine(model, big[0], big[1], big[2], xi) -
                u0 * intertwine(model, small[0], small[1], small[2], xi);
  out += model.wavefunction(1, xi).value * model.wavefunction(1, xi0).value *
         std::exp(complex(0.0, -model.eps_bar() * T));
  out += model.wavefunction(0, xi).value * model.wavefunction(0, xi0).value *
         std::exp(complex(0.0, -model.eps1_bar() * T));
  return out;
}

complex k_spectral_sum(const Model& model, double T, double xi, double xi0, int n_max) {
  if (n_max < 0 || n_max > kMaxStateIndex) throw DomainError("n_max outside the available states");
  std::vector<double> a(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> b(a.size());
  model.wavefunctions(xi, a);
  model.wavefunctions(xi0, b);
  complex sum = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    sum += a[n] * b[n] * std::exp(complex(0.0, -model.eigenvalue(static_cast<int>(n)) * T));
  }
  return sum;
}

}  // namespace triplewell
