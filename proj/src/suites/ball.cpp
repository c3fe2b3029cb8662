#include <algorithm>
#include <cmath>

#include "bergman/quadrature.hpp"
#include "bergman/serialize.hpp"
#include "bergman/witness.hpp"
#include "suites/kit.hpp"

namespace bergman::suites {

namespace {

constexpr std::size_t kDim = 2;
constexpr double kRadius = 0.5;
constexpr std::size_t kPairs = 10000;

BallPoly::Term term(int e1, int e2, cplx c) {
  BallPoly::Term t;
  t.exponents = {e1, e2, 0};
  t.coeff = c;
  return t;
}

std::vector<std::pair<std::string, HoloFunction>> ball_family() {
  std::vector<std::pair<std::string, HoloFunction>> fam;
  const auto cal = ball_calibration_family(kDim);
  const char* names[] = {"z1", "z1z2", "z1^2+z2^2"};
  for (std::size_t i = 0; i < cal.size(); ++i) fam.emplace_back(names[i], cal[i]);
  fam.emplace_back("held_out_a", HoloFunction::ball_poly(kDim, {term(3, 0, 1.0), term(1, 1, -2.0), term(0, 1, 0.5)}));
  fam.emplace_back("held_out_b", HoloFunction::ball_poly(kDim, {term(0, 0, 1.0), term(1, 0, cplx(0.0, 1.0)),
                                                                term(1, 2, 2.0), term(0, 4, -0.7)}));
  return fam;
}

// The four integrands: |f|, (1-|z|^2)|Rf|, (1-|z|^2)|grad f|, |invariant grad f|.
struct Pointwise {
  std::vector<double> f, R, G, I;
};

Pointwise pointwise(const HoloFunction& f, const BallGrid& grid) {
  Pointwise v;
  const std::size_t n = grid.dim();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& z = grid.node(i);
    const auto d = f.partials_raw(z);
    cplx R = 0.0;
    double G = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      R += z[k] * d[k];
      G += std::norm(d[k]);
    }
    const double w = 1.0 - detail::norm2(z, n);
    v.f.push_back(std::abs(f.eval_raw(z)));
    v.R.push_back(w * std::abs(R));
    v.G.push_back(w * std::sqrt(G));
    v.I.push_back(detail::invariant_gradient(f, z, n));
  }
  return v;
}

NormResult integrate_values(const BallGrid& grid, const std::vector<double>& v, double p, double offset) {
  std::vector<double> contrib(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) contrib[i] = grid.weights()[i] * std::pow(v[i], p);
  std::vector<double> sums(grid.group_count());
  for (std::size_t g = 0; g < sums.size(); ++g) {
    const auto [b, e] = grid.group_range(g);
    sums[g] = pairwise_sum(std::span<const double>(contrib).subspan(b, e - b));
  }
  ConvergenceRule rule;
  rule.noise_rtol = 1e-3;
  return finish_norm(sums, grid.epsilons(), offset, rule);
}

}  // namespace

void ball_thm13(Builder& b) {
  const BallCalibration cal = calibrate_ball_constant(kDim, kRadius, kPairs, b.seed(1));
  b.data()["calibration"] = {{"C_min", cal.C_min}, {"C", cal.C}, {"pairs", cal.pairs}, {"seed", cal.seed},
                             {"r", kRadius}, {"n", kDim}};
  b.require("calibrated_constant_finite", std::isfinite(cal.C) && cal.C > 0.0, "C = " + fmt(cal.C));

  const auto fam = ball_family();
  nlohmann::json cases = nlohmann::json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& [name, f] = fam[i];
    const BallWitness w = build_witness_ball(f, kRadius, cal.C);
    for (const auto m : {WitnessMetric::rho, WitnessMetric::beta, WitnessMetric::d, WitnessMetric::euclid}) {
      const ViolationReport v = verify_lipschitz_ball(w, m, kPairs, b.seed(100 + 10 * i + static_cast<int>(m)));
      b.at_most(name + "/" + to_string(m) + "/max_violation", v.max_violation, 0.0,
                i < 3 ? "calibration function, fresh pairs" : "held-out function");
      cases.push_back({{"function", name}, {"violation", to_json(v)}});
    }
  }
  b.data()["verification"] = cases;

  // Derivative integrals on two independent scrambles.
  const double ps[] = {1.0, 2.0};
  const char* labels[] = {"f", "R", "grad", "inv_grad"};
  double K[2] = {1.0, 1.0};
  double repro = 0.0, order = -INFINITY;
  bool converged = true;
  std::vector<std::vector<double>> values[2];
  for (int s = 0; s < 2; ++s) {
    const BallGrid grid = BallGrid::build(kDim, 0.0, 0x1.0p-12, BallGrid::kDefaultPoints, b.seed(200 + s));
    for (const auto& [name, f] : fam) {
      const Pointwise pw = pointwise(f, grid);
      const double f0 = std::abs(f.eval_raw(detail::BallCoords{}));
      for (const double p : ps) {
        const double off = std::pow(f0, p);
        const NormResult In[4] = {integrate_values(grid, pw.f, p, 0.0), integrate_values(grid, pw.R, p, off),
                                  integrate_values(grid, pw.G, p, off), integrate_values(grid, pw.I, p, off)};
        std::vector<double> row;
        for (int k = 0; k < 4; ++k) {
          converged = converged && In[k].converged;
          row.push_back(In[k].value);
          if (k > 0) K[s] = std::max({K[s], In[k].value / In[0].value, In[0].value / In[k].value});
        }
        order = std::max({order, (row[1] - row[2]) / row[2], (row[2] - row[3]) / row[3]});
        values[s].push_back(std::move(row));
      }
    }
  }
  nlohmann::json integrals = nlohmann::json::array();
  std::size_t idx = 0;
  for (const auto& [name, f] : fam) {
    for (const double p : ps) {
      nlohmann::json e = {{"function", name}, {"p", p}, {"alpha", 0.0}};
      for (int k = 0; k < 4; ++k) {
        e[labels[k]] = {values[0][idx][k], values[1][idx][k]};
        repro = std::max(repro, rel_err(values[1][idx][k], values[0][idx][k]));
      }
      integrals.push_back(std::move(e));
      ++idx;
    }
  }
  b.data()["derivative_integrals"] = integrals;
  b.require("derivative_integrals_converged", converged);
  b.at_most("integral_reproducibility", repro, 1e-2, "two independent scrambles, relative");
  b.at_most("derivative_ordering", order, 1e-12, "R <= grad <= invariant grad integrals");
  b.info("K_scramble_a", K[0]);
  b.info("K_scramble_b", K[1]);
  b.at_most("K_reproducibility", rel_err(K[1], K[0]), 1e-2, "one constant bounds every ratio in [1/K, K]");

  // Finite-difference invariant gradient against
  // |invariant grad f|^2 = (1 - |z|^2)(|grad f|^2 - |Rf|^2).
  Rng rng(b.seed(3));
  double fd = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto z = random_ball_point(rng, kDim);
    const auto& f = fam[i % fam.size()].second;
    const auto d = f.partials_raw(z);
    cplx R = 0.0;
    double G = 0.0;
    for (std::size_t k = 0; k < kDim; ++k) {
      R += z[k] * d[k];
      G += std::norm(d[k]);
    }
    const double exact = std::sqrt(std::max(0.0, (1.0 - detail::norm2(z, kDim)) * (G - std::norm(R))));
    const double got = detail::invariant_gradient(f, z, kDim);
    fd = std::max(fd, std::abs(got - exact) / std::max(exact, 1e-3));
  }
  b.at_most("invariant_gradient_identity", fd, 1e-6, "central differences, h = 1e-5, 1e3 points");
}

}  // namespace bergman::suites
