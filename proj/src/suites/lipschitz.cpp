#include <algorithm>
#include <cmath>

#include "bergman/serialize.hpp"
#include "bergman/witness.hpp"
#include "suites/kit.hpp"

namespace bergman::suites {

namespace {

constexpr std::size_t kPairs = 100000;
constexpr double kRadius = 0.5;

std::vector<std::pair<std::string, HoloFunction>> disk_family(Builder& b) {
  Rng rng(b.seed(10));
  std::vector<std::pair<std::string, HoloFunction>> fam;
  fam.emplace_back("z", HoloFunction::taylor({0.0, 1.0}));
  fam.emplace_back("z^2", HoloFunction::taylor({0.0, 0.0, 1.0}));
  for (const std::size_t d : {5, 10, 20}) {
    fam.emplace_back("random_deg" + std::to_string(d), random_polynomial(rng, d));
  }
  for (const double s : {0.2, 0.4, 0.6}) {
    fam.emplace_back("section_s" + fmt(s) + "_deg50", HoloFunction::power_section(s, 50));
  }
  return fam;
}

// Returns int g^2 dA_0 per family member (the first entry of `params`).
std::vector<double> run(Builder& b, WitnessMetric metric) {
  const WeightParams params[] = {{2.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}, {4.0, 2.5}};
  const auto fam = disk_family(b);
  double worst = -INFINITY, worst_deriv = -INFINITY;
  std::size_t min_near = kPairs, min_far = kPairs;
  bool integrable = true;
  std::string failures;
  nlohmann::json cases = nlohmann::json::array();
  std::vector<double> g_norms;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& [name, f] = fam[i];
    const Witness w = build_witness(f, metric, kRadius);
    const ViolationReport v = verify_lipschitz(w, kPairs, b.seed(100 + i));
    worst = std::max(worst, v.max_violation);
    min_near = std::min(min_near, v.near_pairs);
    min_far = std::min(min_far, v.far_pairs);
    const double deriv = derivative_bound_check(w);
    worst_deriv = std::max(worst_deriv, deriv);
    nlohmann::json norms = nlohmann::json::array();
    const auto results = witness_integrability(w, params);
    g_norms.push_back(results[0].value);
    for (std::size_t k = 0; k < results.size(); ++k) {
      if (!results[k].converged) {
        integrable = false;
        failures += name + "@(" + fmt(params[k].p) + "," + fmt(params[k].alpha) + ") ";
      }
      norms.push_back({{"p", params[k].p},
                       {"alpha", params[k].alpha},
                       {"weight", witness_weight(metric, params[k])},
                       {"result", to_json(results[k])}});
    }
    b.at_most(name + "/max_violation", v.max_violation, 0.0);
    cases.push_back({{"function", name},
                     {"witness", to_json(w)},
                     {"violation", to_json(v)},
                     {"derivative_residual", real_to_json(deriv)},
                     {"integrability", norms}});
  }
  b.data()["cases"] = cases;
  b.info("max_violation", worst, "over " + std::to_string(fam.size()) + " functions, 1e5 pairs each");
  b.at_least("near_pair_share", static_cast<double>(min_near) / kPairs, 0.4, "pairs with metric < r");
  b.at_least("far_pair_share", static_cast<double>(min_far) / kPairs, 0.4, "pairs with metric >= r");
  b.require("witness_integrable", integrable, failures.empty() ? "all (p, alpha) converged" : failures);
  b.at_most("derivative_bound", worst_deriv, 0.0,
            metric == WitnessMetric::euclid ? "max |f'| - 2g on the check grid"
                                            : "max (1-|z|^2)|f'| - 2g on the check grid");

  // Any valid witness, not only the constructed one, obeys the derivative
  // bound. g = 1 (or 1/2 for |z - w|) is valid for f = z.
  const HoloFunction z = HoloFunction::taylor({0.0, 1.0});
  const double c = metric == WitnessMetric::euclid ? 0.5 : 1.0;
  const auto g = [c](cplx) { return c; };
  const ViolationReport ve = verify_lipschitz(z, g, metric, kPairs, b.seed(99));
  b.at_most("explicit_witness_violation", ve.max_violation, 0.0, "f = z, constant g");
  b.at_most("explicit_witness_derivative", derivative_bound_check(z, g, metric), 0.0);
  return g_norms;
}

}  // namespace

void thm6(Builder& b) {
  const auto g_norms = run(b, WitnessMetric::rho);

  // g scales with f: the witness of c f is |c| times that of f.
  Rng draw(b.seed(20));
  const HoloFunction f = random_polynomial(draw, 10);
  const cplx c(2.5, -1.0);
  const Witness w = build_witness(f, WitnessMetric::rho, kRadius);
  const Witness wc = build_witness(f.scaled(c), WitnessMetric::rho, kRadius);
  Rng rng(b.seed(21));
  double cov = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const cplx z = random_disk_point(rng);
    cov = std::max(cov, rel_err(wc.g(z), std::abs(c) * w.g(z)));
  }
  b.at_most("scale_covariance", cov, 1e-12, "g(c f) = |c| g(f) on 1e3 points");

  // f = 0 has g = 0 and satisfies the inequality trivially.
  const Witness w0 = build_witness(HoloFunction::taylor({0.0}), WitnessMetric::rho, kRadius);
  const ViolationReport v0 = verify_lipschitz(w0, 10000, b.seed(22));
  b.at_most("zero_function_violation", v0.max_violation, 0.0);
  b.at_most("zero_function_witness", w0.g(cplx(0.3, 0.4)), 0.0);

  // ||g|| / ||f|| in A^2 for the family; reported without a bound.
  const WeightParams wp(2.0, 0.0);
  const auto fam = disk_family(b);
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const HoloFunction& g = fam[i].second;
    const double fn = norm_p(g, wp, default_disk_grid(g, 0.0)).value;
    worst_ratio = std::max(worst_ratio, std::sqrt(g_norms[i] / fn));
  }
  b.info("witness_norm_ratio", worst_ratio, "max ||g|| / ||f|| in A^2 over the family");
}

void thm7(Builder& b) { run(b, WitnessMetric::beta); }

void thm8(Builder& b) { run(b, WitnessMetric::euclid); }

}  // namespace bergman::suites
