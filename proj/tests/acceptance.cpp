// One line per acceptance criterion; exit status 1 if any criterion fails.
// A criterion passes when every gating check of its suites passes and the
// suites finish inside the wall-clock budget.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bergman/report.hpp"

namespace {

struct Criterion {
  int id;
  std::string what;
  std::vector<std::string> suites;
  double budget_s;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "metric axioms, radius round trip, pseudo-disks, ball identities", {"geometry"}, 5},
      {2, "finite-difference metric ratios vs 1/(1-|z|^2)", {"lemma4"}, 5},
      {3, "monomial, bidisk tensor and normalization quadrature", {"quadrature"}, 30},
      {4, "derivative-seminorm ratio in [1/K, K], K stable under degree doubling", {"lemma5"}, 30},
      {5, "Lipschitz witnesses for rho, beta and |z - w|", {"thm6", "thm7", "thm8"}, 60},
      {6, "growth exponents and boundedness for t < 0", {"lemma10"}, 30},
      {7, "lifting series, diagonal, orthogonality, boundedness scans", {"thm11", "thm12"}, 90},
      {8, "A^2 borderline divergence of the lifted series", {"a2-diverge"}, 10},
      {9, "ball witnesses and derivative-integral equivalence", {"ball-thm13"}, 120},
  };

  int failed = 0;
  double total = 0.0;
  for (const auto& c : criteria) {
    bool ok = true;
    std::string notes;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& s : c.suites) {
      bergman::SuiteConfig cfg;
      cfg.suite = s;
      const bergman::ExperimentReport r = bergman::run_suite(cfg);
      for (const auto& k : r.checks) {
        if (k.informational || k.pass) continue;
        ok = false;
        char buf[256];
        std::snprintf(buf, sizeof buf, " [%s/%s = %.4g, need %s %.4g]", s.c_str(), k.name.c_str(), k.value,
                      k.relation.c_str(), k.threshold);
        notes += buf;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    if (secs >= c.budget_s) {
      ok = false;
      notes += " [over budget]";
    }
    if (!ok) ++failed;
    std::printf("criterion %d %s  %-70s %6.1f s / %3.0f s%s\n", c.id, ok ? "PASS" : "FAIL", c.what.c_str(), secs,
                c.budget_s, notes.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of %zu criteria pass, %.1f s total (budget 300 s)\n",
              static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 && total < 300.0 ? 0 : 1;
}
