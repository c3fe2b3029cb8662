#pragma once

// Shared helpers for the suite implementations.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bergman/functions.hpp"
#include "bergman/report.hpp"
#include "bergman/sampling.hpp"

namespace bergman::suites {

class Builder {
 public:
  Builder(ExperimentReport& report, const SuiteConfig& config) : rep_(report), cfg_(config) {}

  const SuiteConfig& config() const { return cfg_; }
  std::uint64_t seed(std::uint64_t stream) const { return derive_seed(cfg_.seed, stream); }
  nlohmann::json& data() { return rep_.data; }
  Table& table(std::string name, std::vector<std::string> columns);

  /// Threshold for `name`: the configured override or `fallback`.
  double tol(const std::string& name, double fallback) const;

  Check& at_most(const std::string& name, double value, double threshold,
                 const std::string& detail = "");
  Check& below(const std::string& name, double value, double threshold,
               const std::string& detail = "");
  Check& at_least(const std::string& name, double value, double threshold,
                  const std::string& detail = "");
  /// A boolean requirement, recorded as value 1/0 against threshold 1.
  Check& require(const std::string& name, bool ok, const std::string& detail = "");
  Check& info(const std::string& name, double value, const std::string& detail = "");

 private:
  Check& add(Check c);
  ExperimentReport& rep_;
  const SuiteConfig& cfg_;
};

using SuiteFn = void (*)(Builder&);

void geometry(Builder& b);
void lemma4(Builder& b);
void quadrature(Builder& b);
void lemma5(Builder& b);
void thm6(Builder& b);
void thm7(Builder& b);
void thm8(Builder& b);
void lemma10(Builder& b);
void thm11(Builder& b);
void thm12(Builder& b);
void a2_diverge(Builder& b);
void ball_thm13(Builder& b);

// --- sampling helpers -------------------------------------------------------

cplx random_disk_point(Rng& rng);
detail::BallCoords random_ball_point(Rng& rng, std::size_t n);
/// Degree-d polynomial with standard complex normal coefficients.
HoloFunction random_polynomial(Rng& rng, std::size_t degree);

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::string fmt(double x);

}  // namespace bergman::suites
