#pragma once

// Symmetric lifting L f(z, w) = (f(z) - f(w)) / (z - w) to the bidisk and
// the diagonal restriction (Delta F)(z) = F(z, z); Delta o L = d/dz.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bergman/functions.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

/// sum_{i,j} c[i][j] z^i w^j
struct TensorPoly {
  std::vector<std::vector<cplx>> c;
};

struct Lifted {
  HoloFunction f;
};

class BidiskFunction {
 public:
  using Variant = std::variant<Lifted, TensorPoly>;

  static BidiskFunction lifted(HoloFunction f);
  static BidiskFunction tensor(std::vector<std::vector<cplx>> c);

  const Variant& variant() const { return v_; }
  cplx eval(DiskPoint z, DiskPoint w) const;

 private:
  explicit BidiskFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Lf(z, w). Taylor polynomials use the divided-difference form
/// sum_m b_m(z) w^m, b_m(z) = sum_{k > m} a_k z^(k-1-m), exact on the
/// diagonal. Closed forms use the quotient when |z - w| >= 1e-6 and
/// f'((z + w)/2) otherwise.
cplx lift_eval(const HoloFunction& f, DiskPoint z, DiskPoint w);

cplx diagonal(const BidiskFunction& F, DiskPoint z);

/// Coefficients of the homogeneous polynomial sum_{i+j=k-1} z^i w^j.
TensorPoly lifted_monomial(std::size_t k);

/// int int |F|^p dA_alpha(z) dA_alpha(w) with joint truncation. The grid
/// defaults to one sized for F (polynomial degree or boundary singularity).
NormResult bidisk_norm(const BidiskFunction& F, double p, double alpha);
NormResult bidisk_norm(const BidiskFunction& F, double p, const DiskGrid& grid);

/// int int F conj(G) dA_alpha dA_alpha over the full grid.
cplx bidisk_inner(const BidiskFunction& F, const BidiskFunction& G, const DiskGrid& grid);

/// Bidisk grid for polynomial integrands of degree <= `degree` in each
/// variable with even p: exact for |F|^p at that p.
DiskGrid bidisk_polynomial_grid(std::size_t degree, double p, double alpha);
/// Coarser graded grid for the closed forms on the bidisk.
DiskGrid bidisk_singular_grid(double alpha);

/// 2 sum_{k>=1} |a_k|^2 / (k+1) H_k with H_k = sum_{j<k} 1/(j+1); the exact
/// value of int int |Lf|^2 dA dA.
double lift_norm_series_A2(std::span<const cplx> coeffs);

/// int |f|^2 log(1/(1 - |z|^2)) dA; the grid must carry alpha = 0.
NormResult log_weighted_norm(const HoloFunction& f, const DiskGrid& grid);

/// int |z^k|^2 log(1/(1 - |z|^2)) dA = H_{k+1} / (k+1).
double log_weighted_monomial(std::size_t k);

/// |a_k|^2 = 1/((k+2) log^2(k+2)).
double divergence_weight(std::size_t k);
/// |a_k|^2 = (k+1)/((k+2) log^2(k+2)), so that |a_k|^2/(k+1) ~ 1/(k log^2 k).
double divergence_weight_harmonic(std::size_t k);

struct DivergenceDemo {
  std::vector<std::size_t> N;
  /// sum_{k<=N} |a_k|^2 / (k+1)
  std::vector<double> a2_partial;
  /// 2 sum_{1<=k<=N} |a_k|^2 / (k+1) H_k
  std::vector<double> lift_partial;
};

/// Partial sums at each truncation degree; N_list must increase.
DivergenceDemo divergence_demo(std::span<const std::size_t> N_list,
                               const std::function<double(std::size_t)>& weight = divergence_weight);

enum class LiftTarget { thm11, thm12 };

struct LiftingScanRow {
  double s = 0.0;
  NormResult norm_f;
  NormResult norm_Lf;
  double ratio = 0.0;
  bool converged = false;
};

struct LiftingScanResult {
  LiftTarget target = LiftTarget::thm11;
  double p = 0.0;
  double alpha = 0.0;
  /// weight of the target space: alpha (thm11) or (p + alpha)/2 - 1 (thm12)
  double beta = 0.0;
  std::vector<LiftingScanRow> rows;
};

/// f = (1 - z)^{-s} for each s with p s < 2 + alpha; other s are skipped.
/// thm11 needs p < alpha + 2, thm12 needs p > alpha + 2.
LiftingScanResult lifting_scan(std::span<const double> s_values, double p, double alpha,
                               LiftTarget target);

/// Columns s, norm_f, norm_Lf, ratio, converged.
std::string to_csv(const LiftingScanResult& scan);

}  // namespace bergman
