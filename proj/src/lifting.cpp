#include "bergman/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/error.hpp"

namespace bergman {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kQuotientSwitch = 1e-6;

// b_m(z) = sum_{k > m} a_k z^(k-1-m), m = 0..d-1
void lifted_row_coeffs(std::span<const cplx> a, cplx z, std::vector<cplx>& b) {
  const std::size_t d = a.size() - 1;
  b.resize(std::max<std::size_t>(d, 1));
  if (d == 0) {
    b[0] = 0.0;
    return;
  }
  b[d - 1] = a[d];
  for (std::size_t m = d - 1; m-- > 0;) b[m] = a[m + 1] + z * b[m + 1];
}

// e_j(z) = sum_i c[i][j] z^i
void tensor_row_coeffs(const TensorPoly& t, cplx z, std::vector<cplx>& e) {
  std::size_t width = 1;
  for (const auto& row : t.c) width = std::max(width, row.size());
  e.assign(width, 0.0);
  cplx zi = 1.0;
  for (const auto& row : t.c) {
    for (std::size_t j = 0; j < row.size(); ++j) e[j] += row[j] * zi;
    zi *= z;
  }
}

cplx closed_lift(const HoloFunction& f, cplx z, cplx w, cplx fz, cplx fw) {
  const cplx dz = z - w;
  if (std::abs(dz) >= kQuotientSwitch) return (fz - fw) / dz;
  return f.derivative_raw(0.5 * (z + w));
}

// Fills complex rows F(nodes[i], nodes[j]) for all j.
class RowKernel {
 public:
  RowKernel(const BidiskFunction& F, std::span<const cplx> nodes) : F_(F), nodes_(nodes) {
    if (const auto* l = std::get_if<Lifted>(&F.variant())) {
      if (!l->f.is_polynomial()) {
        f_at_.resize(nodes.size());
        l->f.eval_many(nodes, f_at_);
      }
    }
  }

  void row(std::size_t i, std::span<cplx> out) {
    const cplx z = nodes_[i];
    std::visit(overloaded{[&](const Lifted& l) {
                            if (const auto* tp = std::get_if<TaylorPoly>(&l.f.variant())) {
                              lifted_row_coeffs(tp->coeffs, z, coeffs_);
                              horner_many(coeffs_, nodes_, out);
                              return;
                            }
                            const cplx fz = f_at_[i];
                            for (std::size_t j = 0; j < nodes_.size(); ++j) {
                              const cplx dz = z - nodes_[j];
                              const double n2 = std::norm(dz);
                              out[j] = n2 >= kQuotientSwitch * kQuotientSwitch
                                           ? (fz - f_at_[j]) * std::conj(dz) / n2
                                           : l.f.derivative_raw(0.5 * (z + nodes_[j]));
                            }
                          },
                          [&](const TensorPoly& t) {
                            tensor_row_coeffs(t, z, coeffs_);
                            horner_many(coeffs_, nodes_, out);
                          }},
               F_.variant());
  }

 private:
  const BidiskFunction& F_;
  std::span<const cplx> nodes_;
  std::vector<cplx> f_at_;
  std::vector<cplx> coeffs_;
};

std::size_t bidisk_degree(const BidiskFunction& F) {
  return std::visit(overloaded{[](const Lifted& l) -> std::size_t {
                                 const std::size_t d = l.f.degree();
                                 return d == 0 ? 0 : d - 1;
                               },
                               [](const TensorPoly& t) -> std::size_t {
                                 std::size_t d = t.c.empty() ? 0 : t.c.size() - 1;
                                 for (const auto& row : t.c) {
                                   if (!row.empty()) d = std::max(d, row.size() - 1);
                                 }
                                 return d;
                               }},
                    F.variant());
}

bool bidisk_is_polynomial(const BidiskFunction& F) {
  if (const auto* l = std::get_if<Lifted>(&F.variant())) return l->f.is_polynomial();
  return true;
}

double harmonic(std::size_t k) {
  double h = 0.0;
  for (std::size_t j = k; j >= 1; --j) h += 1.0 / static_cast<double>(j);
  return h;
}

}  // namespace

BidiskFunction BidiskFunction::lifted(HoloFunction f) {
  if (!f.on_disk()) throw TypeMismatch("lifting applies to disk functions");
  return BidiskFunction(Lifted{std::move(f)});
}

BidiskFunction BidiskFunction::tensor(std::vector<std::vector<cplx>> c) {
  if (c.empty()) c.push_back({cplx(0.0)});
  return BidiskFunction(TensorPoly{std::move(c)});
}

cplx BidiskFunction::eval(DiskPoint z, DiskPoint w) const {
  return std::visit(overloaded{[&](const Lifted& l) { return lift_eval(l.f, z, w); },
                               [&](const TensorPoly& t) {
                                 std::vector<cplx> e;
                                 tensor_row_coeffs(t, z.value(), e);
                                 return horner(e, w.value());
                               }},
                    v_);
}

cplx lift_eval(const HoloFunction& f, DiskPoint z, DiskPoint w) {
  if (!f.on_disk()) throw TypeMismatch("lifting applies to disk functions");
  if (const auto* tp = std::get_if<TaylorPoly>(&f.variant())) {
    std::vector<cplx> b;
    lifted_row_coeffs(tp->coeffs, z.value(), b);
    return horner(b, w.value());
  }
  return closed_lift(f, z.value(), w.value(), f.eval_raw(z.value()), f.eval_raw(w.value()));
}

cplx diagonal(const BidiskFunction& F, DiskPoint z) { return F.eval(z, z); }

TensorPoly lifted_monomial(std::size_t k) {
  TensorPoly t;
  if (k == 0) {
    t.c = {{cplx(0.0)}};
    return t;
  }
  t.c.assign(k, std::vector<cplx>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) t.c[i][k - 1 - i] = 1.0;
  return t;
}

DiskGrid bidisk_polynomial_grid(std::size_t degree, double p, double alpha) {
  // |F|^p = F^(p/2) conj(F)^(p/2) has angular frequencies up to q and
  // radial degree q in |z|^2.
  const auto q = static_cast<int>(std::ceil(0.5 * p * static_cast<double>(degree)));
  GridResolution res;
  res.radial_nodes = std::max(4, q / 2 + 3);
  res.angular = AngularRule::uniform;
  res.angular_nodes = q + 2;
  res.tail_panels = 0;
  return DiskGrid::build(alpha, 0x1.0p-12, res);
}

DiskGrid bidisk_singular_grid(double alpha) {
  GridResolution res;
  res.radial_nodes = 8;
  res.angular = AngularRule::graded;
  res.graded_nodes = 4;
  res.tail_panels = 4;
  return DiskGrid::build(alpha, 0x1.0p-12, res);
}

NormResult bidisk_norm(const BidiskFunction& F, double p, double alpha) {
  if (bidisk_is_polynomial(F)) {
    return bidisk_norm(F, p, bidisk_polynomial_grid(bidisk_degree(F), p, alpha));
  }
  return bidisk_norm(F, p, bidisk_singular_grid(alpha));
}

NormResult bidisk_norm(const BidiskFunction& F, double p, const DiskGrid& grid) {
  if (!(p > 0.0)) throw ParameterError("exponent p must be positive");
  RowKernel kernel(F, grid.nodes());
  std::vector<cplx> buf(grid.size());
  const double half_p = 0.5 * p;
  return integrate_tensor(grid, [&](std::size_t i, std::span<double> out) {
    kernel.row(i, buf);
    if (half_p == 1.0) {
      for (std::size_t j = 0; j < buf.size(); ++j) out[j] = std::norm(buf[j]);
    } else if (half_p == 0.5) {
      for (std::size_t j = 0; j < buf.size(); ++j) out[j] = std::sqrt(std::norm(buf[j]));
    } else if (half_p == 2.0) {
      for (std::size_t j = 0; j < buf.size(); ++j) {
        const double a = std::norm(buf[j]);
        out[j] = a * a;
      }
    } else {
      for (std::size_t j = 0; j < buf.size(); ++j) out[j] = std::pow(std::norm(buf[j]), half_p);
    }
  });
}

cplx bidisk_inner(const BidiskFunction& F, const BidiskFunction& G, const DiskGrid& grid) {
  RowKernel kf(F, grid.nodes());
  RowKernel kg(G, grid.nodes());
  const std::size_t n = grid.size();
  const auto weights = grid.weights();
  std::vector<cplx> rf(n), rg(n);
  std::vector<double> re(n), im(n), outer_re(n), outer_im(n);
  for (std::size_t i = 0; i < n; ++i) {
    kf.row(i, rf);
    kg.row(i, rg);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = weights[j] * rf[j] * std::conj(rg[j]);
      re[j] = v.real();
      im[j] = v.imag();
    }
    outer_re[i] = weights[i] * pairwise_sum(re);
    outer_im[i] = weights[i] * pairwise_sum(im);
  }
  return {pairwise_sum(outer_re), pairwise_sum(outer_im)};
}

double lift_norm_series_A2(std::span<const cplx> coeffs) {
  double sum = 0.0;
  double h = 0.0;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    h += 1.0 / static_cast<double>(k);
    sum += std::norm(coeffs[k]) / static_cast<double>(k + 1) * h;
  }
  return 2.0 * sum;
}

NormResult log_weighted_norm(const HoloFunction& f, const DiskGrid& grid) {
  if (!f.on_disk()) throw TypeMismatch("log-weighted norm needs a disk function");
  if (grid.alpha() != 0.0) throw ParameterError("log-weighted norm needs an unweighted grid");
  return integrate(grid, [&](cplx z) {
    return std::norm(f.eval_raw(z)) * -std::log1p(-std::norm(z));
  });
}

double log_weighted_monomial(std::size_t k) {
  return harmonic(k + 1) / static_cast<double>(k + 1);
}

double divergence_weight(std::size_t k) {
  const double l = std::log(static_cast<double>(k) + 2.0);
  return 1.0 / ((static_cast<double>(k) + 2.0) * l * l);
}

double divergence_weight_harmonic(std::size_t k) {
  return (static_cast<double>(k) + 1.0) * divergence_weight(k);
}

DivergenceDemo divergence_demo(std::span<const std::size_t> N_list,
                               const std::function<double(std::size_t)>& weight) {
  if (N_list.empty()) throw ParameterError("divergence demo needs at least one degree");
  if (!std::is_sorted(N_list.begin(), N_list.end())) {
    throw ParameterError("truncation degrees must increase");
  }
  DivergenceDemo out;
  long double a2 = 0.0L, lift = 0.0L, h = 0.0L;
  std::size_t k = 0;
  for (const std::size_t N : N_list) {
    for (; k <= N; ++k) {
      const long double b = static_cast<long double>(weight(k)) / (k + 1.0L);
      a2 += b;
      if (k >= 1) {
        h += 1.0L / k;
        lift += 2.0L * b * h;
      }
    }
    out.N.push_back(N);
    out.a2_partial.push_back(static_cast<double>(a2));
    out.lift_partial.push_back(static_cast<double>(lift));
  }
  return out;
}

LiftingScanResult lifting_scan(std::span<const double> s_values, double p, double alpha,
                               LiftTarget target) {
  const WeightParams wp(p, alpha);
  LiftingScanResult out;
  out.target = target;
  out.p = p;
  out.alpha = alpha;
  if (target == LiftTarget::thm11) {
    if (!(p < alpha + 2.0)) throw ParameterError("this scan mode needs p < alpha + 2");
    out.beta = alpha;
  } else {
    if (!(p > alpha + 2.0)) throw ParameterError("this scan mode needs p > alpha + 2");
    out.beta = 0.5 * (p + alpha) - 1.0;
  }
  const DiskGrid target_grid = bidisk_singular_grid(out.beta);
  for (const double s : s_values) {
    if (!(p * s < 2.0 + alpha)) continue;
    const HoloFunction f = HoloFunction::power(s);
    LiftingScanRow row;
    row.s = s;
    row.norm_f = norm_p(f, wp, default_disk_grid(f, alpha));
    row.norm_Lf = bidisk_norm(BidiskFunction::lifted(f), p, target_grid);
    row.ratio = row.norm_Lf.value / row.norm_f.value;
    row.converged = row.norm_f.converged && row.norm_Lf.converged;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string to_csv(const LiftingScanResult& scan) {
  std::ostringstream os;
  os.precision(17);
  os << "s,norm_f,norm_Lf,ratio,converged\n";
  for (const auto& r : scan.rows) {
    os << r.s << ',' << r.norm_f.value << ',' << r.norm_Lf.value << ',' << r.ratio << ','
       << (r.converged ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace bergman
