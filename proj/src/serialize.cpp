#include "bergman/serialize.hpp"

#include <cmath>

#include "bergman/error.hpp"

namespace bergman {

json real_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json complex_to_json(cplx z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("complex value must be a number or a [re, im] pair");
}

json to_json(const HoloFunction& f) {
  json j;
  j["variant"] = f.variant_name();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TaylorPoly>) {
          json c = json::array();
          for (const cplx a : v.coeffs) c.push_back(complex_to_json(a));
          j["coeffs"] = std::move(c);
        } else if constexpr (std::is_same_v<T, PowerSingularity>) {
          j["s"] = v.s;
        } else if constexpr (std::is_same_v<T, BallPoly>) {
          j["n"] = v.n;
          json terms = json::array();
          for (const auto& t : v.terms) {
            json e = json::array();
            for (std::size_t k = 0; k < v.n; ++k) e.push_back(t.exponents[k]);
            terms.push_back({{"exponents", e}, {"coeff", complex_to_json(t.coeff)}});
          }
          j["terms"] = std::move(terms);
        }
      },
      f.variant());
  return j;
}

HoloFunction holo_function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string()) {
    throw ConfigError("function object needs a string \"variant\"");
  }
  const auto variant = j["variant"].get<std::string>();
  try {
    if (variant == "taylor") {
      if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
        throw ConfigError("taylor function needs a \"coeffs\" array");
      }
      std::vector<cplx> c;
      for (const auto& a : j["coeffs"]) c.push_back(complex_from_json(a));
      return HoloFunction::taylor(std::move(c));
    }
    if (variant == "power") {
      if (!j.contains("s") || !j["s"].is_number()) throw ConfigError("power function needs \"s\"");
      return HoloFunction::power(j["s"].get<double>());
    }
    if (variant == "log") return HoloFunction::log_kernel();
    if (variant == "ball_poly") {
      if (!j.contains("n") || !j["n"].is_number_integer() || !j.contains("terms") ||
          !j["terms"].is_array()) {
        throw ConfigError("ball polynomial needs integer \"n\" and a \"terms\" array");
      }
      const auto n = j["n"].get<std::size_t>();
      std::vector<BallPoly::Term> terms;
      for (const auto& t : j["terms"]) {
        if (!t.contains("exponents") || !t["exponents"].is_array() ||
            t["exponents"].size() > BallPoint::max_dim || !t.contains("coeff")) {
          throw ConfigError("ball term needs \"exponents\" and \"coeff\"");
        }
        BallPoly::Term term;
        for (std::size_t k = 0; k < t["exponents"].size(); ++k) {
          term.exponents[k] = t["exponents"][k].get<int>();
        }
        term.coeff = complex_from_json(t["coeff"]);
        terms.push_back(term);
      }
      return HoloFunction::ball_poly(n, std::move(terms));
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown function variant: " + variant);
}

json to_json(const NormResult& r) {
  json partials = json::array();
  for (const double x : r.partials) partials.push_back(real_to_json(x));
  json eps = json::array();
  for (const double x : r.epsilons) eps.push_back(x);
  return {{"value", real_to_json(r.value)},
          {"converged", r.converged},
          {"verdict", to_string(r.verdict)},
          {"estimated_error", real_to_json(r.estimated_error)},
          {"epsilons", std::move(eps)},
          {"partials", std::move(partials)}};
}

json to_json(const ViolationReport& r) {
  json z = json::array();
  for (const cplx c : r.argmax_z) z.push_back(complex_to_json(c));
  json w = json::array();
  for (const cplx c : r.argmax_w) w.push_back(complex_to_json(c));
  return {{"metric", to_string(r.metric)},
          {"pairs", r.pairs},
          {"near_pairs", r.near_pairs},
          {"far_pairs", r.far_pairs},
          {"max_violation", real_to_json(r.max_violation)},
          {"argmax", {{"z", std::move(z)}, {"w", std::move(w)}}},
          {"seed", r.seed},
          {"r", r.r},
          {"C", r.C}};
}

json to_json(const Witness& w) {
  return {{"base", to_json(w.base())},
          {"metric", to_string(w.metric())},
          {"r", w.r()},
          {"C", w.C()},
          {"C_rule", "(1+r)/(1-r)^2"},
          {"safety", w.safety()},
          {"sup_sample", kSupSampleSide * kSupSampleSide + 1}};
}

json to_json(const BallWitness& w) {
  return {{"base", to_json(w.base())},
          {"n", w.dim()},
          {"r", w.r()},
          {"C", w.C()},
          {"sup_sample", kBallSupSample}};
}

json to_json(const LiftingScanResult& scan) {
  json rows = json::array();
  for (const auto& r : scan.rows) {
    rows.push_back({{"s", r.s},
                    {"norm_f", to_json(r.norm_f)},
                    {"norm_Lf", to_json(r.norm_Lf)},
                    {"ratio", real_to_json(r.ratio)},
                    {"converged", r.converged}});
  }
  return {{"target", scan.target == LiftTarget::thm11 ? "p<alpha+2" : "p>alpha+2"},
          {"p", scan.p},
          {"alpha", scan.alpha},
          {"beta", scan.beta},
          {"rows", std::move(rows)}};
}

}  // namespace bergman
