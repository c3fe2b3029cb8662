#include "bergman/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bergman/error.hpp"
#include "bergman/serialize.hpp"
#include "suites/kit.hpp"

namespace bergman {

namespace {

struct Entry {
  SuiteInfo info;
  suites::SuiteFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"geometry", "metric axioms for rho and beta, disk radius conversions, ball automorphism identities"},
       suites::geometry},
      {{"lemma4", "metric(z, w)/|z - w| -> 1/(1 - |z|^2) along radial steps, disk and ball"},
       suites::lemma4},
      {{"quadrature", "weighted area quadrature: monomial norms, orthogonality, normalization, membership"},
       suites::quadrature},
      {{"lemma5", "|f(0)|^p + int |(1 - |z|^2) f'|^p dA_alpha is comparable to int |f|^p dA_alpha"},
       suites::lemma5},
      {{"thm6", "f in A^p_alpha iff |f(z) - f(w)| <= rho(z, w)(g(z) + g(w)) with g in L^p(dA_alpha)"},
       suites::thm6},
      {{"thm7", "the same characterization with the hyperbolic metric beta"}, suites::thm7},
      {{"thm8", "the same with |z - w| and g in L^p(dA_{p+alpha})"}, suites::thm8},
      {{"lemma10", "growth of int (1 - |w|^2)^s / |1 - conj(z) w|^(2+s+t) dA(w) as |z| -> 1"},
       suites::lemma10},
      {{"thm11", "L f(z, w) = (f(z) - f(w))/(z - w) maps A^p_alpha into A^p_alpha(D^2) for p < alpha + 2"},
       suites::thm11},
      {{"thm12", "L maps A^p_alpha into A^p_beta(D^2), 2(beta + 1) = p + alpha, for p > alpha + 2"},
       suites::thm12},
      {{"a2-diverge", "L does not map A^2 into A^2(D^2): exact Taylor series of the lifted norm"},
       suites::a2_diverge},
      {{"ball-thm13", "Lipschitz witnesses on the ball in C^2 and the derivative norm equivalences"},
       suites::ball_thm13},
  };
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << content;
  os.flush();
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> c = [] {
    std::vector<SuiteInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return c;
}

bool is_suite(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.info.name == name) return true;
  }
  return false;
}

nlohmann::json SuiteConfig::to_json() const {
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& [k, v] : tolerances) tol[k] = v;
  return {{"suite", suite}, {"seed", seed}, {"tolerances", tol}, {"out", out_dir.string()}};
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SuiteConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "suite") {
      if (!value.is_string()) throw ConfigError("\"suite\" must be a string");
      c.suite = value.get<std::string>();
    } else if (key == "seed") {
      const bool ok = value.is_number_unsigned() || (value.is_number_integer() && value.get<std::int64_t>() >= 0);
      if (!ok) throw ConfigError("\"seed\" must be a nonnegative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "tolerances") {
      if (!value.is_object()) throw ConfigError("\"tolerances\" must be an object");
      for (const auto& [name, t] : value.items()) {
        if (!t.is_number()) throw ConfigError("tolerance \"" + name + "\" must be a number");
        c.tolerances[name] = t.get<double>();
      }
    } else if (key == "out") {
      if (!value.is_string()) throw ConfigError("\"out\" must be a string");
      c.out_dir = value.get<std::string>();
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  if (!c.suite.empty() && !is_suite(c.suite)) throw ConfigError("unknown suite \"" + c.suite + "\"");
  return c;
}

bool ExperimentReport::passed() const {
  for (const auto& c : checks) {
    if (!c.informational && !c.pass) return false;
  }
  return true;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j = {{"name", c.name},
                        {"value", real_to_json(c.value)},
                        {"threshold", real_to_json(c.threshold)},
                        {"relation", c.relation},
                        {"pass", c.pass},
                        {"informational", c.informational}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    cs.push_back(std::move(j));
  }
  return {{"suite", suite},     {"version", version},  {"config", config.to_json()},
          {"passed", passed()}, {"checks", cs},        {"data", data},
          {"wall_seconds", wall_seconds}};
}

ExperimentReport run_suite(const SuiteConfig& config) {
  const Entry* entry = nullptr;
  for (const auto& e : registry()) {
    if (e.info.name == config.suite) entry = &e;
  }
  if (entry == nullptr) throw ConfigError("unknown suite \"" + config.suite + "\"");
  ExperimentReport rep;
  rep.suite = config.suite;
  rep.config = config;
  const auto t0 = std::chrono::steady_clock::now();
  suites::Builder b(rep, config);
  try {
    entry->fn(b);
  } catch (const std::exception& e) {
    b.require("suite_completed", false, e.what());
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string table_to_csv(const Table& t) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << csv_escape(t.columns[i]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "");
      if (std::isfinite(row[i])) os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  if (format != ReportFormat::csv) {
    const auto path = dir / (report.suite + ".json");
    write_file(path, report.to_json().dump(2) + "\n");
    written.push_back(path);
  }
  if (format != ReportFormat::json) {
    if (report.tables.empty()) {
      std::ostringstream os;
      os.precision(17);
      os << "name,value,threshold,relation,pass,informational\n";
      for (const auto& c : report.checks) {
        os << csv_escape(c.name) << ',' << c.value << ',' << c.threshold << ',' << c.relation
           << ',' << (c.pass ? "true" : "false") << ',' << (c.informational ? "true" : "false")
           << '\n';
      }
      const auto path = dir / (report.suite + "_checks.csv");
      write_file(path, os.str());
      written.push_back(path);
    }
    for (const auto& t : report.tables) {
      const auto path = dir / (report.suite + "_" + t.name + ".csv");
      write_file(path, table_to_csv(t));
      written.push_back(path);
    }
  }
  return written;
}

namespace suites {

Table& Builder::table(std::string name, std::vector<std::string> columns) {
  rep_.tables.push_back(Table{std::move(name), std::move(columns), {}});
  return rep_.tables.back();
}

double Builder::tol(const std::string& name, double fallback) const {
  const auto it = cfg_.tolerances.find(name);
  return it == cfg_.tolerances.end() ? fallback : it->second;
}

Check& Builder::add(Check c) {
  rep_.checks.push_back(std::move(c));
  return rep_.checks.back();
}

Check& Builder::at_most(const std::string& name, double value, double threshold,
                        const std::string& detail) {
  const double t = tol(name, threshold);
  return add({name, value, t, "<=", value <= t, false, detail});
}

Check& Builder::below(const std::string& name, double value, double threshold,
                      const std::string& detail) {
  const double t = tol(name, threshold);
  return add({name, value, t, "<", value < t, false, detail});
}

Check& Builder::at_least(const std::string& name, double value, double threshold,
                         const std::string& detail) {
  const double t = tol(name, threshold);
  return add({name, value, t, ">=", value >= t, false, detail});
}

Check& Builder::require(const std::string& name, bool ok, const std::string& detail) {
  return add({name, ok ? 1.0 : 0.0, 1.0, ">=", ok, false, detail});
}

Check& Builder::info(const std::string& name, double value, const std::string& detail) {
  return add({name, value, std::nan(""), "", true, true, detail});
}

cplx random_disk_point(Rng& rng) {
  return std::polar(mixed_radius(rng), 2.0 * std::numbers::pi * rng.uniform());
}

detail::BallCoords random_ball_point(Rng& rng, std::size_t n) {
  detail::BallCoords u{};
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = cplx(rng.normal(), rng.normal());
    s += std::norm(u[k]);
  }
  const double scale = mixed_radius(rng) / std::sqrt(s);
  for (std::size_t k = 0; k < n; ++k) u[k] *= scale;
  return u;
}

HoloFunction random_polynomial(Rng& rng, std::size_t degree) {
  std::vector<cplx> c(degree + 1);
  for (auto& a : c) a = cplx(rng.normal(), rng.normal());
  return HoloFunction::taylor(std::move(c));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace suites

}  // namespace bergman
