#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qising/critical.hpp"
#include "qising/dynamics.hpp"
#include "qising/errors.hpp"
#include "qising/isoperimetry.hpp"
#include "qising/landscape.hpp"

namespace qising::cli {

namespace {

double field_tol(const RunConfig& cfg) { return cfg.field_tol < 0 ? default_field_tol(cfg.n) : cfg.field_tol; }

Json energy_json(const EnergyValue& v, double h) {
  return Json{{"boundary", v.e}, {"size", v.s}, {"value", v.value(h)}};
}

Json rational_json(const Rational& r) {
  return Json{{"num", r.numerator()}, {"den", r.denominator()},
              {"value", static_cast<double>(r.numerator()) / static_cast<double>(r.denominator())}};
}

// Constant lists collapse to their value.
Json counts_json(const std::vector<int>& v) {
  if (!v.empty() && std::all_of(v.begin(), v.end(), [&](int x) { return x == v.front(); })) return v.front();
  return v;
}

Json check(const std::string& name, bool ok) { return Json{{"check", name}, {"passed", ok}}; }

Json closed_forms_json(const ClosedFormCounts& p) {
  return Json{{"c_star_stepwise", p.stepwise},   {"c_star_stepwise_match", p.stepwise_match},
              {"c_star_collapsed", p.collapsed}, {"c_star_collapsed_match", p.collapsed_match},
              {"k_collapsed", p.k_collapsed},        {"k_collapsed_match", p.k_collapsed_match},
              {"k_unit_minus", p.k_unit_minus},            {"k_unit_minus_match", p.k_unit_minus_match}};
}

Json barrier_json(int n, double h) {
  const GammaBrute brute = gamma_star_brute(n, h);
  const BarrierProfile closed = gamma_star_closed(n, h);
  Json j;
  j["delta"] = closed.delta;
  j["epsilon"] = closed.epsilon;
  j["k_star"] = brute.k_star;
  j["k_star_closed"] = closed.k_star;
  j["k_star_ties"] = brute.argmax;
  j["gamma_star"] = energy_json(brute.level, h);
  j["gamma_star_closed"] = closed.gamma_star;
  j["gamma_star_closed_match"] = std::fabs(closed.gamma_star - brute.value) <= 1e-9;
  j["gamma_collapsed"] = closed.gamma_collapsed;
  j["gamma_collapsed_match"] = std::fabs(closed.gamma_collapsed - brute.value) <= 1e-9;
  j["delta_one"] = closed.delta_one;
  j["large_h"] = closed.large_h;
  j["local_maxima"] = local_maxima_of_g(n, h);
  if (n <= 8) {
    const GProfile g = g_profile(n, h);
    Json table = Json::array();
    for (std::uint64_t k = 0; k < g.size(); ++k) table.push_back(g[k]);
    j["g"] = table;
  }
  return j;
}

Json critical_json(const CriticalReport& r, const FiltrationIndex& index) {
  Json j;
  j["k_star"] = r.k_star;
  j["c_star_size"] = r.c_star.size();
  j["c_star_brute_size"] = c_star_brute(r.n, r.h).size();
  j["c_star_matches_brute"] = c_star_brute(r.n, r.h) == r.c_star;
  j["p_star_size"] = r.p_star.size();
  j["b_star_size"] = r.b_star.size();
  j["n_minus"] = counts_json(r.n_minus);
  j["n_plus"] = counts_json(r.n_plus);
  j["h2_holds"] = r.h2_holds;
  j["flip_route_agrees"] = r.flip_route_agrees;
  j["pairwise_non_adjacent"] = r.c_star_non_adjacent;
  j["wells_empty"] = r.wells_empty;
  j["k_variational"] = rational_json(r.k_variational);
  j["closed_forms"] = closed_forms_json(r.closed_forms);
  j["filtration_barrier"] = energy_json(index.comm_height(index.minus_state(), index.plus_state()), r.h);
  return j;
}

Json critical_unchecked(int n, double h) {
  // n = 5: enumeration and flip counts only, without the wells certificate
  const auto c_star = c_star_enumerate(n, h);
  std::vector<int> minus, plus;
  for (const auto& s : c_star) {
    const NeighborCounts nc = neighbor_counts_by_flips(s, h);
    minus.push_back(nc.minus);
    plus.push_back(nc.plus);
  }
  Rational inv{0};
  for (std::size_t i = 0; i < c_star.size(); ++i)
    if (minus[i] + plus[i] > 0) inv += Rational(minus[i] * plus[i], minus[i] + plus[i]);
  Json j;
  j["k_star"] = gamma_star_brute(n, h).k_star;
  j["c_star_size"] = c_star.size();
  j["n_minus"] = counts_json(minus);
  j["n_plus"] = counts_json(plus);
  j["wells_checked"] = false;
  double k = 0;
  if (inv.numerator() != 0) {
    const Rational kr(inv.denominator(), inv.numerator());
    j["k_variational"] = rational_json(kr);
    k = boost::rational_cast<double>(kr);
  } else {
    j["k_variational"] = nullptr;
  }
  j["closed_forms"] = closed_forms_json(closed_form_counts(n, h, c_star.size(), k));
  return j;
}

double solve_prefactor(int n, double h) {
  const FiltrationIndex index = FiltrationIndex::build(n, h);
  return boost::rational_cast<double>(critical_report(index).k_variational);
}

// K for the scaled ratio: filtration-backed up to n = 4, flip counts at n = 5,
// unknown beyond.
double simulate_prefactor(int n, double h) {
  if (n <= 4) return solve_prefactor(n, h);
  if (n == 5) {
    const Json k = critical_unchecked(n, h).at("k_variational");
    if (!k.is_null()) return k.at("value").get<double>();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string fmt17(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["n"] = n;
  j["h"] = h;
  j["betas"] = betas;
  j["seed"] = seed;
  j["replicas"] = replicas;
  j["precision"] = precision;
  j["allow_degenerate_h"] = allow_degenerate_h;
  j["field_tol"] = qising::cli::field_tol(*this);
  j["max_events"] = max_events;
  j["first_hit"] = first_hit;
  j["format"] = format;
  j["out"] = out;
  return j;
}

void validate(const RunConfig& cfg) {
  check_dim(cfg.n);
  if (cfg.n > 26) throw CapabilityError("fields are validated for n <= 26 only");
  const FieldReport f = validate_field(cfg.n, cfg.h, field_tol(cfg));
  if (!f.admissible && !cfg.allow_degenerate_h) {
    std::ostringstream os;
    os << "field h = " << cfg.h << " is inadmissible: " << f.witness_b << "·h is within " << f.margin
       << " of the integer " << f.witness_a << " (a = " << f.witness_a << ", b = " << f.witness_b
       << "); pass --allow-degenerate-h to proceed";
    throw ParameterError(os.str());
  }
  for (double b : cfg.betas)
    if (!(b >= 0.0) || !std::isfinite(b)) throw ParameterError("beta must be finite and >= 0");
  parse_precision(cfg.precision);
  if (cfg.format != "json" && cfg.format != "csv") throw ParameterError("format must be json or csv");
  const bool tabular = cfg.command == "solve" || cfg.command == "simulate";
  if (cfg.format == "csv" && !tabular) throw ParameterError("csv output is available for solve and simulate");
  if (tabular && cfg.betas.empty()) throw ParameterError("solve and simulate need --beta or --beta-list");
  if (cfg.command == "verify" && cfg.n > 4) throw CapabilityError("verify requires n <= 4");
  if (cfg.command == "solve" && cfg.n > 4) throw CapabilityError("exact solves require n <= 4");
  if (cfg.command == "simulate" && cfg.n > 20) throw CapabilityError("simulate requires n <= 20");
  if (cfg.command == "simulate" && cfg.first_hit && cfg.n > 5) throw CapabilityError("first-hit tallies require n <= 5");
  if (cfg.command == "simulate" && cfg.replicas == 0) throw ParameterError("replicas must be positive");
}

Json analyze(const RunConfig& cfg) {
  const FieldReport f = validate_field(cfg.n, cfg.h, field_tol(cfg));
  Json j;
  j["field"] = Json{{"admissible", f.admissible},
                    {"margin", f.margin},
                    {"witness", Json{{"a", f.witness_a}, {"b", f.witness_b}}}};
  j["barrier"] = barrier_json(cfg.n, cfg.h);
  if (cfg.n <= 4) {
    const FiltrationIndex index = FiltrationIndex::build(cfg.n, cfg.h);
    try {
      j["critical"] = critical_json(critical_report(index), index);
    } catch (const InvariantError& e) {
      // degenerate fields can break the structural assumptions behind K
      j["critical"] = Json{{"error", e.what()}};
    }
  } else if (cfg.n == 5) {
    j["critical"] = critical_unchecked(cfg.n, cfg.h);
  } else {
    j["critical"] = nullptr;
  }
  return j;
}

Json verify(const RunConfig& cfg, bool& passed) {
  const int n = cfg.n;
  const double h = cfg.h;
  Json checks = Json::array();
  Json info = Json::array();
  passed = true;
  auto record = [&](const std::string& name, bool ok) {
    checks.push_back(check(name, ok));
    passed = passed && ok;
  };

  bool iso = true;
  const std::uint64_t vcount = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < vcount; ++k) {
    const MinimizerCatalog cat = brute_min_boundary(n, k);
    std::vector<Config> good;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << vcount); ++m)
      if (static_cast<std::uint64_t>(std::popcount(m)) == k && is_good(Config::from_mask(n, m)))
        good.push_back(Config::from_mask(n, m));
    std::sort(good.begin(), good.end());
    iso = iso && good == cat.minimizers && cat.minimum == minimal_boundary(n, k);
  }
  record("minimizers_equal_good_sets", iso);

  const FiltrationIndex index = FiltrationIndex::build(n, h);
  const GammaBrute brute = gamma_star_brute(n, h);
  const EnergyValue phi = index.comm_height(index.minus_state(), index.plus_state());
  record("gamma_star_brute_equals_filtration", same_level(phi, brute.level, h));
  record("gamma_star_brute_equals_closed", std::fabs(gamma_star_closed(n, h).gamma_star - brute.value) <= 1e-9);

  const auto ms = metastable_set(index);
  record("metastable_set_is_minus", ms.size() == 1 && ms.front().is_empty());
  const EnergyValue level = critical_level(n, h);
  record("wells_empty", wells_scan(index, level).empty());

  try {
    const CriticalReport r = critical_report(index);
    record("c_star_orbit_equals_brute", r.c_star == c_star_brute(n, h));
    record("c_star_pairwise_non_adjacent", r.c_star_non_adjacent);
    record("h2_holds", r.h2_holds);
    record("neighbor_counts_flip_route_agrees", r.flip_route_agrees);
    record("no_stray_states", stray_states(index, level, r.c_star).empty());
    const ConditionCheck cc = check_conditions(index, r);
    record("critical_conditions", cc.adjacency && cc.minus_side && cc.path_to_plus);
    info.push_back(Json{{"name", "c_star_size"}, {"value", r.c_star.size()}, {"closed_form", r.closed_forms.collapsed},
                        {"match", r.closed_forms.collapsed_match}});
    info.push_back(Json{{"name", "k"}, {"value", rational_json(r.k_variational)}, {"closed_form", r.closed_forms.k_collapsed},
                        {"match", r.closed_forms.k_collapsed_match}});
    info.push_back(Json{{"name", "n_minus"}, {"value", counts_json(r.n_minus)}, {"closed_form", 1},
                        {"match", std::all_of(r.n_minus.begin(), r.n_minus.end(), [](int x) { return x == 1; })}});
  } catch (const InvariantError& e) {
    record(std::string("critical_structure: ") + e.what(), false);
  }

  bool certs = true;
  std::uint64_t certified = 0;
  for (std::uint64_t m = 1; m + 1 < index.state_count(); ++m) {
    const Config sigma = Config::from_mask(n, m);
    const StabilityCertificate cert = stability_certificate(sigma, h);
    const auto v = index.stability_level(m);
    const bool ok = cert.certified && verify_certificate(sigma, cert) && v && compare(*v, cert.bound, h) <= 0;
    certs = certs && ok;
    certified += ok;
  }
  record("stability_certificates", certs);

  info.push_back(Json{{"name", "gamma_star"}, {"value", brute.value}, {"closed_form", gamma_star_closed(n, h).gamma_collapsed},
                      {"match", std::fabs(gamma_star_closed(n, h).gamma_collapsed - brute.value) <= 1e-9}});

  Json j;
  j["passed"] = passed;
  j["checks"] = checks;
  j["certificates"] = certified;
  j["informational"] = info;
  return j;
}

Json solve(const RunConfig& cfg) {
  const double k = solve_prefactor(cfg.n, cfg.h);
  const Precision mode = parse_precision(cfg.precision);
  Json rows = Json::array();
  for (const AsymptoticRow& r : asymptotic_report(cfg.n, cfg.h, cfg.betas, k, mode)) {
    rows.push_back(Json{{"beta", r.beta},
                        {"expected_hitting", r.expected},
                        {"scaled", r.scaled},
                        {"scaled_ratio", r.ratio},
                        {"residual_or_se", r.residual},
                        {"events", r.jumps},
                        {"precision", to_string(r.precision)}});
  }
  Json j;
  j["gamma_star"] = gamma_star_brute(cfg.n, cfg.h).value;
  j["k_variational"] = k;
  j["rows"] = rows;
  return j;
}

Json simulate(const RunConfig& cfg) {
  Json rows = Json::array();
  const double gamma = gamma_star_brute(cfg.n, cfg.h).value;
  const double k = simulate_prefactor(cfg.n, cfg.h);
  for (double beta : cfg.betas) {
    const ModelParams p{cfg.n, cfg.h, beta};
    const SimulationStats s = simulate_hitting(p, cfg.seed, cfg.replicas, cfg.max_events);
    const double scaled = std::exp(-beta * gamma) * s.mean;
    Json row{{"beta", beta},
             {"expected_hitting", s.mean},
             {"scaled", scaled},
             {"scaled_ratio", std::isnan(k) ? Json(nullptr) : Json(scaled / k)},
             {"residual_or_se", s.std_error},
             {"events", s.events},
             {"truncated", s.truncated}};
    if (cfg.first_hit) {
      const auto c_star = c_star_enumerate(cfg.n, cfg.h);
      const SimulationStats f = simulate_first_hit(p, c_star, cfg.seed, cfg.replicas, cfg.max_events);
      Json fh{{"tallies", std::vector<std::uint64_t>(f.tallies.begin(), f.tallies.end() - 1)},
              {"plus_first", f.tallies.back()},
              {"truncated", f.truncated}};
      if (cfg.n <= 4) {
        const FirstHitDistribution exact = first_hit_distribution(p, c_star, parse_precision(cfg.precision));
        const ChiSquare chi =
            chi_square_test(std::vector<std::uint64_t>(f.tallies.begin(), f.tallies.end() - 1), exact.probs, 0.001);
        fh["chi_square"] = Json{{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value},
                                {"critical", chi.critical}, {"rejected", chi.rejected}};
      }
      row["first_hit"] = fh;
    }
    rows.push_back(row);
  }
  Json j;
  j["gamma_star"] = gamma;
  j["k_variational"] = std::isnan(k) ? Json(nullptr) : Json(k);
  j["rows"] = rows;
  return j;
}

std::string to_csv(const Json& result) {
  std::ostringstream os;
  os << "beta,expected_hitting,scaled_ratio,residual_or_se,events\r\n";
  for (const auto& r : result.at("rows")) {
    os << fmt17(r.at("beta").get<double>()) << ',' << fmt17(r.at("expected_hitting").get<double>()) << ','
       << (r.at("scaled_ratio").is_null() ? std::string("nan") : fmt17(r.at("scaled_ratio").get<double>())) << ',' << fmt17(r.at("residual_or_se").get<double>()) << ','
       << fmt17(r.at("events").get<double>()) << "\r\n";
  }
  return os.str();
}

}  // namespace qising::cli
