#include <doctest.h>

#include <cmath>
#include <random>

#include "qising/critical.hpp"
#include "qising/dynamics.hpp"
#include "qising/errors.hpp"
#include "qising/isoperimetry.hpp"

using namespace qising;

namespace {

Config random_config(int n, std::mt19937_64& rng) {
  Config s(n);
  for (VertexId v = 0; v < s.vertex_count(); ++v)
    if (rng() & 1u) s.insert(v);
  return s;
}

// E_⊟[τ_⊞] on Q_1: leave ⊟ at rate 2e^{-β/2}, then from the singleton fall back
// or finish with rate 1 each.
double two_vertex_time(double beta) { return std::exp(beta / 2) + 1; }

}  // namespace

TEST_CASE("flip rates") {
  const auto p = make_params(1, 0.5, 2.0, true);
  CHECK(flip_rate(Config::empty(1), 0, p) == doctest::Approx(std::exp(-1.0)));
  CHECK(flip_rate(Config::from_vertices(1, {0}), 1, p) == 1.0);
  CHECK(flip_rate(Config::from_vertices(1, {0}), 0, p) == 1.0);
  const auto q = make_params(3, 0.5001, 1.5);
  CHECK(flip_rate(Config::empty(3), 0, q) == doctest::Approx(std::exp(-1.5 * 2.4999)));
}

TEST_CASE("detailed balance") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 10000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const double h = 0.05 + (n - 0.1) * std::generate_canonical<double, 53>(rng);
    const double beta = 3.0 * std::generate_canonical<double, 53>(rng);
    const ModelParams p{n, h, beta};
    const Config s = random_config(n, rng);
    const VertexId v = static_cast<VertexId>(rng() % s.vertex_count());
    Config s2 = s;
    s2.toggle(v);
    const double lhs = std::log(flip_rate(s, v, p)) - beta * energy_gap(s).value(h);
    const double rhs = std::log(flip_rate(s2, v, p)) - beta * energy_gap(s2).value(h);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1));
  }
}

TEST_CASE("chains") {
  CHECK(build_chain(4, 0.5001, true).size() == 402);
  CHECK(build_chain(3, 0.5001, true).size() == 22);
  CHECK(build_chain(3, 0.5001, false).size() == 256);
  CHECK_THROWS_AS(build_chain(4, 0.5001, false), CapabilityError);
  CHECK_THROWS_AS(build_chain(5, 0.5001, true), CapabilityError);
  for (int n = 1; n <= 4; ++n) {
    const Chain c = build_chain(n, 0.5001, true);
    std::uint64_t total = 0;
    for (auto w : c.weight) total += w;
    CHECK(total == (std::uint64_t{1} << (1u << n)));
    CHECK(c.rep[c.minus] == 0);
    CHECK(c.rep[c.plus] == (std::uint64_t{1} << (1u << n)) - 1);
    // each representative has 2^n flips in total
    for (const auto& edges : c.out) {
      std::uint32_t flips = 0;
      for (const auto& e : edges) flips += e.count;
      CHECK(flips == (1u << n));
    }
  }

  const Chain c = build_chain(2, 0.7, false);
  std::vector<char> absorbing(c.size(), 0);
  absorbing[c.plus] = 1;
  std::vector<std::uint32_t> states;
  const auto a = transient_block<double>(c, 1.3, absorbing, states);
  CHECK(states.size() == c.size() - 1);
  CHECK(states.front() == c.size() - 2);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    CHECK(a(i, i) > 0);
    CHECK(a.row(i).sum() >= -1e-15);
  }
}

TEST_CASE("kinetic Monte Carlo") {
  const auto p1 = make_params(1, 0.5, 2.0, true);
  const auto s1 = simulate_hitting(p1, 5, 20000, 1000000);
  CHECK(s1.truncated == 0);
  CHECK(std::fabs(s1.mean - two_vertex_time(2.0)) < 4 * s1.std_error);

  const auto p2 = make_params(2, 0.7, 0.0);
  const auto s2 = simulate_hitting(p2, 6, 20000, 1000000);
  const double exact2 = exact_expected_hitting(p2).expected;
  CHECK(std::fabs(s2.mean - exact2) < 4 * s2.std_error);

  for (auto [n, h, beta] : {std::tuple{2, 0.7, 1.0}, std::tuple{3, 0.5001, 2.0}}) {
    const auto p = make_params(n, h, beta);
    const auto s = simulate_hitting(p, 11, 10000, 100000000);
    const double exact = exact_expected_hitting(p).expected;
    CAPTURE(n);
    CHECK(std::fabs(s.mean - exact) < 4 * s.std_error);
  }

  // reproducible from the seed, and different seeds differ
  const auto a = simulate_hitting(p1, 99, 500, 100000);
  const auto b = simulate_hitting(p1, 99, 500, 100000);
  const auto c = simulate_hitting(p1, 100, 500, 100000);
  CHECK(a.mean == b.mean);
  CHECK(a.events == b.events);
  CHECK(a.mean != c.mean);
  CHECK(replica_seed(1, 0) != replica_seed(1, 1));
  CHECK(replica_seed(1, 3) == replica_seed(1, 3));

  const auto one = kmc_run(Config::empty(2), {Config::full(2)}, p2, 3, 2);
  CHECK(one.truncated);
  CHECK(one.target == -1);
  CHECK(one.events == 2);
}

TEST_CASE("event budget") {
  const auto p = make_params(3, 0.5001, 20.0);
  CHECK_THROWS_AS(simulate_hitting(p, 1, 1000000, 1000), BudgetError);
  CHECK_THROWS_AS(simulate_hitting(p, 1, 0, 1000), ParameterError);
  CHECK_NOTHROW(simulate_hitting(make_params(3, 0.5001, 1.0), 1, 10, 1000000, 1e10));
}

TEST_CASE("chi-square test") {
  const auto t = chi_square_test({10, 20, 30}, {1, 1, 1}, 0.05);
  CHECK(t.statistic == doctest::Approx(10.0));
  CHECK(t.dof == 2);
  CHECK(t.p_value == doctest::Approx(std::exp(-5.0)));
  CHECK(t.critical == doctest::Approx(5.991464547));
  CHECK(t.rejected);
  const auto ok = chi_square_test({25, 25, 50}, {0.25, 0.25, 0.5}, 0.05);
  CHECK(ok.statistic == 0.0);
  CHECK_FALSE(ok.rejected);
  CHECK_THROWS_AS(chi_square_test({1}, {1}, 0.05), ParameterError);
  CHECK_THROWS_AS(chi_square_test({1, 2}, {1}, 0.05), ParameterError);
}

TEST_CASE("precision modes") {
  CHECK(parse_precision("auto") == Precision::automatic);
  CHECK(parse_precision("double") == Precision::standard);
  CHECK(parse_precision("extended") == Precision::extended);
  CHECK_THROWS_AS(parse_precision("quad"), ParameterError);
  CHECK(std::string(to_string(Precision::extended)) == "extended");
  CHECK(resolve_precision(Precision::automatic, make_params(3, 0.5001, 2.0)) == Precision::standard);
  CHECK(resolve_precision(Precision::automatic, make_params(3, 0.5001, 9.0)) == Precision::extended);
  CHECK(resolve_precision(Precision::standard, make_params(3, 0.5001, 9.0)) == Precision::standard);
}

TEST_CASE("exact hitting times") {
  for (double beta : {0.0, 1.0, 4.0, 12.0}) {
    const auto p = make_params(1, 0.5, beta, true);
    for (auto mode : {Precision::standard, Precision::extended}) {
      const auto sol = exact_expected_hitting(p, mode);
      CHECK(sol.expected == doctest::Approx(two_vertex_time(beta)).epsilon(1e-12));
      CHECK(sol.residual <= kResidualBound);
    }
    CHECK(exact_expected_hitting(p, Precision::standard, false).expected ==
          doctest::Approx(two_vertex_time(beta)).epsilon(1e-12));
  }

  // orbit chain against the full chain
  for (auto [n, h, beta] : {std::tuple{2, 0.7, 1.5}, std::tuple{3, 0.5001, 3.0}, std::tuple{3, 1.37, 2.0}}) {
    const auto p = make_params(n, h, beta);
    const auto lumped = exact_expected_hitting(p, Precision::extended, true);
    const auto full = exact_expected_hitting(p, Precision::extended, false);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (1u << n)); ++m) {
      const Config s = Config::from_mask(n, m);
      CHECK(lumped.at(s) == doctest::Approx(full.at(s)).epsilon(1e-12));
    }
  }

  // times are positive off ⊞ and shrink along the path past its highest point
  const auto p = make_params(3, 0.5001, 6.0);
  const auto sol = exact_expected_hitting(p);
  const auto ks = gamma_star_brute(3, 0.5001).k_star;
  for (std::uint64_t m = 0; m + 1 < 256; ++m) CHECK(sol.at(Config::from_mask(3, m)) > 0);
  CHECK(sol.at(Config::full(3)) == 0);
  for (std::uint64_t k = ks; k < 8; ++k) CHECK(sol.at(upsilon(3, k)) > sol.at(upsilon(3, k + 1)));
  CHECK(sol.expected_jumps > 1);
  CHECK(sol.residual <= kResidualBound);
}

TEST_CASE("backward error guard") {
  const auto p = make_params(3, 0.5001, 4.0);
  CHECK_THROWS_AS(exact_expected_hitting(p, Precision::standard, true, 1e-40), PrecisionError);
  CHECK_NOTHROW(exact_expected_hitting(p, Precision::standard, true));
  CHECK_THROWS_AS(exact_expected_hitting(make_params(5, 0.5001, 1.0)), CapabilityError);
}

TEST_CASE("committor and gate") {
  const auto c1 = committor(make_params(1, 0.5, 3.0, true));
  CHECK(c1.at(Config::from_vertices(1, {0})) == doctest::Approx(0.5));
  CHECK(c1.at(Config::empty(1)) == 0.0);
  CHECK(c1.at(Config::full(1)) == 1.0);

  const auto p3 = make_params(3, 0.5001, 2.0);
  const auto c3 = committor(p3);
  for (double v : c3.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  const auto full = committor(p3, Precision::extended, false);
  for (std::uint64_t m = 0; m < 256; m += 3)
    CHECK(c3.at(Config::from_mask(3, m)) == doctest::Approx(full.at(Config::from_mask(3, m))).epsilon(1e-10));

  CHECK(gate_probability(make_params(1, 0.5, 2.0, true), c_star_enumerate(1, 0.5)).value ==
        doctest::Approx(1.0));
  const auto c_star = c_star_enumerate(3, 0.5001);
  double prev = 0;
  for (double beta : {2.0, 4.0, 6.0}) {
    const auto g = gate_probability(make_params(3, 0.5001, beta), c_star);
    CHECK(g.value > prev);
    CHECK(g.value <= 1.0 + 1e-12);
    prev = g.value;
  }
  CHECK(prev > 0.9999);
}

TEST_CASE("first entrance into the critical set") {
  for (int n : {3, 4}) {
    const auto c_star = c_star_enumerate(n, 0.5001);
    const auto d = first_hit_distribution(make_params(n, 0.5001, 2.0), c_star);
    double total = 0;
    for (double x : d.probs) {
      total += x;
      CHECK(x == doctest::Approx(1.0 / static_cast<double>(c_star.size())).epsilon(1e-9));
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(d.reach > 0.9);
    CHECK(d.by_symmetry == (n == 4));
  }
  CHECK_THROWS_AS(first_hit_distribution(make_params(3, 0.5001, 2.0), {}), ParameterError);
  CHECK_THROWS_AS(first_hit_distribution(make_params(3, 0.5001, 2.0), {Config::empty(3)}), ParameterError);

  // Monte Carlo tallies against the exact distribution
  const auto c_star = c_star_enumerate(3, 0.5001);
  const auto p = make_params(3, 0.5001, 2.0);
  const auto stats = simulate_first_hit(p, c_star, 4, 20000, 100000000);
  REQUIRE(stats.tallies.size() == c_star.size() + 1);
  const auto d = first_hit_distribution(p, c_star);
  std::vector<std::uint64_t> counts(stats.tallies.begin(), stats.tallies.end() - 1);
  const auto chi = chi_square_test(counts, d.probs, 0.001);
  CHECK_FALSE(chi.rejected);
}

TEST_CASE("asymptotic rows") {
  const auto rows = asymptotic_report(3, 0.5001, {2.0, 4.0}, 1.0 / 16);
  REQUIRE(rows.size() == 2);
  const double gamma = gamma_star_brute(3, 0.5001).value;
  for (const auto& r : rows) {
    CHECK(r.scaled == doctest::Approx(std::exp(-r.beta * gamma) * r.expected));
    CHECK(r.ratio == doctest::Approx(r.scaled * 16));
    CHECK(r.expected == doctest::Approx(exact_expected_hitting(make_params(3, 0.5001, r.beta)).expected));
  }
}
