// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qising/critical.hpp"
#include "qising/dynamics.hpp"
#include "qising/isoperimetry.hpp"
#include "qising/landscape.hpp"

#ifndef QISING_BIN
#error "QISING_BIN must point at the qising executable"
#endif

using namespace qising;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.note << " [exception: " << e.what() << "]";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << title << " (" << std::fixed
            << std::setprecision(2) << seconds_since(t0) << " s)" << o.note.str() << std::endl;
}

std::vector<double> admissible_grid(int n, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double h = n * (i + 0.5) / count + 1e-3 * std::sqrt(2.0);
    if (h < n && validate_field(n, h).admissible) out.push_back(h);
  }
  return out;
}

// Σ_{i=a}^{b-1} q(i) by a direct loop.
std::int64_t digit_sum_range(std::uint64_t a, std::uint64_t b) {
  std::int64_t s = 0;
  for (std::uint64_t i = a; i < b; ++i) s += std::popcount(i);
  return s;
}

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(QISING_BIN) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::istringstream in(out);
  std::string line, kept;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) kept += line + "\n";
  return kept;
}

}  // namespace

int main() {
  criterion(1, "isoperimetric minimizers are exactly the good sets (n = 2, 3, 4)", [](Outcome& o) {
    const auto t0 = Clock::now();
    for (int n = 2; n <= 4; ++n) {
      const std::uint64_t vcount = std::uint64_t{1} << n;
      for (std::uint64_t k = 1; k < vcount; ++k) {
        std::int64_t naive_min = -1;
        std::vector<Config> good;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << vcount); ++m) {
          if (static_cast<std::uint64_t>(std::popcount(m)) != k) continue;
          std::int64_t boundary = 0;
          for (VertexId v = 0; v < vcount; ++v)
            for (int i = 0; i < n; ++i) {
              const VertexId w = v ^ (VertexId{1} << i);
              boundary += ((m >> v) & 1u) && !((m >> w) & 1u);
            }
          if (naive_min < 0 || boundary < naive_min) naive_min = boundary;
          const Config s = Config::from_mask(n, m);
          if (is_good(s)) good.push_back(s);
        }
        std::sort(good.begin(), good.end());
        const auto cat = brute_min_boundary(n, k);
        std::int64_t formula = static_cast<std::int64_t>(n * k);
        for (std::uint64_t i = 1; i < k; ++i) formula -= 2 * std::popcount(i);
        o.require(cat.minimizers == good, "minimizers != good sets at n=" + std::to_string(n) + " k=" + std::to_string(k));
        o.require(cat.minimum == naive_min && naive_min == formula && minimal_boundary(n, k) == formula,
                  "minimum mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
    o.require(seconds_since(t0) <= 120, "runtime over 2 minutes");
  });

  criterion(2, "digit-sum identities", [](Outcome& o) {
    for (int r = 0; r <= 20; ++r) {
      const std::int64_t expect = r == 0 ? 0 : static_cast<std::int64_t>(r) << (r - 1);
      o.require(qsum((std::uint64_t{1} << r) - 1) == expect, "qsum(2^r-1) at r=" + std::to_string(r));
      o.require(digit_sum_range(1, std::uint64_t{1} << r) == expect, "direct sum at r=" + std::to_string(r));
    }
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; ++t) {
      const int n = 3 + static_cast<int>(rng() % 22);
      const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 2));
      std::uint64_t a = rng() & ((std::uint64_t{1} << n) - 1);
      a |= std::uint64_t{1} << (j - 1);
      a &= ~(std::uint64_t{1} << j);
      const std::int64_t lhs = digit_sum_range(a, a + (std::uint64_t{1} << (j - 1)));
      const std::int64_t rhs2 = (j + 1 + 2 * std::popcount(a >> (j + 1))) * (std::int64_t{1} << (j - 1));
      o.require(2 * lhs == rhs2 && abdiff_check(a, j, n), "identity at a=" + std::to_string(a));
    }
  });

  criterion(3, "barrier: brute force, closed form and filtration agree", [](Outcome& o) {
    int cases = 0;
    for (int n = 1; n <= 4; ++n) {
      const auto grid = admissible_grid(n, 24);
      o.require(grid.size() >= 20, "fewer than 20 fields at n=" + std::to_string(n));
      for (double h : grid) {
        const auto brute = gamma_star_brute(n, h);
        const auto closed = gamma_star_closed(n, h);
        const auto idx = FiltrationIndex::build(n, h);
        const double filt = idx.comm_height(idx.minus_state(), idx.plus_state()).value(h);
        o.require(std::fabs(brute.value - closed.gamma_star) <= 1e-9 && std::fabs(brute.value - filt) <= 1e-9,
                  "disagreement at n=" + std::to_string(n) + " h=" + std::to_string(h));
        ++cases;
      }
    }
    const auto b3 = gamma_star_brute(3, 0.5), b4 = gamma_star_brute(4, 0.5);
    const auto p3 = gamma_star_closed(3, 0.5), p4 = gamma_star_closed(4, 0.5);
    o.require(b3.value == 3.5 && p3.gamma_collapsed == 2.0, "(3, 0.5) desk check");
    o.require(b4.value == 7.5 && p4.gamma_collapsed == 6.0, "(4, 0.5) desk check");
    o.note << " " << cases << " fields; collapsed constant 2 vs 3.5 at (3,0.5), 6 vs 7.5 at (4,0.5)";
  });

  criterion(4, "metastable set is {⊟}; certificates bound every other state", [](Outcome& o) {
    const auto t0 = Clock::now();
    auto check_set = [&](int n, double h, bool naive) {
      const auto idx = FiltrationIndex::build(n, h);
      o.require(metastable_set(idx) == std::vector<Config>{Config::empty(n)},
                "metastable set at n=" + std::to_string(n) + " h=" + std::to_string(h));
      if (!naive) return;
      // stability levels from raw bottleneck searches
      const std::uint64_t states = idx.state_count();
      std::optional<EnergyValue> top;
      std::vector<std::uint64_t> argmax;
      for (std::uint64_t x = 0; x + 1 < states; ++x) {
        const oracle::Bottleneck b(n, h, x);
        const EnergyValue ex = idx.energy(x);
        std::optional<EnergyValue> v;
        for (std::uint64_t z = 0; z < states; ++z)
          if (less(idx.energy(z), ex, h) && (!v || less(b.best[z] - ex, *v, h))) v = b.best[z] - ex;
        if (!v) continue;
        const int c = top ? compare(*v, *top, h) : 1;
        if (c > 0) {
          top = v;
          argmax.clear();
        }
        if (c >= 0) argmax.push_back(x);
      }
      o.require(argmax == std::vector<std::uint64_t>{0}, "naive metastable set at n=" + std::to_string(n));
    };
    for (double h : {0.37, 0.5001, 0.89, 1.37, 1.61}) check_set(2, h, true);
    for (double h : {0.37, 0.5001, 1.37, 2.13, 2.5001}) check_set(3, h, true);
    for (double h : {0.5001, 2.37}) check_set(4, h, false);

    const double h = 0.5001;
    const auto idx = FiltrationIndex::build(3, h);
    const auto gamma = gamma_star_brute(3, h).level;
    std::mt19937_64 rng(404);
    for (int t = 0; t < 100; ++t) {
      const std::uint64_t m = 1 + rng() % 254;
      const Config s = Config::from_mask(3, m);
      const auto cert = stability_certificate(s, h);
      const auto v = idx.stability_level(m);
      o.require(cert.certified && verify_certificate(s, cert), "certificate for mask " + std::to_string(m));
      o.require(v && compare(*v, cert.bound, h) <= 0 && less(*v, gamma, h),
                "filtration level vs certificate for mask " + std::to_string(m));
    }
    o.require(seconds_since(t0) <= 300, "runtime over 5 minutes");
  });

  criterion(5, "no wells below the critical level (n = 2, 3, 4)", [](Outcome& o) {
    int scanned = 0;
    for (int n = 2; n <= 4; ++n)
      for (double h : admissible_grid(n, n == 4 ? 6 : 12)) {
        const auto idx = FiltrationIndex::build(n, h);
        const auto wells = wells_scan(idx, critical_level(n, h));
        o.require(wells.empty(), "wells at n=" + std::to_string(n) + " h=" + std::to_string(h));
        ++scanned;
      }
    o.note << " " << scanned << " fields";
  });

  criterion(6, "critical structure at (3, 0.5) and (4, 0.5)", [](Outcome& o) {
    struct Want {
      int n;
      std::size_t size;
      int minus, plus;
      Rational k;
    };
    for (const Want& w : {Want{3, 24, 2, 1, Rational(1, 16)}, Want{4, 192, 1, 2, Rational(1, 128)}}) {
      for (double h : {0.5, 0.5001}) {
        std::ostringstream label;
        label << "(" << w.n << ", " << h << ")";
        const std::string at = label.str();
        const auto idx = FiltrationIndex::build(w.n, h);
        const auto r = critical_report(idx);
        const auto ref = oracle::critical_oracle(w.n, h);
        o.require(r.c_star.size() == w.size && r.c_star == ref.c_star, "|C*| at " + at);
        o.require(h2_check(r), "H2 at " + at);
        o.require(r.n_minus.front() == w.minus && r.n_plus.front() == w.plus && r.n_minus == ref.minus &&
                      r.n_plus == ref.plus,
                  "(N-, N+) at " + at);
        o.require(r.k_variational == w.k && ref.k == w.k, "K at " + at);
        if (h == 0.5)
          o.note << " " << at << ": collapsed |C*| " << r.closed_forms.collapsed << " (stepwise " << r.closed_forms.stepwise
                 << "), collapsed K " << r.closed_forms.k_collapsed << " vs " << w.k << ";";
      }
    }
  });

  criterion(7, "closed-form crossover time on Q_1", [](Outcome& o) {
    const double h = 0.5;
    for (double beta : {1.0, 5.0, 20.0}) {
      const auto p = make_params(1, h, beta, true);
      const auto sol = exact_expected_hitting(p);
      const double exact = std::exp(beta * (1 - h)) + 1;
      o.require(std::fabs(sol.expected / exact - 1) <= 1e-12, "E[tau] at beta=" + std::to_string(beta));
      const double gamma = gamma_star_brute(1, h).value;
      const double excess = std::exp(-beta * gamma) * sol.expected - 1;
      o.require(std::fabs(excess / std::exp(-beta * (1 - h)) - 1) <= 1e-10, "scaled excess at beta=" + std::to_string(beta));
    }
    const auto r = critical_report(FiltrationIndex::build(1, h));
    o.require(r.k_variational == Rational(1), "K = 1");
    o.note << " collapsed K evaluates to " << r.closed_forms.k_collapsed;
  });

  criterion(8, "scaled crossover time at (3, 0.5001) decreases toward K over beta = 4, 6, 8", [](Outcome& o) {
    const auto t0 = Clock::now();
    const double k = boost::rational_cast<double>(critical_report(FiltrationIndex::build(3, 0.5001)).k_variational);
    const auto rows = asymptotic_report(3, 0.5001, {4.0, 6.0, 8.0}, k);
    o.note << " ratios to K:";
    for (const auto& r : rows) o.note << " " << std::setprecision(6) << r.ratio;
    o.require(rows[0].scaled > rows[1].scaled && rows[1].scaled > rows[2].scaled, "not strictly decreasing");
    o.require(std::fabs(rows[2].ratio - 1) <= 0.1, "beta = 8 not within 10% of K");
    o.require(rows[2].precision == Precision::extended, "extended precision not engaged at beta = 8");
    for (const auto& r : rows) o.require(r.residual < 1e-8, "residual at beta=" + std::to_string(r.beta));
    o.require(seconds_since(t0) <= 60, "runtime over 1 minute");
  });

  criterion(9, "Monte Carlo agrees with the exact solves", [](Outcome& o) {
    const auto p3 = make_params(3, 0.5001, 2.0);
    const auto s3 = simulate_hitting(p3, 20240601, 10000, 100000000);
    const double e3 = exact_expected_hitting(p3).expected;
    const double z3 = (s3.mean - e3) / s3.std_error;
    o.require(s3.truncated == 0 && std::fabs(z3) <= 3, "n=3 off by " + std::to_string(z3) + " SE");

    const auto p1 = make_params(1, 0.5, 2.0, true);
    const auto s1 = simulate_hitting(p1, 20240602, 10000, 100000000);
    const double z1 = (s1.mean - (std::exp(1.0) + 1)) / s1.std_error;
    o.require(s1.truncated == 0 && std::fabs(z1) <= 3, "n=1 off by " + std::to_string(z1) + " SE");
    o.note << " z = " << std::setprecision(3) << z3 << " (n=3), " << z1 << " (n=1)";
  });

  criterion(10, "gate through C* and first entrance distribution at (3, 0.5001)", [](Outcome& o) {
    const double h = 0.5001;
    const auto c_star = c_star_enumerate(3, h);
    double prev = -1;
    o.note << " gate:";
    for (double beta : {2.0, 4.0, 6.0}) {
      const auto g = gate_probability(make_params(3, h, beta), c_star);
      o.note << " " << std::setprecision(8) << g.value;
      o.require(g.value > prev, "gate not increasing at beta=" + std::to_string(beta));
      prev = g.value;
    }
    auto deviation = [&](double beta) {
      const auto d = first_hit_distribution(make_params(3, h, beta), c_star);
      double dev = 0;
      for (double x : d.probs) dev = std::max(dev, std::fabs(x - 1.0 / static_cast<double>(c_star.size())));
      return dev;
    };
    const double d2 = deviation(2.0), d4 = deviation(4.0);
    o.note << "; uniform deviation " << std::setprecision(3) << d2 << " (beta 2), " << d4 << " (beta 4)";
    o.require(d4 < d2, "deviation at beta 4 not below beta 2");

    const auto p = make_params(3, h, 2.0);
    const auto stats = simulate_first_hit(p, c_star, 20240603, 100000, 100000000);
    const auto exact = first_hit_distribution(p, c_star);
    const std::vector<std::uint64_t> counts(stats.tallies.begin(), stats.tallies.end() - 1);
    const auto chi = chi_square_test(counts, exact.probs, 0.001);
    o.note << "; chi-square " << std::setprecision(4) << chi.statistic << " (critical " << chi.critical << ")";
    o.require(!chi.rejected, "chi-square rejected");
  });

  criterion(11, "repeated runs produce identical output", [](Outcome& o) {
    for (const char* args : {"analyze --n 4 --h 0.5001", "verify --n 3 --h 0.5001",
                             "solve --n 3 --h 0.5001 --beta-list 2,8", "solve --n 2 --h 0.7 --beta 3 --format csv",
                             "simulate --n 3 --h 0.5001 --beta 2 --replicas 2000 --seed 9 --first-hit",
                             "simulate --n 6 --h 1.37 --beta 0.5 --replicas 200 --format csv"}) {
      int c1 = -1, c2 = -1;
      const std::string a = run_cli(args, c1);
      const std::string b = run_cli(args, c2);
      o.require(c1 == 0 && c2 == 0 && !a.empty() && a == b, std::string("'") + args + "'");
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
