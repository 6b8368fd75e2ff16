#include "qising/critical.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "qising/errors.hpp"
#include "qising/isoperimetry.hpp"

namespace qising {

namespace {

bool member(const std::vector<Config>& sorted, const Config& s) {
  return std::binary_search(sorted.begin(), sorted.end(), s);
}

double factorial(int m) { return std::tgamma(static_cast<double>(m) + 1.0); }

std::uint64_t binom(int a, int b) {
  std::uint64_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
  return r;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

std::vector<Config> c_star_enumerate(int n, double h) {
  check_dim(n);
  if (n > 5) throw CapabilityError("c_star_enumerate requires n <= 5");
  const auto k = gamma_star_brute(n, h).k_star;
  return orbit(upsilon(n, k));
}

std::vector<Config> c_star_brute(int n, double h) {
  check_dim(n);
  if (n > 4) throw CapabilityError("c_star_brute requires n <= 4");
  return brute_min_boundary(n, gamma_star_brute(n, h).k_star).minimizers;
}

PStarBStar p_star_b_star(const FiltrationIndex& index, const std::vector<Config>& c_star) {
  const int n = index.dim();
  const double h = index.field();
  const EnergyValue level = critical_level(n, h);
  std::vector<std::uint64_t> p, b;
  for (const Config& c : c_star) {
    const std::uint64_t m = c.mask();
    for (unsigned v = 0; v < (1u << n); ++v) {
      const std::uint64_t xi = m ^ (std::uint64_t{1} << v);
      const EnergyValue to_minus = index.comm_height(xi, index.minus_state());
      const EnergyValue to_plus = index.comm_height(xi, index.plus_state());
      if (less(to_minus, to_plus, h)) p.push_back(xi);
      if (less(to_plus, level, h)) b.push_back(xi);
    }
  }
  auto finish = [n](std::vector<std::uint64_t>& masks) {
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<Config> out;
    for (auto m : masks) out.push_back(Config::from_mask(n, m));
    std::sort(out.begin(), out.end());
    return out;
  };
  return {finish(p), finish(b)};
}

NeighborCounts neighbor_counts(const Config& sigma, const std::vector<Config>& c_star,
                               const PStarBStar& sets) {
  if (!member(c_star, sigma)) throw ParameterError("neighbor_counts: configuration is not in C*");
  NeighborCounts out;
  for (VertexId v = 0; v < sigma.vertex_count(); ++v) {
    Config xi = sigma;
    xi.toggle(v);
    out.minus += member(sets.p_star, xi);
    out.plus += member(sets.b_star, xi);
  }
  return out;
}

NeighborCounts neighbor_counts_by_flips(const Config& sigma, double h) {
  const int n = sigma.dim();
  NeighborCounts out;
  for (VertexId v = 0; v < sigma.vertex_count(); ++v) {
    const int d = degree_in(sigma, v);
    if (sigma.contains(v)) {
      out.minus += static_cast<double>(2 * d - n) + h < 0.0;
    } else {
      out.plus += static_cast<double>(2 * d - n) + h > 0.0;
    }
  }
  return out;
}

ClosedFormCounts closed_form_counts(int n, double h, std::uint64_t enumerated, double k_measured) {
  const BarrierProfile bp = gamma_star_closed(n, h);
  const double x = n - h;
  const int delta = bp.delta;
  const int c = static_cast<int>(std::ceil(x - 2.0 * delta + 2.0));

  ClosedFormCounts out;
  out.enumerated = enumerated;
  if (delta == 1) {
    out.stepwise = std::uint64_t{1} << n;
  } else {
    std::vector<int> d(delta);
    for (int i = 1; i < delta; ++i) d[i] = static_cast<int>(std::ceil(x - 2.0 * i));
    std::uint64_t count = binom(n, d[1]) * (std::uint64_t{1} << (n - d[1])) * static_cast<std::uint64_t>(n - d[1]);
    for (int i = 1; i <= delta - 2; ++i) {
      const int gap = d[i] - d[i + 1];
      count *= binom(d[i], d[i + 1]) * (std::uint64_t{1} << gap) * static_cast<std::uint64_t>(gap);
    }
    count <<= d[delta - 1];
    out.stepwise = count;
  }
  const double scale = factorial(n) * std::ldexp(1.0, n - 4);
  const int inner = n - static_cast<int>(std::ceil(x - 2.0)) - 1;
  out.collapsed = scale / (factorial(inner) * c);
  out.k_collapsed = factorial(static_cast<int>(std::ceil(h))) / (scale * (3 - bp.epsilon));
  out.k_unit_minus = (1.0 + c) / (c * static_cast<double>(enumerated));
  out.stepwise_match = out.stepwise == enumerated;
  out.collapsed_match = close(out.collapsed, static_cast<double>(enumerated));
  out.k_collapsed_match = close(out.k_collapsed, k_measured);
  out.k_unit_minus_match = close(out.k_unit_minus, k_measured);
  return out;
}

bool pairwise_non_adjacent(const std::vector<Config>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (distance(sets[i], sets[j]) <= 1) return false;
  return true;
}

CriticalReport critical_report(const FiltrationIndex& index) {
  const int n = index.dim();
  const double h = index.field();
  CriticalReport r;
  r.n = n;
  r.h = h;
  r.k_star = gamma_star_brute(n, h).k_star;
  r.level = critical_level(n, h);
  r.c_star = c_star_enumerate(n, h);
  auto sets = p_star_b_star(index, r.c_star);
  r.flip_route_agrees = true;
  for (const Config& s : r.c_star) {
    const NeighborCounts nc = neighbor_counts(s, r.c_star, sets);
    r.n_minus.push_back(nc.minus);
    r.n_plus.push_back(nc.plus);
    if (!(neighbor_counts_by_flips(s, h) == nc)) r.flip_route_agrees = false;
  }
  r.p_star = std::move(sets.p_star);
  r.b_star = std::move(sets.b_star);
  r.c_star_non_adjacent = pairwise_non_adjacent(r.c_star);
  r.wells_empty = wells_scan(index, r.level).empty();
  r.h2_holds = h2_check(r);
  r.k_variational = prefactor_variational(r);
  r.closed_forms = closed_form_counts(n, h, r.c_star.size(), boost::rational_cast<double>(r.k_variational));
  return r;
}

bool h2_check(const CriticalReport& report) {
  auto constant = [](const std::vector<int>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
  };
  return constant(report.n_minus) && constant(report.n_plus);
}

Rational prefactor_variational(const CriticalReport& report) {
  if (!report.wells_empty) throw InvariantError("wells scan is nonempty; simplified capacity formula does not apply");
  if (!report.c_star_non_adjacent) throw InvariantError("two critical configurations are adjacent");
  Rational inv{0};
  for (std::size_t i = 0; i < report.c_star.size(); ++i) {
    const std::int64_t a = report.n_minus.at(i);
    const std::int64_t b = report.n_plus.at(i);
    if (a + b == 0) throw InvariantError("critical configuration without downhill neighbours");
    inv += Rational(a * b, a + b);
  }
  if (inv.numerator() == 0) throw InvariantError("capacity sum vanishes");
  return Rational(inv.denominator(), inv.numerator());
}

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::minus_side: return "S_minus";
    case StateClass::plus_side: return "S_plus";
    case StateClass::critical: return "C_star";
    case StateClass::other: return "other";
  }
  return "other";
}

StateClass classify_state(const FiltrationIndex& index, const EnergyValue& level,
                          const std::vector<Config>& c_star, const Config& xi) {
  const double h = index.field();
  if (less(index.comm_height(xi, Config::empty(index.dim())), level, h)) return StateClass::minus_side;
  if (less(index.comm_height(xi, Config::full(index.dim())), level, h)) return StateClass::plus_side;
  if (member(c_star, xi)) return StateClass::critical;
  return StateClass::other;
}

std::vector<Config> stray_states(const FiltrationIndex& index, const EnergyValue& level,
                                 const std::vector<Config>& c_star) {
  std::vector<Config> out;
  const double h = index.field();
  for (std::uint64_t s = 0; s < index.state_count(); ++s) {
    const Config xi = Config::from_mask(index.dim(), s);
    if (classify_state(index, level, c_star, xi) != StateClass::other) continue;
    if (compare(index.comm_height(s, index.minus_state()), level, h) <= 0) out.push_back(xi);
  }
  return out;
}

ConditionCheck check_conditions(const FiltrationIndex& index, const CriticalReport& report) {
  const double h = index.field();
  const int n = index.dim();
  ConditionCheck out;

  out.adjacency = std::all_of(report.p_star.begin(), report.p_star.end(), [&](const Config& xi) {
    return std::any_of(report.c_star.begin(), report.c_star.end(),
                       [&](const Config& c) { return distance(xi, c) == 1; });
  });
  out.minus_side = std::all_of(report.p_star.begin(), report.p_star.end(), [&](const Config& xi) {
    return less(index.comm_height(xi, Config::empty(n)), index.comm_height(xi, Config::full(n)), h);
  });

  // Allowed states: at most Γ* and not on the ⊟ side.
  std::vector<char> allowed(index.state_count());
  for (std::uint64_t s = 0; s < index.state_count(); ++s) {
    const bool low = compare(index.energy(s), report.level, h) <= 0;
    const bool minus = less(index.comm_height(s, index.minus_state()), index.comm_height(s, index.plus_state()), h);
    allowed[s] = low && !minus;
  }
  // Backward search from ⊞ through allowed states.
  std::vector<char> reach(index.state_count(), 0);
  std::deque<std::uint64_t> queue;
  if (allowed[index.plus_state()]) {
    reach[index.plus_state()] = 1;
    queue.push_back(index.plus_state());
  }
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (unsigned v = 0; v < (1u << n); ++v) {
      const auto t = s ^ (std::uint64_t{1} << v);
      if (allowed[t] && !reach[t]) {
        reach[t] = 1;
        queue.push_back(t);
      }
    }
  }
  out.path_to_plus = std::all_of(report.c_star.begin(), report.c_star.end(),
                                 [&](const Config& c) { return reach[c.mask()] != 0; });
  return out;
}

}  // namespace qising
