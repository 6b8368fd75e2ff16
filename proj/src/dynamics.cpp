#include "qising/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <thread>
#include <unordered_map>

#include <boost/math/distributions/chi_squared.hpp>

#include "qising/errors.hpp"
#include "qising/isoperimetry.hpp"
#include "qising/landscape.hpp"

namespace qising {

namespace {

double barrier(int n, double h) {
  return n <= 26 ? gamma_star_brute(n, h).value : gamma_star_closed(n, h).gamma_star;
}

// exp(-β·max(0, ΔH)) with ΔH = (n - 2d) - h for an addition and its negative
// for a removal, d the number of occupied neighbours.
struct RateTable {
  std::vector<double> add, remove;
  RateTable(int n, double h, double beta) : add(n + 1), remove(n + 1) {
    for (int d = 0; d <= n; ++d) {
      const double up = static_cast<double>(n - 2 * d) - h;
      add[d] = std::exp(-beta * std::max(0.0, up));
      remove[d] = std::exp(-beta * std::max(0.0, -up));
    }
  }
};

// Complete binary tree of partial sums over the flip channels.
class RateTree {
 public:
  explicit RateTree(std::size_t leaves) : size_(std::bit_ceil(leaves)), sums_(2 * size_, 0.0) {}

  void set(std::size_t i, double rate) {
    i += size_;
    sums_[i] = rate;
    for (i >>= 1; i > 0; i >>= 1) sums_[i] = sums_[2 * i] + sums_[2 * i + 1];
  }
  double total() const { return sums_[1]; }
  std::size_t find(double u) const {
    std::size_t i = 1;
    while (i < size_) {
      const double left = sums_[2 * i];
      if (u < left || sums_[2 * i + 1] <= 0.0) {
        i = 2 * i;
      } else {
        u -= left;
        i = 2 * i + 1;
      }
    }
    return i - size_;
  }

 private:
  std::size_t size_;
  std::vector<double> sums_;
};

double unit_open(std::uint64_t x) { return static_cast<double>((x >> 11) + 1) * 0x1p-53; }
double unit_closed_open(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1p-53; }

}  // namespace

double flip_rate(const Config& s, VertexId v, const ModelParams& p) {
  const double dh = flip_delta(s, v).value(p.h);
  return std::exp(-p.beta * std::max(0.0, dh));
}

// ---------------------------------------------------------------------------
// Monte Carlo

KmcSample kmc_run(const Config& start, const std::vector<Config>& targets, const ModelParams& p,
                  std::uint64_t seed, std::uint64_t max_events) {
  if (targets.empty()) throw ParameterError("kmc_run needs at least one target");
  const int n = start.dim();
  if (p.n != n) throw ParameterError("kmc_run: start dimension differs from params");
  const VertexId count = static_cast<VertexId>(start.vertex_count());

  std::unordered_map<Config, int> index;
  std::vector<char> size_hit(count + 1, 0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].dim() != n) throw ParameterError("kmc_run: target dimension differs");
    index.emplace(targets[i], static_cast<int>(i));
    size_hit[targets[i].size()] = 1;
  }

  const RateTable rates(n, p.h, p.beta);
  Config cur = start;
  std::int64_t size = cur.size();
  std::vector<int> deg(count);
  RateTree tree(count);
  auto rate_of = [&](VertexId v) { return cur.contains(v) ? rates.remove[deg[v]] : rates.add[deg[v]]; };
  for (VertexId v = 0; v < count; ++v) deg[v] = degree_in(cur, v);
  for (VertexId v = 0; v < count; ++v) tree.set(v, rate_of(v));

  std::mt19937_64 rng(seed);
  KmcSample out;
  while (out.events < max_events) {
    const double total = tree.total();
    out.time += -std::log(unit_open(rng())) / total;
    const auto v = static_cast<VertexId>(tree.find(unit_closed_open(rng()) * total));
    const bool adding = !cur.contains(v);
    cur.toggle(v);
    size += adding ? 1 : -1;
    tree.set(v, rate_of(v));
    for (int i = 0; i < n; ++i) {
      const VertexId w = v ^ (VertexId{1} << i);
      deg[w] += adding ? 1 : -1;
      tree.set(w, rate_of(w));
    }
    ++out.events;
    if (size_hit[size]) {
      const auto it = index.find(cur);
      if (it != index.end()) {
        out.target = it->second;
        return out;
      }
    }
  }
  out.truncated = true;
  return out;
}

std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SimulationStats run_replicas(const Config& start, const std::vector<Config>& targets, const ModelParams& p,
                             std::uint64_t seed, std::uint64_t replicas, std::uint64_t max_events, double budget) {
  if (replicas == 0) throw ParameterError("replicas must be positive");
  const double estimate = static_cast<double>(replicas) * std::exp(p.beta * barrier(p.n, p.h));
  if (estimate > budget) {
    throw BudgetError("estimated " + std::to_string(estimate) + " events exceeds the budget of " +
                      std::to_string(budget));
  }

  std::vector<KmcSample> samples(replicas);
  const unsigned threads = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, std::thread::hardware_concurrency()), replicas));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t i = t; i < replicas; i += threads)
          samples[i] = kmc_run(start, targets, p, replica_seed(seed, i), max_events);
      });
    }
  }

  SimulationStats s;
  s.replicas = replicas;
  s.seed = seed;
  s.tallies.assign(targets.size(), 0);
  long double sum = 0, sq = 0;
  std::uint64_t done = 0;
  for (const auto& x : samples) {
    s.events += x.events;
    if (x.truncated) {
      ++s.truncated;
      continue;
    }
    ++done;
    ++s.tallies[x.target];
    sum += x.time;
  }
  if (done > 0) {
    const long double mean = sum / done;
    for (const auto& x : samples)
      if (!x.truncated) sq += (x.time - mean) * (x.time - mean);
    s.mean = static_cast<double>(mean);
    s.std_error = done > 1 ? static_cast<double>(std::sqrt(sq / (done - 1)) / std::sqrt(static_cast<long double>(done)))
                           : 0.0;
  }
  return s;
}

SimulationStats simulate_hitting(const ModelParams& p, std::uint64_t seed, std::uint64_t replicas,
                                 std::uint64_t max_events, double budget) {
  return run_replicas(Config::empty(p.n), {Config::full(p.n)}, p, seed, replicas, max_events, budget);
}

SimulationStats simulate_first_hit(const ModelParams& p, const std::vector<Config>& c_star, std::uint64_t seed,
                                   std::uint64_t replicas, std::uint64_t max_events, double budget) {
  std::vector<Config> targets = c_star;
  targets.push_back(Config::full(p.n));
  return run_replicas(Config::empty(p.n), targets, p, seed, replicas, max_events, budget);
}

ChiSquare chi_square_test(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs,
                          double significance) {
  if (counts.size() != probs.size()) throw ParameterError("chi_square_test: size mismatch");
  double total = 0, mass = 0;
  for (auto c : counts) total += static_cast<double>(c);
  for (double q : probs) mass += q;
  ChiSquare out;
  int cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] <= 0) continue;
    const double expected = total * probs[i] / mass;
    const double d = static_cast<double>(counts[i]) - expected;
    out.statistic += d * d / expected;
    ++cells;
  }
  out.dof = cells - 1;
  if (out.dof < 1) throw ParameterError("chi_square_test needs at least two cells");
  const boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  out.critical = boost::math::quantile(boost::math::complement(dist, significance));
  out.rejected = out.statistic > out.critical;
  return out;
}

// ---------------------------------------------------------------------------
// Exact solves

Precision parse_precision(const std::string& s) {
  if (s == "auto") return Precision::automatic;
  if (s == "double") return Precision::standard;
  if (s == "extended") return Precision::extended;
  throw ParameterError("precision must be auto, double or extended");
}

const char* to_string(Precision p) {
  switch (p) {
    case Precision::automatic: return "auto";
    case Precision::standard: return "double";
    case Precision::extended: return "extended";
  }
  return "auto";
}

Precision resolve_precision(Precision requested, const ModelParams& p) {
  if (requested != Precision::automatic) return requested;
  return p.beta * barrier(p.n, p.h) > std::log(1e12) ? Precision::extended : Precision::standard;
}

Chain build_chain(int n, double h, bool lumped) {
  check_dim(n);
  if (lumped ? n > 4 : n > 3) throw CapabilityError(lumped ? "orbit chain requires n <= 4" : "full chain requires n <= 3");
  Chain c;
  c.n = n;
  c.h = h;
  c.lumped = lumped;
  const std::uint64_t states = std::uint64_t{1} << (1u << n);
  c.index_of.resize(states);
  if (lumped) {
    const OrbitPartition part = orbit_partition(n);
    c.index_of = part.orbit_of;
    c.rep = part.representative;
    c.weight = part.orbit_size;
  } else {
    std::vector<std::uint64_t> masks(states);
    for (std::uint64_t m = 0; m < states; ++m) masks[m] = m;
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
    c.rep = masks;
    c.weight.assign(states, 1);
    for (std::uint32_t i = 0; i < states; ++i) c.index_of[masks[i]] = i;
  }
  c.out.resize(c.rep.size());
  for (std::uint32_t i = 0; i < c.rep.size(); ++i) {
    const Config s = Config::from_mask(n, c.rep[i]);
    std::map<std::uint32_t, ChainEdge> edges;
    for (VertexId v = 0; v < (VertexId{1} << n); ++v) {
      const std::uint32_t j = c.index_of[c.rep[i] ^ (std::uint64_t{1} << v)];
      auto& e = edges[j];
      e.to = j;
      e.delta = flip_delta(s, v);
      ++e.count;
    }
    for (auto& [j, e] : edges) c.out[i].push_back(e);
  }
  c.minus = c.index_of[0];
  c.plus = c.index_of[states - 1];
  return c;
}

namespace {

template <class Scalar>
Scalar edge_rate(const ChainEdge& e, double h, double beta) {
  using std::exp;
  const Scalar dh = Scalar(e.delta.e) - Scalar(h) * Scalar(e.delta.s);
  const Scalar rate = dh > 0 ? Scalar(exp(-Scalar(beta) * dh)) : Scalar(1);
  return Scalar(e.count) * rate;
}

// Rates out of each transient row into a set of states.
template <class Scalar>
DenseMatrix<Scalar> rates_into(const Chain& chain, double beta, const std::vector<std::uint32_t>& rows,
                               const std::vector<std::vector<std::uint32_t>>& columns) {
  DenseMatrix<Scalar> b = DenseMatrix<Scalar>::Zero(static_cast<Eigen::Index>(rows.size()),
                                                    static_cast<Eigen::Index>(columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& e : chain.out[rows[r]]) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (std::find(columns[c].begin(), columns[c].end(), e.to) != columns[c].end())
          b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += edge_rate<Scalar>(e, chain.h, beta);
      }
    }
  }
  return b;
}

template <class Scalar>
DenseVector<Scalar> out_rates(const Chain& chain, double beta, const std::vector<std::uint32_t>& rows) {
  DenseVector<Scalar> r = DenseVector<Scalar>::Zero(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& e : chain.out[rows[i]]) r(static_cast<Eigen::Index>(i)) += edge_rate<Scalar>(e, chain.h, beta);
  return r;
}

// Worst componentwise backward error |b - Ax|_i / (|A||x| + |b|)_i.
double backward_error(const DenseMatrix<Extended>& a, const DenseMatrix<Extended>& x, const DenseMatrix<Extended>& b) {
  const DenseMatrix<Extended> r = b - a * x;
  const DenseMatrix<Extended> scale = a.cwiseAbs() * x.cwiseAbs() + b.cwiseAbs();
  Extended worst = 0;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      const Extended d = scale(i, j);
      const Extended e = d > 0 ? Extended(abs(r(i, j)) / d) : Extended(abs(r(i, j)));
      if (e > worst) worst = e;
    }
  }
  return static_cast<double>(worst);
}

struct Solved {
  DenseMatrix<Extended> x;
  double residual = 0;
};

Solved solve_checked(const Chain& chain, double beta, const std::vector<char>& absorbing,
                     const std::vector<std::uint32_t>& rows, const DenseMatrix<Extended>& b, Precision mode,
                     double tol) {
  std::vector<std::uint32_t> order;
  const DenseMatrix<Extended> a = transient_block<Extended>(chain, beta, absorbing, order);
  Solved out;
  if (mode == Precision::extended) {
    const Eigen::PartialPivLU<DenseMatrix<Extended>> lu(a);
    out.x = lu.solve(b);
    out.x += lu.solve(DenseMatrix<Extended>(b - a * out.x));
  } else {
    std::vector<std::uint32_t> order_d;
    const DenseMatrix<double> ad = transient_block<double>(chain, beta, absorbing, order_d);
    const Eigen::PartialPivLU<DenseMatrix<double>> lu(ad);
    out.x = lu.solve(DenseMatrix<double>(b.cast<double>())).cast<Extended>();
    // refinement against the quad-precision matrix
    for (int it = 0; it < 10; ++it) {
      const DenseMatrix<Extended> r = b - a * out.x;
      out.x += lu.solve(DenseMatrix<double>(r.cast<double>())).cast<Extended>();
      if (backward_error(a, out.x, b) < 1e-20) break;
    }
  }
  out.residual = backward_error(a, out.x, b);
  if (!(out.residual < tol)) {
    throw PrecisionError("backward error " + std::to_string(out.residual) + " exceeds " + std::to_string(tol) +
                         " (" + to_string(mode) + " precision, beta " + std::to_string(beta) + ", " +
                         std::to_string(rows.size()) + " unknowns)");
  }
  return out;
}

std::vector<std::uint32_t> transient_rows(const Chain& chain, const std::vector<char>& absorbing) {
  std::vector<std::uint32_t> rows;
  for (std::uint32_t s = static_cast<std::uint32_t>(chain.size()); s-- > 0;)
    if (!absorbing[s]) rows.push_back(s);
  return rows;
}

std::vector<std::uint32_t> states_of(const Chain& chain, const std::vector<Config>& sets) {
  std::vector<std::uint32_t> out;
  for (const auto& s : sets) out.push_back(chain.state_of(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::uint64_t covered = 0;
  for (auto s : out) covered += chain.weight[s];
  if (covered != sets.size()) throw ParameterError("set is not a union of chain states");
  return out;
}

}  // namespace

template <class Scalar>
DenseMatrix<Scalar> transient_block(const Chain& chain, double beta, const std::vector<char>& absorbing,
                                    std::vector<std::uint32_t>& states) {
  states = transient_rows(chain, absorbing);
  std::vector<std::int64_t> row_of(chain.size(), -1);
  for (std::size_t r = 0; r < states.size(); ++r) row_of[states[r]] = static_cast<std::int64_t>(r);
  const auto m = static_cast<Eigen::Index>(states.size());
  DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (const auto& e : chain.out[states[r]]) {
      const Scalar rate = edge_rate<Scalar>(e, chain.h, beta);
      a(r, r) += rate;
      if (row_of[e.to] >= 0) a(r, row_of[e.to]) -= rate;
    }
  }
  return a;
}

template DenseMatrix<double> transient_block<double>(const Chain&, double, const std::vector<char>&,
                                                     std::vector<std::uint32_t>&);
template DenseMatrix<Extended> transient_block<Extended>(const Chain&, double, const std::vector<char>&,
                                                         std::vector<std::uint32_t>&);

HittingSolution exact_expected_hitting(const ModelParams& p, Precision mode, bool lumped, double tol) {
  const Chain chain = build_chain(p.n, p.h, lumped);
  HittingSolution out;
  out.n = p.n;
  out.h = p.h;
  out.beta = p.beta;
  out.precision = resolve_precision(mode, p);
  out.lumped = lumped;

  std::vector<char> absorbing(chain.size(), 0);
  absorbing[chain.plus] = 1;
  const auto rows = transient_rows(chain, absorbing);
  DenseMatrix<Extended> b(static_cast<Eigen::Index>(rows.size()), 2);
  b.col(0).setOnes();
  b.col(1) = out_rates<Extended>(chain, p.beta, rows);
  const Solved s = solve_checked(chain, p.beta, absorbing, rows, b, out.precision, tol);

  out.residual = s.residual;
  out.times.assign(chain.size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) out.times[rows[r]] = static_cast<double>(s.x(static_cast<Eigen::Index>(r), 0));
  const auto minus_row = static_cast<Eigen::Index>(std::find(rows.begin(), rows.end(), chain.minus) - rows.begin());
  out.expected = static_cast<double>(s.x(minus_row, 0));
  out.expected_jumps = static_cast<double>(s.x(minus_row, 1));
  out.index_of = chain.index_of;
  return out;
}

namespace {

struct CommittorFull {
  std::vector<Extended> q;  // per chain state
  double residual = 0;
};

CommittorFull committor_values(const Chain& chain, double beta, Precision mode, double tol) {
  std::vector<char> absorbing(chain.size(), 0);
  absorbing[chain.minus] = 1;
  absorbing[chain.plus] = 1;
  const auto rows = transient_rows(chain, absorbing);
  CommittorFull out;
  out.q.assign(chain.size(), Extended(0));
  out.q[chain.plus] = 1;
  if (rows.empty()) return out;
  const DenseMatrix<Extended> b = rates_into<Extended>(chain, beta, rows, {{chain.plus}});
  const Solved s = solve_checked(chain, beta, absorbing, rows, b, mode, tol);
  out.residual = s.residual;
  for (std::size_t r = 0; r < rows.size(); ++r) out.q[rows[r]] = s.x(static_cast<Eigen::Index>(r), 0);
  return out;
}

// Σ_ξ p(⊟ → ξ) f(ξ): the first step out of ⊟.
Extended step_from_minus(const Chain& chain, double beta, const std::vector<Extended>& f) {
  Extended total = 0, acc = 0;
  for (const auto& e : chain.out[chain.minus]) {
    const Extended r = edge_rate<Extended>(e, chain.h, beta);
    total += r;
    acc += r * f[e.to];
  }
  return acc / total;
}

}  // namespace

CommittorSolution committor(const ModelParams& p, Precision mode, bool lumped, double tol) {
  const Chain chain = build_chain(p.n, p.h, lumped);
  CommittorSolution out;
  out.precision = resolve_precision(mode, p);
  const CommittorFull c = committor_values(chain, p.beta, out.precision, tol);
  out.residual = c.residual;
  out.escape = static_cast<double>(step_from_minus(chain, p.beta, c.q));
  for (const auto& v : c.q) out.values.push_back(static_cast<double>(v));
  out.index_of = chain.index_of;
  return out;
}

GateProbability gate_probability(const ModelParams& p, const std::vector<Config>& c_star, Precision mode,
                                 double tol) {
  const Chain chain = build_chain(p.n, p.h, true);
  GateProbability out;
  out.precision = resolve_precision(mode, p);
  const CommittorFull c = committor_values(chain, p.beta, out.precision, tol);
  const auto crit = states_of(chain, c_star);

  // u = P(reach C* before ⊟, ⊞, then reach ⊞ before ⊟): harmonic off C* ∪ {⊟, ⊞}
  std::vector<char> absorbing(chain.size(), 0);
  absorbing[chain.minus] = 1;
  absorbing[chain.plus] = 1;
  for (auto s : crit) absorbing[s] = 1;
  std::vector<Extended> u(chain.size(), Extended(0));
  for (auto s : crit) u[s] = c.q[s];
  const auto rows = transient_rows(chain, absorbing);
  double residual = c.residual;
  if (!rows.empty()) {
    DenseMatrix<Extended> b = DenseMatrix<Extended>::Zero(static_cast<Eigen::Index>(rows.size()), 1);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& e : chain.out[rows[r]])
        if (std::binary_search(crit.begin(), crit.end(), e.to))
          b(static_cast<Eigen::Index>(r), 0) += edge_rate<Extended>(e, chain.h, p.beta) * c.q[e.to];
    const Solved s = solve_checked(chain, p.beta, absorbing, rows, b, out.precision, tol);
    residual = std::max(residual, s.residual);
    for (std::size_t r = 0; r < rows.size(); ++r) u[rows[r]] = s.x(static_cast<Eigen::Index>(r), 0);
  }
  out.residual = residual;
  out.value = static_cast<double>(step_from_minus(chain, p.beta, u) / step_from_minus(chain, p.beta, c.q));
  return out;
}

FirstHitDistribution first_hit_distribution(const ModelParams& p, const std::vector<Config>& c_star, Precision mode,
                                            double tol) {
  if (c_star.empty()) throw ParameterError("first_hit_distribution needs a nonempty set");
  const bool lumped = p.n > 3;
  const Chain chain = build_chain(p.n, p.h, lumped);
  FirstHitDistribution out;
  out.precision = resolve_precision(mode, p);
  out.by_symmetry = lumped;
  const auto crit = states_of(chain, c_star);

  std::vector<char> absorbing(chain.size(), 0);
  absorbing[chain.plus] = 1;
  for (auto s : crit) absorbing[s] = 1;
  if (absorbing[chain.minus]) throw ParameterError("first_hit_distribution: ⊟ lies in the target set");
  const auto rows = transient_rows(chain, absorbing);
  std::vector<std::vector<std::uint32_t>> columns;
  for (auto s : crit) columns.push_back({s});
  const DenseMatrix<Extended> b = rates_into<Extended>(chain, p.beta, rows, columns);
  const Solved s = solve_checked(chain, p.beta, absorbing, rows, b, out.precision, tol);
  out.residual = s.residual;

  const auto minus_row = static_cast<Eigen::Index>(std::find(rows.begin(), rows.end(), chain.minus) - rows.begin());
  Extended reach = 0;
  for (Eigen::Index c = 0; c < s.x.cols(); ++c) reach += s.x(minus_row, c);
  out.reach = static_cast<double>(reach);
  out.probs.resize(c_star.size());
  for (std::size_t i = 0; i < c_star.size(); ++i) {
    const auto state = chain.state_of(c_star[i]);
    const auto col = static_cast<Eigen::Index>(std::lower_bound(crit.begin(), crit.end(), state) - crit.begin());
    // an orbit's mass is shared evenly by its members
    out.probs[i] = static_cast<double>(s.x(minus_row, col) / reach / chain.weight[state]);
  }
  return out;
}

std::vector<AsymptoticRow> asymptotic_report(int n, double h, const std::vector<double>& betas, double k,
                                             Precision mode) {
  const EnergyValue gamma = gamma_star_brute(n, h).level;
  std::vector<AsymptoticRow> rows;
  for (double beta : betas) {
    const ModelParams p{n, h, beta};
    const HittingSolution s = exact_expected_hitting(p, mode);
    AsymptoticRow row;
    row.beta = beta;
    row.expected = s.expected;
    const Extended scale = exp(-Extended(beta) * (Extended(gamma.e) - Extended(h) * Extended(gamma.s)));
    row.scaled = static_cast<double>(scale * Extended(s.expected));
    row.ratio = row.scaled / k;
    row.residual = s.residual;
    row.jumps = s.expected_jumps;
    row.precision = s.precision;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qising
