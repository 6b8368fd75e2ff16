#pragma once

// Continuous-time Glauber dynamics with rates exp(-β[ΔH]₊): event-driven
// kinetic Monte Carlo, and exact absorbing-chain solves (hitting times,
// committors, gate and first-entrance probabilities) for n <= 4 in double
// precision with refinement or in quad precision.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include "qising/energy.hpp"
#include "qising/hypercube.hpp"

namespace qising {

using Extended = boost::multiprecision::float128;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// exp(-β·max(0, ΔH)) for flipping v in s.
double flip_rate(const Config& s, VertexId v, const ModelParams& p);

// ---------------------------------------------------------------------------
// Monte Carlo

struct KmcSample {
  double time = 0;
  std::uint64_t events = 0;
  int target = -1;  // index into targets; -1 when truncated
  bool truncated = false;
};

/// One trajectory from start until it enters a target after leaving start.
KmcSample kmc_run(const Config& start, const std::vector<Config>& targets, const ModelParams& p,
                  std::uint64_t seed, std::uint64_t max_events);

/// splitmix64(master + (index+1)·0x9E3779B97F4A7C15).
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index);

struct SimulationStats {
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  double mean = 0;       // over completed replicas
  double std_error = 0;  // sample stdev / sqrt(completed)
  std::uint64_t events = 0;
  std::uint64_t truncated = 0;
  std::vector<std::uint64_t> tallies;  // first target entered, per target
};

inline constexpr double kEventBudget = 1e10;

/// Independent replicas, run on all hardware threads and merged in replica
/// order. Throws BudgetError when replicas·exp(βΓ*) exceeds the budget.
SimulationStats run_replicas(const Config& start, const std::vector<Config>& targets, const ModelParams& p,
                             std::uint64_t seed, std::uint64_t replicas, std::uint64_t max_events,
                             double budget = kEventBudget);

/// Mean hitting time of ⊞ from ⊟.
SimulationStats simulate_hitting(const ModelParams& p, std::uint64_t seed, std::uint64_t replicas,
                                 std::uint64_t max_events, double budget = kEventBudget);

/// First entrance into C* ∪ {⊞} from ⊟; tallies are per element of c_star, then ⊞.
SimulationStats simulate_first_hit(const ModelParams& p, const std::vector<Config>& c_star, std::uint64_t seed,
                                   std::uint64_t replicas, std::uint64_t max_events, double budget = kEventBudget);

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 0;
  double critical = 0;  // upper quantile at the requested significance
  bool rejected = false;
};

/// Pearson test of counts against probabilities (normalized to the count total).
ChiSquare chi_square_test(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs,
                          double significance);

// ---------------------------------------------------------------------------
// Exact solves

enum class Precision { automatic, standard, extended };

Precision parse_precision(const std::string& s);
const char* to_string(Precision p);

/// Extended when exp(βΓ*) > 1e12.
Precision resolve_precision(Precision requested, const ModelParams& p);

struct ChainEdge {
  std::uint32_t to = 0;
  EnergyValue delta;       // H(to) - H(from)
  std::uint32_t count = 0;  // flips from a representative landing in `to`
};

/// Glauber chain on all states (n <= 3) or on automorphism orbits (n <= 4).
/// States are numbered by increasing |σ|, then by mask.
struct Chain {
  int n = 0;
  double h = 0;
  bool lumped = false;
  std::vector<std::uint32_t> index_of;  // mask -> state
  std::vector<std::uint64_t> rep;       // state -> representative mask
  std::vector<std::uint32_t> weight;    // configurations per state
  std::vector<std::vector<ChainEdge>> out;
  std::uint32_t minus = 0;
  std::uint32_t plus = 0;

  std::size_t size() const { return rep.size(); }
  std::uint32_t state_of(const Config& s) const { return index_of.at(s.mask()); }
};

Chain build_chain(int n, double h, bool lumped);

/// Transient block of -L (the generator) with unknowns ordered from ⊞ down.
template <class Scalar>
DenseMatrix<Scalar> transient_block(const Chain& chain, double beta, const std::vector<char>& absorbing,
                                    std::vector<std::uint32_t>& states);

struct HittingSolution {
  int n = 0;
  double h = 0;
  double beta = 0;
  Precision precision = Precision::standard;
  bool lumped = true;
  double expected = 0;        // E_⊟[τ_⊞]
  double expected_jumps = 0;  // mean number of flips before τ_⊞
  double residual = 0;        // componentwise backward error, worst over solves
  std::vector<double> times;  // per chain state; 0 at ⊞
  std::vector<std::uint32_t> index_of;

  double at(const Config& s) const { return times.at(index_of.at(s.mask())); }
};

inline constexpr double kResidualBound = 1e-8;

/// Throws PrecisionError when the backward error exceeds tol.
HittingSolution exact_expected_hitting(const ModelParams& p, Precision mode = Precision::automatic,
                                       bool lumped = true, double tol = kResidualBound);

struct CommittorSolution {
  Precision precision = Precision::standard;
  double residual = 0;
  double escape = 0;          // P_⊟(τ_⊞ < τ_⊟), ⊟ vacated first
  std::vector<double> values;  // q per chain state, q(⊟) = 0, q(⊞) = 1
  std::vector<std::uint32_t> index_of;

  double at(const Config& s) const { return values.at(index_of.at(s.mask())); }
};

CommittorSolution committor(const ModelParams& p, Precision mode = Precision::automatic, bool lumped = true,
                            double tol = kResidualBound);

struct GateProbability {
  double value = 0;  // P_⊟(τ_C* < τ_⊞ | τ_⊞ < τ_⊟)
  double residual = 0;
  Precision precision = Precision::standard;
};

/// c_star must be a union of orbits (it is, for the critical set).
GateProbability gate_probability(const ModelParams& p, const std::vector<Config>& c_star,
                                 Precision mode = Precision::automatic, double tol = kResidualBound);

struct FirstHitDistribution {
  std::vector<double> probs;  // aligned with c_star, conditioned on reaching C* before ⊞
  double reach = 0;           // P_⊟(τ_C* < τ_⊞)
  bool by_symmetry = false;   // n = 4: total from the orbit chain, split evenly
  double residual = 0;
  Precision precision = Precision::standard;
};

FirstHitDistribution first_hit_distribution(const ModelParams& p, const std::vector<Config>& c_star,
                                            Precision mode = Precision::automatic, double tol = kResidualBound);

struct AsymptoticRow {
  double beta = 0;
  double expected = 0;
  double scaled = 0;  // e^{-βΓ*} E[τ]
  double ratio = 0;   // scaled / K
  double residual = 0;
  double jumps = 0;
  Precision precision = Precision::standard;
};

/// Rows over betas, with Γ* from the brute-force barrier and the supplied K.
std::vector<AsymptoticRow> asymptotic_report(int n, double h, const std::vector<double>& betas, double k,
                                             Precision mode = Precision::automatic);

}  // namespace qising
