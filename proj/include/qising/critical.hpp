#pragma once

// Critical configurations C*, the protocritical set P* on the ⊟ side and the
// downhill set B* on the ⊞ side, neighbour counts N±, hypothesis H2 and the
// prefactor K from the simplified capacity formula. Closed-form counts are
// evaluated next to the enumeration but never trusted over it.

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "qising/energy.hpp"
#include "qising/hypercube.hpp"
#include "qising/landscape.hpp"

namespace qising {

using Rational = boost::rational<std::int64_t>;

/// Orbit of Υ_{k*} under Aut(Q_n), sorted; n <= 5.
std::vector<Config> c_star_enumerate(int n, double h);

/// {σ : |σ| = k*, boundary minimal} by exhaustive search; n <= 4.
std::vector<Config> c_star_brute(int n, double h);

struct PStarBStar {
  std::vector<Config> p_star;
  std::vector<Config> b_star;
};

/// Definitional scan over the neighbours of C*.
PStarBStar p_star_b_star(const FiltrationIndex& index, const std::vector<Config>& c_star);

struct NeighborCounts {
  int minus = 0;
  int plus = 0;
  friend bool operator==(const NeighborCounts&, const NeighborCounts&) = default;
};

/// Adjacency counts of σ into P* and B*. σ must be in C*.
NeighborCounts neighbor_counts(const Config& sigma, const std::vector<Config>& c_star,
                               const PStarBStar& sets);

/// Same counts from flip signs alone: downhill removals and downhill additions.
NeighborCounts neighbor_counts_by_flips(const Config& sigma, double h);

struct ClosedFormCounts {
  std::uint64_t enumerated = 0;
  std::uint64_t stepwise = 0;     // sub-cube-by-sub-cube construction product
  double collapsed = 0;           // n!2^(n-4) / ((n-⌈n-h-2⌉-1)! ⌈n-h-2δ+2⌉)
  double k_collapsed = 0;         // ⌈h⌉! / (n!2^(n-4)(3-ε))
  double k_unit_minus = 0;        // (1+N⁺)/(N⁺|C*|) with N⁻ = 1, N⁺ = ⌈n-h-2δ+2⌉
  bool stepwise_match = false;
  bool collapsed_match = false;
  bool k_collapsed_match = false;
  bool k_unit_minus_match = false;
};

/// Closed-form counts beside enumerated |C*| and the measured K.
ClosedFormCounts closed_form_counts(int n, double h, std::uint64_t enumerated, double k_measured);

struct CriticalReport {
  int n = 0;
  double h = 0;
  std::uint64_t k_star = 0;
  EnergyValue level;  // H(γ_{k*}) - H(⊟)
  std::vector<Config> c_star;
  std::vector<Config> p_star;
  std::vector<Config> b_star;
  std::vector<int> n_minus;  // per element of c_star
  std::vector<int> n_plus;
  bool flip_route_agrees = false;
  bool c_star_non_adjacent = false;
  bool wells_empty = false;
  bool h2_holds = false;
  Rational k_variational{0};
  ClosedFormCounts closed_forms;
};

/// Full report from the filtration; n <= 4.
CriticalReport critical_report(const FiltrationIndex& index);

/// N⁻ and N⁺ constant across C*.
bool h2_check(const CriticalReport& report);

/// 1/K = Σ_{σ∈C*} N⁻N⁺/(N⁻+N⁺). Throws InvariantError when the wells scan was
/// nonempty or two elements of C* are adjacent.
Rational prefactor_variational(const CriticalReport& report);

/// No two elements at symmetric-difference distance 1.
bool pairwise_non_adjacent(const std::vector<Config>& sets);

enum class StateClass { minus_side, plus_side, critical, other };

const char* to_string(StateClass c);

/// S_⊟ = {Φ(ξ,⊟) < L}, S_⊞ = {Φ(ξ,⊞) < L}, L = H(γ_{k*}); c_star sorted.
StateClass classify_state(const FiltrationIndex& index, const EnergyValue& level,
                          const std::vector<Config>& c_star, const Config& xi);

/// States classified "other" that still have Φ(ξ,⊟) <= L.
std::vector<Config> stray_states(const FiltrationIndex& index, const EnergyValue& level,
                                 const std::vector<Config>& c_star);

struct ConditionCheck {
  bool adjacency = false;     // every ξ ∈ P* touches C*
  bool minus_side = false;    // Φ(ξ,⊟) < Φ(ξ,⊞) on P*
  bool path_to_plus = false;  // each C* element reaches ⊞ below Γ*, avoiding the ⊟ side
};

/// Direct path search over the state graph.
ConditionCheck check_conditions(const FiltrationIndex& index, const CriticalReport& report);

}  // namespace qising
