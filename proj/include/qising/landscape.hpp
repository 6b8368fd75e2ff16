#pragma once

// Energy landscape of the Glauber chain on Ω = P(V_n): communication heights
// Φ(ξ,ζ) from a sub-level-set filtration, the barrier Γ* by brute force over
// g, by closed form and by bottleneck search, stability levels, the metastable
// set, and explicit stability certificates built from translated reference paths.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qising/energy.hpp"
#include "qising/hypercube.hpp"

namespace qising {

/// States are one-word masks (n <= 4); every query is exact over EnergyValue.
class FiltrationIndex {
 public:
  /// n <= 4.
  static FiltrationIndex build(int n, double h);

  int dim() const { return n_; }
  double field() const { return h_; }
  std::uint64_t state_count() const { return energy_.size(); }
  std::uint64_t minus_state() const { return 0; }
  std::uint64_t plus_state() const { return energy_.size() - 1; }

  const EnergyValue& energy(std::uint64_t state) const { return energy_.at(state); }
  /// States in sweep order: increasing energy, ties by mask.
  std::span<const std::uint32_t> order() const { return order_; }

  /// Φ(a,b) as an energy level relative to ⊟.
  EnergyValue comm_height(std::uint64_t a, std::uint64_t b) const;
  EnergyValue comm_height(const Config& a, const Config& b) const;

  /// 𝒱_ξ = min_{H(ζ)<H(ξ)} Φ(ξ,ζ) - H(ξ); empty for ⊞.
  std::optional<EnergyValue> stability_level(std::uint64_t state) const;
  std::optional<EnergyValue> stability_level(const Config& s) const;

 private:
  std::uint64_t checked(std::uint64_t state) const;
  std::uint64_t checked(const Config& s) const;

  int n_ = 0;
  double h_ = 0;
  std::vector<EnergyValue> energy_;
  std::vector<std::uint32_t> order_;
  // union-by-rank forest without path compression; attach_[x] is the level at
  // which x stopped being a root
  std::vector<std::uint32_t> parent_;
  std::vector<EnergyValue> attach_;
  std::vector<std::optional<EnergyValue>> stability_;
};

struct GammaBrute {
  std::uint64_t k_star = 0;           // least argmax
  std::vector<std::uint64_t> argmax;  // every k attaining the maximum
  EnergyValue level;                  // g(k_star) as an exact pair
  double value = 0;
};

/// max_k g(k) over k = 0..2^n (n <= 26), streamed.
GammaBrute gamma_star_brute(int n, double h);

struct BarrierProfile {
  int n = 0;
  double h = 0;
  int delta = 0;     // ⌈(n-h)/2⌉
  int epsilon = 0;   // 1 - (⌊n-h⌋ mod 2)
  std::uint64_t k_star = 0;
  double gamma_star = 0;     // pre-simplified closed form
  double gamma_collapsed = 0;  // fully collapsed closed-form constant
  bool delta_one = false;    // δ = 1: the sub-cube construction is empty
  bool large_h = false;      // ⌈n-h-1⌉ = 0 special case
};

/// Closed forms for k*, δ, ε and Γ*; requires 0 < h < n, n <= 60.
BarrierProfile gamma_star_closed(int n, double h);

/// Every k in [1, 2^n) with 2q(k) > n-h and 2q(k-1) < n-h (n <= 26).
std::vector<std::uint64_t> local_maxima_of_g(int n, double h);

/// Argmax of the stability level over Ω \ {⊞}.
std::vector<Config> metastable_set(const FiltrationIndex& index);

/// Level H(γ_{k*}) - H(⊟) of the reference-path maximum, as an exact pair.
EnergyValue critical_level(int n, double h);

/// States with H(σ) < H(γ_{k*}) and Φ(σ,⊟) = Φ(σ,⊞) = H(γ_{k*}).
std::vector<Config> wells_scan(const FiltrationIndex& index, const EnergyValue& level);

/// Path σ ∪ γ_i, i = 0..k⁻, along a translated reference path started at a
/// boundary pair (w ∈ σ, y ∉ σ), showing 𝒱_σ < Γ*.
struct StabilityCertificate {
  int n = 0;
  double h = 0;
  VertexId w = 0;
  VertexId y = 0;
  std::uint64_t k_minus = 0;      // min{i >= 1 : H(γ_i) <= H(⊟)}
  std::vector<VertexId> added;    // vertex of γ_i \ γ_{i-1}, i = 1..k⁻
  std::vector<EnergyValue> rise;  // H(σ ∪ γ_i) - H(σ), i = 0..k⁻
  EnergyValue bound;              // max rise
  EnergyValue gamma_star;         // Γ* as an exact pair
  bool certified = false;         // bound < Γ* and rise[k⁻] < 0
};

/// Requires σ ∉ {⊟, ⊞} and n <= 20.
StabilityCertificate stability_certificate(const Config& sigma, double h);

/// Recomputes every energy on the certificate path from scratch (n <= 14).
bool verify_certificate(const Config& sigma, const StabilityCertificate& cert);

}  // namespace qising
