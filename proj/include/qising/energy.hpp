#pragma once

// Ising Hamiltonian on Q_n with J = 1 and field h. Energies relative to ⊟ are
// carried as exact integer pairs (edge-boundary count, occupied count) so that
// landscape comparisons never depend on floating-point ties.

#include <compare>
#include <cstdint>
#include <vector>

#include "qising/hypercube.hpp"

namespace qising {

struct ModelParams {
  int n = 1;
  double h = 0.5;
  double beta = 0.0;
};

/// Exact energy e - h·s. As a level it is H(σ) - H(⊟) = |E(σ,σ̄)| - h|σ|; as a
/// difference both components may be negative.
struct EnergyValue {
  std::int64_t e = 0;
  std::int64_t s = 0;

  double value(double h) const { return static_cast<double>(e) - h * static_cast<double>(s); }

  friend bool operator==(const EnergyValue&, const EnergyValue&) = default;
  friend EnergyValue operator-(const EnergyValue& a, const EnergyValue& b) {
    return {a.e - b.e, a.s - b.s};
  }
  friend EnergyValue operator+(const EnergyValue& a, const EnergyValue& b) {
    return {a.e + b.e, a.s + b.s};
  }
};

/// Exact sign of a.value(h) - b.value(h): the fused multiply-add rounds once,
/// so the sign (and zero) of de - h·ds is exact for the double h.
int compare(const EnergyValue& a, const EnergyValue& b, double h);

inline bool less(const EnergyValue& a, const EnergyValue& b, double h) {
  return compare(a, b, h) < 0;
}
inline bool same_level(const EnergyValue& a, const EnergyValue& b, double h) {
  return compare(a, b, h) == 0;
}

/// Full Hamiltonian -(1/2)(|E_n| - 2|E(S,S̄)|) - (h/2)(|S| - |S̄|).
double hamiltonian(const Config& s, double h);

/// (|E(S,S̄)|, |S|).
EnergyValue energy_gap(const Config& s);

/// Change in (boundary, size) from flipping v: n - 2deg, +1 when adding;
/// 2deg - n, -1 when removing.
EnergyValue flip_delta(const Config& s, VertexId v);

/// g(k) = |E(Υ_k, Ῡ_k)| - h·k for k = 0..2^n, as exact pairs (n <= 26).
struct GProfile {
  int n = 0;
  double h = 0;
  std::vector<std::uint32_t> boundary;  // index k

  std::uint64_t size() const { return boundary.size(); }
  EnergyValue level(std::uint64_t k) const {
    return {static_cast<std::int64_t>(boundary[k]), static_cast<std::int64_t>(k)};
  }
  double operator[](std::uint64_t k) const { return level(k).value(h); }
};

GProfile g_profile(int n, double h);

double gibbs_log_weight(const Config& s, double h, double beta);

/// log Z over all 2^(2^n) configurations, max-shifted; n <= 4.
double log_partition_function(int n, double h, double beta);
double partition_function(int n, double h, double beta);

/// Gibbs probability of s; n <= 4.
double gibbs_probability(const Config& s, double h, double beta);

/// Scan of b·h against the integers for b = 1..2^n.
struct FieldReport {
  bool admissible = false;
  double margin = 0;        // min_b |b·h - round(b·h)|
  std::int64_t witness_a = 0;  // nearest a at the minimizing b
  std::int64_t witness_b = 0;
  double tol = 0;
};

double default_field_tol(int n);

/// Requires 0 < h < n and n <= 26.
FieldReport validate_field(int n, double h, double tol);
inline FieldReport validate_field(int n, double h) { return validate_field(n, h, default_field_tol(n)); }

/// Validated parameters. Throws ParameterError when h is outside (0, n), or
/// when h is inadmissible and allow_degenerate is false.
ModelParams make_params(int n, double h, double beta = 0.0, bool allow_degenerate = false);

}  // namespace qising
