#pragma once

// Edge-isoperimetry on Q_n: binary digit sums, the initial-segment minimizers
// Υ_k = {v : v < k}, good-set and well-containment recognition, an exhaustive
// minimizer oracle for small n, and the reference path Υ_0, Υ_1, ..., Υ_{2^n}.

#include <cstdint>
#include <vector>

#include "qising/hypercube.hpp"

namespace qising {

/// Binary digit sum of i.
inline int q(std::uint64_t i) { return std::popcount(i); }

/// Σ_{i=1}^{m} q(i), counted bit position by bit position.
std::int64_t qsum(std::uint64_t m);

/// r·2^(r-1); r <= 57.
std::int64_t qsum_closed(int r);

/// Prefix sums of q up to a bound, for repeated lookups.
class QTable {
 public:
  explicit QTable(std::uint64_t bound);
  /// Σ_{i=1}^{m} q(i), m <= bound.
  std::int64_t prefix(std::uint64_t m) const { return sums_.at(m); }
  std::uint64_t bound() const { return sums_.size() - 1; }

 private:
  std::vector<std::int64_t> sums_;
};

/// Checks the digit-sum increment identity for b = a + 2^(j-1) by summing
/// q over [a, b) directly. Requires 1 <= j < n-1, a < 2^n, bit j-1 of a set
/// and bit j clear.
bool abdiff_check(std::uint64_t a, int j, int n);

/// Υ_k: the first k vertices in integer order.
Config upsilon(int n, std::uint64_t k);

/// |E(Υ_k, Ῡ_k)| = nk - 2 Σ_{i=1}^{k-1} q(i).
std::int64_t minimal_boundary(int n, std::uint64_t k);

/// Recursive good-set test: a singleton, or a set of size in (2^r, 2^(r+1)]
/// inside an (r+1)-cube that splits into a full r-cube plus a good remainder.
bool is_good(const Config& s);

/// True when a set of size in (2^r, 2^(r+1)] lies in some (r+1)-sub-cube.
bool is_well_contained(const Config& s);

struct OrbitEntry {
  Config canonical;
  std::uint64_t size = 0;
};

struct MinimizerCatalog {
  int n = 0;
  std::uint64_t k = 0;
  std::int64_t minimum = 0;
  std::vector<Config> minimizers;  // sorted
  std::vector<OrbitEntry> orbits;  // deduplicated by canonical form
};

/// Exhaustive search over all k-subsets of Q_n; n <= 4.
MinimizerCatalog brute_min_boundary(int n, std::uint64_t k);

/// The path γ_k = Υ_k from ⊟ to ⊞, generated lazily (n <= 30).
class ReferencePath {
 public:
  explicit ReferencePath(int n);
  int dim() const { return n_; }
  std::uint64_t length() const { return (std::uint64_t{1} << n_) + 1; }
  Config at(std::uint64_t k) const { return upsilon(n_, k); }
  /// Vertex added on the step γ_{k-1} -> γ_k.
  VertexId added(std::uint64_t k) const { return static_cast<VertexId>(k - 1); }

 private:
  int n_;
};

/// Materialized reference path; n <= 4.
std::vector<Config> reference_path(int n);

/// An automorphism image φ(γ) of the reference path with γ_1 = {y}, γ_2 = {w, y}.
class TranslatedPath {
 public:
  TranslatedPath(int n, VertexId w, VertexId y);
  int dim() const { return n_; }
  std::uint64_t length() const { return (std::uint64_t{1} << n_) + 1; }
  const Automorphism& map() const { return phi_; }
  VertexId added(std::uint64_t k) const { return phi_(static_cast<VertexId>(k - 1)); }
  Config at(std::uint64_t k) const;

 private:
  int n_;
  Automorphism phi_;
};

/// Materialized translated path; n <= 4.
std::vector<Config> translated_reference_path(int n, VertexId w, VertexId y);

}  // namespace qising
