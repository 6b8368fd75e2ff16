#pragma once

// Vertex and edge arithmetic on the n-cube Q_n, spin configurations as vertex
// subsets, sub-cubes, and the automorphism group (coordinate permutations
// composed with coordinate flips).
//
// Vertex v encodes (v_1, ..., v_n) with v_i stored in bit i-1, so the first k
// vertices in integer order form the minimal-boundary sets.

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qising {

using VertexId = std::uint32_t;

inline constexpr int kMaxDim = 30;
/// Largest n whose configurations fit in one 64-bit word (2^6 vertices).
inline constexpr int kMaxMaskDim = 6;

void check_dim(int n);

/// The n vertices adjacent to v, ordered by flipped coordinate.
std::vector<VertexId> neighbors(VertexId v, int n);

inline bool adjacent(VertexId v, VertexId w) { return std::has_single_bit(v ^ w); }

/// A spin configuration: the set of +1 vertices of Q_n, as a bit-vector of
/// length 2^n. Bits beyond 2^n in the last word are always zero.
class Config {
 public:
  Config() = default;
  explicit Config(int n);

  static Config empty(int n) { return Config(n); }
  static Config full(int n);
  static Config from_vertices(int n, std::span<const VertexId> vs);
  static Config from_vertices(int n, std::initializer_list<VertexId> vs);
  /// n <= 6; bit v of mask is vertex v.
  static Config from_mask(int n, std::uint64_t mask);

  int dim() const { return n_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << n_; }

  bool contains(VertexId v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void insert(VertexId v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(VertexId v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void toggle(VertexId v) { words_[v >> 6] ^= std::uint64_t{1} << (v & 63); }

  std::int64_t size() const;
  bool is_empty() const { return size() == 0; }
  bool is_full() const { return static_cast<std::uint64_t>(size()) == vertex_count(); }

  std::vector<VertexId> vertices() const;
  /// n <= 6 only.
  std::uint64_t mask() const;
  std::span<const std::uint64_t> words() const { return words_; }

  Config complement() const;
  Config& operator|=(const Config& o);
  Config& operator&=(const Config& o);
  Config& operator^=(const Config& o);

  friend bool operator==(const Config& a, const Config& b) = default;
  // Numeric order of the bit-vector read as an integer (vertex 2^n-1 most
  // significant). Configs of different dimension order by dimension first.
  friend std::strong_ordering operator<=>(const Config& a, const Config& b);

  std::size_t hash() const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline Config operator|(Config a, const Config& b) { return a |= b; }
inline Config operator&(Config a, const Config& b) { return a &= b; }
inline Config operator^(Config a, const Config& b) { return a ^= b; }

/// Symmetric-difference size.
std::int64_t distance(const Config& a, const Config& b);

struct EdgeCounts {
  std::int64_t within = 0;    // |E(S,S)|
  std::int64_t boundary = 0;  // |E(S,S̄)|
  friend bool operator==(const EdgeCounts&, const EdgeCounts&) = default;
};

EdgeCounts edge_counts(const Config& s);

/// Number of neighbours of v inside s (v itself is never counted).
int degree_in(const Config& s, VertexId v);

/// An automorphism of Q_n: first permute coordinates (source coordinate i goes
/// to coordinate perm[i]), then XOR with mask.
class Automorphism {
 public:
  Automorphism() = default;
  Automorphism(std::vector<int> perm, VertexId mask);

  static Automorphism identity(int n);
  static Automorphism flip(int n, VertexId mask);
  static Automorphism transposition(int n, int i, int j);

  int dim() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  VertexId mask() const { return mask_; }

  VertexId operator()(VertexId v) const;
  Config operator()(const Config& s) const;

  /// (a * b)(v) == a(b(v)).
  friend Automorphism operator*(const Automorphism& a, const Automorphism& b);
  Automorphism inverse() const;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;

 private:
  std::vector<int> perm_;
  VertexId mask_ = 0;
};

Config apply_automorphism(const Automorphism& phi, const Config& s);

/// Group order n!·2^n.
std::uint64_t automorphism_group_order(int n);

/// Visits every automorphism of Q_n once. Requires n <= 8.
void for_each_automorphism(int n, const std::function<void(const Automorphism&)>& visit);

/// Least bit-vector (in Config's numeric order) over the orbit of s. n <= 6.
Config canonical_form(const Config& s);

/// All distinct images of s under the automorphism group, sorted. n <= 6.
std::vector<Config> orbit(const Config& s);

/// A sub-cube: vertices agreeing with `values` on every coordinate in `fixed`.
struct SubCube {
  int n = 0;
  VertexId fixed = 0;
  VertexId values = 0;

  int dimension() const { return n - std::popcount(fixed); }
  bool contains(VertexId v) const { return (v & fixed) == values; }
  std::vector<VertexId> vertices() const;
  Config to_config() const;
  /// θ_s: the sub-cube obtained by switching external coordinate s (0-based).
  SubCube twin(int coordinate) const;
};

/// The smallest sub-cube containing every vertex of a nonempty s.
SubCube span(const Config& s);

/// Dimension r when s is exactly the vertex set of an r-dimensional sub-cube.
std::optional<int> is_subcube(const Config& s);

/// Partition of all 2^(2^n) configurations (n <= 4) into automorphism orbits.
struct OrbitPartition {
  int n = 0;
  std::vector<std::uint32_t> orbit_of;         // indexed by mask
  std::vector<std::uint64_t> representative;   // least mask in each orbit
  std::vector<std::uint32_t> orbit_size;

  std::size_t orbit_count() const { return representative.size(); }
};

/// Orbits are numbered by increasing |σ|, then by representative mask.
OrbitPartition orbit_partition(int n);

}  // namespace qising

template <>
struct std::hash<qising::Config> {
  std::size_t operator()(const qising::Config& c) const noexcept { return c.hash(); }
};
