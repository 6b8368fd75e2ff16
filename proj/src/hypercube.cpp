#include "qising/hypercube.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <unordered_set>

#include "qising/errors.hpp"

namespace qising {

namespace {

// Bits whose index has coordinate i clear, for the six coordinates that live
// inside a 64-bit word.
constexpr std::array<std::uint64_t, 6> kLowHalf = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};

std::size_t word_count(int n) { return n >= 6 ? (std::size_t{1} << (n - 6)) : 1; }

std::uint64_t tail_mask(int n) {
  return n >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << n)) - 1);
}

void check_same_dim(const Config& a, const Config& b) {
  if (a.dim() != b.dim()) throw ParameterError("configuration dimensions differ");
}

}  // namespace

void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw ParameterError("cube dimension " + std::to_string(n) + " outside [1, 30]");
}

std::vector<VertexId> neighbors(VertexId v, int n) {
  check_dim(n);
  if (v >= (VertexId{1} << n)) throw ParameterError("vertex out of range");
  std::vector<VertexId> out(n);
  for (int i = 0; i < n; ++i) out[i] = v ^ (VertexId{1} << i);
  return out;
}

// ---------------------------------------------------------------------------
// Config

Config::Config(int n) : n_(n) {
  check_dim(n);
  words_.assign(word_count(n), 0);
}

Config Config::full(int n) {
  Config c(n);
  std::fill(c.words_.begin(), c.words_.end(), ~std::uint64_t{0});
  c.words_.back() &= tail_mask(n);
  return c;
}

Config Config::from_vertices(int n, std::span<const VertexId> vs) {
  Config c(n);
  for (VertexId v : vs) {
    if (v >= c.vertex_count()) throw ParameterError("vertex out of range");
    c.insert(v);
  }
  return c;
}

Config Config::from_vertices(int n, std::initializer_list<VertexId> vs) {
  return from_vertices(n, std::span<const VertexId>(vs.begin(), vs.size()));
}

Config Config::from_mask(int n, std::uint64_t mask) {
  if (n > kMaxMaskDim) throw CapabilityError("from_mask requires n <= 6");
  Config c(n);
  if (mask & ~tail_mask(n)) throw ParameterError("mask has bits beyond 2^n");
  c.words_[0] = mask;
  return c;
}

std::int64_t Config::size() const {
  std::int64_t s = 0;
  for (auto w : words_) s += std::popcount(w);
  return s;
}

std::vector<VertexId> Config::vertices() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::size_t j = 0; j < words_.size(); ++j) {
    std::uint64_t w = words_[j];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<VertexId>(j * 64 + b));
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t Config::mask() const {
  if (n_ > kMaxMaskDim) throw CapabilityError("mask() requires n <= 6");
  return words_[0];
}

Config Config::complement() const {
  Config c = *this;
  for (auto& w : c.words_) w = ~w;
  c.words_.back() &= tail_mask(n_);
  return c;
}

Config& Config::operator|=(const Config& o) {
  check_same_dim(*this, o);
  for (std::size_t j = 0; j < words_.size(); ++j) words_[j] |= o.words_[j];
  return *this;
}

Config& Config::operator&=(const Config& o) {
  check_same_dim(*this, o);
  for (std::size_t j = 0; j < words_.size(); ++j) words_[j] &= o.words_[j];
  return *this;
}

Config& Config::operator^=(const Config& o) {
  check_same_dim(*this, o);
  for (std::size_t j = 0; j < words_.size(); ++j) words_[j] ^= o.words_[j];
  return *this;
}

std::strong_ordering operator<=>(const Config& a, const Config& b) {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  for (std::size_t j = a.words_.size(); j-- > 0;) {
    if (a.words_[j] != b.words_[j]) return a.words_[j] <=> b.words_[j];
  }
  return std::strong_ordering::equal;
}

std::size_t Config::hash() const {
  // splitmix-style mixing of each word
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(n_);
  for (auto w : words_) {
    std::uint64_t z = w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    h ^= z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

std::int64_t distance(const Config& a, const Config& b) { return (a ^ b).size(); }

// ---------------------------------------------------------------------------
// Edge arithmetic

EdgeCounts edge_counts(const Config& s) {
  const int n = s.dim();
  const auto w = s.words();
  std::int64_t within = 0;
  for (int i = 0; i < n; ++i) {
    if (i < 6) {
      const unsigned shift = 1u << i;
      for (auto x : w) within += std::popcount(x & kLowHalf[i] & (x >> shift));
    } else {
      const std::size_t d = std::size_t{1} << (i - 6);
      for (std::size_t j = 0; j < w.size(); ++j)
        if (!(j & d)) within += std::popcount(w[j] & w[j | d]);
    }
  }
  return {within, static_cast<std::int64_t>(n) * s.size() - 2 * within};
}

int degree_in(const Config& s, VertexId v) {
  int d = 0;
  for (int i = 0; i < s.dim(); ++i) d += s.contains(v ^ (VertexId{1} << i));
  return d;
}

// ---------------------------------------------------------------------------
// Automorphisms

Automorphism::Automorphism(std::vector<int> perm, VertexId mask)
    : perm_(std::move(perm)), mask_(mask) {
  const int n = static_cast<int>(perm_.size());
  check_dim(n);
  std::vector<bool> seen(n, false);
  for (int p : perm_) {
    if (p < 0 || p >= n || seen[p]) throw ParameterError("automorphism perm is not a bijection");
    seen[p] = true;
  }
  if (mask_ >= (VertexId{1} << n)) throw ParameterError("automorphism mask out of range");
}

Automorphism Automorphism::identity(int n) {
  check_dim(n);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return {std::move(p), 0};
}

Automorphism Automorphism::flip(int n, VertexId mask) {
  auto a = identity(n);
  return {a.perm_, mask};
}

Automorphism Automorphism::transposition(int n, int i, int j) {
  auto a = identity(n);
  if (i < 0 || j < 0 || i >= n || j >= n) throw ParameterError("coordinate out of range");
  std::swap(a.perm_[i], a.perm_[j]);
  return a;
}

VertexId Automorphism::operator()(VertexId v) const {
  VertexId out = 0;
  for (std::size_t i = 0; i < perm_.size(); ++i)
    if ((v >> i) & 1u) out |= VertexId{1} << perm_[i];
  return out ^ mask_;
}

Config Automorphism::operator()(const Config& s) const {
  if (s.dim() != dim()) throw ParameterError("automorphism and configuration dimensions differ");
  Config out(s.dim());
  for (VertexId v : s.vertices()) out.insert((*this)(v));
  return out;
}

Automorphism operator*(const Automorphism& a, const Automorphism& b) {
  if (a.dim() != b.dim()) throw ParameterError("automorphism dimensions differ");
  const int n = a.dim();
  // a(b(v)) = P_a(P_b v ^ m_b) ^ m_a = P_a P_b v ^ (P_a m_b ^ m_a)
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = a.perm_[b.perm_[i]];
  Automorphism pa(a.perm_, 0);
  return {std::move(p), pa(b.mask_) ^ a.mask_};
}

Automorphism Automorphism::inverse() const {
  const int n = dim();
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[perm_[i]] = i;
  Automorphism pinv(inv, 0);
  return {std::move(inv), pinv(mask_)};
}

Config apply_automorphism(const Automorphism& phi, const Config& s) { return phi(s); }

std::uint64_t automorphism_group_order(int n) {
  check_dim(n);
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  if (n >= 20) throw CapabilityError("group order overflows 64 bits");
  return f << n;
}

void for_each_automorphism(int n, const std::function<void(const Automorphism&)>& visit) {
  check_dim(n);
  if (n > 8) throw CapabilityError("automorphism enumeration requires n <= 8");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (VertexId m = 0; m < (VertexId{1} << n); ++m) visit(Automorphism(p, m));
  } while (std::next_permutation(p.begin(), p.end()));
}

namespace {

// Image of a one-word configuration under a vertex map.
std::uint64_t map_mask(std::uint64_t mask, const std::vector<VertexId>& table) {
  std::uint64_t out = 0;
  while (mask) {
    int v = std::countr_zero(mask);
    out |= std::uint64_t{1} << table[v];
    mask &= mask - 1;
  }
  return out;
}

std::vector<VertexId> vertex_table(const Automorphism& phi) {
  std::vector<VertexId> t(std::size_t{1} << phi.dim());
  for (VertexId v = 0; v < t.size(); ++v) t[v] = phi(v);
  return t;
}

void check_orbit_dim(const Config& s) {
  if (s.dim() > kMaxMaskDim) throw CapabilityError("orbit enumeration requires n <= 6");
}

}  // namespace

Config canonical_form(const Config& s) {
  check_orbit_dim(s);
  const std::uint64_t mask = s.mask();
  std::uint64_t best = mask;
  for_each_automorphism(s.dim(), [&](const Automorphism& phi) {
    best = std::min(best, map_mask(mask, vertex_table(phi)));
  });
  return Config::from_mask(s.dim(), best);
}

std::vector<Config> orbit(const Config& s) {
  check_orbit_dim(s);
  const std::uint64_t mask = s.mask();
  std::unordered_set<std::uint64_t> seen;
  for_each_automorphism(s.dim(), [&](const Automorphism& phi) {
    seen.insert(map_mask(mask, vertex_table(phi)));
  });
  std::vector<std::uint64_t> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Config> out;
  out.reserve(sorted.size());
  for (auto m : sorted) out.push_back(Config::from_mask(s.dim(), m));
  return out;
}

// ---------------------------------------------------------------------------
// Sub-cubes

std::vector<VertexId> SubCube::vertices() const {
  std::vector<VertexId> out;
  const VertexId free = ((VertexId{1} << n) - 1) & ~fixed;
  // enumerate submasks of the free coordinates
  VertexId sub = 0;
  do {
    out.push_back(values | sub);
    sub = (sub - free) & free;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

Config SubCube::to_config() const {
  auto vs = vertices();
  return Config::from_vertices(n, vs);
}

SubCube SubCube::twin(int coordinate) const {
  const VertexId bit = VertexId{1} << coordinate;
  if (!(fixed & bit)) throw ParameterError("twin() needs an external coordinate");
  return {n, fixed, values ^ bit};
}

SubCube span(const Config& s) {
  const auto vs = s.vertices();
  if (vs.empty()) throw ParameterError("span of the empty configuration");
  VertexId differ = 0;
  for (VertexId v : vs) differ |= v ^ vs.front();
  const VertexId all = (VertexId{1} << s.dim()) - 1;
  const VertexId fixed = all & ~differ;
  return {s.dim(), fixed, vs.front() & fixed};
}

std::optional<int> is_subcube(const Config& s) {
  if (s.is_empty()) return std::nullopt;
  const SubCube c = span(s);
  if (s.size() != (std::int64_t{1} << c.dimension())) return std::nullopt;
  return c.dimension();
}

// ---------------------------------------------------------------------------
// Orbit partition of the full configuration space

OrbitPartition orbit_partition(int n) {
  check_dim(n);
  if (n > 4) throw CapabilityError("orbit partition requires n <= 4");
  const std::size_t states = std::size_t{1} << (1u << n);

  std::vector<std::uint32_t> parent(states);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<Automorphism> gens;
  for (int i = 0; i + 1 < n; ++i) gens.push_back(Automorphism::transposition(n, i, i + 1));
  gens.push_back(Automorphism::flip(n, 1));
  std::vector<std::vector<VertexId>> tables;
  for (const auto& g : gens) tables.push_back(vertex_table(g));

  for (std::uint64_t m = 0; m < states; ++m) {
    for (const auto& t : tables) {
      auto a = find(static_cast<std::uint32_t>(m));
      auto b = find(static_cast<std::uint32_t>(map_mask(m, t)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  // Each root is the least mask of its class because unions keep the smaller root.
  std::vector<std::uint64_t> reps;
  for (std::uint64_t m = 0; m < states; ++m)
    if (find(static_cast<std::uint32_t>(m)) == m) reps.push_back(m);
  std::sort(reps.begin(), reps.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  OrbitPartition out;
  out.n = n;
  out.representative = reps;
  out.orbit_size.assign(reps.size(), 0);
  std::vector<std::uint32_t> index_of_root(states, 0);
  for (std::size_t i = 0; i < reps.size(); ++i) index_of_root[reps[i]] = static_cast<std::uint32_t>(i);
  out.orbit_of.resize(states);
  for (std::uint64_t m = 0; m < states; ++m) {
    const auto o = index_of_root[find(static_cast<std::uint32_t>(m))];
    out.orbit_of[m] = o;
    ++out.orbit_size[o];
  }
  return out;
}

}  // namespace qising
