#include "qising/isoperimetry.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "qising/errors.hpp"

namespace qising {

std::int64_t qsum(std::uint64_t m) {
  // ones at bit b among 0..m: full periods of length 2^(b+1) contribute 2^b each
  if (m >= (std::uint64_t{1} << 62)) throw CapabilityError("qsum argument too large");
  const std::uint64_t count = m + 1;
  std::int64_t total = 0;
  for (int b = 0; b < 63; ++b) {
    const std::uint64_t period = std::uint64_t{1} << (b + 1);
    const std::uint64_t half = std::uint64_t{1} << b;
    if (half > m) break;
    total += static_cast<std::int64_t>((count / period) * half);
    const std::uint64_t rem = count % period;
    if (rem > half) total += static_cast<std::int64_t>(rem - half);
  }
  return total;
}

std::int64_t qsum_closed(int r) {
  if (r < 0) throw ParameterError("qsum_closed needs r >= 0");
  if (r > 57) throw CapabilityError("qsum_closed overflows for r > 57");
  if (r == 0) return 0;
  return static_cast<std::int64_t>(r) << (r - 1);
}

QTable::QTable(std::uint64_t bound) : sums_(bound + 1, 0) {
  for (std::uint64_t i = 1; i <= bound; ++i) sums_[i] = sums_[i - 1] + q(i);
}

bool abdiff_check(std::uint64_t a, int j, int n) {
  if (n < 3 || n > 62) throw ParameterError("abdiff_check needs 3 <= n <= 62");
  if (j < 1 || j >= n - 1) throw ParameterError("abdiff_check needs 1 <= j < n-1");
  if (a >= (std::uint64_t{1} << n)) throw ParameterError("abdiff_check needs a < 2^n");
  if (!((a >> (j - 1)) & 1u) || ((a >> j) & 1u))
    throw ParameterError("abdiff_check needs digit j of a equal to 1 and digit j+1 equal to 0");

  const std::uint64_t b = a + (std::uint64_t{1} << (j - 1));
  // Σ_{i<b} q(i) - Σ_{i<a} q(i), by direct summation
  std::int64_t increment = 0;
  for (std::uint64_t i = a; i < b; ++i) increment += q(i);
  const std::int64_t high = q(a >> (j + 1));
  // right-hand increment (j + 1 + 2·high)·2^(j-2), doubled to stay integral
  const std::int64_t rhs2 = (j + 1 + 2 * high) * (std::int64_t{1} << (j - 1));
  return 2 * increment == rhs2;
}

Config upsilon(int n, std::uint64_t k) {
  check_dim(n);
  if (k > (std::uint64_t{1} << n)) throw ParameterError("upsilon: k exceeds 2^n");
  Config c(n);
  for (std::uint64_t v = 0; v < k; ++v) c.insert(static_cast<VertexId>(v));
  return c;
}

std::int64_t minimal_boundary(int n, std::uint64_t k) {
  check_dim(n);
  if (k > (std::uint64_t{1} << n)) throw ParameterError("minimal_boundary: k exceeds 2^n");
  if (k == 0) return 0;
  return static_cast<std::int64_t>(n) * static_cast<std::int64_t>(k) - 2 * qsum(k - 1);
}

namespace {

// ceil(log2(k)) for k >= 1: the dimension r+1 with 2^r < k <= 2^(r+1).
int cube_dim_for(std::int64_t k) {
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(k - 1)));
}

bool good_rec(const Config& s) {
  const std::int64_t k = s.size();
  if (k == 1) return true;
  const int d = cube_dim_for(k);  // d = r + 1
  const SubCube c = span(s);
  // A set of this size never fits in a smaller cube, so the containing
  // (r+1)-cube, if any, is the span itself.
  if (c.dimension() != d) return false;
  const VertexId free = ((VertexId{1} << s.dim()) - 1) & ~c.fixed;
  const std::int64_t half_size = std::int64_t{1} << (d - 1);
  for (int coord = 0; coord < s.dim(); ++coord) {
    const VertexId bit = VertexId{1} << coord;
    if (!(free & bit)) continue;
    for (VertexId side : {VertexId{0}, bit}) {
      SubCube full_half{s.dim(), c.fixed | bit, c.values | side};
      Config half = full_half.to_config();
      if ((half & s).size() != half_size) continue;
      Config rest = s ^ half;  // s minus the full half
      if (rest.is_empty()) return true;  // s is the whole (r+1)-cube
      if (good_rec(rest)) return true;
    }
  }
  return false;
}

}  // namespace

bool is_good(const Config& s) {
  if (s.is_empty()) throw ParameterError("is_good: empty configuration");
  return good_rec(s);
}

bool is_well_contained(const Config& s) {
  if (s.is_empty()) throw ParameterError("is_well_contained: empty configuration");
  return span(s).dimension() <= cube_dim_for(s.size());
}

MinimizerCatalog brute_min_boundary(int n, std::uint64_t k) {
  check_dim(n);
  if (n > 4) throw CapabilityError("brute_min_boundary requires n <= 4");
  const unsigned vcount = 1u << n;
  if (k > vcount) throw ParameterError("brute_min_boundary: k exceeds 2^n");

  MinimizerCatalog cat;
  cat.n = n;
  cat.k = k;
  std::vector<std::uint64_t> best;
  std::int64_t best_boundary = -1;
  auto consider = [&](std::uint64_t m) {
    const auto b = edge_counts(Config::from_mask(n, m)).boundary;
    if (best_boundary < 0 || b < best_boundary) {
      best_boundary = b;
      best.clear();
    }
    if (b == best_boundary) best.push_back(m);
  };
  if (k == 0) {
    consider(0);
  } else {
    // Gosper's hack over all masks of popcount k in 2^n bits
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << vcount;
    while (m < limit) {
      consider(m);
      const std::uint64_t c = m & (~m + 1);
      const std::uint64_t r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  cat.minimum = best_boundary;
  std::sort(best.begin(), best.end());
  std::unordered_set<std::uint64_t> canon_seen;
  for (auto m : best) {
    Config c = Config::from_mask(n, m);
    cat.minimizers.push_back(c);
    Config canon = canonical_form(c);
    if (canon_seen.insert(canon.mask()).second)
      cat.orbits.push_back({canon, static_cast<std::uint64_t>(orbit(canon).size())});
  }
  std::sort(cat.orbits.begin(), cat.orbits.end(),
            [](const OrbitEntry& a, const OrbitEntry& b) { return a.canonical < b.canonical; });
  return cat;
}

ReferencePath::ReferencePath(int n) : n_(n) { check_dim(n); }

std::vector<Config> reference_path(int n) {
  check_dim(n);
  if (n > 4) throw CapabilityError("materialized reference path requires n <= 4");
  std::vector<Config> out;
  Config c(n);
  out.push_back(c);
  for (VertexId v = 0; v < (VertexId{1} << n); ++v) {
    c.insert(v);
    out.push_back(c);
  }
  return out;
}

namespace {

Automorphism translation_for(int n, VertexId w, VertexId y) {
  check_dim(n);
  const VertexId limit = VertexId{1} << n;
  if (w >= limit || y >= limit) throw ParameterError("vertex out of range");
  if (!adjacent(w, y)) throw ParameterError("translated path needs adjacent w, y");
  // φ(0) = y and φ(1) = w: swap coordinate 0 with the coordinate where w, y differ.
  const int c = std::countr_zero(w ^ y);
  Automorphism swap = Automorphism::transposition(n, 0, c);
  return Automorphism(swap.perm(), y);
}

}  // namespace

TranslatedPath::TranslatedPath(int n, VertexId w, VertexId y)
    : n_(n), phi_(translation_for(n, w, y)) {}

Config TranslatedPath::at(std::uint64_t k) const { return phi_(upsilon(n_, k)); }

std::vector<Config> translated_reference_path(int n, VertexId w, VertexId y) {
  TranslatedPath path(n, w, y);
  if (n > 4) throw CapabilityError("materialized translated path requires n <= 4");
  std::vector<Config> out;
  Config c(n);
  out.push_back(c);
  for (std::uint64_t k = 1; k < path.length(); ++k) {
    c.insert(path.added(k));
    out.push_back(c);
  }
  return out;
}

}  // namespace qising
