#include "qising/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qising/errors.hpp"
#include "qising/isoperimetry.hpp"

namespace qising {

// ---------------------------------------------------------------------------
// Filtration

FiltrationIndex FiltrationIndex::build(int n, double h) {
  check_dim(n);
  if (n > 4) throw CapabilityError("filtration requires n <= 4");
  FiltrationIndex idx;
  idx.n_ = n;
  idx.h_ = h;
  const std::uint64_t states = std::uint64_t{1} << (1u << n);
  idx.energy_.resize(states);
  for (std::uint64_t m = 0; m < states; ++m) idx.energy_[m] = energy_gap(Config::from_mask(n, m));

  idx.order_.resize(states);
  std::iota(idx.order_.begin(), idx.order_.end(), 0u);
  std::sort(idx.order_.begin(), idx.order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int c = compare(idx.energy_[a], idx.energy_[b], h);
    return c != 0 ? c < 0 : a < b;
  });

  idx.parent_.resize(states);
  std::iota(idx.parent_.begin(), idx.parent_.end(), 0u);
  idx.attach_.assign(states, EnergyValue{});
  idx.stability_.assign(states, std::nullopt);

  // Per-root component data: rank, lowest level, and the states at that
  // lowest level whose stability level is still open.
  std::vector<std::uint8_t> rank(states, 0);
  std::vector<EnergyValue> low(idx.energy_);
  std::vector<std::vector<std::uint32_t>> pending(states);
  std::vector<bool> present(states, false);

  auto root = [&](std::uint32_t x) {
    while (idx.parent_[x] != x) x = idx.parent_[x];
    return x;
  };
  auto resolve = [&](std::uint32_t r, const EnergyValue& level) {
    for (auto s : pending[r]) idx.stability_[s] = level - idx.energy_[s];
    pending[r].clear();
    pending[r].shrink_to_fit();
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b, const EnergyValue& level) {
    a = root(a);
    b = root(b);
    if (a == b) return;
    const int c = compare(low[a], low[b], h);
    if (c < 0) resolve(b, level);
    if (c > 0) resolve(a, level);
    const EnergyValue lo = c <= 0 ? low[a] : low[b];
    if (rank[a] < rank[b]) std::swap(a, b);
    idx.parent_[b] = a;
    idx.attach_[b] = level;
    if (rank[a] == rank[b]) ++rank[a];
    low[a] = lo;
    if (pending[a].size() < pending[b].size()) pending[a].swap(pending[b]);
    pending[a].insert(pending[a].end(), pending[b].begin(), pending[b].end());
    pending[b].clear();
    pending[b].shrink_to_fit();
  };

  const unsigned vcount = 1u << n;
  std::size_t i = 0;
  while (i < states) {
    std::size_t j = i;
    const EnergyValue level = idx.energy_[idx.order_[i]];
    while (j < states && same_level(idx.energy_[idx.order_[j]], level, h)) ++j;
    for (std::size_t t = i; t < j; ++t) {
      const std::uint32_t x = idx.order_[t];
      present[x] = true;
      for (unsigned v = 0; v < vcount; ++v) {
        const std::uint32_t y = x ^ (1u << v);
        if (present[y]) unite(x, y, level);
      }
    }
    // A new state is open only if nothing strictly lower is reachable at its level.
    for (std::size_t t = i; t < j; ++t) {
      const std::uint32_t x = idx.order_[t];
      const std::uint32_t r = root(x);
      if (less(low[r], level, h)) {
        idx.stability_[x] = EnergyValue{0, 0};
      } else {
        pending[r].push_back(x);
      }
    }
    i = j;
  }
  return idx;
}

std::uint64_t FiltrationIndex::checked(std::uint64_t state) const {
  if (state >= energy_.size()) throw ParameterError("state outside the filtration");
  return state;
}

std::uint64_t FiltrationIndex::checked(const Config& s) const {
  if (s.dim() != n_) throw ParameterError("configuration dimension differs from the filtration");
  return s.mask();
}

EnergyValue FiltrationIndex::comm_height(std::uint64_t a, std::uint64_t b) const {
  checked(a);
  checked(b);
  if (a == b) return energy_[a];
  // Attach levels increase towards the root, so the connection level is the
  // larger of the two last links below the lowest common ancestor.
  std::vector<std::uint32_t> chain;
  for (auto x = static_cast<std::uint32_t>(a);; x = parent_[x]) {
    chain.push_back(x);
    if (parent_[x] == x) break;
  }
  auto in_chain = [&](std::uint32_t x) { return std::find(chain.begin(), chain.end(), x) != chain.end(); };
  EnergyValue from_b = energy_[b];
  auto x = static_cast<std::uint32_t>(b);
  while (!in_chain(x)) {
    from_b = attach_[x];
    x = parent_[x];
  }
  EnergyValue from_a = energy_[a];
  for (auto y = static_cast<std::uint32_t>(a); y != x; y = parent_[y]) from_a = attach_[y];
  EnergyValue top = less(from_a, from_b, h_) ? from_b : from_a;
  // Φ is never below either endpoint.
  if (less(top, energy_[a], h_)) top = energy_[a];
  if (less(top, energy_[b], h_)) top = energy_[b];
  return top;
}

EnergyValue FiltrationIndex::comm_height(const Config& a, const Config& b) const {
  return comm_height(checked(a), checked(b));
}

std::optional<EnergyValue> FiltrationIndex::stability_level(std::uint64_t state) const {
  return stability_[checked(state)];
}

std::optional<EnergyValue> FiltrationIndex::stability_level(const Config& s) const {
  return stability_level(checked(s));
}

// ---------------------------------------------------------------------------
// Barrier height

GammaBrute gamma_star_brute(int n, double h) {
  check_dim(n);
  if (n > 26) throw CapabilityError("gamma_star_brute requires n <= 26");
  GammaBrute out;
  const std::uint64_t top = std::uint64_t{1} << n;
  std::int64_t sum = 0;  // Σ_{i<k} q(i)
  for (std::uint64_t k = 0; k <= top; ++k) {
    if (k >= 2) sum += q(k - 1);
    const EnergyValue g{static_cast<std::int64_t>(n) * static_cast<std::int64_t>(k) - 2 * sum,
                        static_cast<std::int64_t>(k)};
    const int c = k == 0 ? 1 : compare(g, out.level, h);
    if (c > 0) {
      out.level = g;
      out.argmax.assign(1, k);
    } else if (c == 0) {
      out.argmax.push_back(k);
    }
  }
  out.k_star = out.argmax.front();
  out.value = out.level.value(h);
  return out;
}

BarrierProfile gamma_star_closed(int n, double h) {
  check_dim(n);
  if (!(h > 0.0 && h < n)) throw ParameterError("gamma_star_closed needs 0 < h < n");
  BarrierProfile p;
  p.n = n;
  p.h = h;
  const double x = n - h;
  p.delta = static_cast<int>(std::ceil(x / 2.0));
  p.epsilon = 1 - static_cast<int>(static_cast<std::int64_t>(std::floor(x)) % 2);
  p.delta_one = p.delta == 1;
  p.large_h = std::ceil(x - 1.0) == 0.0;

  std::uint64_t k = 1;
  for (int m = 1; m <= p.delta - 1; ++m) k += std::uint64_t{1} << static_cast<int>(std::ceil(x - 2.0 * m));
  p.k_star = p.large_h ? 1 : k;

  const double lead = x - 2.0 * p.delta + 2.0;
  const double frac = 2.0 - h + std::floor(h);
  p.gamma_star = lead + std::ldexp(1.0, static_cast<int>(std::ceil(lead))) * frac *
                            (std::ldexp(1.0, 2 * (p.delta - 1)) - 1.0) / 3.0;
  if (p.large_h) p.gamma_star = x;

  p.gamma_collapsed = frac * (std::ldexp(1.0, static_cast<int>(std::ceil(x))) - 4.0 + 2.0 * p.epsilon) / 3.0 -
                    p.epsilon;
  return p;
}

std::vector<std::uint64_t> local_maxima_of_g(int n, double h) {
  check_dim(n);
  if (n > 26) throw CapabilityError("local_maxima_of_g requires n <= 26");
  std::vector<std::uint64_t> out;
  const std::uint64_t top = std::uint64_t{1} << n;
  // 2q - (n - h) evaluated as (2q - n) + h: a single rounding keeps the sign exact
  auto above = [&](int qq) { return static_cast<double>(2 * qq - n) + h > 0.0; };
  auto below = [&](int qq) { return static_cast<double>(2 * qq - n) + h < 0.0; };
  for (std::uint64_t k = 1; k < top; ++k)
    if (above(q(k)) && below(q(k - 1))) out.push_back(k);
  return out;
}

EnergyValue critical_level(int n, double h) { return gamma_star_brute(n, h).level; }

std::vector<Config> metastable_set(const FiltrationIndex& index) {
  std::vector<Config> out;
  std::optional<EnergyValue> best;
  const double h = index.field();
  for (std::uint64_t s = 0; s < index.state_count(); ++s) {
    if (s == index.plus_state()) continue;
    const auto v = index.stability_level(s);
    if (!v) continue;
    const int c = best ? compare(*v, *best, h) : 1;
    if (c > 0) {
      best = v;
      out.clear();
    }
    if (c >= 0) out.push_back(Config::from_mask(index.dim(), s));
  }
  return out;
}

std::vector<Config> wells_scan(const FiltrationIndex& index, const EnergyValue& level) {
  std::vector<Config> out;
  const double h = index.field();
  for (std::uint64_t s = 0; s < index.state_count(); ++s) {
    if (!less(index.energy(s), level, h)) continue;
    if (!same_level(index.comm_height(s, index.minus_state()), level, h)) continue;
    if (!same_level(index.comm_height(s, index.plus_state()), level, h)) continue;
    out.push_back(Config::from_mask(index.dim(), s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stability certificates

StabilityCertificate stability_certificate(const Config& sigma, double h) {
  const int n = sigma.dim();
  if (n > 20) throw CapabilityError("stability_certificate requires n <= 20");
  if (sigma.is_empty() || sigma.is_full())
    throw ParameterError("stability_certificate needs a configuration other than ⊟ and ⊞");

  StabilityCertificate cert;
  cert.n = n;
  cert.h = h;
  cert.gamma_star = gamma_star_brute(n, h).level;

  bool found = false;
  for (VertexId w : sigma.vertices()) {
    for (int i = 0; i < n && !found; ++i) {
      const VertexId y = w ^ (VertexId{1} << i);
      if (!sigma.contains(y)) {
        cert.w = w;
        cert.y = y;
        found = true;
      }
    }
    if (found) break;
  }

  const TranslatedPath path(n, cert.w, cert.y);
  Config current = sigma;
  EnergyValue rise{0, 0};
  cert.rise.push_back(rise);
  cert.bound = rise;
  std::int64_t qs = 0;  // Σ_{i<k} q(i) for the level of γ_k
  const EnergyValue zero{0, 0};
  for (std::uint64_t k = 1; k < path.length(); ++k) {
    if (k >= 2) qs += q(k - 1);
    const VertexId u = path.added(k);
    cert.added.push_back(u);
    if (!current.contains(u)) {
      rise = rise + flip_delta(current, u);
      current.insert(u);
    }
    cert.rise.push_back(rise);
    if (less(cert.bound, rise, h)) cert.bound = rise;
    const EnergyValue gamma_k{static_cast<std::int64_t>(n) * static_cast<std::int64_t>(k) - 2 * qs,
                              static_cast<std::int64_t>(k)};
    if (compare(gamma_k, zero, h) <= 0) {
      cert.k_minus = k;
      break;
    }
  }
  cert.certified = less(cert.bound, cert.gamma_star, h) && less(cert.rise.back(), zero, h);
  return cert;
}

bool verify_certificate(const Config& sigma, const StabilityCertificate& cert) {
  const int n = sigma.dim();
  if (n > 14) throw CapabilityError("verify_certificate requires n <= 14");
  const double h = cert.h;
  if (cert.n != n || !sigma.contains(cert.w) || sigma.contains(cert.y) || !adjacent(cert.w, cert.y))
    return false;
  if (cert.added.size() != cert.k_minus || cert.rise.size() != cert.k_minus + 1) return false;

  const TranslatedPath path(n, cert.w, cert.y);
  if (path.added(1) != cert.y || path.added(2) != cert.w) return false;
  const EnergyValue base = energy_gap(sigma);
  const EnergyValue zero{0, 0};
  Config gamma(n);
  EnergyValue top{0, 0};
  for (std::uint64_t i = 0; i <= cert.k_minus; ++i) {
    if (i > 0) {
      if (cert.added[i - 1] != path.added(i)) return false;
      gamma.insert(cert.added[i - 1]);
    }
    const EnergyValue rise = energy_gap(sigma | gamma) - base;
    if (rise != cert.rise[i]) return false;
    if (less(top, rise, h)) top = rise;
    // k⁻ is the first index with H(γ_i) <= H(⊟)
    if (i >= 1 && i < cert.k_minus && compare(energy_gap(gamma), zero, h) <= 0) return false;
  }
  if (compare(energy_gap(gamma), zero, h) > 0) return false;
  if (!same_level(top, cert.bound, h)) return false;
  const auto gs = gamma_star_brute(n, h).level;
  return less(top, gs, h) && less(cert.rise.back(), zero, h);
}

}  // namespace qising
