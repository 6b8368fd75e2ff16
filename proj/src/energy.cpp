#include "qising/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qising/errors.hpp"
#include "qising/isoperimetry.hpp"

namespace qising {

int compare(const EnergyValue& a, const EnergyValue& b, double h) {
  const double de = static_cast<double>(a.e - b.e);
  const double ds = static_cast<double>(a.s - b.s);
  const double d = std::fma(-h, ds, de);
  return (d > 0) - (d < 0);
}

double hamiltonian(const Config& s, double h) {
  const double edges = static_cast<double>(s.dim()) * std::ldexp(1.0, s.dim() - 1);
  const auto ec = edge_counts(s);
  const double size = static_cast<double>(s.size());
  const double comp = static_cast<double>(s.vertex_count()) - size;
  return -0.5 * (edges - 2.0 * static_cast<double>(ec.boundary)) - 0.5 * h * (size - comp);
}

EnergyValue energy_gap(const Config& s) { return {edge_counts(s).boundary, s.size()}; }

EnergyValue flip_delta(const Config& s, VertexId v) {
  if (v >= s.vertex_count()) throw ParameterError("flip_delta: vertex out of range");
  const std::int64_t n = s.dim();
  const std::int64_t d = degree_in(s, v);
  if (s.contains(v)) return {2 * d - n, -1};
  return {n - 2 * d, 1};
}

GProfile g_profile(int n, double h) {
  check_dim(n);
  if (n > 26) throw CapabilityError("g_profile requires n <= 26");
  GProfile g;
  g.n = n;
  g.h = h;
  const std::uint64_t top = std::uint64_t{1} << n;
  g.boundary.resize(top + 1);
  // |E(Υ_k, Ῡ_k)| = nk - 2 Σ_{i<k} q(i), accumulated incrementally
  std::int64_t sum = 0;
  for (std::uint64_t k = 0; k <= top; ++k) {
    if (k >= 2) sum += q(k - 1);
    g.boundary[k] = static_cast<std::uint32_t>(static_cast<std::int64_t>(n) * static_cast<std::int64_t>(k) - 2 * sum);
  }
  return g;
}

double gibbs_log_weight(const Config& s, double h, double beta) { return -beta * hamiltonian(s, h); }

double log_partition_function(int n, double h, double beta) {
  check_dim(n);
  if (n > 4) throw CapabilityError("partition function requires n <= 4");
  const std::uint64_t states = std::uint64_t{1} << (1u << n);
  std::vector<double> logw(states);
  double top = -std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < states; ++m) {
    logw[m] = gibbs_log_weight(Config::from_mask(n, m), h, beta);
    top = std::max(top, logw[m]);
  }
  double acc = 0;
  for (double lw : logw) acc += std::exp(lw - top);
  return top + std::log(acc);
}

double partition_function(int n, double h, double beta) {
  return std::exp(log_partition_function(n, h, beta));
}

double gibbs_probability(const Config& s, double h, double beta) {
  return std::exp(gibbs_log_weight(s, h, beta) - log_partition_function(s.dim(), h, beta));
}

double default_field_tol(int n) { return 1e-9 / std::ldexp(1.0, n); }

FieldReport validate_field(int n, double h, double tol) {
  check_dim(n);
  if (n > 26) throw CapabilityError("validate_field requires n <= 26");
  if (!(h > 0.0 && h < static_cast<double>(n))) {
    std::ostringstream os;
    os << "field h = " << h << " outside (0, " << n << ")";
    throw ParameterError(os.str());
  }
  FieldReport r;
  r.tol = tol;
  r.margin = std::numeric_limits<double>::infinity();
  const std::int64_t top = std::int64_t{1} << n;
  for (std::int64_t b = 1; b <= top; ++b) {
    const double bh = static_cast<double>(b) * h;
    const double a = std::nearbyint(bh);
    const double dist = std::fabs(bh - a);
    if (dist < r.margin) {
      r.margin = dist;
      r.witness_a = static_cast<std::int64_t>(a);
      r.witness_b = b;
    }
  }
  r.admissible = r.margin > tol;
  return r;
}

ModelParams make_params(int n, double h, double beta, bool allow_degenerate) {
  const FieldReport r = validate_field(n, h);
  if (!r.admissible && !allow_degenerate) {
    std::ostringstream os;
    os << "field h = " << h << " is inadmissible: h ~ " << r.witness_a << "/" << r.witness_b
       << " (margin " << r.margin << ")";
    throw ParameterError(os.str());
  }
  if (!(beta >= 0.0)) throw ParameterError("beta must be >= 0");
  return {n, h, beta};
}

}  // namespace qising
