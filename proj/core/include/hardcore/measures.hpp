#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hardcore/errors.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/rational.hpp"
#include "hardcore/vertex_set.hpp"

namespace hardcore {

// Finitely supported probability measure over subsets of [universe]. Support
// entries are distinct; probs sum to one (exactly for Rational).
template <class P>
struct BasicMeasure {
  std::size_t universe = 0;
  std::vector<VertexSet> support;
  std::vector<P> probs;

  std::size_t size() const { return support.size(); }

  P total() const {
    P t = 0;
    for (const auto& p : probs) t += p;
    return t;
  }
};

using ExactMeasure = BasicMeasure<double>;
using RationalMeasure = BasicMeasure<Rational>;

template <class P>
BasicMeasure<P> point_mass(const VertexSet& s) {
  return BasicMeasure<P>{s.universe(), {s}, {P(1)}};
}

template <class P>
BasicMeasure<P> uniform_on(std::size_t universe, const std::vector<VertexSet>& sets) {
  BasicMeasure<P> mu{universe, sets, {}};
  mu.probs.assign(sets.size(), P(1) / P(static_cast<long>(sets.size())));
  return mu;
}

inline ExactMeasure to_double(const RationalMeasure& mu) {
  ExactMeasure out{mu.universe, mu.support, {}};
  out.probs.reserve(mu.probs.size());
  for (const auto& p : mu.probs) out.probs.push_back(p.get_d());
  return out;
}

struct SizeProfile {
  std::vector<std::uint64_t> zk;  // zk[k] = number of independent k-sets
  std::uint64_t partition = 0;    // sum of zk
};

struct Enumeration {
  SizeProfile profile;
  std::vector<VertexSet> sets;  // grouped by size, lexicographic within a size
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// All independent sets of g (of size <= max_size when given). Throws
// BudgetExceeded, naming the count reached, above `budget` sets.
Enumeration enumerate_independent_sets(const Graph& g,
                                       std::optional<std::size_t> max_size = std::nullopt,
                                       std::uint64_t budget = kDefaultEnumerationBudget);

// mu_G(S) ∝ lambda^{|S|} over independent S.
template <class P>
BasicMeasure<P> hardcore_measure(const Graph& g, const P& lambda,
                                 std::uint64_t budget = kDefaultEnumerationBudget) {
  Enumeration e = enumerate_independent_sets(g, std::nullopt, budget);
  std::vector<P> weight_by_size(e.profile.zk.size());
  P power = 1;
  P z = 0;
  for (std::size_t k = 0; k < e.profile.zk.size(); ++k) {
    weight_by_size[k] = power;
    z += power * P(static_cast<long>(e.profile.zk[k]));
    power *= lambda;
  }
  BasicMeasure<P> mu{g.order(), std::move(e.sets), {}};
  mu.probs.reserve(mu.support.size());
  for (const auto& s : mu.support) mu.probs.push_back(weight_by_size[s.size()] / z);
  return mu;
}

template <class P>
BasicMeasure<P> condition_on_size(const BasicMeasure<P>& mu, std::size_t kmin, std::size_t kmax) {
  BasicMeasure<P> out{mu.universe, {}, {}};
  P mass = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::size_t k = mu.support[i].size();
    if (k >= kmin && k <= kmax && !ScalarTraits<P>::is_zero(mu.probs[i])) {
      out.support.push_back(mu.support[i]);
      out.probs.push_back(mu.probs[i]);
      mass += mu.probs[i];
    }
  }
  if (ScalarTraits<P>::is_zero(mass)) {
    throw EmptyEvent("condition_on_size: no mass on sizes [" + std::to_string(kmin) + ", " +
                     std::to_string(kmax) + "]");
  }
  for (auto& p : out.probs) p /= mass;
  return out;
}

// Half the L1 distance over the union of supports.
template <class P>
P tv_distance(const BasicMeasure<P>& mu, const BasicMeasure<P>& nu) {
  std::map<VertexSet, P> diff;
  for (std::size_t i = 0; i < mu.size(); ++i) diff[mu.support[i]] += mu.probs[i];
  for (std::size_t i = 0; i < nu.size(); ++i) diff[nu.support[i]] -= nu.probs[i];
  P total = 0;
  for (auto& [s, d] : diff) total += d < 0 ? P(-d) : d;
  return total / 2;
}

// E|S| under mu, which equals E||1_S||^2.
template <class P>
P second_moment(const BasicMeasure<P>& mu) {
  P total = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    total += mu.probs[i] * P(static_cast<long>(mu.support[i].size()));
  }
  return total;
}

template <class P>
double m2(const BasicMeasure<P>& mu) {
  return std::sqrt(to_double(second_moment(mu)));
}

// Law of |S| as a vector indexed by size.
template <class P>
std::vector<P> size_law(const BasicMeasure<P>& mu) {
  std::vector<P> law;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::size_t k = mu.support[i].size();
    if (law.size() <= k) law.resize(k + 1, P(0));
    law[k] += mu.probs[i];
  }
  return law;
}

// Weighted mixture; components may overlap in support.
template <class P>
BasicMeasure<P> mixture(const std::vector<P>& weights, const std::vector<BasicMeasure<P>>& parts) {
  std::map<VertexSet, P> acc;
  std::size_t universe = 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    universe = parts[c].universe;
    for (std::size_t i = 0; i < parts[c].size(); ++i) {
      acc[parts[c].support[i]] += weights[c] * parts[c].probs[i];
    }
  }
  BasicMeasure<P> out{universe, {}, {}};
  for (auto& [s, p] : acc) {
    if (ScalarTraits<P>::is_zero(p)) continue;
    out.support.push_back(s);
    out.probs.push_back(p);
  }
  return out;
}

// Exact ratios (M_{k+1}/M_k, M_{k-1}/M_k). The backward ratio is undefined at
// k = 0 and throws ContractViolation.
std::pair<double, double> mk_ratio_check(std::size_t n, std::size_t k);
double mk_forward_ratio(std::size_t n, std::size_t k);

// Nearest integer to log2 n - log2 log2 n, ties rounded up.
std::size_t kstar(std::size_t n);

struct WindowParams {
  std::size_t kstar = 0;
  std::size_t a = 0;

  std::size_t lo() const { return kstar - a; }
  std::size_t hi() const { return kstar + a; }
};

WindowParams make_window(std::size_t n, std::size_t a);

// The two size cut-offs used by the concentration arguments, kept as named
// fields instead of reconciled: Z_k is concentrated for k <= upper_log *
// log2 n - upper_loglog * log2 log2 n.
struct WindowCuts {
  double upper_log = 2.0;
  double upper_loglog = 5.0;

  double concentration_limit(std::size_t n) const {
    double l = std::log2(static_cast<double>(n));
    return upper_log * l - upper_loglog * std::log2(l);
  }
};

// Mass outside [kstar - a, kstar + a] of a size law.
double mass_outside_window(const std::vector<double>& law, const WindowParams& window);

// Measure dump: CSV `set_bits_hex,probability` and a JSON sidecar
// {n, lambda, graph_hash}.
void write_measure_csv(std::ostream& out, const ExactMeasure& mu);
void write_measure_csv(std::ostream& out, const RationalMeasure& mu);
void write_measure_sidecar(std::ostream& out, std::size_t n, const std::string& lambda,
                           const std::string& graph_hash);
ExactMeasure read_measure_csv(std::istream& in, std::size_t n);

}  // namespace hardcore
