#include "hardcore/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hardcore/errors.hpp"
#include "hardcore/random.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

struct BasisCell {
  std::size_t i;
  std::size_t j;
};

}  // namespace

template <class P>
TransportSolution<P> solve_transport(const TransportProblem<P>& problem) {
  const std::size_t m = problem.supply.size();
  const std::size_t n = problem.demand.size();
  if (m == 0 || n == 0) throw ContractViolation("transport: empty marginal");
  std::vector<P> a = problem.supply;
  std::vector<P> b = problem.demand;
  P ta = 0;
  P tb = 0;
  for (const auto& x : a) {
    if (x < 0) throw ContractViolation("transport: negative supply");
    ta += x;
  }
  for (const auto& x : b) {
    if (x < 0) throw ContractViolation("transport: negative demand");
    tb += x;
  }
  if constexpr (ScalarTraits<P>::exact) {
    if (ta != tb) throw ContractViolation("transport: unbalanced marginals");
  } else {
    if (std::abs(ta - tb) > 1e-9 * std::max(1.0, ta)) {
      throw ContractViolation("transport: unbalanced marginals");
    }
    for (auto& x : b) x *= ta / tb;
  }

  std::vector<std::int64_t> cost(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = problem.cost(i, j);
  }

  // North-west corner start; exactly m + n - 1 (possibly degenerate) cells.
  std::vector<BasisCell> basis;
  std::vector<P> flow;
  {
    std::vector<P> ra = a;
    std::vector<P> rb = b;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < m && j < n) {
      P x = ra[i] <= rb[j] ? ra[i] : rb[j];
      bool row_done = ra[i] <= rb[j];
      basis.push_back({i, j});
      flow.push_back(x);
      ra[i] -= x;
      rb[j] -= x;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (row_done) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const std::size_t nodes = m + n;
  std::vector<std::vector<std::size_t>> incident(nodes);
  std::vector<std::int64_t> potential(nodes);
  std::vector<std::size_t> parent_edge(nodes);
  std::vector<std::size_t> parent(nodes);
  std::vector<std::size_t> depth(nodes);
  std::vector<char> seen(nodes);

  TransportSolution<P> out;
  const std::uint64_t max_pivots = 50ULL * m * n + 10'000;
  std::size_t degenerate_run = 0;
  bool bland = false;

  for (;;) {
    for (auto& list : incident) list.clear();
    for (std::size_t e = 0; e < basis.size(); ++e) {
      incident[basis[e].i].push_back(e);
      incident[m + basis[e].j].push_back(e);
    }
    std::fill(seen.begin(), seen.end(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    potential[0] = 0;
    depth[0] = 0;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t e : incident[x]) {
        std::size_t y = x < m ? m + basis[e].j : basis[e].i;
        if (seen[y]) continue;
        seen[y] = 1;
        std::int64_t c = cost[basis[e].i * n + basis[e].j];
        potential[y] = c - potential[x];  // u_i + v_j = c_ij
        parent[y] = x;
        parent_edge[y] = e;
        depth[y] = depth[x] + 1;
        queue.push_back(y);
      }
    }

    std::size_t enter_i = m;
    std::size_t enter_j = 0;
    std::int64_t best = 0;
    for (std::size_t i = 0; i < m && !(bland && enter_i < m); ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t r = cost[i * n + j] - potential[i] - potential[m + j];
        if (r < best) {
          best = r;
          enter_i = i;
          enter_j = j;
          if (bland) break;
        }
      }
    }
    if (enter_i == m) break;
    if (++out.pivots > max_pivots) throw std::runtime_error("transport: pivot limit reached");

    // Tree path from column node to row node; signs alternate starting with -.
    std::vector<std::size_t> up_from_col;
    std::vector<std::size_t> up_from_row;
    std::size_t x = m + enter_j;
    std::size_t y = enter_i;
    while (depth[x] > depth[y]) {
      up_from_col.push_back(parent_edge[x]);
      x = parent[x];
    }
    while (depth[y] > depth[x]) {
      up_from_row.push_back(parent_edge[y]);
      y = parent[y];
    }
    while (x != y) {
      up_from_col.push_back(parent_edge[x]);
      x = parent[x];
      up_from_row.push_back(parent_edge[y]);
      y = parent[y];
    }
    std::vector<std::size_t> cycle = up_from_col;
    cycle.insert(cycle.end(), up_from_row.rbegin(), up_from_row.rend());

    std::size_t leave = basis.size();
    for (std::size_t k = 0; k < cycle.size(); k += 2) {
      std::size_t e = cycle[k];
      if (leave == basis.size() || flow[e] < flow[leave]) {
        leave = e;
      } else if (bland && flow[e] == flow[leave]) {
        auto key = [&](std::size_t f) { return basis[f].i * n + basis[f].j; };
        if (key(e) < key(leave)) leave = e;
      }
    }
    P theta = flow[leave];
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k % 2 == 0) {
        flow[cycle[k]] -= theta;
      } else {
        flow[cycle[k]] += theta;
      }
    }
    basis[leave] = {enter_i, enter_j};
    flow[leave] = theta;

    if (ScalarTraits<P>::is_zero(theta)) {
      if (++degenerate_run > nodes) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }

  out.objective = 0;
  for (std::size_t e = 0; e < basis.size(); ++e) {
    if (ScalarTraits<P>::is_zero(flow[e])) continue;
    out.entries.push_back({basis[e].i, basis[e].j, flow[e]});
    out.objective += flow[e] * P(static_cast<long>(cost[basis[e].i * n + basis[e].j]));
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& u, const auto& v) {
    return std::pair(u.left, u.right) < std::pair(v.left, v.right);
  });
  return out;
}

template TransportSolution<double> solve_transport(const TransportProblem<double>&);
template TransportSolution<Rational> solve_transport(const TransportProblem<Rational>&);

Rational brute_force_transport(const TransportProblem<Rational>& problem) {
  const std::size_t m = problem.supply.size();
  const std::size_t n = problem.demand.size();
  if (m == 0 || n == 0 || m > 4 || n > 4) {
    throw ContractViolation("brute_force_transport: supports must have 1..4 points");
  }
  const std::size_t cells = m * n;
  const std::size_t pick = m + n - 1;
  std::optional<Rational> best;
  std::vector<std::size_t> chosen;

  auto evaluate = [&]() {
    // Spanning tree check (union-find on m + n nodes).
    std::vector<std::size_t> root(m + n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (std::size_t c : chosen) {
      std::size_t u = find(c / n);
      std::size_t v = find(m + c % n);
      if (u == v) return;
      root[u] = v;
    }
    // Peel leaves: a leaf's only edge carries its remaining requirement.
    std::vector<Rational> need(m + n);
    for (std::size_t i = 0; i < m; ++i) need[i] = problem.supply[i];
    for (std::size_t j = 0; j < n; ++j) need[m + j] = problem.demand[j];
    std::vector<char> used(chosen.size(), 0);
    std::vector<Rational> value(chosen.size());
    for (std::size_t round = 0; round < chosen.size(); ++round) {
      std::size_t leaf_edge = chosen.size();
      std::size_t leaf = 0;
      for (std::size_t x = 0; x < m + n && leaf_edge == chosen.size(); ++x) {
        std::size_t degree = 0;
        std::size_t last = 0;
        for (std::size_t e = 0; e < chosen.size(); ++e) {
          if (used[e]) continue;
          std::size_t c = chosen[e];
          if (c / n == x || m + c % n == x) {
            ++degree;
            last = e;
          }
        }
        if (degree == 1) {
          leaf_edge = last;
          leaf = x;
        }
      }
      std::size_t c = chosen[leaf_edge];
      std::size_t other = leaf == c / n ? m + c % n : c / n;
      value[leaf_edge] = need[leaf];
      if (value[leaf_edge] < 0) return;
      need[other] -= need[leaf];
      need[leaf] = 0;
      used[leaf_edge] = 1;
    }
    Rational total = 0;
    for (std::size_t e = 0; e < chosen.size(); ++e) {
      if (value[e] < 0) return;
      total += value[e] * Rational(static_cast<long>(problem.cost(chosen[e] / n, chosen[e] % n)));
    }
    if (!best || total < *best) best = total;
  };

  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == pick) {
      evaluate();
      return;
    }
    for (std::size_t c = start; c + (pick - chosen.size()) <= cells; ++c) {
      chosen.push_back(c);
      self(self, c + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  if (!best) throw ContractViolation("brute_force_transport: infeasible marginals");
  return *best;
}

namespace {

template <class P>
P size_moment(const BasicMeasure<P>& mu) {
  return second_moment(mu);
}

template <class P>
double normalized_from_overlap(const P& overlap, const P& a2, const P& b2) {
  double ratio;
  if (a2 == b2) {
    ratio = to_double(P(overlap / a2));
  } else {
    ratio = to_double(overlap) / std::sqrt(to_double(a2) * to_double(b2));
  }
  return 2.0 - 2.0 * ratio;
}

template <class P>
W2Result<P> w2_exact_impl(const BasicMeasure<P>& mu, const BasicMeasure<P>& nu) {
  P a2 = size_moment(mu);
  P b2 = size_moment(nu);
  if (ScalarTraits<P>::is_zero(a2) || ScalarTraits<P>::is_zero(b2)) {
    throw DegenerateNormalization("w2_exact: m2 = 0 (measure concentrated on the empty set)");
  }
  TransportProblem<P> problem{mu.probs, nu.probs, [&](std::size_t i, std::size_t j) {
                                return -static_cast<std::int64_t>(
                                    mu.support[i].intersection_size(nu.support[j]));
                              }};
  TransportSolution<P> sol = solve_transport(problem);
  W2Result<P> out;
  out.plan.left_support = mu.support;
  out.plan.right_support = nu.support;
  out.plan.left_mass = mu.probs;
  out.plan.right_mass = nu.probs;
  out.plan.entries = std::move(sol.entries);
  out.plan.expected_overlap = -sol.objective;
  out.plan.cost = normalized_from_overlap(out.plan.expected_overlap, a2, b2);
  if (out.plan.cost > 2.0 + 1e-9) {
    throw std::logic_error("w2_exact: squared distance exceeds 2 for nonnegative supports");
  }
  out.value = std::sqrt(std::max(0.0, out.plan.cost));
  return out;
}

template <class P>
P min_disagreement_impl(const BasicMeasure<P>& mu, const BasicMeasure<P>& nu) {
  TransportProblem<P> problem{mu.probs, nu.probs, [&](std::size_t i, std::size_t j) {
                                return mu.support[i] == nu.support[j] ? std::int64_t{0}
                                                                      : std::int64_t{1};
                              }};
  return solve_transport(problem).objective;
}

}  // namespace

W2Result<double> w2_exact(const ExactMeasure& mu, const ExactMeasure& nu) {
  return w2_exact_impl(mu, nu);
}

W2Result<Rational> w2_exact(const RationalMeasure& mu, const RationalMeasure& nu) {
  return w2_exact_impl(mu, nu);
}

double w2_brute_force(const RationalMeasure& mu, const RationalMeasure& nu) {
  Rational a2 = second_moment(mu);
  Rational b2 = second_moment(nu);
  if (sgn(a2) == 0 || sgn(b2) == 0) {
    throw DegenerateNormalization("w2_brute_force: m2 = 0");
  }
  TransportProblem<Rational> problem{mu.probs, nu.probs, [&](std::size_t i, std::size_t j) {
                                       return -static_cast<std::int64_t>(
                                           mu.support[i].intersection_size(nu.support[j]));
                                     }};
  Rational overlap = -brute_force_transport(problem);
  return std::sqrt(std::max(0.0, normalized_from_overlap(overlap, a2, b2)));
}

double min_disagreement(const ExactMeasure& mu, const ExactMeasure& nu) {
  return min_disagreement_impl(mu, nu);
}

Rational min_disagreement(const RationalMeasure& mu, const RationalMeasure& nu) {
  return min_disagreement_impl(mu, nu);
}

template <class P>
double w2_upper_from_coupling(const BasicTransportPlan<P>& plan) {
  double a2 = 0.0;
  double b2 = 0.0;
  for (const auto& e : plan.entries) {
    a2 += to_double(e.mass) * static_cast<double>(plan.left_support[e.left].size());
    b2 += to_double(e.mass) * static_cast<double>(plan.right_support[e.right].size());
  }
  if (a2 == 0.0 || b2 == 0.0) throw DegenerateNormalization("coupling cost: m2 = 0");
  double total = 0.0;
  for (const auto& e : plan.entries) {
    const VertexSet& x = plan.left_support[e.left];
    const VertexSet& y = plan.right_support[e.right];
    double d = static_cast<double>(x.size()) / a2 + static_cast<double>(y.size()) / b2 -
               2.0 * static_cast<double>(x.intersection_size(y)) / std::sqrt(a2 * b2);
    total += to_double(e.mass) * d;
  }
  return std::sqrt(std::max(0.0, total));
}

template double w2_upper_from_coupling(const BasicTransportPlan<double>&);
template double w2_upper_from_coupling(const BasicTransportPlan<Rational>&);

template <class P>
BasicTransportPlan<P> make_plan(std::vector<VertexSet> left, std::vector<VertexSet> right,
                                std::vector<PlanEntry<P>> entries) {
  BasicTransportPlan<P> plan;
  plan.left_mass.assign(left.size(), P(0));
  plan.right_mass.assign(right.size(), P(0));
  P overlap = 0;
  for (const auto& e : entries) {
    plan.left_mass.at(e.left) += e.mass;
    plan.right_mass.at(e.right) += e.mass;
    overlap += e.mass * P(static_cast<long>(left[e.left].intersection_size(right[e.right])));
  }
  plan.left_support = std::move(left);
  plan.right_support = std::move(right);
  plan.entries = std::move(entries);
  plan.expected_overlap = overlap;
  double w = w2_upper_from_coupling(plan);
  plan.cost = w * w;
  return plan;
}

template BasicTransportPlan<double> make_plan(std::vector<VertexSet>, std::vector<VertexSet>,
                                              std::vector<PlanEntry<double>>);
template BasicTransportPlan<Rational> make_plan(std::vector<VertexSet>, std::vector<VertexSet>,
                                                std::vector<PlanEntry<Rational>>);

TransportPlan product_plan(const ExactMeasure& mu, const ExactMeasure& nu) {
  std::vector<PlanEntry<double>> entries;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      entries.push_back({i, j, mu.probs[i] * nu.probs[j]});
    }
  }
  return make_plan(mu.support, nu.support, std::move(entries));
}

TransportPlan identity_plan(const ExactMeasure& mu) {
  std::vector<PlanEntry<double>> entries;
  for (std::size_t i = 0; i < mu.size(); ++i) entries.push_back({i, i, mu.probs[i]});
  return make_plan(mu.support, mu.support, std::move(entries));
}

MixtureBound mixture_coupling_bound(const std::vector<double>& weights,
                                    const std::vector<TransportPlan>& plans) {
  if (weights.size() != plans.size()) {
    throw ContractViolation("mixture_coupling_bound: weights and plans differ in length");
  }
  double a2 = 0.0;
  double b2 = 0.0;
  for (std::size_t c = 0; c < plans.size(); ++c) {
    for (const auto& e : plans[c].entries) {
      a2 += weights[c] * e.mass * static_cast<double>(plans[c].left_support[e.left].size());
      b2 += weights[c] * e.mass * static_cast<double>(plans[c].right_support[e.right].size());
    }
  }
  if (a2 == 0.0 || b2 == 0.0) throw DegenerateNormalization("mixture bound: m2 = 0");
  MixtureBound out;
  for (std::size_t c = 0; c < plans.size(); ++c) {
    double cost = 0.0;
    for (const auto& e : plans[c].entries) {
      const VertexSet& x = plans[c].left_support[e.left];
      const VertexSet& y = plans[c].right_support[e.right];
      cost += e.mass * (static_cast<double>(x.size()) / a2 + static_cast<double>(y.size()) / b2 -
                        2.0 * static_cast<double>(x.intersection_size(y)) / std::sqrt(a2 * b2));
    }
    out.components.push_back(cost);
    out.bound += weights[c] * cost;
  }
  return out;
}

ExactMeasure empirical_measure(std::size_t universe, const std::vector<VertexSet>& draws) {
  std::map<VertexSet, std::size_t> counts;
  for (const auto& s : draws) ++counts[s];
  ExactMeasure mu{universe, {}, {}};
  for (const auto& [s, c] : counts) {
    mu.support.push_back(s);
    mu.probs.push_back(static_cast<double>(c) / static_cast<double>(draws.size()));
  }
  return mu;
}

ExactMeasure empirical_measure(const SampleBatch& batch) {
  std::vector<VertexSet> draws;
  for (const auto& r : batch.records) {
    if (r.success()) draws.push_back(*r.set);
  }
  return empirical_measure(batch.n, draws);
}

namespace {

double mean_size(const std::vector<VertexSet>& sets) {
  double total = 0.0;
  for (const auto& s : sets) total += static_cast<double>(s.size());
  return sets.empty() ? 0.0 : total / static_cast<double>(sets.size());
}

double assignment_w2(std::size_t universe, const std::vector<VertexSet>& xs,
                     const std::vector<VertexSet>& ys, double a2, double b2) {
  ExactMeasure mu = empirical_measure(universe, xs);
  ExactMeasure nu = empirical_measure(universe, ys);
  TransportProblem<double> problem{mu.probs, nu.probs, [&](std::size_t i, std::size_t j) {
                                     return -static_cast<std::int64_t>(
                                         mu.support[i].intersection_size(nu.support[j]));
                                   }};
  double overlap = -solve_transport(problem).objective;
  double cost = mean_size(xs) / a2 + mean_size(ys) / b2 - 2.0 * overlap / std::sqrt(a2 * b2);
  return std::sqrt(std::max(0.0, cost));
}

}  // namespace

W2Estimate w2_empirical(const SampleBatch& a, const SampleBatch& b, std::size_t m,
                        std::size_t bootstrap_reps, std::uint64_t seed, double confidence) {
  std::vector<VertexSet> xs;
  std::vector<VertexSet> ys;
  for (const auto& r : a.records) {
    if (r.success()) xs.push_back(*r.set);
  }
  for (const auto& r : b.records) {
    if (r.success()) ys.push_back(*r.set);
  }
  if (xs.empty() || ys.empty()) throw ContractViolation("w2_empirical: empty batch");
  double a2 = mean_size(xs);
  double b2 = mean_size(ys);
  if (a2 == 0.0 || b2 == 0.0) throw DegenerateNormalization("w2_empirical: m2 = 0");
  m = std::min({m, xs.size(), ys.size()});
  if (m == 0) throw ContractViolation("w2_empirical: pairing budget must be positive");
  xs.resize(m);
  ys.resize(m);

  W2Estimate out;
  out.pairs = m;
  out.bootstrap_reps = bootstrap_reps;
  out.value = assignment_w2(a.n, xs, ys, a2, b2);
  out.ci_low = out.ci_high = out.value;
  if (bootstrap_reps == 0) return out;

  Rng rng = make_rng(seed);
  std::vector<double> reps;
  std::vector<VertexSet> bx(m, VertexSet(a.n));
  std::vector<VertexSet> by(m, VertexSet(b.n));
  for (std::size_t r = 0; r < bootstrap_reps; ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      bx[i] = xs[uniform_below(rng, m)];
      by[i] = ys[uniform_below(rng, m)];
    }
    reps.push_back(assignment_w2(a.n, bx, by, a2, b2));
  }
  std::sort(reps.begin(), reps.end());
  double tail = (1.0 - confidence) / 2.0;
  auto quantile = [&](double q) {
    std::size_t idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(reps.size() - 1)));
    return reps[std::min(idx, reps.size() - 1)];
  };
  out.ci_low = quantile(tail);
  out.ci_high = quantile(1.0 - tail);
  return out;
}

void write_plan_json(std::ostream& out, const TransportPlan& plan,
                     const std::string& context_json) {
  nlohmann::json j;
  for (const auto& s : plan.left_support) j["left_support"].push_back(s.to_hex());
  for (const auto& s : plan.right_support) j["right_support"].push_back(s.to_hex());
  j["left_mass"] = plan.left_mass;
  j["right_mass"] = plan.right_mass;
  for (const auto& e : plan.entries) j["entries"].push_back({e.left, e.right, e.mass});
  j["expected_overlap"] = plan.expected_overlap;
  j["cost"] = plan.cost;
  j["context"] = context_json.empty() ? nlohmann::json::object()
                                      : nlohmann::json::parse(context_json);
  out << j.dump(2) << '\n';
}

}  // namespace hardcore
