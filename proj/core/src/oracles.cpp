#include "hardcore/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "hardcore/errors.hpp"
#include "hardcore/parallel.hpp"
#include "hardcore/random.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

using Index = std::unordered_map<VertexSet, std::size_t, VertexSetHash>;

Index index_of(const std::vector<VertexSet>& sets) {
  Index idx;
  idx.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) idx.emplace(sets[i], i);
  return idx;
}

template <class P>
void add_entry(std::vector<std::pair<std::size_t, P>>& row, std::size_t col, const P& p) {
  for (auto& [c, q] : row) {
    if (c == col) {
      q += p;
      return;
    }
  }
  row.emplace_back(col, p);
}

// Transitions of one Glauber step from state s: (target, probability) pairs
// with `self` collecting the mass that stays put.
template <class P>
void glauber_moves(const Graph& g, const VertexSet& s, const P& lambda,
                   std::vector<std::pair<VertexSet, P>>& moves, P& self) {
  const std::size_t n = g.order();
  P pick = P(1) / P(static_cast<long>(n));
  P add = lambda / (P(1) + lambda);
  P drop = P(1) / (P(1) + lambda);
  moves.clear();
  self = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (s.contains(v)) {
      VertexSet t = s;
      t.erase(v);
      moves.emplace_back(std::move(t), pick * drop);
      self += pick * add;
    } else if (g.neighbors(v).intersects(s)) {
      self += pick;
    } else {
      VertexSet t = s;
      t.insert(v);
      moves.emplace_back(std::move(t), pick * add);
      self += pick * drop;
    }
  }
}

template <class P>
OutcomeLaw<P> stopped_glauber_impl(const Graph& g, std::size_t s, std::uint64_t horizon,
                                   const P& lambda, std::uint64_t budget) {
  OutcomeLaw<P> law;
  law.universe = g.order();
  law.fail = 0;
  if (s == 0) {
    law.sets.push_back(VertexSet(g.order()));
    law.probs.push_back(P(1));
    return law;
  }
  if (horizon < 1) throw ContractViolation("exact_stopped_glauber: horizon must be >= 1");
  Enumeration e = enumerate_independent_sets(g, s, budget);
  std::vector<VertexSet> transient;
  for (const auto& t : e.sets) {
    if (t.size() < s) transient.push_back(t);
    if (t.size() == s) law.sets.push_back(t);
  }
  Index tidx = index_of(transient);
  Index aidx = index_of(law.sets);
  law.probs.assign(law.sets.size(), P(0));

  struct Move {
    bool absorbed;
    std::size_t target;
    P prob;
  };
  std::vector<std::vector<Move>> table(transient.size());
  std::vector<std::pair<VertexSet, P>> moves;
  P self;
  for (std::size_t i = 0; i < transient.size(); ++i) {
    glauber_moves(g, transient[i], lambda, moves, self);
    if (!ScalarTraits<P>::is_zero(self)) table[i].push_back({false, i, self});
    for (auto& [t, p] : moves) {
      if (t.size() == s) {
        table[i].push_back({true, aidx.at(t), p});
      } else {
        table[i].push_back({false, tidx.at(t), p});
      }
    }
  }

  std::vector<P> dist(transient.size(), P(0));
  std::vector<P> next(transient.size(), P(0));
  dist[tidx.at(VertexSet(g.order()))] = 1;
  for (std::uint64_t step = 0; step < horizon; ++step) {
    std::fill(next.begin(), next.end(), P(0));
    bool any = false;
    for (std::size_t i = 0; i < transient.size(); ++i) {
      if (ScalarTraits<P>::is_zero(dist[i])) continue;
      any = true;
      for (const auto& m : table[i]) {
        if (m.absorbed) {
          law.probs[m.target] += dist[i] * m.prob;
        } else {
          next[m.target] += dist[i] * m.prob;
        }
      }
    }
    std::swap(dist, next);
    if (!any) break;
  }
  law.fail = 0;
  for (const auto& p : dist) law.fail += p;
  return law;
}

}  // namespace

TransitionOperator exact_glauber_kernel(const Graph& g, const Rational& lambda,
                                        std::uint64_t budget) {
  Enumeration e = enumerate_independent_sets(g, std::nullopt, budget);
  TransitionOperator op;
  op.from = e.sets;
  op.to = e.sets;
  op.rows.resize(e.sets.size());
  Index idx = index_of(e.sets);
  std::vector<std::pair<VertexSet, Rational>> moves;
  Rational self;
  for (std::size_t i = 0; i < e.sets.size(); ++i) {
    glauber_moves(g, e.sets[i], lambda, moves, self);
    if (sgn(self) != 0) add_entry(op.rows[i], i, self);
    for (auto& [t, p] : moves) add_entry(op.rows[i], idx.at(t), p);
    std::sort(op.rows[i].begin(), op.rows[i].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return op;
}

Rational stochasticity_defect(const TransitionOperator& p) {
  Rational worst = 0;
  for (const auto& row : p.rows) {
    Rational sum = 0;
    for (const auto& [c, q] : row) sum += q;
    Rational d = abs(Rational(sum - 1));
    if (d > worst) worst = d;
  }
  return worst;
}

BalanceReport check_detailed_balance(const TransitionOperator& p,
                                     const std::vector<Rational>& mu) {
  if (mu.size() != p.from.size() || p.from.size() != p.to.size()) {
    throw ContractViolation("check_detailed_balance: operator must be square and match mu");
  }
  BalanceReport report;
  for (std::size_t x = 0; x < p.rows.size(); ++x) {
    for (const auto& [y, pxy] : p.rows[x]) {
      if (mu[x] * pxy != mu[y] * p.at(y, x)) {
        report.holds = false;
        report.witness = std::make_pair(x, y);
        return report;
      }
    }
  }
  return report;
}

std::vector<Rational> push_forward(const std::vector<Rational>& mu, const TransitionOperator& p) {
  if (mu.size() != p.from.size()) throw ContractViolation("push_forward: size mismatch");
  std::vector<Rational> out(p.to.size(), Rational(0));
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (sgn(mu[i]) == 0) continue;
    for (const auto& [j, q] : p.rows[i]) out[j] += mu[i] * q;
  }
  return out;
}

TransitionOperator time_reversal(const TransitionOperator& p, const std::vector<Rational>& mu) {
  std::vector<Rational> mu_p = push_forward(mu, p);
  TransitionOperator rev;
  rev.from = p.to;
  rev.to = p.from;
  rev.rows.resize(p.to.size());
  for (std::size_t j = 0; j < p.rows.size(); ++j) {
    for (const auto& [i, pji] : p.rows[j]) {
      if (sgn(mu_p[i]) == 0 || sgn(pji) == 0) continue;
      rev.rows[i].emplace_back(j, pji * mu[j] / mu_p[i]);
    }
  }
  return rev;
}

ReversalReport check_time_reversal(const TransitionOperator& p, const TransitionOperator& p_prime,
                                   const std::vector<Rational>& mu) {
  ReversalReport report;
  std::vector<Rational> back = push_forward(push_forward(mu, p), p_prime);
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (back[j] != mu[j]) {
      report.preserves = false;
      report.witness_state = j;
      break;
    }
  }
  for (std::size_t i = 0; i < p_prime.rows.size() && report.support_clause; ++i) {
    for (const auto& [j, q] : p_prime.rows[i]) {
      if (sgn(q) != 0 && sgn(p.at(j, i)) == 0) {
        report.support_clause = false;
        if (!report.witness_state) report.witness_state = i;
        break;
      }
    }
  }
  return report;
}

OutcomeLaw<double> exact_stopped_glauber(const Graph& g, std::size_t s, std::uint64_t horizon,
                                         double lambda, std::uint64_t budget) {
  return stopped_glauber_impl<double>(g, s, horizon, lambda, budget);
}

OutcomeLaw<Rational> exact_stopped_glauber_rational(const Graph& g, std::size_t s,
                                                    std::uint64_t horizon, const Rational& lambda,
                                                    std::uint64_t budget) {
  return stopped_glauber_impl<Rational>(g, s, horizon, lambda, budget);
}

OutcomeLaw<Rational> exact_greedy_law(const Graph& g, std::size_t s, std::uint64_t budget) {
  OutcomeLaw<Rational> law;
  law.universe = g.order();
  law.fail = 0;
  std::map<VertexSet, Rational> level{{VertexSet(g.order()), Rational(1)}};
  for (std::size_t i = 0; i < s; ++i) {
    std::map<VertexSet, Rational> next;
    for (const auto& [set, p] : level) {
      VertexSet up = up_set(g, set);
      if (up.empty()) {
        law.fail += p;
        continue;
      }
      Rational share = p / Rational(static_cast<long>(up.size()));
      up.for_each([&](Vertex v) {
        VertexSet t = set;
        t.insert(v);
        next[t] += share;
      });
      if (next.size() > budget) throw BudgetExceeded("exact_greedy_law states", next.size(), budget);
    }
    level = std::move(next);
  }
  for (auto& [set, p] : level) {
    law.sets.push_back(set);
    law.probs.push_back(p);
  }
  return law;
}

double greedy_set_probability(const Graph& g, const VertexSet& s) {
  if (!is_independent(g, s)) throw ContractViolation("greedy_set_probability: set not independent");
  std::vector<Vertex> verts = s.vertices();
  const std::size_t k = verts.size();
  if (k > 24) throw ContractViolation("greedy_set_probability: set too large");
  std::vector<double> f(std::size_t{1} << k, 0.0);
  f[0] = 1.0;
  for (std::size_t mask = 0; mask + 1 < f.size(); ++mask) {
    if (f[mask] == 0.0) continue;
    VertexSet prefix(g.order());
    for (std::size_t b = 0; b < k; ++b) {
      if (mask >> b & 1) prefix.insert(verts[b]);
    }
    double share = f[mask] / static_cast<double>(up_degree(g, prefix));
    for (std::size_t b = 0; b < k; ++b) {
      if (!(mask >> b & 1)) f[mask | (std::size_t{1} << b)] += share;
    }
  }
  return f.back();
}

double greedy_set_probability_by_permutations(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> order = s.vertices();
  double total = 0.0;
  do {
    VertexSet prefix(g.order());
    double prod = 1.0;
    for (Vertex v : order) {
      prod /= static_cast<double>(up_degree(g, prefix));
      prefix.insert(v);
    }
    total += prod;
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

ExtensionWalk extension_walk(const Graph& g, std::size_t k_minus, std::size_t k,
                             std::uint64_t budget) {
  if (k_minus > k) throw ContractViolation("extension_walk: k_minus exceeds k");
  Enumeration e = enumerate_independent_sets(g, k, budget);
  ExtensionWalk w;
  for (const auto& s : e.sets) {
    if (s.size() == k_minus) w.left.push_back(s);
    if (s.size() == k) w.right.push_back(s);
  }
  Index ridx = index_of(w.right);
  w.p.from = w.left;
  w.p.to = w.right;
  w.p.rows.resize(w.left.size());
  std::vector<std::uint64_t> degree(w.left.size(), 0);
  std::uint64_t total_degree = 0;
  for (std::size_t i = 0; i < w.left.size(); ++i) {
    std::vector<std::size_t> cols;
    for_each_completion(g, w.left[i], k - k_minus, [&](const VertexSet& t) {
      VertexSet r = t;
      r |= w.left[i];
      cols.push_back(ridx.at(r));
      return true;
    });
    degree[i] = cols.size();
    total_degree += cols.size();
    if (cols.empty()) {
      w.isolated.push_back(i);
      continue;
    }
    std::sort(cols.begin(), cols.end());
    Rational share(1, static_cast<unsigned long>(cols.size()));
    for (std::size_t c : cols) w.p.rows[i].emplace_back(c, share);
  }
  w.mu_left_h.assign(w.left.size(), Rational(0));
  if (total_degree > 0) {
    for (std::size_t i = 0; i < w.left.size(); ++i) {
      w.mu_left_h[i] = Rational(static_cast<long>(degree[i]), static_cast<unsigned long>(total_degree));
      w.mu_left_h[i].canonicalize();
    }
  }
  OutcomeLaw<Rational> greedy = exact_greedy_law(g, k_minus, budget);
  Rational mass = greedy.success_mass();
  Index lidx = index_of(w.left);
  w.greedy_left.assign(w.left.size(), Rational(0));
  if (sgn(mass) != 0) {
    for (std::size_t i = 0; i < greedy.sets.size(); ++i) {
      w.greedy_left[lidx.at(greedy.sets[i])] = greedy.probs[i] / mass;
    }
  }
  w.p_prime = time_reversal(w.p, w.greedy_left);
  return w;
}

OutcomeLaw<double> exact_pipeline_law(const Graph& g, const PipelineSampler& spec,
                                      std::uint64_t budget) {
  const std::size_t n = g.order();
  OutcomeLaw<double> base;
  if (spec.base == PipelineBase::kGlauber) {
    std::uint64_t horizon =
        spec.horizon != 0 ? spec.horizon : GlauberParams::default_horizon(n, spec.k_minus);
    base = exact_stopped_glauber(g, spec.k_minus, horizon, 1.0, budget);
  } else {
    OutcomeLaw<Rational> r = exact_greedy_law(g, spec.k_minus, budget);
    base.universe = r.universe;
    base.sets = r.sets;
    for (const auto& p : r.probs) base.probs.push_back(p.get_d());
    base.fail = r.fail.get_d();
  }
  Enumeration all = enumerate_independent_sets(g, std::nullopt, budget);
  std::vector<std::vector<VertexSet>> levels(all.profile.zk.size());
  for (const auto& s : all.sets) levels[s.size()].push_back(s);

  std::map<VertexSet, double> acc;
  double fail = 0.0;
  auto fallback = [&](std::size_t k, double mass) {
    if (spec.fallback == PipelineFallback::kUniformLevel && k < levels.size() &&
        !levels[k].empty()) {
      double share = mass / static_cast<double>(levels[k].size());
      for (const auto& s : levels[k]) acc[s] += share;
    } else {
      fail += mass;
    }
  };
  double law_total = std::accumulate(spec.size_law.begin(), spec.size_law.end(), 0.0);
  for (std::size_t k = 0; k < spec.size_law.size(); ++k) {
    double wk = spec.size_law[k] / law_total;
    if (wk == 0.0) continue;
    fallback(k, wk * base.fail);
    for (std::size_t b = 0; b < base.sets.size(); ++b) {
      double mass = wk * base.probs[b];
      if (mass == 0.0) continue;
      const VertexSet& s = base.sets[b];
      if (k < s.size()) {
        std::vector<Vertex> verts = s.vertices();
        std::vector<VertexSet> subsets;
        std::vector<char> pick(verts.size(), 0);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
        do {
          VertexSet t(n);
          for (std::size_t i = 0; i < verts.size(); ++i) {
            if (pick[i]) t.insert(verts[i]);
          }
          subsets.push_back(t);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        for (const auto& t : subsets) acc[t] += mass / static_cast<double>(subsets.size());
      } else {
        std::vector<VertexSet> ext;
        for_each_completion(g, s, k - s.size(), [&](const VertexSet& t) {
          VertexSet r = t;
          r |= s;
          ext.push_back(r);
          return true;
        });
        if (ext.empty()) {
          fallback(k, mass);
        } else {
          for (const auto& r : ext) acc[r] += mass / static_cast<double>(ext.size());
        }
      }
    }
  }
  OutcomeLaw<double> law;
  law.universe = n;
  for (const auto& [s, p] : acc) {
    law.sets.push_back(s);
    law.probs.push_back(p);
  }
  law.fail = fail;
  return law;
}

ChiSquareResult compare_to_law(const std::vector<RunRecord>& records, const OutcomeLaw<double>& law,
                               double alpha) {
  Index idx = index_of(law.sets);
  std::vector<std::uint64_t> observed(law.sets.size() + 1, 0);
  std::vector<double> probs = law.probs;
  probs.push_back(law.fail);
  for (const auto& r : records) {
    if (!r.success()) {
      ++observed.back();
      continue;
    }
    auto it = idx.find(*r.set);
    if (it == idx.end()) {
      ChiSquareResult bad;
      bad.statistic = INFINITY;
      bad.p_value = 0.0;
      bad.pass = false;
      return bad;
    }
    ++observed[it->second];
  }
  return chi_square_gof(observed, probs, alpha);
}

Rational ell_updeg_mean(std::size_t n, std::size_t k_minus, std::size_t ell) {
  if (k_minus > n) throw ContractViolation("ell_updeg_mean: k_minus exceeds n");
  Rational r(binomial(n - k_minus, ell));
  std::size_t exponent = ell * k_minus + ell * (ell == 0 ? 0 : ell - 1) / 2;
  BigInt denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, exponent);
  r /= Rational(denom);
  return r;
}

MomentProbeReport ell_updeg_moment_probe(std::size_t n, std::size_t k_minus, std::size_t ell,
                                         std::size_t graph_seeds, std::uint64_t seed,
                                         std::size_t parallelism) {
  if (k_minus > n) throw ContractViolation("ell_updeg_moment_probe: k_minus exceeds n");
  if (graph_seeds < 2) throw ContractViolation("ell_updeg_moment_probe: need >= 2 graph seeds");
  std::vector<Vertex> fixed(k_minus);
  std::iota(fixed.begin(), fixed.end(), Vertex{0});
  VertexSet s = VertexSet::of(n, std::span<const Vertex>(fixed));
  std::vector<double> values(graph_seeds);
  parallel_for(graph_seeds, parallelism, [&](std::size_t i) {
    Graph g = gen_gnp(n, 0.5, derive_seed(seed, i));
    for (Vertex u = 0; u < k_minus; ++u) {
      for (Vertex v = u + 1; v < k_minus; ++v) g.remove_edge(u, v);
    }
    values[i] = static_cast<double>(ell_up_degree(g, s, ell));
  });
  MomentProbeReport r;
  r.n = n;
  r.k_minus = k_minus;
  r.ell = ell;
  r.graph_seeds = graph_seeds;
  r.closed_form_mean = ell_updeg_mean(n, k_minus, ell).get_d();
  r.empirical_mean = mean(values);
  r.empirical_sd = std::sqrt(sample_variance(values));
  r.stderr = standard_error(values);
  r.z_score = r.stderr > 0 ? (r.empirical_mean - r.closed_form_mean) / r.stderr : 0.0;
  r.relative_spread = r.closed_form_mean > 0 ? r.empirical_sd / r.closed_form_mean : 0.0;
  return r;
}

void write_oracle_json(std::ostream& out, const std::string& check_name,
                       const std::string& parameters_json, bool verdict,
                       const std::optional<std::string>& counterexample_json) {
  nlohmann::json j;
  j["check_name"] = check_name;
  j["parameters"] = parameters_json.empty() ? nlohmann::json::object()
                                            : nlohmann::json::parse(parameters_json);
  j["verdict"] = verdict;
  if (counterexample_json) j["counterexample"] = nlohmann::json::parse(*counterexample_json);
  out << j.dump(2) << '\n';
}

}  // namespace hardcore
