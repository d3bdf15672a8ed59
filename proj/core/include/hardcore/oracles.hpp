#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hardcore/graph.hpp"
#include "hardcore/measures.hpp"
#include "hardcore/rational.hpp"
#include "hardcore/samplers.hpp"
#include "hardcore/stats.hpp"

namespace hardcore {

// Row-stochastic operator from `from` states to `to` states, stored as sparse
// rows. Square operators have from == to.
template <class P>
struct BasicTransition {
  std::vector<VertexSet> from;
  std::vector<VertexSet> to;
  std::vector<std::vector<std::pair<std::size_t, P>>> rows;

  P at(std::size_t i, std::size_t j) const {
    for (const auto& [c, p] : rows[i]) {
      if (c == j) return p;
    }
    return P(0);
  }
};
using TransitionOperator = BasicTransition<Rational>;

// Single-step Glauber kernel over all independent sets (no stopping), states
// in enumeration order (same order as hardcore_measure).
TransitionOperator exact_glauber_kernel(const Graph& g, const Rational& lambda,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

// Largest |row sum - 1| (zero for an exactly stochastic operator).
Rational stochasticity_defect(const TransitionOperator& p);

struct BalanceReport {
  bool holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (x, y) violating pair
};

// mu(x) P(x,y) == mu(y) P(y,x) for all x, y, exactly. mu is indexed like p.from.
BalanceReport check_detailed_balance(const TransitionOperator& p, const std::vector<Rational>& mu);

// (mu P)(j) = sum_i mu(i) P(i, j).
std::vector<Rational> push_forward(const std::vector<Rational>& mu, const TransitionOperator& p);

// P'(i, j) = P(j, i) mu(j) / (mu P)(i). Rows with (mu P)(i) = 0 are left empty.
TransitionOperator time_reversal(const TransitionOperator& p, const std::vector<Rational>& mu);

struct ReversalReport {
  bool preserves = true;      // mu P P' == mu
  bool support_clause = true; // P(j, i) == 0  =>  P'(i, j) == 0
  std::optional<std::size_t> witness_state;
};
ReversalReport check_time_reversal(const TransitionOperator& p, const TransitionOperator& p_prime,
                                   const std::vector<Rational>& mu);

// Output law of a sampler: a sub-probability over successful sets plus the
// FAIL mass.
template <class P>
struct OutcomeLaw {
  std::size_t universe = 0;
  std::vector<VertexSet> sets;
  std::vector<P> probs;
  P fail{};

  P success_mass() const {
    P t = 0;
    for (const auto& p : probs) t += p;
    return t;
  }
  // Law of the output conditioned on SUCCESS.
  BasicMeasure<P> success_measure() const {
    P mass = success_mass();
    if (ScalarTraits<P>::is_zero(mass)) throw EmptyEvent("sampler never succeeds");
    BasicMeasure<P> mu{universe, sets, probs};
    for (auto& p : mu.probs) p /= mass;
    return mu;
  }
};

// Exact law of glauber_run by dense propagation over independent sets of size
// < s for T steps, size-s states absorbing.
OutcomeLaw<double> exact_stopped_glauber(const Graph& g, std::size_t s, std::uint64_t horizon,
                                         double lambda = 1.0,
                                         std::uint64_t budget = kDefaultEnumerationBudget);
OutcomeLaw<Rational> exact_stopped_glauber_rational(const Graph& g, std::size_t s,
                                                    std::uint64_t horizon, const Rational& lambda,
                                                    std::uint64_t budget =
                                                        kDefaultEnumerationBudget);

// Exact law of greedy_run: from S each compatible vertex is added w.p. 1/updeg(S).
OutcomeLaw<Rational> exact_greedy_law(const Graph& g, std::size_t s,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

// Probability that greedy_run outputs S, i.e. the sum over the |S|! insertion
// orders of prod 1/updeg(prefix). Computed by a recursion over subsets of S.
double greedy_set_probability(const Graph& g, const VertexSet& s);
// Same quantity by explicit summation over all insertion orders (oracle).
double greedy_set_probability_by_permutations(const Graph& g, const VertexSet& s);

// Bipartite extension graph H between independent k_minus-sets (L) and
// independent k-sets (R) under containment.
struct ExtensionWalk {
  std::vector<VertexSet> left;
  std::vector<VertexSet> right;
  TransitionOperator p;                  // L -> R, uniform over extensions
  std::vector<Rational> mu_left_h;       // degree-proportional law on L
  std::vector<Rational> greedy_left;     // greedy output law on L (given SUCCESS)
  TransitionOperator p_prime;            // reversal of p w.r.t. greedy_left
  std::vector<std::size_t> isolated;     // L states with no extension
};
ExtensionWalk extension_walk(const Graph& g, std::size_t k_minus, std::size_t k,
                             std::uint64_t budget = kDefaultEnumerationBudget);

// Exact output law of a PipelineSampler (base sampler, size draw, uniform
// extension or subset, fallback) as an ExactMeasure; FAIL mass is returned
// separately.
OutcomeLaw<double> exact_pipeline_law(const Graph& g, const PipelineSampler& spec,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

// Chi-square goodness of fit of sampler records against an exact law (FAIL is
// one category). Any observed set outside the law's support fails outright.
ChiSquareResult compare_to_law(const std::vector<RunRecord>& records, const OutcomeLaw<double>& law,
                               double alpha = 0.01);

// E[ell-updeg(S)] for a fixed independent k_minus-set S in G(n, 1/2) with the
// pairs inside S removed: C(n - k_minus, ell) 2^{-ell k_minus - C(ell, 2)}.
Rational ell_updeg_mean(std::size_t n, std::size_t k_minus, std::size_t ell);

struct MomentProbeReport {
  std::size_t n = 0;
  std::size_t k_minus = 0;
  std::size_t ell = 0;
  std::size_t graph_seeds = 0;
  double closed_form_mean = 0.0;
  double empirical_mean = 0.0;
  double empirical_sd = 0.0;
  double stderr = 0.0;
  double z_score = 0.0;
  double relative_spread = 0.0;  // empirical_sd / closed_form_mean
};

// ell-up-degree of S = {0, .., k_minus - 1} across seeded graphs in which S is
// made independent.
MomentProbeReport ell_updeg_moment_probe(std::size_t n, std::size_t k_minus, std::size_t ell,
                                         std::size_t graph_seeds, std::uint64_t seed,
                                         std::size_t parallelism = 1);

// JSON report {check_name, parameters, verdict, counterexample?}.
void write_oracle_json(std::ostream& out, const std::string& check_name,
                       const std::string& parameters_json, bool verdict,
                       const std::optional<std::string>& counterexample_json);

}  // namespace hardcore
