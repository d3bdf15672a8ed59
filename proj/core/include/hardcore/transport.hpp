#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "hardcore/measures.hpp"
#include "hardcore/rational.hpp"
#include "hardcore/samplers.hpp"
#include "hardcore/vertex_set.hpp"

namespace hardcore {

template <class P>
struct PlanEntry {
  std::size_t left = 0;
  std::size_t right = 0;
  P mass{};
};

// Balanced transportation problem with integer costs. Supplies and demands
// must have equal totals (exactly for Rational; for double the demands are
// rescaled to the supply total).
template <class P>
struct TransportProblem {
  std::vector<P> supply;
  std::vector<P> demand;
  std::function<std::int64_t(std::size_t, std::size_t)> cost;
};

template <class P>
struct TransportSolution {
  std::vector<PlanEntry<P>> entries;  // nonzero cells of an optimal basis
  P objective{};                      // sum of mass * cost
  std::uint64_t pivots = 0;
};

// Transportation network simplex: north-west corner start, Dantzig pricing,
// Bland's rule after a run of degenerate pivots. Costs are integers, so the
// dual potentials are exact in both scalar modes.
template <class P>
TransportSolution<P> solve_transport(const TransportProblem<P>& problem);

// Independent oracle: enumerates every basic feasible solution (spanning-tree
// bases of the transportation polytope) exactly. Supports of size <= 4 each.
Rational brute_force_transport(const TransportProblem<Rational>& problem);

// A coupling between two finitely supported measures, with the normalized
// squared-distance cost ||x/m2(mu) - y/m2(nu)||^2.
template <class P>
struct BasicTransportPlan {
  std::vector<VertexSet> left_support;
  std::vector<VertexSet> right_support;
  std::vector<P> left_mass;
  std::vector<P> right_mass;
  std::vector<PlanEntry<P>> entries;
  P expected_overlap{};  // E_plan |X ∩ Y|
  double cost = 0.0;     // normalized squared distance
};
using TransportPlan = BasicTransportPlan<double>;
using RationalTransportPlan = BasicTransportPlan<Rational>;

template <class P>
struct W2Result {
  double value = 0.0;  // sqrt of the optimal normalized cost
  BasicTransportPlan<P> plan;
};

// Optimal normalized 2-Wasserstein distance. Because ||1_S||^2 = |S|, the cost
// equals |x|/a^2 + |y|/b^2 - 2|x∩y|/(ab), whose first two terms are fixed by
// the marginals: the optimum maximizes the expected overlap and
// w2^2 = 2 - 2 E|X∩Y| / (ab). Throws DegenerateNormalization if a or b is 0.
W2Result<double> w2_exact(const ExactMeasure& mu, const ExactMeasure& nu);
W2Result<Rational> w2_exact(const RationalMeasure& mu, const RationalMeasure& nu);

// Brute-force W2 via brute_force_transport (supports of size <= 4).
double w2_brute_force(const RationalMeasure& mu, const RationalMeasure& nu);

// Minimum disagreement probability P(X != Y) over couplings (0/1 cost).
double min_disagreement(const ExactMeasure& mu, const ExactMeasure& nu);
Rational min_disagreement(const RationalMeasure& mu, const RationalMeasure& nu);

// Cost of an explicit coupling, normalized by the m2 values of its marginals.
// Any coupling's value upper-bounds w2_exact.
template <class P>
double w2_upper_from_coupling(const BasicTransportPlan<P>& plan);

// Plan built from explicit entries over given supports; marginals are taken
// from the entries.
template <class P>
BasicTransportPlan<P> make_plan(std::vector<VertexSet> left, std::vector<VertexSet> right,
                                std::vector<PlanEntry<P>> entries);

// Independent (product) coupling.
TransportPlan product_plan(const ExactMeasure& mu, const ExactMeasure& nu);
TransportPlan identity_plan(const ExactMeasure& mu);

// Mixture coupling: component c couples mu_c with nu_c; the weighted union
// couples sum_c w_c mu_c with sum_c w_c nu_c. Returns the sum over c of
// w_c times the cost of plan c, all evaluated with the normalizers a, b of
// the mixed measures (a common cost function), which is the cost of the
// mixed coupling and hence an upper bound on W2^2 of the mixtures.
struct MixtureBound {
  double bound = 0.0;              // upper bound on W2^2
  std::vector<double> components;  // per-component costs (same normalizers)
};
MixtureBound mixture_coupling_bound(const std::vector<double>& weights,
                                    const std::vector<TransportPlan>& plans);

// Empirical measure of the successful draws of a batch.
ExactMeasure empirical_measure(const SampleBatch& batch);
ExactMeasure empirical_measure(std::size_t universe, const std::vector<VertexSet>& draws);

struct W2Estimate {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t pairs = 0;
  std::size_t bootstrap_reps = 0;
};

// Exact optimal assignment between the first m successful draws of each batch
// (normalizers from the full batches), solved as transport between the two
// m-point empirical measures. Percentile bootstrap CI over resampled pairs.
W2Estimate w2_empirical(const SampleBatch& a, const SampleBatch& b, std::size_t m,
                        std::size_t bootstrap_reps = 200, std::uint64_t seed = 0,
                        double confidence = 0.95);

void write_plan_json(std::ostream& out, const TransportPlan& plan, const std::string& context_json);

}  // namespace hardcore
