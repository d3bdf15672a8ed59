#include "hardcore/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hardcore/errors.hpp"
#include "hardcore/parallel.hpp"
#include "hardcore/random.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

RunRecord success_record(VertexSet s, std::uint64_t steps, const TrajectoryStats& stats,
                         std::uint64_t seed) {
  return RunRecord{Outcome::kSuccess, std::move(s), steps, stats, seed};
}

RunRecord fail_record(std::uint64_t steps, const TrajectoryStats& stats, std::uint64_t seed) {
  return RunRecord{Outcome::kFail, std::nullopt, steps, stats, seed};
}

// `forced` (optional) supplies the vertex used for the i-th addition while no
// drop has occurred; see coupled_run.
RunRecord glauber_core(const Graph& g, const GlauberParams& params, std::uint64_t seed,
                       const std::vector<Vertex>* forced) {
  const std::size_t n = g.order();
  if (params.horizon < 1) throw ContractViolation("Glauber horizon must be >= 1");
  if (params.target_size > n) throw ContractViolation("Glauber target size exceeds n");
  TrajectoryStats stats;
  VertexSet state(n);
  if (params.target_size == 0) return success_record(state, 0, stats, seed);

  Rng rng = make_rng(seed);
  const double add_prob = params.lambda / (1.0 + params.lambda);
  const double drop_prob = 1.0 / (1.0 + params.lambda);
  std::vector<std::uint32_t> blockers(n, 0);
  bool diverged = false;

  auto add = [&](Vertex v) {
    state.insert(v);
    g.neighbors(v).for_each([&](Vertex w) { ++blockers[w]; });
    ++stats.adds;
  };

  for (std::uint64_t t = 1; t <= params.horizon; ++t) {
    Vertex v = static_cast<Vertex>(uniform_below(rng, n));
    double coin = uniform01(rng);
    if (state.contains(v)) {
      if (coin < drop_prob) {
        state.erase(v);
        g.neighbors(v).for_each([&](Vertex w) { --blockers[w]; });
        ++stats.drops;
        diverged = true;
      }
    } else if (blockers[v] > 0) {
      ++stats.blocked;
    } else if (coin < add_prob) {
      if (forced != nullptr && !diverged && state.size() < forced->size()) {
        add((*forced)[state.size()]);
      } else {
        add(v);
      }
    }
    if (state.size() == params.target_size) return success_record(state, t, stats, seed);
  }
  return fail_record(params.horizon, stats, seed);
}

RunRecord greedy_core(const Graph& g, std::size_t s, std::uint64_t seed,
                      std::vector<Vertex>* order) {
  const std::size_t n = g.order();
  if (s > n) throw ContractViolation("greedy target size exceeds n");
  Rng rng = make_rng(seed);
  TrajectoryStats stats;
  VertexSet state(n);
  VertexSet available = VertexSet::full(n);
  for (std::size_t i = 0; i < s; ++i) {
    if (available.empty()) return fail_record(i, stats, seed);
    Vertex v = available.nth(uniform_below(rng, available.size()));
    state.insert(v);
    available.erase(v);
    available.subtract(g.neighbors(v));
    ++stats.adds;
    if (order != nullptr) order->push_back(v);
  }
  return success_record(state, s, stats, seed);
}

VertexSet uniform_subset(const VertexSet& s, std::size_t k, Rng& rng) {
  std::vector<Vertex> verts = s.vertices();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + uniform_below(rng, verts.size() - i);
    std::swap(verts[i], verts[j]);
  }
  return VertexSet::of(s.universe(), std::span<const Vertex>(verts.data(), k));
}

std::size_t draw_index(const std::vector<double>& weights, Rng& rng) {
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = uniform01(rng) * total;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (u < weights[k]) return k;
    u -= weights[k];
  }
  for (std::size_t k = weights.size(); k-- > 0;) {
    if (weights[k] > 0) return k;
  }
  throw ContractViolation("size law has no mass");
}

RunRecord pipeline_draw(const Graph& g, const PipelineSampler& spec, std::uint64_t seed) {
  const std::size_t n = g.order();
  std::uint64_t horizon =
      spec.horizon != 0 ? spec.horizon : GlauberParams::default_horizon(n, spec.k_minus);
  RunRecord base = spec.base == PipelineBase::kGlauber
                       ? glauber_run(g, {spec.k_minus, horizon, 1.0}, derive_seed(seed, "base"))
                       : greedy_run(g, spec.k_minus, derive_seed(seed, "base"));
  Rng rng = make_rng(derive_seed(seed, "extend"));
  std::size_t target = draw_index(spec.size_law, rng);
  std::uint64_t ext_seed = derive_seed(seed, "completion");

  std::optional<VertexSet> result;
  if (base.success()) {
    const VertexSet& s = *base.set;
    if (target < s.size()) {
      result = uniform_subset(s, target, rng);
    } else {
      result = extend_uniform(g, s, target, ext_seed, spec.completion_budget);
    }
  }
  if (!result && spec.fallback == PipelineFallback::kUniformLevel) {
    result = extend_uniform(g, VertexSet(n), target, derive_seed(ext_seed, "fallback"),
                            spec.completion_budget);
  }
  if (!result) return fail_record(base.steps_used, base.stats, seed);
  return success_record(std::move(*result), base.steps_used, base.stats, seed);
}

}  // namespace

std::uint64_t GlauberParams::default_horizon(std::size_t n, std::size_t s) {
  double logn = n > 1 ? lg(static_cast<double>(n)) : 0.0;
  double t = std::ceil(100.0 * std::exp2(static_cast<double>(s)) * logn);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(t));
}

RunRecord glauber_run(const Graph& g, const GlauberParams& params, std::uint64_t seed) {
  return glauber_core(g, params, seed, nullptr);
}

RunRecord greedy_run(const Graph& g, std::size_t s, std::uint64_t seed) {
  return greedy_core(g, s, seed, nullptr);
}

CoupledRecord coupled_run(const Graph& g, std::size_t s, std::uint64_t horizon,
                          std::uint64_t seed) {
  std::vector<Vertex> order;
  CoupledRecord out;
  out.greedy = greedy_core(g, s, derive_seed(seed, "greedy"), &order);
  out.glauber = glauber_core(g, {s, horizon, 1.0}, derive_seed(seed, "glauber"), &order);
  out.agreed = out.greedy.success() && out.glauber.success() && *out.greedy.set == *out.glauber.set;
  return out;
}

std::optional<VertexSet> extend_uniform(const Graph& g, const VertexSet& s, std::size_t target_k,
                                        std::uint64_t seed, std::uint64_t budget) {
  if (s.size() > target_k) throw ContractViolation("extend_uniform: |s| exceeds target size");
  std::size_t ell = target_k - s.size();
  VertexSet cand = up_set(g, s);
  std::uint64_t count = count_independent_subsets_capped(g, cand, ell, budget);
  if (count == 0) return std::nullopt;
  if (count > budget) throw BudgetExceeded("extend_uniform completions", count, budget);
  Rng rng = make_rng(seed);
  VertexSet out = completion_at(g, s, ell, uniform_below(rng, count));
  out |= s;
  return out;
}

std::size_t size_from_constant(std::size_t n, double C) {
  if (C < 7.0) throw ContractViolation("size constant C must be >= 7");
  if (n < 4) return 0;
  double l = lg(static_cast<double>(n));
  double x = l - C * lg(l);
  if (x <= 0) return 0;
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

MeasureSampler measure_sampler(const ExactMeasure& mu) {
  MeasureSampler out;
  out.support = mu.support;
  double acc = 0.0;
  for (double p : mu.probs) {
    acc += p;
    out.cdf.push_back(acc);
  }
  return out;
}

RunRecord draw(const Graph& g, const SamplerSpec& spec, std::uint64_t seed) {
  return std::visit(
      [&](const auto& s) -> RunRecord {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GlauberSampler>) {
          return glauber_run(g, s.params, seed);
        } else if constexpr (std::is_same_v<T, GreedySampler>) {
          return greedy_run(g, s.size, seed);
        } else if constexpr (std::is_same_v<T, PipelineSampler>) {
          return pipeline_draw(g, s, seed);
        } else {
          Rng rng = make_rng(seed);
          double u = uniform01(rng) * s.cdf.back();
          auto it = std::upper_bound(s.cdf.begin(), s.cdf.end(), u);
          std::size_t i = std::min<std::size_t>(it - s.cdf.begin(), s.support.size() - 1);
          return success_record(s.support[i], 0, {}, seed);
        }
      },
      spec);
}

std::string describe(const SamplerSpec& spec) {
  nlohmann::json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GlauberSampler>) {
          j = {{"kind", "glauber"}, {"target_size", s.params.target_size},
               {"horizon", s.params.horizon}, {"lambda", s.params.lambda}};
        } else if constexpr (std::is_same_v<T, GreedySampler>) {
          j = {{"kind", "greedy"}, {"size", s.size}};
        } else if constexpr (std::is_same_v<T, PipelineSampler>) {
          j = {{"kind", "pipeline"},
               {"base", s.base == PipelineBase::kGlauber ? "glauber" : "greedy"},
               {"k_minus", s.k_minus},
               {"horizon", s.horizon},
               {"size_law", s.size_law},
               {"fallback", s.fallback == PipelineFallback::kUniformLevel ? "uniform_level" : "fail"}};
        } else {
          j = {{"kind", "exact"}, {"support_size", s.support.size()}};
        }
      },
      spec);
  return j.dump();
}

std::size_t SampleBatch::successes() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return r.success(); }));
}

double SampleBatch::fail_rate() const {
  if (records.empty()) return 0.0;
  return 1.0 - static_cast<double>(successes()) / static_cast<double>(records.size());
}

SampleBatch sample_batch(const Graph& g, const SamplerSpec& spec, std::size_t trials,
                         std::uint64_t master_seed, std::size_t parallelism) {
  SampleBatch batch;
  batch.n = g.order();
  batch.graph_hash = g.hash();
  batch.sampler = describe(spec);
  batch.master_seed = master_seed;
  batch.records.resize(trials);
  parallel_for(trials, parallelism, [&](std::size_t i) {
    batch.records[i] = draw(g, spec, derive_seed(master_seed, i));
  });
  return batch;
}

void write_batch_csv(std::ostream& out, const SampleBatch& batch) {
  out << "trial,seed,outcome,steps,set_bits_hex\n";
  for (std::size_t i = 0; i < batch.records.size(); ++i) {
    const RunRecord& r = batch.records[i];
    out << i << ',' << r.seed << ',' << (r.success() ? "SUCCESS" : "FAIL") << ',' << r.steps_used
        << ',' << (r.success() ? r.set->to_hex() : "") << '\n';
  }
}

SampleBatch read_batch_csv(std::istream& in, std::size_t n) {
  std::string line;
  if (!std::getline(in, line) || line != "trial,seed,outcome,steps,set_bits_hex") {
    throw std::runtime_error("batch csv: bad header");
  }
  SampleBatch batch;
  batch.n = n;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 5) throw std::runtime_error("batch csv: bad row '" + line + "'");
    RunRecord r;
    r.seed = std::stoull(cells[1]);
    r.steps_used = std::stoull(cells[3]);
    if (cells[2] == "SUCCESS") {
      r.outcome = Outcome::kSuccess;
      r.set = VertexSet::from_hex(n, cells[4]);
    } else if (cells[2] != "FAIL") {
      throw std::runtime_error("batch csv: bad outcome '" + cells[2] + "'");
    }
    batch.records.push_back(std::move(r));
  }
  return batch;
}

void write_batch_sidecar(std::ostream& out, const SampleBatch& batch,
                         const std::string& parameters_json) {
  nlohmann::json j;
  j["n"] = batch.n;
  j["graph_hash"] = batch.graph_hash;
  j["sampler"] = nlohmann::json::parse(batch.sampler);
  j["master_seed"] = batch.master_seed;
  j["trials"] = batch.records.size();
  j["parameters"] = parameters_json.empty() ? nlohmann::json::object()
                                            : nlohmann::json::parse(parameters_json);
  out << j.dump(2) << '\n';
}

ProfileEstimate estimate_size_profile(const Graph& g, std::size_t k_minus,
                                      std::size_t samples_per_level, std::uint64_t seed,
                                      std::uint64_t completion_budget) {
  const std::size_t n = g.order();
  ProfileEstimate out;
  out.log2_z.push_back(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    std::size_t got = 0;
    for (std::size_t i = 0; i < samples_per_level; ++i) {
      std::uint64_t trial_seed = derive_seed(derive_seed(seed, k), i);
      std::optional<VertexSet> s;
      if (k <= k_minus) {
        RunRecord r = greedy_run(g, k, trial_seed);
        if (r.success()) s = std::move(r.set);
      } else {
        RunRecord r = greedy_run(g, k_minus, trial_seed);
        if (r.success()) {
          s = extend_uniform(g, *r.set, k, derive_seed(trial_seed, "extend"), completion_budget);
        }
      }
      if (!s) continue;
      sum += static_cast<double>(up_degree(g, *s));
      ++got;
    }
    if (got == 0 || sum == 0.0) break;
    double ratio = sum / static_cast<double>(got) / static_cast<double>(k + 1);
    out.log2_z.push_back(out.log2_z.back() + std::log2(ratio));
  }
  double top = *std::max_element(out.log2_z.begin(), out.log2_z.end());
  double total = 0.0;
  for (double l : out.log2_z) {
    out.law.push_back(std::exp2(l - top));
    total += out.law.back();
  }
  for (double& p : out.law) p /= total;
  return out;
}

std::vector<double> exact_size_law(const Graph& g, std::uint64_t budget) {
  Enumeration e = enumerate_independent_sets(g, std::nullopt, budget);
  std::vector<double> law;
  for (std::uint64_t z : e.profile.zk) {
    law.push_back(static_cast<double>(z) / static_cast<double>(e.profile.partition));
  }
  return law;
}

}  // namespace hardcore
