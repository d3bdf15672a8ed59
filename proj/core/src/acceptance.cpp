#include "hardcore/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "hardcore/chaos.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/experiments.hpp"
#include "hardcore/lemmas.hpp"
#include "hardcore/measures.hpp"
#include "hardcore/oracles.hpp"
#include "hardcore/parallel.hpp"
#include "hardcore/random.hpp"
#include "hardcore/samplers.hpp"
#include "hardcore/stats.hpp"
#include "hardcore/transport.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

using nlohmann::json;

struct Verdict {
  bool pass = true;
  std::string detail;
  json parameters = json::object();
  json measured = json::object();
  std::optional<json> counterexample;
};

std::string fmt(double x) { return format_double(x); }

json set_json(const VertexSet& s) { return s.vertices(); }

Graph seeded_graph(std::uint64_t seed, const char* tag, std::size_t n, std::size_t index) {
  return gen_gnp(n, 0.5, derive_seed(derive_seed(derive_seed(seed, tag), n), index));
}

OutcomeLaw<double> to_double_law(const OutcomeLaw<Rational>& law) {
  OutcomeLaw<double> out;
  out.universe = law.universe;
  out.sets = law.sets;
  for (const auto& p : law.probs) out.probs.push_back(p.get_d());
  out.fail = law.fail.get_d();
  return out;
}

// ------------------------------------------------------------ criteria

Verdict detailed_balance(const AcceptanceOptions& o) {
  Verdict r;
  const std::size_t graphs = 20;
  std::size_t states = 0;
  for (std::size_t i = 0; i < graphs && r.pass; ++i) {
    std::size_t n = 3 + i % 6;
    Rational lambda = i % 2 == 0 ? Rational(1) : Rational(3, 2);
    Graph g = seeded_graph(o.seed, "detailed-balance", n, i);
    TransitionOperator p = exact_glauber_kernel(g, lambda);
    RationalMeasure mu = hardcore_measure(g, lambda);
    states += mu.size();
    BalanceReport balance = check_detailed_balance(p, mu.probs);
    bool stochastic = stochasticity_defect(p) == 0;
    bool stationary = push_forward(mu.probs, p) == mu.probs;
    if (!balance.holds || !stochastic || !stationary) {
      r.pass = false;
      json cx = {{"graph_index", i}, {"n", n}, {"graph_hash", g.hash()},
                 {"stochastic", stochastic}, {"stationary", stationary}};
      if (balance.witness) {
        cx["x"] = set_json(p.from[balance.witness->first]);
        cx["y"] = set_json(p.from[balance.witness->second]);
      }
      r.counterexample = cx;
    }
  }
  r.parameters = {{"graphs", graphs}, {"n", "3..8"}, {"lambda", {"1", "3/2"}}};
  r.measured = {{"states", states}};
  r.detail = std::to_string(graphs) + " kernels (" + std::to_string(states) +
             " states) exactly reversible and stationary";
  if (!r.pass) r.detail = "detailed balance violated; see counterexample";
  return r;
}

Verdict time_reversal(const AcceptanceOptions& o) {
  Verdict r;
  std::size_t kernels = 0;
  std::size_t walks = 0;
  std::size_t skipped = 0;
  std::size_t uniform_push = 0;
  auto fail = [&](json cx) {
    if (r.pass) r.counterexample = std::move(cx);
    r.pass = false;
  };
  for (std::size_t i = 0; i < 20; ++i) {
    std::size_t n = 3 + i % 6;
    Graph g = seeded_graph(o.seed, "time-reversal", n, i);
    TransitionOperator p = exact_glauber_kernel(g, Rational(1));
    RationalMeasure mu = hardcore_measure(g, Rational(1));
    ReversalReport rep = check_time_reversal(p, time_reversal(p, mu.probs), mu.probs);
    ++kernels;
    if (!rep.preserves || !rep.support_clause) {
      fail({{"kind", "glauber"}, {"graph_hash", g.hash()}, {"preserves", rep.preserves},
            {"support_clause", rep.support_clause}});
    }
  }
  std::vector<std::pair<Graph, std::string>> graphs = {{empty_graph(4), "empty4"},
                                                       {cycle_graph(5), "cycle5"}};
  for (std::size_t i = 0; i < 20; ++i) {
    std::size_t n = 4 + i % 5;
    graphs.emplace_back(seeded_graph(o.seed, "extension-walk", n, i), "gnp" + std::to_string(i));
  }
  for (const auto& [g, name] : graphs) {
    for (std::size_t km = 1; km <= 2; ++km) {
      for (std::size_t k = km + 1; k <= km + 2; ++k) {
        ExtensionWalk w = extension_walk(g, km, k);
        if (w.left.empty() || w.right.empty() || !w.isolated.empty()) {
          ++skipped;
          continue;
        }
        ++walks;
        ReversalReport rep = check_time_reversal(w.p, w.p_prime, w.greedy_left);
        if (!rep.preserves || !rep.support_clause) {
          fail({{"kind", "extension_walk"}, {"graph", name}, {"k_minus", km}, {"k", k},
                {"preserves", rep.preserves}, {"support_clause", rep.support_clause}});
        }
        // Every k-set has C(k, k_minus) independent k_minus-subsets, so the
        // degree-weighted law on L pushes forward to the uniform law on R.
        std::vector<Rational> pushed = push_forward(w.mu_left_h, w.p);
        Rational u(1, static_cast<long>(w.right.size()));
        bool uniform = std::all_of(pushed.begin(), pushed.end(),
                                   [&](const Rational& x) { return x == u; });
        uniform_push += uniform;
        if (!uniform) {
          fail({{"kind", "extension_pushforward"}, {"graph", name}, {"k_minus", km}, {"k", k}});
        }
      }
    }
  }
  r.parameters = {{"glauber_kernels", kernels}, {"extension_walk_graphs", graphs.size()}};
  r.measured = {{"walks", walks}, {"skipped_isolated", skipped}, {"uniform_pushforwards", uniform_push}};
  r.detail = std::to_string(kernels) + " kernels and " + std::to_string(walks) +
             " extension walks satisfy mu P P' = mu and the support clause (" +
             std::to_string(skipped) + " walks with unextendable sets skipped)";
  if (!r.pass) r.detail = "time-reversal identity violated; see counterexample";
  return r;
}

Verdict sampler_oracle_agreement(const AcceptanceOptions& o) {
  Verdict r;
  const std::size_t trials = 100'000;
  const double alpha = 0.01;
  json tests = json::array();
  struct Case {
    std::size_t n;
    std::size_t s;
    std::uint64_t horizon;
  };
  const std::vector<Case> cases = {{7, 3, 12}, {8, 3, 20}};
  std::size_t index = 0;
  for (const auto& c : cases) {
    Graph g = seeded_graph(o.seed, "sampler-agreement", c.n, index++);
    OutcomeLaw<double> glauber_law = exact_stopped_glauber(g, c.s, c.horizon);
    OutcomeLaw<double> greedy_law = to_double_law(exact_greedy_law(g, c.s));
    std::uint64_t base = derive_seed(derive_seed(o.seed, "sampler-agreement"), g.hash());
    std::vector<RunRecord> glauber(trials);
    std::vector<RunRecord> greedy(trials);
    std::vector<RunRecord> coupled_glauber(trials);
    std::vector<RunRecord> coupled_greedy(trials);
    GlauberParams params{c.s, c.horizon, 1.0};
    parallel_for(trials, o.parallelism, [&](std::size_t t) {
      glauber[t] = glauber_run(g, params, derive_seed(derive_seed(base, "glauber"), t));
      greedy[t] = greedy_run(g, c.s, derive_seed(derive_seed(base, "greedy"), t));
      CoupledRecord cr = coupled_run(g, c.s, c.horizon, derive_seed(derive_seed(base, "coupled"), t));
      coupled_glauber[t] = std::move(cr.glauber);
      coupled_greedy[t] = std::move(cr.greedy);
    });
    auto test = [&](const std::string& name, const std::vector<RunRecord>& recs,
                    const OutcomeLaw<double>& law) {
      ChiSquareResult chi = compare_to_law(recs, law, alpha);
      tests.push_back({{"sampler", name}, {"n", c.n}, {"s", c.s}, {"horizon", c.horizon},
                       {"graph_hash", g.hash()}, {"statistic", chi.statistic}, {"dof", chi.dof},
                       {"critical", chi.critical}, {"p_value", chi.p_value}, {"pass", chi.pass}});
      if (!chi.pass) {
        if (r.pass) r.counterexample = tests.back();
        r.pass = false;
      }
    };
    test("glauber_run", glauber, glauber_law);
    test("greedy_run", greedy, greedy_law);
    test("coupled_run.glauber", coupled_glauber, glauber_law);
    test("coupled_run.greedy", coupled_greedy, greedy_law);
  }
  double min_p = 1.0;
  for (const auto& t : tests) min_p = std::min(min_p, t["p_value"].get<double>());
  r.parameters = {{"trials", trials}, {"alpha", alpha}};
  r.measured = {{"tests", tests}};
  r.detail = std::to_string(tests.size()) + " chi-square tests at 1% with " +
             std::to_string(trials) + " trials, smallest p-value " + fmt(min_p);
  return r;
}

RationalMeasure random_measure(std::size_t universe, std::size_t max_support, Rng& rng) {
  std::size_t count = 1 + uniform_below(rng, max_support);
  std::vector<VertexSet> sets;
  while (sets.size() < count) {
    VertexSet s(universe);
    for (std::size_t v = 0; v < universe; ++v) {
      if (uniform01(rng) < 0.4) s.insert(static_cast<Vertex>(v));
    }
    if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
  }
  if (std::all_of(sets.begin(), sets.end(), [](const VertexSet& s) { return s.empty(); })) {
    sets[0].insert(0);
  }
  RationalMeasure mu{universe, sets, {}};
  Rational total = 0;
  for (std::size_t i = 0; i < count; ++i) {
    mu.probs.emplace_back(static_cast<long>(1 + uniform_below(rng, 9)));
    total += mu.probs.back();
  }
  for (auto& p : mu.probs) p /= total;
  return mu;
}

Verdict w2_solver(const AcceptanceOptions& o) {
  Verdict r;
  Rng rng = make_rng(derive_seed(o.seed, "w2-solver"));
  auto fail = [&](json cx) {
    if (r.pass) r.counterexample = std::move(cx);
    r.pass = false;
  };
  // Identical measures.
  double worst_identity = 0.0;
  for (int i = 0; i < 20; ++i) {
    RationalMeasure mu = random_measure(6, 6, rng);
    double v = w2_exact(mu, mu).value;
    double vd = w2_exact(to_double(mu), to_double(mu)).value;
    worst_identity = std::max({worst_identity, v, vd});
  }
  if (worst_identity > 1e-9) fail({{"check", "identity"}, {"value", worst_identity}});
  // Disjoint unit point masses.
  double pm = w2_exact(point_mass<Rational>(VertexSet::of(4, {0})),
                       point_mass<Rational>(VertexSet::of(4, {1})))
                  .value;
  if (std::abs(pm - std::sqrt(2.0)) > 1e-12) fail({{"check", "point_masses"}, {"value", pm}});
  // Range and triangle inequality.
  double max_sq = 0.0;
  double worst_triangle = -INFINITY;
  for (int i = 0; i < 100; ++i) {
    ExactMeasure a = to_double(random_measure(6, 6, rng));
    ExactMeasure b = to_double(random_measure(6, 6, rng));
    ExactMeasure c = to_double(random_measure(6, 6, rng));
    double ab = w2_exact(a, b).value;
    double bc = w2_exact(b, c).value;
    double ac = w2_exact(a, c).value;
    max_sq = std::max({max_sq, ab * ab, bc * bc, ac * ac});
    double excess = ac - ab - bc;
    worst_triangle = std::max(worst_triangle, excess);
    if (excess > 1e-9) fail({{"check", "triangle"}, {"triple", i}, {"excess", excess}});
  }
  if (max_sq > 2.0 + 1e-9) fail({{"check", "range"}, {"max_w2_squared", max_sq}});
  // Brute-force coupling search on small supports.
  double worst_brute = 0.0;
  double worst_tv = 0.0;
  for (int i = 0; i < 200; ++i) {
    RationalMeasure a = random_measure(5, 4, rng);
    RationalMeasure b = random_measure(5, 4, rng);
    double simplex = w2_exact(a, b).value;
    double brute = w2_brute_force(a, b);
    worst_brute = std::max(worst_brute, std::abs(simplex - brute));
    if (std::abs(simplex - brute) > 1e-9) {
      fail({{"check", "brute_force"}, {"instance", i}, {"simplex", simplex}, {"brute", brute}});
    }
    Rational tv = tv_distance(a, b);
    Rational md = min_disagreement(a, b);
    if (tv != md) {
      fail({{"check", "tv_coupling"}, {"instance", i}, {"tv", tv.get_str()},
            {"min_disagreement", md.get_str()}});
    }
    worst_tv = std::max(worst_tv, std::abs(Rational(tv - md).get_d()));
  }
  r.parameters = {{"triples", 100}, {"brute_force_pairs", 200}, {"slack", 1e-9}};
  r.measured = {{"identity", worst_identity}, {"point_masses", pm}, {"max_w2_squared", max_sq},
                {"worst_triangle_excess", worst_triangle}, {"worst_brute_gap", worst_brute}};
  r.detail = "identity " + fmt(worst_identity) + ", point masses " + fmt(pm) + ", max w2^2 " +
             fmt(max_sq) + ", worst triangle excess " + fmt(worst_triangle) +
             ", brute-force gap " + fmt(worst_brute);
  return r;
}

Verdict chaos_certificate_validity(const AcceptanceOptions& o) {
  Verdict r;
  const std::size_t n = 10;
  const std::size_t pairs = 20;
  double worst_gap = -INFINITY;
  for (double s : {0.25, 0.5, 1.0}) {
    for (std::size_t i = 0; i < pairs; ++i) {
      Graph g = seeded_graph(o.seed, "certificate", n, i);
      std::uint64_t nseed = derive_seed(derive_seed(o.seed, "certificate-noise"), i);
      Graph gp = resample_noise(g, {s, 0.5}, derive_seed(nseed, static_cast<std::uint64_t>(s * 100)));
      ChaosCertificate cert = chaos_lower_bound_exact(g, gp);
      double exact = w2_exact(hardcore_measure(g, 1.0), hardcore_measure(gp, 1.0)).plan.cost;
      double gap = cert.w2sq_lower - exact;
      worst_gap = std::max(worst_gap, gap);
      if (gap > 1e-9 && r.pass) {
        r.pass = false;
        r.counterexample = json{{"s", s}, {"pair", i}, {"graph_hash", g.hash()},
                                {"noisy_hash", gp.hash()}, {"certificate", cert.w2sq_lower},
                                {"w2sq_exact", exact}};
      }
    }
  }
  // s = 0: Monte Carlo certificate from exact draws, pooled over the pairs.
  const std::size_t draws = 2000;
  double sum = 0.0;
  double var = 0.0;
  double exact_zero = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    Graph g = seeded_graph(o.seed, "certificate", n, i);
    Graph gp = resample_noise(g, {0.0, 0.5}, derive_seed(o.seed, i));
    exact_zero = std::max(exact_zero, std::abs(chaos_lower_bound_exact(g, gp).w2sq_lower));
    MeasureSampler ms = measure_sampler(hardcore_measure(g, 1.0));
    ChaosCertificate cert = chaos_lower_bound(g, gp, ms, ms, draws,
                                              derive_seed(derive_seed(o.seed, "certificate-mc"), i));
    sum += cert.w2sq_lower;
    var += cert.stderr * cert.stderr;
  }
  double pooled = sum / static_cast<double>(pairs);
  double pooled_se = std::sqrt(var) / static_cast<double>(pairs);
  bool zero_ok = std::abs(pooled) <= 3.0 * pooled_se + 1e-12 && exact_zero <= 1e-12;
  if (!zero_ok && r.pass) {
    r.counterexample = json{{"s", 0.0}, {"pooled", pooled}, {"pooled_se", pooled_se},
                            {"exact_certificate", exact_zero}};
  }
  r.pass = r.pass && zero_ok;
  r.parameters = {{"n", n}, {"pairs_per_s", pairs}, {"s", {0.25, 0.5, 1.0}}, {"mc_draws", draws}};
  r.measured = {{"worst_gap", worst_gap}, {"s0_pooled", pooled}, {"s0_pooled_se", pooled_se},
                {"s0_exact", exact_zero}};
  r.detail = "max(certificate - w2sq_exact) = " + fmt(worst_gap) + " over 60 pairs; s=0 pooled " +
             fmt(pooled) + " (SE " + fmt(pooled_se) + ")";
  return r;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

// Committed calibration threshold for the s = 1 chaos certificate at n = 2000.
constexpr double kChaosThreshold = 0.5;

Verdict chaos_trend(const AcceptanceOptions& o) {
  Verdict r;
  ExperimentConfig c;
  c.experiment = "chaos";
  c.n = {2000};
  c.s = {0.0, 0.25, 0.5, 0.75, 1.0};
  c.trials = 200;
  c.samples = 50;
  c.samples_per_level = 50;
  c.master_seed = o.seed;
  c.parallelism = o.parallelism;
  c.out_dir = (std::filesystem::path(o.work_dir) / "chaos_trend").string();
  std::ostringstream log;
  ExitCode code = cmd_chaos(c, log);
  auto rows = read_csv(std::filesystem::path(c.out_dir) / "chaos.csv");
  std::vector<double> means;
  std::vector<double> ses;
  std::vector<std::size_t> flagged;
  json per_s = json::array();
  for (double s : c.s) {
    std::vector<double> xs;
    std::size_t bad = 0;
    for (const auto& row : rows) {
      if (std::stod(row[1]) != s) continue;
      double x = std::stod(row[6]);
      if (std::isnan(x)) {
        ++bad;
      } else {
        xs.push_back(x);
      }
    }
    means.push_back(xs.empty() ? NAN : mean(xs));
    ses.push_back(xs.size() < 2 ? NAN : standard_error(xs));
    flagged.push_back(bad);
    per_s.push_back({{"s", s}, {"rows", xs.size()}, {"flagged", bad}, {"mean", means.back()},
                     {"se", ses.back()}});
  }
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < means.size(); ++i) {
    double slack = 2.0 * std::sqrt(ses[i] * ses[i] + ses[i + 1] * ses[i + 1]);
    if (!(means[i + 1] >= means[i] - slack)) {
      monotone = false;
      if (!r.counterexample) r.counterexample = json{{"s_low", c.s[i]}, {"s_high", c.s[i + 1]}};
    }
  }
  bool reaches = means.back() >= kChaosThreshold;
  r.pass = monotone && reaches && code == ExitCode::kPass;
  r.parameters = {{"n", 2000}, {"trials", c.trials}, {"inner_samples", c.samples},
                  {"k_minus", chaos_k_minus(c, 2000)}, {"threshold_s1", kChaosThreshold}};
  r.measured = {{"per_s", per_s}, {"monotone", monotone}, {"exit_code", static_cast<int>(code)}};
  std::ostringstream d;
  d << "means";
  for (std::size_t i = 0; i < means.size(); ++i) d << ' ' << fmt(c.s[i]) << ':' << fmt(means[i]);
  d << (monotone ? " nondecreasing" : " NOT nondecreasing") << "; s=1 " << fmt(means.back())
    << (reaches ? " >= " : " < ") << fmt(kChaosThreshold);
  std::size_t total_flagged = 0;
  for (auto f : flagged) total_flagged += f;
  if (total_flagged > 0) d << "; " << total_flagged << " rows over the FAIL-rate limit";
  r.detail = d.str();
  return r;
}

Verdict glauber_success(const AcceptanceOptions& o) {
  Verdict r;
  ExperimentConfig c;
  c.n = {4096};
  c.k = 6;
  c.trials = 100;
  c.extend = false;
  c.master_seed = o.seed;
  c.parallelism = o.parallelism;
  const std::size_t graphs = 10;
  double success = 0.0;
  double agreement = 0.0;
  std::uint64_t horizon = 0;
  json per_graph = json::array();
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    SamplingRow row = sampling_cell(c, 4096, gi).row;
    horizon = row.horizon;
    success += row.success_rate;
    agreement += row.agreement_rate;
    per_graph.push_back({{"graph_hash", row.graph_hash}, {"success", row.success_rate},
                         {"agreement", row.agreement_rate}});
  }
  success /= graphs;
  agreement /= graphs;
  r.pass = success >= 0.99 && agreement >= 0.95;
  r.parameters = {{"n", 4096}, {"k", 6}, {"horizon", horizon}, {"graphs", graphs},
                  {"trials_per_graph", c.trials}};
  r.measured = {{"success", success}, {"agreement", agreement}, {"per_graph", per_graph}};
  r.detail = "SUCCESS " + fmt(success) + (success >= 0.99 ? " >= " : " < ") + "0.99, agreement " +
             fmt(agreement) + (agreement >= 0.95 ? " >= " : " < ") + "0.95 over " +
             std::to_string(graphs * c.trials) + " trials";
  return r;
}

Verdict greedy_uniformity(const AcceptanceOptions& o) {
  Verdict r;
  ExperimentConfig c;
  c.trials = 50;
  c.master_seed = o.seed;
  c.parallelism = o.parallelism;
  UniformityRow small = uniformity_cell(c, 512, 0, 6);
  UniformityRow large = uniformity_cell(c, 4096, 0, 6);
  bool bounded = small.ratio <= 1.5;
  bool shrinks = large.ratio < small.ratio;
  r.pass = bounded && shrinks;
  r.parameters = {{"k", 6}, {"sets", 50}, {"n", {512, 4096}}, {"max_ratio_512", 1.5}};
  r.measured = {{"ratio_512", small.ratio}, {"ratio_4096", large.ratio},
                {"sets_512", small.sets}, {"sets_4096", large.sets}};
  r.detail = "max/min ratio " + fmt(small.ratio) + " at n=512 (" + (bounded ? "<=" : ">") +
             " 1.5), " + fmt(large.ratio) + " at n=4096 (" + (shrinks ? "smaller" : "not smaller") +
             ")";
  return r;
}

Verdict sampling_w2_decay(const AcceptanceOptions& o) {
  Verdict r;
  const std::vector<std::size_t> ns = {10, 12, 14, 16};
  const std::size_t graphs = 20;
  std::vector<double> extended;
  std::vector<double> stopped;
  json per_n = json::array();
  for (std::size_t n : ns) {
    std::size_t km = std::max<std::size_t>(1, kstar(n) - 1);
    double sum_ext = 0.0;
    double sum_stop = 0.0;
    std::size_t used = 0;
    for (std::size_t gi = 0; gi < graphs; ++gi) {
      Graph g = seeded_graph(o.seed, "w2-decay", n, gi);
      ExactMeasure mu = hardcore_measure(g, 1.0);
      std::uint64_t horizon = GlauberParams::default_horizon(n, km);
      PipelineSampler spec{PipelineBase::kGlauber, km, horizon, exact_size_law(g),
                           PipelineFallback::kUniformLevel};
      sum_ext += w2_exact(exact_pipeline_law(g, spec).success_measure(), mu).value;
      sum_stop += w2_exact(exact_stopped_glauber(g, km, horizon).success_measure(), mu).value;
      ++used;
    }
    extended.push_back(sum_ext / static_cast<double>(used));
    stopped.push_back(sum_stop / static_cast<double>(used));
    per_n.push_back({{"n", n}, {"k_minus", km}, {"graphs", used}, {"w2_extended", extended.back()},
                     {"w2_stopped", stopped.back()}});
  }
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < extended.size(); ++i) {
    if (extended[i + 1] > extended[i]) {
      monotone = false;
      if (!r.counterexample) r.counterexample = per_n[i + 1];
    }
  }
  r.pass = monotone;
  r.parameters = {{"n", ns}, {"graphs_per_n", graphs}, {"k_minus", "max(1, k* - 1)"}};
  r.measured = {{"per_n", per_n}};
  std::ostringstream d;
  d << "mean W2(extended, mu)";
  for (std::size_t i = 0; i < ns.size(); ++i) d << ' ' << ns[i] << ':' << fmt(extended[i]);
  d << (monotone ? " nonincreasing" : " NOT nonincreasing");
  r.detail = d.str();
  return r;
}

Verdict zk_concentration(const AcceptanceOptions& o) {
  Verdict r;
  ExperimentConfig c;
  c.master_seed = o.seed;
  c.parallelism = o.parallelism;
  c.graph_seeds = 100;
  const std::size_t k = 5;
  std::vector<double> log_n;
  std::vector<double> log_rv;
  json rows = json::array();
  bool means_ok = true;
  bool envelope_ok = true;
  for (std::size_t n : {128, 256, 512}) {
    ZkCell cell = zk_cell(c, n, k);
    for (const auto& row : cell.rows) {
      if (std::abs(row.z_score) > 5.0) {
        means_ok = false;
        if (!r.counterexample) r.counterexample = json{{"n", n}, {"k", row.k}, {"z", row.z_score}};
      }
    }
    const ZkRow& top = cell.rows[k];
    if (n >= 256 && !top.within_envelope) envelope_ok = false;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_rv.push_back(std::log(top.rel_variance));
    rows.push_back({{"n", n}, {"k", k}, {"mean", top.mean}, {"expected", top.expected},
                    {"z", top.z_score}, {"rel_variance", top.rel_variance},
                    {"envelope", top.envelope}});
  }
  double slope = least_squares(log_n, log_rv).slope;
  bool slope_ok = std::abs(slope + 2.0) <= 0.5;
  r.pass = means_ok && envelope_ok && slope_ok;
  r.parameters = {{"k", k}, {"n", {128, 256, 512}}, {"graph_seeds", c.graph_seeds}};
  r.measured = {{"rows", rows}, {"slope", slope}};
  std::ostringstream d;
  d << "rel. variance";
  for (const auto& row : rows) {
    d << ' ' << row["n"].get<std::size_t>() << ':' << fmt(row["rel_variance"].get<double>());
  }
  d << (envelope_ok ? " within" : " NOT within") << " 100k^5/n^2; slope " << fmt(slope)
    << (slope_ok ? " in" : " outside") << " -2 +- 0.5; means " << (means_ok ? "within" : "outside")
    << " 5 SE";
  r.detail = d.str();
  return r;
}

Verdict combinatorial_lemmas(const AcceptanceOptions&) {
  Verdict r;
  std::size_t instances = 0;
  std::size_t failures[3] = {0, 0, 0};
  std::size_t corrected_failures = 0;
  std::uint64_t tuples = 0;
  bool capped = false;
  json failing = json::array();
  for (std::size_t m = 1; m <= 7; ++m) {
    for (std::size_t ell = 1; ell <= std::min<std::size_t>(3, m); ++ell) {
      for (std::size_t d = 1; d <= 3; ++d) {
        ++instances;
        LemmaReport overlap = check_vertex_overlap(m, ell, d);
        LemmaReport edges = check_edge_bound(m, ell, d);
        ConfigReport config = check_config_bound(m, ell, d);
        tuples += overlap.tuples_checked + edges.tuples_checked + config.report.tuples_checked;
        capped = capped || overlap.capped || edges.capped || config.report.capped;
        for (const LemmaReport* rep : {&overlap, &edges, &config.report}) {
          if (rep->verdict) continue;
          std::size_t which = rep == &overlap ? 0 : rep == &edges ? 1 : 2;
          ++failures[which];
          json entry = {{"check", rep->check_name}, {"m", m}, {"ell", ell}, {"d", d}};
          if (rep->counterexample_json) entry["counterexample"] = json::parse(*rep->counterexample_json);
          failing.push_back(entry);
        }
        corrected_failures += !config.corrected_verdict;
      }
    }
  }
  r.pass = failures[0] == 0 && failures[1] == 0 && failures[2] == 0 && !capped;
  if (!failing.empty()) r.counterexample = failing.front();
  r.parameters = {{"m_max", 7}, {"ell_max", 3}, {"d_max", 3}, {"cap", kDefaultTupleCap}};
  r.measured = {{"instances", instances}, {"tuples", tuples}, {"capped", capped},
                {"vertex_overlap_failures", failures[0]}, {"edge_bound_failures", failures[1]},
                {"config_bound_failures", failures[2]},
                {"config_bound_corrected_failures", corrected_failures}, {"failing", failing}};
  r.detail = std::to_string(instances) + " (m, ell, d) instances: vertex overlap " +
             std::to_string(failures[0]) + " failures, edge bound " + std::to_string(failures[1]) +
             ", configuration bound " + std::to_string(failures[2]) +
             " (with C(d ell - 1, a): " + std::to_string(corrected_failures) + ")";
  return r;
}

struct Entry {
  CriterionInfo info;
  std::function<Verdict(const AcceptanceOptions&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"detailed_balance", "exact Glauber kernel is reversible w.r.t. the hardcore measure", true},
       detailed_balance},
      {{"time_reversal", "mu P P' = mu for Glauber kernels and extension walks", true},
       time_reversal},
      {{"sampler_oracle_agreement", "sampler laws match exact laws (chi-square, 1%)", true},
       sampler_oracle_agreement},
      {{"w2_solver", "W2 solver identities, range, triangle inequality, brute force", true},
       w2_solver},
      {{"chaos_certificate_validity", "certificate <= exact W2^2; zero at s = 0", true},
       chaos_certificate_validity},
      {{"chaos_trend", "n = 2000 certificate nondecreasing in s and large at s = 1", false},
       chaos_trend},
      {{"glauber_success", "n = 4096, k = 6: SUCCESS >= 0.99, coupling agreement >= 0.95", false},
       glauber_success},
      {{"greedy_uniformity", "greedy probability ratio <= 1.5 at n = 512, smaller at 4096", false},
       greedy_uniformity},
      {{"sampling_w2_decay", "exact W2(extended law, mu) nonincreasing over n = 10..16", false},
       sampling_w2_decay},
      {{"zk_concentration", "Z_5 relative variance envelope, slope -2, means near M_k", false},
       zk_concentration},
      {{"combinatorial_lemmas", "set-system lemma checkers hold for m <= 7, ell, d <= 3", true},
       combinatorial_lemmas},
  };
  return entries;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> infos = [] {
    std::vector<CriterionInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& options) {
  for (const auto& e : registry()) {
    if (e.info.id != id) continue;
    CriterionResult result;
    result.id = id;
    result.title = e.info.title;
    auto t0 = std::chrono::steady_clock::now();
    Verdict out;
    try {
      out = e.run(options);
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("error: ") + ex.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.pass = out.pass;
    result.detail = out.detail;
    json j = {{"check_name", id},
              {"parameters", out.parameters},
              {"verdict", out.pass},
              {"measured", out.measured},
              {"seconds", result.seconds}};
    if (out.counterexample) j["counterexample"] = *out.counterexample;
    result.json = j.dump();
    return result;
  }
  throw ContractViolation("unknown acceptance criterion '" + id + "'");
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (const auto& info : acceptance_criteria()) {
    if (options.quick && !info.quick) continue;
    out.push_back(run_criterion(info.id, options));
  }
  return out;
}

std::string summary_line(const CriterionResult& r) {
  return std::string(r.pass ? "PASS " : "FAIL ") + r.id + ": " + r.title + " -- " + r.detail;
}

}  // namespace hardcore
