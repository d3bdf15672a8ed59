#include "hardcore/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hardcore/acceptance.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/measures.hpp"
#include "hardcore/oracles.hpp"
#include "hardcore/parallel.hpp"
#include "hardcore/random.hpp"
#include "hardcore/samplers.hpp"
#include "hardcore/stats.hpp"
#include "hardcore/transport.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace hardcore {
namespace {

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string opt(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string("nan");
}

// Fields that determine numeric results; parallelism and paths are excluded.
std::string config_fingerprint(const ExperimentConfig& c) {
  ExperimentConfig copy = c;
  copy.parallelism = 1;
  copy.out_dir.clear();
  std::string text = to_json(copy);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json sidecar(const ExperimentConfig& c, const std::string& experiment) {
  return {{"version", kVersion},
          {"experiment", experiment},
          {"config", nlohmann::json::parse(to_json(c))},
          {"config_text", to_text(c)}};
}

std::string cell_name(const std::string& experiment, std::size_t n, const std::string& extra) {
  return experiment + "_n" + std::to_string(n) + (extra.empty() ? "" : "_" + extra);
}

ExitCode warn_config(const ExperimentConfig& c, std::ostream& log) {
  for (const auto& w : validate(c)) log << "warning: " << w << '\n';
  return ExitCode::kPass;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

Manifest::Manifest(fs::path file) : file_(std::move(file)) {
  if (fs::exists(file_)) {
    nlohmann::json j = nlohmann::json::parse(read_file(file_));
    for (auto& [k, v] : j["cells"].items()) cells_[k] = v.get<std::string>();
  }
}

bool Manifest::done(const std::string& key) const { return cells_.count(key) > 0; }

std::optional<std::string> Manifest::artifact(const std::string& key) const {
  auto it = cells_.find(key);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

void Manifest::mark(const std::string& key, const std::string& artifact) {
  cells_[key] = artifact;
  save();
}

void Manifest::save() const {
  nlohmann::json j;
  j["cells"] = nlohmann::json::object();
  for (const auto& [k, v] : cells_) j["cells"][k] = v;
  write_file(file_, j.dump(2) + "\n");
}

std::uint64_t graph_seed(std::uint64_t master, std::size_t n, std::size_t index) {
  return derive_seed(derive_seed(derive_seed(master, "graph"), n), index);
}

std::uint64_t cell_seed(std::uint64_t master, const std::string& experiment, std::size_t n,
                        std::size_t index) {
  return derive_seed(derive_seed(derive_seed(master, experiment), n), index);
}

std::size_t target_size(const ExperimentConfig& c, std::size_t n) {
  return c.k ? *c.k : size_from_constant(n, c.C);
}

std::uint64_t horizon_for(const ExperimentConfig& c, std::size_t n, std::size_t k) {
  double logn = n > 1 ? lg(static_cast<double>(n)) : 0.0;
  double t = std::ceil(c.horizon_factor * std::exp2(static_cast<double>(k)) * logn);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(t));
}

std::size_t chaos_k_minus(const ExperimentConfig& c, std::size_t n) {
  if (c.k_minus) return *c.k_minus;
  std::size_t ks = kstar(n);
  return ks > 2 ? ks - 2 : 1;
}

// ---------------------------------------------------------------- chaos

std::vector<ChaosRow> chaos_cell(const ExperimentConfig& c, std::size_t n, double s) {
  std::vector<ChaosRow> rows(c.trials);
  const bool exact = c.exact && n <= kExactEnumerationMaxN;
  const std::size_t km = chaos_k_minus(c, n);
  const std::uint64_t horizon = horizon_for(c, n, km);
  parallel_for(c.trials, c.parallelism, [&](std::size_t t) {
    ChaosRow& row = rows[t];
    row.n = n;
    row.s = s;
    row.trial = t;
    std::uint64_t gseed = graph_seed(c.master_seed, n, t);
    std::uint64_t tseed = cell_seed(c.master_seed, "chaos", n, t);
    Graph g = gen_gnp(n, c.p, gseed);
    Graph gp = resample_noise(g, {s, c.p}, derive_seed(gseed, "noise"),
                              {c.common_random_numbers});
    row.graph_hash = g.hash();
    row.noisy_hash = gp.hash();
    if (exact) {
      row.cert = chaos_lower_bound_exact(g, gp, c.lambda);
    } else {
      auto law_for = [&](const Graph& h, const char* tag) {
        if (n <= kExactEnumerationMaxN) return exact_size_law(h, c.budget);
        return estimate_size_profile(h, km, c.samples_per_level, derive_seed(tseed, tag), c.budget)
            .law;
      };
      PipelineSampler left{PipelineBase::kGlauber, km, horizon, law_for(g, "profile-left"),
                           PipelineFallback::kFail, c.budget};
      PipelineSampler right = left;
      right.size_law = law_for(gp, "profile-right");
      try {
        row.cert = chaos_lower_bound(g, gp, left, right, c.samples, derive_seed(tseed, "draws"),
                                     {c.max_fail_rate, 1});
      } catch (const DataQualityError&) {
        row.flagged = true;
        row.cert.n = n;
        row.cert.overlap_bound = row.cert.m2_left = row.cert.m2_right = NAN;
        row.cert.w2sq_lower = row.cert.stderr = row.cert.fail_rate = NAN;
      }
    }
    row.cert.s = s;
    row.cert.trials = exact ? 0 : c.samples;
    if (c.exact && n <= kExactTransportMaxN) {
      row.w2sq_exact = w2_exact(hardcore_measure(g, c.lambda), hardcore_measure(gp, c.lambda))
                           .plan.cost;
    }
  });
  return rows;
}

std::string chaos_csv_header(bool with_exact) {
  std::string h = "n,s,trial,overlap_bound,m2_left,m2_right,w2sq_lower,stderr,fail_rate";
  return with_exact ? h + ",w2sq_exact" : h;
}

std::string chaos_csv_row(const ChaosRow& r, bool with_exact) {
  std::ostringstream os;
  os << r.n << ',' << format_double(r.s) << ',' << r.trial << ','
     << format_double(r.cert.overlap_bound) << ',' << format_double(r.cert.m2_left) << ','
     << format_double(r.cert.m2_right) << ',' << format_double(r.cert.w2sq_lower) << ','
     << format_double(r.cert.stderr) << ',' << format_double(r.cert.fail_rate);
  if (with_exact) os << ',' << opt(r.w2sq_exact);
  return os.str();
}

ExitCode cmd_chaos(const ExperimentConfig& c, std::ostream& log) {
  warn_config(c, log);
  fs::path out(c.out_dir);
  Manifest manifest(out / "manifest.json");
  bool with_exact = false;
  for (auto n : c.n) with_exact |= c.exact && n <= kExactTransportMaxN;
  std::string fp = config_fingerprint(c);
  std::string csv = chaos_csv_header(with_exact) + "\n";
  nlohmann::json meta = sidecar(c, "chaos");
  bool flagged = false;
  for (auto n : c.n) {
    for (double s : c.s) {
      std::string name = cell_name("chaos", n, "s" + format_double(s));
      std::string key = "chaos/" + fp + "/n=" + std::to_string(n) + "/s=" + format_double(s) +
                        "/trials=0-" + std::to_string(c.trials);
      fs::path rows_file = out / "cells" / (name + ".csv");
      fs::path meta_file = out / "cells" / (name + ".json");
      if (!(manifest.done(key) && fs::exists(rows_file) && fs::exists(meta_file))) {
        log << "chaos: n=" << n << " s=" << format_double(s) << " (" << c.trials << " trials)\n";
        std::vector<ChaosRow> rows = chaos_cell(c, n, s);
        std::string body;
        nlohmann::json cell = {{"n", n}, {"s", s}, {"flagged_trials", nlohmann::json::array()}};
        for (const auto& r : rows) {
          body += chaos_csv_row(r, with_exact) + "\n";
          cell["graph_hashes"].push_back(r.graph_hash);
          cell["noisy_graph_hashes"].push_back(r.noisy_hash);
          if (r.flagged) cell["flagged_trials"].push_back(r.trial);
        }
        write_file(rows_file, body);
        write_file(meta_file, cell.dump() + "\n");
        manifest.mark(key, rows_file.filename().string());
      } else {
        log << "chaos: n=" << n << " s=" << format_double(s) << " reused from manifest\n";
      }
      csv += read_file(rows_file);
      nlohmann::json cell = nlohmann::json::parse(read_file(meta_file));
      if (!cell["flagged_trials"].empty()) {
        flagged = true;
        log << "chaos: n=" << n << " s=" << format_double(s) << " has "
            << cell["flagged_trials"].size() << " trials above the FAIL-rate limit\n";
      }
      meta["cells"].push_back(cell);
    }
  }
  write_file(out / "chaos.csv", csv);
  write_file(out / "chaos.json", meta.dump(2) + "\n");
  return flagged ? ExitCode::kPropertyFailure : ExitCode::kPass;
}

// ------------------------------------------------------- glauber sample

SamplingCell sampling_cell(const ExperimentConfig& c, std::size_t n, std::size_t gi) {
  SamplingCell cell;
  SamplingRow& row = cell.row;
  Graph g = gen_gnp(n, c.p, graph_seed(c.master_seed, n, gi));
  std::uint64_t cs = cell_seed(c.master_seed, "glauber-sample", n, gi);
  row.n = n;
  row.graph_index = gi;
  row.graph_hash = g.hash();
  row.k = target_size(c, n);
  if (row.k > n) throw ContractViolation("glauber-sample: k exceeds n");
  row.horizon = horizon_for(c, n, row.k);
  row.trials = c.trials;
  row.k_minus = c.k_minus.value_or(row.k);

  std::vector<CoupledRecord> coupled(c.trials);
  parallel_for(c.trials, c.parallelism, [&](std::size_t t) {
    coupled[t] = coupled_run(g, row.k, row.horizon, derive_seed(cs, t));
  });
  cell.glauber.n = n;
  cell.glauber.graph_hash = row.graph_hash;
  cell.glauber.sampler = describe(GlauberSampler{{row.k, row.horizon, 1.0}});
  cell.glauber.master_seed = cs;
  std::size_t greedy_ok = 0;
  std::size_t agreed = 0;
  for (auto& r : coupled) {
    greedy_ok += r.greedy.success();
    agreed += r.agreed;
    cell.glauber.records.push_back(std::move(r.glauber));
  }
  double trials = static_cast<double>(std::max<std::size_t>(c.trials, 1));
  row.success_rate = static_cast<double>(cell.glauber.successes()) / trials;
  row.greedy_success_rate = static_cast<double>(greedy_ok) / trials;
  row.agreement_rate = static_cast<double>(agreed) / trials;
  row.all_fail = c.trials > 0 && cell.glauber.successes() == 0;

  const bool exact = c.exact && n <= kExactEnumerationMaxN;
  if (c.extend || exact) {
    std::vector<double> law =
        n <= kExactEnumerationMaxN
            ? exact_size_law(g, c.budget)
            : estimate_size_profile(g, row.k_minus, c.samples_per_level,
                                    derive_seed(cs, "profile"), c.budget)
                  .law;
    PipelineSampler spec{PipelineBase::kGlauber, row.k_minus, horizon_for(c, n, row.k_minus), law,
                         PipelineFallback::kUniformLevel, c.budget};
    if (c.extend) {
      cell.extended = sample_batch(g, spec, c.trials, derive_seed(cs, "extended"), c.parallelism);
      row.extended_success_rate = static_cast<double>(cell.extended.successes()) / trials;
    }
    if (exact) {
      ExactMeasure mu = hardcore_measure(g, c.lambda, c.budget);
      auto w2_or_none = [&](const OutcomeLaw<double>& law_out) -> std::optional<double> {
        if (law_out.success_mass() <= 0.0) return std::nullopt;
        try {
          return w2_exact(law_out.success_measure(), mu).value;
        } catch (const DegenerateNormalization&) {
          return std::nullopt;
        }
      };
      row.w2_stopped = w2_or_none(exact_stopped_glauber(g, row.k, row.horizon, 1.0, c.budget));
      row.w2_extended = w2_or_none(exact_pipeline_law(g, spec, c.budget));
    }
  }
  return cell;
}

std::string sampling_csv_header() {
  return "n,graph_seed,graph_hash,k,k_minus,horizon,trials,success_rate,greedy_success_rate,"
         "agreement_rate,extended_success_rate,w2_stopped,w2_extended,flag";
}

std::string sampling_csv_row(const SamplingRow& r) {
  std::ostringstream os;
  os << r.n << ',' << r.graph_index << ',' << r.graph_hash << ',' << r.k << ',' << r.k_minus << ','
     << r.horizon << ',' << r.trials << ',' << format_double(r.success_rate) << ','
     << format_double(r.greedy_success_rate) << ',' << format_double(r.agreement_rate) << ','
     << format_double(r.extended_success_rate) << ',' << opt(r.w2_stopped) << ','
     << opt(r.w2_extended) << ',' << (r.all_fail ? "ALL_FAIL" : "");
  return os.str();
}

ExitCode cmd_glauber_sample(const ExperimentConfig& c, std::ostream& log) {
  warn_config(c, log);
  fs::path out(c.out_dir);
  Manifest manifest(out / "manifest.json");
  std::string fp = config_fingerprint(c);
  std::string csv = sampling_csv_header() + "\n";
  nlohmann::json meta = sidecar(c, "glauber-sample");
  bool flagged = false;
  for (auto n : c.n) {
    for (std::size_t gi = 0; gi < c.graph_seeds; ++gi) {
      std::string name = cell_name("glauber_sample", n, "g" + std::to_string(gi));
      std::string key = "glauber-sample/" + fp + "/n=" + std::to_string(n) +
                        "/graph=" + std::to_string(gi);
      fs::path row_file = out / "cells" / (name + ".csv");
      if (!(manifest.done(key) && fs::exists(row_file))) {
        log << "glauber-sample: n=" << n << " graph " << gi << '\n';
        SamplingCell cell = sampling_cell(c, n, gi);
        std::string params = to_json(c);
        for (const auto* batch : {&cell.glauber, &cell.extended}) {
          if (batch->records.empty()) continue;
          std::string base = (batch == &cell.glauber ? "glauber_" : "extended_") +
                             std::string("n") + std::to_string(n) + "_g" + std::to_string(gi);
          std::ostringstream b;
          write_batch_csv(b, *batch);
          write_file(out / "batches" / (base + ".csv"), b.str());
          std::ostringstream s;
          write_batch_sidecar(s, *batch, params);
          write_file(out / "batches" / (base + ".json"), s.str());
        }
        write_file(row_file, sampling_csv_row(cell.row) + "\n");
        manifest.mark(key, row_file.filename().string());
      }
      std::string line = read_file(row_file);
      if (line.find("ALL_FAIL") != std::string::npos) {
        flagged = true;
        log << "glauber-sample: n=" << n << " graph " << gi << " all trials FAILed\n";
      }
      csv += line;
      meta["cells"].push_back(name);
    }
  }
  write_file(out / "glauber_sample.csv", csv);
  write_file(out / "glauber_sample.json", meta.dump(2) + "\n");
  return flagged ? ExitCode::kPropertyFailure : ExitCode::kPass;
}

// ------------------------------------------------------------------- zk

ZkCell zk_cell(const ExperimentConfig& c, std::size_t n, std::size_t kmax) {
  ZkCell cell;
  kmax = std::min(kmax, n);
  cell.counts.assign(c.graph_seeds, std::vector<std::uint64_t>(kmax + 1, 0));
  cell.graph_hashes.resize(c.graph_seeds);
  parallel_for(c.graph_seeds, c.parallelism, [&](std::size_t gi) {
    Graph g = gen_gnp(n, c.p, graph_seed(c.master_seed, n, gi));
    cell.graph_hashes[gi] = g.hash();
    VertexSet all = VertexSet::full(n);
    for (std::size_t k = 0; k <= kmax; ++k) {
      cell.counts[gi][k] = count_independent_subsets(g, all, k);
    }
  });
  for (std::size_t k = 0; k <= kmax; ++k) {
    std::vector<double> xs;
    for (const auto& row : cell.counts) xs.push_back(static_cast<double>(row[k]));
    ZkRow r;
    r.n = n;
    r.k = k;
    r.graph_seeds = c.graph_seeds;
    r.mean = mean(xs);
    r.variance = sample_variance(xs);
    r.stderr = standard_error(xs);
    r.expected = c.p == 0.5 ? expected_zk(n, k) : NAN;
    r.z_score = r.stderr > 0 ? (r.mean - r.expected) / r.stderr : 0.0;
    r.rel_variance = r.variance / (r.expected * r.expected);
    r.envelope = 100.0 * std::pow(static_cast<double>(k), 5) /
                 (static_cast<double>(n) * static_cast<double>(n));
    r.within_envelope = r.rel_variance <= r.envelope;
    cell.rows.push_back(r);
  }
  return cell;
}

std::string zk_csv_header() {
  return "n,k,graph_seeds,mean,variance,stderr,expected,z_score,rel_variance,envelope,"
         "within_envelope";
}

std::string zk_csv_row(const ZkRow& r) {
  std::ostringstream os;
  os << r.n << ',' << r.k << ',' << r.graph_seeds << ',' << format_double(r.mean) << ','
     << format_double(r.variance) << ',' << format_double(r.stderr) << ','
     << format_double(r.expected) << ',' << format_double(r.z_score) << ','
     << format_double(r.rel_variance) << ',' << format_double(r.envelope) << ','
     << (r.within_envelope ? "true" : "false");
  return os.str();
}

ExitCode cmd_zk(const ExperimentConfig& c, std::ostream& log) {
  warn_config(c, log);
  fs::path out(c.out_dir);
  Manifest manifest(out / "manifest.json");
  std::string fp = config_fingerprint(c);
  std::size_t kmax = c.k.value_or(5);
  std::string csv = zk_csv_header() + "\n";
  std::string raw = "n,graph_seed,graph_hash,k,zk\n";
  std::string ratios =
      "n,k,K,forward_ratio,backward_ratio,forward_envelope,backward_envelope\n";
  nlohmann::json meta = sidecar(c, "zk");
  for (auto n : c.n) {
    std::string name = cell_name("zk", n, "");
    std::string key = "zk/" + fp + "/n=" + std::to_string(n);
    fs::path rows_file = out / "cells" / (name + ".csv");
    fs::path raw_file = out / "cells" / (name + "_raw.csv");
    if (!(manifest.done(key) && fs::exists(rows_file) && fs::exists(raw_file))) {
      log << "zk: n=" << n << " (" << c.graph_seeds << " graphs, k <= " << kmax << ")\n";
      ZkCell cell = zk_cell(c, n, kmax);
      std::string body;
      for (const auto& r : cell.rows) body += zk_csv_row(r) + "\n";
      std::string raw_body;
      for (std::size_t gi = 0; gi < cell.counts.size(); ++gi) {
        for (std::size_t k = 0; k < cell.counts[gi].size(); ++k) {
          raw_body += std::to_string(n) + "," + std::to_string(gi) + "," + cell.graph_hashes[gi] +
                      "," + std::to_string(k) + "," + std::to_string(cell.counts[gi][k]) + "\n";
        }
      }
      write_file(rows_file, body);
      write_file(raw_file, raw_body);
      manifest.mark(key, rows_file.filename().string());
    }
    csv += read_file(rows_file);
    raw += read_file(raw_file);
    std::size_t ks = kstar(n);
    for (std::size_t k = 0; k <= std::min(n - 1, 2 * ks + 2); ++k) {
      double forward = mk_forward_ratio(n, k);
      double backward = k == 0 ? NAN : mk_ratio_check(n, k).second;
      double big_k = static_cast<double>(k) - static_cast<double>(ks);
      std::ostringstream os;
      os << n << ',' << k << ',' << format_double(big_k) << ',' << format_double(forward) << ','
         << format_double(backward) << ',' << format_double(std::exp2(-big_k)) << ','
         << format_double(std::exp2(big_k)) << '\n';
      ratios += os.str();
    }
  }
  write_file(out / "zk.csv", csv);
  write_file(out / "zk_raw.csv", raw);
  write_file(out / "zk_ratios.csv", ratios);
  write_file(out / "zk.json", meta.dump(2) + "\n");
  return ExitCode::kPass;
}

// ---------------------------------------------------- greedy uniformity

UniformityRow uniformity_cell(const ExperimentConfig& c, std::size_t n, std::size_t gi,
                              std::size_t k) {
  UniformityRow row;
  Graph g = gen_gnp(n, c.p, graph_seed(c.master_seed, n, gi));
  std::uint64_t cs = cell_seed(c.master_seed, "greedy-uniformity", n, gi);
  row.n = n;
  row.graph_index = gi;
  row.graph_hash = g.hash();
  row.k = k;
  std::vector<std::optional<std::pair<VertexSet, double>>> found(c.trials);
  parallel_for(c.trials, c.parallelism, [&](std::size_t t) {
    RunRecord r = greedy_run(g, k, derive_seed(cs, t));
    if (r.success()) found[t] = std::make_pair(*r.set, greedy_set_probability(g, *r.set));
  });
  row.min_p = INFINITY;
  row.max_p = 0.0;
  for (auto& f : found) {
    if (!f) continue;
    row.min_p = std::min(row.min_p, f->second);
    row.max_p = std::max(row.max_p, f->second);
    row.samples.push_back(std::move(*f));
  }
  row.sets = row.samples.size();
  row.ratio = row.sets > 0 ? row.max_p / row.min_p : NAN;
  if (row.sets == 0) row.min_p = NAN;
  return row;
}

std::string uniformity_csv_header() {
  return "n,graph_seed,graph_hash,k,sets,min_p,max_p,ratio";
}

std::string uniformity_csv_row(const UniformityRow& r) {
  std::ostringstream os;
  os << r.n << ',' << r.graph_index << ',' << r.graph_hash << ',' << r.k << ',' << r.sets << ','
     << format_double(r.min_p) << ',' << format_double(r.max_p) << ',' << format_double(r.ratio);
  return os.str();
}

ExitCode cmd_greedy_uniformity(const ExperimentConfig& c, std::ostream& log) {
  warn_config(c, log);
  std::size_t k = c.k.value_or(6);
  if (k > 9 && !c.force) {
    log << "greedy-uniformity: k = " << k << " > 9 needs force = true (|S|! orders)\n";
    return ExitCode::kUsage;
  }
  fs::path out(c.out_dir);
  Manifest manifest(out / "manifest.json");
  std::string fp = config_fingerprint(c);
  std::string csv = uniformity_csv_header() + "\n";
  std::string raw = "n,graph_seed,set_bits_hex,p_greedy,p_times_mk\n";
  nlohmann::json meta = sidecar(c, "greedy-uniformity");
  for (auto n : c.n) {
    for (std::size_t gi = 0; gi < c.graph_seeds; ++gi) {
      std::string name = cell_name("greedy_uniformity", n, "g" + std::to_string(gi));
      std::string key = "greedy-uniformity/" + fp + "/n=" + std::to_string(n) +
                        "/graph=" + std::to_string(gi);
      fs::path row_file = out / "cells" / (name + ".csv");
      fs::path raw_file = out / "cells" / (name + "_raw.csv");
      if (!(manifest.done(key) && fs::exists(row_file) && fs::exists(raw_file))) {
        log << "greedy-uniformity: n=" << n << " graph " << gi << '\n';
        UniformityRow row = uniformity_cell(c, n, gi, k);
        std::string raw_body;
        double mk = expected_zk(n, k);
        for (const auto& [s, p] : row.samples) {
          raw_body += std::to_string(n) + "," + std::to_string(gi) + "," + s.to_hex() + "," +
                      format_double(p) + "," + format_double(p * mk) + "\n";
        }
        write_file(row_file, uniformity_csv_row(row) + "\n");
        write_file(raw_file, raw_body);
        manifest.mark(key, row_file.filename().string());
      }
      csv += read_file(row_file);
      raw += read_file(raw_file);
    }
  }
  write_file(out / "greedy_uniformity.csv", csv);
  write_file(out / "greedy_uniformity_raw.csv", raw);
  write_file(out / "greedy_uniformity.json", meta.dump(2) + "\n");
  return ExitCode::kPass;
}

// ------------------------------------------------------------ gen/verify

ExitCode cmd_gen(const ExperimentConfig& c, std::ostream& log) {
  warn_config(c, log);
  fs::path out(c.out_dir);
  nlohmann::json meta = sidecar(c, "gen");
  for (auto n : c.n) {
    for (std::size_t gi = 0; gi < c.graph_seeds; ++gi) {
      std::uint64_t seed = graph_seed(c.master_seed, n, gi);
      Graph g = gen_gnp(n, c.p, seed);
      std::string base = "gnp_n" + std::to_string(n) + "_g" + std::to_string(gi);
      std::ostringstream os;
      write_graph(os, g);
      write_file(out / "graphs" / (base + ".hcg"), os.str());
      meta["graphs"].push_back({{"file", base + ".hcg"}, {"hash", g.hash()}, {"seed", seed}});
      for (double s : c.s) {
        if (s == 0.0) continue;
        Graph gp = resample_noise(g, {s, c.p}, derive_seed(seed, "noise"),
                                  {c.common_random_numbers});
        std::string noisy = base + "_s" + format_double(s) + ".hcg";
        std::ostringstream ns;
        write_graph(ns, gp);
        write_file(out / "graphs" / noisy, ns.str());
        meta["graphs"].push_back({{"file", noisy}, {"hash", gp.hash()}, {"s", s}});
      }
      log << "gen: " << base << " hash " << g.hash() << '\n';
    }
  }
  write_file(out / "gen.json", meta.dump(2) + "\n");
  return ExitCode::kPass;
}

ExitCode cmd_verify(const ExperimentConfig& c, std::ostream& log) {
  fs::path out(c.out_dir);
  AcceptanceOptions options;
  options.quick = c.quick;
  options.work_dir = (out / "verify-work").string();
  options.parallelism = c.parallelism;
  options.seed = c.master_seed;
  nlohmann::json reports = nlohmann::json::array();
  bool all = true;
  for (const auto& info : acceptance_criteria()) {
    if (options.quick && !info.quick) continue;
    CriterionResult r = run_criterion(info.id, options);
    log << summary_line(r) << std::endl;
    reports.push_back(nlohmann::json::parse(r.json));
    all = all && r.pass;
  }
  nlohmann::json j = sidecar(c, "verify");
  j["reports"] = reports;
  write_file(out / "verify.json", j.dump(2) + "\n");
  return all ? ExitCode::kPass : ExitCode::kPropertyFailure;
}

ExitCode run_command(const std::string& name, const ExperimentConfig& config, std::ostream& log) {
  try {
    if (name == "gen") return cmd_gen(config, log);
    if (name == "chaos") return cmd_chaos(config, log);
    if (name == "glauber-sample") return cmd_glauber_sample(config, log);
    if (name == "zk") return cmd_zk(config, log);
    if (name == "greedy-uniformity") return cmd_greedy_uniformity(config, log);
    if (name == "verify") return cmd_verify(config, log);
    log << "unknown command '" << name << "'\n";
    return ExitCode::kUsage;
  } catch (const BudgetExceeded& e) {
    log << "budget exceeded: " << e.what() << '\n';
    return ExitCode::kBudgetExceeded;
  } catch (const ContractViolation& e) {
    log << "usage error: " << e.what() << '\n';
    return ExitCode::kUsage;
  }
}

}  // namespace hardcore
