#include "hardcore/config.hpp"

#include <charconv>
#include <iomanip>
#include <sstream>

#include "hardcore/errors.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw ContractViolation("config: " + key + " = '" + value + "': " + why);
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(key, v, "expected an unsigned integer");
  return x;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) bad(key, v, "expected a number");
    return x;
  } catch (const std::logic_error&) {
    bad(key, v, "expected a number");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad(key, v, "expected true or false");
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += f(xs[i]);
  }
  return out;
}

}  // namespace

void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  if (key == "experiment") {
    c.experiment = v;
  } else if (key == "n") {
    c.n.clear();
    for (const auto& x : split(v)) c.n.push_back(to_uint(key, x));
  } else if (key == "p") {
    c.p = to_double(key, v);
  } else if (key == "lambda") {
    c.lambda = to_double(key, v);
  } else if (key == "s") {
    c.s.clear();
    for (const auto& x : split(v)) c.s.push_back(to_double(key, x));
  } else if (key == "C") {
    c.C = to_double(key, v);
  } else if (key == "c_min") {
    c.c_min = to_double(key, v);
  } else if (key == "c_warn") {
    c.c_warn = to_double(key, v);
  } else if (key == "k") {
    c.k = v == "auto" ? std::nullopt : std::optional<std::size_t>(to_uint(key, v));
  } else if (key == "k_minus") {
    c.k_minus = v == "auto" ? std::nullopt : std::optional<std::size_t>(to_uint(key, v));
  } else if (key == "a") {
    c.a = to_uint(key, v);
  } else if (key == "window_upper_log") {
    c.window_upper_log = to_double(key, v);
  } else if (key == "window_upper_loglog") {
    c.window_upper_loglog = to_double(key, v);
  } else if (key == "horizon_factor") {
    c.horizon_factor = to_double(key, v);
  } else if (key == "trials") {
    c.trials = to_uint(key, v);
  } else if (key == "samples") {
    c.samples = to_uint(key, v);
  } else if (key == "samples_per_level") {
    c.samples_per_level = to_uint(key, v);
  } else if (key == "graph_seeds") {
    c.graph_seeds = to_uint(key, v);
  } else if (key == "master_seed" || key == "seed") {
    c.master_seed = to_uint(key, v);
  } else if (key == "out_dir" || key == "out") {
    c.out_dir = v;
  } else if (key == "exact") {
    c.exact = to_bool(key, v);
  } else if (key == "extend") {
    c.extend = to_bool(key, v);
  } else if (key == "common_random_numbers") {
    c.common_random_numbers = to_bool(key, v);
  } else if (key == "quick") {
    c.quick = to_bool(key, v);
  } else if (key == "force") {
    c.force = to_bool(key, v);
  } else if (key == "parallelism") {
    c.parallelism = to_uint(key, v);
  } else if (key == "max_fail_rate") {
    c.max_fail_rate = to_double(key, v);
  } else if (key == "budget") {
    c.budget = to_uint(key, v);
  } else {
    throw ContractViolation("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ContractViolation("config line " + std::to_string(line_no) + ": expected key = value");
    }
    set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  return parse_config(in, std::move(base));
}

std::string to_text(const ExperimentConfig& c) {
  auto opt = [](const std::optional<std::size_t>& x) {
    return x ? std::to_string(*x) : std::string("auto");
  };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  std::ostringstream os;
  os << "experiment = " << c.experiment << '\n'
     << "n = " << join(c.n, [](std::size_t x) { return std::to_string(x); }) << '\n'
     << "p = " << fmt(c.p) << '\n'
     << "lambda = " << fmt(c.lambda) << '\n'
     << "s = " << join(c.s, fmt) << '\n'
     << "C = " << fmt(c.C) << '\n'
     << "c_min = " << fmt(c.c_min) << '\n'
     << "c_warn = " << fmt(c.c_warn) << '\n'
     << "k = " << opt(c.k) << '\n'
     << "k_minus = " << opt(c.k_minus) << '\n'
     << "a = " << c.a << '\n'
     << "window_upper_log = " << fmt(c.window_upper_log) << '\n'
     << "window_upper_loglog = " << fmt(c.window_upper_loglog) << '\n'
     << "horizon_factor = " << fmt(c.horizon_factor) << '\n'
     << "trials = " << c.trials << '\n'
     << "samples = " << c.samples << '\n'
     << "samples_per_level = " << c.samples_per_level << '\n'
     << "graph_seeds = " << c.graph_seeds << '\n'
     << "master_seed = " << c.master_seed << '\n'
     << "out_dir = " << c.out_dir << '\n'
     << "exact = " << flag(c.exact) << '\n'
     << "extend = " << flag(c.extend) << '\n'
     << "common_random_numbers = " << flag(c.common_random_numbers) << '\n'
     << "quick = " << flag(c.quick) << '\n'
     << "force = " << flag(c.force) << '\n'
     << "parallelism = " << c.parallelism << '\n'
     << "max_fail_rate = " << fmt(c.max_fail_rate) << '\n'
     << "budget = " << c.budget << '\n';
  return os.str();
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& what) { throw ContractViolation("config: " + what); };
  if (c.n.empty()) fail("n must list at least one size");
  for (auto n : c.n) {
    if (n < 1) fail("n must be >= 1");
  }
  if (!(c.p > 0.0 && c.p < 1.0)) fail("p must lie in (0, 1)");
  if (!(c.lambda > 0.0)) fail("lambda must be positive");
  for (double s : c.s) {
    if (!(s >= 0.0 && s <= 1.0)) fail("s values must lie in [0, 1]");
  }
  if (c.C < c.c_min) fail("C must be >= " + fmt(c.c_min));
  if (c.trials < 1) fail("trials must be >= 1");
  if (c.samples < 2) fail("samples must be >= 2");
  if (c.graph_seeds < 1) fail("graph_seeds must be >= 1");
  if (c.parallelism < 1) fail("parallelism must be >= 1");
  if (!(c.horizon_factor > 0.0)) fail("horizon_factor must be positive");
  if (!(c.max_fail_rate >= 0.0 && c.max_fail_rate <= 1.0)) fail("max_fail_rate must lie in [0, 1]");
  std::vector<std::string> warnings;
  if (c.C < c.c_warn) {
    warnings.push_back("C = " + fmt(c.C) + " is below " + fmt(c.c_warn) +
                       "; the moment concentration of ell-up-degrees needs C > 20");
  }
  return warnings;
}

void apply_preset(ExperimentConfig& c, const std::string& name) {
  if (name == "paper-theorem-1.2") {
    c.C = 30.0;
    c.lambda = 1.0;
    c.p = 0.5;
    c.horizon_factor = 100.0;
    c.k.reset();
  } else {
    throw ContractViolation("unknown preset '" + name + "'");
  }
}

std::string to_json(const ExperimentConfig& c) {
  nlohmann::json j = {{"experiment", c.experiment},
                      {"n", c.n},
                      {"p", c.p},
                      {"lambda", c.lambda},
                      {"s", c.s},
                      {"C", c.C},
                      {"c_min", c.c_min},
                      {"c_warn", c.c_warn},
                      {"a", c.a},
                      {"window_upper_log", c.window_upper_log},
                      {"window_upper_loglog", c.window_upper_loglog},
                      {"horizon_factor", c.horizon_factor},
                      {"trials", c.trials},
                      {"samples", c.samples},
                      {"samples_per_level", c.samples_per_level},
                      {"graph_seeds", c.graph_seeds},
                      {"master_seed", c.master_seed},
                      {"exact", c.exact},
                      {"extend", c.extend},
                      {"common_random_numbers", c.common_random_numbers},
                      {"quick", c.quick},
                      {"force", c.force},
                      {"parallelism", c.parallelism},
                      {"max_fail_rate", c.max_fail_rate},
                      {"budget", c.budget}};
  j["k"] = c.k ? nlohmann::json(*c.k) : nlohmann::json("auto");
  j["k_minus"] = c.k_minus ? nlohmann::json(*c.k_minus) : nlohmann::json("auto");
  return j.dump();
}

}  // namespace hardcore
