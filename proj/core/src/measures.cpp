#include "hardcore/measures.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <sstream>

#include "json.hpp"

namespace hardcore {

Enumeration enumerate_independent_sets(const Graph& g, std::optional<std::size_t> max_size,
                                       std::uint64_t budget) {
  const std::size_t n = g.order();
  const std::size_t cap = std::min(max_size.value_or(n), n);
  Enumeration out;
  VertexSet all = VertexSet::full(n);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= cap; ++k) {
    std::uint64_t zk = count_independent_subsets(g, all, k);
    if (zk == 0) break;
    total += zk;
    if (total > budget) {
      throw BudgetExceeded("enumerate_independent_sets", total, budget);
    }
    out.profile.zk.push_back(zk);
  }
  out.profile.partition = total;
  out.sets.reserve(total);
  VertexSet none(n);
  for (std::size_t k = 0; k < out.profile.zk.size(); ++k) {
    for_each_completion(g, none, k, [&](const VertexSet& s) {
      out.sets.push_back(s);
      return true;
    });
  }
  return out;
}

double mk_forward_ratio(std::size_t n, std::size_t k) {
  if (k > n) throw ContractViolation("mk ratio requires k <= n");
  return static_cast<double>(n - k) / (static_cast<double>(k + 1) * std::exp2(static_cast<double>(k)));
}

std::pair<double, double> mk_ratio_check(std::size_t n, std::size_t k) {
  if (k == 0) throw ContractViolation("M_{k-1}/M_k is undefined at k = 0");
  if (k > n) throw ContractViolation("mk ratio requires k <= n");
  double forward = mk_forward_ratio(n, k);
  double backward = static_cast<double>(k) * std::exp2(static_cast<double>(k) - 1.0) /
                    static_cast<double>(n - k + 1);
  return {forward, backward};
}

std::size_t kstar(std::size_t n) {
  if (n < 2) return 0;
  double l = lg(static_cast<double>(n));
  double x = l - (l > 1.0 ? lg(l) : 0.0);
  if (x <= 0) return 0;
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

WindowParams make_window(std::size_t n, std::size_t a) {
  WindowParams w{kstar(n), a};
  if (a > w.kstar) throw ContractViolation("window radius must satisfy a <= k*");
  return w;
}

double mass_outside_window(const std::vector<double>& law, const WindowParams& window) {
  double outside = 0.0;
  for (std::size_t k = 0; k < law.size(); ++k) {
    if (k < window.lo() || k > window.hi()) outside += law[k];
  }
  return outside;
}

void write_measure_csv(std::ostream& out, const ExactMeasure& mu) {
  out << "set_bits_hex,probability\n";
  std::ostringstream row;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out << mu.support[i].to_hex() << ',' << std::setprecision(17) << mu.probs[i] << '\n';
  }
}

void write_measure_csv(std::ostream& out, const RationalMeasure& mu) {
  out << "set_bits_hex,probability\n";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out << mu.support[i].to_hex() << ',' << mu.probs[i].get_str() << '\n';
  }
}

void write_measure_sidecar(std::ostream& out, std::size_t n, const std::string& lambda,
                           const std::string& graph_hash) {
  nlohmann::json j;
  j["n"] = n;
  j["lambda"] = lambda;
  j["graph_hash"] = graph_hash;
  out << j.dump(2) << '\n';
}

ExactMeasure read_measure_csv(std::istream& in, std::size_t n) {
  std::string line;
  if (!std::getline(in, line) || line != "set_bits_hex,probability") {
    throw std::runtime_error("measure csv: bad header");
  }
  ExactMeasure mu{n, {}, {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("measure csv: bad row");
    mu.support.push_back(VertexSet::from_hex(n, line.substr(0, comma)));
    std::string prob = line.substr(comma + 1);
    if (prob.find('/') != std::string::npos) {
      mu.probs.push_back(Rational(prob).get_d());
    } else {
      mu.probs.push_back(std::stod(prob));
    }
  }
  return mu;
}

}  // namespace hardcore
