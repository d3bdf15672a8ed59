#include "hardcore/lemmas.hpp"

#include <bit>
#include <functional>

#include "hardcore/errors.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

constexpr std::size_t kMaxGround = 12;

std::vector<std::uint32_t> subsets_of_size(std::size_t m, std::size_t ell) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) == ell) out.push_back(mask);
  }
  return out;
}

void validate(std::size_t m, std::size_t ell, std::size_t d) {
  if (m == 0 || m > kMaxGround) throw ContractViolation("lemma checker: m must be in 1..12");
  if (ell == 0 || ell > m) throw ContractViolation("lemma checker: ell must be in 1..m");
  if (d == 0) throw ContractViolation("lemma checker: d must be positive");
}

// Calls f(tuple) for each ordered d-tuple until the cap; returns false if capped.
bool for_each_tuple(const std::vector<std::uint32_t>& sets, std::size_t d, std::uint64_t cap,
                    std::uint64_t& checked,
                    const std::function<bool(const std::vector<std::uint32_t>&)>& f) {
  std::vector<std::size_t> idx(d, 0);
  std::vector<std::uint32_t> tuple(d, sets[0]);
  checked = 0;
  for (;;) {
    if (checked >= cap) return false;
    for (std::size_t i = 0; i < d; ++i) tuple[i] = sets[idx[i]];
    ++checked;
    if (!f(tuple)) return true;
    std::size_t pos = 0;
    while (pos < d && ++idx[pos] == sets.size()) idx[pos++] = 0;
    if (pos == d) return true;
  }
}

std::vector<std::vector<std::size_t>> as_lists(const std::vector<std::uint32_t>& tuple) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask : tuple) {
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < 32; ++v) {
      if (mask >> v & 1U) members.push_back(v);
    }
    out.push_back(members);
  }
  return out;
}

std::uint32_t union_of(const std::vector<std::uint32_t>& tuple) {
  std::uint32_t u = 0;
  for (std::uint32_t a : tuple) u |= a;
  return u;
}

std::uint64_t choose2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

LemmaReport base_report(const char* name, std::size_t m, std::size_t ell, std::size_t d,
                        std::uint64_t cap) {
  LemmaReport r;
  r.check_name = name;
  r.m = m;
  r.ell = ell;
  r.d = d;
  r.cap = cap;
  return r;
}

nlohmann::json parameters(const LemmaReport& r) {
  return {{"m", r.m}, {"ell", r.ell}, {"d", r.d}, {"tuple_cap", r.cap},
          {"tuples_checked", r.tuples_checked}, {"capped", r.capped}};
}

}  // namespace

LemmaReport check_vertex_overlap(std::size_t m, std::size_t ell, std::size_t d,
                                 std::uint64_t cap) {
  validate(m, ell, d);
  LemmaReport r = base_report("vertex_overlap", m, ell, d, cap);
  std::vector<std::uint32_t> sets = subsets_of_size(m, ell);
  r.capped = !for_each_tuple(sets, d, cap, r.tuples_checked, [&](const auto& tuple) {
    std::size_t u = std::popcount(union_of(tuple));
    if (2 * u <= 2 * d * ell - d) return true;
    for (std::size_t j = 0; j < d; ++j) {
      std::uint32_t rest = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (i != j) rest |= tuple[i];
      }
      if ((tuple[j] & rest) == 0) return true;
    }
    r.verdict = false;
    r.counterexample_json = nlohmann::json{{"sets", as_lists(tuple)}, {"union_size", u}}.dump();
    return false;
  });
  return r;
}

LemmaReport check_edge_bound(std::size_t m, std::size_t ell, std::size_t d, std::uint64_t cap) {
  validate(m, ell, d);
  LemmaReport r = base_report("edge_bound", m, ell, d, cap);
  if (d * ell >= m) return r;  // hypothesis d ell < m never holds
  std::vector<std::uint32_t> sets = subsets_of_size(m, ell);
  const std::uint64_t c_ell = choose2(ell);
  r.capped = !for_each_tuple(sets, d, cap, r.tuples_checked, [&](const auto& tuple) {
    std::size_t u = std::popcount(union_of(tuple));
    std::uint64_t a = d * ell - u;
    std::uint64_t pairs[2] = {0, 0};  // up to C(12,2) = 66 pair bits
    for (std::uint32_t set : tuple) {
      std::size_t bit = 0;
      for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y, ++bit) {
          if ((set >> x & 1U) && (set >> y & 1U)) pairs[bit / 64] |= 1ULL << (bit % 64);
        }
      }
    }
    std::uint64_t covered = std::popcount(pairs[0]) + std::popcount(pairs[1]);
    // ell * covered >= ell * d * C(ell,2) - min(a * C(ell,2), ell * C(a,2))
    std::uint64_t lhs = ell * covered;
    std::uint64_t deficit = std::min(a * c_ell, ell * choose2(a));
    std::uint64_t rhs = ell * d * c_ell;
    if (lhs + deficit >= rhs) return true;
    r.verdict = false;
    r.counterexample_json =
        nlohmann::json{{"sets", as_lists(tuple)}, {"a", a}, {"covered_pairs", covered}}.dump();
    return false;
  });
  return r;
}

ConfigReport check_config_bound(std::size_t m, std::size_t ell, std::size_t d,
                                std::uint64_t cap) {
  validate(m, ell, d);
  ConfigReport out;
  out.report = base_report("config_bound", m, ell, d, cap);
  const std::size_t total = d * ell;
  std::vector<std::uint64_t> counts(total + 1, 0);
  std::vector<std::uint32_t> sets = subsets_of_size(m, ell);
  out.report.capped = !for_each_tuple(sets, d, cap, out.report.tuples_checked,
                                      [&](const auto& tuple) {
                                        ++counts[total - std::popcount(union_of(tuple))];
                                        return true;
                                      });
  BigInt arrangements = factorial(total);
  BigInt ell_fact = factorial(ell);
  for (std::size_t i = 0; i < d; ++i) arrangements /= ell_fact;
  for (std::size_t a = 0; a <= total; ++a) {
    if (counts[a] == 0) continue;
    ConfigRow row;
    row.a = a;
    row.count = counts[a];
    BigInt choose_union = binomial(m, total - a);
    BigInt stated = a == 0 ? BigInt(1) : binomial(total - 1, a - 1);
    BigInt corrected = binomial(total - 1, a);
    row.bound = choose_union * stated * arrangements;
    row.corrected_bound = choose_union * corrected * arrangements;
    BigInt count(std::to_string(row.count));
    if (count > row.bound && out.report.verdict) {
      out.report.verdict = false;
      out.report.counterexample_json =
          nlohmann::json{{"a", a}, {"N_a", row.count}, {"bound", row.bound.get_str()}}.dump();
    }
    if (count > row.corrected_bound) out.corrected_verdict = false;
    out.rows.push_back(row);
  }
  return out;
}

void write_lemma_json(std::ostream& out, const LemmaReport& report) {
  nlohmann::json j;
  j["check_name"] = report.check_name;
  j["parameters"] = parameters(report);
  j["verdict"] = report.verdict;
  if (report.counterexample_json) {
    j["counterexample"] = nlohmann::json::parse(*report.counterexample_json);
  }
  out << j.dump(2) << '\n';
}

void write_lemma_json(std::ostream& out, const ConfigReport& report) {
  nlohmann::json j;
  j["check_name"] = report.report.check_name;
  j["parameters"] = parameters(report.report);
  j["verdict"] = report.report.verdict;
  j["corrected_verdict"] = report.corrected_verdict;
  for (const auto& row : report.rows) {
    j["rows"].push_back({{"a", row.a},
                         {"N_a", row.count},
                         {"bound", row.bound.get_str()},
                         {"corrected_bound", row.corrected_bound.get_str()}});
  }
  if (report.report.counterexample_json) {
    j["counterexample"] = nlohmann::json::parse(*report.report.counterexample_json);
  }
  out << j.dump(2) << '\n';
}

}  // namespace hardcore
