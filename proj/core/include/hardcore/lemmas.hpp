#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hardcore/rational.hpp"

namespace hardcore {

inline constexpr std::uint64_t kDefaultTupleCap = 10'000'000;

// Brute-force check over ordered d-tuples (A_1, .., A_d) of ell-subsets of
// [m]. `tuples_checked` stops at `cap`; `capped` reports truncation.
struct LemmaReport {
  std::string check_name;
  std::size_t m = 0;
  std::size_t ell = 0;
  std::size_t d = 0;
  bool verdict = true;
  std::uint64_t tuples_checked = 0;
  std::uint64_t cap = kDefaultTupleCap;
  bool capped = false;
  std::optional<std::string> counterexample_json;
};

// If |A_1 ∪ .. ∪ A_d| > d ell - d/2 then some A_j is disjoint from the union
// of the others. (Compared as 2|∪| > 2 d ell - d.)
LemmaReport check_vertex_overlap(std::size_t m, std::size_t ell, std::size_t d,
                                 std::uint64_t cap = kDefaultTupleCap);

// With |∪ A_i| = d ell - a and d ell < m, the pairs covered by the A_i number
// at least d C(ell,2) - min{(a/ell) C(ell,2), C(a,2)}.
LemmaReport check_edge_bound(std::size_t m, std::size_t ell, std::size_t d,
                             std::uint64_t cap = kDefaultTupleCap);

struct ConfigRow {
  std::size_t a = 0;
  std::uint64_t count = 0;   // N_a: tuples with |∪ A_i| = d ell - a
  BigInt bound;              // C(m, d ell - a) C(d ell - 1, a - 1) (d ell)! / (ell!)^d
  BigInt corrected_bound;    // same with C(d ell - 1, a)
};

struct ConfigReport {
  LemmaReport report;               // verdict of the bound as stated
  bool corrected_verdict = true;    // verdict with the C(d ell - 1, a) factor
  std::vector<ConfigRow> rows;      // attainable a only
};

// N_a <= C(m, d ell - a) C(d ell - 1, a - 1) (d ell)! / (ell!)^d for every
// attainable a. The a = 0 multiplicity factor is taken as 1 (one way to
// distribute zero excess appearances).
ConfigReport check_config_bound(std::size_t m, std::size_t ell, std::size_t d,
                                std::uint64_t cap = kDefaultTupleCap);

void write_lemma_json(std::ostream& out, const LemmaReport& report);
void write_lemma_json(std::ostream& out, const ConfigReport& report);

}  // namespace hardcore
