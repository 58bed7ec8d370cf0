#pragma once

#include <nht/circulant.hpp>
#include <nht/families.hpp>

#include <limits>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace nht {

enum class Pattern { TwoValue, ThreeValue, Explicit };

inline std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::TwoValue:
      return "two-value";
    case Pattern::ThreeValue:
      return "three-value";
    case Pattern::Explicit:
      return "explicit";
  }
  return "?";
}

/// A printed table cell that the recomputation disagrees with.
struct Discrepancy {
  std::string column;
  u64 printed;
  u64 computed;
  friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
};

/// Validated (M, generator, p, k) tuple. For the two-value pattern
/// (a, b, a, ..., a) off_diagonal is 2ab + (M-2)a^2; for the three-value
/// pattern (a, b, 1, ..., 1) it is gcd(ab + a + b + M - 3, 2a + 2b + M - 4).
struct FamilyRecord {
  std::size_t order;
  Pattern pattern;
  u64 a;
  u64 b;
  u64 off_diagonal;
  PrimeModulus p;
  Residue k;
  Generator generator;
  std::vector<Discrepancy> discrepancies;

  /// Even orders are not exhibited by the known constructions.
  bool extrapolated() const { return order % 2 == 0; }
};

struct BudgetExceeded : std::length_error {
  using std::length_error::length_error;
};

namespace detail {

inline u64 checked(u128 v, const char* what) {
  if (v > std::numeric_limits<u64>::max()) throw std::overflow_error(std::string(what) + " exceeds 64 bits");
  return static_cast<u64>(v);
}

inline std::vector<u64> pattern_entries(std::size_t order, u64 first, u64 second, u64 rest) {
  std::vector<u64> v(order, rest);
  v[0] = first;
  v[1] = second;
  return v;
}

// Emits a record for each odd prime q | divisor whose reduced generator is
// non-constant with nonzero diagonal.
inline std::vector<FamilyRecord> records_for(std::size_t order, Pattern pattern, u64 a, u64 b, u64 divisor,
                                             u64 diagonal, const std::vector<u64>& raw) {
  std::vector<FamilyRecord> out;
  if (divisor < 3) return out;
  for (u64 q : distinct_prime_factors(divisor)) {
    if (q == 2) continue;
    PrimeModulus m(q);
    if (m.reduce(diagonal) == 0) continue;
    std::vector<u64> reduced(raw);
    for (auto& x : reduced) x = m.reduce(x);
    if (std::all_of(reduced.begin(), reduced.end(), [](u64 x) { return x == 0; })) continue;
    Generator g(m, std::move(reduced));
    if (g.is_constant()) continue;
    out.push_back(FamilyRecord{order, pattern, a, b, divisor, m, Residue(diagonal, m), std::move(g), {}});
  }
  return out;
}

}  // namespace detail

/// Two-value family (a, b, a, ..., a). Every nonzero shift correlates to
/// t = 2ab + (M-2)a^2, so each odd prime q | t with (M-1)a^2 + b^2 != 0 mod q
/// yields an orthogonal generator mod q.
inline std::vector<FamilyRecord> theorem1_candidates(u64 a, u64 b, std::size_t order) {
  if (a < 1 || b < 1) throw std::invalid_argument("two-value family needs a, b >= 1");
  if (order < 3) throw std::invalid_argument("two-value family needs M >= 3");
  if (a == b) throw std::invalid_argument("two-value family needs a != b");
  const u128 m2 = order - 2;
  const u64 t = detail::checked(2 * static_cast<u128>(a) * b + m2 * a * a, "off-diagonal term");
  const u64 diag = detail::checked(static_cast<u128>(order - 1) * a * a + static_cast<u128>(b) * b, "diagonal term");
  return detail::records_for(order, Pattern::TwoValue, a, b, t, diag, detail::pattern_entries(order, a, b, a));
}

/// Three-value family (a, b, 1, ..., 1). C(1) and C(M-1) equal
/// ab + a + b + M - 3, every other nonzero shift equals 2a + 2b + M - 4, so
/// candidate moduli are the odd prime divisors of their gcd.
inline std::vector<FamilyRecord> three_value_candidates(u64 a, u64 b, std::size_t order) {
  if (a < 1 || b < 1) throw std::invalid_argument("three-value family needs a, b >= 1");
  if (order < 4) throw std::invalid_argument("three-value family needs M >= 4");
  const u128 m = order;
  const u64 first = detail::checked(static_cast<u128>(a) * b + a + b + m - 3, "off-diagonal term");
  const u64 second = detail::checked(2 * static_cast<u128>(a) + 2 * static_cast<u128>(b) + m - 4, "off-diagonal term");
  const u64 diag = detail::checked(static_cast<u128>(a) * a + static_cast<u128>(b) * b + m - 2, "diagonal term");
  return detail::records_for(order, Pattern::ThreeValue, a, b, std::gcd(first, second), diag,
                             detail::pattern_entries(order, a, b, 1));
}

// ---------------------------------------------------------------------------
// Table reproduction

/// One printed row: off_diagonal and p are the printed columns (Tables 1 and
/// 2 print only p = off_diagonal).
struct PrintedRow {
  u64 a;
  u64 b;
  u64 off_diagonal;
  u64 p;
  u64 k;
};

inline const std::vector<PrintedRow>& printed_table(int id) {
  static const std::vector<PrintedRow> t1 = {
      {1, 2, 7, 7, 1},     {1, 4, 11, 11, 9},   {1, 5, 13, 13, 3},   {1, 7, 17, 17, 2},  {1, 8, 19, 19, 11},
      {1, 10, 23, 23, 12}, {1, 13, 29, 29, 28}, {1, 14, 31, 31, 14}, {1, 17, 37, 37, 34},
  };
  static const std::vector<PrintedRow> t2 = {
      {1, 3, 11, 11, 4},  {1, 4, 13, 13, 9},  {1, 6, 17, 17, 8},  {1, 7, 19, 19, 17},
      {1, 9, 23, 23, 18}, {1, 12, 29, 29, 5}, {1, 13, 31, 31, 20}, {1, 18, 41, 41, 2},
  };
  static const std::vector<PrintedRow> t3 = {
      {2, 6, 44, 11, 8},   {2, 8, 52, 13, 10}, {2, 12, 68, 17, 15}, {2, 14, 76, 19, 11},
      {3, 2, 57, 19, 1},   {3, 4, 69, 23, 1},  {3, 7, 89, 89, 5},   {3, 8, 93, 31, 25},
      {3, 11, 111, 37, 27}, {4, 1, 88, 11, 9}, {4, 3, 104, 13, 1},
  };
  switch (id) {
    case 1:
      return t1;
    case 2:
      return t2;
    case 3:
      return t3;
  }
  throw std::invalid_argument("no table " + std::to_string(id) + " (expected 1, 2 or 3)");
}

inline std::size_t table_order(int id) { return id == 1 ? 5 : 7; }

/// Regenerates a table from the two-value construction, choosing the largest
/// suitable prime per row and recording any cell that differs from print.
inline std::vector<FamilyRecord> reproduce_table(int id) {
  const auto& printed = printed_table(id);
  const std::size_t order = table_order(id);
  std::vector<FamilyRecord> out;
  for (const auto& row : printed) {
    auto recs = theorem1_candidates(row.a, row.b, order);
    if (recs.empty()) throw DomainError("no suitable prime for a=" + std::to_string(row.a) + " b=" + std::to_string(row.b));
    FamilyRecord rec = recs.back();  // ascending q
    if (id == 3 && rec.off_diagonal != row.off_diagonal)
      rec.discrepancies.push_back({"off_diagonal", row.off_diagonal, rec.off_diagonal});
    if (rec.p.value() != row.p) rec.discrepancies.push_back({"p", row.p, rec.p.value()});
    if (rec.k.value() != row.k) rec.discrepancies.push_back({"k", row.k, rec.k.value()});
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<FamilyRecord> table1() { return reproduce_table(1); }
inline std::vector<FamilyRecord> table2() { return reproduce_table(2); }
inline std::vector<FamilyRecord> table3() { return reproduce_table(3); }

// ---------------------------------------------------------------------------
// Parameter sweeps

struct Range {
  u64 lo;
  u64 hi;
  bool contains(u64 x) const { return lo <= x && x <= hi; }
};

enum class PatternSelector { TwoValue, ThreeValue, Both };

struct SweepConfig {
  Range order{3, 9};
  Range a{1, 4};
  Range b{1, 20};
  u64 max_factor = std::numeric_limits<u64>::max();
  PatternSelector patterns = PatternSelector::TwoValue;

  void validate() const {
    for (const Range* r : {&order, &a, &b})
      if (r->lo > r->hi) throw std::invalid_argument("sweep range is empty");
    if (a.lo == 0 || b.lo == 0) throw std::invalid_argument("sweep needs a, b >= 1");
    if (order.hi - order.lo > 1000 || a.hi - a.lo > 100000 || b.hi - b.lo > 100000)
      throw std::invalid_argument("sweep range too large");
  }
};

/// Runs the selected constructions over every (M, a, b) in range, skipping
/// parameter combinations outside a family's preconditions and records whose
/// off-diagonal term exceeds max_factor.
inline std::vector<FamilyRecord> sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<FamilyRecord> out;
  auto keep = [&](std::vector<FamilyRecord> recs) {
    for (auto& r : recs)
      if (r.off_diagonal <= cfg.max_factor) out.push_back(std::move(r));
  };
  for (u64 m = cfg.order.lo; m <= cfg.order.hi; ++m)
    for (u64 a = cfg.a.lo; a <= cfg.a.hi; ++a)
      for (u64 b = cfg.b.lo; b <= cfg.b.hi; ++b) {
        if (cfg.patterns != PatternSelector::ThreeValue && m >= 3 && a != b)
          keep(theorem1_candidates(a, b, m));
        if (cfg.patterns != PatternSelector::TwoValue && m >= 4) keep(three_value_candidates(a, b, m));
      }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive search

struct SearchOptions {
  u64 budget = 100'000'000;
  unsigned threads = 1;
};

namespace detail {

inline u64 saturating_power(u64 base, std::size_t exp) {
  u128 acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<u64>::max()) return std::numeric_limits<u64>::max();
  }
  return static_cast<u64>(acc);
}

// C(j) = C(M - j), so shifts 1..M/2 decide orthogonality.
inline bool passes(PrimeModulus m, std::span<const u64> v) {
  const std::size_t n = v.size();
  for (std::size_t j = 1; j <= n / 2; ++j)
    if (cyclic_correlation(m, v, j) != 0) return false;
  return cyclic_correlation(m, v, 0) != 0;
}

// Candidates (1, second, x_3, ..., x_M) with x_i over [0, p).
inline void search_partition(PrimeModulus m, std::size_t n, u64 second, std::set<Generator>& found) {
  std::vector<u64> v(n, 0);
  v[0] = 1;
  v[1] = second;
  const u64 p = m.value();
  while (true) {
    if (passes(m, v)) found.insert(canonical_form(Generator(m, v)));
    std::size_t i = n - 1;
    while (i >= 2 && ++v[i] == p) v[i--] = 0;
    if (i < 2) break;
  }
}

}  // namespace detail

/// All orthogonal classes at (p, M), one canonical representative each
/// (see canonical_form), in ascending lexicographic order.
///
/// Every class has a member with leading entry 1, so only p^(M-1) candidates
/// are examined; partitions by second entry run on up to opts.threads threads.
inline std::vector<Generator> exhaustive_search(PrimeModulus m, std::size_t order, SearchOptions opts = {}) {
  if (m.value() == 2) throw std::invalid_argument("exhaustive_search needs an odd prime modulus");
  if (order < 2) throw std::invalid_argument("exhaustive_search needs M >= 2");
  const u64 space = detail::saturating_power(m.value(), order);
  if (space > opts.budget)
    throw BudgetExceeded(std::to_string(m.value()) + "^" + std::to_string(order) + " candidates exceed budget " +
                         std::to_string(opts.budget));

  const u64 p = m.value();
  const unsigned workers = static_cast<unsigned>(std::clamp<u64>(opts.threads, 1, p));
  std::vector<std::set<Generator>> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (u64 second = w; second < p; second += workers) detail::search_partition(m, order, second, partial[w]);
      });
  }
  std::set<Generator> merged;
  for (auto& s : partial) merged.merge(s);
  return {merged.begin(), merged.end()};
}

}  // namespace nht
