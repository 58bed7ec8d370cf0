#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library; everything is plain signed integer arithmetic.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Seq = std::vector<std::int64_t>;

inline bool trial_division_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t floor_mod(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

inline std::int64_t ext_gcd_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = floor_mod(a, p), s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return floor_mod(s0, p);
}

/// Integer (unreduced) cyclic correlation sum_i a_i a_{i+j}.
inline std::int64_t correlation(const Seq& a, std::size_t j) {
  const std::size_t n = a.size();
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[(i + j) % n];
  return acc;
}

/// First row of R R^T as integers, computed from the explicit matrix product.
inline Seq rrt_first_row(const Seq& a) {
  const std::size_t n = a.size();
  std::vector<Seq> R(n, Seq(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) R[r][c] = a[(c + n - r) % n];
  Seq row(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < n; ++c) row[j] += R[0][c] * R[j][c];
  return row;
}

inline bool orthogonal_mod(const Seq& a, std::int64_t p) {
  if (floor_mod(correlation(a, 0), p) == 0) return false;
  for (std::size_t j = 1; j < a.size(); ++j)
    if (floor_mod(correlation(a, j), p) != 0) return false;
  return true;
}

/// Lexicographic minimum over every shift and nonzero multiple.
inline Seq canonical(const Seq& a, std::int64_t p) {
  const std::size_t n = a.size();
  Seq best;
  for (std::size_t j = 0; j < n; ++j)
    for (std::int64_t w = 1; w < p; ++w) {
      Seq c(n);
      for (std::size_t i = 0; i < n; ++i) c[(i + j) % n] = floor_mod(w * a[i], p);
      if (best.empty() || c < best) best = c;
    }
  return best;
}

/// Filters all p^M vectors and canonicalizes the survivors.
inline std::set<Seq> brute_force_classes(std::int64_t p, std::size_t n) {
  std::set<Seq> out;
  Seq v(n, 0);
  while (true) {
    if (orthogonal_mod(v, p)) out.insert(canonical(v, p));
    std::size_t i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace oracle
