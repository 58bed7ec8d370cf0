#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nht {

// Residue arithmetic works on 64-bit magnitudes and widens to 128 bits for
// products, so any prime below 2^64 is usable.
using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct ModulusMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mathematically ill-defined requests: inverting zero, using a
// non-orthogonal generator where one is required, and so on.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  // a, b < m; compute without overflowing when m is close to 2^64
  return a >= m - b ? a - (m - b) : a + b;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Miller-Rabin with the first twelve primes as witnesses; deterministic for
// every n < 3.3e24, which covers the full 64-bit range.
inline bool miller_rabin(u64 n) {
  constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : witnesses) {
    if (a % n == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  return detail::miller_rabin(n);
}

namespace detail {

// Brent's variant of Pollard rho. n must be an odd composite.
inline u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return addmod(mulmod(x, x, n), c, n); };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 block = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factors of n with multiplicity, in ascending order; empty for n = 1.
/// Trial division up to 10^6 strips small factors before Pollard rho.
inline std::vector<u64> prime_factors(u64 n) {
  if (n == 0) throw std::invalid_argument("prime_factors: 0 has no factorization");
  std::vector<u64> out;
  for (u64 q = 2; q <= 1'000'000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (n % q == 0) {
      out.push_back(q);
      n /= q;
    }
  }
  if (n > 1) detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Distinct prime divisors of n in ascending order.
inline std::vector<u64> distinct_prime_factors(u64 n) {
  auto f = prime_factors(n);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

class PrimeModulus {
 public:
  explicit PrimeModulus(u64 p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }

  u64 value() const { return p_; }

  u64 reduce(u64 x) const { return x % p_; }
  u64 reduce_signed(std::int64_t x) const {
    if (x >= 0) return static_cast<u64>(x) % p_;
    u64 r = static_cast<u64>(-(x + 1)) % p_;  // |x| - 1 without overflow at INT64_MIN
    return p_ - 1 - r;
  }

  // Raw helpers on canonical representatives; no range checks.
  u64 add(u64 a, u64 b) const { return detail::addmod(a, b, p_); }
  u64 sub(u64 a, u64 b) const { return detail::submod(a, b, p_); }
  u64 mul(u64 a, u64 b) const { return detail::mulmod(a, b, p_); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 pow(u64 a, u64 e) const { return detail::powmod(a, e, p_); }
  u64 inv(u64 a) const {
    if (a % p_ == 0) throw DomainError("zero has no inverse mod " + std::to_string(p_));
    // extended Euclid on signed 128-bit to stay exact for any 64-bit p
    __int128 r0 = p_, r1 = a % p_, t0 = 0, t1 = 1;
    while (r1 != 0) {
      __int128 q = r0 / r1;
      std::swap(r0 -= q * r1, r1);
      std::swap(t0 -= q * t1, t1);
    }
    if (t0 < 0) t0 += p_;
    return static_cast<u64>(t0);
  }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  u64 p_;
};

class Residue {
 public:
  Residue(u64 value, PrimeModulus m) : value_(m.reduce(value)), mod_(m) {}

  static Residue from_signed(std::int64_t value, PrimeModulus m) {
    Residue r(0, m);
    r.value_ = m.reduce_signed(value);
    return r;
  }

  u64 value() const { return value_; }
  PrimeModulus modulus() const { return mod_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const Residue&, const Residue&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.value_ << " (mod " << r.mod_.value() << ")";
  }

 private:
  u64 value_;
  PrimeModulus mod_;
};

namespace detail {
inline void require_same(const Residue& x, const Residue& y) {
  if (x.modulus() != y.modulus())
    throw ModulusMismatch("residues mod " + std::to_string(x.modulus().value()) + " and mod " +
                          std::to_string(y.modulus().value()));
}
}  // namespace detail

inline Residue mod_add(const Residue& x, const Residue& y) {
  detail::require_same(x, y);
  return Residue(x.modulus().add(x.value(), y.value()), x.modulus());
}

inline Residue mod_sub(const Residue& x, const Residue& y) {
  detail::require_same(x, y);
  return Residue(x.modulus().sub(x.value(), y.value()), x.modulus());
}

inline Residue mod_mul(const Residue& x, const Residue& y) {
  detail::require_same(x, y);
  return Residue(x.modulus().mul(x.value(), y.value()), x.modulus());
}

inline Residue mod_inv(const Residue& x) { return Residue(x.modulus().inv(x.value()), x.modulus()); }

inline Residue operator+(const Residue& x, const Residue& y) { return mod_add(x, y); }
inline Residue operator-(const Residue& x, const Residue& y) { return mod_sub(x, y); }
inline Residue operator*(const Residue& x, const Residue& y) { return mod_mul(x, y); }

/// A vector of canonical residues sharing one prime modulus.
class ResidueVector {
 public:
  ResidueVector(PrimeModulus m, std::vector<u64> values) : mod_(m), values_(std::move(values)) {
    for (auto& v : values_) v = mod_.reduce(v);
  }

  static ResidueVector zeros(PrimeModulus m, std::size_t n) { return {m, std::vector<u64>(n, 0)}; }

  static ResidueVector from_signed(PrimeModulus m, std::span<const std::int64_t> values) {
    std::vector<u64> out;
    out.reserve(values.size());
    for (auto v : values) out.push_back(m.reduce_signed(v));
    return {m, std::move(out)};
  }

  PrimeModulus modulus() const { return mod_; }
  std::size_t size() const { return values_.size(); }
  u64 operator[](std::size_t i) const { return values_[i]; }
  Residue at(std::size_t i) const { return Residue(values_.at(i), mod_); }
  std::span<const u64> values() const { return values_; }
  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](u64 v) { return v == 0; });
  }

  friend bool operator==(const ResidueVector&, const ResidueVector&) = default;
  friend auto operator<=>(const ResidueVector& a, const ResidueVector& b) {
    return a.values_ <=> b.values_;
  }

 private:
  PrimeModulus mod_;
  std::vector<u64> values_;
};

inline std::string to_string(std::span<const u64> values, std::string_view sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(values[i]);
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const ResidueVector& v) {
  return os << "(" << to_string(v.values()) << ") mod " << v.modulus().value();
}

}  // namespace nht
