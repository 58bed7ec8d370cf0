#pragma once

#include <nht/circulant.hpp>

#include <iterator>
#include <optional>
#include <set>
#include <vector>

namespace nht {

namespace detail {
inline std::vector<u64> rotate_right(std::span<const u64> v, std::size_t j) {
  const std::size_t n = v.size();
  std::vector<u64> out(n);
  for (std::size_t i = 0; i < n; ++i) out[(i + j) % n] = v[i];
  return out;
}
}  // namespace detail

/// Right cyclic rotation by j (taken mod M): shift((1,2,1,1,1), 1) = (1,1,2,1,1).
inline Generator shift(const Generator& g, std::int64_t j) {
  const auto n = static_cast<std::int64_t>(g.order());
  const auto r = static_cast<std::size_t>(((j % n) + n) % n);
  return Generator(g.modulus(), detail::rotate_right(g.values(), r));
}

inline ResidueVector shift(const ResidueVector& v, std::int64_t j) {
  const auto n = static_cast<std::int64_t>(v.size());
  if (n == 0) return v;
  const auto r = static_cast<std::size_t>(((j % n) + n) % n);
  return {v.modulus(), detail::rotate_right(v.values(), r)};
}

inline Generator scale(const Generator& g, const Residue& w) {
  if (w.modulus() != g.modulus()) throw ModulusMismatch("scale: weight and generator use different moduli");
  if (w.is_zero()) throw std::invalid_argument("scale: zero weight leaves the orthogonal class");
  const auto m = g.modulus();
  std::vector<u64> out(g.values().begin(), g.values().end());
  for (auto& x : out) x = m.mul(x, w.value());
  return Generator(m, std::move(out));
}

inline Generator scale(const Generator& g, u64 w) { return scale(g, Residue(w, g.modulus())); }

/// Shift-0 cross-correlation sum_i u_i v_i mod p.
inline Residue dot(const ResidueVector& u, const ResidueVector& v) {
  if (u.modulus() != v.modulus()) throw ModulusMismatch("dot: operands use different moduli");
  if (u.size() != v.size())
    throw std::invalid_argument("dot: lengths " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
  const auto m = u.modulus();
  u64 acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc = m.add(acc, m.mul(u[i], v[i]));
  return Residue(acc, m);
}

inline Residue dot(const ResidueVector& u, const Generator& v) { return dot(u, v.entries()); }

/// Smallest w with w^2 k = p - 1, i.e. the scaling whose self-correlation
/// peaks at p - 1. Absent when -k^{-1} is a quadratic non-residue.
inline std::optional<Residue> peak_scaling(const Generator& g) {
  const u64 k = detail::require_orthogonal(g);
  const auto m = g.modulus();
  const u64 target = m.value() - 1;
  for (u64 w = 1; w < m.value(); ++w)
    if (m.mul(m.mul(w, w), k) == target) return Residue(w, m);
  return std::nullopt;
}

/// The unique w with g2 = w g1 entrywise, if one exists.
inline std::optional<Residue> product_equivalent(const Generator& g1, const Generator& g2) {
  if (g1.modulus() != g2.modulus()) throw ModulusMismatch("product_equivalent: different moduli");
  if (g1.order() != g2.order()) throw std::invalid_argument("product_equivalent: different orders");
  const auto m = g1.modulus();
  std::size_t pivot = 0;
  while (g1[pivot] == 0) ++pivot;  // g1 has a nonzero entry
  const u64 w = m.mul(g2[pivot], m.inv(g1[pivot]));
  if (w == 0) return std::nullopt;
  for (std::size_t i = 0; i < g1.order(); ++i)
    if (m.mul(w, g1[i]) != g2[i]) return std::nullopt;
  return Residue(w, m);
}

/// Lexicographically smallest sequence among all M shifts and p - 1
/// nonzero scalings of g.
inline Generator canonical_form(const Generator& g) {
  const auto m = g.modulus();
  const std::size_t n = g.order();
  std::vector<u64> best;
  std::vector<u64> cand(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto rotated = detail::rotate_right(g.values(), j);
    for (u64 w = 1; w < m.value(); ++w) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = m.mul(rotated[i], w);
      if (best.empty() || cand < best) best = cand;
    }
  }
  return Generator(m, std::move(best));
}

/// All sequences w * shift^j(base), w in 1..p-1, j in 0..M-1, enumerated
/// lazily in (j, w) order. Duplicates are possible for bases with rotational
/// symmetry; for a non-constant base at prime M coprime to p - 1 the members
/// are all distinct.
class SequenceClass {
 public:
  explicit SequenceClass(Generator base) : base_(std::move(base)) {
    if (base_.p() == 2) throw std::invalid_argument("sequence classes need an odd prime modulus");
  }

  const Generator& base() const { return base_; }
  std::size_t size() const { return base_.order() * static_cast<std::size_t>(base_.p() - 1); }

  Generator member(std::size_t index) const {
    const std::size_t weights = base_.p() - 1;
    return scale(shift(base_, static_cast<std::int64_t>(index / weights)), index % weights + 1);
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Generator;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const SequenceClass* cls, std::size_t i) : cls_(cls), i_(i) {}

    Generator operator*() const { return cls_->member(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++i_;
      return t;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const SequenceClass* cls_ = nullptr;
    std::size_t i_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

 private:
  Generator base_;
};

struct GroupTerm {
  std::size_t shift;
  u64 weight;
  friend bool operator==(const GroupTerm&, const GroupTerm&) = default;
};

/// Weighted sum of shifted keys. The code is orthogonal to every shift of
/// the base outside access_set and correlates to weight * k with each shift
/// inside it.
struct GroupCode {
  Generator base;
  std::vector<GroupTerm> terms;
  ResidueVector code;
  std::set<std::size_t> access_set;

  std::optional<u64> weight_for(std::size_t shift) const {
    for (const auto& t : terms)
      if (t.shift == shift) return t.weight;
    return std::nullopt;
  }
};

inline GroupCode group_code(const Generator& base, std::vector<GroupTerm> terms) {
  detail::require_orthogonal(base);
  if (terms.empty()) throw std::invalid_argument("group_code: no terms");
  const auto m = base.modulus();
  std::set<std::size_t> access;
  std::vector<u64> code(base.order(), 0);
  for (auto& t : terms) {
    if (t.shift >= base.order())
      throw std::invalid_argument("group_code: shift " + std::to_string(t.shift) + " out of range");
    t.weight = m.reduce(t.weight);
    if (t.weight == 0) throw std::invalid_argument("group_code: zero weight for shift " + std::to_string(t.shift));
    if (!access.insert(t.shift).second)
      throw std::invalid_argument("group_code: duplicate shift " + std::to_string(t.shift));
    auto key = detail::rotate_right(base.values(), t.shift);
    for (std::size_t i = 0; i < code.size(); ++i) code[i] = m.add(code[i], m.mul(t.weight, key[i]));
  }
  return GroupCode{base, std::move(terms), ResidueVector(m, std::move(code)), std::move(access)};
}

}  // namespace nht
