#include <nht/search.hpp>

#include <gtest/gtest.h>

#include <map>

#include "oracle.hpp"

using namespace nht;

namespace {

Generator gen(u64 p, std::vector<u64> v) { return Generator(PrimeModulus(p), std::move(v)); }
oracle::Seq as_seq(const Generator& g) { return {g.values().begin(), g.values().end()}; }

const FamilyRecord* find_prime(const std::vector<FamilyRecord>& recs, u64 p) {
  for (const auto& r : recs)
    if (r.p.value() == p) return &r;
  return nullptr;
}

TEST(TwoValue, Examples) {
  auto recs = theorem1_candidates(1, 4, 5);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].off_diagonal, 11u);
  EXPECT_EQ(recs[0].p.value(), 11u);
  EXPECT_EQ(recs[0].k.value(), 9u);
  EXPECT_EQ(recs[0].generator, gen(11, {1, 4, 1, 1, 1}));

  recs = theorem1_candidates(1, 18, 7);
  const auto* r41 = find_prime(recs, 41);
  ASSERT_TRUE(r41);
  EXPECT_EQ(r41->k.value(), 2u);

  recs = theorem1_candidates(3, 7, 7);
  const auto* r29 = find_prime(recs, 29);
  ASSERT_TRUE(r29);
  EXPECT_EQ(r29->off_diagonal, 87u);
  EXPECT_EQ(r29->k.value(), 16u);
  EXPECT_TRUE(oracle::orthogonal_mod(as_seq(r29->generator), 29));
  EXPECT_EQ(oracle::floor_mod(oracle::correlation(as_seq(r29->generator), 0), 29), 16);
  EXPECT_FALSE(find_prime(recs, 89));
}

TEST(TwoValue, Preconditions) {
  EXPECT_THROW(theorem1_candidates(0, 3, 5), std::invalid_argument);
  EXPECT_THROW(theorem1_candidates(2, 2, 5), std::invalid_argument);
  EXPECT_THROW(theorem1_candidates(1, 2, 2), std::invalid_argument);
  // M = 3, (1, 3): t = 6 + 1 = 7, diagonal 2 + 9 = 11 = 4 mod 7
  EXPECT_EQ(theorem1_candidates(1, 3, 3).at(0).k.value(), 4u);
}

TEST(TwoValue, NoOddPrimeDivisorGivesEmpty) {
  // a=2, b=4, M=4: t = 16 + 8 = 24, q = 3 reduces to (2, 1, 2, 2), diagonal 28 = 1 mod 3.
  EXPECT_EQ(theorem1_candidates(2, 4, 4).size(), 1u);
  // a=4, b=2, M=4: t = 16 + 32 = 48, q = 3: (1, 2, 1, 1), diagonal 52 = 1 mod 3.
  EXPECT_EQ(theorem1_candidates(4, 2, 4).size(), 1u);
  // a=2, b=6, M=4: t = 24 + 8 = 32 = 2^5, no odd prime.
  EXPECT_TRUE(theorem1_candidates(2, 6, 4).empty());
}

TEST(TwoValue, FormulaAgreesWithBruteForce) {
  std::size_t total = 0;
  for (std::size_t M : {3u, 5u, 7u, 9u})
    for (u64 a = 1; a <= 4; ++a)
      for (u64 b = 1; b <= 20; ++b) {
        if (a == b) continue;
        for (const auto& rec : theorem1_candidates(a, b, M)) {
          const auto rep = verify_orthogonal(rec.generator);
          ASSERT_TRUE(rep.is_orthogonal) << rec.generator;
          ASSERT_EQ(rep.k, rec.k);
          ASSERT_TRUE(oracle::orthogonal_mod(as_seq(rec.generator), rec.p.value()));
          ASSERT_EQ(rec.off_diagonal % rec.p.value(), 0u);
          ++total;
        }
      }
  EXPECT_GT(total, 100u);
}

TEST(TwoValue, FirstRowOfGramMatrixForUnitA) {
  for (std::int64_t b = 1; b <= 50; ++b) {
    const auto row = oracle::rrt_first_row({1, b, 1, 1, 1});
    EXPECT_EQ(row, (oracle::Seq{b * b + 4, 2 * b + 3, 2 * b + 3, 2 * b + 3, 2 * b + 3})) << b;
  }
}

TEST(Tables, TableOneMatchesPrintAndClosedForm) {
  const auto recs = table1();
  const auto& printed = printed_table(1);
  ASSERT_EQ(recs.size(), 9u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].b, printed[i].b);
    EXPECT_EQ(recs[i].p.value(), 2 * printed[i].b + 3);
    EXPECT_EQ(recs[i].p.value(), printed[i].p);
    EXPECT_EQ(recs[i].k.value(), printed[i].k);
    EXPECT_TRUE(recs[i].discrepancies.empty());
    const auto m = recs[i].p;
    EXPECT_EQ(recs[i].k.value(), m.add(4, m.mul(9, m.inv(4))));
  }
  EXPECT_EQ(recs[4].p.value(), 19u);
  EXPECT_EQ(recs[4].k.value(), 11u);
}

TEST(Tables, TableTwo) {
  const auto recs = table2();
  ASSERT_EQ(recs.size(), 8u);
  for (const auto& r : recs) {
    EXPECT_TRUE(r.discrepancies.empty()) << r.b;
    EXPECT_EQ(r.p.value(), 2 * r.b + 5);
    EXPECT_EQ(r.order, 7u);
  }
  EXPECT_EQ(recs[5].b, 12u);
  EXPECT_EQ(recs[5].p.value(), 29u);
  EXPECT_EQ(recs[5].k.value(), 5u);
}

TEST(Tables, TableThreeFlagsTwoRows) {
  const auto recs = table3();
  ASSERT_EQ(recs.size(), 11u);
  std::size_t flagged = 0;
  for (const auto& r : recs) {
    EXPECT_TRUE(verify_orthogonal(r.generator).is_orthogonal);
    if (r.discrepancies.empty()) continue;
    ++flagged;
    if (r.a == 2 && r.b == 6) {
      EXPECT_EQ(r.p.value(), 11u);
      EXPECT_EQ(r.k.value(), 5u);
      ASSERT_EQ(r.discrepancies.size(), 1u);
      EXPECT_EQ(r.discrepancies[0], (Discrepancy{"k", 8, 5}));
    } else {
      EXPECT_EQ(r.a, 3u);
      EXPECT_EQ(r.b, 7u);
      EXPECT_EQ(r.off_diagonal, 87u);
      EXPECT_EQ(r.p.value(), 29u);
      EXPECT_EQ(r.k.value(), 16u);
      EXPECT_EQ(r.discrepancies.size(), 3u);
    }
  }
  EXPECT_EQ(flagged, 2u);
}

TEST(Tables, UnknownTable) { EXPECT_THROW(reproduce_table(4), std::invalid_argument); }

TEST(ThreeValue, UnitADegeneratesToTwoValue) {
  for (std::size_t M = 4; M <= 9; ++M)
    for (u64 b = 2; b <= 30; ++b) {
      const auto three = three_value_candidates(1, b, M);
      const auto two = theorem1_candidates(1, b, M);
      ASSERT_EQ(three.size(), two.size()) << M << " " << b;
      for (std::size_t i = 0; i < three.size(); ++i) {
        EXPECT_EQ(three[i].p, two[i].p);
        EXPECT_EQ(three[i].k, two[i].k);
        EXPECT_EQ(three[i].generator, two[i].generator);
      }
    }
}

TEST(ThreeValue, EqualParametersGiveNothing) {
  // (a-1)(b-1) must vanish mod q, so a = b forces the constant sequence.
  for (std::size_t M = 4; M <= 9; ++M)
    for (u64 a = 1; a <= 30; ++a) EXPECT_TRUE(three_value_candidates(a, a, M).empty()) << M << " " << a;
}

TEST(ThreeValue, SweepInstanceConfirmedByBruteForce) {
  // gcd(3*12 + 3 + 12 + 4, 6 + 24 + 3) = gcd(55, 33) = 11
  const auto recs = three_value_candidates(3, 12, 7);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].off_diagonal, 11u);
  EXPECT_EQ(recs[0].generator, gen(11, {3, 1, 1, 1, 1, 1, 1}));
  EXPECT_TRUE(oracle::orthogonal_mod(as_seq(recs[0].generator), 11));
  EXPECT_EQ(recs[0].k.value(), static_cast<u64>(oracle::correlation({3, 12, 1, 1, 1, 1, 1}, 0) % 11));
}

TEST(ThreeValue, AllRecordsOrthogonalAndOneParameterIsUnit) {
  std::size_t total = 0;
  for (std::size_t M = 4; M <= 9; ++M)
    for (u64 a = 1; a <= 6; ++a)
      for (u64 b = 1; b <= 20; ++b)
        for (const auto& rec : three_value_candidates(a, b, M)) {
          const auto rep = verify_orthogonal(rec.generator);
          ASSERT_TRUE(rep.is_orthogonal);
          ASSERT_EQ(rep.k, rec.k);
          const auto m = rec.p;
          EXPECT_EQ(m.mul(m.reduce(a + m.value() - 1), m.reduce(b + m.value() - 1)), 0u);
          ++total;
        }
  EXPECT_GT(total, 50u);
  EXPECT_THROW(three_value_candidates(1, 2, 3), std::invalid_argument);
}

// Every three-value solution already lies in a two-value class at the same
// (p, M). When a = 1 mod p it is a direct scalar multiple; when b = 1 mod p it
// is a rotation of (1, a, 1, ..., 1) and only the shift+scale class matches.
TEST(ThreeValue, ContainedInTwoValueClasses) {
  for (std::size_t M = 4; M <= 9; ++M)
    for (u64 a = 1; a <= 4; ++a)
      for (u64 b = 1; b <= 20; ++b)
        for (const auto& rec : three_value_candidates(a, b, M)) {
          const u64 p = rec.p.value();
          const auto target = canonical_form(rec.generator);
          bool same_class = false, scalar = false;
          for (u64 a2 = 1; a2 <= p && !(same_class && scalar); ++a2)
            for (u64 b2 = 1; b2 <= p && !(same_class && scalar); ++b2) {
              if (a2 == b2) continue;
              for (const auto& two : theorem1_candidates(a2, b2, M)) {
                if (two.p != rec.p) continue;
                same_class |= canonical_form(two.generator) == target;
                scalar |= product_equivalent(two.generator, rec.generator).has_value();
              }
            }
          EXPECT_TRUE(same_class) << rec.generator;
          if (rec.p.reduce(a) == 1) { EXPECT_TRUE(scalar) << rec.generator; }
        }
}

TEST(Sweep, ValidatesRanges) {
  EXPECT_THROW(sweep(SweepConfig{{5, 4}, {1, 1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(sweep(SweepConfig{{5, 5}, {0, 1}, {1, 1}}), std::invalid_argument);
  SweepConfig cfg{{5, 5}, {1, 1}, {1, 20}};
  cfg.max_factor = 20;
  for (const auto& r : sweep(cfg)) EXPECT_LE(r.off_diagonal, 20u);
}

TEST(Sweep, EvenOrdersAreMarkedExtrapolated) {
  for (const auto& r : sweep(SweepConfig{{4, 6}, {1, 3}, {1, 10}, UINT64_MAX, PatternSelector::Both}))
    EXPECT_EQ(r.extrapolated(), r.order % 2 == 0);
}

TEST(Search, ContainsKnownClasses) {
  const auto c75 = exhaustive_search(PrimeModulus(7), 5);
  EXPECT_EQ(c75.size(), 10u);  // independent brute-force count
  EXPECT_TRUE(std::binary_search(c75.begin(), c75.end(), canonical_form(gen(7, {1, 2, 1, 1, 1}))));

  const auto c77 = exhaustive_search(PrimeModulus(7), 7);
  EXPECT_EQ(c77.size(), 49u);
  EXPECT_TRUE(std::binary_search(c77.begin(), c77.end(), canonical_form(gen(7, {6, 2, 1, 4, 2, 1, 4}))));
}

TEST(Search, SmallCaseSelfConsistency) {
  const auto classes = exhaustive_search(PrimeModulus(3), 3);
  ASSERT_FALSE(classes.empty());
  for (const auto& g : classes) {
    EXPECT_EQ(autocorrelation(g, 1).value(), 0u);
    EXPECT_EQ(autocorrelation(g, 2).value(), 0u);
    EXPECT_EQ(canonical_form(g), g);
  }
}

TEST(Search, AgreesWithFullEnumeration) {
  for (auto [p, M] : std::vector<std::pair<u64, std::size_t>>{{3, 3}, {3, 4}, {5, 4}, {7, 5}, {5, 6}, {3, 7}}) {
    const auto found = exhaustive_search(PrimeModulus(p), M);
    std::set<oracle::Seq> ours;
    for (const auto& g : found) ours.insert(as_seq(g));
    EXPECT_EQ(ours, oracle::brute_force_classes(static_cast<std::int64_t>(p), M)) << p << "^" << M;
  }
}

TEST(Search, ThreadCountDoesNotChangeOutput) {
  const auto one = exhaustive_search(PrimeModulus(11), 5, {100'000'000, 1});
  const auto many = exhaustive_search(PrimeModulus(11), 5, {100'000'000, 5});
  EXPECT_EQ(one, many);
  EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
}

TEST(Search, Errors) {
  EXPECT_THROW(exhaustive_search(PrimeModulus(2), 5), std::invalid_argument);
  EXPECT_THROW(exhaustive_search(PrimeModulus(7), 5, {1000, 1}), BudgetExceeded);
  EXPECT_THROW(exhaustive_search(PrimeModulus(101), 30), BudgetExceeded);
}

TEST(Search, ContainsEveryFamilyRecord) {
  std::map<std::pair<u64, std::size_t>, std::vector<Generator>> cache;
  std::size_t checked = 0;
  for (std::size_t M : {3u, 5u, 7u})
    for (const auto& rec : sweep(SweepConfig{{M, M}, {1, 4}, {1, 20}})) {
      const u64 p = rec.p.value();
      if (detail::saturating_power(p, M - 1) > 2'000'000) continue;
      auto key = std::make_pair(p, M);
      if (!cache.count(key)) cache[key] = exhaustive_search(rec.p, M);
      const auto& cls = cache[key];
      EXPECT_TRUE(std::binary_search(cls.begin(), cls.end(), canonical_form(rec.generator))) << rec.generator;
      ++checked;
    }
  EXPECT_GT(checked, 20u);
}

}  // namespace
