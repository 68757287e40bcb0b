#include <gtest/gtest.h>

#include <numeric>

#include "mrc/errors.hpp"
#include "mrc/moduli.hpp"

namespace mrc {
namespace {

DegreeMultiset ms(std::vector<unsigned> v) { return as_multiset(std::move(v)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

// Test-side oracle: naive products with a plain loop.
BigInt naive_factorial(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

BigInt naive_pow(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

TEST(ModuliSpec, Validation) {
  EXPECT_EQ(kind_of([] { ModuliSpec::make(8, 3, {}); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([] { ModuliSpec::make(8, 3, {1}); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([] { ModuliSpec::make(2, 3, {2, 2}); }), ErrorKind::InvalidSpec);
  EXPECT_NO_THROW(ModuliSpec::make(3, 3, {2, 2}));
}

TEST(ValidateSpec, CalabiYauInstancePasses) {
  const auto r = validate_spec(ModuliSpec::make(8, 3, {3}));
  EXPECT_TRUE(r.main_theorem_ok);
  ASSERT_EQ(r.reasons.size(), 5u);
  for (const auto& c : r.reasons) EXPECT_TRUE(c.passed) << c.name;
}

TEST(ValidateSpec, QuadricHypersurfaceRejected) {
  const auto r = validate_spec(ModuliSpec::make(10, 4, {2}));
  EXPECT_FALSE(r.passed("not_quadric_hypersurface"));
  EXPECT_FALSE(r.main_theorem_ok);
  EXPECT_FALSE(r.phi_on_general_fiber);
  EXPECT_EQ(r.phi_exclusion, PhiExclusion::QuadricHypersurface);
}

TEST(ValidateSpec, PhiExclusionCases) {
  const auto cubic = validate_spec(ModuliSpec::make(12, 5, {3}));
  EXPECT_TRUE(cubic.main_theorem_ok);
  EXPECT_FALSE(cubic.phi_global_morphism);
  EXPECT_EQ(cubic.phi_exclusion, PhiExclusion::CubicManyPoints);
  EXPECT_TRUE(cubic.phi_on_general_fiber);

  EXPECT_TRUE(validate_spec(ModuliSpec::make(12, 4, {3})).phi_global_morphism);
  const auto two_quadrics = validate_spec(ModuliSpec::make(20, 6, {2, 2}));
  EXPECT_FALSE(two_quadrics.phi_global_morphism);
  EXPECT_EQ(two_quadrics.phi_exclusion, PhiExclusion::TwoQuadricsManyPoints);
  EXPECT_TRUE(validate_spec(ModuliSpec::make(20, 5, {2, 2})).phi_global_morphism);
}

TEST(ValidateSpec, IndividualChecks) {
  EXPECT_FALSE(validate_spec(ModuliSpec::make(8, 2, {3})).passed("m_at_least_3"));
  EXPECT_FALSE(validate_spec(ModuliSpec::make(4, 5, {3})).passed("n_at_least_m"));
  EXPECT_FALSE(validate_spec(ModuliSpec::make(7, 3, {3})).passed("dimension_inequality"));
}

TEST(DimensionReport, WorkedExamples) {
  const auto a = dimension_report(ModuliSpec::make(10, 3, {2, 2}));
  EXPECT_EQ(a.expected_fiber_dim, 5);
  EXPECT_EQ(a.fiber_t_dim, 5);
  EXPECT_EQ(a.max_locus_dim, 2);
  EXPECT_EQ(a.sections_on_Y, 4);
  EXPECT_EQ(a.big_N, 7);

  const auto b = dimension_report(ModuliSpec::make(8, 3, {3}));
  EXPECT_EQ(b.expected_fiber_dim, 4);
  EXPECT_EQ(b.fiber_t_dim, 4);
  EXPECT_EQ(b.max_locus_dim, 1);
  EXPECT_EQ(b.sections_on_Y, 5);
  EXPECT_EQ(b.big_N, 8);

  const auto c = dimension_report(ModuliSpec::make(3, 3, {2, 2}));
  EXPECT_EQ(c.expected_fiber_dim, -2);
  EXPECT_TRUE(c.fiber_empty());
}

TEST(Types, TypeOneAndTwo) {
  EXPECT_EQ(t1_type(3, 3), ms({2, 2, 2, 3}));
  EXPECT_EQ(t1_type(2, 7), ms({2}));
  EXPECT_EQ(t1_type(4, 2), ms({2, 2, 3, 3, 4}));
  EXPECT_EQ(t2_type(2, 3), ms({1, 1, 1, 2}));
  EXPECT_EQ(t2_type(3, 1), ms({1, 2, 3}));
  EXPECT_EQ(t2_type(2, 1), ms({1, 2}));
  EXPECT_EQ(kind_of([] { t1_type(1, 3); }), ErrorKind::InvalidDegree);
  EXPECT_EQ(kind_of([] { t2_type(3, 0); }), ErrorKind::InvalidDegree);
}

TEST(Types, SizesAndReduction) {
  for (std::int64_t d = 2; d <= 9; ++d)
    for (std::int64_t s = 1; s <= 7; ++s) {
      const auto t1 = t1_type(d, s), t2 = t2_type(d, s);
      EXPECT_EQ(static_cast<std::int64_t>(t1.size()), s * (d - 2) + 1);
      EXPECT_EQ(static_cast<std::int64_t>(t2.size()), s * (d - 1) + 1);
      DegreeMultiset stripped;
      for (unsigned x : t2)
        if (x != 1) stripped.push_back(x);
      EXPECT_EQ(std::count(t2.begin(), t2.end(), 1u), s);
      EXPECT_EQ(stripped, t1);
    }
}

TEST(FiberType, WorkedExamples) {
  const auto cy = fiber_t_type(ModuliSpec::make(8, 3, {3}));
  EXPECT_EQ(cy.ambient_dim(), 8);
  EXPECT_EQ(cy.multiset(), ms({2, 2, 2, 3}));
  const auto big = fiber_t_type(ModuliSpec::make(14, 4, {3}));
  EXPECT_EQ(big.ambient_dim(), 14);
  EXPECT_EQ(big.multiset(), ms({2, 2, 2, 2, 3}));
  for (std::int64_t n = 9; n <= 12; ++n) {
    const auto t = fiber_t_type(ModuliSpec::make(n, 3, {2, 2}));
    EXPECT_EQ(t.ambient_dim(), n - 3);
    EXPECT_EQ(t.multiset(), ms({2, 2}));
  }
}

TEST(FiberType, GateBehaviour) {
  const auto spec = ModuliSpec::make(7, 3, {2, 2});
  try {
    fiber_t_type(spec);
    FAIL() << "expected TheoremNotApplicable";
  } catch (const TheoremNotApplicable& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TheoremNotApplicable);
    EXPECT_FALSE(e.report().passed("dimension_inequality"));
  }
  EXPECT_EQ(fiber_t_type(spec, Gate::Structural).multiset(), ms({2, 2}));
  EXPECT_THROW(fiber_t_type(ModuliSpec::make(20, 3, {2}), Gate::Structural), TheoremNotApplicable);
}

TEST(MaxLocus, WorkedExamples) {
  const auto spec = ModuliSpec::make(10, 3, {2, 2});
  const auto pn = max_locus_type(spec, LocusAmbient::InPn);
  EXPECT_EQ(pn.ambient_dim(), 10);
  EXPECT_EQ(pn.multiset(), ms({1, 1, 1, 1, 1, 1, 2, 2}));
  const auto small = max_locus_type(spec, LocusAmbient::InPnMinusMc);
  EXPECT_EQ(small.ambient_dim(), 4);
  EXPECT_EQ(small.multiset(), ms({2, 2}));
  EXPECT_EQ(ci_invariants(small).dimension, 2);
  EXPECT_EQ(ci_invariants(pn).dimension, 2);

  const auto cy = max_locus_type(ModuliSpec::make(8, 3, {3}), LocusAmbient::InPnMinusMc);
  EXPECT_EQ(cy.ambient_dim(), 5);
  EXPECT_EQ(cy.multiset(), ms({2, 2, 2, 3}));
  EXPECT_EQ(ci_invariants(cy).dimension, 1);
}

TEST(MaxLocus, EmptyLocus) {
  // Passes the gate (dimension inequality needs fiber >= 1) but dim Y = n + m(c - sum d) - c < 0
  // can only happen when the gate fails; use the structural gate to reach it.
  const auto spec = ModuliSpec::make(5, 3, {3});
  EXPECT_LT(dimension_report(spec).max_locus_dim, 0);
  EXPECT_EQ(kind_of([&] { max_locus_type(spec, LocusAmbient::InPn, Gate::Structural); }), ErrorKind::EmptyLocus);
}

TEST(CIInvariants, WorkedExamples) {
  const auto a = ci_invariants(CIType(8, {2, 2, 2, 3}));
  EXPECT_EQ(a.dimension, 4);
  EXPECT_EQ(a.degree, 24);
  EXPECT_EQ(a.canonical_coefficient, 0);
  EXPECT_EQ(a.classification, Classification::CalabiYau);

  const auto b = ci_invariants(CIType(3, {2, 2}));
  EXPECT_EQ(b.dimension, 1);
  EXPECT_EQ(b.degree, 4);
  EXPECT_EQ(b.classification, Classification::CalabiYau);

  const auto c = ci_invariants(CIType(6, {}));
  EXPECT_EQ(c.dimension, 6);
  EXPECT_EQ(c.degree, 1);
  EXPECT_EQ(c.canonical_coefficient, -7);
  EXPECT_EQ(c.classification, Classification::Fano);

  EXPECT_EQ(ci_invariants(CIType(3, {5})).classification, Classification::NonFano);
  EXPECT_TRUE(CIType(2, {2, 2, 2}).overdetermined());
}

TEST(Fano, WorkedExamples) {
  EXPECT_FALSE(fano_inequality(ModuliSpec::make(8, 3, {3})));
  EXPECT_TRUE(fano_inequality(ModuliSpec::make(9, 3, {3})));
  EXPECT_TRUE(fano_inequality(ModuliSpec::make(9, 3, {2, 2})));
  const auto spec = ModuliSpec::make(10, 3, {2, 2});
  EXPECT_TRUE(fano_inequality(spec));
  EXPECT_LT(ci_invariants(fiber_t_type(spec)).canonical_coefficient, 0);
}

TEST(Counts, WorkedExamples) {
  const std::vector<unsigned> cubic{3}, two_quadrics{2, 2};
  EXPECT_EQ(enumerative_count(cubic, CountKind::CubicsThrough3).value, 24);
  EXPECT_EQ(enumerative_count(two_quadrics, CountKind::CubicsThrough3).value, 4);
  EXPECT_EQ(enumerative_count(cubic, CountKind::LinkingConicsThrough4).value, 48);
  EXPECT_EQ(enumerative_count(cubic, CountKind::FiberDegree, 4).value, 48);
  const auto c = enumerative_count(cubic, CountKind::CubicsThrough3);
  EXPECT_EQ(c.variety_dim, 3);
  EXPECT_EQ(c.ambient_dim, 4);
}

TEST(Counts, LargeValuesAreExact) {
  const std::vector<unsigned> degrees{5, 5, 5};
  const auto v = enumerative_count(degrees, CountKind::FiberDegree, 6).value;
  EXPECT_EQ(v, naive_pow(naive_factorial(5), 18) / naive_pow(125, 5));
  EXPECT_EQ(v, naive_pow(5 * naive_pow(24, 6), 3));
}

TEST(Picard, Examples) {
  const auto m4 = picard_report(ModuliSpec::make(14, 4, {3}));
  EXPECT_EQ(m4.rank_lower_bound, 2);
  EXPECT_FALSE(m4.fiber_is_complete_intersection);
  const auto m3 = picard_report(ModuliSpec::make(8, 3, {3}));
  EXPECT_EQ(m3.rank_lower_bound, 1);
  EXPECT_TRUE(m3.fiber_is_complete_intersection);
  const auto m5 = picard_report(ModuliSpec::make(20, 5, {2, 2}));
  EXPECT_TRUE(m5.pic_finitely_generated);
  EXPECT_TRUE(m5.h01_zero);
  EXPECT_THROW(picard_report(ModuliSpec::make(10, 4, {2})), TheoremNotApplicable);
}

// Grid used by the property tests: d_i in {2..5}, c <= 3, m in {3..6}, n up to 60.
std::vector<std::vector<std::int64_t>> degree_grid() {
  std::vector<std::vector<std::int64_t>> out;
  for (std::int64_t a = 2; a <= 5; ++a) {
    out.push_back({a});
    for (std::int64_t b = a; b <= 5; ++b) {
      out.push_back({a, b});
      for (std::int64_t c = b; c <= 5; ++c) out.push_back({a, b, c});
    }
  }
  return out;
}

TEST(ModuliProperties, IdentitiesOnGrid) {
  std::size_t passing = 0;
  for (const auto& degrees : degree_grid())
    for (std::int64_t m = 3; m <= 6; ++m)
      for (std::int64_t n = static_cast<std::int64_t>(degrees.size()) + 1; n <= 60; ++n) {
        const auto spec = ModuliSpec::make(n, m, degrees);
        const auto hyp = validate_spec(spec);
        const auto dims = dimension_report(spec);
        EXPECT_EQ(dims.fiber_t_dim - m, dims.max_locus_dim);
        EXPECT_EQ(dims.expected_fiber_dim - (m - 3), dims.fiber_t_dim);
        EXPECT_EQ(dims.big_N, dims.sections_on_Y + m);
        if (!hyp.main_theorem_ok) continue;
        ++passing;
        const auto t = fiber_t_type(spec);
        const auto inv = ci_invariants(t);
        EXPECT_EQ(inv.dimension, dims.fiber_t_dim);
        BigInt num = 1, d = 1;
        for (auto di : degrees) {
          num *= naive_pow(naive_factorial(static_cast<unsigned>(di)), static_cast<unsigned>(m));
          d *= di;
        }
        EXPECT_EQ(inv.degree * naive_pow(d, static_cast<unsigned>(m - 1)), num);
        std::int64_t sum = 0;
        for (auto di : degrees) sum += di;
        EXPECT_EQ(static_cast<std::int64_t>(t.codimension()), m * (sum - 2 * spec.c()) + spec.c());
        EXPECT_EQ(fano_inequality(spec), inv.canonical_coefficient < 0) << to_string(spec);
      }
  EXPECT_GT(passing, 1000u);
}

TEST(ModuliProperties, CountsAgreeWithFiberDegree) {
  for (const auto& degrees : degree_grid()) {
    std::vector<unsigned> d(degrees.begin(), degrees.end());
    EXPECT_EQ(enumerative_count(d, CountKind::CubicsThrough3).value,
              enumerative_count(d, CountKind::FiberDegree, 3).value);
    EXPECT_EQ(enumerative_count(d, CountKind::LinkingConicsThrough4).value,
              enumerative_count(d, CountKind::FiberDegree, 4).value);
  }
}

}  // namespace
}  // namespace mrc
