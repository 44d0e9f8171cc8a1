#include <gtest/gtest.h>

#include <random>

#include "cilie/ext.hpp"

using namespace cilie;

namespace {

struct Setting {
  RingPtr ring;
  RingPresentation r;
};

Setting ring_of(std::vector<std::string> vars, std::initializer_list<const char*> ideal) {
  auto ring = make_ring(std::move(vars));
  std::vector<Poly> gens;
  for (auto s : ideal) gens.push_back(parse_poly(ring, s));
  return {ring, RingPresentation(ring, gens)};
}

/// Coefficients of (1+t)^n / (1-t^2)^c through t^top, by repeated
/// multiplication with 1+t and division by 1-t^2 as a running sum.
std::vector<std::size_t> poincare_series(std::size_t n, std::size_t c, std::size_t top) {
  std::vector<std::size_t> s(top + 1, 0);
  s[0] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = top; i >= 1; --i) s[i] += s[i - 1];
  for (std::size_t k = 0; k < c; ++k)
    for (std::size_t i = 2; i <= top; ++i) s[i] += s[i - 2];
  return s;
}

/// dim ker d_i = rank d_{i+1} in every internal degree up to max_e.
bool exact_in_degrees(const RingPresentation& r, const FreeResolution& res, int max_e) {
  GradedSlices slices(r);
  for (std::size_t i = 1; i < res.length(); ++i)
    for (int e = 0; e <= max_e; ++e) {
      const RatMatrix di = slices.map_matrix(res.d(i), res.twists[i], res.twists[i - 1], e);
      const RatMatrix dn = slices.map_matrix(res.d(i + 1), res.twists[i + 1], res.twists[i], e);
      if (di.cols() - rank(di) != rank(dn)) return false;
    }
  return true;
}

std::vector<std::size_t> sizes(std::initializer_list<std::size_t> v) { return v; }

}  // namespace

TEST(PolyMatrix, ProductAndConstantPart) {
  auto ring = make_ring({"x", "y"});
  PolyMatrix a(ring, 1, 2), b(ring, 2, 1);
  a(0, 0) = parse_poly(ring, "x + 1");
  a(0, 1) = parse_poly(ring, "y");
  b(0, 0) = parse_poly(ring, "y");
  b(1, 0) = parse_poly(ring, "-x");
  EXPECT_EQ((a * b)(0, 0), parse_poly(ring, "y"));
  EXPECT_EQ(a.constant_part(), (RatMatrix{{1, 0}}));
}

TEST(MinimalPresentation, CancelsUnitsAndRedundantRelations) {
  auto [ring, r] = ring_of({"x", "y"}, {});
  GradedModulePresentation m{{0, 0}, PolyMatrix(ring, 2, 3)};
  // e2 = -x e1 kills the second generator; the third relation is x times the first.
  m.relations(0, 0) = parse_poly(ring, "x");
  m.relations(1, 0) = Poly(ring);
  m.relations(0, 1) = Poly(ring);
  m.relations(1, 1) = Poly(ring);
  m.relations(0, 2) = parse_poly(ring, "x^2");
  GradedModulePresentation n{{0, 1}, PolyMatrix(ring, 2, 2)};
  n.relations(0, 0) = parse_poly(ring, "x");
  n.relations(1, 0) = parse_poly(ring, "1");
  n.relations(0, 1) = parse_poly(ring, "y^2");
  auto [twists, d1] = minimal_presentation(r, n);
  EXPECT_EQ(twists, std::vector<int>{0});
  ASSERT_EQ(d1.cols(), 1u);
  EXPECT_EQ(d1(0, 0), parse_poly(ring, "y^2"));

  auto [t2, d2] = minimal_presentation(r, m);
  EXPECT_EQ(t2, (std::vector<int>{0, 0}));
  ASSERT_EQ(d2.cols(), 1u);
  EXPECT_EQ(d2(0, 0), parse_poly(ring, "x"));
}

TEST(MinimalPresentation, RejectsInhomogeneousRelations) {
  auto [ring, r] = ring_of({"x", "y"}, {});
  EXPECT_THROW(minimal_presentation(r, cyclic_module(ring, {parse_poly(ring, "x + y^2")})), GradingError);
}

TEST(Resolution, DualNumbers) {
  auto [ring, r] = ring_of({"x"}, {"x^2"});
  auto res = minimal_resolution(r, residue_field(ring), 5);
  EXPECT_EQ(res.betti(), sizes({1, 1, 1, 1, 1, 1}));
  for (std::size_t i = 1; i <= 5; ++i) {
    ASSERT_EQ(res.d(i).rows(), 1u);
    ASSERT_EQ(res.d(i).cols(), 1u);
    EXPECT_EQ(res.d(i)(0, 0), parse_poly(ring, "x"));
  }
  EXPECT_TRUE(is_complex(r, res));
  EXPECT_TRUE(has_no_unit_entries(res));
}

TEST(Resolution, PolynomialRingTerminates) {
  auto [ring, r] = ring_of({"x"}, {});
  auto res = minimal_resolution(r, residue_field(ring), 3);
  EXPECT_EQ(res.betti(), sizes({1, 1, 0, 0}));
}

TEST(Resolution, TwoDualNumbers) {
  auto [ring, r] = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto res = minimal_resolution(r, residue_field(ring), 3);
  EXPECT_EQ(res.betti(), sizes({1, 2, 3, 4}));
}

TEST(Resolution, ResidueFieldMatchesPoincareSeries) {
  struct Case {
    std::vector<std::string> vars;
    std::vector<const char*> ideal;
  };
  std::vector<Case> cases = {{{"x"}, {"x^2"}},         {{"x", "y"}, {"x^2", "y^2"}},
                             {{"x", "y"}, {"x^2+y^2"}}, {{"x", "y", "z"}, {"x*y", "z^2"}},
                             {{"x"}, {"x^3"}},          {{"x", "y"}, {"x*y"}}};
  for (const auto& c : cases) {
    auto ring = make_ring(c.vars);
    std::vector<Poly> gens;
    for (auto s : c.ideal) gens.push_back(parse_poly(ring, s));
    RingPresentation r(ring, gens);
    const std::size_t top = 6;
    auto res = minimal_resolution(r, residue_field(ring), static_cast<int>(top));
    EXPECT_EQ(res.betti(), poincare_series(c.vars.size(), gens.size(), top)) << c.ideal[0];
    EXPECT_TRUE(is_complex(r, res));
    EXPECT_TRUE(has_no_unit_entries(res));
    EXPECT_TRUE(exact_in_degrees(r, res, 8));
  }
}

TEST(Resolution, ModulesOverSuiteRings) {
  auto [ring, r] = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto res = minimal_resolution(r, cyclic_module(ring, {parse_poly(ring, "x")}), 6);
  // R/(x) is resolved by ... -> R -x-> R -x-> R.
  EXPECT_EQ(res.betti(), sizes({1, 1, 1, 1, 1, 1, 1}));
  auto shifted = minimal_resolution(r, residue_field(ring, 1), 4);
  EXPECT_EQ(shifted.betti(), sizes({1, 2, 3, 4, 5}));
  EXPECT_EQ(shifted.twists[2], (std::vector<int>{3, 3, 3}));
  EXPECT_TRUE(exact_in_degrees(r, shifted, 8));
}

TEST(Resolution, HypersurfaceBettiNumbersArePeriodic) {
  auto [ring, r] = ring_of({"x", "y", "z"}, {"x^2+y^2+z^2"});
  auto res = minimal_resolution(r, residue_field(ring), 8);
  auto b = res.betti();
  for (std::size_t i = 3; i + 2 < b.size(); ++i) EXPECT_EQ(b[i + 2], b[i]);
}

TEST(Resolution, Preconditions) {
  auto [ring, r] = ring_of({"x", "y"}, {"x^2", "x*y"});
  EXPECT_THROW(minimal_resolution(r, residue_field(ring), 3), NotCompleteIntersectionError);
  auto [ring2, r2] = ring_of({"x", "y"}, {"x^2 + y"});
  EXPECT_THROW(minimal_resolution(r2, residue_field(ring2), 3), GradingError);
  auto [ring3, r3] = ring_of({"x", "y"}, {"x^2", "y^2"});
  ResolutionLimits tight;
  tight.max_width = 3;
  EXPECT_THROW(minimal_resolution(r3, residue_field(ring3), 6, tight), ResourceLimitError);
}

TEST(Resolution, ZeroModule) {
  auto [ring, r] = ring_of({"x"}, {"x^2"});
  auto res = minimal_resolution(r, cyclic_module(ring, {parse_poly(ring, "1")}), 3);
  EXPECT_EQ(res.betti(), sizes({0, 0, 0, 0}));
  auto e = ext_module(r, cyclic_module(ring, {parse_poly(ring, "1")}), 4);
  for (const auto& chi : e.ext.chi)
    for (const auto& m : chi) EXPECT_TRUE(m.is_zero());
}

TEST(Ext, DimsAgreeWithNonminimalResolution) {
  std::vector<std::pair<std::vector<std::string>, std::vector<const char*>>> rings = {
      {{"x"}, {"x^2"}}, {{"x", "y"}, {"x^2", "y^2"}}, {{"x", "y"}, {"x^2+y^2"}}};
  for (const auto& [vars, ideal] : rings) {
    auto ring = make_ring(vars);
    std::vector<Poly> gens;
    for (auto s : ideal) gens.push_back(parse_poly(ring, s));
    RingPresentation r(ring, gens);
    std::vector<GradedModulePresentation> modules = {residue_field(ring),
                                                     cyclic_module(ring, {Poly::variable(ring, 0)}),
                                                     residue_field(ring, 1)};
    for (const auto& m : modules) {
      auto minimal = minimal_resolution(r, m, 6);
      auto padded = nonminimal_resolution(r, m, 6);
      EXPECT_FALSE(has_no_unit_entries(padded));
      EXPECT_TRUE(is_complex(r, padded));
      auto dims = ext_dims_from_resolution(padded);
      auto betti = minimal.betti();
      betti.pop_back();
      EXPECT_EQ(dims, betti);
      EXPECT_EQ(ext_dims_from_resolution(minimal), betti);
    }
  }
}

TEST(Ext, Examples) {
  auto [ring, r] = ring_of({"x"}, {"x^2"});
  auto e = ext_module(r, residue_field(ring), 6);
  EXPECT_EQ(e.ext.dims, sizes({1, 1, 1, 1, 1, 1, 1}));
  for (std::size_t i = 2; i <= 6; ++i) EXPECT_EQ(rank(e.ext.chi[0][i]), 1u);

  auto [ring2, r2] = ring_of({"x", "y"}, {"x^2", "y^2"});
  EXPECT_EQ(ext_module(r2, residue_field(ring2), 4).ext.dims, sizes({1, 2, 3, 4, 5}));

  auto [ring3, r3] = ring_of({"x"}, {});
  auto poly = ext_module(r3, residue_field(ring3), 4);
  EXPECT_EQ(poly.ext.dims, sizes({1, 1, 0, 0, 0}));
  EXPECT_EQ(poly.ext.operator_count(), 0u);
}

TEST(Ext, OperatorsNeedQuadraticGenerators) {
  auto ring = make_ring({"x", "y"}, {1, 2});
  RingPresentation r(ring, {parse_poly(ring, "y + x^2"), parse_poly(ring, "y^2")});
  auto res = minimal_resolution(r, residue_field(ring), 3);
  EXPECT_THROW(eisenbud_ops(r, res), ReduceVariablesError);
}

TEST(Ext, OperatorsAreChainMapsAndIndependentOfLifts) {
  std::vector<std::pair<std::vector<std::string>, std::vector<const char*>>> rings = {
      {{"x"}, {"x^2"}},
      {{"x", "y"}, {"x^2", "y^2"}},
      {{"x", "y"}, {"x^2+y^2"}},
      {{"x", "y", "z"}, {"x*y", "z^2"}},
      {{"x", "y"}, {"x^3", "y^2"}}};
  std::mt19937_64 rng(5);
  for (const auto& [vars, ideal] : rings) {
    auto ring = make_ring(vars);
    std::vector<Poly> gens;
    for (auto s : ideal) gens.push_back(parse_poly(ring, s));
    RingPresentation r(ring, gens);
    for (const auto& m : {residue_field(ring), cyclic_module(ring, {Poly::variable(ring, 0)})}) {
      auto base = ext_module(r, m, 7);
      EXPECT_TRUE(operators_are_chain_maps(r, base.resolution, base.operators));
      EXPECT_TRUE(operators_commute(base.ext, 7));
      for (int trial = 0; trial < 2; ++trial) {
        auto ops = eisenbud_ops(r, base.resolution, &rng);
        EXPECT_TRUE(operators_are_chain_maps(r, base.resolution, ops));
        auto e = ext_from(base.resolution, ops);
        EXPECT_EQ(e.chi.size(), base.ext.chi.size());
        for (std::size_t j = 0; j < e.chi.size(); ++j)
          for (std::size_t i = 2; i < e.chi[j].size(); ++i) EXPECT_EQ(e.chi[j][i], base.ext.chi[j][i]);
      }
    }
  }
}

TEST(FGCheck, Examples) {
  auto [ring, r] = ring_of({"x"}, {"x^2"});
  auto e = ext_module(r, residue_field(ring), 8);
  auto v = fg_check(e.ext, 4, 8, &e.resolution);
  EXPECT_EQ(v.status, FGStatus::CertifiedFG);
  EXPECT_EQ(v.generator_degrees, (std::vector<int>{0, 1}));
  ASSERT_TRUE(v.certificate);
  EXPECT_EQ(v.certificate->kind, FGCertificate::Kind::Periodic);

  auto [ring2, r2] = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto e2 = ext_module(r2, residue_field(ring2), 10);
  auto v2 = fg_check(e2.ext, 6, 10, &e2.resolution);
  EXPECT_EQ(v2.status, FGStatus::WindowFG);
  EXPECT_EQ(v2.generator_degrees, (std::vector<int>{0, 1, 1, 2}));

  ExtModule flat{std::vector<std::size_t>(11, 1), {std::vector<RatMatrix>(11, RatMatrix(1, 1))}};
  flat.chi[0][0] = flat.chi[0][1] = RatMatrix();
  auto v3 = fg_check(flat, 5, 10);
  EXPECT_EQ(v3.status, FGStatus::NotFGWithinWindow);
  EXPECT_EQ(v3.offending_degrees, (std::vector<int>{5, 6, 7, 8, 9, 10}));
}

TEST(FGCheck, RejectsMalformedWindows) {
  ExtModule e{std::vector<std::size_t>(11, 0), {}};
  EXPECT_THROW(fg_check(e, 1, 10), InputError);
  EXPECT_THROW(fg_check(e, 9, 10), InputError);
  EXPECT_THROW(fg_check(e, 5, 12), InputError);
  EXPECT_NO_THROW(fg_check(e, 5, 10));
  EXPECT_EQ(default_window(), std::make_pair(5, 10));
}

TEST(CoherenceReport, Examples) {
  auto [ring, r] = ring_of({"x", "y"}, {"x^2+y^2"});
  auto hyp = coherence_report(r, residue_field(ring), 5, 10);
  EXPECT_EQ(hyp.verdict.status, FGStatus::CertifiedFG);
  EXPECT_TRUE(hyp.chain_maps);

  auto [ring2, r2] = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto ci = coherence_report(r2, cyclic_module(ring2, {Poly::variable(ring2, 0)}), 5, 10);
  EXPECT_EQ(ci.verdict.status, FGStatus::WindowFG);
  EXPECT_TRUE(ci.operators_commute);

  auto [ring3, r3] = ring_of({"x"}, {});
  auto poly = coherence_report(r3, residue_field(ring3), 5, 10);
  EXPECT_EQ(poly.verdict.status, FGStatus::CertifiedFG);
  ASSERT_TRUE(poly.verdict.certificate);
  EXPECT_EQ(poly.verdict.certificate->kind, FGCertificate::Kind::Terminates);
}
