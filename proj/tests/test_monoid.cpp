#include <gtest/gtest.h>

#include <random>

#include "logjet/monoid.hpp"
#include "oracles.hpp"

using namespace logjet;

namespace {

MonoidPresentation toric() {
  return MonoidPresentation({"X", "Z", "Y"}, {{1, 1}, {1, 0}, {1, -1}}, 2);
}
MonoidPresentation node() {
  return MonoidPresentation({"U", "V", "T"}, {{1, 0}, {0, 1}, {1, 1}}, 2);
}
MonoidPresentation nat(const std::string& name = "T") {
  return MonoidPresentation::free({name});
}
MonoidPresentation trivial() { return MonoidPresentation({}, IntMatrix(0, 0)); }

std::vector<MonoidPresentation> fixture_monoids() {
  return {MonoidPresentation::free({"x", "y"}),
          toric(),
          node(),
          nat(),
          MonoidPresentation({"a", "b", "c", "d"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}}, 3),
          MonoidPresentation({"p", "q"}, {{2, 0}, {1, 1}}, 2),
          MonoidPresentation({"a", "b", "c"}, {{1, 0}, {1, 1}, {1, 2}}, 2),
          MonoidPresentation({"a", "b", "c", "d"}, {{1, 0}, {1, 1}, {1, 2}, {1, 3}}, 2)};
}

std::vector<std::uint64_t> hv(std::initializer_list<std::uint64_t> v) { return v; }

/// Random sharp monoid: generators in the open half-space x_0 > 0.
MonoidPresentation random_sharp(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(1, 4), dim(1, 3);
  std::uniform_int_distribution<long> lead(1, 3), rest(-2, 2);
  const std::size_t s = count(rng), k = dim(rng);
  IntMatrix g(s, k);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s; ++i) {
    g(i, 0) = lead(rng);
    for (std::size_t j = 1; j < k; ++j) g(i, j) = rest(rng);
    names.push_back("g" + std::to_string(i));
  }
  return MonoidPresentation(names, g);
}

}  // namespace

TEST(GpRank, Examples) {
  EXPECT_EQ(gp_rank(MonoidPresentation::free({"x", "y"})), 2u);
  EXPECT_EQ(gp_rank(toric()), 2u);
  EXPECT_EQ(gp_rank(nat()), 1u);
  EXPECT_EQ(gp_rank(trivial()), 0u);
}

TEST(GpRank, InvariantUnderPermutationAndUnimodularChange) {
  std::mt19937_64 rng(oracle::seed() + 10);
  for (int trial = 0; trial < 40; ++trial) {
    const MonoidPresentation q = random_sharp(rng);
    std::vector<std::size_t> perm(q.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const IntMatrix permuted = q.images().select_rows(perm);
    // unimodular: identity plus a random strictly upper triangular part
    const std::size_t k = q.ambient_dim();
    IntMatrix u = IntMatrix::identity(k);
    std::uniform_int_distribution<long> off(-3, 3);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) u(i, j) = off(rng);
    std::size_t expected = 0;
    for (const auto& d : oracle::invariant_factors_by_minors(q.images())) expected += d != 0;
    EXPECT_EQ(gp_rank(q), expected);
    EXPECT_EQ(gp_rank(MonoidPresentation(q.names(), permuted * u)), expected);
  }
}

TEST(Relations, ToricRelation) {
  EXPECT_EQ(toric().relations().to_string(), "[[1, -2, 1]]");
  EXPECT_EQ(node().relations().to_string(), "[[1, 1, -1]]");
  EXPECT_EQ(MonoidPresentation::free({"a", "b"}).relations().rows(), 0u);
}

TEST(Presentation, RejectsBadInput) {
  EXPECT_THROW(MonoidPresentation({"a", "a"}, {{1}, {2}}, 1), ValidationError);
  EXPECT_THROW(MonoidPresentation({"a"}, {{0, 0}}, 2), ValidationError);
  EXPECT_THROW(MonoidPresentation({"a", "b"}, {{1, 0}}, 2), ValidationError);
}

TEST(Irreducibles, Examples) {
  auto free2 = irreducible_elements(MonoidPresentation::free({"x", "y"}));
  EXPECT_EQ(free2.count, 2u);
  EXPECT_EQ(free2.generators, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(irreducible_elements(toric()).count, 3u);
  auto n = irreducible_elements(node());
  EXPECT_EQ(n.count, 2u);
  EXPECT_EQ(n.generators, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(irreducible_elements(trivial()).count, 0u);
  EXPECT_THROW(irreducible_elements(MonoidPresentation({"a", "b"}, {{1}, {-1}}, 1)), ValidationError);
}

TEST(Irreducibles, MatchBruteForceOnFixtures) {
  for (const auto& q : fixture_monoids())
    EXPECT_EQ(irreducible_elements(q).count, oracle::irreducible_count_by_search(q))
        << q.images().to_string();
}

TEST(Irreducibles, MatchBruteForceRandomized) {
  std::mt19937_64 rng(oracle::seed() + 11);
  for (int trial = 0; trial < 60; ++trial) {
    const MonoidPresentation q = random_sharp(rng);
    EXPECT_EQ(irreducible_elements(q).count, oracle::irreducible_count_by_search(q, 4))
        << q.images().to_string();
  }
}

TEST(Sharpness, Examples) {
  EXPECT_TRUE(is_sharp(MonoidPresentation::free({"x", "y"})));
  EXPECT_FALSE(is_sharp(MonoidPresentation({"a", "b"}, {{1}, {-1}}, 1)));
  EXPECT_TRUE(is_sharp(trivial()));
  EXPECT_TRUE(is_sharp(toric()));
  EXPECT_FALSE(is_sharp(MonoidPresentation({"a", "b", "c"}, {{1, 0}, {-1, 1}, {0, -1}}, 2)));
}

TEST(HomEnumeration, Examples) {
  auto n = enumerate_homs_to_N(nat(), 2);
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(n[2].values, hv({2}));

  auto t = enumerate_homs_to_N(toric(), 2);
  std::vector<MonoidHom> expected{{hv({0, 0, 0})}, {hv({0, 1, 2})}, {hv({1, 1, 1})},
                                  {hv({2, 1, 0})}, {hv({2, 2, 2})}};
  EXPECT_EQ(t, expected);

  auto nd = enumerate_homs_to_N(MonoidPresentation::free({"U", "V"}), 1);
  EXPECT_EQ(nd.size(), 4u);
  EXPECT_EQ(enumerate_homs_to_N(toric(), 0).size(), 1u);
}

TEST(HomEnumeration, MatchesBoxBruteForce) {
  for (const auto& q : fixture_monoids())
    for (std::uint64_t b : {0u, 1u, 3u})
      EXPECT_EQ(enumerate_homs_to_N(q, b), oracle::sorted(oracle::homs_by_box(q, b)))
          << q.images().to_string() << " B=" << b;
  std::mt19937_64 rng(oracle::seed() + 12);
  for (int trial = 0; trial < 40; ++trial) {
    const MonoidPresentation q = random_sharp(rng);
    EXPECT_EQ(enumerate_homs_to_N(q, 3), oracle::sorted(oracle::homs_by_box(q, 3)))
        << q.images().to_string();
  }
}

TEST(HomEnumeration, EveryEnumeratedHomRespectsRelations) {
  for (const auto& q : fixture_monoids())
    for (const auto& h : enumerate_homs_to_N(q, 4)) EXPECT_TRUE(is_monoid_hom(q, h));
}

TEST(HilbertBasis, Examples) {
  auto f = hilbert_basis_dual(MonoidPresentation::free({"x", "y"}));
  EXPECT_EQ(oracle::sorted(f), (std::vector<MonoidHom>{{hv({0, 1})}, {hv({1, 0})}}));
  auto t = hilbert_basis_dual(toric());
  EXPECT_EQ(oracle::sorted(t),
            (std::vector<MonoidHom>{{hv({0, 1, 2})}, {hv({1, 1, 1})}, {hv({2, 1, 0})}}));
  auto n = hilbert_basis_dual(nat());
  EXPECT_EQ(n, (std::vector<MonoidHom>{{hv({1})}}));
}

TEST(HilbertBasis, GeneratesAllHomsAndIsMinimal) {
  for (const auto& q : fixture_monoids()) {
    const auto basis = hilbert_basis_dual(q);
    for (const auto& h : oracle::homs_by_box(q, 6))
      EXPECT_TRUE(oracle::in_monoid_span(basis, h)) << q.images().to_string() << " " << h.to_string();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<MonoidHom> others = basis;
      others.erase(others.begin() + static_cast<long>(i));
      EXPECT_FALSE(oracle::in_monoid_span(others, basis[i])) << basis[i].to_string();
    }
  }
}

TEST(Faces, QuotientExamples) {
  auto vertex = quotient_by_face(toric(), {});
  EXPECT_EQ(vertex.gp_rank, 2u);
  EXPECT_EQ(vertex.irreducible_count, 3u);
  auto x = quotient_by_face(toric(), {0});
  EXPECT_EQ(x.gp_rank, 1u);
  EXPECT_EQ(x.irreducible_count, 1u);
  auto all = quotient_by_face(toric(), {0, 1, 2});
  EXPECT_EQ(all.gp_rank, 0u);
  EXPECT_EQ(all.irreducible_count, 0u);
  // {Z} alone is not a face: X + Y = 2Z
  EXPECT_THROW(quotient_by_face(toric(), {1}), ValidationError);
  EXPECT_THROW(quotient_by_face(node(), {2}), ValidationError);
  auto u = quotient_by_face(node(), {0});
  EXPECT_EQ(u.gp_rank, 1u);
  EXPECT_EQ(u.irreducible_count, 1u);
}

TEST(Faces, EmptyAndFullFacesOnFixtures) {
  for (const auto& q : fixture_monoids()) {
    auto v = quotient_by_face(q, {});
    EXPECT_EQ(v.gp_rank, gp_rank(q));
    EXPECT_EQ(v.irreducible_count, irreducible_elements(q).count);
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < q.size(); ++i) all.push_back(i);
    auto a = quotient_by_face(q, all);
    EXPECT_EQ(a.gp_rank, 0u);
    EXPECT_EQ(a.irreducible_count, 0u);
  }
}

TEST(RelativeInvariants, Examples) {
  MonoidMap node_over_base{nat("T"), MonoidPresentation::free({"U", "V"}), {{1, 1}}};
  auto r = relative_invariants(node_over_base);
  EXPECT_EQ(r.kernel_rank, 0u);
  EXPECT_EQ(r.relative_irreducibles, 2u);
  EXPECT_EQ(r.relative_gp_rank, 1u);

  auto free2 = MonoidPresentation::free({"a", "b"});
  auto id = relative_invariants(MonoidMap{free2, free2, {{1, 0}, {0, 1}}});
  EXPECT_EQ(id.kernel_rank, 0u);
  EXPECT_EQ(id.relative_irreducibles, 0u);
  EXPECT_EQ(id.relative_gp_rank, 0u);

  auto to_point = relative_invariants(MonoidMap{nat(), trivial(), {{}}});
  EXPECT_EQ(to_point.kernel_rank, 1u);
}

TEST(RelativeInvariants, RejectsRelationViolation) {
  // source relation X + Y = 2Z must be respected
  MonoidMap bad{toric(), MonoidPresentation::free({"a", "b"}), {{1, 0}, {0, 0}, {0, 1}}};
  EXPECT_FALSE(bad.check().empty());
  EXPECT_THROW(relative_invariants(bad), ValidationError);
}

TEST(RelativeInvariants, AtFace) {
  MonoidMap node_over_base{nat("T"), MonoidPresentation::free({"U", "V"}), {{1, 1}}};
  auto vertex = relative_invariants_at_face(node_over_base, {});
  EXPECT_EQ(vertex.relative_irreducibles, 2u);
  // V a unit: T maps into the non-face part, Q/F = N on U
  auto u_only = relative_invariants_at_face(node_over_base, {1});
  EXPECT_EQ(u_only.kernel_rank, 0u);
  EXPECT_EQ(u_only.relative_irreducibles, 0u);
  EXPECT_EQ(u_only.relative_gp_rank, 0u);
}
