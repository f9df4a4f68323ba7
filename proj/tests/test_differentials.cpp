#include <gtest/gtest.h>

#include "logjet/differentials.hpp"
#include "oracles.hpp"
#include "schemes.hpp"

using namespace logjet;
using namespace logjet::examples;

namespace {

std::vector<std::vector<std::string>> rendered(const LogDiffPresentation& o) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : o.rows) {
    std::vector<std::string> r;
    for (const auto& p : row) r.push_back(p.to_string());
    out.push_back(r);
  }
  return out;
}

std::vector<std::vector<std::string>> rendered(const PresentedModule& m) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : m.rows) {
    std::vector<std::string> r;
    for (const auto& s : row) r.push_back(to_string(s));
    out.push_back(r);
  }
  return out;
}

using Rows = std::vector<std::vector<std::string>>;

}  // namespace

TEST(LogDifferentials, AffineLine) {
  auto o = build_log_differentials(affine(1));
  EXPECT_EQ(o.generators, (std::vector<std::string>{"dlog_x"}));
  EXPECT_TRUE(o.rows.empty());
}

TEST(LogDifferentials, Toric) {
  auto o = build_log_differentials(toric());
  EXPECT_EQ(o.generators, (std::vector<std::string>{"dlog_x", "dlog_z", "dlog_y"}));
  EXPECT_EQ(rendered(o), (Rows{{"1", "-2", "1"}, {"x*y", "-2*z^2", "x*y"}}));
  const LogArc a = arc(toric(), 10, {"t^2", "t^2", "t^2"}, 1, std::vector<std::uint64_t>{2, 2, 2});
  auto m = restrict_along_arc(o, a);
  EXPECT_EQ(rendered(m), (Rows{{"1", "-2", "1"}, {"t^4", "-2*t^4", "t^4"}}));
  auto inv = diagonalize(m);
  EXPECT_EQ(inv.exponents, (std::vector<std::size_t>{0}));
  EXPECT_EQ(inv.free_rank, 2u);
}

TEST(LogDifferentials, CuspIsOrdinaryJacobian) {
  auto o = build_log_differentials(cusp());
  EXPECT_EQ(o.generators, (std::vector<std::string>{"dx", "dy"}));
  EXPECT_EQ(rendered(o), (Rows{{"-3*x^2", "2*y"}}));
  auto m = restrict_along_arc(o, arc(cusp(), 12, {"t^2", "t^3"}, 1, std::vector<std::uint64_t>{}));
  EXPECT_EQ(rendered(m), (Rows{{"-3*t^4", "2*t^3"}}));
}

TEST(LogDifferentials, TrivialChartReproducesJacobian) {
  for (const auto& s : {cusp(), node(), parabola()}) {
    auto o = build_log_differentials(s);
    ASSERT_EQ(o.rows.size(), s.ideal.size());
    for (std::size_t i = 0; i < s.ideal.size(); ++i)
      for (std::size_t v = 0; v < s.nvars(); ++v) EXPECT_EQ(o.rows[i][v], s.ideal[i].derivative(v));
  }
}

TEST(LogDifferentials, AffineLineAlongArc) {
  auto m = restrict_along_arc(build_log_differentials(affine(1)),
                              arc(affine(1), 5, {"t"}, 1, std::vector<std::uint64_t>{1}));
  EXPECT_TRUE(m.rows.empty());
  EXPECT_EQ(diagonalize(m).free_rank, 1u);
}

TEST(RelativeDifferentials, NodeOverBase) {
  const LogChartScheme s = node_over_base();
  auto o = relative_log_differentials(s);
  const LogArc a = arc(s, 12, {"t", "t", "t^2"}, 1, std::vector<std::uint64_t>{1, 1, 2});
  auto inv = diagonalize(restrict_along_arc(o, a));
  EXPECT_EQ(inv.free_rank, 1u);
  for (auto e : inv.exponents) EXPECT_EQ(e, 0u);
}

TEST(RelativeDifferentials, TrivialBaseIsAbsolute) {
  LogChartScheme s = toric();
  s.base = BaseChart{MonoidMap{no_monoid(), s.monoid, {}}, ""};
  EXPECT_EQ(rendered(relative_log_differentials(s)), rendered(build_log_differentials(s)));
}

TEST(RelativeDifferentials, LineOverItself) {
  LogChartScheme s = affine(1);
  s.base = BaseChart{MonoidMap{s.monoid, s.monoid, {{1}}}, "x"};
  auto inv = diagonalize(restrict_along_arc(relative_log_differentials(s),
                                            arc(s, 6, {"t"}, 1, std::vector<std::uint64_t>{1})));
  EXPECT_EQ(inv.free_rank, 0u);
  EXPECT_THROW(relative_log_differentials(affine(1)), ValidationError);
}

TEST(Restriction, LogSmoothHasNoTorsionAndRankGp) {
  struct Case {
    LogChartScheme s;
    LogArc a;
  };
  std::vector<Case> cases{
      {toric(), arc(toric(), 12, {"t^2", "t^2", "t^2"}, 1, std::vector<std::uint64_t>{2, 2, 2})},
      {toric(), arc(toric(), 12, {"1", "t^2", "t"}, 1, std::vector<std::uint64_t>{0, 1, 2})},
      {toric(), arc(toric(), 12, {"t^4 + 2*t^5 + t^6", "1", "t^2 + t^3"}, 1, std::vector<std::uint64_t>{4, 2, 0})},
      {affine(2), arc(affine(2), 8, {"t", "3 + t^2"}, 1, std::vector<std::uint64_t>{1, 0})},
      {affine(3), arc(affine(3), 8, {"t^2", "t^2 + t^3", "t^4"}, 2, std::vector<std::uint64_t>{1, 1, 2})},
  };
  for (const auto& c : cases) {
    ASSERT_TRUE(arc_problems(c.s, c.a).empty()) << arc_problems(c.s, c.a)[0];
    auto inv = diagonalize(restrict_along_arc(build_log_differentials(c.s), c.a));
    for (auto e : inv.exponents) EXPECT_EQ(e, 0u);
    EXPECT_EQ(inv.free_rank, gp_rank(c.s.monoid));
  }
}

TEST(Restriction, JetDimensionMatchesCokernel) {
  struct Case {
    LogChartScheme s;
    LogArc a;
  };
  std::vector<Case> cases{
      {cusp(), arc(cusp(), 12, {"t^2", "t^3"}, 1, std::vector<std::uint64_t>{})},
      {node(), arc(node(), 12, {"t^2 + t^3", "0"}, 1, std::vector<std::uint64_t>{})},
      {toric(), arc(toric(), 12, {"t^2", "t^2", "t^2"}, 1, std::vector<std::uint64_t>{2, 2, 2})},
  };
  for (const auto& c : cases) {
    const auto omega = build_log_differentials(c.s);
    for (std::size_t m = 0; m <= 7; ++m) {
      const PresentedModule jm = restrict_along_jet(omega, c.a, m);
      EXPECT_EQ(module_dimension_over_L(diagonalize(jm), m),
                oracle::cokernel_dimension(jm.rows, jm.generators, m, c.s.field))
          << "m=" << m;
    }
  }
}
