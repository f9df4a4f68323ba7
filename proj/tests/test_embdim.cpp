#include <gtest/gtest.h>

#include "logjet/embdim.hpp"
#include "oracles.hpp"
#include "schemes.hpp"

using namespace logjet;
using namespace logjet::examples;

namespace {

std::vector<std::uint64_t> contact(std::initializer_list<std::uint64_t> c) { return c; }

/// Jet point of order m with the given unit parts / plain series.
JetPoint point_from(const LogChartScheme& s, const LogArc& a, std::size_t m,
                    const std::map<std::string, std::string>& parts) {
  std::map<std::string, TruncSeries> p;
  for (const auto& [k, v] : parts) p.emplace(k, parse_series(v, s.field, m + 1));
  return jet_point_from_parts(s, a.contact, a.r, m, p);
}

std::size_t oracle_at(const LogChartScheme& s, const LogArc& a, std::size_t m, const JetPoint& p) {
  const ComponentDescriptor d = embdim_component(s, a, m);
  require_on_component(d, p);
  return embdim_oracle(d, p);
}

LogArc rescaled(const LogArc& a, long lambda) {
  LogArc b = a;
  for (auto& x : b.series) {
    FieldElem pw = FieldElem::one(x[0].field());
    for (std::size_t k = 0; k < x.precision(); ++k) {
      x[k] = x[k] * pw;
      pw = pw * FieldElem(pw.field(), lambda);
    }
  }
  return b;
}

}  // namespace

TEST(EmbDim, CuspExamples) {
  const LogChartScheme c = cusp();
  const LogArc a = arc(c, 16, {"t^2", "t^3"}, 1, contact({}));
  const auto r5 = embdim_formula(c, a, 5);
  EXPECT_EQ(r5.betti, 1u);
  EXPECT_EQ(r5.fitting, 3u);
  EXPECT_EQ(r5.value, 9);
  EXPECT_EQ(embdim_formula(c, a, 2).value, 6);
  for (std::size_t m = 3; m <= 8; ++m) EXPECT_EQ(embdim_formula(c, a, m).value, static_cast<long>(m + 4));
}

TEST(EmbDim, CuspNeedsPrecision) {
  const LogChartScheme c = cusp();
  EXPECT_THROW(embdim_formula(c, arc(c, 3, {"t^2", "t^3"}, 1, contact({})), 1), PrecisionError);
}

TEST(EmbDim, OracleExamples) {
  const LogChartScheme c = cusp();
  const LogArc a = arc(c, 16, {"t^2", "t^3"}, 1, contact({}));
  const JetPoint p = jet_point_from_arc(c, a, 2);
  EXPECT_TRUE(p.at("x_2").is_one());
  EXPECT_EQ(oracle_at(c, a, 2, p), 6u);

  const LogChartScheme line = scheme({"x"}, {}, no_monoid(), {}, true);
  const LogArc b = arc(line, 6, {"t"}, 1, contact({}));
  EXPECT_EQ(oracle_at(line, b, 3, jet_point_from_arc(line, b, 3)), 4u);
}

TEST(EmbDim, ToricVertex) {
  const LogChartScheme q = toric();
  const LogArc a = arc(q, 20, {"t^2", "t^2", "t^2"}, 1, contact({2, 2, 2}));
  for (std::size_t m = 1; m <= 5; ++m) {
    const JetPoint p = point_from(q, a, m, {{"x", "t"}, {"y", "t"}, {"z", "t"}});
    const auto rep = embdim_formula(q, a, m, &p);
    EXPECT_TRUE(rep.face.empty());
    EXPECT_EQ(rep.value, static_cast<long>(2 * m + 3)) << m;
    EXPECT_EQ(oracle_at(q, a, m, p), 2 * m + 3) << m;
  }
}

TEST(EmbDim, TrivialLogAgreesWithOracle) {
  struct Case {
    LogChartScheme s;
    LogArc a;
  };
  const std::vector<Case> cases{
      {parabola(), arc(parabola(), 20, {"t", "t^2"}, 1, contact({}))},
      {node(), arc(node(), 20, {"t", "0"}, 1, contact({}))},
      {node(), arc(node(), 20, {"t^2 + t^3", "0"}, 1, contact({}))},
      {cusp(), arc(cusp(), 20, {"t^2", "t^3"}, 1, contact({}))},
      {cusp(), arc(cusp(), 20, {"t^2 + 2*t^3 + t^4", "t^3 + 3*t^4 + 3*t^5 + t^6"}, 1, contact({}))},
  };
  for (const auto& c : cases)
    for (std::size_t m = 2; m <= 8; ++m) {
      const auto rep = embdim_formula(c.s, c.a, m);
      EXPECT_EQ(rep.value, static_cast<long>(oracle_at(c.s, c.a, m, jet_point_from_arc(c.s, c.a, m))))
          << c.s.ideal[0].to_string() << " m=" << m;
    }
  EXPECT_EQ(embdim_formula(node(), cases[1].a, 4).value, 6);
  EXPECT_EQ(embdim_formula(node(), cases[2].a, 4).value, 7);
}

TEST(EmbDim, LogSmoothAgreesWithOracle) {
  struct Case {
    LogChartScheme s;
    LogArc a;
  };
  const std::vector<Case> cases{
      {affine(2), arc(affine(2), 14, {"t", "3 + t^2"}, 1, contact({1, 0}))},
      {affine(2), arc(affine(2), 14, {"t^2 + t^3", "t"}, 1, contact({2, 1}))},
      {toric(), arc(toric(), 14, {"t^2", "t^2", "t^2"}, 1, contact({2, 2, 2}))},
      {toric(), arc(toric(), 14, {"1", "t^2", "t"}, 1, contact({0, 1, 2}))},
  };
  for (const auto& c : cases)
    for (std::size_t m = 0; m <= 5; ++m) {
      const JetPoint p = jet_point_from_arc(c.s, c.a, m);
      const auto rep = embdim_formula(c.s, c.a, m, &p);
      EXPECT_TRUE(rep.equality);
      EXPECT_EQ(rep.value, static_cast<long>(oracle_at(c.s, c.a, m, p))) << "m=" << m;
    }
}

TEST(EmbDim, RescalingInvariance) {
  const LogChartScheme c = cusp();
  const LogArc a = arc(c, 16, {"t^2 + 2*t^3 + t^4", "t^3 + 3*t^4 + 3*t^5 + t^6"}, 1, contact({}));
  const LogChartScheme q = toric();
  const LogArc b = arc(q, 16, {"t^4 + 2*t^5 + t^6", "1", "t^2 + t^3"}, 1, contact({4, 2, 0}));
  for (long lambda : {2L, 3L, -1L})
    for (std::size_t m = 1; m <= 6; ++m) {
      EXPECT_EQ(embdim_formula(c, rescaled(a, lambda), m).value, embdim_formula(c, a, m).value);
      EXPECT_EQ(embdim_formula(q, rescaled(b, lambda), m).value, embdim_formula(q, b, m).value);
    }
}

TEST(EmbDim, ReportIsConsistent) {
  const LogChartScheme q = toric();
  const LogArc a = arc(q, 14, {"t^2", "t^2", "t^2"}, 1, contact({2, 2, 2}));
  for (std::size_t m = 0; m <= 6; ++m) {
    const auto rep = embdim_formula(q, a, m);
    EXPECT_EQ(rep.recompute(), rep.value);
    EXPECT_EQ(rep.betti, betti_number(rep.invariants, m));
    EXPECT_TRUE(rep.matches());
  }
}

TEST(EmbDimRelative, NodeOverBase) {
  const LogChartScheme s = node_over_base();
  const LogArc a = arc(s, 14, {"t", "t", "t^2"}, 1, contact({1, 1, 2}));
  const JetPoint vertex = point_from(s, a, 3, {{"u", "t"}, {"v", "t"}, {"t0", "t^2"}});
  const auto rep = embdim_relative(s, a, 3, &vertex);
  EXPECT_TRUE(rep.face.empty());
  EXPECT_EQ(rep.betti, 1u);
  EXPECT_EQ(rep.fitting, 0u);
  EXPECT_EQ(rep.value, 5);
  EXPECT_TRUE(off_component(embdim_component(s, a, 3), vertex).empty());
  // at the arc's own point every unit constant is nonzero
  EXPECT_EQ(embdim_relative(s, a, 3).value, 4);
}

TEST(EmbDimRelative, TrivialBaseIsAbsolute) {
  LogChartScheme q = toric();
  q.base = BaseChart{MonoidMap{no_monoid(), q.monoid, {}}, ""};
  const LogArc a = arc(q, 14, {"t^2", "t^2", "t^2"}, 1, contact({2, 2, 2}));
  for (std::size_t m = 1; m <= 5; ++m) {
    const JetPoint p = point_from(q, a, m, {{"x", "t"}, {"y", "t"}, {"z", "t"}});
    EXPECT_EQ(embdim_relative(q, a, m, &p).value, embdim_formula(q, a, m, &p).value);
    EXPECT_EQ(embdim_relative(q, a, m).value, embdim_formula(q, a, m).value);
  }
}

TEST(LogPoint, CotangentDims) {
  using Dims = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(logpoint_cotangent_dims(MonoidPresentation::free({"A"})), Dims(1, 1));
  EXPECT_EQ(logpoint_cotangent_dims(MonoidPresentation::free({"A", "B"})), Dims(2, 2));
  EXPECT_EQ(logpoint_cotangent_dims(toric().monoid), Dims(2, 3));
}
