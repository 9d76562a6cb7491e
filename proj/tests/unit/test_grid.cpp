#include <gtest/gtest.h>

#include <cmath>

#include "bimerton/cases.hpp"
#include "bimerton/grid.hpp"

using namespace bimerton;

namespace {
DerivedModel case1() { return validate(case_spec(CaseId::CaseI).params); }
}  // namespace

TEST(Grid, AnchoredAtSpot) {
    const GridSpec g = build_grid(case1(), {90.0, 110.0}, {1.5, 2.0}, 256, 128, 50);
    EXPECT_DOUBLE_EQ(g.x.node(0), std::log(90.0));
    EXPECT_DOUBLE_EQ(g.y.node(0), std::log(110.0));
    EXPECT_DOUBLE_EQ(g.dx(), 3.0 / 256);
    EXPECT_DOUBLE_EQ(g.dy(), 4.0 / 128);
    EXPECT_DOUBLE_EQ(g.x.min, std::log(90.0) - 1.5);
    EXPECT_DOUBLE_EQ(g.x.max, std::log(90.0) + 1.5);
    EXPECT_DOUBLE_EQ(g.x.dagger_min, g.x.min - 1.5);
    EXPECT_DOUBLE_EQ(g.y.dagger_max, g.y.max + 2.0);
    EXPECT_NEAR(g.x.node(g.N() / 2), g.x.max, 1e-12);
    EXPECT_NEAR(g.x.node(-g.N()), g.x.dagger_min, 1e-12);
    EXPECT_DOUBLE_EQ(g.dtau, 1.0 / 50);
    EXPECT_DOUBLE_EQ(g.T, 1.0);
}

TEST(Grid, IndexSetSizes) {
    const GridSpec g = build_grid(case1(), {100.0, 100.0}, {1.5, 1.5}, 16, 8, 5);
    const IndexSets s = g.index_sets();
    EXPECT_EQ(s.x.interior, (IndexRange{-7, 7}));
    EXPECT_EQ(s.x.dagger, (IndexRange{-16, 16}));
    EXPECT_EQ(s.x.ddagger, (IndexRange{-23, 23}));
    EXPECT_EQ(s.y.interior.count(), 7);
    EXPECT_EQ(s.y.dagger.count(), 17);
    EXPECT_EQ(s.y.ddagger.count(), 23);
    EXPECT_EQ(g.dagger_nx(), 33u);
    EXPECT_EQ(g.ddagger_ny(), 23u);
    // every interior-minus-dagger difference lies in the displacement set
    EXPECT_EQ(s.x.interior.hi - s.x.dagger.lo, s.x.ddagger.hi);
    EXPECT_EQ(s.x.interior.lo - s.x.dagger.hi, s.x.ddagger.lo);
}

TEST(Grid, RejectsBadInputs) {
    const DerivedModel m = case1();
    EXPECT_THROW(build_grid(m, {0.0, 90.0}, {1.5, 1.5}, 16, 16, 4), std::invalid_argument);
    EXPECT_THROW(build_grid(m, {90.0, 90.0}, {0.0, 1.5}, 16, 16, 4), std::invalid_argument);
    EXPECT_THROW(build_grid(m, {90.0, 90.0}, {1.5, 1.5}, 15, 16, 4), std::invalid_argument);
    EXPECT_THROW(build_grid(m, {90.0, 90.0}, {1.5, 1.5}, 16, 2, 4), std::invalid_argument);
    EXPECT_THROW(build_grid(m, {90.0, 90.0}, {1.5, 1.5}, 16, 16, 0), std::invalid_argument);
}

TEST(Grid, TrapezoidWeights) {
    const GridSpec g = build_grid(case1(), {100.0, 100.0}, {1.5, 1.5}, 8, 4, 1);
    const TrapezoidWeights w = trapezoid_weights(g);
    ASSERT_EQ(w.x.size(), 17u);
    ASSERT_EQ(w.y.size(), 9u);
    EXPECT_EQ(w.x.front(), 0.5);
    EXPECT_EQ(w.x.back(), 0.5);
    EXPECT_EQ(w.y[4], 1.0);
    EXPECT_EQ(w(0, 0), 0.25);
    EXPECT_EQ(w(3, 8), 0.5);
}
