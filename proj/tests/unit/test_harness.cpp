#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bimerton/harness.hpp"
#include "bimerton/reference_data.hpp"

using namespace bimerton;

namespace {

std::vector<ConvergenceRow> synthetic() {
    std::vector<ConvergenceRow> rows;
    const double prices[] = {1.0, 1.8, 2.2, 2.4};
    for (int l = 0; l < 4; ++l) {
        const int n = 1 << (8 + l);
        rows.push_back({l, n, n, 50 << l, prices[l], {}, {}, 0.01 * (1 << (3 * l))});
    }
    annotate_changes(rows);
    return rows;
}

std::string emit(const auto& report, ReportFormat f, bool timings = false) {
    std::ostringstream out;
    emit_report(out, report, f, timings);
    return out.str();
}

}  // namespace

TEST(Harness, ChangeAndRatio) {
    const auto rows = synthetic();
    EXPECT_FALSE(rows[0].change);
    EXPECT_FALSE(rows[0].ratio);
    EXPECT_NEAR(*rows[1].change, 0.8, 1e-15);
    EXPECT_FALSE(rows[1].ratio);
    EXPECT_NEAR(*rows[2].change, 0.4, 1e-15);
    EXPECT_NEAR(*rows[2].ratio, 2.0, 1e-12);
    EXPECT_NEAR(*rows[3].ratio, 2.0, 1e-12);
}

TEST(Harness, TimingSlope) {
    auto rows = synthetic();
    const auto s = timing_slope(rows);
    ASSERT_TRUE(s);
    EXPECT_GT(*s, 0.8);
    EXPECT_LT(*s, 1.2);
    rows.resize(1);
    EXPECT_FALSE(timing_slope(rows));
}

TEST(Harness, CsvReport) {
    StudyReport report;
    EXPECT_EQ(emit(report, ReportFormat::Csv), "level,N,J,M,price,change,ratio,seconds\n");
    report.rows = synthetic();
    const std::string csv = emit(report, ReportFormat::Csv);
    EXPECT_EQ(csv, emit(report, ReportFormat::Csv));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    EXPECT_EQ(line, "0,256,256,50,1.0000000000,,,");
    std::getline(in, line);
    EXPECT_EQ(line, "1,512,512,100,1.8000000000,8.000000e-01,,");
    std::getline(in, line);
    EXPECT_EQ(line, "2,1024,1024,200,2.2000000000,4.000000e-01,2.000000,");
    EXPECT_NE(emit(report, ReportFormat::Csv, true).find(",0.640000\n"), std::string::npos);
}

TEST(Harness, TextReportLayout) {
    StudyReport report;
    report.spot = {90.0, 90.0};
    report.rows = synthetic();
    report.reference = 16.39;
    const std::string text = emit(report, ReportFormat::Text);
    EXPECT_NE(text.find("CaseI put_on_min at (90, 90)"), std::string::npos);
    EXPECT_NE(text.find("reference price: 16.390"), std::string::npos);
    EXPECT_EQ(text.find("seconds"), std::string::npos);
    EXPECT_NE(emit(report, ReportFormat::Text, true).find("timing slope"), std::string::npos);
}

TEST(Harness, LevelZeroStudyAgainstPublished) {
    const CaseSpec c = case_spec(CaseId::CaseI);
    StudyOptions o;
    o.max_level = 0;
    const StudyReport r = convergence_study(c, PayoffKind::PutOnMin, {90.0, 90.0}, o);
    ASSERT_EQ(r.rows.size(), 1u);
    ASSERT_TRUE(r.reference);
    EXPECT_EQ(*r.reference, 16.390);
    ASSERT_TRUE(r.max_abs_diff);
    EXPECT_LT(*r.max_abs_diff, 5e-7);

    o.max_level = 5;
    EXPECT_THROW(convergence_study(c, PayoffKind::PutOnMin, {90.0, 90.0}, o), std::invalid_argument);
}

TEST(Harness, HalfDomainKeepsMeshWidth) {
    const CaseSpec c = case_spec(CaseId::CaseI);
    StudyOptions o;
    o.max_level = 0;
    const DomainReport r = domain_study(c, PayoffKind::PutOnMin, {90.0, 90.0}, DomainScale::Half, o);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].N_scaled, 128);
    EXPECT_EQ(r.scaled_half_width.x, 0.75);
    EXPECT_GT(r.rows[0].diff, 1e-4);
    const std::string csv = [&] {
        std::ostringstream out;
        emit_report(out, r, ReportFormat::Csv);
        return out.str();
    }();
    EXPECT_EQ(csv.rfind("level,N,N_scaled,M,base_price,scaled_price,diff,seconds\n", 0), 0u);
}

TEST(Harness, TableGuardsSlowLevels) {
    const CaseSpec c = case_spec(CaseId::CaseII);
    TableOptions o;
    o.level = 3;
    EXPECT_THROW(comprehensive_table(c, PayoffKind::PutOnMin, o), std::invalid_argument);
}

TEST(Harness, SmallTableAtLevelZero) {
    const CaseSpec c = case_spec(CaseId::CaseI);
    TableOptions o;
    o.level = 0;
    const std::vector<double> xs{90.0}, ys{90.0, 100.0};
    const SpotGridReport r = comprehensive_table(c, PayoffKind::PutOnAverage, xs, ys, o);
    ASSERT_EQ(r.prices.rows(), 2u);
    ASSERT_EQ(r.prices.cols(), 1u);
    EXPECT_FALSE(r.published);
    EXPECT_NEAR(r.prices(0, 0), 10.0, 1e-6);
    EXPECT_LT(r.prices(1, 0), r.prices(0, 0));
    std::ostringstream out;
    emit_report(out, r, ReportFormat::Csv);
    EXPECT_EQ(out.str().rfind("X0,Y0,price,published_price,external_price,seconds\n90,90,10.0000", 0), 0u);
}

TEST(ReferenceData, Shapes) {
    for (auto id : {CaseId::CaseI, CaseId::CaseII, CaseId::CaseIII})
        for (auto p : {PayoffKind::PutOnMin, PayoffKind::PutOnAverage}) {
            const auto t = reference::spot_table(id, p);
            EXPECT_EQ(t.computed.rows(), 3u);
            EXPECT_EQ(t.external.cols(), 3u);
            EXPECT_EQ(t.case_id, id);
        }
    EXPECT_TRUE(reference::convergence_table(CaseId::CaseI, PayoffKind::PutOnAverage));
    EXPECT_FALSE(reference::convergence_table(CaseId::CaseII, PayoffKind::PutOnMin));
    const auto d = reference::domain_table(CaseId::CaseI, PayoffKind::PutOnMin);
    ASSERT_TRUE(d);
    EXPECT_LT(d->larger_diff[0], 1e-6);
    EXPECT_GT(d->smaller_diff[0], 1e-4);
    // the top-level entry of the convergence table reappears in the spot table
    const auto conv = reference::convergence_table(CaseId::CaseI, PayoffKind::PutOnMin);
    EXPECT_EQ(conv->level_prices[4], reference::spot_table(CaseId::CaseI, PayoffKind::PutOnMin).computed(0, 0));
}
