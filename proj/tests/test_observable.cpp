#include "xychain/observable.hpp"

#include <gtest/gtest.h>

#include "test_helpers.hpp"

using namespace xychain;
using observable::ObservableSpec;
using observable::parse_observable;
using testutil::max_abs_diff;

TEST(ParseObservable, SingleFactor) {
    const auto spec = parse_observable("Z25", 50);
    ASSERT_EQ(spec.factors.size(), 1u);
    EXPECT_EQ(spec.factors[0].site, 25);
    EXPECT_EQ(spec.factors[0].pauli, 'Z');
}

TEST(ParseObservable, TwoFactorProduct) {
    const auto spec = parse_observable("X24*Y27", 50);
    ASSERT_EQ(spec.factors.size(), 2u);
    EXPECT_EQ(spec.factors[0].site, 24);
    EXPECT_EQ(spec.factors[0].pauli, 'X');
    EXPECT_EQ(spec.factors[1].site, 27);
    EXPECT_EQ(spec.factors[1].pauli, 'Y');
}

TEST(ParseObservable, CaseAndWhitespaceInsensitive) {
    const auto spec = parse_observable("  z1 * x 3 ", 4);
    ASSERT_EQ(spec.factors.size(), 2u);
    EXPECT_EQ(spec.factors[0].pauli, 'Z');
    EXPECT_EQ(spec.factors[1].pauli, 'X');
    EXPECT_EQ(spec.factors[1].site, 3);
}

TEST(ParseObservable, RejectsDuplicateSite) {
    EXPECT_THROW(parse_observable("Z3*Z3", 5), ConfigError);
}

TEST(ParseObservable, RejectsOutOfRangeSites) {
    EXPECT_THROW(parse_observable("Z0", 5), ConfigError);
    EXPECT_THROW(parse_observable("Z6", 5), ConfigError);
}

TEST(ParseObservable, RejectsBadSymbolsWithPosition) {
    try {
        parse_observable("Z1*Q2", 5);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_observable("", 5), ConfigError);
    EXPECT_THROW(parse_observable("Z1*", 5), ConfigError);
    EXPECT_THROW(parse_observable("Z", 5), ConfigError);
}

TEST(ObservableMpo, DenseForm) {
    const auto spec = parse_observable("Z1*X3", 3);
    const testutil::CMatrix dense = observable::observable_mpo(spec, 3).to_dense();
    const testutil::CMatrix expected =
        testutil::site_op(pauli::sz(), 1, 3) * testutil::site_op(pauli::sx(), 3, 3);
    EXPECT_LT(max_abs_diff(dense, expected), 1e-13);
}

TEST(MajoranaOrder, MatchesKnownCases) {
    EXPECT_EQ(observable::majorana_order(parse_observable("Z25", 50), 50), 2);
    EXPECT_EQ(observable::majorana_order(parse_observable("Z1*Z50", 50), 50), 4);
    EXPECT_EQ(observable::majorana_order(parse_observable("X24*Y27", 50), 50), 6);
    EXPECT_EQ(observable::majorana_order(parse_observable("X1", 50), 50), 1);
    EXPECT_EQ(observable::majorana_order(parse_observable("Y3", 50), 50), 5);
    EXPECT_EQ(observable::majorana_order(parse_observable("X2*X3", 50), 50), 2);
}

TEST(MajoranaOrder, ParityClassification) {
    EXPECT_TRUE(observable::parity_even(parse_observable("Z5", 10), 10));
    EXPECT_TRUE(observable::parity_even(parse_observable("X4*Y7", 10), 10));
    EXPECT_FALSE(observable::parity_even(parse_observable("X4", 10), 10));
}

TEST(AnalyticChi, PowersOfTwoWithCap) {
    EXPECT_EQ(observable::analytic_chi(parse_observable("Z25", 50), 50), 4);
    EXPECT_EQ(observable::analytic_chi(parse_observable("Z1*Z50", 50), 50), 16);
    EXPECT_EQ(observable::analytic_chi(parse_observable("X24*Y27", 50), 50), 64);
    // A long string observable saturates the cap instead of overflowing.
    EXPECT_EQ(observable::analytic_chi(parse_observable("X40", 50), 50, 1 << 20), 1 << 20);
}
