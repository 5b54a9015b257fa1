#include "errors.hpp"
#include "oracle.hpp"
#include "rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ccnorm;

namespace {

std::vector<double> ramp(int K)
{
    std::vector<double> v;
    for (int i = 1; i < K; ++i)
        v.push_back(i);
    return v;
}

} // namespace

TEST(Oracle, frozen_values)
{
    EXPECT_TRUE(agree_sig_figs(norm_const_oracle(NaturalParams({1, 2, 3, 4})).value, 0.3632171508392203, 4));
    const EvalResult k20 = norm_const_oracle(NaturalParams(ramp(20)));
    EXPECT_TRUE(agree_sig_figs(k20.value, 2.408235349968517176920108e-13, 4));
    EXPECT_EQ(k20.method, Method::oracle);
    EXPECT_EQ(k20.precision.kind, PrecisionTag::Kind::arbitrary);
}

TEST(Oracle, fixed_precision_evaluation_is_exact_enough)
{
    const BigFloat c = closed_form_big(NaturalParams(ramp(50)).full(), 512);
    EXPECT_TRUE(agree_sig_figs(c, BigFloat(5.439019280950070650388746e-52, 64), 15));
}

TEST(Oracle, raises_precision_until_converged)
{
    // Roughly 15 digits cancel at K = 50, so 64 bits cannot be enough.
    const OracleValue v = oracle_big(NaturalParams(ramp(50)).full());
    EXPECT_GT(v.bits, 64);
    EXPECT_TRUE(agree_sig_figs(v.value.to_double(), 5.439019280950070650388746e-52, 4));
}

TEST(Oracle, precision_exhausted_reports_last_values)
{
    OracleConfig cfg;
    cfg.max_bits = 128;
    std::vector<double> eta(40);
    for (int i = 0; i < 40; ++i)
        eta[i] = 1e-3 * (i + 1);
    try {
        oracle_big(NaturalParams(eta).full(), cfg);
        FAIL() << "expected PrecisionExhausted";
    } catch (const PrecisionExhaustedError& e) {
        EXPECT_EQ(e.code(), ErrorCode::precision_exhausted);
        EXPECT_FALSE(std::isnan(e.last()));
        EXPECT_FALSE(std::isnan(e.previous()));
    }
}

TEST(Oracle, config_validation)
{
    OracleConfig cfg;
    cfg.growth = 1;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.max_bits = 32;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(Oracle, log10_far_below_double_range)
{
    // |C| ~ 1/(K-1)! when eta is small; 199! ~ 1e372.
    std::vector<double> eta(199);
    for (int i = 0; i < 199; ++i)
        eta[i] = 0.01 * (i + 1);
    EXPECT_LT(oracle_log10_abs(NaturalParams(eta)), -350.0);
}

TEST(Quadrature, frozen_values)
{
    EXPECT_NEAR(norm_const_quadrature(NaturalParams({1, 2, 3, 4}), 1e-10) / 0.3632171508392203556807316, 1.0, 1e-8);
    EXPECT_NEAR(norm_const_quadrature(NaturalParams({-3.5, 0.25, 7}), 1e-10) / 2.1705353593949494992385, 1.0, 1e-8);
    EXPECT_NEAR(norm_const_quadrature(NaturalParams({1.0}), 1e-12), std::expm1(1.0), 1e-12);
}

TEST(Quadrature, tolerates_ties)
{
    // Ties are harmless for the integral: (1, 1, 0) gives exactly 1.
    EXPECT_NEAR(norm_const_quadrature(NaturalParams({1.0, 1.0}), 1e-12), 1.0, 1e-10);
}

TEST(Quadrature, rejects_large_dimension)
{
    try {
        norm_const_quadrature(NaturalParams({1, 2, 3, 4, 5}), 1e-8);
        FAIL() << "expected UnsupportedDimension";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported_dimension);
    }
}

TEST(Quadrature, agrees_with_oracle_property)
{
    CounterRng rng(3);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<double> e(1 + rng.below(4));
        for (double& v : e)
            v = 2.0 * rng.normal();
        const NaturalParams eta(e);
        EXPECT_TRUE(agree_sig_figs(norm_const_quadrature(eta, 1e-8), norm_const_oracle(eta).value, 4));
    }
}
