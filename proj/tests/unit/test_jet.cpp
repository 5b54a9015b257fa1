#include "bigfloat.hpp"
#include "jet.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ccnorm;

namespace {

auto shape(std::vector<int> degrees)
{
    return std::make_shared<const JetShape>(std::move(degrees));
}

} // namespace

TEST(JetShape, layout)
{
    JetShape s({2, 1});
    EXPECT_EQ(s.size(), 6u);
    EXPECT_EQ(s.total_degree(), 3);
    EXPECT_EQ(s.exponent(5, 0), 2);
    EXPECT_EQ(s.exponent(5, 1), 1);
    EXPECT_EQ(s.add(1, 3), 4u);
    EXPECT_EQ(s.add(2, 2), s.size());
}

TEST(Jet, exp_univariate_coefficients)
{
    auto sh = shape({5});
    const auto x = Jet<double>::variable(sh, 0.7, 0);
    const auto e = exp(x);
    double fact = 1.0;
    for (std::size_t m = 0; m <= 5; ++m) {
        if (m > 0)
            fact *= static_cast<double>(m);
        EXPECT_NEAR(e[m], std::exp(0.7) / fact, 1e-14);
    }
}

TEST(Jet, reciprocal_univariate_coefficients)
{
    // 1/(2 + t) = sum (-1)^m t^m / 2^{m+1}.
    auto sh = shape({6});
    const auto r = reciprocal(Jet<double>::variable(sh, 2.0, 0));
    for (std::size_t m = 0; m <= 6; ++m)
        EXPECT_NEAR(r[m], (m % 2 ? -1.0 : 1.0) / std::pow(2.0, m + 1), 1e-15);
}

TEST(Jet, mixed_partial_of_product)
{
    // f = exp(x) / (x - y) at (1, 0); d^2 f / dx dy computed by hand.
    auto sh = shape({1, 1});
    const auto x = Jet<double>::variable(sh, 1.0, 0);
    const auto y = Jet<double>::variable(sh, 0.0, 1);
    const auto f = exp(x) * reciprocal(x - y);
    // f_y = e^x/(x-y)^2, f_xy = e^x/(x-y)^2 - 2 e^x/(x-y)^3 = -e at (1, 0).
    EXPECT_NEAR(f.top(), -std::exp(1.0), 1e-14);
    EXPECT_NEAR(f.value(), std::exp(1.0), 1e-14);
}

TEST(Jet, big_float_scalar)
{
    auto sh = shape({3, 2});
    const auto x = Jet<BigFloat>::variable(sh, BigFloat(0.5, 200), 0);
    const auto y = Jet<BigFloat>::variable(sh, BigFloat(-0.25, 200), 1);
    const auto f = exp(x + y);
    // Coefficient of t_x^3 t_y^2 is e^{0.25} / (3! 2!).
    EXPECT_NEAR(f.top().to_double(), std::exp(0.25) / 12.0, 1e-16);
    EXPECT_EQ(f.top().bits(), 200);
}

TEST(Jet, truncation_drops_terms_outside_box)
{
    auto sh = shape({1});
    const auto x = Jet<double>::variable(sh, 0.0, 0);
    const auto sq = x * x;
    EXPECT_EQ(sq[0], 0.0);
    EXPECT_EQ(sq[1], 0.0);
}
