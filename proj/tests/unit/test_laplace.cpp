#include "errors.hpp"
#include "laplace.hpp"
#include "oracle.hpp"
#include "rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ccnorm;

namespace {

InversionSettings with(InversionMethod m)
{
    InversionSettings s;
    s.method = m;
    return s;
}

// c(t) = (e^{eta t} - 1) / eta has image 1 / ((s - eta) s).
double k2_pair(double eta, double t)
{
    return std::expm1(eta * t) / eta;
}

} // namespace

TEST(LaplaceImage, shift_makes_inversion_ready)
{
    const auto image = LaplaceImage::for_params(NaturalParams({1.0, 2.0, 3.0, 4.0}));
    EXPECT_EQ(image.shift(), 5.0);
    EXPECT_EQ(image.max_shifted_pole(), -1.0);
    EXPECT_TRUE(image.inversion_ready());
}

TEST(LaplaceImage, shift_survives_rounding)
{
    CounterRng rng(2);
    for (int i = 0; i < 1000; ++i)
        EXPECT_TRUE(LaplaceImage::for_params(NaturalParams({rng.normal(), rng.normal()})).inversion_ready());
}

TEST(LaplaceImage, evaluation_and_pole_hit)
{
    const LaplaceImage image({1.0, 0.0}, 2.0);
    // Shifted poles -1 and -2.
    const auto v = image_eval(image, {1.0, 0.0});
    EXPECT_NEAR(v.real(), 1.0 / (2.0 * 3.0), 1e-15);
    EXPECT_NEAR(image_eval_real(image, BigFloat(1.0, 128)).to_double(), 1.0 / 6.0, 1e-15);
    try {
        image_eval(image, {-1.0, 0.0});
        FAIL() << "expected PoleHit";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::pole_hit);
    }
}

TEST(Invert, rejects_bad_input)
{
    const auto image = LaplaceImage::for_params(NaturalParams({1.0}));
    EXPECT_THROW(invert(image, 0.0, {}), Error);
    EXPECT_THROW(invert(LaplaceImage({1.0, 0.0}, 1.5), 1.0, {}), Error);
    InversionSettings bad;
    bad.stehfest_N = 13;
    EXPECT_THROW(invert(image, 1.0, bad), Error);
}

TEST(Invert, worked_example_k5)
{
    const NaturalParams eta({1, 2, 3, 4});
    for (auto m : {InversionMethod::dehoog, InversionMethod::stehfest, InversionMethod::talbot}) {
        const double v = norm_const_laplace(eta, with(m)).value;
        EXPECT_NEAR(v / 0.3632171508392203556807316, 1.0, 1e-4) << static_cast<int>(m);
    }
}

TEST(Invert, worked_example_k10)
{
    std::vector<double> e;
    for (int i = 1; i < 10; ++i)
        e.push_back(i);
    EXPECT_TRUE(agree_sig_figs(norm_const_laplace(NaturalParams(e), with(InversionMethod::dehoog)).value, 3.5982e-4, 3));
}

TEST(Invert, k2_transform_pairs)
{
    for (double eta : {-2.0, 1.0, 5.0})
        for (double t : {0.5, 1.0, 2.0})
            for (auto m : {InversionMethod::dehoog, InversionMethod::stehfest}) {
                const double v = invert(LaplaceImage::for_params(NaturalParams({eta})), t, with(m)).value;
                EXPECT_TRUE(agree_sig_figs(v, k2_pair(eta, t), 6)) << eta << " " << t << " " << v;
            }
}

TEST(Invert, answer_independent_of_shift)
{
    const std::vector<double> poles{0.3, -1.1, 0.0};
    for (auto m : {InversionMethod::dehoog, InversionMethod::stehfest}) {
        const double a = invert(LaplaceImage(poles, 1.3), 1.0, with(m)).value;
        const double b = invert(LaplaceImage(poles, 3.7), 1.0, with(m)).value;
        EXPECT_TRUE(agree_sig_figs(a, b, 6)) << a << " " << b;
    }
}

TEST(Invert, scaling_identity_property)
{
    // c(t) = t^{K-1} C(t eta).
    CounterRng rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<double> e(1 + rng.below(5));
        for (double& v : e)
            v = rng.normal();
        const NaturalParams eta(e);
        const double t = 0.5 + 1.5 * rng.uniform();
        const double inverted = invert(LaplaceImage::for_params(eta), t, with(InversionMethod::dehoog)).value;
        EXPECT_TRUE(agree_sig_figs(inverted, scaled_c(eta, t), 4)) << inverted << " " << scaled_c(eta, t);
    }
}

TEST(Invert, repeated_poles_are_fine)
{
    // Poles (1, 1, 0): the integral of e^{x1 + x2} over the simplex is 1.
    const double v = invert(LaplaceImage({1.0, 1.0, 0.0}, 2.0), 1.0, with(InversionMethod::dehoog)).value;
    EXPECT_NEAR(v, 1.0, 1e-8);
}
