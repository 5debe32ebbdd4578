// test_analytics.cpp: reconstruction, Gaussian histogram, decay time, fitting, revivals

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bhdimer/analytics.hpp"

using namespace bhdimer;

namespace {

constexpr double kJ = 0.5, kU = 0.25;

std::vector<double> grid(double t_end, double dt) {
    std::vector<double> t;
    for (std::size_t k = 0; static_cast<double>(k) * dt <= t_end + 1e-12; ++k)
        t.push_back(static_cast<double>(k) * dt);
    return t;
}

NumberHistogram delta_histogram(int n_max, std::initializer_list<int> sectors) {
    NumberHistogram h;
    h.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int N : sectors) h.p[N] = 1.0 / static_cast<double>(sectors.size());
    return h;
}

} // namespace

TEST(Reconstruct, SingleSectorIsPureSinusoid) {
    const auto t = grid(200.0, 0.05);
    ReconstructionOptions opt;
    opt.evolution = HistogramEvolution::frozen;
    const auto s = reconstruct_current(delta_histogram(20, {14}), kJ, kU, t, opt);
    const double w = sector_frequency(kJ, kU, 14);
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) worst = std::max(worst, std::abs(s[k] - std::sin(w * t[k])));
    EXPECT_LE(worst, 1e-15);
    EXPECT_EQ(s[0], 0.0);
}

TEST(Reconstruct, ZeroAtOriginForAnyHistogram) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NumberHistogram h;
    for (int N = 0; N <= 20; ++N) h.p.push_back(u(rng));
    const std::vector<double> t{0.0, 1.0};
    for (auto ev : {HistogramEvolution::frozen, HistogramEvolution::shifted}) {
        ReconstructionOptions opt;
        opt.evolution = ev;
        opt.gamma = 0.002;
        EXPECT_EQ(reconstruct_current(h, kJ, kU, t, opt)[0], 0.0);
    }
    EXPECT_THROW(reconstruct_current(NumberHistogram{}, kJ, kU, t), std::invalid_argument);
    ReconstructionOptions ex;
    ex.evolution = HistogramEvolution::exact;
    EXPECT_THROW(reconstruct_current(h, kJ, kU, t, ex), std::invalid_argument);
}

TEST(Reconstruct, ExactModeUsesSuppliedHistograms) {
    const auto t = grid(10.0, 0.1);
    std::vector<NumberHistogram> hs(t.size(), delta_histogram(10, {4}));
    ReconstructionOptions ex;
    ex.evolution = HistogramEvolution::exact;
    const auto a = reconstruct_current(delta_histogram(10, {7}), kJ, kU, t, ex, hs);
    ReconstructionOptions fr;
    fr.evolution = HistogramEvolution::frozen;
    const auto b = reconstruct_current(delta_histogram(10, {4}), kJ, kU, t, fr);
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(a[k], b[k]);
}

TEST(Reconstruct, ShiftedFollowsDecayingMean) {
    // With gamma = 0 shifted equals frozen.
    const auto h = gaussian_histogram(14.0, 20);
    const auto t = grid(50.0, 0.1);
    ReconstructionOptions a, b;
    a.evolution = HistogramEvolution::frozen;
    b.evolution = HistogramEvolution::shifted;
    b.gamma = 0.0;
    const auto sa = reconstruct_current(h, kJ, kU, t, a);
    const auto sb = reconstruct_current(h, kJ, kU, t, b);
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(sa[k], sb[k], 1e-15);
}

TEST(Reconstruct, ScaleToReference) {
    const auto t = grid(20.0, 0.01);
    std::vector<double> ref(t.size()), s(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        ref[k] = -0.3 * std::sin(2.0 * t[k]);
        s[k] = 5.0 * std::sin(2.0 * t[k]);
    }
    const auto scaled = scale_to_reference(s, ref);
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(scaled[k], ref[k], 1e-14);
    const std::vector<double> flat(10, 1.0);
    EXPECT_THROW(scale_to_reference(flat, ref), std::invalid_argument);
}

TEST(GaussianHistogram, Fixture) {
    const auto h = gaussian_histogram(14.0, 20);
    ASSERT_EQ(h.p.size(), 21u);
    EXPECT_NEAR(h.sum(), 1.0, 1e-15);
    // Direct evaluation of exp(-(N-14)^2 / (2 sqrt 14)) normalized.
    double z = 0.0;
    std::vector<double> ref(21);
    for (int N = 0; N <= 20; ++N) z += ref[N] = std::exp(-(N - 14.0) * (N - 14.0) / (2 * std::sqrt(14.0)));
    for (int N = 0; N <= 20; ++N) EXPECT_NEAR(h.p[N], ref[N] / z, 1e-16);
    EXPECT_NEAR(h.p[14], 0.206313, 1e-6);
    EXPECT_NEAR(h.p[13], 0.180506, 1e-6);
    EXPECT_NEAR(h.p[15], 0.180506, 1e-6);
    EXPECT_NEAR(h.p[20], 0.00167983, 1e-8);
    EXPECT_NEAR(h.p[5], 4e-6, 5e-7);
    const auto peak = std::max_element(h.p.begin(), h.p.end()) - h.p.begin();
    EXPECT_EQ(peak, 14);
    EXPECT_THROW(gaussian_histogram(0.0, 20), std::invalid_argument);
}

TEST(GaussianHistogram, SqueezedWidthAndUnimodal) {
    for (double mean : {1.0, 4.0, 10.0, 14.0, 20.0, 50.0}) {
        const auto h = gaussian_histogram(mean, static_cast<int>(mean * 3 + 20));
        EXPECT_NEAR(h.sum(), 1.0, 1e-12);
        // Truncation at N = 0 narrows very small means.
        if (mean >= 4.0) {
            EXPECT_NEAR(std::sqrt(h.variance()), std::pow(mean, 0.25), 0.02 * std::pow(mean, 0.25))
                << mean;
        }
        const auto peak = std::max_element(h.p.begin(), h.p.end()) - h.p.begin();
        for (std::size_t N = 1; N < h.p.size(); ++N) {
            if (static_cast<long>(N) <= peak) EXPECT_GE(h.p[N], h.p[N - 1]);
            else EXPECT_LE(h.p[N], h.p[N - 1]);
        }
        EXPECT_EQ(peak, std::lround(mean));
    }
}

TEST(DecayTime, Examples) {
    const double tau = predicted_decay_time(kJ, kU, 14.0);
    EXPECT_NEAR(tau * tau, 4 * 7.25 / (0.25 * 0.0625 * std::sqrt(14.0)), 1e-9);
    EXPECT_NEAR(tau, 22.3, 0.05);
    EXPECT_NEAR(tau / tunneling_period(kJ), 1.77, 0.01);
    EXPECT_TRUE(std::isinf(predicted_decay_time(kJ, 0.0, 14.0)));
    const double big = 1e8;
    EXPECT_NEAR(predicted_decay_time(kJ, kU, 2 * big) / predicted_decay_time(kJ, kU, big),
                std::pow(2.0, 0.25), 1e-6);
    EXPECT_THROW(predicted_decay_time(0.0, kU, 14.0), std::invalid_argument);
    EXPECT_THROW(predicted_decay_time(kJ, kU, 0.0), std::invalid_argument);
}

TEST(ResonanceWidth, Formula) {
    EXPECT_NEAR(resonance_width(1 / std::sqrt(2.0), 16.0, 0.25), std::sqrt(4 / std::sqrt(2.0) / 0.25), 1e-14);
    EXPECT_THROW(resonance_width(1.0, 16.0, 0.0), std::invalid_argument);
}

TEST(FitEnvelope, RecoversSyntheticParameters) {
    const double A = 0.47, tau0 = 15.0, w0 = 1.45, phi0 = 0.3;
    const auto t = grid(40.0, 0.05);
    std::vector<double> x(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
        x[k] = A * std::exp(-t[k] * t[k] / (tau0 * tau0)) * std::sin(w0 * t[k] + phi0);
    FitOptions opt;
    opt.fit_offset = false;
    opt.window_end = 40.0;
    const auto fit = fit_envelope(t, x, opt);
    EXPECT_NEAR(fit.amplitude / A, 1.0, 1e-6);
    EXPECT_NEAR(fit.tau / tau0, 1.0, 1e-6);
    EXPECT_NEAR(fit.omega / w0, 1.0, 1e-6);
    EXPECT_NEAR(fit.phase, phi0, 1e-6);
    EXPECT_LT(fit.residual, 1e-6);
    EXPECT_TRUE(fit.decay_measurable);
}

TEST(FitEnvelope, RecoversWithOffset) {
    const double A = 0.47, tau0 = 12.0, w0 = 2.7, c0 = -0.013;
    const auto t = grid(30.0, 0.03);
    std::vector<double> x(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
        x[k] = A * std::exp(-t[k] * t[k] / (tau0 * tau0)) * std::sin(w0 * t[k]) + c0;
    FitOptions opt;
    opt.window_end = 30.0;
    const auto fit = fit_envelope(t, x, opt);
    EXPECT_NEAR(fit.tau / tau0, 1.0, 1e-6);
    EXPECT_NEAR(fit.omega / w0, 1.0, 1e-6);
    EXPECT_NEAR(fit.offset, c0, 1e-8);
}

TEST(FitEnvelope, PureSinusoidHasNoMeasurableDecay) {
    const auto t = grid(60.0, 0.05);
    std::vector<double> x(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) x[k] = 0.8 * std::sin(1.3 * t[k]);
    FitOptions opt;
    opt.fit_offset = false;
    const auto fit = fit_envelope(t, x, opt);
    EXPECT_FALSE(fit.decay_measurable);
    EXPECT_GT(fit.tau, 60.0);
    EXPECT_NEAR(fit.omega, 1.3, 1e-8);
}

TEST(FitEnvelope, AmbiguousFrequencyIsRejected) {
    const auto t = grid(100.0, 0.05);
    std::vector<double> x(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) x[k] = std::sin(1.0 * t[k]) + std::sin(2.3 * t[k]);
    FitOptions opt;
    opt.window_end = 100.0;
    EXPECT_THROW(fit_envelope(t, x, opt), FitError);
    EXPECT_THROW(fit_envelope(std::vector<double>(5), std::vector<double>(5)), std::invalid_argument);
}

TEST(Revivals, TwoSectorBeat) {
    // Equal weights in N and N+1: envelope |cos((w1 - w0) t / 2)|, revivals
    // every 2 pi / (w1 - w0).
    const int N = 14;
    const double w0 = sector_frequency(kJ, kU, N), w1 = sector_frequency(kJ, kU, N + 1);
    const double beat = 2 * std::numbers::pi / (w1 - w0);
    const auto t = grid(3.5 * beat, 0.02);
    ReconstructionOptions opt;
    opt.evolution = HistogramEvolution::frozen;
    const auto s = reconstruct_current(delta_histogram(20, {N, N + 1}), kJ, kU, t, opt);
    FitOptions fo;
    fo.fit_offset = false;
    const auto fit = fit_envelope(t, s, fo);
    const auto rev = revival_detector(t, s, fit);
    ASSERT_GE(rev.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(rev[k].t / beat, static_cast<double>(k + 1), 0.01) << k;
        EXPECT_NEAR(rev[k].amplitude, 1.0, 0.01);
    }
}

TEST(Revivals, GaussianHistogramReconstruction) {
    const double mean = 14.0;
    const auto h = gaussian_histogram(mean, 40);
    const double spacing = sector_frequency(kJ, kU, 15) - sector_frequency(kJ, kU, 14);
    const double expected = 2 * std::numbers::pi / spacing;
    const auto t = grid(1.3 * expected, 0.02);
    ReconstructionOptions opt;
    opt.evolution = HistogramEvolution::frozen;
    const auto s = reconstruct_current(h, kJ, kU, t, opt);
    FitOptions fo;
    fo.fit_offset = false;
    const auto fit = fit_envelope(t, s, fo);
    const auto rev = revival_detector(t, s, fit);
    ASSERT_FALSE(rev.empty());
    EXPECT_NEAR(rev.front().t / expected, 1.0, 0.05);
}

TEST(Revivals, MonotoneDecayGivesNone) {
    const auto t = grid(100.0, 0.05);
    std::vector<double> x(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) x[k] = std::exp(-t[k] * t[k] / 100.0) * std::sin(2 * t[k]);
    FitOptions fo;
    fo.fit_offset = false;
    const auto fit = fit_envelope(t, x, fo);
    EXPECT_TRUE(revival_detector(t, x, fit).empty());
}

TEST(CrossCorrelation, Basics) {
    const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
    EXPECT_NEAR(cross_correlation(a, b), 1.0, 1e-15);
    EXPECT_NEAR(cross_correlation(a, c), -1.0, 1e-15);
    EXPECT_THROW(cross_correlation(a, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Dephasing, ReconstructionDecayTimeScaling) {
    // For a Gaussian histogram of variance sqrt(Nbar) and frequency spacing
    // d omega / dN = 2 J U / omega, the collapse is exp(-t^2 / tau^2) with
    // tau^2 = omega^2 / (2 J^2 U^2 sqrt(Nbar)).
    for (double mean : {10.0, 14.0, 20.0}) {
        const auto m = reconstruction_dephasing_time(kJ, kU, mean);
        const double w = josephson_frequency(kJ, kU * mean);
        const double tau_theory = w / (kJ * kU) / std::sqrt(2.0 * std::sqrt(mean));
        EXPECT_NEAR(m.tau / tau_theory, 1.0, 0.05) << mean;
        EXPECT_GT(m.predicted, m.tau);
    }
}
