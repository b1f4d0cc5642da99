#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qlocker/circuit.hpp"
#include "qlocker/errors.hpp"
#include "qlocker/experiments.hpp"

using namespace qlocker;

TEST(RandomStream, SameSeedSameSequence) {
    RandomStream a(99), b(99);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, SplitIsPureFunctionOfSeedAndIndex) {
    const RandomStream root(5);
    RandomStream a = root.split(17);
    RandomStream b = RandomStream(5).split(17);
    RandomStream c = root.split(18);
    const auto va = a.next_u64();
    EXPECT_EQ(va, b.next_u64());
    EXPECT_NE(va, c.next_u64());
}

TEST(RandomStream, UniformInUnitInterval) {
    RandomStream r(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(SampleShots, FairCoinWithinThreeSigma) {
    Circuit c(1);
    c.add(GateOp::h(0)).measure(0);
    for (std::uint64_t seed : {1ULL, 42ULL, 12345ULL}) {
        const auto h = sample_shots(c, 8192, seed);
        EXPECT_EQ(h.shots, 8192u);
        EXPECT_EQ(h.count("0") + h.count("1"), 8192u);
        EXPECT_LE(std::abs(static_cast<double>(h.count("0")) - 4096.0), 3 * 45.254833995939045);
    }
}

TEST(SampleShots, KetZeroAlwaysReadsZero) {
    Circuit c(1);
    c.measure(0);
    const auto h = sample_shots(c, 500, 7);
    EXPECT_EQ(h.count("0"), 500u);
    EXPECT_EQ(h.counts.size(), 1u);
}

TEST(SampleShots, SingleIterationCircuitZBasis) {
    // p0 = cos^2(pi/8) cos^2(0.2) + sin^2(pi/8)
    const double a2 = std::pow(std::cos(std::numbers::pi / 8), 2);
    const double p0 = a2 * std::pow(std::cos(0.2), 2) + (1 - a2);
    EXPECT_NEAR(p0, 0.9663, 5e-5);
    const auto h = sample_shots(single_iteration_circuit(std::numbers::pi / 8, 0.2, Basis::Z), 8192, 42);
    const double sigma = std::sqrt(p0 * (1 - p0) / 8192);
    EXPECT_LE(std::abs(h.frequency("0") - p0), 3 * sigma);
}

TEST(SampleShots, KeysFollowMeasurementOrder) {
    Circuit c(2);
    c.add(GateOp::x(1)).measure(0).measure(1);
    const auto h = sample_shots(c, 10, 1);
    EXPECT_EQ(h.count("01"), 10u);
}

TEST(SampleShots, DeterministicAndIndependentOfWorkers) {
    const Circuit c = convergence_circuit(0.3, 6);
    const auto a = sample_shots(c, 3000, 11, 1);
    const auto b = sample_shots(c, 3000, 11, 1);
    const auto d = sample_shots(c, 3000, 11, 4);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.counts, d.counts);
    EXPECT_EQ(d.shots, 3000u);
}

TEST(SampleShots, ZeroShotsRejected) {
    Circuit c(1);
    c.measure(0);
    EXPECT_THROW(sample_shots(c, 0, 1), InputError);
}

TEST(Circuit, ResetReturnsQubitToZero) {
    Circuit c(1);
    c.add(GateOp::x(0)).reset(0).measure(0);
    const auto h = sample_shots(c, 100, 2);
    EXPECT_EQ(h.count("0"), 100u);
}

TEST(Circuit, RejectsOutOfRangeQubits) {
    Circuit c(2);
    EXPECT_THROW(c.add(GateOp::x(2)), IndexError);
    EXPECT_THROW(c.measure(5), IndexError);
    EXPECT_THROW(c.reset(2), IndexError);
}

TEST(HistogramCsv, OneOutcomePerRow) {
    CountsHistogram h;
    h.shots = 3;
    h.counts = {{"0", 1}, {"1", 2}};
    EXPECT_EQ(histogram_csv(h), "bitstring,count\n0,1\n1,2\n");
}
