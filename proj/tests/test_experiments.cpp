#include <gtest/gtest.h>

#include <cmath>

#include "qlocker/errors.hpp"
#include "qlocker/experiments.hpp"

using namespace qlocker;

TEST(VerifyDemo, DefaultsPass) {
    const auto r = run_verify_demo({});
    EXPECT_TRUE(r.all_checks_passed()) << r.json.dump(2);
    EXPECT_EQ(r.json["schema_version"], kSchemaVersion);
    EXPECT_EQ(r.json["command"], "verify-demo");
    EXPECT_TRUE(r.json.contains("rho_experimental"));
    EXPECT_NE(r.csv.find("# basis=z"), std::string::npos);
}

TEST(Converge, DefaultsPass) {
    const auto r = run_converge({});
    EXPECT_TRUE(r.all_checks_passed()) << r.json.dump(2);
    EXPECT_NEAR(r.json["analytic"]["all_zero_fraction"].get<double>(), 0.8417136381803734, 1e-13);
    EXPECT_NEAR(r.json["analytic"]["p_system_one_given_all_zero"].get<double>(), 0.5940262546783797, 1e-13);
    EXPECT_TRUE(r.json.contains("hardware_reference"));
}

TEST(Converge, ZeroIterationsAllZeroFractionIsOne) {
    ExperimentConfig c;
    c.iterations = 0;
    c.shots = 1000;
    const auto r = run_converge(c);
    EXPECT_EQ(r.json["simulated"]["all_zero_fraction"].get<double>(), 1.0);
    EXPECT_TRUE(r.all_checks_passed());
}

TEST(LockerDemo, DefaultsPass) {
    ExperimentConfig c;
    c.repetitions = 2000;
    const auto r = run_locker_demo(c);
    EXPECT_TRUE(r.all_checks_passed()) << r.json.dump(2);
    EXPECT_EQ(r.json["correct_password"]["retrieved"], "1011");
    EXPECT_EQ(r.json["orthogonal_password"]["retrieved"], "0000");
}

TEST(LockerDemo, FixedOverlapAnalytic) {
    ExperimentConfig c;
    c.overlap = 0.25;
    c.otp_qubits = 2;
    c.repetitions = 4000;
    const auto r = run_locker_demo(c);
    EXPECT_TRUE(r.all_checks_passed()) << r.json.dump(2);
    EXPECT_NEAR(r.json["wrong_password"]["analytic_acceptance"].get<double>(), 0.0625, 1e-12);
}

TEST(LockerDemo, InvalidMessage) {
    ExperimentConfig c;
    c.message = "0000";
    EXPECT_THROW(run_locker_demo(c), InvalidMessageError);
}

TEST(Sweep, AnalyticValues) {
    ExperimentConfig c;
    c.otp_qubits = 3;
    c.theta_grid = {0.1};
    c.iteration_grid = {38};
    c.shots = 2000;
    const auto r = run_sweep(c);
    EXPECT_TRUE(r.all_checks_passed()) << r.json.dump(2);
    std::map<std::pair<int, std::string>, double> analytic;
    for (const auto& row : r.json["rows"]) {
        analytic[{row["n"].get<int>(), row["policy"].get<std::string>()}] = row["analytic"].get<double>();
    }
    EXPECT_NEAR((analytic[{1, "paper"}]), 0.5, 1e-15);
    EXPECT_NEAR((analytic[{2, "paper"}]), 0.25, 1e-15);
    EXPECT_NEAR((analytic[{3, "paper"}]), 0.125, 1e-15);
    EXPECT_NEAR((analytic[{1, "strict"}]), 0.3417136381803734, 1e-13);
}

TEST(Sweep, ZeroThetaIsFlagged) {
    ExperimentConfig c;
    c.theta_grid = {0.0};
    c.shots = 100;
    const auto r = run_sweep(c);
    for (const auto& row : r.json["rows"]) {
        EXPECT_TRUE(row["degenerate"].get<bool>());
        EXPECT_TRUE(row["monte_carlo"].is_null());
    }
    EXPECT_NE(r.csv.find(",1\n"), std::string::npos);
}

TEST(Reports, ByteIdenticalForIdenticalConfigs) {
    ExperimentConfig c;
    c.shots = 2000;
    c.repetitions = 500;
    EXPECT_EQ(run_verify_demo(c).json.dump(), run_verify_demo(c).json.dump());
    EXPECT_EQ(run_converge(c).json.dump(), run_converge(c).json.dump());
    EXPECT_EQ(run_locker_demo(c).json.dump(), run_locker_demo(c).json.dump());
    ExperimentConfig w = c;
    w.workers = 4;
    EXPECT_EQ(run_converge(c).json["simulated"].dump(), run_converge(w).json["simulated"].dump());
}

TEST(BandCheck, ZeroSigmaRequiresEquality) {
    EXPECT_TRUE(band_check("a", 1.0, 1.0, 0.0, 3.0)["passed"].get<bool>());
    EXPECT_FALSE(band_check("a", 1.0, 0.9, 0.0, 3.0)["passed"].get<bool>());
    EXPECT_TRUE(band_check("a", 1.0, 0.9, 0.05, 3.0)["passed"].get<bool>());
}
