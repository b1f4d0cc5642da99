// Acceptance gate: one PASS/FAIL line per criterion, with runtime budgets.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "qlocker/circuit.hpp"
#include "qlocker/experiments.hpp"
#include "qlocker/locker.hpp"
#include "qlocker/teleport.hpp"
#include "qlocker/tomography.hpp"
#include "qlocker/verify.hpp"

using namespace qlocker;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

int failures = 0;

void run(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < budget_s;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("[%s] %s %s | %s | %.3fs (limit %.0fs%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                elapsed, budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Eigen::MatrixXcd coupling_oracle(double theta) {
    const auto c0not = oracle::controlled(oracle::pauli_x(), 1, {{0, 0}}, 2);
    const Eigen::MatrixXcd decay = (oracle::C(0, -theta) * c0not).exp();
    return oracle::embed(oracle::rz(theta), 0, 2) * decay;
}

Outcome ac1() {
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        const double theta = -std::numbers::pi + 2 * std::numbers::pi * k / 99;
        const auto seq = decompose_controlled0_rx(theta);
        worst = std::max(worst, oracle::phase_aligned_error(unitary_of(seq, 2), coupling_oracle(theta)));
    }
    return {worst < 1e-12, fmt("max error %.3e (tol 1e-12)", worst)};
}

Outcome ac2() {
    const double a = std::numbers::pi / 8;
    const double p0 = std::pow(std::cos(a), 2) * std::pow(std::cos(0.2), 2) + std::pow(std::sin(a), 2);
    const auto h = sample_shots(single_iteration_circuit(a, 0.2, Basis::Z), 8192, 42);
    const double observed = h.frequency("0");
    const double band = 3 * std::sqrt(p0 * (1 - p0) / 8192);
    const DensityMatrix rho = theoretical_ancilla_density(std::cos(a), 0.2, AncillaModel::Diagonal);
    const auto r3 = [](double v) { return std::round(v * 1000) / 1000; };
    const bool rho_ok = r3(rho(0, 0).real()) == 0.966 && r3(rho(1, 1).real()) == 0.034 && std::abs(rho(0, 1)) == 0;
    const bool band_ok = std::abs(observed - p0) <= band && band <= 0.0060;
    return {band_ok && rho_ok,
            fmt("P(0)=%.5f analytic %.5f band +-%.5f", observed, p0, band) +
                fmt("; rho_T diag(%.3f, %.3f); hardware 0.938 reference", rho(0, 0).real(), rho(1, 1).real())};
}

Outcome ac3() {
    const std::map<Basis, OutcomeProbabilities> table{
        {Basis::X, {0.498, 0.502}}, {Basis::Y, {0.710, 0.290}}, {Basis::Z, {0.938, 0.063}}};
    const auto rec = reconstruct_density(stokes_from_probabilities(table));
    Eigen::Matrix2cd printed;
    printed << Complex(0.937, 0.0), Complex(-0.002, -0.210), Complex(-0.002, 0.210), Complex(0.063, 0.0);
    const double err = (rec.rho.matrix() - printed).cwiseAbs().maxCoeff();
    // Printed entries carry three decimals; a rounding residue of exactly 5e-4 is allowed.
    return {err <= 5e-4 + 1e-12, fmt("max entry error %.2e (tol 5e-4)", err)};
}

Outcome ac4() {
    const double theta = 0.1;
    const std::size_t n = 38;
    const auto h = sample_shots(convergence_circuit(theta, n), 8192, 42, 0);
    const std::string zeros(n, '0');
    const std::uint64_t z0 = h.count(zeros + "0"), z1 = h.count(zeros + "1");
    const double frac = static_cast<double>(z0 + z1) / 8192;
    const double cond = static_cast<double>(z1) / static_cast<double>(z0 + z1);
    const double p_all = all_zero_probability(0.5, theta, n);
    const double p_cond = 0.5 / p_all;
    const double s_all = std::sqrt(p_all * (1 - p_all) / 8192);
    const double s_cond = std::sqrt(p_cond * (1 - p_cond) / static_cast<double>(z0 + z1));
    const bool sim_ok = std::abs(frac - p_all) <= 3 * s_all && std::abs(cond - p_cond) <= 3 * s_cond;
    const double hw_all = 6836.0 / 8192, hw_cond = 4116.0 / 6836;
    const bool hw_ok = std::abs(hw_all - p_all) <= 0.02 && std::abs(hw_cond - p_cond) <= 0.02;
    return {sim_ok && hw_ok, fmt("all-zero %.4f vs %.4f, P(1|0s) %.4f vs %.4f", frac, p_all, cond, p_cond) +
                                 fmt("; hardware %.4f / %.4f within 0.02", hw_all, hw_cond)};
}

Outcome ac5() {
    struct Case {
        double a2, theta;
        std::size_t n;
    };
    std::vector<Case> cases;
    for (int i = 0; i <= 10; ++i)
        for (double theta : {0.05, 0.2, 0.5})
            for (std::size_t n = 1; n <= 10; ++n) cases.push_back({i / 10.0, theta, n});

    double worst_enum = 0;
    for (const auto& c : cases) {
        const StateVector s = StateVector::qubit(std::sqrt(c.a2), std::sqrt(1 - c.a2));
        double accept = 0;
        for (const auto& w : enumerate_trajectories(s, {c.theta, c.n})) accept += w.trajectory.accepted * w.probability;
        worst_enum = std::max(worst_enum, std::abs(accept - c.a2));
    }

    constexpr std::uint64_t shots = 100000;
    std::vector<double> z(cases.size());
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < std::max(1u, std::thread::hardware_concurrency()); ++t) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < cases.size();) {
                    const auto& c = cases[i];
                    const StateVector s = StateVector::qubit(std::sqrt(c.a2), std::sqrt(1 - c.a2));
                    const RandomStream root = RandomStream(42).split(i);
                    std::uint64_t hits = 0;
                    for (std::uint64_t k = 0; k < shots; ++k) {
                        RandomStream rng = root.split(k);
                        hits += run_verification(s, {c.theta, c.n}, rng).accepted;
                    }
                    const double p = static_cast<double>(hits) / shots;
                    const double sigma = std::sqrt(c.a2 * (1 - c.a2) / shots);
                    z[i] = sigma == 0 ? (p == c.a2 ? 0.0 : INFINITY) : std::abs(p - c.a2) / sigma;
                }
            });
        }
    }
    const double worst_z = *std::max_element(z.begin(), z.end());
    return {worst_enum <= 1e-10 && worst_z <= 4,
            fmt("%.0f cases; enumeration max error %.2e (tol 1e-10); Monte Carlo max |z| %.2f (tol 4)",
                static_cast<double>(cases.size()), worst_enum, worst_z)};
}

Outcome ac6() {
    RandomStream rng(6);
    int good = 0, blank = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + rng.next_u64() % 3;
        const std::size_t m = 1 + rng.next_u64() % 8;
        const OtpParams p = OtpParams::random(n, rng);
        std::string msg;
        do {
            msg.clear();
            for (std::size_t k = 0; k < m; ++k) msg.push_back(rng.uniform() < 0.5 ? '0' : '1');
        } while (msg.find('1') == std::string::npos);
        const LockerState l = store_message(msg, p);

        PasswordRegister correct(generate_otp(p));
        const auto r = attempt_unlock(l, correct, rng);
        good += r.accepted && r.retrieved_string() == msg;

        std::vector<double> overlaps(n, 1.0);
        overlaps[rng.next_u64() % n] = 0.0;
        PasswordRegister orth(password_with_overlap(p, overlaps));
        const auto w = attempt_unlock(l, orth, rng);
        blank += !w.accepted && w.retrieved_string() == std::string(m, '0');
    }
    return {good == 500 && blank == 500, fmt("correct %.0f/500, orthogonal blank %.0f/500", good, blank)};
}

Outcome ac7() {
    RandomStream rng(7);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double a2 = rng.uniform();
        const StateVector psi = StateVector::qubit(std::polar(std::sqrt(a2), 2 * std::numbers::pi * rng.uniform()),
                                                   std::polar(std::sqrt(1 - a2), 2 * std::numbers::pi * rng.uniform()));
        for (Bit m1 : {0, 1})
            for (Bit m2 : {0, 1})
                worst = std::max(worst, std::abs(1 - overlap_probability(psi, teleport_branch(psi, m1, m2).received)));
    }
    return {worst <= 1e-12, fmt("4000 branches, max |1 - F| %.2e (tol 1e-12)", worst)};
}

Outcome ac8() {
    const VerificationParams params{0.3, 1};
    double worst = 0;
    for (std::size_t b : {0, 1}) {
        const StateVector start = StateVector::basis_state(1, b);
        StateVector s = start;
        RandomStream rng(8);
        for (int k = 0; k < 100; ++k) s = iterate_once(s, params, rng).system;
        worst = std::max(worst, distance_up_to_phase(s, start));
    }
    return {worst == 0.0 || worst < 1e-15, fmt("max distance %.2e after 100 iterations", worst)};
}

}  // namespace

int main() {
    run("AC1", "coupling decomposition equivalence", 1, ac1);
    run("AC2", "single-iteration z statistics and theoretical ancilla matrix", 5, ac2);
    run("AC3", "density reconstruction from hardware table", 1, ac3);
    run("AC4", "38-iteration all-zero statistics", 30, ac4);
    run("AC5", "acceptance law", 60, ac5);
    run("AC6", "locker round trip", 60, ac6);
    run("AC7", "teleportation fidelity", 5, ac7);
    run("AC8", "fixed points", 1, ac8);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
