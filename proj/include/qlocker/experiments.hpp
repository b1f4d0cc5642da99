#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qlocker/circuit.hpp"
#include "qlocker/verify.hpp"

namespace qlocker {

inline constexpr int kSchemaVersion = 1;

/// Parameters shared by the experiment runners. Unset optionals fall back to
/// the per-experiment defaults.
struct ExperimentConfig {
    std::optional<double> theta;
    std::optional<std::size_t> iterations;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 42;
    /// System prepared as cos(a)|0> + sin(a)|1>.
    double alpha_angle = std::numbers::pi / 8;
    std::string message = "1011";
    std::size_t otp_qubits = 1;
    ClickPolicy policy = ClickPolicy::Default;
    /// Per-qubit overlap of the wrong password; random when unset.
    std::optional<double> overlap;
    std::uint64_t repetitions = 10000;
    unsigned workers = 1;

    // Sweep grids.
    std::vector<double> theta_grid{0.05, 0.1, 0.2};
    std::vector<std::size_t> iteration_grid{38};
    std::vector<double> overlap_grid{0.5};
};

/// Report plus raw data for CSV emission.
struct ExperimentReport {
    nlohmann::json json;
    std::string csv;

    bool all_checks_passed() const;
};

/// Single coupling iteration with x/y/z ancilla tomography.
ExperimentReport run_verify_demo(const ExperimentConfig& config);

/// N-iteration run on |+> with ancilla reuse.
ExperimentReport run_converge(const ExperimentConfig& config);

/// Store, generate, teleport, unlock with correct and wrong passwords.
/// Throws InvalidMessageError for a bad message.
ExperimentReport run_locker_demo(const ExperimentConfig& config);

/// False-accept tables over (n, theta, N, overlap) for both policies.
ExperimentReport run_sweep(const ExperimentConfig& config);

/// The single-iteration circuit with the ancilla measured in `basis`.
Circuit single_iteration_circuit(double alpha_angle, double theta, Basis basis);

/// H on the system, then `iterations` x (coupling, ancilla readout, reset),
/// then the system readout. Outcome strings: N ancilla bits then the system bit.
Circuit convergence_circuit(double theta, std::size_t iterations);

/// 3 sigma (or k sigma) band check entry.
nlohmann::json band_check(const std::string& name, double observed, double expected, double sigma, double k);

}  // namespace qlocker
