#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlocker/random.hpp"
#include "qlocker/statevector.hpp"

namespace qlocker {

enum class ClickPolicy {
    /// Keep iterating after an ancilla click; accept iff the final system
    /// readout is 0.
    Default,
    /// Extension: any ancilla click rejects immediately.
    StrictAbort,
};

const char* policy_name(ClickPolicy policy);

struct VerificationParams {
    double theta = 0.1;
    std::size_t iterations = 38;
    ClickPolicy policy = ClickPolicy::Default;

    /// Throws DomainError unless 0 < theta < pi/2 and iterations >= 1.
    void validate() const;
};

struct Trajectory {
    std::vector<Bit> ancilla_outcomes;
    /// Probability of an ancilla click before each measurement.
    std::vector<double> step_p1;
    /// Empty when a strict-abort run stopped before the final readout.
    std::optional<Bit> final_system_outcome;
    bool accepted = false;

    std::string outcomes_bitstring() const;
    bool all_zero() const;
};

/// One coupling + ancilla readout + ancilla reset on an arbitrary register.
struct CouplingStep {
    Bit outcome;
    double p1;
};

CouplingStep couple_and_measure(StateVector& reg, std::size_t system, std::size_t ancilla, double theta,
                                RandomStream& rng);

/// Full Verification Box on `system` inside `reg` using `ancilla` (which must
/// start in |0>), followed by the final z readout of the system unless a
/// strict-abort run stopped early.
Trajectory run_verification_on(StateVector& reg, std::size_t system, std::size_t ancilla,
                               const VerificationParams& params, RandomStream& rng);

struct IterationResult {
    Bit outcome;
    StateVector system;
    double p1;
};

/// Single iteration on a one-qubit system with a fresh ancilla. After a click
/// the returned system is exactly |0>.
IterationResult iterate_once(const StateVector& system, const VerificationParams& params, RandomStream& rng);

Trajectory run_verification(const StateVector& system, const VerificationParams& params, RandomStream& rng);

/// Exact P(accept) for an initial state with |<0|phi>|^2 = alpha_sq.
/// Default policy: alpha_sq. Strict-abort: alpha_sq * cos^{2N}(theta).
double acceptance_probability(double alpha_sq, const VerificationParams& params);

/// P(every ancilla readout is 0) = |beta|^2 + |alpha|^2 cos^{2N}(theta).
double all_zero_probability(double alpha_sq, double theta, std::size_t iterations);

/// |beta_N|^2 after N click-free iterations.
double survival_one_probability(double alpha_sq, double theta, std::size_t iterations);

struct WeightedTrajectory {
    Trajectory trajectory;
    double probability;
};

inline constexpr std::size_t kMaxEnumeratedIterations = 16;

/// Every ancilla path and final outcome with its exact probability
/// (zero-probability branches omitted). Throws CapacityError for N > 16.
std::vector<WeightedTrajectory> enumerate_trajectories(const StateVector& system, const VerificationParams& params);

/// Exact renormalized collapse on a click-free step.
std::pair<Complex, Complex> perturbation_step(Complex alpha, Complex beta, double theta);

/// Second-order truncation alpha(1 - |beta|^2 theta^2/2), beta(1 + |alpha|^2 theta^2/2).
std::pair<Complex, Complex> perturbation_step_first_order(Complex alpha, Complex beta, double theta);

/// `seed,N,theta,outcomes_bitstring,final_bit,accepted`
std::string trajectory_record(std::uint64_t seed, const VerificationParams& params, const Trajectory& t);

}  // namespace qlocker
