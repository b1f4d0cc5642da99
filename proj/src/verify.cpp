#include "qlocker/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qlocker/errors.hpp"

namespace qlocker {

const char* policy_name(ClickPolicy policy) {
    return policy == ClickPolicy::Default ? "paper" : "strict";
}

void VerificationParams::validate() const {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
        throw DomainError("coupling angle must lie in (0, pi/2)");
    }
    if (iterations < 1) {
        throw DomainError("iterations must be >= 1");
    }
}

std::string Trajectory::outcomes_bitstring() const {
    std::string s;
    s.reserve(ancilla_outcomes.size());
    for (Bit b : ancilla_outcomes) s.push_back(b ? '1' : '0');
    return s;
}

bool Trajectory::all_zero() const {
    for (Bit b : ancilla_outcomes) {
        if (b) return false;
    }
    return true;
}

CouplingStep couple_and_measure(StateVector& reg, std::size_t system, std::size_t ancilla, double theta,
                                RandomStream& rng) {
    reg.apply(build_controlled0_rx(theta, system, ancilla));
    const double p1 = reg.probability(ancilla, 1);
    const Bit outcome = measure_in_place(reg, ancilla, Basis::Z, rng).outcome;
    if (outcome == 1) reg.apply(GateOp::x(ancilla));
    return {outcome, p1};
}

Trajectory run_verification_on(StateVector& reg, std::size_t system, std::size_t ancilla,
                               const VerificationParams& params, RandomStream& rng) {
    params.validate();
    Trajectory t;
    t.ancilla_outcomes.reserve(params.iterations);
    t.step_p1.reserve(params.iterations);
    for (std::size_t k = 0; k < params.iterations; ++k) {
        const auto step = couple_and_measure(reg, system, ancilla, params.theta, rng);
        t.ancilla_outcomes.push_back(step.outcome);
        t.step_p1.push_back(step.p1);
        if (step.outcome == 1 && params.policy == ClickPolicy::StrictAbort) {
            t.accepted = false;
            return t;
        }
    }
    const Bit final_bit = measure_in_place(reg, system, Basis::Z, rng).outcome;
    t.final_system_outcome = final_bit;
    t.accepted = final_bit == 0;
    return t;
}

IterationResult iterate_once(const StateVector& system, const VerificationParams& params, RandomStream& rng) {
    params.validate();
    if (system.n_qubits() != 1) throw ShapeError("verification box expects a single-qubit system");
    StateVector reg = tensor(system, StateVector(1));
    const auto step = couple_and_measure(reg, 0, 1, params.theta, rng);
    StateVector out = reg.drop_qubit(1);
    if (step.outcome == 1) out.canonicalize_phase();
    return {step.outcome, std::move(out), step.p1};
}

Trajectory run_verification(const StateVector& system, const VerificationParams& params, RandomStream& rng) {
    if (system.n_qubits() != 1) throw ShapeError("verification box expects a single-qubit system");
    StateVector reg = tensor(system, StateVector(1));
    return run_verification_on(reg, 0, 1, params, rng);
}

double all_zero_probability(double alpha_sq, double theta, std::size_t iterations) {
    return (1.0 - alpha_sq) + alpha_sq * std::pow(std::cos(theta), 2.0 * static_cast<double>(iterations));
}

double survival_one_probability(double alpha_sq, double theta, std::size_t iterations) {
    return (1.0 - alpha_sq) / all_zero_probability(alpha_sq, theta, iterations);
}

double acceptance_probability(double alpha_sq, const VerificationParams& params) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
        throw DomainError("alpha_sq must lie in [0, 1]");
    }
    params.validate();
    if (params.policy == ClickPolicy::Default) return alpha_sq;
    return alpha_sq * std::pow(std::cos(params.theta), 2.0 * static_cast<double>(params.iterations));
}

namespace {

void enumerate_from(StateVector reg, double weight, Trajectory prefix, const VerificationParams& params,
                    std::vector<WeightedTrajectory>& out) {
    if (prefix.ancilla_outcomes.size() == params.iterations) {
        for (Bit b : {Bit{0}, Bit{1}}) {
            const double p = reg.probability(0, b);
            if (p <= 0.0) continue;
            Trajectory t = prefix;
            t.final_system_outcome = b;
            t.accepted = b == 0;
            out.push_back({std::move(t), weight * p});
        }
        return;
    }

    StateVector coupled = reg;
    coupled.apply(build_controlled0_rx(params.theta, 0, 1));
    const double p1 = coupled.probability(1, 1);
    for (Bit b : {Bit{0}, Bit{1}}) {
        const double p = coupled.probability(1, b);
        if (p <= 0.0) continue;
        StateVector branch = coupled;
        branch.collapse(1, b);
        if (b == 1) branch.apply(GateOp::x(1));
        Trajectory t = prefix;
        t.ancilla_outcomes.push_back(b);
        t.step_p1.push_back(p1);
        if (b == 1 && params.policy == ClickPolicy::StrictAbort) {
            t.accepted = false;
            out.push_back({std::move(t), weight * p});
            continue;
        }
        enumerate_from(std::move(branch), weight * p, std::move(t), params, out);
    }
}

}  // namespace

std::vector<WeightedTrajectory> enumerate_trajectories(const StateVector& system, const VerificationParams& params) {
    params.validate();
    if (params.iterations > kMaxEnumeratedIterations) {
        throw CapacityError("trajectory enumeration is limited to 16 iterations");
    }
    if (system.n_qubits() != 1) throw ShapeError("verification box expects a single-qubit system");
    std::vector<WeightedTrajectory> out;
    enumerate_from(tensor(system, StateVector(1)), 1.0, Trajectory{}, params, out);
    return out;
}

std::pair<Complex, Complex> perturbation_step(Complex alpha, Complex beta, double theta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw DomainError("perturbation_step expects a normalized (alpha, beta)");
    }
    const double c = std::cos(theta);
    const double p0 = std::norm(alpha) * c * c + std::norm(beta);
    const double scale = 1.0 / std::sqrt(p0);
    return {alpha * c * scale, beta * scale};
}

std::pair<Complex, Complex> perturbation_step_first_order(Complex alpha, Complex beta, double theta) {
    const double t2 = theta * theta;
    return {alpha * (1.0 - std::norm(beta) * t2 / 2), beta * (1.0 + std::norm(alpha) * t2 / 2)};
}

std::string trajectory_record(std::uint64_t seed, const VerificationParams& params, const Trajectory& t) {
    char theta_buf[32];
    std::snprintf(theta_buf, sizeof theta_buf, "%.17g", params.theta);
    std::string line = std::to_string(seed) + ',' + std::to_string(params.iterations) + ',' + theta_buf + ',' +
                       t.outcomes_bitstring() + ',';
    line += t.final_system_outcome ? (*t.final_system_outcome ? "1" : "0") : "-";
    line += t.accepted ? ",1" : ",0";
    return line;
}

}  // namespace qlocker
