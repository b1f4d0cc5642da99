#include "qlocker/locker.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qlocker/errors.hpp"

namespace qlocker {

struct UnlockAccess {
    static void consume(PasswordRegister& reg, StateVector collapsed) {
        reg.state_ = std::move(collapsed);
        reg.consumed_ = true;
    }
};

namespace {

bool angle_in_range(double a) { return a >= -std::numbers::pi && a <= std::numbers::pi; }

std::string bits_to_string(const std::vector<Bit>& bits) {
    std::string s;
    for (Bit b : bits) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace

OtpParams::OtpParams(std::vector<OtpAngles> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw DomainError("an OTP needs at least one qubit");
    for (const auto& a : angles_) {
        if (!angle_in_range(a.theta1) || !angle_in_range(a.theta2) || !angle_in_range(a.theta3)) {
            throw DomainError("OTP angles must lie in [-pi, pi]");
        }
    }
}

OtpParams OtpParams::random(std::size_t width, RandomStream& rng) {
    auto draw = [&] { return -std::numbers::pi + 2 * std::numbers::pi * rng.uniform(); };
    std::vector<OtpAngles> angles(width);
    for (auto& a : angles) {
        a.theta1 = draw();
        a.theta2 = draw();
        a.theta3 = draw();
    }
    return OtpParams(std::move(angles));
}

std::uint64_t OtpParams::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](double v) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& a : angles_) {
        mix(a.theta1);
        mix(a.theta2);
        mix(a.theta3);
    }
    return h;
}

std::vector<GateOp> otp_rotation_gates(const OtpAngles& a, std::size_t qubit) {
    return {GateOp::rx(qubit, a.theta1), GateOp::ry(qubit, a.theta2), GateOp::rz(qubit, a.theta3)};
}

std::vector<GateOp> inverse_rotation_gates(const OtpAngles& a, std::size_t qubit) {
    return {GateOp::rz(qubit, -a.theta3), GateOp::ry(qubit, -a.theta2), GateOp::rx(qubit, -a.theta1)};
}

StateVector generate_otp(const OtpParams& params) {
    StateVector s(params.width());
    for (std::size_t k = 0; k < params.width(); ++k) {
        s.apply(otp_rotation_gates(params.angles()[k], k));
    }
    return s;
}

StateVector apply_inverse_rotation(StateVector state, const OtpParams& params) {
    if (state.n_qubits() != params.width()) {
        throw ShapeError("state has " + std::to_string(state.n_qubits()) + " qubits, OTP width is " +
                         std::to_string(params.width()));
    }
    for (std::size_t k = 0; k < params.width(); ++k) {
        state.apply(inverse_rotation_gates(params.angles()[k], k));
    }
    return state;
}

std::string LockerState::message_string() const { return bits_to_string(message_bits); }

LockerState store_message(std::string_view bits, OtpParams params, VerificationParams verification) {
    if (bits.empty()) throw InvalidMessageError("message must contain at least one bit");
    if (bits.size() > StateVector::kDefaultMaxQubits) throw CapacityError("message too long");
    std::vector<Bit> parsed;
    bool any_one = false;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InvalidMessageError("message must be a string of 0/1");
        parsed.push_back(c == '1');
        any_one |= c == '1';
    }
    if (!any_one) throw InvalidMessageError("an all-zero message carries no information");
    verification.validate();

    StateVector reg(parsed.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (parsed[i]) reg.apply(GateOp::x(i));
    }
    return LockerState{std::move(parsed), std::move(reg), std::move(params), verification};
}

std::string UnlockResult::retrieved_string() const { return bits_to_string(retrieved_bits); }

UnlockResult attempt_unlock(const LockerState& locker, PasswordRegister& password, RandomStream& rng) {
    return attempt_unlock(locker, password, StateVector(locker.message_length()), rng);
}

UnlockResult attempt_unlock(const LockerState& locker, PasswordRegister& password, const StateVector& blanks,
                            RandomStream& rng) {
    const std::size_t n = locker.otp_width();
    const std::size_t m = locker.message_length();
    if (password.state().n_qubits() != n) {
        throw ShapeError("password has " + std::to_string(password.state().n_qubits()) + " qubits, expected " +
                         std::to_string(n));
    }
    if (blanks.n_qubits() != m) throw ShapeError("expected " + std::to_string(m) + " blank qubits");
    if (std::abs(std::norm(blanks[0]) - 1.0) > 1e-12) throw InputError("blank qubits must be supplied in |0>");
    if (password.consumed()) throw OneTimeError("password register has already been used");

    // Password qubits 0..n-1, shared ancilla n.
    const std::size_t ancilla = n;
    StateVector reg = tensor(password.state(), StateVector(1));
    for (std::size_t k = 0; k < n; ++k) {
        reg.apply(inverse_rotation_gates(locker.params.angles()[k], k));
    }

    UnlockResult result;
    bool aborted = false;
    for (std::size_t k = 0; k < n; ++k) {
        Trajectory t = run_verification_on(reg, k, ancilla, locker.verification, rng);
        if (t.final_system_outcome) {
            result.password_outcomes.push_back(*t.final_system_outcome);
        } else {
            aborted = true;
            result.password_outcomes.push_back(measure_in_place(reg, k, Basis::Z, rng).outcome);
        }
        result.trajectories.push_back(std::move(t));
    }
    UnlockAccess::consume(password, reg.drop_qubit(ancilla));

    bool all_zero = true;
    for (Bit b : result.password_outcomes) all_zero &= b == 0;

    // Transfer: for each message index i, a C^{n+1}NOT with the n measured
    // password qubits as control-on-zero and a_i as control-on-one, target b_i.
    // After the readouts every qubit involved is a basis state, so each index
    // is simulated on its own (n + 2)-qubit register.
    const std::uint64_t message_index = locker.message_register.dominant_index();
    result.retrieved_bits.assign(m, 0);
    if (!aborted) {
        for (std::size_t i = 0; i < m; ++i) {
            StateVector transfer(n + 2);
            for (std::size_t k = 0; k < n; ++k) {
                if (result.password_outcomes[k]) transfer.apply(GateOp::x(k));
            }
            if ((message_index >> i) & 1) transfer.apply(GateOp::x(n));
            GateOp cnx = GateOp::x(n + 1);
            for (std::size_t k = 0; k < n; ++k) cnx = cnx.with_control(k, Polarity::Zero);
            transfer.apply(cnx.with_control(n, Polarity::One));
            result.retrieved_bits[i] = transfer.probability(n + 1, 1) > 0.5;
        }
    }
    result.accepted = !aborted && all_zero;
    return result;
}

bool otp_consumed_check(const PasswordRegister& password) { return password.state().is_basis_state(); }

bool otp_consumed_check(const UnlockResult& result, const PasswordRegister& password) {
    if (!otp_consumed_check(password)) return false;
    const std::uint64_t index = password.state().dominant_index();
    if (result.password_outcomes.size() != password.state().n_qubits()) return false;
    for (std::size_t k = 0; k < result.password_outcomes.size(); ++k) {
        if (((index >> k) & 1) != result.password_outcomes[k]) return false;
    }
    return true;
}

double unlock_acceptance_probability(const LockerState& locker, const StateVector& password) {
    const StateVector phi = apply_inverse_rotation(password, locker.params);
    double p = std::norm(phi[0]);
    if (locker.verification.policy == ClickPolicy::StrictAbort) {
        const double survive = std::pow(std::cos(locker.verification.theta),
                                        2.0 * static_cast<double>(locker.verification.iterations));
        p *= std::pow(survive, static_cast<double>(locker.otp_width()));
    }
    return p;
}

StateVector password_with_overlap(const OtpParams& params, std::span<const double> overlaps) {
    if (overlaps.size() != params.width()) throw ShapeError("one overlap per OTP qubit is required");
    StateVector s(params.width());
    for (std::size_t k = 0; k < params.width(); ++k) {
        if (!(overlaps[k] >= 0.0 && overlaps[k] <= 1.0)) throw DomainError("overlap must lie in [0, 1]");
        s.apply(GateOp::ry(k, 2 * std::acos(std::sqrt(overlaps[k]))));
        s.apply(otp_rotation_gates(params.angles()[k], k));
    }
    return s;
}

std::string session_log(const LockerState& locker, const UnlockResult& result) {
    char fp[32];
    std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(locker.params.fingerprint()));
    char theta[32];
    std::snprintf(theta, sizeof theta, "%.17g", locker.verification.theta);

    std::string log;
    log += "message_length=" + std::to_string(locker.message_length()) + '\n';
    log += "otp_width=" + std::to_string(locker.otp_width()) + '\n';
    log += std::string("params_fnv1a=") + fp + '\n';
    log += std::string("verification=theta:") + theta + ",iterations:" +
           std::to_string(locker.verification.iterations) + ",policy:" + policy_name(locker.verification.policy) +
           '\n';
    for (std::size_t k = 0; k < result.trajectories.size(); ++k) {
        const auto& t = result.trajectories[k];
        log += "trajectory[" + std::to_string(k) + "]=" + t.outcomes_bitstring() + ";final=";
        log += t.final_system_outcome ? (*t.final_system_outcome ? "1" : "0") : "-";
        log += '\n';
    }
    log += std::string("accepted=") + (result.accepted ? "1" : "0") + '\n';
    log += "retrieved=" + result.retrieved_string() + '\n';
    return log;
}

UnlockResult Locker::attempt_unlock(PasswordRegister& password, RandomStream& rng) {
    std::lock_guard lock(mutex_);
    return qlocker::attempt_unlock(state_, password, rng);
}

}  // namespace qlocker
