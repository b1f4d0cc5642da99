#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "qlocker/gates.hpp"
#include "qlocker/random.hpp"
#include "qlocker/statevector.hpp"
#include "qlocker/verify.hpp"

namespace qlocker {

/// Secret rotation angles of one OTP qubit, each in [-pi, pi].
struct OtpAngles {
    double theta1 = 0.0;  // Rx
    double theta2 = 0.0;  // Ry
    double theta3 = 0.0;  // Rz
};

class OtpParams {
public:
    /// Throws DomainError for an empty list or any angle outside [-pi, pi].
    explicit OtpParams(std::vector<OtpAngles> angles);

    static OtpParams random(std::size_t width, RandomStream& rng);

    std::size_t width() const noexcept { return angles_.size(); }
    const std::vector<OtpAngles>& angles() const noexcept { return angles_; }

    /// FNV-1a over the angle bit patterns, for logs that must not carry the
    /// angles themselves.
    std::uint64_t fingerprint() const;

private:
    std::vector<OtpAngles> angles_;
};

/// R = Rz(t3) Ry(t2) Rx(t1), as gates in time order on `qubit`.
std::vector<GateOp> otp_rotation_gates(const OtpAngles& a, std::size_t qubit);
/// R^-1 = Rx(-t1) Ry(-t2) Rz(-t3), as gates in time order on `qubit`.
std::vector<GateOp> inverse_rotation_gates(const OtpAngles& a, std::size_t qubit);

/// Product state with qubit k = R(params[k])|0>.
StateVector generate_otp(const OtpParams& params);

/// Applies R^-1 per qubit. Throws ShapeError on a width mismatch.
StateVector apply_inverse_rotation(StateVector state, const OtpParams& params);

struct LockerState {
    std::vector<Bit> message_bits;
    /// m qubits in |0>/|1>; never measured by an unlock attempt.
    StateVector message_register{1};
    OtpParams params{{OtpAngles{}}};
    VerificationParams verification;

    std::size_t message_length() const noexcept { return message_bits.size(); }
    std::size_t otp_width() const noexcept { return params.width(); }
    std::string message_string() const;
};

/// Parses a '0'/'1' string and prepares the message register with X gates.
/// Throws InvalidMessageError for empty, malformed or all-zero strings.
LockerState store_message(std::string_view bits, OtpParams params, VerificationParams verification = {});

/// The qubits a party presents as a password. Becomes consumed after one
/// unlock attempt; its state is then the post-measurement register.
class PasswordRegister {
public:
    explicit PasswordRegister(StateVector state) : state_(std::move(state)) {}

    const StateVector& state() const noexcept { return state_; }
    bool consumed() const noexcept { return consumed_; }

private:
    friend struct UnlockAccess;

    StateVector state_;
    bool consumed_ = false;
};

struct UnlockResult {
    bool accepted = false;
    std::vector<Bit> retrieved_bits;
    /// One per OTP qubit, in qubit order.
    std::vector<Trajectory> trajectories;
    /// Final z readout of each password qubit.
    std::vector<Bit> password_outcomes;

    std::string retrieved_string() const;
};

/// Runs R^-1, one Verification Box per password qubit, the z readouts, and
/// the m multi-controlled transfer gates onto |0> blanks.
///
/// Throws ShapeError on width mismatches, OneTimeError if `password` was
/// already consumed, InputError if a blank is not |0>.
UnlockResult attempt_unlock(const LockerState& locker, PasswordRegister& password, RandomStream& rng);
UnlockResult attempt_unlock(const LockerState& locker, PasswordRegister& password, const StateVector& blanks,
                            RandomStream& rng);

/// True iff every password qubit sits in a z eigenstate.
bool otp_consumed_check(const PasswordRegister& password);
/// As above, and the register agrees with the readouts recorded in `result`.
bool otp_consumed_check(const UnlockResult& result, const PasswordRegister& password);

/// Exact P(accept) for an arbitrary (possibly entangled) password register.
double unlock_acceptance_probability(const LockerState& locker, const StateVector& password);

/// Wrong password whose qubit k, after R^-1, has |<0|phi_k>|^2 = overlaps[k].
StateVector password_with_overlap(const OtpParams& params, std::span<const double> overlaps);

/// Line-oriented session log. Carries the parameter fingerprint, never the angles.
std::string session_log(const LockerState& locker, const UnlockResult& result);

/// Serializes unlock attempts on a single locker.
class Locker {
public:
    explicit Locker(LockerState state) : state_(std::move(state)) {}

    const LockerState& state() const noexcept { return state_; }

    UnlockResult attempt_unlock(PasswordRegister& password, RandomStream& rng);

private:
    std::mutex mutex_;
    LockerState state_;
};

}  // namespace qlocker
