#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qlocker {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

enum class GateKind { X, H, S, Sdg, Rx, Ry, Rz, Unitary };

/// Which control value activates a controlled gate.
enum class Polarity { One, Zero };

struct Control {
    std::size_t qubit;
    Polarity polarity = Polarity::One;

    bool operator==(const Control&) const = default;
};

/// A single-target 2x2 gate with any number of (possibly negated) controls.
///
/// Rotation conventions:
///   Rx(l) = cos(l/2) I - i sin(l/2) X
///   Ry(l) = cos(l/2) I - i sin(l/2) Y
///   Rz(l) = diag(exp(-i l/2), exp(i l/2))
class GateOp {
public:
    static GateOp x(std::size_t target);
    static GateOp h(std::size_t target);
    static GateOp s(std::size_t target);
    static GateOp sdg(std::size_t target);
    static GateOp rx(std::size_t target, double angle);
    static GateOp ry(std::size_t target, double angle);
    static GateOp rz(std::size_t target, double angle);
    /// Throws DomainError unless `m` is unitary within 1e-10.
    static GateOp unitary(std::size_t target, const Mat2& m);
    static GateOp cnot(std::size_t control, std::size_t target);

    GateOp with_control(std::size_t qubit, Polarity polarity = Polarity::One) const;

    GateKind kind() const noexcept { return kind_; }
    double angle() const noexcept { return angle_; }
    std::size_t target() const noexcept { return target_; }
    const std::vector<Control>& controls() const noexcept { return controls_; }

    /// The 2x2 matrix acting on the target when all controls are satisfied.
    Mat2 matrix() const;

    /// Throws IndexError if any index is >= n_qubits or indices overlap.
    void validate(std::size_t n_qubits) const;

    std::string to_string() const;

private:
    GateOp(GateKind kind, std::size_t target, double angle = 0.0) : kind_(kind), target_(target), angle_(angle) {}

    GateKind kind_;
    std::size_t target_;
    double angle_ = 0.0;
    Mat2 custom_ = Mat2::Identity();
    std::vector<Control> controls_;
};

Mat2 rx_matrix(double angle);
Mat2 ry_matrix(double angle);
Mat2 rz_matrix(double angle);

// ---------------------------------------------------------------------------
// System/ancilla coupling
//
// Two-qubit layout used throughout: the system is qubit `system` and the
// ancilla is qubit `ancilla`. In full-matrix form (see coupling_matrix) the
// system is qubit 0 and the ancilla qubit 1, little-endian.
// ---------------------------------------------------------------------------

/// Rx(2 theta) on the ancilla, active when the system is |0>.
GateOp build_controlled0_rx(double theta, std::size_t system = 0, std::size_t ancilla = 1);

/// Same unitary using only single-qubit gates and CNOT: the A.CNOT.B.CNOT.C
/// controlled-rotation construction, wrapped in X on the control.
std::vector<GateOp> decompose_controlled0_rx(double theta, std::size_t system = 0, std::size_t ancilla = 1);

/// Controlled-on-one Rx(2 theta) as A.CNOT.B.CNOT.C (no X conjugation).
std::vector<GateOp> decompose_controlled_rx(double theta, std::size_t control, std::size_t target);

/// The coupling unitary written as [Rz(theta) (x) I][cos(theta) I4 - i sin(theta) C0NOT],
/// assembled from Kronecker products. Index = ancilla * 2 + system.
Eigen::Matrix4cd coupling_matrix(double theta);

}  // namespace qlocker
