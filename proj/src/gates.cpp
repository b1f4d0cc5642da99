#include "qlocker/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlocker/errors.hpp"

namespace qlocker {

namespace {

constexpr Complex kI{0.0, 1.0};

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::Rx: return "Rx";
        case GateKind::Ry: return "Ry";
        case GateKind::Rz: return "Rz";
        case GateKind::Unitary: return "U";
    }
    return "?";
}

}  // namespace

Mat2 rx_matrix(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    Mat2 m;
    m << c, -kI * s,
         -kI * s, c;
    return m;
}

Mat2 ry_matrix(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    Mat2 m;
    m << c, -s,
         s, c;
    return m;
}

Mat2 rz_matrix(double angle) {
    Mat2 m;
    m << std::polar(1.0, -angle / 2), 0.0,
         0.0, std::polar(1.0, angle / 2);
    return m;
}

GateOp GateOp::x(std::size_t target) { return GateOp(GateKind::X, target); }
GateOp GateOp::h(std::size_t target) { return GateOp(GateKind::H, target); }
GateOp GateOp::s(std::size_t target) { return GateOp(GateKind::S, target); }
GateOp GateOp::sdg(std::size_t target) { return GateOp(GateKind::Sdg, target); }
GateOp GateOp::rx(std::size_t target, double angle) { return GateOp(GateKind::Rx, target, angle); }
GateOp GateOp::ry(std::size_t target, double angle) { return GateOp(GateKind::Ry, target, angle); }
GateOp GateOp::rz(std::size_t target, double angle) { return GateOp(GateKind::Rz, target, angle); }

GateOp GateOp::unitary(std::size_t target, const Mat2& m) {
    const double err = (m.adjoint() * m - Mat2::Identity()).cwiseAbs().maxCoeff();
    if (!(err < 1e-10)) {
        throw DomainError("matrix is not unitary (|M^dag M - I|_max = " + std::to_string(err) + ")");
    }
    GateOp g(GateKind::Unitary, target);
    g.custom_ = m;
    return g;
}

GateOp GateOp::cnot(std::size_t control, std::size_t target) {
    return x(target).with_control(control, Polarity::One);
}

GateOp GateOp::with_control(std::size_t qubit, Polarity polarity) const {
    GateOp g = *this;
    g.controls_.push_back({qubit, polarity});
    return g;
}

Mat2 GateOp::matrix() const {
    const double r = std::numbers::sqrt2 / 2;
    Mat2 m;
    switch (kind_) {
        case GateKind::X:
            m << 0.0, 1.0, 1.0, 0.0;
            return m;
        case GateKind::H:
            m << r, r, r, -r;
            return m;
        case GateKind::S:
            m << 1.0, 0.0, 0.0, kI;
            return m;
        case GateKind::Sdg:
            m << 1.0, 0.0, 0.0, -kI;
            return m;
        case GateKind::Rx: return rx_matrix(angle_);
        case GateKind::Ry: return ry_matrix(angle_);
        case GateKind::Rz: return rz_matrix(angle_);
        case GateKind::Unitary: return custom_;
    }
    return Mat2::Identity();
}

void GateOp::validate(std::size_t n_qubits) const {
    if (target_ >= n_qubits) {
        throw IndexError("gate target " + std::to_string(target_) + " out of range for " +
                         std::to_string(n_qubits) + " qubits");
    }
    std::vector<std::size_t> seen{target_};
    for (const auto& c : controls_) {
        if (c.qubit >= n_qubits) {
            throw IndexError("control qubit " + std::to_string(c.qubit) + " out of range");
        }
        if (std::find(seen.begin(), seen.end(), c.qubit) != seen.end()) {
            throw IndexError("overlapping control/target index " + std::to_string(c.qubit));
        }
        seen.push_back(c.qubit);
    }
}

std::string GateOp::to_string() const {
    std::ostringstream os;
    os << kind_name(kind_);
    if (kind_ == GateKind::Rx || kind_ == GateKind::Ry || kind_ == GateKind::Rz) {
        os << '(' << angle_ << ')';
    }
    os << " q" << target_;
    for (const auto& c : controls_) {
        os << (c.polarity == Polarity::One ? " c" : " c0") << c.qubit;
    }
    return os.str();
}

GateOp build_controlled0_rx(double theta, std::size_t system, std::size_t ancilla) {
    return GateOp::rx(ancilla, 2 * theta).with_control(system, Polarity::Zero);
}

std::vector<GateOp> decompose_controlled_rx(double theta, std::size_t control, std::size_t target) {
    // Rx(l) = Rz(-pi/2) Ry(l) Rz(pi/2), so with
    //   A = Rz(-pi/2) Ry(l/2), B = Ry(-l/2), C = Rz(pi/2)
    // ABC = I and A X B X C = Rx(l). Here l = 2 theta.
    constexpr double half_pi = std::numbers::pi / 2;
    return {
        GateOp::rz(target, half_pi),         // C
        GateOp::cnot(control, target),
        GateOp::ry(target, -theta),          // B
        GateOp::cnot(control, target),
        GateOp::ry(target, theta),           // A = Rz(-pi/2) Ry(theta)
        GateOp::rz(target, -half_pi),
    };
}

std::vector<GateOp> decompose_controlled0_rx(double theta, std::size_t system, std::size_t ancilla) {
    std::vector<GateOp> seq{GateOp::x(system)};
    for (auto& g : decompose_controlled_rx(theta, system, ancilla)) {
        seq.push_back(std::move(g));
    }
    seq.push_back(GateOp::x(system));
    return seq;
}

Eigen::Matrix4cd coupling_matrix(double theta) {
    // Kronecker order follows the little-endian index: kron(ancilla, system).
    const Mat2 id = Mat2::Identity();
    Eigen::Matrix4cd rz_on_system = Eigen::Matrix4cd::Zero();
    const Mat2 rz = rz_matrix(theta);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            rz_on_system.block<2, 2>(2 * a, 2 * b) = id(a, b) * rz;
        }
    }

    // C0NOT with control = system (bit 0), target = ancilla (bit 1).
    Eigen::Matrix4cd c0not = Eigen::Matrix4cd::Zero();
    for (int col = 0; col < 4; ++col) {
        const int row = (col & 1) == 0 ? col ^ 2 : col;
        c0not(row, col) = 1.0;
    }

    const Eigen::Matrix4cd mixer =
        std::cos(theta) * Eigen::Matrix4cd::Identity() - kI * std::sin(theta) * c0not;
    return rz_on_system * mixer;
}

}  // namespace qlocker
