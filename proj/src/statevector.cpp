#include "qlocker/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qlocker/errors.hpp"

namespace qlocker {

namespace {

constexpr double kUnderflow = 1e-15;

void rotate_into_z(StateVector& state, std::size_t qubit, Basis basis) {
    switch (basis) {
        case Basis::Z: break;
        case Basis::X: state.apply(GateOp::h(qubit)); break;
        case Basis::Y:
            state.apply(GateOp::sdg(qubit));
            state.apply(GateOp::h(qubit));
            break;
    }
}

void rotate_out_of_z(StateVector& state, std::size_t qubit, Basis basis) {
    switch (basis) {
        case Basis::Z: break;
        case Basis::X: state.apply(GateOp::h(qubit)); break;
        case Basis::Y:
            state.apply(GateOp::h(qubit));
            state.apply(GateOp::s(qubit));
            break;
    }
}

}  // namespace

const char* basis_name(Basis basis) {
    switch (basis) {
        case Basis::X: return "x";
        case Basis::Y: return "y";
        case Basis::Z: return "z";
    }
    return "?";
}

StateVector::StateVector(std::size_t n_qubits, std::size_t max_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > max_qubits) {
        throw CapacityError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                            std::to_string(max_qubits) + "]");
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::basis_state(std::size_t n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dimension()) {
        throw IndexError("basis index out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, double tolerance) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw ShapeError("amplitude vector length " + std::to_string(dim) + " is not a power of two >= 2");
    }
    const std::size_t n = static_cast<std::size_t>(std::countr_zero(dim));
    if (n > kDefaultMaxQubits) {
        throw CapacityError("too many qubits");
    }
    double norm = 0.0;
    for (const auto& a : amplitudes) norm += std::norm(a);
    if (std::abs(norm - 1.0) > tolerance) {
        throw DomainError("state is not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
    StateVector s;
    s.n_qubits_ = n;
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

StateVector StateVector::qubit(Complex alpha, Complex beta) {
    return from_amplitudes({alpha, beta});
}

double StateVector::norm_squared() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return sum;
}

void StateVector::apply(const GateOp& gate) {
    gate.validate(n_qubits_);

    std::uint64_t ctrl_mask = 0;
    std::uint64_t ctrl_value = 0;
    for (const auto& c : gate.controls()) {
        ctrl_mask |= std::uint64_t{1} << c.qubit;
        if (c.polarity == Polarity::One) ctrl_value |= std::uint64_t{1} << c.qubit;
    }

    const Mat2 m = gate.matrix();
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    const std::uint64_t bit = std::uint64_t{1} << gate.target();
    const std::uint64_t dim = amplitudes_.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) != 0 || (i & ctrl_mask) != ctrl_value) continue;
        const std::uint64_t j = i | bit;
        const Complex a0 = amplitudes_[i];
        const Complex a1 = amplitudes_[j];
        amplitudes_[i] = m00 * a0 + m01 * a1;
        amplitudes_[j] = m10 * a0 + m11 * a1;
    }
}

void StateVector::apply(std::span<const GateOp> gates) {
    for (const auto& g : gates) apply(g);
}

double StateVector::probability(std::size_t qubit, Bit bit) const {
    if (qubit >= n_qubits_) throw IndexError("qubit index out of range");
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t want = bit ? mask : 0;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & mask) == want) p += std::norm(amplitudes_[i]);
    }
    return p;
}

double StateVector::collapse(std::size_t qubit, Bit bit) {
    const double p = probability(qubit, bit);
    if (p < kUnderflow) {
        throw NumericalError("cannot collapse onto a branch with probability " + std::to_string(p));
    }
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t want = bit ? mask : 0;
    const double scale = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & mask) == want) {
            amplitudes_[i] *= scale;
        } else {
            amplitudes_[i] = 0.0;
        }
    }
    return p;
}

StateVector StateVector::drop_qubit(std::size_t qubit, double tolerance) const {
    if (n_qubits_ < 2) throw CapacityError("cannot drop the last qubit");
    const double p1 = probability(qubit, 1);
    Bit value;
    if (p1 < tolerance) {
        value = 0;
    } else if (1.0 - p1 < tolerance) {
        value = 1;
    } else {
        throw DomainError("qubit " + std::to_string(qubit) + " is not in a definite z state");
    }
    StateVector out(n_qubits_ - 1);
    const std::uint64_t low_mask = (std::uint64_t{1} << qubit) - 1;
    for (std::uint64_t k = 0; k < out.amplitudes_.size(); ++k) {
        const std::uint64_t i = (k & low_mask) | ((k & ~low_mask) << 1) | (std::uint64_t{value} << qubit);
        out.amplitudes_[k] = amplitudes_[i];
    }
    const double scale = 1.0 / std::sqrt(out.norm_squared());
    for (auto& a : out.amplitudes_) a *= scale;
    return out;
}

bool StateVector::is_basis_state(double tolerance) const {
    return std::abs(std::norm(amplitudes_[dominant_index()]) - 1.0) < tolerance;
}

std::uint64_t StateVector::dominant_index() const {
    const auto it = std::max_element(amplitudes_.begin(), amplitudes_.end(),
                                     [](const Complex& a, const Complex& b) { return std::norm(a) < std::norm(b); });
    return static_cast<std::uint64_t>(it - amplitudes_.begin());
}

void StateVector::canonicalize_phase() {
    for (const auto& a : amplitudes_) {
        if (std::abs(a) > 1e-12) {
            const Complex phase = std::conj(a) / std::abs(a);
            for (auto& b : amplitudes_) b *= phase;
            return;
        }
    }
}

StateVector new_state(std::size_t n_qubits) { return StateVector(n_qubits); }

StateVector apply_gate(StateVector state, const GateOp& gate) {
    state.apply(gate);
    return state;
}

StateVector tensor(const StateVector& low, const StateVector& high) {
    std::vector<Complex> amps(low.dimension() * high.dimension());
    for (std::size_t h = 0; h < high.dimension(); ++h) {
        for (std::size_t l = 0; l < low.dimension(); ++l) {
            amps[h * low.dimension() + l] = high[h] * low[l];
        }
    }
    return StateVector::from_amplitudes(std::move(amps), 1e-9);
}

StateVector tensor(std::span<const StateVector> parts) {
    if (parts.empty()) throw ShapeError("tensor product of zero states");
    StateVector acc = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) acc = tensor(acc, parts[k]);
    return acc;
}

double overlap_probability(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) throw ShapeError("overlap of states with different widths");
    Complex inner{0.0, 0.0};
    for (std::size_t i = 0; i < a.dimension(); ++i) inner += std::conj(a[i]) * b[i];
    return std::norm(inner);
}

double distance_up_to_phase(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) throw ShapeError("comparing states with different widths");
    Complex inner{0.0, 0.0};
    for (std::size_t i = 0; i < a.dimension(); ++i) inner += std::conj(b[i]) * a[i];
    const Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex{1.0, 0.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
    return worst;
}

Measurement measure_in_place(StateVector& state, std::size_t qubit, Basis basis, RandomStream& rng) {
    if (qubit >= state.n_qubits()) throw IndexError("qubit index out of range");
    rotate_into_z(state, qubit, basis);
    const double p0 = state.probability(qubit, 0);
    const double p1 = state.probability(qubit, 1);
    if (p0 < kUnderflow && p1 < kUnderflow) {
        throw NumericalError("both measurement outcomes underflow");
    }
    const Bit outcome = rng.uniform() < p0 / (p0 + p1) ? 0 : 1;
    const double p = state.collapse(qubit, outcome);
    rotate_out_of_z(state, qubit, basis);
    return {outcome, p};
}

double force_outcome(StateVector& state, std::size_t qubit, Basis basis, Bit bit) {
    if (qubit >= state.n_qubits()) throw IndexError("qubit index out of range");
    rotate_into_z(state, qubit, basis);
    const double p = state.collapse(qubit, bit);
    rotate_out_of_z(state, qubit, basis);
    return p;
}

MeasureResult measure_qubit(StateVector state, std::size_t qubit, Basis basis, RandomStream& rng) {
    const auto m = measure_in_place(state, qubit, basis, rng);
    return {m.outcome, m.probability, std::move(state)};
}

std::string format_matrix(const Eigen::MatrixXcd& m) {
    std::ostringstream os;
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%s%.17g %.17g", c == 0 ? "" : "  ", m(r, c).real(), m(r, c).imag());
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace qlocker
