#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qlocker/gates.hpp"
#include "qlocker/random.hpp"

namespace qlocker {

using Bit = std::uint8_t;

enum class Basis { X, Y, Z };

const char* basis_name(Basis basis);

/// Dense statevector over n qubits. Basis index bit k is qubit k
/// (little-endian). Every public mutator leaves the state normalized.
class StateVector {
public:
    static constexpr std::size_t kDefaultMaxQubits = 24;

    /// |0...0> on n qubits. Throws CapacityError for n == 0 or n > max_qubits.
    explicit StateVector(std::size_t n_qubits, std::size_t max_qubits = kDefaultMaxQubits);

    static StateVector basis_state(std::size_t n_qubits, std::uint64_t index);

    /// Length must be a power of two >= 2 and the norm 1 within `tolerance`;
    /// otherwise ShapeError / DomainError.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes, double tolerance = 1e-10);

    /// Single-qubit state alpha|0> + beta|1>.
    static StateVector qubit(Complex alpha, Complex beta);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[index]; }

    double norm_squared() const;

    void apply(const GateOp& gate);
    void apply(std::span<const GateOp> gates);

    /// Born probability that `qubit` reads `bit` in the z basis.
    double probability(std::size_t qubit, Bit bit) const;

    /// Projects `qubit` onto `bit` and renormalizes. Returns the pre-collapse
    /// probability of that branch. Throws NumericalError if it is below 1e-15.
    double collapse(std::size_t qubit, Bit bit);

    /// Removes `qubit`, which must be in a definite z state (the other value
    /// has probability < tolerance). Throws DomainError otherwise.
    StateVector drop_qubit(std::size_t qubit, double tolerance = 1e-12) const;

    /// True if the state is a single computational basis state within tolerance.
    bool is_basis_state(double tolerance = 1e-12) const;

    /// Index of the dominant basis state.
    std::uint64_t dominant_index() const;

    /// Multiplies by a global phase so the first non-negligible amplitude is
    /// real and positive.
    void canonicalize_phase();

private:
    StateVector() = default;

    std::size_t n_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

StateVector new_state(std::size_t n_qubits);
StateVector apply_gate(StateVector state, const GateOp& gate);

/// Tensor product; `low` occupies qubits [0, low.n_qubits()).
StateVector tensor(const StateVector& low, const StateVector& high);
/// Tensor product of single or multi-qubit parts, parts[0] lowest.
StateVector tensor(std::span<const StateVector> parts);

/// |<a|b>|^2.
double overlap_probability(const StateVector& a, const StateVector& b);

/// Maximum entrywise difference after aligning b's global phase to a.
double distance_up_to_phase(const StateVector& a, const StateVector& b);

struct Measurement {
    Bit outcome;
    double probability;
};

/// Measures `qubit` in the given basis, collapsing `state` in place. For x
/// the qubit is rotated by H before a z measurement (and back after); for y by
/// S-dagger then H.
Measurement measure_in_place(StateVector& state, std::size_t qubit, Basis basis, RandomStream& rng);

/// Post-selects outcome `bit` in the given basis. Returns its probability.
double force_outcome(StateVector& state, std::size_t qubit, Basis basis, Bit bit);

struct MeasureResult {
    Bit outcome;
    double probability;
    StateVector collapsed;
};

MeasureResult measure_qubit(StateVector state, std::size_t qubit, Basis basis, RandomStream& rng);

/// Row-major "re im" pairs, one matrix row per line.
std::string format_matrix(const Eigen::MatrixXcd& m);

}  // namespace qlocker
