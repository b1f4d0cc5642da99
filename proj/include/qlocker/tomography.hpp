#pragma once

#include <array>
#include <map>
#include <string>

#include <Eigen/Dense>
#include "json.hpp"

#include "qlocker/circuit.hpp"
#include "qlocker/statevector.hpp"

namespace qlocker {

/// 2x2 complex matrix describing a single qubit. May be unphysical (it is the
/// output of a linear reconstruction); see is_physical().
class DensityMatrix {
public:
    DensityMatrix() : m_(Eigen::Matrix2cd::Identity() / 2.0) {}
    explicit DensityMatrix(const Eigen::Matrix2cd& m) : m_(m) {}

    static DensityMatrix pure(const StateVector& qubit);

    const Eigen::Matrix2cd& matrix() const noexcept { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    std::array<double, 2> eigenvalues() const;
    bool is_hermitian(double tolerance = 1e-10) const;
    /// Hermitian and unit trace within 1e-10, eigenvalues >= -1e-6.
    bool is_physical() const;

    /// Real and imaginary parts as separate 2x2 tables.
    nlohmann::json to_json() const;
    std::string to_text() const;

private:
    Eigen::Matrix2cd m_;
};

struct StokesVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    bool is_physical() const { return norm() <= 1.0 + 1e-12; }
};

struct OutcomeProbabilities {
    double p0 = 0.0;
    double p1 = 0.0;
};

/// One single-bit histogram per basis. Throws InputError if a basis is
/// missing or a histogram carries anything but "0"/"1" keys.
StokesVector stokes_from_counts(const std::map<Basis, CountsHistogram>& histograms);

StokesVector stokes_from_probabilities(const std::map<Basis, OutcomeProbabilities>& probabilities);

struct Reconstruction {
    DensityMatrix rho;
    bool physical = true;
};

/// rho = (I + x X + y Y + z Z) / 2. Unphysical input is flagged, not projected.
Reconstruction reconstruct_density(const StokesVector& s);

/// Eigenvalue clipping onto the nearest physical state (optional post-step).
DensityMatrix clip_to_physical(const DensityMatrix& rho);

enum class AncillaModel {
    /// diag(p0, p1): ignores coherence between ancilla outcomes.
    Diagonal,
    /// Exact partial trace over the system of U(|phi>|0>).
    FullReduced,
};

/// Ancilla state after one coupling with the system in alpha|0> + beta|1>,
/// beta = sqrt(1 - |alpha|^2). Throws DomainError if |alpha| > 1.
DensityMatrix theoretical_ancilla_density(Complex alpha, double theta, AncillaModel model);

/// Reduced density matrix of `qubit`.
DensityMatrix reduced_density(const StateVector& state, std::size_t qubit);

StokesVector stokes_of(const DensityMatrix& rho);

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2, via the closed form
/// tr(ab) + 2 sqrt(det a det b) valid for qubits. Throws DomainError for
/// unphysical input.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qlocker
