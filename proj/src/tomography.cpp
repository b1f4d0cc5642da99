#include "qlocker/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qlocker/errors.hpp"
#include "qlocker/verify.hpp"

namespace qlocker {

namespace {

constexpr Complex kI{0.0, 1.0};

OutcomeProbabilities probabilities_of(const CountsHistogram& h) {
    if (h.shots == 0) throw InputError("empty histogram");
    for (const auto& [key, count] : h.counts) {
        if (key != "0" && key != "1") throw InputError("tomography histograms must have single-bit keys");
    }
    return {h.frequency("0"), h.frequency("1")};
}

}  // namespace

DensityMatrix DensityMatrix::pure(const StateVector& qubit) {
    if (qubit.n_qubits() != 1) throw ShapeError("pure() expects a single qubit");
    Eigen::Vector2cd v(qubit[0], qubit[1]);
    return DensityMatrix(v * v.adjoint());
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
    const Eigen::Matrix2cd h = (m_ + m_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

bool DensityMatrix::is_hermitian(double tolerance) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool DensityMatrix::is_physical() const {
    if (!is_hermitian()) return false;
    if (std::abs(m_.trace() - Complex{1.0, 0.0}) > 1e-10) return false;
    return eigenvalues()[0] >= -1e-6;
}

nlohmann::json DensityMatrix::to_json() const {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int r = 0; r < 2; ++r) {
        re.push_back({m_(r, 0).real(), m_(r, 1).real()});
        im.push_back({m_(r, 0).imag(), m_(r, 1).imag()});
    }
    return {{"real", re}, {"imag", im}};
}

std::string DensityMatrix::to_text() const {
    char buf[160];
    std::string out = "real:\n";
    for (int r = 0; r < 2; ++r) {
        std::snprintf(buf, sizeof buf, "  % .6f % .6f\n", m_(r, 0).real(), m_(r, 1).real());
        out += buf;
    }
    out += "imag:\n";
    for (int r = 0; r < 2; ++r) {
        std::snprintf(buf, sizeof buf, "  % .6f % .6f\n", m_(r, 0).imag(), m_(r, 1).imag());
        out += buf;
    }
    return out;
}

double StokesVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

StokesVector stokes_from_probabilities(const std::map<Basis, OutcomeProbabilities>& probabilities) {
    auto component = [&](Basis b) {
        const auto it = probabilities.find(b);
        if (it == probabilities.end()) {
            throw InputError(std::string("missing ") + basis_name(b) + "-basis data");
        }
        return it->second.p0 - it->second.p1;
    };
    return {component(Basis::X), component(Basis::Y), component(Basis::Z)};
}

StokesVector stokes_from_counts(const std::map<Basis, CountsHistogram>& histograms) {
    std::map<Basis, OutcomeProbabilities> probabilities;
    for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
        const auto it = histograms.find(b);
        if (it == histograms.end()) {
            throw InputError(std::string("missing ") + basis_name(b) + "-basis histogram");
        }
        probabilities[b] = probabilities_of(it->second);
    }
    return stokes_from_probabilities(probabilities);
}

Reconstruction reconstruct_density(const StokesVector& s) {
    Eigen::Matrix2cd m;
    m << (1.0 + s.z) / 2.0, Complex{s.x, -s.y} / 2.0,
         Complex{s.x, s.y} / 2.0, (1.0 - s.z) / 2.0;
    return {DensityMatrix(m), s.is_physical()};
}

DensityMatrix clip_to_physical(const DensityMatrix& rho) {
    const Eigen::Matrix2cd h = (rho.matrix() + rho.matrix().adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h);
    Eigen::Vector2d vals = solver.eigenvalues().cwiseMax(0.0);
    const double total = vals.sum();
    if (total <= 0.0) return DensityMatrix();
    vals /= total;
    const Eigen::Matrix2cd& vecs = solver.eigenvectors();
    return DensityMatrix(vecs * vals.cast<Complex>().asDiagonal() * vecs.adjoint());
}

DensityMatrix reduced_density(const StateVector& state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) throw IndexError("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        if (i & bit) continue;
        const Complex a0 = state[i], a1 = state[i | bit];
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    return DensityMatrix(rho);
}

DensityMatrix theoretical_ancilla_density(Complex alpha, double theta, AncillaModel model) {
    const double alpha_sq = std::norm(alpha);
    if (alpha_sq > 1.0 + 1e-12) throw DomainError("|alpha| must not exceed 1");
    const Complex beta = std::sqrt(std::max(0.0, 1.0 - alpha_sq));

    if (model == AncillaModel::Diagonal) {
        const double c = std::cos(theta), s = std::sin(theta);
        const double p0 = alpha_sq * c * c + std::norm(beta);
        const double p1 = alpha_sq * s * s;
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 0) = p0;
        m(1, 1) = p1;
        return DensityMatrix(m);
    }

    const double norm = std::sqrt(alpha_sq + std::norm(beta));
    StateVector reg = tensor(StateVector::qubit(alpha / norm, beta / norm), StateVector(1));
    reg.apply(build_controlled0_rx(theta, 0, 1));
    return reduced_density(reg, 1);
}

StokesVector stokes_of(const DensityMatrix& rho) {
    const Complex off = rho(1, 0);
    return {2.0 * off.real(), 2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (!a.is_physical() || !b.is_physical()) throw DomainError("fidelity requires physical density matrices");
    const double overlap = (a.matrix() * b.matrix()).trace().real();
    const double det_a = std::max(0.0, a.matrix().determinant().real());
    const double det_b = std::max(0.0, b.matrix().determinant().real());
    return std::clamp(overlap + 2.0 * std::sqrt(det_a * det_b), 0.0, 1.0);
}

}  // namespace qlocker
