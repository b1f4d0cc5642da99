#pragma once

// Reference computations used as test oracles. Nothing here goes through
// StateVector::apply or the verification module: matrices come from matrix
// exponentials and Kronecker products, trajectory probabilities from the
// two-amplitude recursion.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli_x() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat pauli_y() { Mat m(2, 2); m << 0, C(0, -1), C(0, 1), 0; return m; }
inline Mat pauli_z() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }

/// exp(-i angle/2 sigma)
inline Mat rotation(const Mat& sigma, double angle) { return (C(0, -angle / 2) * sigma).exp(); }
inline Mat rx(double a) { return rotation(pauli_x(), a); }
inline Mat ry(double a) { return rotation(pauli_y(), a); }
inline Mat rz(double a) { return rotation(pauli_z(), a); }

inline Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

/// Single-qubit operator on `qubit` of an n-qubit little-endian register:
/// kron(I, ..., op, ..., I) with the highest qubit leftmost.
inline Mat embed(const Mat& op, std::size_t qubit, std::size_t n) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t q = n; q-- > 0;) out = kron(out, q == qubit ? op : Mat::Identity(2, 2));
    return out;
}

/// |b><b| on `qubit`.
inline Mat projector(std::size_t qubit, int bit, std::size_t n) {
    Mat p = Mat::Zero(2, 2);
    p(bit, bit) = 1.0;
    return embed(p, qubit, n);
}

/// Controlled gate as P_active (x) U + (I - P_active), with P_active the
/// product of control projectors.
inline Mat controlled(const Mat& u, std::size_t target, const std::vector<std::pair<std::size_t, int>>& controls,
                      std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Mat active = Mat::Identity(dim, dim);
    for (const auto& [q, bit] : controls) active = active * projector(q, bit, n);
    return active * embed(u, target, n) + (Mat::Identity(dim, dim) - active);
}

/// Max |a - e^{i phi} b| minimized over phi by aligning the largest entry.
inline double phase_aligned_error(const Mat& a, const Mat& b) {
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    const C phase = a(r, c) / b(r, c);
    return (a - (phase / std::abs(phase)) * b).cwiseAbs().maxCoeff();
}

/// Exact (probability of acceptance, total probability) of the verification
/// box from the amplitude recursion. Clicked branches collapse to |0>.
struct EnumerationTotals {
    double accept = 0.0;
    double total = 0.0;
    double all_zero = 0.0;
    std::size_t leaves = 0;
};

inline void recurse(C alpha, C beta, double weight, std::size_t remaining, double theta, bool strict,
                    bool clean, EnumerationTotals& out) {
    if (remaining == 0) {
        const double p0 = std::norm(alpha), p1 = std::norm(beta);
        out.accept += weight * p0;
        out.total += weight * (p0 + p1);
        if (clean) out.all_zero += weight;
        out.leaves += (p0 > 0) + (p1 > 0);
        return;
    }
    const double c = std::cos(theta), s = std::sin(theta);
    const double p_click = std::norm(alpha) * s * s;
    const double p_quiet = std::norm(alpha) * c * c + std::norm(beta);
    if (p_quiet > 0) {
        const double k = 1.0 / std::sqrt(p_quiet);
        recurse(alpha * c * k, beta * k, weight * p_quiet, remaining - 1, theta, strict, clean, out);
    }
    if (p_click > 0) {
        if (strict) {
            out.total += weight * p_click;
            out.leaves += 1;
        } else {
            recurse(1.0, 0.0, weight * p_click, remaining - 1, theta, strict, false, out);
        }
    }
}

inline EnumerationTotals enumerate(C alpha, C beta, double theta, std::size_t iterations, bool strict) {
    EnumerationTotals out;
    recurse(alpha, beta, 1.0, iterations, theta, strict, true, out);
    return out;
}

}  // namespace oracle
