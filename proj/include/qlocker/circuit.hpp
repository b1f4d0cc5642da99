#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qlocker/gates.hpp"
#include "qlocker/statevector.hpp"

namespace qlocker {

struct MeasureOp {
    std::size_t qubit;
    Basis basis = Basis::Z;
};

/// Returns the qubit to |0> (X on a measured 1), the way a reused ancilla is
/// reset on hardware.
struct ResetOp {
    std::size_t qubit;
};

using Instruction = std::variant<GateOp, MeasureOp, ResetOp>;

class Circuit {
public:
    explicit Circuit(std::size_t n_qubits);

    Circuit& add(GateOp gate);
    Circuit& add(std::span<const GateOp> gates);
    Circuit& measure(std::size_t qubit, Basis basis = Basis::Z);
    Circuit& reset(std::size_t qubit);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
    std::size_t measurement_count() const;

private:
    std::size_t n_qubits_;
    std::vector<Instruction> instructions_;
};

struct CountsHistogram {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;

    std::uint64_t count(const std::string& key) const;
    double frequency(const std::string& key) const;
    void merge(const CountsHistogram& other);
};

/// Runs one trajectory from |0...0>. Returns measurement outcomes in program
/// order, first measurement leftmost.
std::string run_shot(const Circuit& circuit, RandomStream& rng, StateVector* final_state = nullptr);

/// Shot i uses RandomStream(seed).split(i), so the histogram does not depend
/// on `workers`. workers == 0 picks the hardware concurrency.
CountsHistogram sample_shots(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                             unsigned workers = 1);

/// `bitstring,count` rows.
std::string histogram_csv(const CountsHistogram& histogram);

/// Full 2^n x 2^n matrix of a gate sequence, built column by column.
Eigen::MatrixXcd unitary_of(std::span<const GateOp> gates, std::size_t n_qubits);

/// Max entrywise |a - e^{i phi} b| with phi chosen to maximize overlap.
double max_error_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qlocker
