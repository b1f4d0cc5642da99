#include "qlocker/circuit.hpp"

#include <algorithm>
#include <thread>

#include "qlocker/errors.hpp"

namespace qlocker {

Circuit::Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > StateVector::kDefaultMaxQubits) {
        throw CapacityError("circuit width out of range");
    }
}

Circuit& Circuit::add(GateOp gate) {
    gate.validate(n_qubits_);
    instructions_.emplace_back(std::move(gate));
    return *this;
}

Circuit& Circuit::add(std::span<const GateOp> gates) {
    for (const auto& g : gates) add(g);
    return *this;
}

Circuit& Circuit::measure(std::size_t qubit, Basis basis) {
    if (qubit >= n_qubits_) throw IndexError("measured qubit out of range");
    instructions_.emplace_back(MeasureOp{qubit, basis});
    return *this;
}

Circuit& Circuit::reset(std::size_t qubit) {
    if (qubit >= n_qubits_) throw IndexError("reset qubit out of range");
    instructions_.emplace_back(ResetOp{qubit});
    return *this;
}

std::size_t Circuit::measurement_count() const {
    return static_cast<std::size_t>(std::count_if(instructions_.begin(), instructions_.end(), [](const auto& ins) {
        return std::holds_alternative<MeasureOp>(ins);
    }));
}

std::uint64_t CountsHistogram::count(const std::string& key) const {
    const auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
}

double CountsHistogram::frequency(const std::string& key) const {
    return shots == 0 ? 0.0 : static_cast<double>(count(key)) / static_cast<double>(shots);
}

void CountsHistogram::merge(const CountsHistogram& other) {
    shots += other.shots;
    for (const auto& [k, v] : other.counts) counts[k] += v;
}

std::string run_shot(const Circuit& circuit, RandomStream& rng, StateVector* final_state) {
    StateVector state(circuit.n_qubits());
    std::string outcomes;
    outcomes.reserve(circuit.measurement_count());
    for (const auto& ins : circuit.instructions()) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            state.apply(*g);
        } else if (const auto* m = std::get_if<MeasureOp>(&ins)) {
            outcomes.push_back(measure_in_place(state, m->qubit, m->basis, rng).outcome ? '1' : '0');
        } else if (const auto* r = std::get_if<ResetOp>(&ins)) {
            // Conditional flip after an implicit z readout.
            if (measure_in_place(state, r->qubit, Basis::Z, rng).outcome == 1) {
                state.apply(GateOp::x(r->qubit));
            }
        }
    }
    if (final_state) *final_state = state;
    return outcomes;
}

CountsHistogram sample_shots(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed, unsigned workers) {
    if (shots == 0) throw InputError("shots must be >= 1");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, shots));

    const RandomStream root(seed);
    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        CountsHistogram h;
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomStream rng = root.split(i);
            ++h.counts[run_shot(circuit, rng)];
            ++h.shots;
        }
        return h;
    };

    if (workers == 1) return run_range(0, shots);

    std::vector<CountsHistogram> partial(workers);
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (shots + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min(shots, w * chunk);
            const std::uint64_t end = std::min(shots, begin + chunk);
            pool.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
        }
    }
    CountsHistogram total;
    for (const auto& h : partial) total.merge(h);
    return total;
}

std::string histogram_csv(const CountsHistogram& histogram) {
    std::string out = "bitstring,count\n";
    for (const auto& [k, v] : histogram.counts) {
        out += k;
        out += ',';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

Eigen::MatrixXcd unitary_of(std::span<const GateOp> gates, std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis_state(n_qubits, col);
        s.apply(gates);
        for (std::size_t row = 0; row < dim; ++row) m(row, col) = s[row];
    }
    return m;
}

double max_error_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix shape mismatch");
    const Complex inner = (b.adjoint() * a).trace();
    const Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex{1.0, 0.0};
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qlocker
