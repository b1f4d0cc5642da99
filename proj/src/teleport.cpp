#include "qlocker/teleport.hpp"

#include <array>

#include "qlocker/errors.hpp"

namespace qlocker {

namespace {

// Register layout: q0 = source, q1 = sender's half, q2 = receiver's half.
constexpr std::size_t kSource = 0;
constexpr std::size_t kSender = 1;
constexpr std::size_t kReceiver = 2;

StateVector entangle_with_pair(const StateVector& psi, const StateVector& pair) {
    if (psi.n_qubits() != 1) throw ShapeError("teleport expects a single-qubit state");
    StateVector reg = tensor(psi, pair);
    reg.apply(GateOp::cnot(kSource, kSender));
    reg.apply(GateOp::h(kSource));
    return reg;
}

TeleportResult finish(StateVector reg, Bit m1, Bit m2, std::uint64_t channel_id) {
    if (m2) reg.apply(GateOp::x(kReceiver));
    if (m1) {
        // Z = S S
        reg.apply(GateOp::s(kReceiver));
        reg.apply(GateOp::s(kReceiver));
    }

    StateVector source_after = StateVector::basis_state(1, m1);
    StateVector received = reg.drop_qubit(kSender).drop_qubit(kSource);
    return {TeleportRecord{m1, m2, channel_id, true}, std::move(received), std::move(source_after)};
}

}  // namespace

StateVector make_bell_pair() {
    StateVector pair(2);
    pair.apply(GateOp::h(0));
    pair.apply(GateOp::cnot(0, 1));
    return pair;
}

std::string TeleportRecord::to_record() const {
    return std::to_string(channel_id) + ',' + std::to_string(int{m1}) + ',' + std::to_string(int{m2});
}

std::uint64_t ChannelRegistry::open_channel() {
    std::lock_guard lock(mutex_);
    const std::uint64_t id = next_id_++;
    pairs_.emplace(id, make_bell_pair());
    return id;
}

bool ChannelRegistry::is_consumed(std::uint64_t channel_id) const {
    std::lock_guard lock(mutex_);
    const auto it = pairs_.find(channel_id);
    if (it == pairs_.end()) throw ChannelError("unknown channel " + std::to_string(channel_id));
    return !it->second.has_value();
}

StateVector ChannelRegistry::take_pair(std::uint64_t channel_id) {
    std::lock_guard lock(mutex_);
    const auto it = pairs_.find(channel_id);
    if (it == pairs_.end()) throw ChannelError("unknown channel " + std::to_string(channel_id));
    if (!it->second) throw ChannelError("channel " + std::to_string(channel_id) + " already consumed");
    StateVector pair = std::move(*it->second);
    it->second.reset();
    return pair;
}

TeleportResult ChannelRegistry::teleport(const StateVector& psi, std::uint64_t channel_id, RandomStream& rng) {
    if (psi.n_qubits() != 1) throw ShapeError("teleport expects a single-qubit state");
    StateVector reg = entangle_with_pair(psi, take_pair(channel_id));
    const Bit m1 = measure_in_place(reg, kSource, Basis::Z, rng).outcome;
    const Bit m2 = measure_in_place(reg, kSender, Basis::Z, rng).outcome;
    return finish(std::move(reg), m1, m2, channel_id);
}

TeleportResult teleport(const StateVector& psi, RandomStream& rng) {
    ChannelRegistry registry;
    return registry.teleport(psi, registry.open_channel(), rng);
}

TeleportResult teleport_branch(const StateVector& psi, Bit m1, Bit m2) {
    StateVector reg = entangle_with_pair(psi, make_bell_pair());
    force_outcome(reg, kSource, Basis::Z, m1);
    force_outcome(reg, kSender, Basis::Z, m2);
    return finish(std::move(reg), m1, m2, 0);
}

}  // namespace qlocker
