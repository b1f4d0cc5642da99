#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "qlocker/random.hpp"
#include "qlocker/statevector.hpp"

namespace qlocker {

/// (|00> + |11>)/sqrt(2).
StateVector make_bell_pair();

/// Classical side of one teleportation. m1 drives the Z correction (read from
/// the source qubit after H), m2 drives the X correction (read from the
/// sender's half of the pair). The receiver applies X^m2 then Z^m1.
struct TeleportRecord {
    Bit m1 = 0;
    Bit m2 = 0;
    std::uint64_t channel_id = 0;
    bool consumed = false;

    /// `channel_id,m1,m2`
    std::string to_record() const;
};

struct TeleportResult {
    TeleportRecord record;
    StateVector received;
    /// The sender's source qubit after its readout (a z eigenstate).
    StateVector source_after;
};

/// Owns shared Bell pairs. Each channel may carry exactly one qubit.
class ChannelRegistry {
public:
    std::uint64_t open_channel();
    bool is_consumed(std::uint64_t channel_id) const;

    /// Throws ChannelError for unknown or already-used channels.
    TeleportResult teleport(const StateVector& psi, std::uint64_t channel_id, RandomStream& rng);

private:
    StateVector take_pair(std::uint64_t channel_id);

    mutable std::mutex mutex_;
    std::uint64_t next_id_ = 1;
    std::map<std::uint64_t, std::optional<StateVector>> pairs_;
};

/// Teleports through a fresh, private channel.
TeleportResult teleport(const StateVector& psi, RandomStream& rng);

/// The branch where the sender reads (m1, m2), corrections applied.
TeleportResult teleport_branch(const StateVector& psi, Bit m1, Bit m2);

}  // namespace qlocker
