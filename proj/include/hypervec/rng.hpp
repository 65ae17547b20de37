#pragma once

#include <array>
#include <cstdint>

namespace hypervec {

/// Philox4x32-10 counter-based generator (Salmon et al., "Parallel Random
/// Numbers: As Easy as 1, 2, 3"). One call encrypts a 128-bit counter under a
/// 64-bit key and yields four 32-bit words. Pure function: no hidden state,
/// so any (key, counter) pair is reproducible on every platform.
std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key);

/// SplitMix64 finalizer, used to derive substream keys.
std::uint64_t splitmix64(std::uint64_t x);

/// Stream roles keep independently consumed substreams disjoint: the same
/// (seed, index) never collides across codebook node vectors, hyperedge-id
/// vectors, graph generators, and so on.
enum class stream_role : std::uint32_t {
    node_vector = 1,
    edge_id_vector = 2,
    size_vector = 3,
    attribute_vector = 4,
    generator = 5,
    capacity = 6,
    probe = 7,
    mlp_init = 8,
};

/// Deterministic random stream addressed by (seed, role, index).
///
/// Key derivation: splitmix64(seed ^ splitmix64((role << 56) | (index & 2^56-1))),
/// split into the two Philox key words. Blocks are consumed in counter order
/// starting at zero; words within a block in order out[0..3].
///
/// Derived values:
///  - next_u64: two consecutive 32-bit words, first word = low half.
///  - next_uniform: ((u64 >> 11) + 1) * 2^-53, in (0, 1].
///  - next_gaussian: Box-Muller on two uniforms; the paired draw is cached.
class counter_rng {
public:
    counter_rng(std::uint64_t seed, stream_role role, std::uint64_t index);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    double next_uniform();
    double next_gaussian();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hypervec
