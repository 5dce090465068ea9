#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace modeset {

/// Identifies one reproducible random sequence. Distinct stream ids under the
/// same seed address disjoint counter ranges of the underlying generator.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    friend constexpr bool operator==(const RngStream&, const RngStream&) = default;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based generator reading a single RngStream. Satisfies
/// UniformRandomBitGenerator, but the helpers below are preferred because
/// standard-library distributions are not reproducible across platforms.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(RngStream stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()();

    /// Uniform double in the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Uniform integer in [0, bound), unbiased.
    std::uint64_t uniform_below(std::uint64_t bound);
    /// Standard normal variate (Box-Muller, one draw per pair of uniforms).
    double normal();

    [[nodiscard]] RngStream stream() const noexcept { return stream_; }

private:
    void refill();

    RngStream stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

/// n uniform variates in (0, 1); bit-identical for identical (stream, n).
std::vector<double> sample_uniform(RngStream stream, std::size_t n);

/// n standard normal variates.
std::vector<double> sample_normal(RngStream stream, std::size_t n);

/// Derive a child stream for an independent purpose (e.g. sample splitting)
/// from a parent stream. Deterministic; distinct tags give distinct streams.
RngStream derive_stream(RngStream parent, std::uint64_t tag);

} // namespace modeset
