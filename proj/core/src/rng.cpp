#include "modeset/rng.hpp"

#include <cmath>
#include <numbers>

namespace modeset {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

CounterRng::CounterRng(RngStream stream) : stream_(stream) {}

void CounterRng::refill()
{
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_.stream_id),
        static_cast<std::uint32_t>(stream_.stream_id >> 32)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(stream_.seed),
                                           static_cast<std::uint32_t>(stream_.seed >> 32)};
    const auto out = philox4x32(ctr, key);
    buffer_[0] = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
    buffer_[1] = static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32);
    buffered_ = 2;
    ++block_;
}

CounterRng::result_type CounterRng::operator()()
{
    if (buffered_ == 0) refill();
    return buffer_[2 - buffered_--];
}

double CounterRng::uniform()
{
    // (k + 0.5) / 2^53 for k in [0, 2^53): never 0, never 1.
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t CounterRng::uniform_below(std::uint64_t bound)
{
    if (bound <= 1) return 0;
    // Accept draws at or above 2^64 mod bound: the accepted range is a
    // multiple of bound, so the remainder is unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = (*this)();
        if (x >= threshold) return x % bound;
    }
}

double CounterRng::normal()
{
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_uniform(RngStream stream, std::size_t n)
{
    CounterRng rng(stream);
    std::vector<double> out(n);
    for (auto& u : out) u = rng.uniform();
    return out;
}

std::vector<double> sample_normal(RngStream stream, std::size_t n)
{
    CounterRng rng(stream);
    std::vector<double> out(n);
    for (auto& z : out) z = rng.normal();
    return out;
}

RngStream derive_stream(RngStream parent, std::uint64_t tag)
{
    return {splitmix64(parent.seed ^ splitmix64(tag + 0x632BE59BD9B4E019ull)), parent.stream_id};
}

} // namespace modeset
