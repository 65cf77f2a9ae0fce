#pragma once

#include <cstdint>
#include <random>

namespace circreg {

/// A reproducible random stream identified by (seed, stream id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, and all
/// variates are produced by code in this class rather than by the
/// std::*_distribution templates, whose algorithms are implementation-defined.
/// Two streams with the same (seed, stream id) therefore produce the same
/// sequence on every platform and independent of thread scheduling.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// A fresh stream sharing this stream's seed; independent of how many
    /// draws have been taken from *this.
    RngStream substream(std::uint64_t stream_id) const { return RngStream(seed_, stream_id); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on the open interval (0, 1).
    double uniform_open();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via the Marsaglia polar method.
    double normal();
    /// Standard Cauchy via the inverse CDF.
    double cauchy();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Stream id used for replicate `index` of a job; keeps replicate draws
/// disjoint from the streams reserved for the job's own setup.
constexpr std::uint64_t replicate_stream(std::uint64_t index) noexcept { return index + 1; }

}  // namespace circreg
