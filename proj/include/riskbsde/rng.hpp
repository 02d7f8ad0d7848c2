#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace riskbsde::rng {

// Philox4x32-10 counter-based generator. Streams are addressed by
// (key, counter) alone, so draws are independent of evaluation order and
// thread count. The key carries the master seed; the counter carries
// (path, step, slot).
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key) {
        constexpr std::uint32_t kMul0 = 0xD2511F53u;
        constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
        constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
        constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
        auto ctr = counter;
        auto k = key;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ k[0], lo1, hi0 ^ ctr[3] ^ k[1], lo0};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return ctr;
    }
};

// One uniform in (0,1) from 53 random bits; never returns 0 or 1.
inline double to_unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Addressed normal draws. A single Philox block yields two uniforms and
// hence one Box-Muller pair.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t master_seed) : seed_(master_seed) {}

    // Deterministic pair of standard normals at address (path, step, pair).
    std::array<double, 2> pair(std::uint64_t path, std::uint32_t step, std::uint32_t pair_idx) const {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(path),
            static_cast<std::uint32_t>(path >> 32),
            step,
            pair_idx,
        };
        const std::array<std::uint32_t, 2> key = {
            static_cast<std::uint32_t>(seed_),
            static_cast<std::uint32_t>(seed_ >> 32),
        };
        const auto r = Philox4x32::block(ctr, key);
        const std::uint64_t a = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
        const std::uint64_t b = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
        const double u1 = to_unit_open(a);
        const double u2 = to_unit_open(b);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

// Small helper for non-path randomness (probe sampling, test batteries):
// a sequential view over one counter stream.
class SequenceStream {
public:
    explicit SequenceStream(std::uint64_t seed, std::uint64_t stream = 0)
        : normals_(seed), stream_(stream) {}

    double uniform() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        const auto r = block_at(next_++);
        cached_ = to_unit_open((static_cast<std::uint64_t>(r[2]) << 32) | r[3]);
        have_ = true;
        return to_unit_open((static_cast<std::uint64_t>(r[0]) << 32) | r[1]);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return cached_normal_;
        }
        const auto p = normals_.pair(stream_, 0x80000000u, normal_idx_++);
        cached_normal_ = p[1];
        have_normal_ = true;
        return p[0];
    }

    std::uint64_t integer(std::uint64_t bound) {
        const auto r = block_at(next_++);
        const std::uint64_t v = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
        return bound == 0 ? 0 : v % bound;
    }

private:
    std::array<std::uint32_t, 4> block_at(std::uint64_t i) const {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(i),
            static_cast<std::uint32_t>(i >> 32),
            static_cast<std::uint32_t>(stream_),
            0x5eedu,
        };
        const std::array<std::uint32_t, 2> key = {
            static_cast<std::uint32_t>(normals_.seed()),
            static_cast<std::uint32_t>(normals_.seed() >> 32),
        };
        return Philox4x32::block(ctr, key);
    }

    NormalStream normals_;
    std::uint64_t stream_ = 0;
    std::uint64_t next_ = 0;
    std::uint32_t normal_idx_ = 0;
    double cached_ = 0.0;
    bool have_ = false;
    double cached_normal_ = 0.0;
    bool have_normal_ = false;
};

}  // namespace riskbsde::rng
