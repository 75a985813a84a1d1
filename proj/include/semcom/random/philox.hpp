#pragma once

#include <cmath>
#include <cstdint>

namespace semcom::rng {

/// 64-bit FNV-1a, used to derive substream identifiers from tag sequences.
inline constexpr std::uint64_t fnv1a(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

/// Philox4x32-10 counter-based generator. A stream is identified by (seed,
/// stream id); draws inside a stream advance only the 64-bit counter, so any
/// (user, replication, generation, ...) task can own an independent stream
/// and results never depend on thread scheduling.
class Stream {
public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream_id)),
          stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)),
          seed_(seed), id_(stream_id) {}

    /// Child stream with an id derived by hashing this stream's id and a salt.
    Stream derive(std::uint64_t salt) const {
        return Stream(seed_, fnv1a(fnv1a(kFnvOffset, id_), salt));
    }
    Stream derive(std::uint64_t s1, std::uint64_t s2) const {
        return derive(fnv1a(fnv1a(kFnvOffset, s1), s2));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t id() const { return id_; }

    std::uint64_t next_u64() {
        if (buf_pos_ >= 2) refill();
        return buf_[buf_pos_++];
    }

    /// Uniform double in [0, 1).
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double u01_open_left() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = u01_open_left();
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925 * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 handled by boosting.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = u01_open_left();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = u01_open_left();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double exponential() { return -std::log(u01_open_left()); }

private:
    static std::uint64_t mulhilo(std::uint32_t a, std::uint32_t b,
                                 std::uint32_t& hi) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        return static_cast<std::uint32_t>(p);
    }

    void refill() {
        std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
        std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
        std::uint32_t c2 = stream_lo_;
        std::uint32_t c3 = stream_hi_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, hi1;
            const std::uint32_t lo0 =
                static_cast<std::uint32_t>(mulhilo(0xD2511F53u, c0, hi0));
            const std::uint32_t lo1 =
                static_cast<std::uint32_t>(mulhilo(0xCD9E8D57u, c2, hi1));
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
        buf_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
        buf_pos_ = 0;
        ++counter_;
    }

    std::uint32_t key0_, key1_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t seed_, id_;
    std::uint64_t counter_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int buf_pos_ = 2;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace semcom::rng
