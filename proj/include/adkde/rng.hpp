#ifndef ADKDE_RNG_HPP
#define ADKDE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace adkde {

//! Counter-based stream: value(i) = avalanche(key + i * golden), with the key
//! derived from (master seed, stream index). Streams are independent and any
//! draw is reproducible from (seed, stream, counter) alone, which is what
//! makes replication-parallel Monte Carlo runs byte-stable. The generator and
//! the Box-Muller transform below are part of the reproducibility contract.
class CounterRng {
public:
    CounterRng(std::uint64_t master_seed, std::uint64_t stream)
        : key_(mix(mix(master_seed) ^ (stream * 0xd2b74407b1ce6e93ULL + 0x8cb92ba72f3d8dd7ULL))) {}

    std::uint64_t next_u64() {
        return mix(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL);
    }

    //! Uniform on [0,1): top 53 bits scaled.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    //! Standard normal via Box-Muller; the pair's second value is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] so ln(u1) is finite.
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace adkde

#endif
