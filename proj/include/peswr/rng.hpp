#ifndef PESWR_RNG_HPP
#define PESWR_RNG_HPP

#include <cstdint>

namespace peswr {

/** splitmix64 stream; hand-rolled so record guesses replay bitwise on
 *  any platform/stdlib. */
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
    uint64_t state_;
};

} // namespace peswr

#endif
