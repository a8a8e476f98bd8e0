#pragma once

#include <cstdint>
#include <random>

namespace hml
{

std::uint64_t splitmix64( std::uint64_t x );

// Seed of an independent stream, e.g. one per (trial, check).
std::uint64_t derive_seed( std::uint64_t seed, std::uint64_t trial, std::uint64_t stream );

// Deterministic across platforms: the engine is fully specified by the
// standard and the bounded draws below do not go through the
// implementation-defined std distributions.
class Rng
{
public:
    explicit Rng( std::uint64_t seed ) : _engine{ seed } {}

    std::uint64_t next() { return _engine(); }
    // Uniform in [0, n); n must be positive.
    std::uint64_t below( std::uint64_t n );
    // Uniform in [0, 1).
    double unit() { return static_cast< double >( next() >> 11 ) * 0x1.0p-53; }
    bool chance( double p ) { return unit() < p; }

private:
    std::mt19937_64 _engine;
};

} // namespace hml
