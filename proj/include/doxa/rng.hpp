#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace doxa
{

inline std::uint64_t splitmix64( std::uint64_t x )
{
    x += 0x9e3779b97f4a7c15ULL;
    x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
    x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebULL;
    return x ^ ( x >> 31 );
}

// Seed of the i-th item of a seeded sweep.
inline std::uint64_t derive_seed( std::uint64_t seed, std::uint64_t index )
{
    return splitmix64( splitmix64( seed ) ^ index );
}

// std::mt19937_64 is fully specified, but the standard distributions are not,
// so bounded draws are done here to keep output identical across toolchains.
class random_source
{
    std::mt19937_64 _engine;

public:
    explicit random_source( std::uint64_t seed ) : _engine{ seed } {}

    std::uint64_t bits() { return _engine(); }

    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below( std::uint64_t bound )
    {
        const std::uint64_t limit = ~std::uint64_t{ 0 } - ( ~std::uint64_t{ 0 } % bound );
        std::uint64_t x;
        do
            x = _engine();
        while ( x >= limit );
        return x % bound;
    }

    bool coin() { return ( _engine() >> 63 ) != 0; }

    // Uniform nonempty subset of the low `n` bits (n <= 64).
    std::uint64_t nonempty_subset( std::size_t n )
    {
        const std::uint64_t all = n >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << n ) - 1;
        std::uint64_t x;
        do
            x = _engine() & all;
        while ( x == 0 );
        return x;
    }

    template <typename T>
    void shuffle( std::vector<T>& items )
    {
        for ( std::size_t i = items.size(); i > 1; --i )
            std::swap( items[ i - 1 ], items[ below( i ) ] );
    }
};

} // namespace doxa
