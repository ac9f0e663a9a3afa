#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace doxa
{

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Callers write into
// per-index slots, so results never depend on the worker count.
// The exception of the lowest failing index is rethrown.
template <typename Fn>
void parallel_for( std::size_t count, std::size_t jobs, Fn&& fn )
{
    jobs = std::max<std::size_t>( 1, std::min( jobs, count ) );
    if ( jobs == 1 )
    {
        for ( std::size_t i = 0; i < count; ++i )
            fn( i );
        return;
    }

    std::atomic<std::size_t> next{ 0 };
    std::mutex failure_mutex;
    std::size_t failed_index = count;
    std::exception_ptr failure;

    auto worker = [ & ] {
        for ( std::size_t i = next++; i < count; i = next++ )
        {
            try
            {
                fn( i );
            }
            catch ( ... )
            {
                std::lock_guard lock( failure_mutex );
                if ( i < failed_index )
                {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };

    std::vector<std::jthread> threads;
    threads.reserve( jobs );
    for ( std::size_t j = 0; j < jobs; ++j )
        threads.emplace_back( worker );
    threads.clear();

    if ( failure )
        std::rethrow_exception( failure );
}

} // namespace doxa
