#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace chebias {

// Numbers per sieve block: 2^22 odd entries.
constexpr std::uint64_t kSieveSpan = std::uint64_t(1) << 23;
constexpr std::uint64_t kSieveLimit = 1000000000ULL;

// All primes <= n (simple odd-only sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Segmented sieve over [0, x_max]. `block` runs concurrently and receives the
// primes of one block in increasing order; `fold` then runs on the calling
// thread in block order, so folded output is independent of the worker count.
void segmented_sieve(std::uint64_t x_max, int workers,
                     const std::function<void(std::size_t, const std::vector<std::uint64_t>&)>& block,
                     const std::function<void(std::size_t)>& fold);

std::uint64_t prime_pi(std::uint64_t x, int workers = 1);

}  // namespace chebias
