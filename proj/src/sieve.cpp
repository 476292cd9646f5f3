#include "chebias/sieve.hpp"

#include "chebias/group.hpp"
#include "chebias/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace chebias {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  out.push_back(2);
  // index i <-> 2i + 1
  const std::uint64_t m = (n - 1) / 2 + 1;
  std::vector<char> composite(m, 0);
  for (std::uint64_t i = 1; i < m; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t j = (p * p - 1) / 2; j < m; j += p) composite[j] = 1;
  }
  return out;
}

namespace {

void sieve_block(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base,
                 std::vector<char>& buf, std::vector<std::uint64_t>& out) {
  // odd numbers in [lo, hi): lo is even, entry i <-> lo + 2i + 1
  const std::uint64_t m = (hi - lo) / 2;
  buf.assign(m, 0);
  for (std::size_t k = 1; k < base.size(); ++k) {
    const std::uint64_t p = base[k];
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t n = start; n < hi; n += 2 * p) buf[(n - lo - 1) / 2] = 1;
  }
  out.clear();
  if (lo == 0) out.push_back(2);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t n = lo + 2 * i + 1;
    if (!buf[i] && n > 1) out.push_back(n);
  }
}

}  // namespace

void segmented_sieve(std::uint64_t x_max, int workers,
                     const std::function<void(std::size_t, const std::vector<std::uint64_t>&)>& block,
                     const std::function<void(std::size_t)>& fold) {
  if (x_max > kSieveLimit) throw ConfigError("sieve limit is 10^9");
  const auto base = primes_up_to(static_cast<std::uint64_t>(std::sqrt(double(x_max))) + 2);
  const std::size_t nblocks = static_cast<std::size_t>(x_max / kSieveSpan + 1);
  const int w = std::max(1, workers);
  const std::size_t batch = static_cast<std::size_t>(w) * 2;
  for (std::size_t b0 = 0; b0 < nblocks; b0 += batch) {
    const std::size_t b1 = std::min(nblocks, b0 + batch);
    parallel_for(b1 - b0, w, [&](std::size_t k) {
      const std::size_t b = b0 + k;
      const std::uint64_t lo = b * kSieveSpan;
      const std::uint64_t hi = std::min<std::uint64_t>(lo + kSieveSpan, x_max + 1 + ((x_max + 1) % 2));
      thread_local std::vector<char> buf;
      std::vector<std::uint64_t> primes;
      if (hi > lo) sieve_block(lo, hi, base, buf, primes);
      while (!primes.empty() && primes.back() > x_max) primes.pop_back();
      block(b, primes);
    });
    for (std::size_t b = b0; b < b1; ++b) fold(b);
  }
}

std::uint64_t prime_pi(std::uint64_t x, int workers) {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  const std::size_t nblocks = static_cast<std::size_t>(x / kSieveSpan + 1);
  counts.assign(nblocks, 0);
  segmented_sieve(
      x, workers, [&](std::size_t b, const std::vector<std::uint64_t>& p) { counts[b] = p.size(); },
      [&](std::size_t b) { total += counts[b]; });
  return total;
}

}  // namespace chebias
