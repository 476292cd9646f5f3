#include "chebias/sn.hpp"

#include "chebias/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chebias {

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }
int rows(const Partition& p) { return static_cast<int>(p.size()); }
int columns(const Partition& p) { return p.empty() ? 0 : p.front(); }

bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

std::string partition_label(const Partition& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "." : "") << p[i];
  return os.str();
}

Partition parse_partition(const std::string& label) {
  Partition p;
  std::stringstream ss(label);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ConfigError("bad partition label: " + label);
    p.push_back(std::stoi(part));
  }
  std::sort(p.rbegin(), p.rend());
  if (p.empty() || !is_partition(p)) throw ConfigError("bad partition label: " + label);
  return p;
}

namespace {

void gen_partitions(int remaining, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(remaining - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 1 || n > 120) throw ConfigError("partitions: n out of range [1,120]");
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(n, n, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> partition_counts(int n) {
  if (n < 0 || n > 400) throw ConfigError("partition_count: n out of range [0,400]");
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    // Euler: p(m) = sum_k (-1)^{k+1} [p(m - k(3k-1)/2) + p(m - k(3k+1)/2)]
    __int128 acc = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      int g2 = k * (3 * k + 1) / 2;
      __int128 term = p[m - g1];
      if (g2 <= m) term += p[m - g2];
      acc += (k % 2 == 1) ? term : -term;
    }
    p[m] = static_cast<std::uint64_t>(acc);
  }
  return p;
}

std::uint64_t partition_count(int n) { return partition_counts(n)[n]; }

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt hook_dimension(const Partition& lambda) {
  if (!is_partition(lambda)) throw ConfigError("hook_dimension: not a partition");
  const int n = partition_size(lambda);
  BigInt hooks = 1;
  const int r = rows(lambda);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < lambda[i]; ++j) {
      int leg = 0;
      for (int k = i + 1; k < r && lambda[k] > j; ++k) ++leg;
      hooks *= (lambda[i] - j - 1) + leg + 1;
    }
  }
  return factorial(n) / hooks;
}

BigInt class_size(const Partition& mu) {
  // n! / z_mu with z_mu = prod_k k^{m_k} m_k!
  std::map<int, int> mult;
  for (int m : mu) ++mult[m];
  BigInt z = 1;
  for (auto [k, m] : mult) {
    for (int i = 0; i < m; ++i) z *= k;
    z *= factorial(m);
  }
  return factorial(partition_size(mu)) / z;
}

int support_size(const Partition& mu) {
  int s = 0;
  for (int m : mu)
    if (m > 1) s += m;
  return s;
}

Partition power_cycle_type(const Partition& mu, long k) {
  Partition out;
  for (int m : mu) {
    long g = gcd_long(m, k);
    if (k == 0) g = m;
    for (long i = 0; i < g; ++i) out.push_back(static_cast<int>(m / g));
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

namespace {

// Beta-set (first-column hook lengths) of lambda with exactly len beads.
std::vector<int> beta_set(const Partition& lambda) {
  const int L = rows(lambda);
  std::vector<int> b(L);
  for (int i = 0; i < L; ++i) b[i] = lambda[i] + (L - 1 - i);
  return b;
}

Partition from_beta(std::vector<int> b) {
  std::sort(b.rbegin(), b.rend());
  const int L = static_cast<int>(b.size());
  Partition p;
  for (int i = 0; i < L; ++i) {
    int part = b[i] - (L - 1 - i);
    if (part > 0) p.push_back(part);
  }
  return p;
}

struct MnCache {
  std::mutex mu;
  std::map<std::pair<Partition, Partition>, long> memo;
};

MnCache& mn_cache() {
  static MnCache c;
  return c;
}

long mn_rec(const Partition& lambda, const Partition& mu, std::size_t idx,
            std::map<std::pair<Partition, Partition>, long>& memo) {
  if (idx == mu.size()) return lambda.empty() ? 1 : 0;
  Partition rest(mu.begin() + idx, mu.end());
  auto key = std::make_pair(lambda, rest);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int k = mu[idx];
  std::vector<int> b = beta_set(lambda);
  long total = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const int target = b[i] - k;
    if (target < 0) continue;
    if (std::find(b.begin(), b.end(), target) != b.end()) continue;
    int between = 0;
    for (int c : b)
      if (c > target && c < b[i]) ++between;
    std::vector<int> nb = b;
    nb[i] = target;
    long sub = mn_rec(from_beta(nb), mu, idx + 1, memo);
    total += (between % 2 == 0) ? sub : -sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

long mn_character(const Partition& lambda, const Partition& mu) {
  if (!is_partition(lambda) || !is_partition(mu)) throw ConfigError("mn_character: not a partition");
  if (partition_size(lambda) != partition_size(mu)) throw ConfigError("mn_character: mismatched n");
  if (partition_size(lambda) > 30) throw ConfigError("mn_character: n > 30");
  Partition sorted_mu = mu;
  std::sort(sorted_mu.rbegin(), sorted_mu.rend());
  auto& cache = mn_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  return mn_rec(lambda, sorted_mu, 0, cache.memo);
}

std::vector<std::vector<long>> mn_table(int n) {
  auto ps = partitions(n);
  std::vector<std::vector<long>> t(ps.size(), std::vector<long>(ps.size()));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j) t[i][j] = mn_character(ps[i], ps[j]);
  return t;
}

BigInt involution_count(int n) {
  if (n < 0 || n > 120) throw ConfigError("involution_count: n out of range");
  BigInt a = 1, b = 1;  // I(0), I(1)
  if (n == 0) return a;
  for (int m = 2; m <= n; ++m) {
    BigInt c = b + BigInt(m - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

double hardy_ramanujan(int n) {
  if (n < 1) throw ConfigError("hardy_ramanujan: n < 1");
  return std::exp(M_PI * std::sqrt(2.0 * n / 3.0)) / (4.0 * n * std::sqrt(3.0));
}

double roichman_bound(const Partition& lambda, int support, double q, double b) {
  const int n = partition_size(lambda);
  if (!(q > 0 && q < 1)) throw ConfigError("roichman_bound: q must lie in (0,1)");
  if (!(b > 0)) throw ConfigError("roichman_bound: b must be positive");
  if (support < 0 || support > n) throw ConfigError("roichman_bound: bad support size");
  const double base = std::max({q, double(rows(lambda)) / n, double(columns(lambda)) / n});
  return std::pow(base, b * support);
}

RowColumnBound row_col_dimension_bound(const Partition& lambda) {
  const int n = partition_size(lambda);
  const int r = rows(lambda), c = columns(lambda);
  const double lf = std::lgamma(n + 1.0);
  RowColumnBound out;
  out.log_bound = std::log(double(n)) + (1.0 - double(r + c) / n) * lf + 2.0 * n / M_E;
  out.log_intermediate = std::log(double(n)) + lf - std::lgamma(r + 1.0) - std::lgamma(c + 1.0);
  return out;
}

RoichmanCalibration check_roichman(const std::vector<int>& ns, double q, double b) {
  RoichmanCalibration cal;
  for (int n : ns) {
    auto ps = partitions(n);
    Partition id(n, 1);
    for (const auto& lam : ps) {
      const double f = static_cast<double>(mn_character(lam, id));
      for (const auto& mu : ps) {
        const double ratio = std::abs(double(mn_character(lam, mu))) / f;
        const double bound = roichman_bound(lam, support_size(mu), q, b);
        const double rel = ratio / bound;
        if (rel > cal.worst_ratio) {
          cal.worst_ratio = rel;
          cal.worst_lambda = lam;
          cal.worst_mu = mu;
        }
        if (ratio > bound * (1 + 1e-12)) cal.ok = false;
      }
    }
  }
  return cal;
}

}  // namespace chebias
