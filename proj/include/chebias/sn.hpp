#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chebias {

using BigInt = boost::multiprecision::cpp_int;

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

int partition_size(const Partition& p);
int rows(const Partition& p);     // number of parts
int columns(const Partition& p);  // largest part
std::string partition_label(const Partition& p);  // "3.2.1"
Partition parse_partition(const std::string& label);
bool is_partition(const Partition& p);

// All partitions of n in lexicographic order of their part sequences, so that
// (1,...,1) comes first and (n) last.
std::vector<Partition> partitions(int n);

// p(n) by the pentagonal-number recurrence, exact for n <= 400.
std::uint64_t partition_count(int n);
std::vector<std::uint64_t> partition_counts(int n);

BigInt factorial(int n);
BigInt hook_dimension(const Partition& lambda);
// Size of the conjugacy class of cycle type mu in S_n.
BigInt class_size(const Partition& mu);
// Number of fixed points moved: n minus the number of parts equal to 1.
int support_size(const Partition& mu);
// Cycle type of the k-th power of a permutation of cycle type mu.
Partition power_cycle_type(const Partition& mu, long k);

// chi_lambda(C_mu) by the Murnaghan-Nakayama rule.
long mn_character(const Partition& lambda, const Partition& mu);
// Full integer table, rows and columns indexed by partitions(n).
std::vector<std::vector<long>> mn_table(int n);

BigInt involution_count(int n);
double hardy_ramanujan(int n);

double roichman_bound(const Partition& lambda, int support, double q, double b);

struct RowColumnBound {
  double log_bound;         // log of n * n!^{1-(r+c)/n} * e^{2n/e}
  double log_intermediate;  // log of n * n! / (r! c!)
};
RowColumnBound row_col_dimension_bound(const Partition& lambda);

struct RoichmanCalibration {
  bool ok = true;
  double worst_ratio = 0;  // max over (lambda, mu) of |chi|/f divided by the bound
  Partition worst_lambda, worst_mu;
};
// Exhaustive dominance check of the bound against exact character ratios.
RoichmanCalibration check_roichman(const std::vector<int>& ns, double q, double b);

// Default constants found admissible by check_roichman for n in {5,6,7}.
inline constexpr double kRoichmanQ = 0.75;
inline constexpr double kRoichmanB = 0.25;

}  // namespace chebias
