#pragma once

#include "chebias/embedding.hpp"

#include <iosfwd>
#include <optional>

namespace chebias {

// Ramification data at one prime: either an inertia filtration G_0 >= G_1 >= ...
// given as element sets of G+, or a precomputed exponent per character.
struct RamifiedPrime {
  long prime = 0;
  std::vector<std::vector<std::size_t>> filtration;
  std::vector<long> exponents;  // one per character of G+, used when filtration is empty
  bool approximate = false;     // exponents not pinned down individually
};

struct ExtensionSpec {
  std::string family;  // radical, multiquadratic, hcf, kluners, cyclotomic, quadratic, custom
  std::vector<long> params;
  GroupPtr group_plus;                          // Gal(L/Q)
  std::optional<SubgroupEmbedding> embedding;   // Gal(L/K) <= Gal(L/Q) for relative specs
  std::vector<RamifiedPrime> ramified;
  double log_disc = 0;       // log d_L
  std::vector<std::pair<long, long>> disc_factors;  // exact (p, v_p(d_L)) when known
  bool disc_is_bound = false;
  long degree_k = 1;         // [K:Q]
  double log_dk = 0;         // log d_K

  const FiniteGroupModel& gplus() const { return *group_plus; }
  const GroupPtr& group() const { return embedding ? embedding->sub() : group_plus; }
  double degree_l() const { return static_cast<double>(group_plus->order); }
  double log_rd() const { return log_disc / degree_l(); }
  const RamifiedPrime* find_prime(long p) const;
  bool is_ramified(long p) const { return find_prime(p) != nullptr; }
};

// Subgroup closure and monotonicity of a filtration; throws InvariantError.
void validate_filtration(const FiniteGroupModel& g, const RamifiedPrime& rp);

// n(chi, p) for a character of G+; 0 at unramified primes.
long conductor_exponent(const ExtensionSpec& spec, long prime, std::size_t chi);
// log A(chi) = sum_p n(chi, p) log p for characters of G+ (base field Q).
double global_log_conductor(const ExtensionSpec& spec, std::size_t chi);
// sum_chi chi(1) n(chi, p), to compare with v_p(d_L)
long conductor_discriminant_sum(const ExtensionSpec& spec, long prime);
// v_p(d_L) implied by the stored discriminant data, when the spec stores it exactly.
long disc_valuation(const ExtensionSpec& spec, long prime);
// Throws InvariantError if the conductor-discriminant identity fails at any stored prime.
void verify_spec(const ExtensionSpec& spec);

// a^{p-1} mod p^2 != 1
bool wieferich_ok(long a, long p);
ExtensionSpec radical_extension(long a, long p);
ExtensionSpec multiquadratic_extension(const std::vector<long>& primes);
ExtensionSpec cyclotomic_extension(long q);
ExtensionSpec quadratic_extension(long d);
// Class group structure may be empty (trivial) or cyclic orders in any order.
ExtensionSpec hilbert_class_field(long d, std::vector<long> class_group);
ExtensionSpec hilbert_class_field(long d);

bool is_fundamental_discriminant(long d);
// disc of Q(sqrt d) for squarefree d != 1
long field_discriminant(long squarefree_d);
long kronecker(long a, long n);

struct QuadraticForm {
  long a, b, c;
  bool operator==(const QuadraticForm&) const = default;
};
QuadraticForm reduce_form(QuadraticForm f);
QuadraticForm compose_forms(const QuadraticForm& f, const QuadraticForm& g);
std::vector<QuadraticForm> reduced_forms(long d);
// Invariant factors of the form class group of a negative fundamental discriminant.
std::vector<long> class_group_imaginary(long d);

struct KlunersReport {
  long ell = 0, d = 0, p = 0, q = 0;
  double log_disc_bound = 0;  // l log|disc Q(sqrt d)| + 2 (l - 1) log(pq)
  ExtensionSpec spec;         // dihedral(l), disc stored as a bound
};
KlunersReport dihedral_kluners(long ell, long d, long p, long q);

struct ConductorBounds {
  double coarse_lower = 0, coarse_upper = 0;
  double refined_lower = 0, refined_upper = 0;
  double lower = 0, upper = 0;  // tightest of the two pairs
  double m_chi = 0;
  bool skipped = false;          // trivial character
  bool lower_conditional = true; // the coarse lower bound over Q needs AC
};
ConductorBounds conductor_bounds(const ExtensionSpec& spec, std::size_t chi);

// Implied constants are reported as 1; every bound here is shape-only.
struct MurtyBounds {
  double first = 0;   // (log d_L)^2 / |C|
  double second = 0;  // lambda(t) form with the squarefree l-sum
  double third = 0;   // (log d_L)^2/|C+| + (log d_L)^{4/3} |G|^{2/3} / |C|^{4/3}
  int ell_max = 0;
  bool shape_only = true;
};
MurtyBounds murty_least_prime_bound(const ExtensionSpec& spec, const ClassFunction& t, std::size_t cls);
MurtyBounds murty_least_prime_bound(const ExtensionSpec& spec, std::size_t cls);

// Shape of |pi(x;t) - t^(1) Li(x)| with constants 1.
double chebotarev_error_bound(const ExtensionSpec& spec, const ClassFunction& t, double x);

// t+ when the spec is relative, t itself otherwise.
ClassFunction lift(const ExtensionSpec& spec, const ClassFunction& t);
std::size_t lift_class(const ExtensionSpec& spec, std::size_t cls);

// Dispatch: radical a p | multiquadratic p1..pm | cyclotomic q | quadratic d | hcf d [orders...]
ExtensionSpec catalog_spec(const std::string& family, const std::vector<long>& params);

void write_spec(std::ostream& out, const ExtensionSpec& spec);
ExtensionSpec read_spec(std::istream& in);
void write_conductor_csv(std::ostream& out, const ExtensionSpec& spec);

}  // namespace chebias
