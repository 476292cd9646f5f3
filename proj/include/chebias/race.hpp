#pragma once

#include "chebias/family.hpp"
#include "chebias/zeros.hpp"

#include <cstdint>

namespace chebias {

// Frobenius classification for cyclotomic, quadratic, multiquadratic and radical specs.
bool classification_supported(const ExtensionSpec& spec);
// Ramified primes and primes dividing the defining modulus; these are not classified.
bool is_excluded_prime(const ExtensionSpec& spec, long p);
// Class of Frob_p in G+ for an unexcluded prime p.
std::size_t frobenius_class(const ExtensionSpec& spec, long p);
// Precomputed classifier (avoids repeated label lookups in the sieve loop).
class FrobeniusClassifier {
 public:
  explicit FrobeniusClassifier(const ExtensionSpec& spec);
  bool excluded(long p) const;
  std::size_t classify(long p) const;
  std::size_t num_classes() const { return nclasses_; }

 private:
  const ExtensionSpec* spec_;
  std::size_t nclasses_ = 0;
  std::vector<long> bad_;
  std::vector<std::size_t> residue_class_;  // cyclotomic: residue -> class
  std::vector<std::size_t> affine_class_;   // radical: c -> T_c, [0] id, [1] U
  long modulus_ = 0;
};

// Second classification route for radical(a, p) at l = 1 mod p: Frob is the
// identity iff X^p - a has p roots mod l.
std::size_t radical_class_by_root_count(long a, long p, long l);

struct ClassCounts {
  std::vector<double> checkpoints;
  std::vector<std::vector<std::uint64_t>> counts;  // cumulative, [checkpoint][class of G+]
  std::vector<std::uint64_t> pi;                   // pi(x) at each checkpoint
  std::vector<std::uint64_t> excluded;             // excluded primes <= x at each checkpoint
};
// `checkpoints` sorted ascending, last <= 10^9.
ClassCounts sieve_classify(const ExtensionSpec& spec, const std::vector<double>& checkpoints, int workers = 1);
// n log-uniform points from lo to hi inclusive.
std::vector<double> log_checkpoints(double lo, double hi, std::size_t n);

// Li(x) = int_2^x dt / log t by adaptive Gauss-Legendre on the log scale.
double log_integral(double x);
double log_integral_between(double a, double b);

struct RaceSeries {
  std::string family;
  std::vector<double> checkpoints;
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<double> pi_t;  // pi(x; t)
  std::vector<double> E;     // E(log x)
  double beta = 0.5;
  double t_hat_one = 0;
};
RaceSeries race_series(const ClassCounts& counts, const ClassFunction& t, double beta = 0.5,
                       const std::string& family = "");

struct EmpiricalDensity {
  double density = 0;          // share of [y_0, Y] where E > 0
  double band_lo = 0, band_hi = 0;  // min / max of the running value over the last decade
  double y0 = 0, Y = 0;
};
EmpiricalDensity empirical_density(const std::vector<double>& y, const std::vector<double>& E);
// Share of [y_0, y_k] where E > 0, for every k; the first entry is the sign of E(y_0).
std::vector<double> running_density(const std::vector<double>& y, const std::vector<double>& E);
EmpiricalDensity empirical_density(const RaceSeries& s);

// Dirichlet character by its values on residues 0..q-1.
struct DirichletCharacter {
  long q = 1;
  std::vector<cplx> values;
  bool trivial() const { return q == 1; }
};
DirichletCharacter bundled_character(const std::string& label);

struct ExplicitFormulaReport {
  std::vector<double> xs;
  std::vector<cplx> psi, formula;
  std::vector<double> residual, shape;
  double constant = 0;  // max residual / shape
  double height = 0;
};
// psi(x, chi) = sum_{p^k <= x} chi(p^k) log p against x [chi = 1] - sum_{|gamma| <= X} x^rho / rho.
// `negative` holds the zeros below the axis (as positive ordinates) for complex characters.
ExplicitFormulaReport explicit_formula_check(const DirichletCharacter& chi, const ZeroSet& positive,
                                             const ZeroSet* negative, const std::vector<double>& xs);

struct LeastPrime {
  long prime = 0;
  bool found = false;
  long searched_to = 0;
};
LeastPrime least_prime_search(const ExtensionSpec& spec, std::size_t cls, long limit = 1000000000L);

}  // namespace chebias
