#pragma once

#include "chebias/family.hpp"
#include "chebias/zeros.hpp"

#include <map>
#include <optional>

namespace chebias {

// Modelling hypotheses attached to a model. LI forbids repeated ordinates;
// with LI off, shared ordinates merge into a single term.
struct Assumptions {
  bool ac = true, grh = true, li = true, bm = true;
  int m0 = 1;             // bound on zero multiplicities under BM
  double ord_sign = 1.0;  // sign in front of the central-order term of the mean
  std::string describe() const;
};
// Parses "li,grh,bm,ac" style lists; unknown names throw ConfigError.
Assumptions parse_assumptions(const std::string& list);

// One character of G+ in the support of t^+.
struct CharacterInput {
  std::string label;
  cplx coeff;  // t^+^(chi)
  ZeroSet zeros;
  double log_conductor = 0;
};

struct ZeroTerm {
  double gamma = 0;
  cplx order = 0;        // sum over characters of conj(coeff) * multiplicity
  double amplitude = 0;  // 2 |order| / sqrt(1/4 + gamma^2)
};

struct BiasModel {
  std::string id;
  double mean = 0;
  std::vector<ZeroTerm> terms;  // sorted by gamma, nonzero amplitudes only
  double variance = 0;
  double variance_tail = 0;      // reported truncation uncertainty of the variance
  double truncation_height = 0;  // smallest height among the zero sets used
  Assumptions assumptions;
  std::vector<CharacterInput> support;
  double tplus_norm1 = 0;  // ||t^+||_1, or an upper bound for coefficient-only models
  bool synthetic_zeros = false;
  bool dirac() const { return terms.empty(); }
};

// mean = base_mean + ord_sign * 2 Re sum conj(coeff) * central multiplicity,
// where base_mean = -<t, r>_G.
BiasModel assemble_model(double base_mean, std::vector<CharacterInput> support, const Assumptions& a,
                         double tplus_norm1 = -1);
BiasModel build_model(const ExtensionSpec& spec, const ClassFunction& t, const std::map<std::size_t, ZeroSet>& zeros,
                      const Assumptions& a);

// Support of t^+ as character indices of G+ (|coeff| > 1e-12).
std::vector<std::size_t> support_of(const ExtensionSpec& spec, const ClassFunction& t);

// Bundled label for a G+ character whose L-function is a Dirichlet L-function
// with bundled zeros (zeta, mod 3, 4, 5); empty when there is none.
std::string dirichlet_zero_label(const ExtensionSpec& spec, std::size_t chi);

// mode: "bundled" (data must exist), "synthetic", or "auto" (bundled where available).
std::map<std::size_t, ZeroSet> gather_zeros(const ExtensionSpec& spec, const std::vector<std::size_t>& chars,
                                            const std::string& mode, const std::string& dir, double synth_height,
                                            std::uint64_t seed);

double variance(const BiasModel& m);
// sum_chi |coeff|^2 B0(chi); equals variance() under LI
double variance_closed_form(const BiasModel& m);
// sum over characters and ordinates with no merging of shared ordinates
double variance_naive(const BiasModel& m);

struct BiasFactor {
  enum class Kind { Finite, PlusInfinity, MinusInfinity, Undefined };
  Kind kind = Kind::Finite;
  double value = 0;
  std::string str() const;
};
BiasFactor bias_factor(const BiasModel& m);

struct Moments {
  double W4 = 0;
  double F = 0;
  double w4_shape = 0;     // ||t^+||_1^{2/3} (sum |c|^2 log A)^{-1/3}
  double w4_constant = 0;  // W4 / w4_shape
};
Moments moments(const BiasModel& m);

cplx char_function(const BiasModel& m, double xi);
// e^{-xi^2/2} normalisation: phi(xi / sqrt(var)) e^{-i mean xi / sqrt(var)}
cplx normalized_char_function(const BiasModel& m, double eta);

struct DensityEstimate {
  double delta = 0.5;
  double error = 0;  // quadrature + tail for inversion, standard error for Monte Carlo
  bool ok = true;
  std::string note;
};
DensityEstimate density_inversion(const BiasModel& m, double precision = 1e-9, int workers = 1);
DensityEstimate density_monte_carlo(const BiasModel& m, std::uint64_t samples, std::uint64_t seed, int workers = 1);
// P[sum a_i cos(theta_i) >= V] by the same sampler
DensityEstimate tail_monte_carlo(const BiasModel& m, double V, std::uint64_t samples, std::uint64_t seed,
                                 int workers = 1);

struct GaussianDensity {
  double delta = 0.5;      // Phi(B)
  double expansion = 0.5;  // 1/2 + B / sqrt(2 pi)
  double error_shape = 0;  // |B|^3 + (||t^+||_1^2 / var)^2 + W4, constants 1
  bool certified = false;
};
GaussianDensity density_gaussian(const BiasModel& m);

// 1 - 2/B^2; refuses unless B > 0 and mean >= 4.
double density_chebyshev_bound(const BiasModel& m);

struct LargeDeviation {
  double big_sum = 0;    // sum_{a >= alpha} a
  double small_sq = 0;   // sum_{a < alpha} a^2
  std::optional<double> upper, lower;
  bool certified = false;
};
LargeDeviation large_deviation_bounds(const BiasModel& m, double V, double alpha, double a1 = 1, double a2 = 1);

struct Inequality {
  std::string name;
  double lhs = 0, rhs = 0;
  bool holds = false;
  double slack = 0;  // rhs - lhs
  bool certified = true;  // false for shape-only comparisons with constant 1
};
struct DiagnosticReport {
  double weighted_sum = 0;  // sum chi(1) |t^+^(chi)|^2
  double eta = 0;
  double variance_shape = 0;  // eta [K:Q] log rd sum chi(1)|c|^2
  std::vector<Inequality> checks;
  // certified checks only
  bool all_hold() const;
};
DiagnosticReport diagnostic_bounds(const BiasModel& m, const ExtensionSpec& spec, const ClassFunction& t);

}  // namespace chebias
