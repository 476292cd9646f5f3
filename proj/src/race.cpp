#include "chebias/race.hpp"

#include "chebias/parallel.hpp"
#include "chebias/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

namespace chebias {

namespace {

bool family_is(const ExtensionSpec& s, const char* f) { return s.family == f; }

std::vector<long> distinct_prime_factors(long n) {
  std::vector<long> out;
  n = std::abs(n);
  for (long f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool classification_supported(const ExtensionSpec& spec) {
  return !spec.embedding && (family_is(spec, "cyclotomic") || family_is(spec, "quadratic") ||
                             family_is(spec, "multiquadratic") || family_is(spec, "radical"));
}

FrobeniusClassifier::FrobeniusClassifier(const ExtensionSpec& spec) : spec_(&spec) {
  if (!classification_supported(spec)) throw ConfigError("Frobenius classification unsupported for family '" + spec.family + "'");
  const auto& g = spec.gplus();
  nclasses_ = g.num_classes();
  if (family_is(spec, "cyclotomic")) {
    modulus_ = spec.params.at(0);
    bad_ = distinct_prime_factors(modulus_);
    residue_class_.assign(static_cast<std::size_t>(modulus_), static_cast<std::size_t>(-1));
    std::size_t idx = 0;
    for (long r = 1; r < modulus_; ++r)
      if (gcd_long(r, modulus_) == 1) residue_class_[r] = g.class_of[idx++];
  } else if (family_is(spec, "quadratic")) {
    modulus_ = spec.params.at(0);
    bad_ = distinct_prime_factors(modulus_);
  } else if (family_is(spec, "multiquadratic")) {
    bad_ = spec.params;
    if (spec.is_ramified(2)) bad_.push_back(2);
  } else {
    const long a = spec.params.at(0), p = spec.params.at(1);
    modulus_ = p;
    bad_ = {a, p};
    affine_class_.assign(static_cast<std::size_t>(p), 0);
    affine_class_[0] = g.find_class("id");
    affine_class_[1] = g.find_class("U");
    for (long c = 2; c < p; ++c) affine_class_[c] = g.find_class("T" + std::to_string(c));
  }
  std::sort(bad_.begin(), bad_.end());
}

bool FrobeniusClassifier::excluded(long p) const { return std::binary_search(bad_.begin(), bad_.end(), p); }

std::size_t FrobeniusClassifier::classify(long p) const {
  if (excluded(p)) throw ConfigError("prime " + std::to_string(p) + " is excluded from classification");
  const auto& s = *spec_;
  if (family_is(s, "cyclotomic")) return residue_class_[p % modulus_];
  if (family_is(s, "quadratic")) return kronecker(modulus_, p) == 1 ? 0 : 1;
  if (family_is(s, "multiquadratic")) {
    // Frob_p acts on sqrt(p_j) by the Kronecker symbol (p_j | p)
    const std::size_t m = s.params.size();
    std::size_t idx = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (kronecker(s.params[j], p) == -1) idx |= std::size_t(1) << (m - 1 - j);
    return idx;  // element index = class index in an abelian group
  }
  const long a = s.params[0];
  const long c = p % modulus_;
  if (c != 1) return affine_class_[c];
  return mod_pow(a % p, (p - 1) / modulus_, p) == 1 ? affine_class_[0] : affine_class_[1];
}

bool is_excluded_prime(const ExtensionSpec& spec, long p) { return FrobeniusClassifier(spec).excluded(p); }

std::size_t frobenius_class(const ExtensionSpec& spec, long p) { return FrobeniusClassifier(spec).classify(p); }

std::size_t radical_class_by_root_count(long a, long p, long l) {
  if (l % p != 1) throw ConfigError("root-count route needs l = 1 mod p");
  // a = g^m; X^p = a has p roots when p | m and none otherwise (baby-step giant-step for m)
  const long g = primitive_root(l);
  const long n = l - 1;
  const long s = static_cast<long>(std::ceil(std::sqrt(double(n))));
  std::unordered_map<long, long> baby;
  long cur = 1;
  for (long j = 0; j < s; ++j) {
    baby.emplace(cur, j);
    cur = static_cast<long>(static_cast<__int128>(cur) * g % l);
  }
  const long giant = mod_pow(mod_pow(g, s, l), l - 2, l);  // g^{-s}
  long y = ((a % l) + l) % l;
  for (long i = 0; i <= s; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) {
      const long m = i * s + it->second;
      const long roots = (m % p == 0) ? p : 0;
      return roots == p ? 0 : 1;  // 0: identity, 1: U
    }
    y = static_cast<long>(static_cast<__int128>(y) * giant % l);
  }
  throw InvariantError("discrete logarithm not found");
}

std::vector<double> log_checkpoints(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0) || !(hi > lo)) throw ConfigError("log_checkpoints: need n >= 2 and 0 < lo < hi");
  std::vector<double> x(n);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (std::size_t k = 0; k < n; ++k) x[k] = std::exp(l0 + (l1 - l0) * double(k) / double(n - 1));
  x.front() = lo;
  x.back() = hi;
  return x;
}

ClassCounts sieve_classify(const ExtensionSpec& spec, const std::vector<double>& checkpoints, int workers) {
  if (checkpoints.empty()) throw ConfigError("sieve_classify: no checkpoints");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) throw ConfigError("checkpoints must be sorted");
  if (checkpoints.back() > double(kSieveLimit)) throw ConfigError("x_max above 10^9");
  const FrobeniusClassifier cls(spec);
  const std::size_t nc = cls.num_classes();
  const std::size_t nk = checkpoints.size();
  const auto x_max = static_cast<std::uint64_t>(std::floor(checkpoints.back()));

  struct Segment {
    std::size_t k;
    std::vector<std::uint64_t> counts;
    std::uint64_t pi = 0, excluded = 0;
  };
  const std::size_t nblocks = static_cast<std::size_t>(x_max / kSieveSpan + 1);
  std::vector<std::vector<Segment>> per_block(nblocks);
  std::vector<std::vector<std::uint64_t>> delta(nk, std::vector<std::uint64_t>(nc, 0));
  std::vector<std::uint64_t> dpi(nk, 0), dex(nk, 0);

  segmented_sieve(
      x_max, workers,
      [&](std::size_t b, const std::vector<std::uint64_t>& primes) {
        std::vector<Segment> segs;
        std::size_t k = 0;
        for (std::uint64_t p : primes) {
          if (segs.empty() || double(p) > checkpoints[k]) {
            k = static_cast<std::size_t>(std::lower_bound(checkpoints.begin(), checkpoints.end(), double(p)) -
                                         checkpoints.begin());
            if (k >= nk) break;
            if (segs.empty() || segs.back().k != k) segs.push_back({k, std::vector<std::uint64_t>(nc, 0), 0, 0});
          }
          auto& s = segs.back();
          ++s.pi;
          const long lp = static_cast<long>(p);
          if (cls.excluded(lp))
            ++s.excluded;
          else
            ++s.counts[cls.classify(lp)];
        }
        per_block[b] = std::move(segs);
      },
      [&](std::size_t b) {
        for (const auto& s : per_block[b]) {
          for (std::size_t c = 0; c < nc; ++c) delta[s.k][c] += s.counts[c];
          dpi[s.k] += s.pi;
          dex[s.k] += s.excluded;
        }
        per_block[b].clear();
        per_block[b].shrink_to_fit();
      });

  ClassCounts out;
  out.checkpoints = checkpoints;
  out.counts.assign(nk, std::vector<std::uint64_t>(nc, 0));
  out.pi.assign(nk, 0);
  out.excluded.assign(nk, 0);
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t c = 0; c < nc; ++c) out.counts[k][c] = (k ? out.counts[k - 1][c] : 0) + delta[k][c];
    out.pi[k] = (k ? out.pi[k - 1] : 0) + dpi[k];
    out.excluded[k] = (k ? out.excluded[k - 1] : 0) + dex[k];
  }
  return out;
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
struct GaussLegendre {
  static constexpr int n = 12;
  std::array<double, n> x{}, w{};
  GaussLegendre() {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (z * p1 - p0) / (z * z - 1);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) {
          x[i] = z;
          w[i] = 2 / ((1 - z * z) * dp * dp);
          break;
        }
      }
    }
  }
};

const GaussLegendre& gl() {
  static const GaussLegendre g;
  return g;
}

// int_{u0}^{u1} e^u / u du
double gl_panel(double u0, double u1) {
  const auto& g = gl();
  const double c = 0.5 * (u0 + u1), h = 0.5 * (u1 - u0);
  double s = 0;
  for (int i = 0; i < GaussLegendre::n; ++i) {
    const double u = c + h * g.x[i];
    s += g.w[i] * std::exp(u) / u;
  }
  return s * h;
}

double adaptive(double u0, double u1, double whole, int depth) {
  const double m = 0.5 * (u0 + u1);
  const double left = gl_panel(u0, m), right = gl_panel(m, u1);
  if (depth > 40 || std::abs(left + right - whole) <= 1e-13 * std::abs(left + right)) return left + right;
  return adaptive(u0, m, left, depth + 1) + adaptive(m, u1, right, depth + 1);
}

}  // namespace

double log_integral_between(double a, double b) {
  if (!(a > 1) || !(b > 1)) throw ConfigError("log_integral: limits must exceed 1");
  if (a == b) return 0;
  if (a > b) return -log_integral_between(b, a);
  const double u0 = std::log(a), u1 = std::log(b);
  // unit-length panels in u keep the integrand well resolved
  double s = 0;
  const int panels = std::max(1, static_cast<int>(std::ceil(u1 - u0)));
  for (int i = 0; i < panels; ++i) {
    const double p0 = u0 + (u1 - u0) * i / panels, p1 = u0 + (u1 - u0) * (i + 1) / panels;
    s += adaptive(p0, p1, gl_panel(p0, p1), 0);
  }
  return s;
}

double log_integral(double x) { return log_integral_between(2.0, x); }

RaceSeries race_series(const ClassCounts& counts, const ClassFunction& t, double beta, const std::string& family) {
  const auto& g = *t.group();
  if (counts.checkpoints.size() < 2) throw ConfigError("race_series: need at least 2 checkpoints");
  if (!counts.counts.empty() && counts.counts[0].size() != g.num_classes())
    throw ConfigError("race_series: class function lives on another group");
  RaceSeries s;
  s.family = family;
  s.beta = beta;
  s.checkpoints = counts.checkpoints;
  s.counts = counts.counts;
  s.t_hat_one = fourier_transform(t)[static_cast<Eigen::Index>(g.trivial_character())].real();
  double li = 0, prev = 2.0;
  for (std::size_t k = 0; k < counts.checkpoints.size(); ++k) {
    const double x = counts.checkpoints[k];
    double pit = 0;
    for (std::size_t c = 0; c < g.num_classes(); ++c) pit += t[c].real() * double(counts.counts[k][c]);
    if (x > 2) {
      li += log_integral_between(prev, x);
      prev = x;
    }
    const double y = std::log(x);
    s.pi_t.push_back(pit);
    s.E.push_back(y * std::exp(-beta * y) * (pit - s.t_hat_one * li));
  }
  return s;
}

std::vector<double> running_density(const std::vector<double>& y, const std::vector<double>& E) {
  if (y.size() != E.size()) throw ConfigError("running_density: size mismatch");
  std::vector<double> running(y.size(), 0);
  if (y.empty()) return running;
  running[0] = E[0] > 0 ? 1 : 0;
  double pos = 0;
  for (std::size_t k = 0; k + 1 < y.size(); ++k) {
    const double h = y[k + 1] - y[k];
    const double a = E[k], b = E[k + 1];
    if (a > 0 && b > 0)
      pos += h;
    else if (a > 0 && b <= 0)
      pos += h * a / (a - b);
    else if (a <= 0 && b > 0)
      pos += h * b / (b - a);
    running[k + 1] = pos / (y[k + 1] - y.front());
  }
  return running;
}

EmpiricalDensity empirical_density(const std::vector<double>& y, const std::vector<double>& E) {
  if (y.size() != E.size()) throw ConfigError("empirical_density: size mismatch");
  if (y.size() < 100) throw ConfigError("empirical_density: need at least 100 checkpoints");
  EmpiricalDensity d;
  d.y0 = y.front();
  d.Y = y.back();
  const auto running = running_density(y, E);
  d.density = running.back();
  d.band_lo = d.band_hi = d.density;
  for (std::size_t k = 1; k < y.size(); ++k) {
    if (y[k] < d.Y - std::log(10.0)) continue;
    d.band_lo = std::min(d.band_lo, running[k]);
    d.band_hi = std::max(d.band_hi, running[k]);
  }
  return d;
}

EmpiricalDensity empirical_density(const RaceSeries& s) {
  std::vector<double> y;
  for (double x : s.checkpoints) y.push_back(std::log(x));
  return empirical_density(y, s.E);
}

DirichletCharacter bundled_character(const std::string& label) {
  const cplx i(0, 1);
  if (label == "zeta") return {1, {1.0}};
  if (label == "chi_3_2") return {3, {0.0, 1.0, -1.0}};
  if (label == "chi_4_3") return {4, {0.0, 1.0, 0.0, -1.0}};
  if (label == "chi_5_4") return {5, {0.0, 1.0, -1.0, -1.0, 1.0}};
  if (label == "chi_5_2") return {5, {0.0, 1.0, i, -i, -1.0}};
  if (label == "chi_5_3") return {5, {0.0, 1.0, -i, i, -1.0}};
  throw ConfigError("no bundled Dirichlet character '" + label + "'");
}

ExplicitFormulaReport explicit_formula_check(const DirichletCharacter& chi, const ZeroSet& positive,
                                             const ZeroSet* negative, const std::vector<double>& xs) {
  if (positive.height < 10) throw DataMissingError("explicit formula needs zeros up to height >= 10");
  ExplicitFormulaReport r;
  r.xs = xs;
  std::sort(r.xs.begin(), r.xs.end());
  r.height = negative ? std::min(positive.height, negative->height) : positive.height;
  const double xmax = r.xs.empty() ? 0 : r.xs.back();
  if (xmax > 1e8) throw ConfigError("explicit_formula_check: x above 10^8");
  // prime powers with weights chi(p^k) log p
  std::vector<std::pair<double, cplx>> pp;
  if (xmax >= 2) {
    for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(xmax))) {
      const double lp = std::log(double(p));
      for (std::uint64_t q = p;; q *= p) {
        const cplx v = chi.trivial() ? cplx(1.0) : chi.values[q % chi.q];
        pp.push_back({double(q), v * lp});
        if (q > static_cast<std::uint64_t>(xmax) / p) break;
      }
    }
  }
  std::sort(pp.begin(), pp.end(), [](auto& a, auto& b) { return a.first < b.first; });
  const bool real_char = !negative;
  std::size_t idx = 0;
  cplx psi = 0;
  for (double x : r.xs) {
    while (idx < pp.size() && pp[idx].first <= x) psi += pp[idx++].second;
    cplx f = chi.trivial() ? cplx(x) : cplx(0);
    if (x >= 2) {
      const double lx = std::log(x);
      auto add = [&](const ZeroSet& z, double sign) {
        for (std::size_t k = 0; k < z.size(); ++k) {
          const cplx rho(0.5, sign * z.ordinates[k]);
          const cplx term = std::exp(rho * lx) / rho * double(z.multiplicities[k]);
          f -= real_char ? cplx(2.0 * term.real(), 0) : term;
        }
        if (sign > 0) f -= std::sqrt(x) / 0.5 * double(z.central_multiplicity);
      };
      add(positive, 1.0);
      if (negative) add(*negative, -1.0);
    } else {
      f = 0;
    }
    r.psi.push_back(psi);
    r.formula.push_back(f);
    const double res = std::abs(psi - f);
    const double X = r.height;
    const double lx = std::log(std::max(x, 2.0));
    const double shape = lx + (x / X) * std::pow(std::log(std::max(x, 2.0) * X), 2);
    r.residual.push_back(res);
    r.shape.push_back(shape);
    r.constant = std::max(r.constant, res / shape);
  }
  return r;
}

LeastPrime least_prime_search(const ExtensionSpec& spec, std::size_t cls, long limit) {
  const FrobeniusClassifier classifier(spec);
  if (cls >= classifier.num_classes()) throw ConfigError("class index out of range");
  if (limit > static_cast<long>(kSieveLimit)) throw ConfigError("least_prime_search: limit above 10^9");
  LeastPrime out;
  for (long bound = 10000;; bound = std::min(limit, bound * 10)) {
    const auto x = static_cast<std::uint64_t>(bound);
    if (bound <= 100000000L) {
      for (std::uint64_t p : primes_up_to(x)) {
        const long lp = static_cast<long>(p);
        if (!classifier.excluded(lp) && classifier.classify(lp) == cls) {
          out.prime = lp;
          out.found = true;
          out.searched_to = lp;
          return out;
        }
      }
    } else {
      long best = 0;
      const std::size_t nblocks = static_cast<std::size_t>(x / kSieveSpan + 1);
      std::vector<long> hit(nblocks, 0);
      segmented_sieve(
          x, 1,
          [&](std::size_t b, const std::vector<std::uint64_t>& primes) {
            for (std::uint64_t p : primes) {
              const long lp = static_cast<long>(p);
              if (!classifier.excluded(lp) && classifier.classify(lp) == cls) {
                hit[b] = lp;
                return;
              }
            }
          },
          [&](std::size_t b) {
            if (!best && hit[b]) best = hit[b];
          });
      if (best) {
        out.prime = best;
        out.found = true;
        out.searched_to = best;
        return out;
      }
    }
    out.searched_to = bound;
    if (bound >= limit) return out;
  }
}

}  // namespace chebias
