#include "chebias/bias.hpp"

#include "chebias/bessel.hpp"
#include "chebias/embedding.hpp"
#include "chebias/parallel.hpp"
#include "chebias/race.hpp"
#include "chebias/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace chebias {

std::string Assumptions::describe() const {
  std::string s;
  auto add = [&](bool on, const std::string& name) {
    if (!on) return;
    if (!s.empty()) s += ",";
    s += name;
  };
  add(ac, "AC");
  add(grh, "GRH");
  add(li, "LI");
  add(bm, "BM(M0=" + std::to_string(m0) + ")");
  if (ord_sign < 0) add(true, "ord-sign=-1");
  return s.empty() ? "none" : s;
}

Assumptions parse_assumptions(const std::string& list) {
  Assumptions a;
  a.ac = a.grh = a.li = a.bm = false;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::string low;
    for (char c : item) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low.empty() || low == "none") continue;
    if (low == "ac") a.ac = true;
    else if (low == "grh") a.grh = true;
    else if (low == "li") a.li = true;
    else if (low == "bm") a.bm = true;
    else if (low.rfind("m0=", 0) == 0) {
      try {
        a.m0 = std::stoi(low.substr(3));
      } catch (const std::logic_error&) {
        throw ConfigError("bad M0 value in '" + item + "'");
      }
      if (a.m0 < 1) throw ConfigError("M0 must be at least 1");
      a.bm = true;
    } else if (low == "ord-sign=-1") a.ord_sign = -1;
    else if (low == "ord-sign=1" || low == "ord-sign=+1") a.ord_sign = 1;
    else throw ConfigError("unknown assumption '" + item + "'");
  }
  // LI is only meaningful on the critical line
  if (a.li) a.grh = true;
  return a;
}

namespace {

struct RawZero {
  double gamma;
  cplx order;
  std::size_t chi;
};

}  // namespace

BiasModel assemble_model(double base_mean, std::vector<CharacterInput> support, const Assumptions& a,
                         double tplus_norm1) {
  BiasModel m;
  m.assumptions = a;
  double central = 0;
  double norm1 = 0;
  std::vector<RawZero> raw;
  m.truncation_height = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& ci = support[i];
    validate_zeros(ci.zeros);
    if (a.bm)
      for (int mult : ci.zeros.multiplicities)
        if (mult > a.m0) throw ConfigError(ci.label + ": multiplicity above M0 under BM");
    central += (std::conj(ci.coeff) * double(ci.zeros.central_multiplicity)).real();
    norm1 += std::abs(ci.coeff);
    for (std::size_t k = 0; k < ci.zeros.size(); ++k)
      raw.push_back({ci.zeros.ordinates[k], std::conj(ci.coeff) * double(ci.zeros.multiplicities[k]), i});
    m.truncation_height = std::min(m.truncation_height, ci.zeros.height);
    m.variance_tail += std::norm(ci.coeff) * b_sums(ci.zeros).tail;
    m.synthetic_zeros = m.synthetic_zeros || ci.zeros.synthetic;
  }
  if (support.empty()) m.truncation_height = 0;
  m.mean = base_mean + a.ord_sign * 2.0 * central;
  std::stable_sort(raw.begin(), raw.end(), [](const RawZero& x, const RawZero& y) { return x.gamma < y.gamma; });
  double max_order = 0;
  for (const auto& r : raw) max_order = std::max(max_order, std::abs(r.order));
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i + 1;
    cplx order = raw[i].order;
    while (j < raw.size() && raw[j].gamma - raw[i].gamma <= 1e-9) {
      if (a.li)
        throw ConfigError("LI assumed but characters " + support[raw[i].chi].label + " and " +
                          support[raw[j].chi].label + " share an ordinate");
      order += raw[j].order;
      ++j;
    }
    const double gamma = raw[i].gamma;
    if (std::abs(order) > 1e-12 * std::max(1.0, max_order))
      m.terms.push_back({gamma, order, 2 * std::abs(order) / std::sqrt(0.25 + gamma * gamma)});
    i = j;
  }
  m.variance = variance(m);
  m.tplus_norm1 = tplus_norm1 >= 0 ? tplus_norm1 : norm1;
  m.support = std::move(support);
  return m;
}

std::vector<std::size_t> support_of(const ExtensionSpec& spec, const ClassFunction& t) {
  const Eigen::VectorXcd c = fourier_transform(lift(spec, t));
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) > 1e-12) out.push_back(static_cast<std::size_t>(i));
  return out;
}

BiasModel build_model(const ExtensionSpec& spec, const ClassFunction& t, const std::map<std::size_t, ZeroSet>& zeros,
                      const Assumptions& a) {
  if (t.group() != spec.group()) throw ConfigError("class function lives on another group");
  const ClassFunction tp = lift(spec, t);
  const Eigen::VectorXcd c = fourier_transform(tp);
  const auto& gp = spec.gplus();
  std::vector<CharacterInput> support;
  for (std::size_t chi : support_of(spec, t)) {
    auto it = zeros.find(chi);
    if (it == zeros.end()) throw DataMissingError("no zeros supplied for character " + gp.char_labels[chi]);
    if (a.li) check_li(it->second, fs_classify(gp, chi));
    support.push_back({gp.char_labels[chi], c[static_cast<Eigen::Index>(chi)], it->second,
                       global_log_conductor(spec, chi)});
  }
  const double base_mean = -inner(t, root_count(spec.group(), 2)).real();
  BiasModel m = assemble_model(base_mean, std::move(support), a, norms(tp).norm1);
  m.id = spec.family;
  for (long p : spec.params) m.id += "_" + std::to_string(p);
  return m;
}

std::string dirichlet_zero_label(const ExtensionSpec& spec, std::size_t chi) {
  const auto& g = spec.gplus();
  if (chi == g.trivial_character()) return "zeta";
  if (!classification_supported(spec)) return "";
  if (std::abs(g.table(static_cast<Eigen::Index>(chi), 0) - 1.0) > 1e-9) return "";
  const FrobeniusClassifier cls(spec);
  static const char* const labels[] = {"chi_3_2", "chi_4_3", "chi_5_4", "chi_5_2", "chi_5_3"};
  const auto primes = primes_up_to(300);
  for (const char* label : labels) {
    const DirichletCharacter psi = bundled_character(label);
    bool match = true;
    for (std::uint64_t up : primes) {
      const long p = static_cast<long>(up);
      if (cls.excluded(p) || psi.q % p == 0) continue;
      const cplx v = g.table(static_cast<Eigen::Index>(chi), static_cast<Eigen::Index>(cls.classify(p)));
      if (std::abs(v - psi.values[p % psi.q]) > 1e-9) {
        match = false;
        break;
      }
    }
    if (match) return label;
  }
  return "";
}

std::map<std::size_t, ZeroSet> gather_zeros(const ExtensionSpec& spec, const std::vector<std::size_t>& chars,
                                            const std::string& mode, const std::string& dir, double synth_height,
                                            std::uint64_t seed) {
  if (mode != "bundled" && mode != "synthetic" && mode != "auto") throw ConfigError("unknown zero mode '" + mode + "'");
  const auto& g = spec.gplus();
  std::map<std::size_t, ZeroSet> out;
  auto load = [&](const std::string& label) -> std::optional<ZeroSet> {
    for (const auto& d : {resolve_cache_dir(dir), bundled_zero_dir()}) {
      try {
        return load_label(d, label);
      } catch (const DataMissingError&) {
      }
    }
    return std::nullopt;
  };
  for (std::size_t chi : chars) {
    const std::string label = mode == "synthetic" ? "" : dirichlet_zero_label(spec, chi);
    if (!label.empty()) {
      if (auto z = load(label)) {
        out.emplace(chi, std::move(*z));
        continue;
      }
    }
    if (mode == "bundled")
      throw DataMissingError("no bundled zeros for character " + g.char_labels[chi] +
                             (label.empty() ? "" : " (" + label + ")"));
    const double log_a = global_log_conductor(spec, chi);
    const int degree = static_cast<int>(std::lround(g.table(static_cast<Eigen::Index>(chi), 0).real()));
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (chi + 1);
    s = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9ULL;
    s = (s ^ (s >> 27)) * 0x94D049BB133111EBULL;
    s ^= s >> 31;
    ZeroSet z = synthesize_zeros(log_a, degree, synth_height, s);
    z.label = "synthetic:" + g.char_labels[chi];
    out.emplace(chi, std::move(z));
  }
  return out;
}

double variance(const BiasModel& m) {
  double v = 0;
  for (const auto& t : m.terms) v += t.amplitude * t.amplitude / 2;
  return v;
}

double variance_closed_form(const BiasModel& m) {
  double v = 0;
  for (const auto& c : m.support) v += std::norm(c.coeff) * b_sums(c.zeros).B0;
  return v;
}

double variance_naive(const BiasModel& m) {
  double v = 0;
  for (const auto& c : m.support)
    for (std::size_t k = 0; k < c.zeros.size(); ++k) {
      const double g = c.zeros.ordinates[k];
      v += 2 * std::norm(c.coeff * double(c.zeros.multiplicities[k])) / (0.25 + g * g);
    }
  return v;
}

std::string BiasFactor::str() const {
  switch (kind) {
    case Kind::PlusInfinity: return "+inf";
    case Kind::MinusInfinity: return "-inf";
    case Kind::Undefined: return "undefined";
    default: break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

BiasFactor bias_factor(const BiasModel& m) {
  BiasFactor b;
  if (m.variance > 0) {
    b.value = m.mean / std::sqrt(m.variance);
    return b;
  }
  if (m.mean > 0) b.kind = BiasFactor::Kind::PlusInfinity, b.value = std::numeric_limits<double>::infinity();
  else if (m.mean < 0) b.kind = BiasFactor::Kind::MinusInfinity, b.value = -std::numeric_limits<double>::infinity();
  else b.kind = BiasFactor::Kind::Undefined, b.value = std::numeric_limits<double>::quiet_NaN();
  return b;
}

Moments moments(const BiasModel& m) {
  if (m.support.empty()) throw ConfigError("moments: empty support");
  double s2 = 0, s4 = 0, cmax = 0;
  for (const auto& c : m.support) {
    const double a2 = std::norm(c.coeff);
    s2 += a2 * c.log_conductor;
    s4 += a2 * a2 * c.log_conductor;
    cmax = std::max(cmax, std::abs(c.coeff));
  }
  Moments r;
  r.W4 = s2 > 0 ? s4 / (s2 * s2) : std::numeric_limits<double>::infinity();
  r.F = cmax > 0 ? std::sqrt(m.variance) / cmax : 0;
  r.w4_shape = s2 > 0 ? std::pow(m.tplus_norm1, 2.0 / 3) * std::pow(s2, -1.0 / 3) : 0;
  r.w4_constant = r.w4_shape > 0 ? r.W4 / r.w4_shape : std::numeric_limits<double>::infinity();
  return r;
}

namespace {

double bessel_product(const BiasModel& m, double xi) {
  double p = 1;
  for (const auto& t : m.terms) p *= bessel_j0(t.amplitude * xi);
  return p;
}

// Decreasing majorant of |J0(x)|: e^{-x^2/4} below the first zero (from the
// product formula), then sqrt(2/(pi x)), taking the running supremum.
double j0_majorant(double x) {
  constexpr double kSqrt = 0.5150929;  // sqrt(2 / (pi 2.4))
  static const double x_star = 2 * std::sqrt(-std::log(kSqrt));
  if (x <= x_star) return std::exp(-x * x / 4);
  if (x <= 2.4) return kSqrt;
  return std::min(kSqrt, std::sqrt(2 / (std::numbers::pi * x)));
}

struct Envelope {
  double value;
  int n_eff;  // factors on the sqrt branch
};

Envelope envelope(const BiasModel& m, double xi) {
  double log_e = 0;
  int n = 0;
  for (const auto& t : m.terms) {
    const double x = t.amplitude * xi;
    log_e += std::log(j0_majorant(x));
    if (x > 2.4) ++n;
  }
  return {std::exp(log_e), n};
}

double tail_bound(const BiasModel& m, double xi) {
  const Envelope e = envelope(m, xi);
  if (e.n_eff == 0) return std::numeric_limits<double>::infinity();
  return e.value * 2.0 / (std::numbers::pi * e.n_eff);
}

struct PanelResult {
  double value = 0, error = 0;
};

PanelResult romberg(const std::function<double(double)>& f, double a, double b, double tol) {
  constexpr int kMax = 10;
  std::array<double, kMax> prev{}, cur{};
  double h = b - a;
  const double fa = f(a), fb = f(b);
  prev[0] = 0.5 * h * (fa + fb);
  double abs_sum = 0.5 * (std::abs(fa) + std::abs(fb));
  PanelResult r{prev[0], std::abs(prev[0])};
  for (int k = 1; k < kMax; ++k) {
    h /= 2;
    double s = 0;
    const long n = 1L << (k - 1);
    for (long i = 0; i < n; ++i) {
      const double v = f(a + (2 * i + 1) * h);
      s += v;
      abs_sum += std::abs(v);
    }
    cur[0] = 0.5 * prev[0] + h * s;
    // rounding floor relative to the size of the integrand on the panel
    tol = std::max(tol, 1e-14 * abs_sum * h);
    double factor = 1;
    for (int j = 1; j <= k; ++j) {
      factor *= 4;
      cur[j] = cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (factor - 1);
    }
    const double err = std::abs(cur[k] - prev[k - 1]);
    r = {cur[k], err};
    if (k >= 3 && err <= tol) break;
    prev = cur;
  }
  return r;
}

}  // namespace

cplx char_function(const BiasModel& m, double xi) {
  return std::exp(cplx(0, m.mean * xi)) * bessel_product(m, xi);
}

cplx normalized_char_function(const BiasModel& m, double eta) {
  if (!(m.variance > 0)) throw ConfigError("normalized_char_function: zero variance");
  const double xi = eta / std::sqrt(m.variance);
  return char_function(m, xi) * std::exp(cplx(0, -m.mean * xi));
}

DensityEstimate density_inversion(const BiasModel& m, double precision, int workers) {
  DensityEstimate d;
  if (m.dirac()) {
    d.delta = m.mean > 0 ? 1.0 : (m.mean < 0 ? 0.0 : 0.5);
    d.ok = false;
    d.note = "Dirac model; no inversion needed";
    return d;
  }
  if (m.terms.size() < 2) {
    d.ok = false;
    d.note = "fewer than 2 Bessel factors; distribution may have atoms, use Monte Carlo";
  }
  const double mu = m.mean;
  auto f = [&](double xi) {
    if (xi == 0) return mu;
    return std::sin(mu * xi) * bessel_product(m, xi) / xi;
  };
  double omega = std::abs(mu);
  for (const auto& t : m.terms) omega += t.amplitude;
  const double w_max = std::numbers::pi / (2 * omega);
  const double target = std::min(1e-12, precision * 0.1);

  // smallest cutoff (within a factor 1.1) whose tail bound meets the target
  constexpr std::size_t kMaxPanels = 50000;
  const double xi_cap = w_max * double(kMaxPanels);
  double hi = w_max;
  while (hi < xi_cap && tail_bound(m, hi) > target) hi *= 2;
  hi = std::min(hi, xi_cap);
  double lo = hi / 2;
  if (tail_bound(m, hi) <= target)
    while (hi / lo > 1.1) {
      const double mid = std::sqrt(lo * hi);
      (tail_bound(m, mid) <= target ? hi : lo) = mid;
    }
  const double cutoff = hi;
  const double tail = tail_bound(m, cutoff);

  std::vector<std::pair<double, double>> panels;
  double x = 0, w = w_max / 64;
  while (x < cutoff) {
    const double e = std::min(cutoff, x + w);
    panels.push_back({x, e});
    x = e;
    w = std::min(w * 2, w_max);
  }
  const double panel_tol = precision * 0.1 / double(panels.size());
  std::vector<PanelResult> res(panels.size());
  parallel_for(panels.size(), resolve_workers(workers),
               [&](std::size_t i) { res[i] = romberg(f, panels[i].first, panels[i].second, panel_tol); });
  double integral = 0, err = 0;
  for (const auto& r : res) {
    integral += r.value;
    err += r.error;
  }
  d.delta = std::clamp(0.5 + integral / std::numbers::pi, 0.0, 1.0);
  d.error = err / std::numbers::pi + (std::isfinite(tail) ? tail : 1.0);
  if (!std::isfinite(tail) || d.error > std::max(100 * precision, 1e-6)) {
    d.ok = false;
    if (d.note.empty()) d.note = "quadrature did not reach the requested precision";
  }
  return d;
}

namespace {

constexpr std::uint64_t kShard = std::uint64_t(1) << 15;
constexpr int kCosBits = 14;

const std::vector<double>& cos_table() {
  static const std::vector<double> t = [] {
    std::vector<double> v((1u << kCosBits) + 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::cos(2 * std::numbers::pi * double(i) / double(1u << kCosBits));
    return v;
  }();
  return t;
}

// cos(2 pi u / 2^32) by linear interpolation in the table
inline double fast_cos(std::uint32_t u, const double* table) {
  const std::uint32_t idx = u >> (32 - kCosBits);
  const double frac = double(u & ((1u << (32 - kCosBits)) - 1)) * (1.0 / double(1u << (32 - kCosBits)));
  return table[idx] + (table[idx + 1] - table[idx]) * frac;
}

// Number of samples of offset + sum a_i cos(theta_i) that satisfy pred, shard by shard.
template <class Pred>
std::uint64_t count_samples(const BiasModel& m, double offset, std::uint64_t samples, std::uint64_t seed, int workers,
                            Pred pred) {
  const std::size_t nshards = static_cast<std::size_t>((samples + kShard - 1) / kShard);
  std::vector<std::uint64_t> hits(nshards, 0);
  const double* table = cos_table().data();
  std::vector<double> amps;
  for (const auto& t : m.terms) amps.push_back(t.amplitude);
  parallel_for(nshards, resolve_workers(workers), [&](std::size_t s) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    const std::uint64_t n = std::min<std::uint64_t>(kShard, samples - std::uint64_t(s) * kShard);
    std::uint64_t h = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      double x = offset;
      std::size_t i = 0;
      for (; i + 1 < amps.size(); i += 2) {
        const std::uint64_t r = rng();
        x += amps[i] * fast_cos(static_cast<std::uint32_t>(r), table) +
             amps[i + 1] * fast_cos(static_cast<std::uint32_t>(r >> 32), table);
      }
      if (i < amps.size()) x += amps[i] * fast_cos(static_cast<std::uint32_t>(rng()), table);
      if (pred(x)) ++h;
    }
    hits[s] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

}  // namespace

DensityEstimate density_monte_carlo(const BiasModel& m, std::uint64_t samples, std::uint64_t seed, int workers) {
  if (samples < 10000) throw ConfigError("Monte Carlo needs at least 10^4 samples");
  DensityEstimate d;
  const std::uint64_t pos = count_samples(m, m.mean, samples, seed, workers, [](double x) { return x > 0; });
  d.delta = double(pos) / double(samples);
  d.error = std::sqrt(d.delta * (1 - d.delta) / double(samples));
  return d;
}

DensityEstimate tail_monte_carlo(const BiasModel& m, double V, std::uint64_t samples, std::uint64_t seed,
                                 int workers) {
  if (samples < 10000) throw ConfigError("Monte Carlo needs at least 10^4 samples");
  DensityEstimate d;
  const std::uint64_t hit = count_samples(m, 0.0, samples, seed, workers, [V](double x) { return x >= V; });
  d.delta = double(hit) / double(samples);
  d.error = std::sqrt(d.delta * (1 - d.delta) / double(samples));
  return d;
}

GaussianDensity density_gaussian(const BiasModel& m) {
  GaussianDensity g;
  const BiasFactor b = bias_factor(m);
  if (b.kind != BiasFactor::Kind::Finite) {
    g.delta = g.expansion = b.kind == BiasFactor::Kind::PlusInfinity ? 1.0
                            : b.kind == BiasFactor::Kind::MinusInfinity ? 0.0
                                                                        : 0.5;
    g.error_shape = std::numeric_limits<double>::infinity();
    return g;
  }
  const double B = b.value;
  g.delta = 0.5 * std::erfc(-B / std::numbers::sqrt2);
  g.expansion = 0.5 + B / std::sqrt(2 * std::numbers::pi);
  double w4 = 0;
  try {
    w4 = moments(m).W4;
  } catch (const ConfigError&) {
  }
  const double r = m.tplus_norm1 * m.tplus_norm1 / m.variance;
  g.error_shape = std::pow(std::abs(B), 3) + r * r + w4;
  return g;
}

double density_chebyshev_bound(const BiasModel& m) {
  const BiasFactor b = bias_factor(m);
  if (m.mean < 4) throw ConfigError("Chebyshev bound needs mean >= 4");
  if (b.kind == BiasFactor::Kind::PlusInfinity) return 1.0;
  if (!(b.value > 0)) throw ConfigError("Chebyshev bound needs B > 0");
  return 1 - 2 / (b.value * b.value);
}

LargeDeviation large_deviation_bounds(const BiasModel& m, double V, double alpha, double a1, double a2) {
  if (V < 0 || !(alpha > 0)) throw ConfigError("large deviation bounds need V >= 0 and alpha > 0");
  LargeDeviation r;
  for (const auto& t : m.terms) {
    if (t.amplitude >= alpha) r.big_sum += t.amplitude;
    else r.small_sq += t.amplitude * t.amplitude;
  }
  auto ratio = [&](double c) {
    if (V == 0) return 0.0;
    return r.small_sq > 0 ? c * V * V / r.small_sq : std::numeric_limits<double>::infinity();
  };
  if (r.big_sum <= V / 2) r.upper = std::exp(-ratio(1.0 / 16));
  if (r.big_sum >= 2 * V) r.lower = a1 * std::exp(-ratio(a2));
  return r;
}

bool DiagnosticReport::all_hold() const {
  for (const auto& c : checks)
    if (c.certified && !c.holds) return false;
  return true;
}

DiagnosticReport diagnostic_bounds(const BiasModel& m, const ExtensionSpec& spec, const ClassFunction& t) {
  DiagnosticReport r;
  const ClassFunction tp = lift(spec, t);
  const Eigen::VectorXcd c = fourier_transform(tp);
  const auto& gp = spec.gplus();
  const Eigen::VectorXd deg = gp.degrees();
  const Norms nt = norms(t), np = norms(tp);
  std::vector<std::size_t> supp;
  double s_deg = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    r.weighted_sum += deg[i] * std::norm(c[i]);
    s_deg += deg[i] * std::norm(c[i]);
    if (std::abs(c[i]) > 1e-12) supp.push_back(static_cast<std::size_t>(i));
  }
  auto add = [&](const std::string& name, double lhs, double rhs, bool certified) {
    const double tol = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    r.checks.push_back({name, lhs, rhs, lhs <= rhs + tol, rhs - lhs, certified});
  };
  if (!supp.empty()) {
    add("weighted_sum_lower", std::pow(np.norm2, 3) / (np.norm1 * std::sqrt(double(supp.size()))), r.weighted_sum,
        true);
    add("weighted_sum_upper", r.weighted_sum, std::sqrt(double(gp.order)) * np.norm2 * np.norm2, true);
  }
  // real-valued characters of G and G+, counted once when the groups coincide
  auto real_count = [](const FiniteGroupModel& g) {
    long n = 0;
    for (std::size_t i = 0; i < g.num_classes(); ++i)
      if (fs_classify(g, i) != FSType::Unitary) ++n;
    return n;
  };
  long nreal = real_count(gp);
  if (spec.embedding) nreal += real_count(*spec.group());
  bool central_free = true;
  for (const auto& ci : m.support) central_free = central_free && ci.zeros.central_multiplicity == 0;
  add("mean_bound", std::abs(m.mean), (nt.norm2 + np.norm2) * std::sqrt(double(nreal)), central_free);

  // eta: distance from 1 of the largest normalised character value off the identity
  r.eta = 1;
  if (!supp.empty()) {
    const double threshold = np.norm2 / np.norm1 / std::sqrt(4.0 * double(supp.size()));
    double worst = 0;
    bool any = false;
    for (std::size_t chi : supp) {
      const double d = deg[static_cast<Eigen::Index>(chi)];
      if (d < threshold) continue;
      any = true;
      for (std::size_t k = 1; k < gp.num_classes(); ++k)
        worst = std::max(worst, std::abs(gp.table(static_cast<Eigen::Index>(chi), static_cast<Eigen::Index>(k))) / d);
    }
    if (any) r.eta = 1 - worst;
  }
  r.variance_shape = r.eta * double(spec.degree_k) * spec.log_rd() * s_deg;
  add("variance_lower_shape", r.variance_shape, m.variance, false);
  return r;
}

}  // namespace chebias
