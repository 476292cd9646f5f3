#include "chebias/family.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace chebias {

namespace {

long vp(long n, long p) {
  long v = 0;
  n = std::abs(n);
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<long> prime_factors(long n) {
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

bool squarefree(long n) {
  n = std::abs(n);
  for (long f = 2; f * f <= n; ++f)
    if (n % (f * f) == 0) return false;
  return true;
}

bool is_squarefree_int(long n) { return n != 0 && squarefree(n); }

// Copy of a group model with new class labels.
GroupPtr relabel_classes(const GroupPtr& g, const std::vector<std::string>& labels) {
  auto m = std::make_shared<FiniteGroupModel>(*g);
  for (std::size_t i = 0; i < labels.size(); ++i) m->classes[i].label = labels[i];
  return m;
}

double log_disc_from_factors(const std::vector<std::pair<long, long>>& f) {
  double s = 0;
  for (auto [p, v] : f) s += double(v) * std::log(double(p));
  return s;
}

std::vector<long> squarefree_range(long lo, long hi) {
  std::vector<long> out;
  for (long l = lo; l <= hi; ++l)
    if (squarefree(l)) out.push_back(l);
  return out;
}

long ext_gcd(long a, long b, long& x, long& y) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long q = a / b;
    long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

}  // namespace

const RamifiedPrime* ExtensionSpec::find_prime(long p) const {
  for (const auto& rp : ramified)
    if (rp.prime == p) return &rp;
  return nullptr;
}

void validate_filtration(const FiniteGroupModel& g, const RamifiedPrime& rp) {
  if (rp.filtration.empty()) {
    if (rp.exponents.size() != static_cast<std::size_t>(g.table.rows()))
      throw InvariantError("prime " + std::to_string(rp.prime) + ": need a filtration or one exponent per character");
    return;
  }
  if (!g.elements) throw InvariantError("filtrations need an element-level group");
  const auto& E = *g.elements;
  std::set<std::size_t> prev;
  for (std::size_t i = 0; i < rp.filtration.size(); ++i) {
    std::set<std::size_t> s(rp.filtration[i].begin(), rp.filtration[i].end());
    if (s.empty() || !s.count(0)) throw InvariantError("filtration step without identity");
    for (std::size_t a : s) {
      if (a >= E.size()) throw InvariantError("filtration element out of range");
      for (std::size_t b : s)
        if (!s.count(E.mul(a, b))) throw InvariantError("filtration step is not a subgroup");
    }
    if (i > 0 && !std::includes(prev.begin(), prev.end(), s.begin(), s.end()))
      throw InvariantError("filtration is not decreasing");
    prev = std::move(s);
  }
}

long conductor_exponent(const ExtensionSpec& spec, long prime, std::size_t chi) {
  const RamifiedPrime* rp = spec.find_prime(prime);
  if (!rp) return 0;
  const auto& g = spec.gplus();
  if (chi >= static_cast<std::size_t>(g.table.rows())) throw ConfigError("character index out of range");
  if (rp->filtration.empty()) return rp->exponents.at(chi);
  // (1/|G_0|) sum_i sum_{a in G_i} (chi(1) - chi(a))
  const auto row = static_cast<Eigen::Index>(chi);
  const cplx deg = g.table(row, 0);
  cplx s = 0;
  for (const auto& step : rp->filtration)
    for (std::size_t a : step) s += deg - g.table(row, static_cast<Eigen::Index>(g.class_of[a]));
  s /= double(rp->filtration.front().size());
  const double r = std::round(s.real());
  if (std::abs(s - cplx(r, 0)) > 1e-8) throw InvariantError("non-integral conductor exponent: inconsistent filtration");
  return static_cast<long>(r);
}

double global_log_conductor(const ExtensionSpec& spec, std::size_t chi) {
  double s = 0;
  for (const auto& rp : spec.ramified) s += double(conductor_exponent(spec, rp.prime, chi)) * std::log(double(rp.prime));
  return s;
}

long conductor_discriminant_sum(const ExtensionSpec& spec, long prime) {
  const auto& g = spec.gplus();
  long s = 0;
  for (Eigen::Index chi = 0; chi < g.table.rows(); ++chi)
    s += std::lround(g.table(chi, 0).real()) * conductor_exponent(spec, prime, static_cast<std::size_t>(chi));
  return s;
}

long disc_valuation(const ExtensionSpec& spec, long prime) {
  for (auto [p, v] : spec.disc_factors)
    if (p == prime) return v;
  if (spec.disc_factors.empty()) throw ConfigError("spec has no exact discriminant factorisation");
  return 0;
}

void verify_spec(const ExtensionSpec& spec) {
  if (spec.log_rd() < 0) throw InvariantError("negative log root discriminant");
  for (const auto& rp : spec.ramified) validate_filtration(spec.gplus(), rp);
  if (spec.disc_is_bound || spec.disc_factors.empty()) return;
  if (std::abs(log_disc_from_factors(spec.disc_factors) - spec.log_disc) > 1e-9 * std::max(1.0, spec.log_disc))
    throw InvariantError("log d_L disagrees with its factorisation");
  for (const auto& rp : spec.ramified) {
    if (rp.approximate) continue;
    if (conductor_discriminant_sum(spec, rp.prime) != disc_valuation(spec, rp.prime))
      throw InvariantError("conductor-discriminant identity fails at p = " + std::to_string(rp.prime));
  }
}

// ------------------------------------------------------------------ families

bool wieferich_ok(long a, long p) {
  const long p2 = p * p;
  return mod_pow(a, p - 1, p2) != 1;
}

ExtensionSpec radical_extension(long a, long p) {
  if (a % 2 == 0 || p % 2 == 0) throw ConfigError("radical: a and p must be odd");
  if (!is_prime(a) || !is_prime(p)) throw ConfigError("radical: a and p must be prime");
  if (a == p) throw ConfigError("radical: a and p must be distinct");
  if (!wieferich_ok(a, p)) throw ConfigError("radical: a^(p-1) = 1 mod p^2 (Wieferich condition fails)");
  ExtensionSpec s;
  s.family = "radical";
  s.params = {a, p};
  s.group_plus = make_affine(p);
  std::vector<std::size_t> all(s.group_plus->order), unipotent(p);
  std::iota(all.begin(), all.end(), 0);
  std::iota(unipotent.begin(), unipotent.end(), 0);  // (1, d) has index d
  RamifiedPrime at_a{a, {unipotent}, {}, false};
  RamifiedPrime at_p{p, {all, unipotent}, {}, false};
  s.ramified = {at_a, at_p};
  std::sort(s.ramified.begin(), s.ramified.end(), [](auto& x, auto& y) { return x.prime < y.prime; });
  s.disc_factors = {{p, p * p - 2}, {a, (p - 1) * (p - 1)}};
  std::sort(s.disc_factors.begin(), s.disc_factors.end());
  s.log_disc = double(p * p - 2) * std::log(double(p)) + double((p - 1) * (p - 1)) * std::log(double(a));
  verify_spec(s);
  return s;
}

ExtensionSpec multiquadratic_extension(const std::vector<long>& primes) {
  const std::size_t m = primes.size();
  if (m < 1 || m > 10) throw ConfigError("multiquadratic: need 1 to 10 primes (dense table limit)");
  std::set<long> seen;
  for (long p : primes) {
    if (p < 3 || !is_prime(p)) throw ConfigError("multiquadratic: primes must be odd primes");
    if (!seen.insert(p).second) throw ConfigError("multiquadratic: repeated prime");
  }
  ExtensionSpec s;
  s.family = "multiquadratic";
  s.params = primes;
  auto base = make_abelian(std::vector<long>(m, 2));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < base->order; ++x) {
    std::string l;
    for (std::size_t j = 0; j < m; ++j) l += ((x >> (m - 1 - j)) & 1) ? '-' : '+';
    labels.push_back(l);
  }
  s.group_plus = relabel_classes(base, labels);
  const long G = static_cast<long>(base->order);
  bool any3 = false;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t ej = std::size_t(1) << (m - 1 - j);
    s.ramified.push_back({primes[j], {{0, ej}}, {}, false});
    s.disc_factors.push_back({primes[j], G / 2});
    any3 = any3 || primes[j] % 4 == 3;
  }
  if (any3) {
    // chi_S cuts out Q(sqrt(prod_{j in S} p_j)); its 2-part of conductor is 4
    // exactly when that product is 3 mod 4.
    RamifiedPrime two{2, {}, {}, false};
    for (long a = 0; a < G; ++a) {
      long prod = 1;
      for (std::size_t j = 0; j < m; ++j)
        if ((a >> (m - 1 - j)) & 1) prod = prod * (primes[j] % 4) % 4;
      two.exponents.push_back(prod == 3 ? 2 : 0);
    }
    s.ramified.push_back(two);
    s.disc_factors.push_back({2, G});
  }
  std::sort(s.ramified.begin(), s.ramified.end(), [](auto& x, auto& y) { return x.prime < y.prime; });
  std::sort(s.disc_factors.begin(), s.disc_factors.end());
  s.log_disc = log_disc_from_factors(s.disc_factors);
  verify_spec(s);
  return s;
}

ExtensionSpec cyclotomic_extension(long q) {
  if (q < 3 || q > 1000) throw ConfigError("cyclotomic: q must lie in [3, 1000]");
  ExtensionSpec s;
  s.family = "cyclotomic";
  s.params = {q};
  s.group_plus = make_units_mod(q);
  const auto& g = *s.group_plus;
  std::vector<long> res;
  for (long a = 1; a < q; ++a)
    if (gcd_long(a, q) == 1) res.push_back(a);
  const long phi = static_cast<long>(res.size());
  std::vector<long> divisors;
  for (long f = 1; f <= q; ++f)
    if (q % f == 0) divisors.push_back(f);
  std::vector<long> cond(g.table.rows(), q);
  for (Eigen::Index chi = 0; chi < g.table.rows(); ++chi) {
    for (long f : divisors) {
      bool trivial = true;
      for (std::size_t i = 0; i < res.size() && trivial; ++i)
        if (res[i] % f == 1 % f && std::abs(g.table(chi, g.class_of[i]) - 1.0) > 1e-9) trivial = false;
      if (trivial) {
        cond[chi] = f;
        break;
      }
    }
  }
  for (long l : prime_factors(q)) {
    RamifiedPrime rp{l, {}, {}, false};
    long total = 0;
    for (long f : cond) {
      rp.exponents.push_back(vp(f, l));
      total += vp(f, l);
    }
    const long e = vp(q, l);
    const long v = phi * e - phi / (l - 1);
    if (v == 0 && total == 0) continue;  // 2 is unramified when q = 2 mod 4
    s.ramified.push_back(rp);
    s.disc_factors.push_back({l, v});
  }
  s.log_disc = log_disc_from_factors(s.disc_factors);
  verify_spec(s);
  return s;
}

long field_discriminant(long d) {
  if (d == 1 || !is_squarefree_int(d)) throw ConfigError("field_discriminant: need squarefree d != 1");
  long r = ((d % 4) + 4) % 4;
  return r == 1 ? d : 4 * d;
}

bool is_fundamental_discriminant(long d) {
  if (d == 0 || d == 1) return false;
  long r = ((d % 4) + 4) % 4;
  if (r == 1) return is_squarefree_int(d);
  if (r == 0) {
    long m = d / 4;
    long rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && is_squarefree_int(m);
  }
  return false;
}

long kronecker(long a, long n) {
  if (n == 0) return std::abs(a) == 1 ? 1 : 0;
  long result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  long v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    long a8 = ((a % 8) + 8) % 8;
    if ((v % 2) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a | n) for odd n
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

ExtensionSpec quadratic_extension(long d) {
  if (!is_fundamental_discriminant(d)) throw ConfigError("quadratic: d must be a fundamental discriminant");
  ExtensionSpec s;
  s.family = "quadratic";
  s.params = {d};
  s.group_plus = relabel_classes(make_cyclic(2), {"+", "-"});
  for (long p : prime_factors(d)) {
    s.ramified.push_back({p, {}, {0, vp(d, p)}, false});
    s.disc_factors.push_back({p, vp(d, p)});
  }
  s.log_disc = std::log(double(std::abs(d)));
  verify_spec(s);
  return s;
}

// --------------------------------------------------------- binary quadratic forms

QuadraticForm reduce_form(QuadraticForm f) {
  auto normalize = [](QuadraticForm& g) {
    // b into (-a, a]
    long two_a = 2 * g.a;
    long k = (g.a - g.b) >= 0 ? (g.a - g.b) / two_a : -((g.b - g.a + two_a - 1) / two_a);
    long b2 = g.b + 2 * k * g.a;
    g.c = g.a * k * k + g.b * k + g.c;
    g.b = b2;
  };
  normalize(f);
  while (f.a > f.c) {
    std::swap(f.a, f.c);
    f.b = -f.b;
    normalize(f);
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QuadraticForm compose_forms(const QuadraticForm& f, const QuadraticForm& g) {
  QuadraticForm f1 = f, f2 = g;
  const long D = f.b * f.b - 4 * f.a * f.c;
  if (f1.a > f2.a) std::swap(f1, f2);
  const long s = (f1.b + f2.b) / 2;
  const long n = f2.b - s;
  long y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    long u, v;
    d = ext_gcd(f2.a, f1.a, u, v);
    y1 = u;
  }
  long x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    d1 = ext_gcd(s, d, x2, y2);
    y2 = -y2;
  }
  const long v1 = f1.a / d1, v2 = f2.a / d1;
  __int128 rr = (static_cast<__int128>(y1) * y2 * n - static_cast<__int128>(x2) * f2.c) % v1;
  if (rr < 0) rr += v1;
  const long r = static_cast<long>(rr);
  const long b3 = f2.b + 2 * v2 * r;
  const long a3 = v1 * v2;
  const __int128 num = static_cast<__int128>(b3) * b3 - D;
  if (num % (4 * static_cast<__int128>(a3)) != 0) throw InvariantError("form composition failed");
  const long c3 = static_cast<long>(num / (4 * static_cast<__int128>(a3)));
  return reduce_form({a3, b3, c3});
}

std::vector<QuadraticForm> reduced_forms(long d) {
  if (d >= 0 || ((d % 4) + 4) % 4 > 1) throw ConfigError("reduced_forms: need a negative discriminant");
  std::vector<QuadraticForm> out;
  const long amax = static_cast<long>(std::sqrt(double(-d) / 3.0)) + 1;
  for (long a = 1; a <= amax; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - d) % 2 + 2) % 2 != 0) continue;
      long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

std::vector<long> class_group_imaginary(long d) {
  if (d >= 0 || -d > 10000000) throw ConfigError("class_group_imaginary: need -10^7 <= d < 0");
  if (!is_fundamental_discriminant(d)) throw ConfigError("class_group_imaginary: d must be fundamental");
  auto forms = reduced_forms(d);
  const long h = static_cast<long>(forms.size());
  if (h == 1) return {};
  const QuadraticForm e = reduce_form({1, d % 2 == 0 ? 0 : 1, d % 2 == 0 ? -d / 4 : (1 - d) / 4});
  auto power = [&](QuadraticForm f, long k) {
    QuadraticForm r = e;
    while (k > 0) {
      if (k & 1) r = compose_forms(r, f);
      f = compose_forms(f, f);
      k >>= 1;
    }
    return r;
  };
  auto hp = prime_factors(h);
  std::vector<long> orders;
  for (const auto& f : forms) {
    long o = h;
    for (long l : hp)
      while (o % l == 0 && power(f, o / l) == e) o /= l;
    orders.push_back(o);
  }
  // For each prime l, the number of cyclic factors of order >= l^k is
  // log_l(N_k / N_{k-1}) with N_k = #{x : x^{l^k} = 1}.
  std::vector<std::vector<long>> by_prime;  // descending l-power factors
  for (long l : hp) {
    long lk = 1;
    long prev = 1;
    std::vector<long> ranks;
    for (;;) {
      lk *= l;
      // elements whose order divides l^k
      long N = 0;
      for (long o : orders)
        if (lk % o == 0) ++N;
      long ratio = N / prev;
      long r = 0;
      while (ratio > 1) {
        ratio /= l;
        ++r;
      }
      if (r == 0) break;
      ranks.push_back(r);
      prev = N;
    }
    // ranks[k-1] = number of factors of order >= l^k
    std::vector<long> factors;
    for (std::size_t k = 0; k < ranks.size(); ++k) {
      long next = k + 1 < ranks.size() ? ranks[k + 1] : 0;
      long pw = 1;
      for (std::size_t i = 0; i <= k; ++i) pw *= l;
      for (long i = 0; i < ranks[k] - next; ++i) factors.push_back(pw);
    }
    std::sort(factors.rbegin(), factors.rend());
    by_prime.push_back(factors);
  }
  std::size_t rank = 0;
  for (auto& f : by_prime) rank = std::max(rank, f.size());
  std::vector<long> inv(rank, 1);
  for (auto& f : by_prime)
    for (std::size_t i = 0; i < f.size(); ++i) inv[i] *= f[i];
  std::sort(inv.begin(), inv.end());
  long prod = 1;
  for (long x : inv) prod *= x;
  if (prod != h) throw InvariantError("class group structure does not multiply to h");
  return inv;
}

namespace {

// Prime discriminants whose product is d: p* = +-p = 1 mod 4 for odd p, and -4, 8 or -8 at 2.
std::vector<long> prime_discriminants(long d) {
  std::vector<long> out;
  long rest = d;
  for (long p : prime_factors(d)) {
    if (p == 2) continue;
    const long ps = p % 4 == 1 ? p : -p;
    out.push_back(ps);
    rest /= ps;
  }
  if (rest != 1) out.insert(out.begin(), rest);
  return out;
}

// Exponents for even class number. Inertia at p is generated by some (a_p, tau)
// that depends on p, so exponents come from genus theory instead: a degree-1
// character cuts out a quadratic field Q(sqrt d1) with d1 | d, and a degree-2
// character Ind(psi) has conductor |d|. Genus characters are matched to prime
// discriminants through a basis of A/2A, which is a genuine identification of A
// with the class group whenever its 2-part is elementary or cyclic.
std::vector<RamifiedPrime> genus_exponents(const ExtensionSpec& s, long d, std::size_t tau,
                                           const std::vector<long>& class_group) {
  const auto& g = *s.group_plus;
  const auto& emb = *s.embedding;
  const std::size_t n = emb.sub()->order;
  const auto pd = prime_discriminants(d);
  int even_orders = 0;
  bool elementary = true;
  for (long o : class_group)
    if (o % 2 == 0) {
      ++even_orders;
      elementary = elementary && o % 4 != 0;
    }
  const bool exact = elementary || even_orders <= 1;

  auto restrict_to_a = [&](Eigen::Index chi) {
    std::vector<int> v(n);
    for (std::size_t a = 0; a < n; ++a)
      v[a] = static_cast<int>(std::lround(g.table(chi, static_cast<Eigen::Index>(g.class_of[emb.injection()[a]])).real()));
    return v;
  };
  // span of the genus characters found so far, with coordinates in the greedy basis
  std::map<std::vector<int>, unsigned> span{{std::vector<int>(n, 1), 0u}};
  int basis = 0;
  std::vector<std::pair<Eigen::Index, unsigned>> linear;
  for (Eigen::Index chi = 0; chi < g.table.rows(); ++chi) {
    if (std::abs(g.table(chi, 0).real() - 1) > 1e-9) continue;
    const auto psi = restrict_to_a(chi);
    if (!span.count(psi)) {
      if (basis + 1 >= static_cast<int>(pd.size())) throw InvariantError("hcf: more genus characters than genus theory allows");
      std::map<std::vector<int>, unsigned> more;
      for (const auto& [v, mask] : span) {
        auto w = v;
        for (std::size_t a = 0; a < n; ++a) w[a] *= psi[a];
        more.emplace(std::move(w), mask | (1u << basis));
      }
      span.insert(more.begin(), more.end());
      ++basis;
    }
    linear.push_back({chi, span.at(psi)});
  }
  if (basis + 1 != static_cast<int>(pd.size())) throw InvariantError("hcf: genus characters do not match the prime discriminants");

  const auto tc = static_cast<Eigen::Index>(g.class_of[tau]);
  std::vector<RamifiedPrime> out;
  for (long p : prime_factors(d)) {
    RamifiedPrime rp{p, {}, std::vector<long>(static_cast<std::size_t>(g.table.rows()), vp(d, p)), !exact};
    for (auto [chi, mask] : linear) {
      long d1 = 1;
      for (int i = 0; i < basis; ++i)
        if (mask >> i & 1u) d1 *= pd[static_cast<std::size_t>(i)];
      const long d2 = d / d1;
      // tau is complex conjugation, so chi(tau) = 1 picks the real quadratic field
      const bool real = g.table(chi, tc).real() > 0;
      const long field = real == (d1 > 0) ? d1 : d2;
      rp.exponents[static_cast<std::size_t>(chi)] = field == 1 ? 0 : vp(field, p);
    }
    out.push_back(std::move(rp));
  }
  return out;
}

}  // namespace

ExtensionSpec hilbert_class_field(long d, std::vector<long> class_group) {
  if (!is_fundamental_discriminant(d) || std::abs(d) <= 1) throw ConfigError("hcf: d must be a fundamental discriminant");
  class_group.erase(std::remove(class_group.begin(), class_group.end(), 1L), class_group.end());
  for (long o : class_group)
    if (o < 1) throw ConfigError("hcf: cyclic orders must be positive");
  long h = 1;
  for (long o : class_group) h *= o;
  ExtensionSpec s;
  s.family = "hcf";
  s.params = {d};
  s.params.insert(s.params.end(), class_group.begin(), class_group.end());
  std::size_t tau = 0;
  if (h == 1) {
    s.group_plus = make_cyclic(2);
    s.embedding.emplace(make_embedding(make_cyclic(1), s.group_plus, [](std::size_t) { return std::size_t(0); }));
    tau = 1;
  } else if (class_group.size() == 1 && h >= 3) {
    s.group_plus = make_dihedral(h);
    s.embedding.emplace(make_embedding(make_cyclic(h), s.group_plus, [](std::size_t a) { return a; }));
    tau = static_cast<std::size_t>(h);
  } else {
    if (2 * h > 2000) throw ConfigError("hcf: |G+| exceeds the explicit table limit");
    auto A = make_abelian(class_group);
    const auto& AE = *A->elements;
    const std::size_t n = AE.size();
    // (a, s) with index s |A| + a; (a, s)(b, t) = (a + (-1)^s b, s + t)
    auto mul = [&AE, n](std::size_t x, std::size_t y) {
      std::size_t a = x % n, sa = x / n, b = y % n, sb = y / n;
      std::size_t bb = sa ? AE.inv(b) : b;
      return ((sa + sb) % 2) * n + AE.mul(a, bb);
    };
    auto G = std::make_shared<ElementGroup>(2 * n, mul);
    s.group_plus = make_from_elements(G, GroupKind::ExplicitTable, s.params);
    s.embedding.emplace(make_embedding(A, s.group_plus, [](std::size_t a) { return a; }));
    tau = n;
  }
  if (h % 2 == 1) {
    // odd class number: every inertia involution is conjugate to tau
    for (long p : prime_factors(d)) {
      const long v = vp(d, p);
      RamifiedPrime rp{p, {}, {}, false};
      if (p != 2 && v == 1) {
        rp.filtration = {{0, tau}};
      } else {
        const auto& g = *s.group_plus;
        const std::size_t tc = g.class_of[tau];
        for (Eigen::Index chi = 0; chi < g.table.rows(); ++chi) {
          const double codim = (g.table(chi, 0).real() - g.table(chi, static_cast<Eigen::Index>(tc)).real()) / 2.0;
          rp.exponents.push_back(v * std::lround(codim));
        }
      }
      s.ramified.push_back(rp);
    }
  } else {
    s.ramified = genus_exponents(s, d, tau, class_group);
  }
  for (long p : prime_factors(d)) s.disc_factors.push_back({p, h * vp(d, p)});
  s.log_disc = double(h) * std::log(double(std::abs(d)));
  s.degree_k = 2;
  s.log_dk = std::log(double(std::abs(d)));
  verify_spec(s);
  return s;
}

ExtensionSpec hilbert_class_field(long d) {
  if (d > 0) throw ConfigError("hcf: real quadratic class groups must be supplied");
  return hilbert_class_field(d, class_group_imaginary(d));
}

KlunersReport dihedral_kluners(long ell, long d, long p, long q) {
  if (ell < 7 || !is_prime(ell)) throw ConfigError("kluners: l must be a prime >= 7");
  if (!is_squarefree_int(d) || d == 1) throw ConfigError("kluners: d must be squarefree and != 1");
  for (long x : {p, q}) {
    if (!is_prime(x)) throw ConfigError("kluners: p and q must be prime");
    if (x % ell != 1) throw ConfigError("kluners: p and q must be 1 mod l");
    const long disc = field_discriminant(d);
    if (kronecker(disc, x) != 1) throw ConfigError("kluners: p and q must split in Q(sqrt d)");
  }
  KlunersReport r;
  r.ell = ell;
  r.d = d;
  r.p = p;
  r.q = q;
  r.log_disc_bound = double(ell) * std::log(double(std::abs(field_discriminant(d)))) +
                     2.0 * double(ell - 1) * (std::log(double(p)) + std::log(double(q)));
  r.spec.family = "kluners";
  r.spec.params = {ell, d, p, q};
  r.spec.group_plus = make_dihedral(ell);
  r.spec.log_disc = r.log_disc_bound;
  r.spec.disc_is_bound = true;
  return r;
}

// ---------------------------------------------------------------- bounds

ConductorBounds conductor_bounds(const ExtensionSpec& spec, std::size_t chi) {
  const auto& g = spec.gplus();
  ConductorBounds b;
  if (chi == g.trivial_character()) {
    b.skipped = true;
    return b;
  }
  const auto row = static_cast<Eigen::Index>(chi);
  const double deg = g.table(row, 0).real();
  for (Eigen::Index c = 1; c < g.table.cols(); ++c) b.m_chi = std::max(b.m_chi, std::abs(g.table(row, c)) / deg);
  // characters of G+ = Gal(L/Q): base degree 1
  const double lrd = spec.log_rd();
  b.coarse_lower = deg;
  b.coarse_upper = 2.0 * deg * lrd;
  b.refined_lower = (1.0 - b.m_chi) * deg * lrd;
  b.refined_upper = (1.0 + b.m_chi) * deg * lrd;
  b.lower = std::max(b.coarse_lower, b.refined_lower);
  b.upper = std::min(b.coarse_upper, b.refined_upper);
  return b;
}

ClassFunction lift(const ExtensionSpec& spec, const ClassFunction& t) {
  return spec.embedding ? induce(t, *spec.embedding) : t;
}

std::size_t lift_class(const ExtensionSpec& spec, std::size_t cls) {
  return spec.embedding ? induce_conjugacy_class(cls, *spec.embedding) : cls;
}

MurtyBounds murty_least_prime_bound(const ExtensionSpec& spec, const ClassFunction& t, std::size_t cls) {
  const auto& G = spec.group();
  if (t.group() != G) throw ConfigError("murty: class function must live on Gal(L/K)");
  const cplx that1 = fourier_transform(t)[static_cast<Eigen::Index>(G->trivial_character())];
  if (!(that1.real() > 0)) throw ConfigError("murty: t^(1) must be positive");
  const double tf = that1.real();
  const double ld = spec.log_disc;
  const double lrd = spec.log_rd();
  const double k = static_cast<double>(spec.degree_k);
  const double csize = static_cast<double>(G->classes.at(cls).size);
  const double cplus = static_cast<double>(spec.gplus().classes.at(lift_class(spec, cls)).size);
  MurtyBounds m;
  m.first = ld * ld / csize;
  m.ell_max = ld > std::exp(1.0) ? static_cast<int>(std::ceil(std::log(ld))) : 1;
  const double lead = norms(t).littlewood / tf * lrd * k;
  m.second = lead * lead;
  for (long l : squarefree_range(2, m.ell_max)) {
    const double term = norms(power_compose(t, l)).littlewood / tf * lrd * k;
    m.second += std::pow(term, 2.0 * l / (2.0 * l - 1.0));
  }
  m.third = ld * ld / cplus +
            std::pow(ld, 4.0 / 3.0) * std::pow(double(G->order), 2.0 / 3.0) / std::pow(csize, 4.0 / 3.0);
  return m;
}

MurtyBounds murty_least_prime_bound(const ExtensionSpec& spec, std::size_t cls) {
  return murty_least_prime_bound(spec, ClassFunction::indicator(spec.group(), cls), cls);
}

double chebotarev_error_bound(const ExtensionSpec& spec, const ClassFunction& t, double x) {
  if (x < 2) throw ConfigError("chebotarev_error_bound: x must be at least 2");
  const auto& G = spec.group();
  const double lx = std::log(x);
  const double lrdx = spec.log_rd() + lx;
  double b = norms(lift(spec, t)).littlewood * std::sqrt(x) * lrdx * lx;
  for (long l : squarefree_range(2, static_cast<long>(std::floor(2 * lx)))) {
    b += std::pow(x, 1.0 / l) * std::abs(inner(t, root_count(G, l)));
    b += std::pow(x, 1.0 / (2.0 * l)) * double(spec.degree_k) * norms(power_compose(t, l)).littlewood * lrdx * lx;
  }
  return b;
}

// ------------------------------------------------------------------- I/O

ExtensionSpec catalog_spec(const std::string& family, const std::vector<long>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw ConfigError(family + ": expected " + std::to_string(k) + " parameter(s)");
  };
  if (family == "radical") return need(2), radical_extension(params[0], params[1]);
  if (family == "multiquadratic") return multiquadratic_extension(params);
  if (family == "cyclotomic") return need(1), cyclotomic_extension(params[0]);
  if (family == "quadratic") return need(1), quadratic_extension(params[0]);
  if (family == "hcf") {
    if (params.empty()) throw ConfigError("hcf: need d");
    if (params.size() == 1) return hilbert_class_field(params[0]);
    return hilbert_class_field(params[0], std::vector<long>(params.begin() + 1, params.end()));
  }
  if (family == "kluners") return need(4), dihedral_kluners(params[0], params[1], params[2], params[3]).spec;
  throw ConfigError("unknown family '" + family + "'");
}

void write_spec(std::ostream& out, const ExtensionSpec& spec) {
  char buf[64];
  out << "family " << spec.family << "\n";
  out << "params";
  for (long p : spec.params) out << " " << p;
  out << "\n";
  out << "group " << kind_name(spec.gplus().kind);
  for (long p : spec.gplus().params) out << " " << p;
  out << "\n";
  out << "degree_k " << spec.degree_k << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", spec.log_disc);
  out << "logdisc " << buf << "\n";
  out << "disc_bound " << (spec.disc_is_bound ? 1 : 0) << "\n";
  for (auto [p, v] : spec.disc_factors) out << "discfactor " << p << " " << v << "\n";
  for (const auto& rp : spec.ramified) {
    out << "prime " << rp.prime << (rp.approximate ? " approximate" : "") << "\n";
    for (std::size_t i = 0; i < rp.filtration.size(); ++i) {
      out << "filtration " << i;
      for (std::size_t a : rp.filtration[i]) out << " " << a;
      out << "\n";
    }
    if (rp.filtration.empty())
      for (std::size_t c = 0; c < rp.exponents.size(); ++c) out << "exponent " << c << " " << rp.exponents[c] << "\n";
  }
}

ExtensionSpec read_spec(std::istream& in) {
  std::string line, family, group_kind;
  std::vector<long> params, group_params;
  ExtensionSpec parsed;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ConfigError("spec line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "family") {
      ls >> family;
    } else if (key == "params") {
      long v;
      while (ls >> v) params.push_back(v);
    } else if (key == "group") {
      ls >> group_kind;
      long v;
      while (ls >> v) group_params.push_back(v);
    } else if (key == "degree_k") {
      ls >> parsed.degree_k;
    } else if (key == "logdisc") {
      if (!(ls >> parsed.log_disc)) fail("bad logdisc");
    } else if (key == "disc_bound") {
      int b = 0;
      ls >> b;
      parsed.disc_is_bound = b != 0;
    } else if (key == "discfactor") {
      long p, v;
      if (!(ls >> p >> v)) fail("bad discfactor");
      parsed.disc_factors.push_back({p, v});
    } else if (key == "prime") {
      RamifiedPrime rp;
      if (!(ls >> rp.prime)) fail("bad prime");
      std::string flag;
      if (ls >> flag) rp.approximate = flag == "approximate";
      parsed.ramified.push_back(rp);
    } else if (key == "filtration") {
      if (parsed.ramified.empty()) fail("filtration before prime");
      std::size_t i;
      if (!(ls >> i) || i != parsed.ramified.back().filtration.size()) fail("filtration steps out of order");
      std::vector<std::size_t> step;
      std::size_t a;
      while (ls >> a) step.push_back(a);
      parsed.ramified.back().filtration.push_back(step);
    } else if (key == "exponent") {
      if (parsed.ramified.empty()) fail("exponent before prime");
      std::size_t c;
      long n;
      if (!(ls >> c >> n) || c != parsed.ramified.back().exponents.size()) fail("exponents out of order");
      parsed.ramified.back().exponents.push_back(n);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (family.empty()) throw ConfigError("spec without family");
  if (family != "custom") {
    // Catalog families are rebuilt from their parameters; stored data must agree.
    ExtensionSpec s = catalog_spec(family, params);
    if (std::abs(s.log_disc - parsed.log_disc) > 1e-9 * std::max(1.0, s.log_disc))
      throw ConfigError("stored logdisc disagrees with the catalog family");
    for (const auto& rp : parsed.ramified)
      for (Eigen::Index chi = 0; chi < s.gplus().table.rows(); ++chi) {
        ExtensionSpec probe = s;
        probe.ramified = {rp};
        if (conductor_exponent(probe, rp.prime, chi) != conductor_exponent(s, rp.prime, chi))
          throw ConfigError("stored ramification data disagrees with the catalog family");
      }
    return s;
  }
  parsed.family = family;
  parsed.params = params;
  if (group_kind.empty()) throw ConfigError("custom spec needs a group line");
  parsed.group_plus = build_group(group_kind, group_params);
  verify_spec(parsed);
  return parsed;
}

void write_conductor_csv(std::ostream& out, const ExtensionSpec& spec) {
  const auto& g = spec.gplus();
  out << "character,degree";
  for (const auto& rp : spec.ramified) out << ",n_" << rp.prime;
  out << ",logA\n";
  char buf[64];
  for (Eigen::Index chi = 0; chi < g.table.rows(); ++chi) {
    out << g.char_labels[chi] << "," << std::lround(g.table(chi, 0).real());
    for (const auto& rp : spec.ramified) out << "," << conductor_exponent(spec, rp.prime, chi);
    std::snprintf(buf, sizeof buf, "%.12f", global_log_conductor(spec, chi));
    out << "," << buf << "\n";
  }
}

}  // namespace chebias
