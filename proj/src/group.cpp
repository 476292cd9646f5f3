#include "chebias/group.hpp"

#include "chebias/sn.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace chebias {

namespace {

constexpr std::size_t kTableLimit = 2000;
constexpr std::uint64_t kDenseLimit = 1024;  // largest abelian group with a dense table

// e^{2 pi i k / n} with exact values on the axes.
cplx root_of_unity(long k, long n) {
  k %= n;
  if (k < 0) k += n;
  if (4 * k % n == 0) {
    switch (4 * k / n) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }
  const double a = 2.0 * M_PI * double(k) / double(n);
  return {std::cos(a), std::sin(a)};
}

std::string fmt_double(double x) {
  if (x == 0) x = 0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_complex(cplx z) {
  double re = std::abs(z.real()) < 1e-13 ? 0.0 : z.real();
  double im = std::abs(z.imag()) < 1e-13 ? 0.0 : z.imag();
  return fmt_double(re) + (im < 0 ? "-" : "+") + fmt_double(std::abs(im)) + "i";
}

void attach_element_power_map(FiniteGroupModel& m) {
  auto elems = m.elements;
  auto class_of = m.class_of;
  std::vector<std::size_t> reps;
  for (const auto& c : m.classes) reps.push_back(c.rep);
  m.power_fn = [elems, class_of, reps](std::size_t c, std::int64_t k) {
    return class_of[elems->pow(reps[c], k)];
  };
}

}  // namespace

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::ExplicitTable: return "explicit";
    case GroupKind::AbelianProduct: return "abelian";
    case GroupKind::Dihedral: return "dihedral";
    case GroupKind::Affine: return "affine";
    case GroupKind::Symmetric: return "symmetric";
  }
  return "unknown";
}

// ---------------------------------------------------------------- ElementGroup

ElementGroup::ElementGroup(std::size_t n, MulFn mul, std::vector<std::string> labels)
    : n_(n), mul_(std::move(mul)), labels_(std::move(labels)) {
  if (n_ == 0) throw ConfigError("empty group");
  if (n_ <= kTableLimit) {
    table_.resize(n_ * n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) table_[a * n_ + b] = static_cast<std::uint32_t>(mul_(a, b));
  }
  finish();
}

ElementGroup::ElementGroup(std::vector<std::vector<std::size_t>> table, std::vector<std::string> labels)
    : n_(table.size()), labels_(std::move(labels)) {
  if (n_ == 0) throw ConfigError("empty group");
  if (n_ > kTableLimit) throw ConfigError("explicit multiplication tables are limited to 2000 elements");
  table_.resize(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (table[a].size() != n_) throw ConfigError("multiplication table is not square");
    for (std::size_t b = 0; b < n_; ++b) {
      if (table[a][b] >= n_) throw ConfigError("multiplication table entry out of range");
      table_[a * n_ + b] = static_cast<std::uint32_t>(table[a][b]);
    }
  }
  finish();
}

void ElementGroup::finish() {
  if (!labels_.empty() && labels_.size() != n_) throw ConfigError("label count does not match group order");
  for (std::size_t a = 0; a < n_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) throw InvariantError("element 0 is not the identity");
  inv_.assign(n_, n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (inv_[a] != n_) continue;
    for (std::size_t b = 0; b < n_; ++b) {
      if (mul(a, b) == 0) {
        inv_[a] = b;
        inv_[b] = a;
        break;
      }
    }
    if (inv_[a] == n_) throw InvariantError("element without inverse");
  }
  if (!table_.empty()) {
    // Latin square check; associativity is checked by verify_group callers on demand.
    std::vector<char> seen(n_);
    for (std::size_t a = 0; a < n_; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n_; ++b) {
        auto c = table_[a * n_ + b];
        if (seen[c]) throw InvariantError("multiplication table row is not a permutation");
        seen[c] = 1;
      }
    }
  }
}

std::size_t ElementGroup::pow(std::size_t a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  std::size_t result = 0, base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::string ElementGroup::label(std::size_t a) const {
  return labels_.empty() ? std::to_string(a) : labels_[a];
}

// ------------------------------------------------------------ FiniteGroupModel

Eigen::VectorXd FiniteGroupModel::class_sizes() const {
  Eigen::VectorXd s(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) s[i] = static_cast<double>(classes[i].size);
  return s;
}

std::size_t FiniteGroupModel::find_class(const std::string& label) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].label == label) return i;
  throw ConfigError("unknown class label '" + label + "' in " + name());
}

std::size_t FiniteGroupModel::trivial_character() const {
  for (Eigen::Index r = 0; r < table.rows(); ++r)
    if ((table.row(r).array() - cplx(1, 0)).abs().maxCoeff() < 1e-9) return static_cast<std::size_t>(r);
  throw InvariantError("character table has no trivial row");
}

std::string FiniteGroupModel::name() const {
  std::string s = kind_name(kind) + "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
  return s + ")";
}

// ------------------------------------------------------------- generic tools

void compute_classes(const ElementGroup& g, std::vector<ConjugacyClass>& classes,
                     std::vector<std::size_t>& class_of) {
  const std::size_t n = g.size();
  const std::size_t none = static_cast<std::size_t>(-1);
  class_of.assign(n, none);
  classes.clear();
  for (std::size_t a = 0; a < n; ++a) {
    if (class_of[a] != none) continue;
    const std::size_t idx = classes.size();
    ConjugacyClass c;
    c.rep = a;
    c.label = g.label(a);
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t b = g.conj(a, x);
      if (class_of[b] == none) {
        class_of[b] = idx;
        ++c.size;
      }
    }
    classes.push_back(c);
  }
}

Eigen::MatrixXcd burnside_table(const ElementGroup& g, const std::vector<ConjugacyClass>& classes,
                                const std::vector<std::size_t>& class_of) {
  const std::size_t r = classes.size();
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> members(r);
  for (std::size_t x = 0; x < n; ++x) members[class_of[x]].push_back(x);

  // c[i](j, l) = #{x in K_i : x^{-1} z_l in K_j}
  std::vector<Eigen::MatrixXd> c(r, Eigen::MatrixXd::Zero(r, r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < r; ++l)
      for (std::size_t x : members[i]) c[i](class_of[g.mul(g.inv(x), classes[l].rep)], l) += 1;

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 50; ++attempt) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, r);
    for (std::size_t i = 0; i < r; ++i) m += unif(rng) * c[i];
    // Row-vector convention: omega_i omega_j = sum_l c_ijl omega_l, so omega is a
    // right eigenvector of the matrix with entries sum_i alpha_i c_ijl indexed (j, l).
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) continue;
    Eigen::VectorXcd ev = es.eigenvalues();
    double gap = 1e300;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a + 1; b < r; ++b) gap = std::min(gap, std::abs(ev[a] - ev[b]));
    if (r > 1 && gap < 1e-4) continue;

    Eigen::MatrixXcd table(r, r);
    Eigen::MatrixXcd vecs = es.eigenvectors();
    for (std::size_t k = 0; k < r; ++k) {
      Eigen::VectorXcd w = vecs.col(k);
      if (std::abs(w[0]) < 1e-12) throw InvariantError("Burnside eigenvector vanishes at identity");
      w /= w[0];
      double s = 0;
      for (std::size_t l = 0; l < r; ++l) s += std::norm(w[l]) / double(classes[l].size);
      const double deg = std::round(std::sqrt(double(n) / s));
      for (std::size_t l = 0; l < r; ++l) table(k, l) = w[l] * deg / double(classes[l].size);
    }
    // Linear characters take |G|-th roots of unity; other entries snap only when
    // they are integers up to rounding noise.
    for (std::size_t k = 0; k < r; ++k) {
      const double deg = std::round(table(k, 0).real());
      if (deg == 1) {
        for (std::size_t l = 0; l < r; ++l) {
          double ang = std::arg(table(k, l)) / (2 * M_PI) * double(n);
          table(k, l) = root_of_unity(std::lround(ang), static_cast<long>(n));
        }
      } else {
        for (std::size_t l = 0; l < r; ++l) {
          cplx v = table(k, l);
          if (std::abs(v.real() - std::round(v.real())) < 1e-9) v.real(std::round(v.real()));
          if (std::abs(v.imag() - std::round(v.imag())) < 1e-9) v.imag(std::round(v.imag()));
          table(k, l) = v;
        }
      }
    }
    // Order: trivial first, then by degree, then lexicographically by values.
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t k) {
      std::vector<double> v;
      bool trivial = (table.row(k).array() - cplx(1, 0)).abs().maxCoeff() < 1e-9;
      v.push_back(trivial ? 0 : 1);
      v.push_back(table(k, 0).real());
      for (std::size_t l = 0; l < r; ++l) {
        v.push_back(-std::round(table(k, l).real() * 1e8));
        v.push_back(-std::round(table(k, l).imag() * 1e8));
      }
      return v;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    Eigen::MatrixXcd sorted(r, r);
    for (std::size_t k = 0; k < r; ++k) sorted.row(k) = table.row(order[k]);
    return sorted;
  }
  throw InvariantError("Burnside algorithm failed to separate characters");
}

OrthogonalityReport orthogonality(const FiniteGroupModel& g) {
  OrthogonalityReport rep;
  const Eigen::Index r = g.table.rows();
  const double order = static_cast<double>(g.order);
  Eigen::VectorXd sizes = g.class_sizes();
  // Unitary normalisation U(chi, C) = chi(C) sqrt(|C|/|G|); both relations say U is unitary.
  Eigen::MatrixXcd u = g.table;
  for (Eigen::Index c = 0; c < u.cols(); ++c) u.col(c) *= std::sqrt(sizes[c] / order);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(r, r);
  rep.row_error = (u * u.adjoint() - id).cwiseAbs().maxCoeff();
  rep.column_error = (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
  rep.degree_error = std::abs(g.degrees().squaredNorm() - order);
  return rep;
}

void verify_group(const FiniteGroupModel& g, double tol) {
  if (g.table.rows() != g.table.cols() || std::size_t(g.table.cols()) != g.classes.size())
    throw InvariantError(g.name() + ": character table is incomplete");
  std::uint64_t total = 0;
  for (const auto& c : g.classes) {
    if (c.size == 0 || g.order % c.size != 0) throw InvariantError(g.name() + ": class size does not divide |G|");
    total += c.size;
  }
  if (total != g.order) throw InvariantError(g.name() + ": class sizes do not sum to |G|");
  if (g.classes.empty() || g.classes[0].size != 1) throw InvariantError(g.name() + ": class 0 is not the identity");
  auto rep = orthogonality(g);
  if (rep.row_error > tol) throw InvariantError(g.name() + ": row orthogonality fails");
  if (rep.column_error > tol) throw InvariantError(g.name() + ": column orthogonality fails");
  if (rep.degree_error > 1e-6) throw InvariantError(g.name() + ": sum of squared degrees differs from |G|");
}

// ------------------------------------------------------------------- factories

GroupPtr make_abelian(const std::vector<long>& orders) {
  if (orders.empty()) throw ConfigError("abelian: need at least one cyclic factor");
  std::uint64_t n = 1;
  for (long o : orders) {
    if (o < 1) throw ConfigError("abelian: cyclic orders must be positive");
    n *= static_cast<std::uint64_t>(o);
    if (n > kDenseLimit) throw ConfigError("abelian: order exceeds 1024 (dense table limit)");
  }
  const std::size_t k = orders.size();
  auto digits = [orders, k](std::size_t x) {
    std::vector<long> d(k);
    for (std::size_t i = k; i-- > 0;) {
      d[i] = static_cast<long>(x % orders[i]);
      x /= orders[i];
    }
    return d;
  };
  auto undigits = [orders, k](const std::vector<long>& d) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < k; ++i) x = x * orders[i] + d[i];
    return x;
  };
  auto label = [&](std::size_t x) {
    auto d = digits(x);
    std::string s;
    for (std::size_t i = 0; i < k; ++i) s += (i ? "." : "") + std::to_string(d[i]);
    return s;
  };
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = label(x);
  auto mul = [digits, undigits, orders, k](std::size_t a, std::size_t b) {
    auto da = digits(a), db = digits(b);
    for (std::size_t i = 0; i < k; ++i) da[i] = (da[i] + db[i]) % orders[i];
    return undigits(da);
  };
  auto m = std::make_shared<FiniteGroupModel>();
  m->kind = GroupKind::AbelianProduct;
  m->params = orders;
  m->order = n;
  m->elements = std::make_shared<ElementGroup>(n, mul, labels);
  m->class_of.resize(n);
  std::iota(m->class_of.begin(), m->class_of.end(), 0);
  for (std::size_t x = 0; x < n; ++x) m->classes.push_back({1, labels[x], x});
  long L = 1;
  for (long o : orders) L = std::lcm(L, o);
  m->table.resize(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    auto da = digits(a);
    m->char_labels.push_back("chi" + labels[a]);
    for (std::size_t x = 0; x < n; ++x) {
      auto dx = digits(x);
      long e = 0;
      for (std::size_t i = 0; i < k; ++i) e += da[i] * dx[i] * (L / orders[i]);
      m->table(a, x) = root_of_unity(e % L, L);
    }
  }
  attach_element_power_map(*m);
  verify_group(*m);
  return m;
}

GroupPtr make_cyclic(long n) {
  if (n < 1) throw ConfigError("cyclic: n must be positive");
  return make_abelian({n});
}

GroupPtr make_dihedral(long n) {
  if (n < 3) throw ConfigError("dihedral: n must be at least 3");
  if (2 * n > static_cast<long>(kTableLimit)) throw ConfigError("dihedral: n too large (order limit 2000)");
  const std::size_t N = static_cast<std::size_t>(2 * n);
  // j < n is r^j, n + j is s r^j
  auto mul = [n](std::size_t a, std::size_t b) -> std::size_t {
    long ja = static_cast<long>(a) % n, jb = static_cast<long>(b) % n;
    bool sa = static_cast<long>(a) >= n, sb = static_cast<long>(b) >= n;
    auto md = [n](long v) { return ((v % n) + n) % n; };
    if (!sa && !sb) return md(ja + jb);
    if (!sa && sb) return n + md(jb - ja);
    if (sa && !sb) return n + md(ja + jb);
    return md(jb - ja);
  };
  std::vector<std::string> labels(N);
  for (long j = 0; j < n; ++j) {
    labels[j] = j == 0 ? "1" : (j == 1 ? "r" : "r" + std::to_string(j));
    labels[n + j] = j == 0 ? "s" : (j == 1 ? "sr" : "sr" + std::to_string(j));
  }
  auto m = std::make_shared<FiniteGroupModel>();
  m->kind = GroupKind::Dihedral;
  m->params = {n};
  m->order = N;
  m->elements = std::make_shared<ElementGroup>(N, mul, labels);

  const bool even = n % 2 == 0;
  const long half = (n - 1) / 2;  // rotation classes r^j, 1 <= j <= half, have size 2
  m->classes.push_back({1, "1", 0});
  for (long j = 1; j <= half; ++j) m->classes.push_back({2, "r" + std::to_string(j), std::size_t(j)});
  if (even) m->classes.push_back({1, "r" + std::to_string(n / 2), std::size_t(n / 2)});
  std::size_t refl = m->classes.size();
  if (even) {
    m->classes.push_back({std::uint64_t(n / 2), "s0", std::size_t(n)});
    m->classes.push_back({std::uint64_t(n / 2), "s1", std::size_t(n + 1)});
  } else {
    m->classes.push_back({std::uint64_t(n), "s", std::size_t(n)});
  }
  m->class_of.resize(N);
  for (long j = 0; j < n; ++j) {
    long jj = std::min(j, n - j);
    m->class_of[j] = jj == 0 ? 0 : static_cast<std::size_t>(jj);  // r^{n/2} lands at index n/2 too
    m->class_of[n + j] = even ? refl + (j % 2) : refl;
  }

  const std::size_t r = m->classes.size();
  m->table = Eigen::MatrixXcd::Zero(r, r);
  auto rot_exp = [&](std::size_t c) { return static_cast<long>(m->classes[c].rep); };
  auto is_refl = [&](std::size_t c) { return c >= refl; };
  std::size_t row = 0;
  auto set_linear = [&](const std::string& label, auto f) {
    m->char_labels.push_back(label);
    for (std::size_t c = 0; c < r; ++c) m->table(row, c) = f(c);
    ++row;
  };
  set_linear("1", [](std::size_t) { return cplx(1, 0); });
  set_linear("eps", [&](std::size_t c) { return cplx(is_refl(c) ? -1 : 1, 0); });
  if (even) {
    // r^j -> (-1)^j, s r^j -> (-1)^j, and the product with eps
    set_linear("delta", [&](std::size_t c) {
      long par = is_refl(c) ? long(c - refl) : rot_exp(c);
      return cplx(par % 2 ? -1 : 1, 0);
    });
    set_linear("delta_eps", [&](std::size_t c) {
      long par = is_refl(c) ? long(c - refl) : rot_exp(c);
      double v = par % 2 ? -1 : 1;
      return cplx(is_refl(c) ? -v : v, 0);
    });
  }
  const long H = even ? n / 2 - 1 : (n - 1) / 2;
  for (long h = 1; h <= H; ++h) {
    set_linear("chi" + std::to_string(h), [&](std::size_t c) {
      if (is_refl(c)) return cplx(0, 0);
      long j = rot_exp(c);
      long k = (h * j) % n;
      if (k == 0) return cplx(2, 0);
      if (2 * k == n) return cplx(-2, 0);
      if (4 * k == n || 4 * k == 3 * n) return cplx(0, 0);
      return cplx(2 * std::cos(2 * M_PI * double(k) / double(n)), 0);
    });
  }
  attach_element_power_map(*m);
  verify_group(*m);
  return m;
}

GroupPtr make_affine(long p) {
  if (p < 3 || !is_prime(p)) throw ConfigError("affine: p must be an odd prime");
  if (p * (p - 1) > static_cast<long>(kTableLimit)) throw ConfigError("affine: p too large (order limit 2000)");
  const std::size_t N = static_cast<std::size_t>(p * (p - 1));
  // (c, d) : x -> c x + d, index (c - 1) p + d
  auto idx = [p](long c, long d) { return static_cast<std::size_t>((c - 1) * p + d); };
  auto mul = [p, idx](std::size_t a, std::size_t b) {
    long c1 = long(a) / p + 1, d1 = long(a) % p;
    long c2 = long(b) / p + 1, d2 = long(b) % p;
    return idx((c1 * c2) % p, (c1 * d2 + d1) % p);
  };
  std::vector<std::string> labels(N);
  for (long c = 1; c < p; ++c)
    for (long d = 0; d < p; ++d) labels[idx(c, d)] = std::to_string(c) + "." + std::to_string(d);

  auto m = std::make_shared<FiniteGroupModel>();
  m->kind = GroupKind::Affine;
  m->params = {p};
  m->order = N;
  m->elements = std::make_shared<ElementGroup>(N, mul, labels);
  m->classes.push_back({1, "id", idx(1, 0)});
  m->classes.push_back({std::uint64_t(p - 1), "U", idx(1, 1)});
  for (long c = 2; c < p; ++c) m->classes.push_back({std::uint64_t(p), "T" + std::to_string(c), idx(c, 0)});
  m->class_of.resize(N);
  for (long c = 1; c < p; ++c)
    for (long d = 0; d < p; ++d)
      m->class_of[idx(c, d)] = c == 1 ? (d == 0 ? 0 : 1) : static_cast<std::size_t>(c);

  // discrete log to a primitive root
  const long g = primitive_root(p);
  std::vector<long> dlog(p, 0);
  for (long e = 0, v = 1; e < p - 1; ++e, v = v * g % p) dlog[v] = e;
  const std::size_t r = static_cast<std::size_t>(p);
  m->table = Eigen::MatrixXcd::Zero(r, r);
  auto class_c = [&](std::size_t cl) { return cl <= 1 ? 1L : static_cast<long>(cl); };
  for (long j = 0; j < p - 1; ++j) {
    m->char_labels.push_back("psi" + std::to_string(j));
    for (std::size_t cl = 0; cl < r; ++cl) m->table(j, cl) = root_of_unity(j * dlog[class_c(cl)], p - 1);
  }
  m->char_labels.push_back("eta");
  m->table(p - 1, 0) = double(p - 1);
  m->table(p - 1, 1) = -1.0;
  attach_element_power_map(*m);
  verify_group(*m);
  return m;
}

namespace {

std::vector<int> unrank_perm(std::size_t rank, int n) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::size_t> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  std::vector<int> out;
  for (int i = n; i >= 1; --i) {
    std::size_t q = rank / fact[i - 1];
    rank %= fact[i - 1];
    out.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<long>(q));
  }
  return out;
}

std::size_t rank_perm(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<std::size_t> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  std::size_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    r += smaller * fact[n - 1 - i];
  }
  return r;
}

Partition cycle_type(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  Partition t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

}  // namespace

GroupPtr make_symmetric(long n) {
  if (n < 1 || n > 12) throw ConfigError("symmetric: full tables need 1 <= n <= 12");
  auto parts = partitions(static_cast<int>(n));
  auto m = std::make_shared<FiniteGroupModel>();
  m->kind = GroupKind::Symmetric;
  m->params = {n};
  m->order = static_cast<std::uint64_t>(factorial(static_cast<int>(n)));
  std::map<Partition, std::size_t> index;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    index[parts[i]] = i;
    m->classes.push_back({static_cast<std::uint64_t>(class_size(parts[i])), partition_label(parts[i]),
                          static_cast<std::size_t>(-1)});
    m->char_labels.push_back(partition_label(parts[i]));
  }
  const std::size_t r = parts.size();
  m->table.resize(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m->table(i, j) = double(mn_character(parts[i], parts[j]));
  m->power_fn = [parts, index](std::size_t c, std::int64_t k) {
    return index.at(power_cycle_type(parts[c], static_cast<long>(k)));
  };
  if (n <= 6) {
    const int nn = static_cast<int>(n);
    const std::size_t N = m->order;
    auto mul = [nn](std::size_t a, std::size_t b) {
      auto pa = unrank_perm(a, nn), pb = unrank_perm(b, nn);
      std::vector<int> c(nn);
      for (int i = 0; i < nn; ++i) c[i] = pa[pb[i]];  // (a b)(i) = a(b(i))
      return rank_perm(c);
    };
    std::vector<std::string> labels(N);
    m->class_of.resize(N);
    for (std::size_t x = 0; x < N; ++x) {
      auto p = unrank_perm(x, nn);
      std::string s = "[";
      for (int i = 0; i < nn; ++i) s += (i ? " " : "") + std::to_string(p[i] + 1);
      labels[x] = s + "]";
      std::size_t c = index.at(cycle_type(p));
      m->class_of[x] = c;
      if (m->classes[c].rep == static_cast<std::size_t>(-1)) m->classes[c].rep = x;
    }
    m->elements = std::make_shared<ElementGroup>(N, mul, labels);
  }
  verify_group(*m);
  return m;
}

GroupPtr make_from_elements(ElementGroupPtr g, GroupKind kind, std::vector<long> params) {
  auto m = std::make_shared<FiniteGroupModel>();
  m->kind = kind;
  m->params = std::move(params);
  m->order = g->size();
  m->elements = g;
  compute_classes(*g, m->classes, m->class_of);
  m->table = burnside_table(*g, m->classes, m->class_of);
  for (Eigen::Index k = 0; k < m->table.rows(); ++k) m->char_labels.push_back("X" + std::to_string(k));
  attach_element_power_map(*m);
  verify_group(*m);
  return m;
}

GroupPtr make_quaternion8() {
  // index 2u + s: u in {1, i, j, k}, s = 1 for a minus sign
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto mul = [](std::size_t a, std::size_t b) {
    int ua = int(a) / 2, sa = int(a) % 2, ub = int(b) / 2, sb = int(b) % 2;
    int s = (sa + sb + sign_mul[ua][ub]) % 2;
    return static_cast<std::size_t>(2 * unit_mul[ua][ub] + s);
  };
  std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto g = std::make_shared<ElementGroup>(8, mul, labels);
  return make_from_elements(g, GroupKind::ExplicitTable, {8});
}

GroupPtr make_units_mod(long q) {
  if (q < 2 || q > 100000) throw ConfigError("units: modulus out of range [2, 100000]");
  std::vector<long> res;
  for (long a = 1; a < q; ++a)
    if (gcd_long(a, q) == 1) res.push_back(a);
  if (res.size() > kTableLimit) throw ConfigError("units: group too large for an explicit table");
  std::vector<long> pos(q, -1);
  for (std::size_t i = 0; i < res.size(); ++i) pos[res[i]] = static_cast<long>(i);
  auto mul = [res, pos, q](std::size_t a, std::size_t b) {
    return static_cast<std::size_t>(pos[(res[a] * res[b]) % q]);
  };
  std::vector<std::string> labels;
  for (long a : res) labels.push_back(std::to_string(a));
  auto g = std::make_shared<ElementGroup>(res.size(), mul, labels);
  return make_from_elements(g, GroupKind::ExplicitTable, {q});
}

GroupPtr build_group(const std::string& kind, const std::vector<long>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw ConfigError(kind + ": expected " + std::to_string(k) + " parameter(s)");
  };
  if (kind == "cyclic") return need(1), make_cyclic(params[0]);
  if (kind == "abelian") return make_abelian(params);
  if (kind == "dihedral") return need(1), make_dihedral(params[0]);
  if (kind == "affine") return need(1), make_affine(params[0]);
  if (kind == "symmetric") return need(1), make_symmetric(params[0]);
  if (kind == "quaternion") return make_quaternion8();
  if (kind == "units") return need(1), make_units_mod(params[0]);
  throw ConfigError("unknown group kind '" + kind + "'");
}

GroupPtr load_group(std::istream& in) {
  std::string line, name;
  std::vector<long> params;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::string> labels;
  bool in_table = false, have_kind = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "kind") {
      if (!(ls >> name)) throw ConfigError("line " + std::to_string(lineno) + ": missing group name");
      long v;
      while (ls >> v) params.push_back(v);
      have_kind = true;
    } else if (word == "labels") {
      std::string l;
      while (ls >> l) labels.push_back(l);
    } else if (word == "table") {
      in_table = true;
    } else if (in_table) {
      std::vector<std::size_t> row;
      std::istringstream rs(line);
      long v;
      while (rs >> v) {
        if (v < 0) throw ConfigError("line " + std::to_string(lineno) + ": negative element index");
        row.push_back(static_cast<std::size_t>(v));
      }
      if (!rs.eof()) throw ConfigError("line " + std::to_string(lineno) + ": bad table row");
      table.push_back(std::move(row));
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unexpected '" + word + "'");
    }
  }
  if (!have_kind) throw ConfigError("group file has no kind line");
  if (name == "explicit") {
    if (table.empty()) throw ConfigError("explicit group without table");
    auto g = std::make_shared<ElementGroup>(std::move(table), std::move(labels));
    return make_from_elements(g, GroupKind::ExplicitTable, {static_cast<long>(g->size())});
  }
  return build_group(name, params);
}

void write_character_table_csv(std::ostream& out, const FiniteGroupModel& g) {
  out << "character,degree,eps2";
  for (const auto& c : g.classes) out << "," << c.label;
  out << "\n";
  const double order = static_cast<double>(g.order);
  for (Eigen::Index k = 0; k < g.table.rows(); ++k) {
    cplx e2 = 0;
    for (std::size_t c = 0; c < g.num_classes(); ++c)
      e2 += double(g.classes[c].size) * g.table(k, g.power_class(c, 2));
    e2 /= order;
    out << g.char_labels[k] << "," << fmt_double(std::round(g.table(k, 0).real())) << ","
        << fmt_double(std::round(e2.real()));
    for (Eigen::Index c = 0; c < g.table.cols(); ++c) out << "," << fmt_complex(g.table(k, c));
    out << "\n";
  }
}

// ------------------------------------------------------------ number theory

long gcd_long(long a, long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long mod_pow(long base, long exp, long mod) {
  if (mod == 1) return 0;
  __int128 result = 1, b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<long>(result);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  long d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    long x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<long>(static_cast<__int128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

long primitive_root(long p) {
  if (!is_prime(p)) throw ConfigError("primitive_root: modulus is not prime");
  if (p == 2) return 1;
  std::vector<long> factors;
  long m = p - 1;
  for (long f = 2; f * f <= m; ++f) {
    if (m % f == 0) {
      factors.push_back(f);
      while (m % f == 0) m /= f;
    }
  }
  if (m > 1) factors.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long f : factors)
      if (mod_pow(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw InvariantError("no primitive root found");
}

}  // namespace chebias
