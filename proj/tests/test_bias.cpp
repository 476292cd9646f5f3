#include "chebias/bessel.hpp"
#include "chebias/race.hpp"
#include "chebias/sn.hpp"
#include "models.hpp"

#include <doctest.h>

#include <set>

using namespace chebias;
using chebias::testing::random_model;
using chebias::testing::with_bias;

namespace {

ZeroSet single(double gamma, double height = 100) {
  ZeroSet z;
  z.label = "single";
  z.ordinates = {gamma};
  z.multiplicities = {1};
  z.height = height;
  return z;
}

Assumptions no_li() {
  Assumptions a;
  a.li = false;
  return a;
}

ExtensionSpec unramified_spec(GroupPtr g) {
  ExtensionSpec s;
  s.family = "custom";
  s.group_plus = std::move(g);
  s.log_disc = 1;
  return s;
}

BiasModel mod4_model() {
  auto s = cyclotomic_extension(4);
  auto t = race_function(s.group(), "race:3,1");
  return build_model(s, t, gather_zeros(s, support_of(s, t), "bundled", "", 0, 0), Assumptions{});
}

}  // namespace

TEST_CASE("assumption lists") {
  auto a = parse_assumptions("li,grh,bm");
  CHECK(a.li);
  CHECK(a.grh);
  CHECK(a.bm);
  CHECK_FALSE(a.ac);
  CHECK(parse_assumptions("li").grh);
  CHECK(parse_assumptions("M0=3").m0 == 3);
  CHECK(parse_assumptions("ord-sign=-1").ord_sign == -1);
  CHECK_THROWS_AS(parse_assumptions("foo"), ConfigError);
  CHECK(parse_assumptions("ac,grh,li,bm").describe() == "AC,GRH,LI,BM(M0=1)");
}

TEST_CASE("variance arithmetic fixture") {
  std::vector<CharacterInput> s = {{"a", 1.0, single(14.134725), 1.0}};
  auto m = assemble_model(0, s, Assumptions{});
  CHECK(m.terms.size() == 1);
  CHECK(m.variance == doctest::Approx(2 / (0.25 + 14.134725 * 14.134725)).epsilon(1e-14));
  CHECK(m.variance == doctest::Approx(0.009999).epsilon(1e-4));
  CHECK(std::abs(variance_closed_form(m) - m.variance) < 1e-15);
}

TEST_CASE("shared-zero fixture and LI") {
  const double g = 17.5;
  std::vector<CharacterInput> s = {{"a", 1.0, single(g), 1.0}, {"b", -1.0, single(g), 1.0}};
  CHECK_THROWS_AS(assemble_model(0, s, Assumptions{}), ConfigError);
  auto m = assemble_model(0, s, no_li());
  CHECK(m.terms.empty());
  CHECK(m.variance == 0);
  CHECK(variance_naive(m) == doctest::Approx(4 / (0.25 + g * g)).epsilon(1e-14));
  // a second, unshared zero keeps its own term
  s[0].zeros.ordinates.push_back(30.0);
  s[0].zeros.multiplicities.push_back(1);
  auto m2 = assemble_model(0, s, no_li());
  CHECK(m2.terms.size() == 1);
  CHECK(variance_naive(m2) - m2.variance == doctest::Approx(4 / (0.25 + g * g)).epsilon(1e-12));
}

TEST_CASE("Dirac model from a vanishing induced function") {
  auto s = hilbert_class_field(-23);
  const auto& g = *s.group();
  auto t = ClassFunction::indicator(s.group(), 1) - ClassFunction::indicator(s.group(), 2);
  CHECK(g.order == 3);
  CHECK(support_of(s, t).empty());
  auto m = build_model(s, t, {}, Assumptions{});
  CHECK(m.dirac());
  CHECK(m.variance == 0);
  CHECK(std::abs(m.mean) < 1e-12);
  CHECK(bias_factor(m).kind == BiasFactor::Kind::Undefined);
  CHECK(bias_factor(m).str() == "undefined");
}

TEST_CASE("bias factor sentinels") {
  BiasModel m;
  m.mean = 3;
  CHECK(bias_factor(m).kind == BiasFactor::Kind::PlusInfinity);
  CHECK(bias_factor(m).str() == "+inf");
  m.mean = -1;
  CHECK(bias_factor(m).kind == BiasFactor::Kind::MinusInfinity);
  std::vector<CharacterInput> s = {{"a", 1.0, single(14.0), 1.0}};
  auto z = assemble_model(0, s, Assumptions{});
  CHECK(bias_factor(z).value == 0);
  auto mc = density_monte_carlo(m, 10000, 1);
  CHECK(mc.delta == 0);
  m.mean = 2;
  CHECK(density_monte_carlo(m, 10000, 1).delta == 1);
}

TEST_CASE("radical means") {
  const std::vector<std::pair<long, long>> pairs = {{3, 5}, {3, 7}, {7, 11}};
  for (auto [a, p] : pairs) {
    auto s = radical_extension(a, p);
    const auto& g = *s.group();
    auto zeros = [&](const ClassFunction& t) { return gather_zeros(s, support_of(s, t), "synthetic", "", 50, 1); };
    const std::size_t id = g.find_class("id"), U = g.find_class("U");
    auto t1 = race_function(s.group(), U, id);
    CHECK(build_model(s, t1, zeros(t1), Assumptions{}).mean == doctest::Approx(double(p)));
    for (long x = 2; x < p; ++x) {
      const std::size_t T = g.find_class("T" + std::to_string(x));
      const long leg = kronecker(x, p);
      auto t2 = race_function(s.group(), T, id);
      CHECK(build_model(s, t2, zeros(t2), Assumptions{}).mean == doctest::Approx(double(p - leg)));
      auto t3 = race_function(s.group(), U, T);
      CHECK(build_model(s, t3, zeros(t3), Assumptions{}).mean == doctest::Approx(double(leg)));
    }
    // nontrivial pair x+, y+: only degree-1 characters enter
    auto t4 = race_function(s.group(), g.find_class("T2"), g.find_class("T3"));
    for (std::size_t chi : support_of(s, t4)) CHECK(g.table(chi, 0).real() == doctest::Approx(1));
  }
}

TEST_CASE("symmetric group mean for 1 - r") {
  for (int n : {4, 5, 6}) {
    auto s = unramified_spec(make_symmetric(n));
    auto t = one_minus_r(s.group());
    auto m = build_model(s, t, gather_zeros(s, support_of(s, t), "synthetic", "", 40, 2), no_li());
    CHECK(m.mean == doctest::Approx(double(partition_count(n) - 1)));
  }
}

TEST_CASE("central zeros enter the mean with the configured sign") {
  ZeroSet z = single(20);
  z.central_multiplicity = 1;
  std::vector<CharacterInput> s = {{"a", cplx(0.5, 0), z, 1.0}};
  auto m = assemble_model(1, s, no_li());
  CHECK(m.mean == doctest::Approx(2));
  Assumptions flip = no_li();
  flip.ord_sign = -1;
  CHECK(assemble_model(1, s, flip).mean == doctest::Approx(0));
}

TEST_CASE("LI variance closed form on bundled data") {
  auto m = mod4_model();
  CHECK(m.mean == doctest::Approx(2));
  CHECK(m.terms.size() >= 1000);
  CHECK(std::abs(variance_closed_form(m) - m.variance) < 1e-10);
  CHECK(m.truncation_height >= 1000);
  CHECK_FALSE(m.synthetic_zeros);
}

TEST_CASE("mod 4 race converges to the classical value") {
  // extending the bundled zeros by synthetic ones above the file height moves
  // the density towards 0.9959 as the variance approaches its full value
  auto z = load_label(bundled_zero_dir(), "chi_4_3");
  const double full_b0 = 0.15556798;
  double prev = 1;
  for (double T : {1200.0, 5000.0, 20000.0}) {
    ZeroSet all = z;
    auto extra = synthesize_zeros(std::log(4.0), 1, T, 5);
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (extra.ordinates[i] > z.height) all.ordinates.push_back(extra.ordinates[i]), all.multiplicities.push_back(1);
    all.height = T;
    std::vector<CharacterInput> s = {{"chi4", -1.0, all, std::log(4.0)}};
    auto m = assemble_model(1, s, Assumptions{});
    CHECK(m.variance < full_b0);
    const double d = density_inversion(m, 1e-7).delta;
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev > 0.9958);
  CHECK(prev < 0.9961);
}

TEST_CASE("moments") {
  std::vector<CharacterInput> s = {{"a", cplx(2, 0), single(14.0), 3.0}};
  auto m = assemble_model(0, s, Assumptions{});
  auto mo = moments(m);
  CHECK(mo.W4 == doctest::Approx(1 / 3.0));
  CHECK(mo.F == doctest::Approx(std::sqrt(m.variance) / 2));
  std::vector<CharacterInput> u = {{"a", 1.0, single(14.0), 2.0}, {"b", -1.0, single(15.0), 5.0}};
  auto mu = assemble_model(0, u, Assumptions{});
  CHECK(moments(mu).W4 * 7.0 == doctest::Approx(1));
  CHECK_THROWS_AS(moments(BiasModel{}), ConfigError);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto r = random_model(rng, 2 + i % 4, 50, 300, 0);
    const auto mr = moments(r);
    // implied constant measured at 0.71 over 200 such models
    CHECK(mr.F >= 0.5 * std::pow(r.variance, 1.0 / 6) / std::pow(r.tplus_norm1, 1.0 / 3));
    CHECK(mr.w4_constant > 0);
  }
}

TEST_CASE("characteristic function") {
  std::mt19937_64 rng(5);
  auto m = random_model(rng, 3, 50, 200, 0.7);
  CHECK(std::abs(char_function(m, 0) - 1.0) < 1e-15);
  for (double xi = -20; xi <= 20; xi += 0.37) {
    const cplx a = char_function(m, xi), b = char_function(m, -xi);
    CHECK(std::abs(a) <= 1 + 1e-15);
    CHECK(std::abs(a - std::conj(b)) < 1e-14);
  }
  std::vector<CharacterInput> s = {{"a", 1.0, single(14.134725), 1.0}};
  auto one = assemble_model(0, s, Assumptions{});
  for (double xi : {0.5, 3.0, 40.0}) {
    const cplx v = char_function(one, xi);
    CHECK(std::abs(v.imag()) < 1e-15);
    CHECK(v.real() == doctest::Approx(bessel_j0(2 * xi / std::sqrt(0.25 + 14.134725 * 14.134725))));
  }
}

TEST_CASE("normalised characteristic function sandwich") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    auto m = random_model(rng, 2 + i % 4, 50, 300, 0.3);
    const auto mo = moments(m);
    double c = 0;
    for (int k = 1; k <= 60; ++k) {
      const double eta = 0.6 * mo.F * k / 60;
      const double l = std::log(std::abs(normalized_char_function(m, eta)));
      CHECK(l <= -eta * eta / 2 + 1e-12);
      c = std::max(c, (-eta * eta / 2 - l) / (mo.W4 * std::pow(eta, 4)));
    }
    // quartic constant, measured at most 1.56 over 200 such models
    CHECK(c <= 2.0);
  }
}

TEST_CASE("inversion basics") {
  std::mt19937_64 rng(8);
  auto m = random_model(rng, 3, 50, 200, 0);
  auto d = density_inversion(m);
  CHECK(d.ok);
  CHECK(std::abs(d.delta - 0.5) <= std::max(d.error, 1e-12));
  double prev = d.delta;
  for (double mu : {0.1, 0.3, 0.6, 1.0, 2.0}) {
    m.mean = mu;
    const double v = density_inversion(m).delta;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
  std::vector<CharacterInput> s = {{"a", 1.0, single(14.0), 1.0}};
  auto one = assemble_model(0.05, s, Assumptions{});
  CHECK_FALSE(density_inversion(one).ok);
}

TEST_CASE("Monte Carlo basics") {
  std::mt19937_64 rng(9);
  auto m = random_model(rng, 3, 50, 200, 0);
  auto mc = density_monte_carlo(m, 100000, 17);
  CHECK(std::abs(mc.delta - 0.5) <= 3 * mc.error);
  CHECK(density_monte_carlo(m, 100000, 17).delta == mc.delta);
  CHECK(density_monte_carlo(m, 100000, 17, 4).delta == mc.delta);
  CHECK_THROWS_AS(density_monte_carlo(m, 100, 1), ConfigError);
  // single term: P[mu + a cos > 0] = arccos(-mu / a) / pi
  std::vector<CharacterInput> s = {{"a", 1.0, single(1.0), 1.0}};
  auto one = assemble_model(0.3, s, Assumptions{});
  const double a = one.terms[0].amplitude;
  auto e = density_monte_carlo(one, 400000, 3);
  CHECK(std::abs(e.delta - std::acos(-0.3 / a) / M_PI) <= 4 * e.error);
}

TEST_CASE("inversion and Monte Carlo agree on random models") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 10; ++i) {
    auto m = random_model(rng, 2 + i % 4, 50, 300, 0);
    m = with_bias(m, 0.1 * (i - 4));
    auto inv = density_inversion(m);
    auto mc = density_monte_carlo(m, 200000, 1000 + i);
    CHECK(inv.ok);
    CHECK(std::abs(inv.delta - mc.delta) <= 3 * std::hypot(inv.error, mc.error));
  }
}

TEST_CASE("sign symmetry and scaling") {
  std::mt19937_64 rng(31);
  auto m = random_model(rng, 3, 50, 200, 0);
  m = with_bias(m, 0.4);
  auto neg = m;
  neg.mean = -m.mean;
  const double d = density_inversion(m).delta;
  CHECK(density_inversion(neg).delta == doctest::Approx(1 - d).epsilon(1e-9));
  auto scaled = m;
  scaled.mean *= 2;
  for (auto& t : scaled.terms) t.amplitude *= 2, t.order *= 2;
  scaled.variance *= 4;
  CHECK(bias_factor(scaled).value == doctest::Approx(bias_factor(m).value).epsilon(1e-14));
  CHECK(density_monte_carlo(scaled, 50000, 4).delta == density_monte_carlo(m, 50000, 4).delta);
  CHECK(density_inversion(scaled).delta == doctest::Approx(d).epsilon(1e-9));
}

TEST_CASE("Gaussian route") {
  std::vector<CharacterInput> s = {{"a", 1.0, single(14.0), 1.0}, {"b", 1.0, single(15.0), 1.0}};
  auto z = assemble_model(0, s, Assumptions{});
  CHECK(density_gaussian(z).delta == doctest::Approx(0.5));
  CHECK(density_gaussian(z).expansion == doctest::Approx(0.5));
  CHECK_FALSE(density_gaussian(z).certified);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i) {
    auto m = with_bias(random_model(rng, 2 + i % 4, 50, 300, 0), 0.03 * i);
    auto g = density_gaussian(m);
    CHECK(std::abs(g.delta - density_inversion(m).delta) <= g.error_shape);
  }
  auto rs = radical_extension(3, 5);
  auto t = one_minus_r(rs.group());
  auto m = build_model(rs, t, gather_zeros(rs, support_of(rs, t), "auto", "", 200, 1), Assumptions{});
  const double excess = density_inversion(m).delta - 0.5;
  const double shape = density_gaussian(m).expansion - 0.5;
  CHECK(excess > 0);
  CHECK(excess / shape > 1.0 / 3);
  CHECK(excess / shape < 3.0);
}

TEST_CASE("Chebyshev bound") {
  BiasModel m;
  m.mean = 5;
  m.variance = 0.25;
  m.terms = {{14, 1, 1}};
  CHECK(density_chebyshev_bound(m) == doctest::Approx(0.98));
  m.mean = 0.5;
  CHECK_THROWS_AS(density_chebyshev_bound(m), ConfigError);
  std::mt19937_64 rng(51);
  for (int i = 0; i < 10; ++i) {
    auto r = random_model(rng, 2 + i % 4, 50, 300, 0);
    const double B = 1.5 + 0.3 * i;
    // scale so that mean >= 4 keeps the hypotheses
    const double scale = 4.5 / (B * std::sqrt(r.variance));
    for (auto& t : r.terms) t.amplitude *= scale;
    r.variance *= scale * scale;
    r = with_bias(r, B);
    const double bound = density_chebyshev_bound(r);
    CHECK(density_monte_carlo(r, 100000, i).delta >= bound);
  }
}

TEST_CASE("large deviation bounds") {
  std::mt19937_64 rng(61);
  auto m = random_model(rng, 3, 50, 300, 0);
  auto ld0 = large_deviation_bounds(m, 0, 1e9);
  REQUIRE(ld0.upper.has_value());
  CHECK(*ld0.upper == 1);
  CHECK_FALSE(ld0.certified);
  auto split = large_deviation_bounds(m, 1.0, 4);
  double big = 0;
  for (const auto& t : m.terms)
    if (t.amplitude >= 4) big += t.amplitude;
  CHECK(split.big_sum == big);
  for (int i = 0; i < 10; ++i) {
    auto r = random_model(rng, 2 + i % 4, 50, 300, 0);
    const double V = (1.0 + 0.3 * i) * std::sqrt(r.variance);
    auto ld = large_deviation_bounds(r, V, 0.05);
    if (!ld.upper) continue;
    auto tail = tail_monte_carlo(r, V, 100000, i);
    CHECK(tail.delta <= *ld.upper + 3 * tail.error);
  }
}

TEST_CASE("diagnostic bounds") {
  auto s5 = unramified_spec(make_symmetric(5));
  auto t = ClassFunction::indicator(s5.group(), 0) * double(s5.gplus().order);
  BiasModel dummy;
  auto rep = diagnostic_bounds(dummy, s5, t);
  double cubes = 0;
  for (Eigen::Index i = 0; i < s5.gplus().table.rows(); ++i) cubes += std::pow(s5.gplus().table(i, 0).real(), 3);
  CHECK(rep.weighted_sum == doctest::Approx(cubes));

  auto s6 = unramified_spec(make_symmetric(6));
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    auto f = random_class_function(s6.group(), rng);
    auto r = diagnostic_bounds(dummy, s6, f);
    for (const auto& c : r.checks)
      if (c.name.rfind("weighted_sum", 0) == 0) CHECK(c.holds);
  }

  auto d7 = unramified_spec(make_dihedral(7));
  auto omr = one_minus_r(d7.group());
  auto m = build_model(d7, omr, gather_zeros(d7, support_of(d7, omr), "synthetic", "", 40, 3), no_li());
  auto rd = diagnostic_bounds(m, d7, omr);
  bool found = false;
  for (const auto& c : rd.checks)
    if (c.name == "mean_bound") {
      found = true;
      CHECK(c.holds);
      CHECK(c.certified);
      CHECK(c.slack > 0);
    }
  CHECK(found);
  CHECK(rd.all_hold());
  CHECK(rd.eta >= 0);
  CHECK(rd.eta <= 1);
}

TEST_CASE("Dirichlet zero labels") {
  auto c4 = cyclotomic_extension(4);
  const auto& g4 = c4.gplus();
  for (std::size_t chi = 0; chi < g4.num_classes(); ++chi)
    CHECK(dirichlet_zero_label(c4, chi) == (chi == g4.trivial_character() ? "zeta" : "chi_4_3"));
  auto c5 = cyclotomic_extension(5);
  std::multiset<std::string> labels;
  for (std::size_t chi = 0; chi < c5.gplus().num_classes(); ++chi) labels.insert(dirichlet_zero_label(c5, chi));
  CHECK(labels == std::multiset<std::string>{"zeta", "chi_5_2", "chi_5_3", "chi_5_4"});
  auto q3 = quadratic_extension(-3);
  CHECK(dirichlet_zero_label(q3, 1 - q3.gplus().trivial_character()) == "chi_3_2");
  auto r = radical_extension(3, 5);
  CHECK(dirichlet_zero_label(r, r.gplus().num_classes() - 1).empty());
  auto mq = multiquadratic_extension({3, 5});
  int five = 0;
  for (std::size_t chi = 0; chi < mq.gplus().num_classes(); ++chi) five += dirichlet_zero_label(mq, chi) == "chi_5_4";
  CHECK(five == 1);
  auto t = race_function(r.group(), r.gplus().find_class("U"), r.gplus().find_class("id"));
  CHECK_THROWS_AS(gather_zeros(r, support_of(r, t), "bundled", "", 100, 1), DataMissingError);
  CHECK_THROWS_AS(gather_zeros(r, support_of(r, t), "other", "", 100, 1), ConfigError);
  auto a = gather_zeros(r, support_of(r, t), "auto", "", 100, 1);
  auto b = gather_zeros(r, support_of(r, t), "auto", "", 100, 1);
  CHECK(a.begin()->second.ordinates == b.begin()->second.ordinates);
  CHECK(a.begin()->second.synthetic);
}
