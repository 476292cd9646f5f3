#include "chebias/family.hpp"
#include "chebias/race.hpp"
#include "chebias/sieve.hpp"

#include <doctest.h>

#include <sstream>

using namespace chebias;

namespace {

std::vector<ExtensionSpec> catalog() {
  return {radical_extension(3, 5),  radical_extension(3, 7),          radical_extension(5, 7),
          radical_extension(7, 11), multiquadratic_extension({3, 5}), multiquadratic_extension({3, 7, 11}),
          cyclotomic_extension(4),  cyclotomic_extension(5),          cyclotomic_extension(12),
          cyclotomic_extension(15), quadratic_extension(-4),          quadratic_extension(5),
          quadratic_extension(-23), hilbert_class_field(-23),         hilbert_class_field(-47),
          hilbert_class_field(-4),  hilbert_class_field(-84)};
}

long sum_degree_exponent(const ExtensionSpec& s, long p) { return conductor_discriminant_sum(s, p); }

}  // namespace

TEST_CASE("radical conductor exponents") {
  auto s = radical_extension(3, 5);
  const auto& g = s.gplus();
  std::vector<long> at_p, at_a;
  for (std::size_t chi = 0; chi < g.num_classes(); ++chi) {
    at_p.push_back(conductor_exponent(s, 5, chi));
    at_a.push_back(conductor_exponent(s, 3, chi));
  }
  CHECK(at_p == std::vector<long>{0, 1, 1, 1, 5});
  CHECK(at_a == std::vector<long>{0, 0, 0, 0, 4});
  CHECK(sum_degree_exponent(s, 5) == 23);
  CHECK(sum_degree_exponent(s, 3) == 16);
  const std::size_t eta = g.num_classes() - 1;
  CHECK(global_log_conductor(s, eta) == doctest::Approx(4 * std::log(3.0) + 5 * std::log(5.0)).epsilon(1e-14));
  for (std::size_t psi = 1; psi < eta; ++psi)
    CHECK(global_log_conductor(s, psi) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(global_log_conductor(s, 0) == 0);
  CHECK(s.log_disc == doctest::Approx(23 * std::log(5.0) + 16 * std::log(3.0)));
  // regular character exponent: (|G|/|G_0|) sum (|G_i| - 1)
  CHECK(sum_degree_exponent(s, 5) == (20 - 1) + (5 - 1));
  CHECK(sum_degree_exponent(s, 3) == (20 / 5) * (5 - 1));
}

TEST_CASE("radical preconditions") {
  CHECK_THROWS_AS(radical_extension(2, 3), ConfigError);
  CHECK_THROWS_AS(radical_extension(5, 5), ConfigError);
  CHECK_FALSE(wieferich_ok(3, 11));
  CHECK_THROWS_AS(radical_extension(3, 11), ConfigError);
  CHECK(wieferich_ok(7, 11));
}

TEST_CASE("multiquadratic exponents") {
  auto s = multiquadratic_extension({3, 5});
  const auto& g = s.gplus();
  int ramified_at_3 = 0;
  for (std::size_t chi = 0; chi < g.num_classes(); ++chi) {
    const long n3 = conductor_exponent(s, 3, chi);
    CHECK((n3 == 0 || n3 == 1));
    ramified_at_3 += n3;
    // n = (1 - chi(e_1)) / 2 with e_1 the generator attached to 3
    const std::size_t e1 = g.find_class("-+");
    CHECK(n3 == std::lround((1 - g.table(chi, e1).real()) / 2));
  }
  CHECK(ramified_at_3 == 2);
  for (std::size_t chi = 0; chi < g.num_classes(); ++chi)
    if (chi == g.trivial_character()) CHECK(global_log_conductor(s, chi) == 0);
  auto big = multiquadratic_extension({3, 7, 11});
  for (long p : {3L, 7L, 11L}) CHECK(sum_degree_exponent(big, p) == 4);
  CHECK_THROWS_AS(multiquadratic_extension({3, 3}), ConfigError);
  CHECK_THROWS_AS(multiquadratic_extension({3, 4}), ConfigError);
}

TEST_CASE("class groups of imaginary quadratic fields") {
  CHECK(class_group_imaginary(-23) == std::vector<long>{3});
  CHECK(class_group_imaginary(-4).empty());
  CHECK(class_group_imaginary(-47) == std::vector<long>{5});
  CHECK(class_group_imaginary(-71) == std::vector<long>{7});
  auto c84 = class_group_imaginary(-84);
  std::sort(c84.begin(), c84.end());
  CHECK(c84 == std::vector<long>{2, 2});
  CHECK(reduced_forms(-23).size() == 3);
  // class numbers against the table of h(-d)
  const std::vector<std::pair<long, long>> h = {{-3, 1}, {-7, 1}, {-15, 2}, {-20, 2}, {-31, 3}, {-39, 4}, {-56, 4},
                                                {-104, 6}, {-163, 1}, {-260, 8}};
  for (auto [d, hd] : h) {
    long prod = 1;
    for (long o : class_group_imaginary(d)) prod *= o;
    CHECK(prod == hd);
  }
  CHECK_THROWS_AS(class_group_imaginary(-12), ConfigError);
}

TEST_CASE("Hilbert class fields") {
  auto s = hilbert_class_field(-23);
  CHECK(s.gplus().order == 6);
  CHECK(s.log_rd() == doctest::Approx(std::log(23.0) / 2));
  CHECK(s.embedding.has_value());
  CHECK(s.embedding->index() == 2);
  auto t = hilbert_class_field(-4);
  CHECK(t.gplus().order == 2);
  for (long d : {-23L, -47L, -84L, -104L, -4L}) {
    auto h = hilbert_class_field(d);
    for (std::size_t chi = 0; chi < h.gplus().num_classes(); ++chi) CHECK(fs_classify(h.gplus(), chi) == FSType::Orthogonal);
  }
  CHECK_THROWS_AS(hilbert_class_field(-12), ConfigError);
}

TEST_CASE("Hilbert class field conductors by genus theory") {
  auto conductors = [](const ExtensionSpec& s) {
    std::vector<long> out;
    for (std::size_t chi = 0; chi < s.gplus().num_classes(); ++chi)
      out.push_back(std::lround(std::exp(global_log_conductor(s, chi))));
    std::sort(out.begin(), out.end());
    return out;
  };
  // genus field Q(i, sqrt-3, sqrt-7): the seven quadratic subfields
  auto a = hilbert_class_field(-84);
  CHECK(conductors(a) == std::vector<long>{1, 3, 4, 7, 12, 21, 28, 84});
  // h = 6: trivial, Q(sqrt-8), Q(sqrt13), K, and two dihedral characters of conductor 104
  auto b = hilbert_class_field(-104);
  CHECK(conductors(b) == std::vector<long>{1, 8, 13, 104, 104, 104});
  for (const auto& s : {a, b})
    for (const auto& rp : s.ramified) {
      CHECK_FALSE(rp.approximate);
      CHECK(conductor_discriminant_sum(s, rp.prime) == disc_valuation(s, rp.prime));
    }
}

TEST_CASE("dihedral Kluners bound") {
  auto r = dihedral_kluners(7, 5, 71, 211);
  CHECK(r.log_disc_bound == doctest::Approx(7 * std::log(5.0) + 12 * std::log(71.0 * 211.0)));
  CHECK(r.spec.disc_is_bound);
  CHECK_THROWS_AS(dihedral_kluners(7, 5, 9, 211), ConfigError);
  CHECK_THROWS_AS(dihedral_kluners(7, 5, 23, 211), ConfigError);  // 23 = 2 mod 7
  auto r2 = dihedral_kluners(7, 5, 71, 281);
  CHECK(r2.log_disc_bound > r.log_disc_bound);
}

TEST_CASE("conductor-discriminant identity and conductor bounds on the catalog") {
  for (const auto& s : catalog()) {
    CAPTURE(s.family);
    CAPTURE(s.params.front());
    CHECK_NOTHROW(verify_spec(s));
    CHECK(s.log_rd() >= 0);
    for (const auto& rp : s.ramified)
      if (!rp.approximate && !s.disc_factors.empty()) CHECK(sum_degree_exponent(s, rp.prime) == disc_valuation(s, rp.prime));
    bool exact = true;
    for (const auto& rp : s.ramified) exact = exact && !rp.approximate;
    for (std::size_t chi = 0; exact && chi < s.gplus().num_classes(); ++chi) {
      const bool trivial = chi == s.gplus().trivial_character();
      CHECK((global_log_conductor(s, chi) > 0) != trivial);
      const auto b = conductor_bounds(s, chi);
      if (b.skipped) continue;
      CHECK(b.lower <= b.upper + 1e-12);
      const double la = global_log_conductor(s, chi);
      CHECK(la >= b.lower - 1e-9);
      CHECK(la <= b.upper + 1e-9);
    }
  }
}

TEST_CASE("conductor bound conventions") {
  auto s = radical_extension(3, 5);
  CHECK(conductor_bounds(s, 0).skipped);
  auto b = conductor_bounds(s, 1);
  CHECK(b.m_chi == doctest::Approx(1));
  CHECK(b.refined_lower == doctest::Approx(0));
  CHECK(b.coarse_lower > 0);
}

TEST_CASE("least prime bounds") {
  auto s = radical_extension(3, 5);
  const double ld = s.log_disc;
  auto mb = murty_least_prime_bound(s, s.gplus().find_class("id"));
  CHECK(mb.first == doctest::Approx(ld * ld));
  CHECK(mb.shape_only);
  CHECK(mb.ell_max == static_cast<int>(std::ceil(std::log(ld))));

  auto s6 = make_symmetric(6);
  for (std::size_t c = 0; c < s6->num_classes(); ++c) {
    auto ind = ClassFunction::indicator(s6, c);
    const double lam = norms(ind).littlewood;
    const double hat1 = fourier_transform(ind)[static_cast<Eigen::Index>(s6->trivial_character())].real();
    CHECK(lam / hat1 <= double(s6->order) / std::sqrt(double(s6->classes[c].size)) + 1e-9);
  }
  auto s5 = make_symmetric(5);
  for (std::size_t c = 0; c < s5->num_classes(); ++c)
    for (long l : {2L, 3L, 5L}) {
      auto ind = ClassFunction::indicator(s5, c);
      const double lam = norms(power_compose(ind, l)).littlewood;
      const double hat1 = fourier_transform(ind)[static_cast<Eigen::Index>(s5->trivial_character())].real();
      CHECK(lam / hat1 <= std::pow(double(s5->order), 1.5) / double(s5->classes[c].size) + 1e-9);
    }
}

TEST_CASE("Chebotarev error bound") {
  auto s = radical_extension(3, 5);
  const auto& g = s.gplus();
  auto t = race_function(s.group(), g.find_class("U"), g.find_class("id"));
  double prev = 0;
  for (double x : {10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
    const double b = chebotarev_error_bound(s, t, x);
    CHECK(b > prev);
    prev = b;
  }
  auto counts = sieve_classify(s, {1e5, 1e6});
  auto series = race_series(counts, t);
  const double observed = std::abs(series.pi_t[1] - series.t_hat_one * log_integral(1e6));
  CHECK(chebotarev_error_bound(s, t, 1e6) >= observed);
}

TEST_CASE("spec text roundtrip and conductor CSV") {
  for (const auto& s : catalog()) {
    std::stringstream ss;
    write_spec(ss, s);
    auto r = read_spec(ss);
    CHECK(r.family == s.family);
    CHECK(r.log_disc == doctest::Approx(s.log_disc).epsilon(1e-15));
    for (std::size_t chi = 0; chi < s.gplus().num_classes(); ++chi)
      CHECK(global_log_conductor(r, chi) == doctest::Approx(global_log_conductor(s, chi)));
  }
  std::ostringstream csv;
  write_conductor_csv(csv, radical_extension(3, 5));
  CHECK(csv.str().rfind("character,degree", 0) == 0);
  std::istringstream bad("family custom\ngroup cyclic 2\nlogdisc 1\nprime 3\nfiltration 0 0 5\n");
  CHECK_THROWS(read_spec(bad));
}

TEST_CASE("Kronecker symbol") {
  CHECK(kronecker(3, 11) == 1);
  CHECK(kronecker(5, 11) == 1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(12, 3) == 0);
  CHECK(is_fundamental_discriminant(-23));
  CHECK_FALSE(is_fundamental_discriminant(-12));
  CHECK(field_discriminant(3) == 12);
}
