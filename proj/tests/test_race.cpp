#include "chebias/race.hpp"
#include "chebias/sieve.hpp"

#include <doctest.h>

using namespace chebias;

TEST_CASE("Frobenius classes in small examples") {
  auto m4 = cyclotomic_extension(4);
  const auto& g4 = m4.gplus();
  CHECK(is_excluded_prime(m4, 2));
  CHECK(frobenius_class(m4, 3) == g4.find_class("3"));
  CHECK(frobenius_class(m4, 5) == g4.find_class("1"));
  CHECK(frobenius_class(m4, 7) == g4.find_class("3"));

  auto r = radical_extension(3, 5);
  const auto& g = r.gplus();
  CHECK(is_excluded_prime(r, 3));
  CHECK(is_excluded_prime(r, 5));
  // 3 is not a fifth power mod 11, and 7 = 2 mod 5
  CHECK(frobenius_class(r, 11) == g.find_class("U"));
  CHECK(frobenius_class(r, 7) == g.find_class("T2"));
  CHECK(frobenius_class(r, 41) == g.find_class("id"));

  auto q = quadratic_extension(-4);
  CHECK(frobenius_class(q, 5) == q.gplus().find_class("+"));
  CHECK(frobenius_class(q, 7) == q.gplus().find_class("-"));
}

TEST_CASE("class counts add up to pi(x)") {
  const std::vector<double> xs = {1e3, 1e5, 1e6};
  const std::vector<std::uint64_t> pis = {168, 9592, 78498};
  for (const auto& s : {radical_extension(3, 5), multiquadratic_extension({3, 5}), cyclotomic_extension(12)}) {
    auto c = sieve_classify(s, xs);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      std::uint64_t total = c.excluded[k];
      for (auto n : c.counts[k]) total += n;
      CHECK(c.pi[k] == pis[k]);
      CHECK(total == pis[k]);
    }
  }
}

TEST_CASE("hand count at 26") {
  auto m4 = cyclotomic_extension(4);
  auto c = sieve_classify(m4, {26});
  const auto& g = m4.gplus();
  // 3 7 11 19 23 against 5 13 17
  CHECK(c.counts[0][g.find_class("3")] == 5);
  CHECK(c.counts[0][g.find_class("1")] == 3);
  CHECK(c.excluded[0] == 1);
}

TEST_CASE("radical classes agree with root counts") {
  for (auto [a, p] : std::vector<std::pair<long, long>>{{3, 5}, {3, 7}, {7, 11}}) {
    auto s = radical_extension(a, p);
    const FrobeniusClassifier fc(s);
    long checked = 0;
    for (auto l : primes_up_to(200000)) {
      const long ll = static_cast<long>(l);
      if (fc.excluded(ll) || ll % p != 1) continue;
      CHECK(fc.classify(ll) == radical_class_by_root_count(a, p, ll));
      ++checked;
    }
    CHECK(checked > 1000);
  }
}

TEST_CASE("logarithmic integral") {
  CHECK(log_integral(2) == 0);
  CHECK(log_integral(1e8) == doctest::Approx(5762208.33).epsilon(1e-9));
  CHECK(log_integral(1e6) == doctest::Approx(78626.5).epsilon(1e-6));
  CHECK(log_integral_between(1e3, 1e6) == doctest::Approx(log_integral(1e6) - log_integral(1e3)).epsilon(1e-12));
  CHECK_THROWS(log_integral(0.5));
}

TEST_CASE("empirical density of toy series") {
  std::vector<double> y, pos, neg, half;
  for (int i = 0; i <= 1000; ++i) {
    y.push_back(10 + 0.01 * i);
    pos.push_back(1);
    neg.push_back(-1);
    half.push_back(std::sin(2 * M_PI * (y.back() - 10)));
  }
  CHECK(empirical_density(y, pos).density == 1);
  CHECK(empirical_density(y, neg).density == 0);
  CHECK(empirical_density(y, half).density == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS(empirical_density(std::vector<double>(10, 1), std::vector<double>(10, 1)), ConfigError);
}

TEST_CASE("race series for the mod 4 race") {
  auto s = cyclotomic_extension(4);
  auto t = race_function(s.group(), "race:3,1");
  auto counts = sieve_classify(s, log_checkpoints(1e3, 1e7, 200));
  auto series = race_series(counts, t);
  CHECK(series.t_hat_one == doctest::Approx(0).epsilon(1e-12));
  auto d = empirical_density(series);
  CHECK(d.density > 0.9);
  CHECK(d.band_lo <= d.density);
  CHECK(d.band_hi >= d.density);
}

TEST_CASE("explicit formula") {
  const auto dir = bundled_zero_dir();
  const std::vector<double> xs = {100.5, 1000.5, 1e4 + 0.5, 1e5 + 0.5};
  auto zeta = load_label(dir, "zeta");
  auto rz = explicit_formula_check(bundled_character("zeta"), zeta, nullptr, xs);
  auto m4 = load_label(dir, "chi_4_3");
  auto r4 = explicit_formula_check(bundled_character("chi_4_3"), m4, nullptr, xs);
  for (const auto* r : {&rz, &r4}) {
    CHECK(r->constant < 1);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(r->residual[i] <= r->shape[i]);
  }
  // psi(100) by hand
  auto small = explicit_formula_check(bundled_character("zeta"), zeta, nullptr, {100.5});
  CHECK(small.psi[0].real() == doctest::Approx(94.045).epsilon(1e-4));
  auto m5 = bundled_character("chi_5_2");
  CHECK(m5.values[2] == cplx(0, 1));
  CHECK_THROWS_AS(bundled_character("chi_7_3"), ConfigError);
}

TEST_CASE("least primes") {
  auto m4 = cyclotomic_extension(4);
  CHECK(least_prime_search(m4, m4.gplus().find_class("3")).prime == 3);
  auto r = radical_extension(3, 5);
  CHECK(least_prime_search(r, r.gplus().find_class("id")).prime == 41);
  auto mq = multiquadratic_extension({3, 5});
  auto lp = least_prime_search(mq, 0);
  CHECK(lp.found);
  CHECK(lp.prime == 11);
}

TEST_CASE("Chebotarev frequencies") {
  auto s = radical_extension(3, 7);
  const auto& g = s.gplus();
  auto c = sieve_classify(s, {1e7});
  double total = 0;
  for (auto n : c.counts[0]) total += double(n);
  for (std::size_t k = 0; k < g.num_classes(); ++k) {
    const double expected = double(g.classes[k].size) / double(g.order);
    CHECK(std::abs(double(c.counts[0][k]) / total - expected) < 0.01);
  }
}

TEST_CASE("sieve output does not depend on the worker count") {
  auto s = multiquadratic_extension({3, 7, 11});
  const auto xs = log_checkpoints(1e4, 3e7, 50);
  auto a = sieve_classify(s, xs, 1);
  auto b = sieve_classify(s, xs, 3);
  CHECK(a.counts == b.counts);
  CHECK(a.pi == b.pi);
  CHECK(prime_pi(30000000, 1) == prime_pi(30000000, 4));
}
