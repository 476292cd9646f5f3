#include "chebias/bessel.hpp"
#include "chebias/zeros.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

using namespace chebias;
namespace fs = std::filesystem;

namespace {

ZeroSet parse(const std::string& text) {
  std::istringstream in(text);
  return parse_zeros(in, "test");
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("chebias_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("zero file parsing") {
  auto z = parse("14.134725 1\n");
  CHECK(z.size() == 1);
  CHECK(z.ordinates[0] == doctest::Approx(14.134725));
  auto d = parse("21.0 1\n21.0 1\n");
  CHECK(d.size() == 1);
  CHECK(d.multiplicities[0] == 2);
  CHECK_THROWS_AS(parse("-1.0 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("0 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("5.0 1\n4.0 1\n"), ConfigError);
  try {
    parse("# label: x\n1.0 1\nabc\n");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  auto h = parse("# label: zeta\n# logA: 0\n# degree: 1\n# height: 30\n# central_multiplicity: 0\n14.1 1\n");
  CHECK(h.label == "zeta");
  CHECK(h.height == 30);
}

TEST_CASE("save and load roundtrip") {
  auto z = synthesize_zeros(std::log(7.0), 1, 200, 11);
  z.label = "roundtrip";
  std::stringstream ss;
  save_zeros(ss, z);
  auto back = parse_zeros(ss);
  REQUIRE(back.size() == z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(std::abs(back.ordinates[i] - z.ordinates[i]) < 1e-9);
    CHECK(back.multiplicities[i] == z.multiplicities[i]);
  }
  CHECK(back.height == z.height);
  CHECK(back.log_conductor == z.log_conductor);
  std::stringstream again;
  save_zeros(again, back);
  std::stringstream first;
  save_zeros(first, back);
  CHECK(again.str() == first.str());
}

TEST_CASE("zero-count main term") {
  CHECK(zero_count_mainterm(0, 1, 30) == doctest::Approx(5.38).epsilon(0.01));
  CHECK(zero_count_mainterm(0, 1, 1e-9) == doctest::Approx(0).epsilon(1e-6));
  for (double T : {10.0, 50.0, 300.0}) CHECK(zero_count_mainterm(0, 1, 2 * T) > 2 * zero_count_mainterm(0, 1, T));
}

TEST_CASE("bundled zero data") {
  const auto dir = bundled_zero_dir();
  for (const char* label : {"zeta", "chi_3_2", "chi_4_3", "chi_5_4", "chi_5_2", "chi_5_3"}) {
    CAPTURE(label);
    auto z = load_label(dir, label);
    CHECK(z.size() >= 1000);
    CHECK_FALSE(z.synthetic);
    const auto c = check_zero_count(z, 3.0);
    CHECK(c.ok);
  }
  auto zeta = load_label(dir, "zeta");
  CHECK(zeta.ordinates[0] == doctest::Approx(14.134725142).epsilon(1e-10));
  CHECK(zeta.ordinates[1] == doctest::Approx(21.022039639).epsilon(1e-10));
  long upto30 = 0;
  for (double g : zeta.ordinates) upto30 += g <= 30;
  CHECK(2 * upto30 == 6);
  auto m4 = load_label(dir, "chi_4_3");
  CHECK(m4.ordinates[0] == doctest::Approx(6.020948905).epsilon(1e-9));
  // full sum 2 Re sum 1/rho = 2 (L'/L(1) + log(4/pi)/2 - gamma/2), where
  // L'/L(1) = gamma + 2 log 2 + 3 log pi - 4 log Gamma(1/4); the part above T is
  // about (log(4T / 2pi) + 1) / (pi T)
  const double euler = 0.5772156649015329, pi = M_PI;
  const double lprime = euler + 2 * std::log(2.0) + 3 * std::log(pi) - 4 * std::lgamma(0.25);
  const double full = 2 * (lprime + std::log(4 / pi) / 2 - euler / 2);
  CHECK(full == doctest::Approx(0.15556798).epsilon(1e-7));
  const double above = (std::log(4 * m4.height / (2 * pi)) + 1) / (pi * m4.height);
  CHECK(std::abs(b_sums(m4).B0 + above - full) < 1e-5);
  CHECK_THROWS_AS(load_label(dir, "no_such_label"), DataMissingError);
}

TEST_CASE("B sums") {
  auto z = parse("14.134725 1\n");
  auto b = b_sums(z);
  CHECK(b.B0 == doctest::Approx(0.009999).epsilon(1e-4));
  CHECK(std::abs(b.B0 - 2 / (0.25 + 14.134725 * 14.134725)) < 1e-15);
  ZeroSet c;
  c.height = 1;
  c.central_multiplicity = 2;
  auto bc = b_sums(c);
  CHECK(bc.B == doctest::Approx(8));
  CHECK(bc.B0 == 0);
  ZeroSet e;
  e.height = 1;
  CHECK(b_sums(e).empty_warning);
  // additivity over disjoint ranges
  auto full = synthesize_zeros(std::log(5.0), 1, 400, 3);
  ZeroSet lo = full, hi = full;
  lo.ordinates.clear(), lo.multiplicities.clear(), hi.ordinates.clear(), hi.multiplicities.clear();
  for (std::size_t i = 0; i < full.size(); ++i) {
    auto& dst = full.ordinates[i] <= 200 ? lo : hi;
    dst.ordinates.push_back(full.ordinates[i]);
    dst.multiplicities.push_back(1);
  }
  CHECK(std::abs(b_sums(lo).B0 + b_sums(hi).B0 - b_sums(full).B0) < 1e-12);
}

TEST_CASE("synthetic zeros") {
  auto a = synthesize_zeros(std::log(11.0), 2, 300, 42);
  auto b = synthesize_zeros(std::log(11.0), 2, 300, 42);
  CHECK(a.ordinates == b.ordinates);
  CHECK(a.synthetic);
  CHECK(check_zero_count(a).ok);
  for (int m : a.multiplicities) CHECK(m == 1);
  CHECK_THROWS_AS(synthesize_zeros(1, 1, 100, 1, "other"), ConfigError);
  // B0 scales like log q: one constant fits both conductors within a factor 2
  std::vector<double> ratios;
  for (double q : {1e3, 1e6}) ratios.push_back(b_sums(synthesize_zeros(std::log(q), 1, 200, 9)).B0 / std::log(q));
  CHECK(ratios[1] / ratios[0] > 0.5);
  CHECK(ratios[1] / ratios[0] < 2.0);
}

TEST_CASE("LI check on zero sets") {
  auto d = parse("21.0 1\n21.0 1\n");
  CHECK_THROWS_AS(check_li(d, FSType::Orthogonal), ConfigError);
  ZeroSet c;
  c.height = 1;
  c.central_multiplicity = 1;
  CHECK_THROWS_AS(check_li(c, FSType::Orthogonal), ConfigError);
  CHECK_NOTHROW(check_li(c, FSType::Symplectic));
}

TEST_CASE("cache layout and atomic writes") {
  const auto dir = temp_dir("cache");
  auto z = synthesize_zeros(std::log(3.0), 1, 100, 1);
  z.label = "demo";
  store_in_cache(dir, z);
  CHECK(fs::exists(dir / "demo" / "100.zeros"));
  auto taller = synthesize_zeros(std::log(3.0), 1, 150, 1);
  taller.label = "demo";
  store_in_cache(dir, taller);
  CHECK(load_label(dir, "demo").height == 150);
  CHECK(available_labels(dir) == std::vector<std::string>{"demo"});
  for (const auto& e : fs::directory_iterator(dir / "demo")) CHECK(e.path().extension() == ".zeros");
  ::setenv("CHEBIAS_CACHE_DIR", dir.c_str(), 1);
  CHECK(resolve_cache_dir() == dir);
  CHECK(resolve_cache_dir("/explicit") == fs::path("/explicit"));
  ::unsetenv("CHEBIAS_CACHE_DIR");
  CHECK(resolve_cache_dir() == bundled_zero_dir());
  fs::remove_all(dir);
}

TEST_CASE("Bessel J0") {
  CHECK(bessel_j0(0) == 1);
  CHECK(bessel_j0(2.404825557695773) == doctest::Approx(0).epsilon(1e-12));
  for (double x : {0.5, 3.0, 7.7, 11.9, 12.0, 12.1, 20.0, 55.5, 300.0}) {
    CAPTURE(x);
    CHECK(std::abs(bessel_j0(x) - bessel_j0_quadrature(x)) < 1e-12);
    CHECK(bessel_j0(-x) == bessel_j0(x));
  }
  CHECK(std::abs(bessel_j0_series(12) - bessel_j0_quadrature(12)) < 1e-12);
  CHECK(std::abs(bessel_j0_asymptotic(12) - bessel_j0_quadrature(12)) < 1e-12);
  // majorant used for the inversion cutoff
  for (double x = 0.05; x < 60; x += 0.05) {
    const double j = std::abs(bessel_j0(x));
    if (x < 2.4) CHECK(j <= std::exp(-x * x / 4) + 1e-15);
    CHECK(j <= std::sqrt(2 / (M_PI * x)) + 1e-15);
  }
}
