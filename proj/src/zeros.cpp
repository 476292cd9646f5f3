#include "chebias/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace chebias {

namespace fs = std::filesystem;

long ZeroSet::count() const {
  long n = 0;
  for (int m : multiplicities) n += m;
  return n;
}

void validate_zeros(const ZeroSet& z) {
  if (z.ordinates.size() != z.multiplicities.size()) throw InvariantError(z.label + ": multiplicity count mismatch");
  if (z.central_multiplicity < 0) throw InvariantError(z.label + ": negative central multiplicity");
  if (!(z.height > 0)) throw InvariantError(z.label + ": height must be positive");
  for (std::size_t i = 0; i < z.ordinates.size(); ++i) {
    if (!(z.ordinates[i] > 0)) throw InvariantError(z.label + ": ordinates must be positive");
    if (i > 0 && !(z.ordinates[i] > z.ordinates[i - 1])) throw InvariantError(z.label + ": ordinates not increasing");
    if (z.multiplicities[i] < 1) throw InvariantError(z.label + ": multiplicity below 1");
  }
  if (!z.ordinates.empty() && z.ordinates.back() > z.height) throw InvariantError(z.label + ": ordinate above height");
}

void check_li(const ZeroSet& z, FSType fs) {
  for (int m : z.multiplicities)
    if (m != 1) throw ConfigError(z.label + ": LI requires simple zeros");
  if (z.central_multiplicity != 0 && fs != FSType::Symplectic)
    throw ConfigError(z.label + ": LI allows a central zero only for symplectic characters");
}

ZeroSet parse_zeros(std::istream& in, const std::string& name) {
  ZeroSet z;
  z.label = name;
  bool have_height = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      std::string value = line.substr(colon + 1);
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t") + 1);
        return s;
      };
      key = trim(key);
      value = trim(value);
      try {
        if (key == "label") z.label = value;
        else if (key == "logA") z.log_conductor = std::stod(value);
        else if (key == "degree") z.degree = std::stoi(value);
        else if (key == "height") z.height = std::stod(value), have_height = true;
        else if (key == "central_multiplicity") z.central_multiplicity = std::stoi(value);
        else if (key == "assumed_beta") z.assumed_beta = std::stod(value);
        else if (key == "synthetic") z.synthetic = value == "1" || value == "true";
        else if (key == "source") z.source = value;
      } catch (const std::logic_error&) {
        fail("bad header value for '" + key + "'");
      }
      continue;
    }
    std::istringstream ls(line);
    double gamma;
    int mult = 1;
    if (!(ls >> gamma)) fail("expected '<gamma> <multiplicity>'");
    if (!(ls >> mult)) mult = 1;
    std::string rest;
    if (ls >> rest) fail("trailing text");
    if (!std::isfinite(gamma) || gamma <= 0) fail("ordinate must be positive");
    if (mult < 1) fail("multiplicity must be at least 1");
    if (!z.ordinates.empty()) {
      const double prev = z.ordinates.back();
      if (std::abs(gamma - prev) <= 1e-9) {
        z.multiplicities.back() += mult;
        continue;
      }
      if (gamma < prev) fail("ordinates not increasing");
    }
    z.ordinates.push_back(gamma);
    z.multiplicities.push_back(mult);
  }
  if (!have_height) z.height = z.ordinates.empty() ? 1.0 : z.ordinates.back();
  validate_zeros(z);
  return z;
}

ZeroSet load_zeros(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataMissingError("cannot open zero file " + path.string());
  return parse_zeros(in, path.string());
}

void save_zeros(std::ostream& out, const ZeroSet& z) {
  char buf[64];
  out << "# label: " << z.label << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", z.log_conductor);
  out << "# logA: " << buf << "\n";
  out << "# degree: " << z.degree << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", z.height);
  out << "# height: " << buf << "\n";
  out << "# central_multiplicity: " << z.central_multiplicity << "\n";
  if (z.assumed_beta != 0.5) {
    std::snprintf(buf, sizeof buf, "%.17g", z.assumed_beta);
    out << "# assumed_beta: " << buf << "\n";
  }
  if (z.synthetic) out << "# synthetic: 1\n";
  if (!z.source.empty()) out << "# source: " << z.source << "\n";
  for (std::size_t i = 0; i < z.ordinates.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9f %d\n", z.ordinates[i], z.multiplicities[i]);
    out << buf;
  }
}

void save_zeros_atomic(const fs::path& path, const ZeroSet& z) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    save_zeros(out, z);
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

double zero_count_mainterm(double log_a, int degree, double height) {
  if (height <= 0) return 0;
  return height / std::numbers::pi * (log_a + degree * std::log(height / (2 * std::numbers::pi * std::numbers::e)));
}

ZeroCountCheck check_zero_count(const ZeroSet& z, double slack) {
  ZeroCountCheck c;
  c.twice_count = 2 * z.count() + z.central_multiplicity;
  c.mainterm = zero_count_mainterm(z.log_conductor, z.degree, z.height);
  c.deviation = std::abs(double(c.twice_count) - c.mainterm);
  c.allowed = slack * (z.log_conductor + z.degree * std::log(z.height + 4));
  c.ok = c.deviation <= c.allowed;
  return c;
}

ZeroSet synthesize_zeros(double log_a, int degree, double height, std::uint64_t seed, const std::string& mode) {
  if (mode != "unfolded-uniform") throw ConfigError("unknown synthesis mode '" + mode + "'");
  if (height < 1 || degree < 1) throw ConfigError("synthesize_zeros: need T >= 1 and degree >= 1");
  ZeroSet z;
  z.label = "synthetic";
  z.height = height;
  z.log_conductor = log_a;
  z.degree = degree;
  z.synthetic = true;
  z.source = "unfolded-uniform seed " + std::to_string(seed);
  const double two_pi = 2 * std::numbers::pi;
  // positive-ordinate count N(T) = mainterm / 2, increasing beyond t_min
  auto N = [&](double t) { return zero_count_mainterm(log_a, degree, t) / 2; };
  const double t_min = two_pi * std::exp(-log_a / degree);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> g;
  if (t_min < height) {
    const long K = static_cast<long>(std::floor(N(height) + 0.5));
    for (long k = 1; k <= K; ++k) {
      const double target = k - 0.5;
      double lo = t_min, hi = height;
      if (N(hi) < target) break;
      for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (N(mid) < target ? lo : hi) = mid;
      }
      const double x = 0.5 * (lo + hi);
      const double density = (log_a + degree * std::log(x / two_pi)) / two_pi;
      const double spacing = density > 0 ? 1.0 / density : 1.0;
      const double y = x + u(rng) * spacing;
      // jitter past either end drops the zero rather than piling it on the boundary
      if (y > 0 && y <= height) g.push_back(y);
    }
  }
  std::sort(g.begin(), g.end());
  for (double y : g) {
    if (!z.ordinates.empty() && y - z.ordinates.back() <= 1e-9) continue;
    z.ordinates.push_back(y);
    z.multiplicities.push_back(1);
  }
  validate_zeros(z);
  return z;
}

BSums b_sums(const ZeroSet& z) {
  BSums b;
  double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < z.ordinates.size(); ++i) {
    const double d = 0.25 + z.ordinates[i] * z.ordinates[i];
    s1 += z.multiplicities[i] / d;
    s2 += z.multiplicities[i] / (d * d);
  }
  b.B0 = 2 * s1;
  b.B = b.B0 + 4.0 * z.central_multiplicity;
  b.B2 = 2 * s2 + 16.0 * z.central_multiplicity;
  b.tail = (z.log_conductor + z.degree * std::log(z.height + 4)) / z.height;
  b.empty_warning = z.ordinates.empty() && z.central_multiplicity == 0;
  return b;
}

fs::path bundled_zero_dir() {
#ifdef CHEBIAS_DATA_DIR
  return fs::path(CHEBIAS_DATA_DIR);
#else
  return fs::path("data/zeros");
#endif
}

fs::path resolve_cache_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("CHEBIAS_CACHE_DIR"); env && *env) return env;
  return bundled_zero_dir();
}

fs::path cache_path(const fs::path& dir, const std::string& label, double height) {
  char buf[64];
  if (height == std::floor(height) && height < 1e15)
    std::snprintf(buf, sizeof buf, "%.0f.zeros", height);
  else
    std::snprintf(buf, sizeof buf, "%.9g.zeros", height);
  return dir / label / buf;
}

ZeroSet load_label(const fs::path& dir, const std::string& label) {
  const fs::path sub = dir / label;
  std::error_code ec;
  if (!fs::is_directory(sub, ec)) throw DataMissingError("no zero data for '" + label + "' under " + dir.string());
  fs::path best;
  double best_h = -1;
  for (const auto& e : fs::directory_iterator(sub)) {
    if (e.path().extension() != ".zeros") continue;
    char* end = nullptr;
    const std::string stem = e.path().stem().string();
    const double h = std::strtod(stem.c_str(), &end);
    if (end == stem.c_str() || *end != '\0') continue;
    if (h > best_h) best_h = h, best = e.path();
  }
  if (best.empty()) throw DataMissingError("no .zeros file for '" + label + "' under " + dir.string());
  ZeroSet z = load_zeros(best);
  if (z.label != label) throw ConfigError(best.string() + ": label header disagrees with directory");
  return z;
}

std::vector<std::string> available_labels(const fs::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory()) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

void store_in_cache(const fs::path& dir, const ZeroSet& z) {
  validate_zeros(z);
  save_zeros_atomic(cache_path(dir, z.label, z.height), z);
}

}  // namespace chebias
