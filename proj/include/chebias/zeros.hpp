#pragma once

#include "chebias/class_function.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chebias {

// Thrown when required zero data cannot be found.
struct DataMissingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Positive ordinates of the zeros of one L-function on the critical line, up to a height.
struct ZeroSet {
  std::string label;
  std::vector<double> ordinates;  // strictly increasing, in (0, height]
  std::vector<int> multiplicities;
  double height = 0;
  int central_multiplicity = 0;
  double assumed_beta = 0.5;
  double log_conductor = 0;  // log A, from the file header when present
  int degree = 1;            // [K:Q] chi(1)
  bool synthetic = false;
  std::string source;

  std::size_t size() const { return ordinates.size(); }
  // zeros with 0 < gamma <= height, counted with multiplicity
  long count() const;
};

// Structural invariants; throws InvariantError.
void validate_zeros(const ZeroSet& z);
// Refuses multiplicity > 1, and a central zero unless the character is symplectic.
void check_li(const ZeroSet& z, FSType fs);

// Parses the text format; duplicate ordinates within 1e-9 merge into one with summed multiplicity.
ZeroSet parse_zeros(std::istream& in, const std::string& name = "<stream>");
ZeroSet load_zeros(const std::filesystem::path& path);
void save_zeros(std::ostream& out, const ZeroSet& z);
// Write to a temporary file in the same directory, then rename.
void save_zeros_atomic(const std::filesystem::path& path, const ZeroSet& z);

// (T / pi) log(A (T / 2 pi e)^degree), counting zeros with |gamma| <= T
double zero_count_mainterm(double log_a, int degree, double height);

struct ZeroCountCheck {
  long twice_count = 0;  // 2 #{0 < gamma <= T} + central
  double mainterm = 0;
  double deviation = 0;
  double allowed = 0;    // slack log(A (T + 4)^degree)
  bool ok = false;
};
ZeroCountCheck check_zero_count(const ZeroSet& z, double slack = 3.0);

// Ordinates at the inverse of the mainterm count, jittered by up to half a local spacing.
ZeroSet synthesize_zeros(double log_a, int degree, double height, std::uint64_t seed,
                         const std::string& mode = "unfolded-uniform");

struct BSums {
  double B = 0;     // sum over all zeros (both signs and the centre) of 1/(1/4 + gamma^2)
  double B0 = 0;    // same without the central zero
  double B2 = 0;    // squared denominators, all zeros
  double tail = 0;  // log(A (T + 4)^degree) / T, constant 1
  bool empty_warning = false;
};
BSums b_sums(const ZeroSet& z);

// Bundled data directory (compile-time default).
std::filesystem::path bundled_zero_dir();
// Cache directory: explicit argument, else CHEBIAS_CACHE_DIR, else the bundled directory.
std::filesystem::path resolve_cache_dir(const std::string& explicit_dir = "");
// <dir>/<label>/<height>.zeros
std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& label, double height);
// The tallest file for a label under dir; throws DataMissingError.
ZeroSet load_label(const std::filesystem::path& dir, const std::string& label);
std::vector<std::string> available_labels(const std::filesystem::path& dir);
void store_in_cache(const std::filesystem::path& dir, const ZeroSet& z);

}  // namespace chebias
