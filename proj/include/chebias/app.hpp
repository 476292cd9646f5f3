#pragma once

#include "chebias/bias.hpp"
#include "chebias/race.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chebias {

// Everything a front-end run depends on. Worker count is deliberately not part
// of the canonical form: outputs must not depend on it.
struct RunConfig {
  std::string command;  // table, bias, density, race, validate, bounds
  std::string family = "cyclotomic";
  std::vector<long> params;    // family parameters in catalog order
  std::string spec_file;       // family "spec": read the extension from a file
  std::string t = "one-minus-r";
  std::string zeros = "auto";  // bundled, synthetic, auto
  double synth_height = 200;
  std::string cache_dir;
  std::string assume = "ac,grh,li,bm";
  double xmax = 1e7;
  std::size_t checkpoints = 400;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  double precision = 1e-9;
  std::size_t phi_points = 201;
  int workers = 0;
  std::string out;  // output directory; empty writes only to the stream

  // key = value lines in a fixed order
  std::string canonical() const;
  std::uint64_t hash() const;
};

// 64-bit FNV-1a
std::uint64_t fnv1a(const std::string& s);

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitInvariant = 4;

// Builds the extension named by the config; throws ConfigError.
ExtensionSpec config_spec(const RunConfig& c);

// Runs one subcommand, printing the main CSV to `out` and diagnostics to `err`.
// Library exceptions are mapped to the exit codes above.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

// Comment block opening every CSV: config hash, flags, truncation heights.
void write_header(std::ostream& out, const RunConfig& c, const std::vector<std::string>& extra = {});

// Plot tables with a fixed column order.
void write_race_csv(std::ostream& out, const std::vector<double>& y, const std::vector<double>& E);
void write_phi_csv(std::ostream& out, const BiasModel& m, double xi_max, std::size_t points);

struct ValidationLine {
  std::string name;
  bool ok = false;
  std::string detail;
};
// Built-in invariant suite used by `validate`.
std::vector<ValidationLine> validation_suite(int workers);

}  // namespace chebias
