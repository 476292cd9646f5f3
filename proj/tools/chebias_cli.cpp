// Batch front-end: table, bias, density, race, validate, bounds.
#include "chebias/app.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  chebias::RunConfig c;
  CLI::App app{"Chebyshev bias computations for Galois extensions"};
  app.set_config("--config", "", "key = value configuration file");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--family", c.family, "radical, multiquadratic, cyclotomic, quadratic, hcf, kluners, spec, or a group kind");
  app.add_option("--params", c.params, "family parameters in catalog order")->delimiter(',');
  long a = 0, p = 0, q = 0, d = 0;
  std::vector<long> primes, class_group;
  app.add_option("--a", a, "radical: a");
  app.add_option("--p", p, "radical: p");
  app.add_option("--q", q, "cyclotomic modulus");
  app.add_option("--d", d, "quadratic or class field discriminant");
  app.add_option("--primes", primes, "multiquadratic primes")->delimiter(',');
  app.add_option("--class-group", class_group, "hcf: cyclic orders")->delimiter(',');
  app.add_option("--n", q, "group families: size parameter");
  app.add_option("--spec-file", c.spec_file, "extension spec file for --family spec");
  // config values containing commas arrive as lists; join them back
  auto joined = [](CLI::Option* o) { o->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join); };
  joined(app.add_option("--t", c.t, "one-minus-r or race:C1,C2"));
  app.add_option("--zeros", c.zeros, "bundled, synthetic or auto")->check(CLI::IsMember({"bundled", "synthetic", "auto"}));
  app.add_option("--synth-height", c.synth_height, "height of synthetic zero sets");
  app.add_option("--cache-dir", c.cache_dir, "zero cache directory (else CHEBIAS_CACHE_DIR)");
  joined(app.add_option("--assume", c.assume, "assumption list, e.g. li,grh,bm or none"));
  app.add_option("--xmax", c.xmax, "sieve limit for race and least-prime searches");
  app.add_option("--checkpoints", c.checkpoints, "log-spaced checkpoints for race");
  app.add_option("--samples", c.samples, "Monte Carlo samples");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--precision", c.precision, "inversion target precision");
  app.add_option("--phi-points", c.phi_points, "rows of the characteristic-function table");
  app.add_option("--workers", c.workers, "worker threads (else CHEBIAS_WORKERS, else 1)");
  app.add_option("--out", c.out, "output directory");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"table", "conductor exponents, or classes and 1 - r for a bare group"},
      {"bias", "mean, variance, bias factor and moments of the limiting distribution"},
      {"density", "density by inversion, Monte Carlo and the Gaussian approximation"},
      {"race", "prime counts by Frobenius class and the normalised error term"},
      {"validate", "built-in invariant checks"},
      {"bounds", "least primes per class against the effective bounds"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : chebias::kExitConfig;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.params.empty()) {
    if (c.family == "radical" && (a || p)) c.params = {a, p};
    const bool sized_group = c.family == "symmetric" || c.family == "dihedral" || c.family == "affine" ||
                             c.family == "cyclic" || c.family == "units";
    if ((c.family == "cyclotomic" || sized_group) && q) c.params = {q};
    if ((c.family == "quadratic" || c.family == "hcf") && d) {
      c.params = {d};
      c.params.insert(c.params.end(), class_group.begin(), class_group.end());
    }
    if (c.family == "multiquadratic") c.params = primes;
  }
  return chebias::run(c, std::cout, std::cerr);
}
