#include "chebias/app.hpp"

#include "chebias/parallel.hpp"
#include "chebias/sieve.hpp"
#include "chebias/sn.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

namespace chebias {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join(const std::vector<long>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

bool is_group_family(const std::string& f) {
  return f == "symmetric" || f == "dihedral" || f == "affine" || f == "cyclic" || f == "abelian" ||
         f == "quaternion" || f == "units";
}

// The main CSV goes to `main`; with an output directory it is also written to <out>/<name>.
class Sink {
 public:
  Sink(const RunConfig& c, std::ostream& main) : c_(c), main_(main) {
    if (!c.out.empty()) fs::create_directories(c.out);
  }
  // Writes `body` to the stream (when primary) and to the output directory.
  void emit(const std::string& name, const std::string& body, bool primary) {
    if (primary) main_ << body;
    if (c_.out.empty()) return;
    const fs::path path = fs::path(c_.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataMissingError("cannot write " + path.string());
    f << body;
  }

 private:
  const RunConfig& c_;
  std::ostream& main_;
};

std::vector<std::string> model_header(const BiasModel& m) {
  std::vector<std::string> h;
  h.push_back("truncation_height: " + num(m.truncation_height));
  for (const auto& s : m.support)
    h.push_back("zeros " + s.label + ": " + s.zeros.label + " height " + num(s.zeros.height) + " count " +
                std::to_string(s.zeros.size()) + (s.zeros.synthetic ? " synthetic" : ""));
  if (m.synthetic_zeros) h.push_back("warning: synthetic zeros in use; results are model-level only");
  return h;
}

BiasModel config_model(const RunConfig& c, const ExtensionSpec& spec) {
  const auto t = race_function(spec.group(), c.t);
  const auto a = parse_assumptions(c.assume);
  const auto chars = support_of(spec, t);
  return build_model(spec, t, gather_zeros(spec, chars, c.zeros, c.cache_dir, c.synth_height, c.seed), a);
}

std::string model_id(const RunConfig& c) { return c.family + "(" + join(c.params, " ") + ")/" + c.t; }

int cmd_table(const RunConfig& c, Sink& sink) {
  std::ostringstream classes, table, cond;
  auto class_csv = [&](const GroupPtr& g) {
    const auto omr = one_minus_r(g);
    write_header(classes, c);
    classes << "class,size,one_minus_r\n";
    for (std::size_t k = 0; k < g->num_classes(); ++k)
      classes << g->classes[k].label << "," << g->classes[k].size << "," << num(omr[k].real()) << "\n";
  };
  if (is_group_family(c.family)) {
    const auto g = build_group(c.family, c.params);
    class_csv(g);
    write_header(table, c);
    write_character_table_csv(table, *g);
    sink.emit("classes.csv", classes.str(), true);
    sink.emit("character_table.csv", table.str(), false);
    return kExitOk;
  }
  const auto spec = config_spec(c);
  class_csv(spec.group());
  write_header(table, c);
  write_character_table_csv(table, spec.gplus());
  std::vector<std::string> extra = {"log_disc: " + num(spec.log_disc) + (spec.disc_is_bound ? " (upper bound)" : "")};
  if (spec.ramified.empty() && spec.gplus().order > 1)
    extra.push_back("conductors: no ramification data, exponents shown as 0");
  write_header(cond, c, extra);
  write_conductor_csv(cond, spec);
  sink.emit("conductors.csv", cond.str(), true);
  sink.emit("classes.csv", classes.str(), false);
  sink.emit("character_table.csv", table.str(), false);
  return kExitOk;
}

int cmd_bias(const RunConfig& c, Sink& sink) {
  const auto spec = config_spec(c);
  const auto m = config_model(c, spec);
  std::ostringstream o, sup;
  write_header(o, c, model_header(m));
  o << "model,mean,variance,B,W4,F,terms,truncation_height,variance_tail,flags\n";
  std::string w4 = "na", F = "na";
  if (!m.support.empty() && !m.dirac()) {
    const auto mo = moments(m);
    w4 = num(mo.W4);
    F = num(mo.F);
  }
  o << model_id(c) << "," << num(m.mean) << "," << num(m.variance) << "," << bias_factor(m).str() << "," << w4 << ","
    << F << "," << m.terms.size() << "," << num(m.truncation_height) << "," << num(m.variance_tail) << ","
    << (m.synthetic_zeros ? "synthetic" : "data") << "\n";
  write_header(sup, c);
  sup << "character,coeff_re,coeff_im,logA,zeros,count,height\n";
  for (const auto& s : m.support)
    sup << s.label << "," << num(s.coeff.real()) << "," << num(s.coeff.imag()) << "," << num(s.log_conductor) << ","
        << s.zeros.label << "," << s.zeros.size() << "," << num(s.zeros.height) << "\n";
  sink.emit("bias.csv", o.str(), true);
  sink.emit("support.csv", sup.str(), false);
  return kExitOk;
}

int cmd_density(const RunConfig& c, Sink& sink) {
  const auto spec = config_spec(c);
  const auto m = config_model(c, spec);
  const int w = resolve_workers(c.workers);
  DensityEstimate inv, mc;
  std::string cheb = "na";
  if (m.dirac()) {
    inv.delta = mc.delta = m.mean > 0 ? 1 : 0;
    inv.note = "dirac";
  } else {
    inv = density_inversion(m, c.precision, w);
    mc = density_monte_carlo(m, c.samples, c.seed, w);
    if (m.mean >= 4 && bias_factor(m).value > 0) cheb = num(density_chebyshev_bound(m));
  }
  const auto g = density_gaussian(m);
  std::ostringstream o, phi;
  auto extra = model_header(m);
  extra.push_back("gaussian error shape and the Chebyshev bound use constant 1 (not certified)");
  if (!inv.ok) extra.push_back("inversion: " + inv.note);
  write_header(o, c, extra);
  o << "model,mean,variance,B,delta_inversion,err_inversion,delta_mc,se_mc,delta_gauss,gauss_error_shape,"
       "chebyshev_bound,truncation_height,flags\n";
  o << model_id(c) << "," << num(m.mean) << "," << num(m.variance) << "," << bias_factor(m).str() << ","
    << num(inv.delta) << "," << num(inv.error) << "," << num(mc.delta) << "," << num(mc.error) << ","
    << num(g.delta) << "," << num(g.error_shape) << "," << cheb << "," << num(m.truncation_height) << ","
    << (inv.ok ? "ok" : "inversion-inaccurate") << (m.synthetic_zeros ? ";synthetic" : "") << "\n";
  write_header(phi, c);
  const double xi_max = m.variance > 0 ? 8 / std::sqrt(m.variance) : 1;
  write_phi_csv(phi, m, xi_max, c.phi_points);
  sink.emit("density.csv", o.str(), true);
  sink.emit("phi.csv", phi.str(), false);
  return kExitOk;
}

int cmd_race(const RunConfig& c, Sink& sink) {
  const auto spec = config_spec(c);
  if (!(c.xmax > 1e3)) throw ConfigError("race: xmax must exceed 1000");
  const auto t = lift(spec, race_function(spec.group(), c.t));
  const auto counts = sieve_classify(spec, log_checkpoints(1e3, c.xmax, c.checkpoints), resolve_workers(c.workers));
  const auto series = race_series(counts, t, 0.5, spec.family);
  std::vector<double> y;
  for (double x : series.checkpoints) y.push_back(std::log(x));
  std::vector<std::string> extra;
  if (y.size() >= 100) {
    const auto d = empirical_density(y, series.E);
    extra.push_back("empirical_density: " + num(d.density) + " band [" + num(d.band_lo) + ", " + num(d.band_hi) +
                    "] over y in [" + num(d.y0) + ", " + num(d.Y) + "]");
  }
  extra.push_back("t_hat_one: " + num(series.t_hat_one));
  std::ostringstream o;
  write_header(o, c, extra);
  write_race_csv(o, y, series.E);
  sink.emit("race.csv", o.str(), true);
  return kExitOk;
}

int cmd_bounds(const RunConfig& c, Sink& sink) {
  const auto spec = config_spec(c);
  const auto& G = *spec.group();
  const bool classify = classification_supported(spec);
  const auto t = race_function(spec.group(), c.t);
  const long limit = static_cast<long>(std::min(c.xmax, double(kSieveLimit)));
  std::ostringstream o;
  write_header(o, c,
               {"chebotarev_error_bound at xmax (shape, constant 1): " + num(chebotarev_error_bound(spec, t, c.xmax)),
                "least prime bounds are shape-only with constant 1"});
  o << "class,size,least_prime,murty_first,murty_second,murty_third,ell_max,ratio_first\n";
  for (std::size_t k = 0; k < G.num_classes(); ++k) {
    const auto mb = murty_least_prime_bound(spec, k);
    std::string lp = "na", ratio = "na";
    if (classify) {
      const auto r = least_prime_search(spec, lift_class(spec, k), limit);
      lp = r.found ? std::to_string(r.prime) : ">" + std::to_string(r.searched_to);
      if (r.found) ratio = num(double(r.prime) / mb.first);
    }
    o << G.classes[k].label << "," << G.classes[k].size << "," << lp << "," << num(mb.first) << ","
      << num(mb.second) << "," << num(mb.third) << "," << mb.ell_max << "," << ratio << "\n";
  }
  sink.emit("bounds.csv", o.str(), true);
  return kExitOk;
}

int cmd_validate(const RunConfig& c, Sink& sink) {
  const auto lines = validation_suite(resolve_workers(c.workers));
  std::ostringstream o;
  write_header(o, c);
  o << "check,result,detail\n";
  bool ok = true;
  for (const auto& l : lines) {
    o << l.name << "," << (l.ok ? "pass" : "FAIL") << "," << l.detail << "\n";
    ok = ok && l.ok;
  }
  sink.emit("validate.csv", o.str(), true);
  return ok ? kExitOk : kExitInvariant;
}

}  // namespace

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string RunConfig::canonical() const {
  std::ostringstream o;
  o << "command=" << command << "\n"
    << "family=" << family << "\n"
    << "params=" << join(params, ",") << "\n"
    << "spec_file=" << spec_file << "\n"
    << "t=" << t << "\n"
    << "zeros=" << zeros << "\n"
    << "synth_height=" << num(synth_height) << "\n"
    << "cache_dir=" << cache_dir << "\n"
    << "assume=" << assume << "\n"
    << "xmax=" << num(xmax) << "\n"
    << "checkpoints=" << checkpoints << "\n"
    << "samples=" << samples << "\n"
    << "seed=" << seed << "\n"
    << "precision=" << num(precision) << "\n"
    << "phi_points=" << phi_points << "\n";
  return o.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

ExtensionSpec config_spec(const RunConfig& c) {
  if (c.family == "spec") {
    if (c.spec_file.empty()) throw ConfigError("family spec needs --spec-file");
    std::ifstream in(c.spec_file);
    if (!in) throw DataMissingError("cannot open spec file " + c.spec_file);
    return read_spec(in);
  }
  if (is_group_family(c.family)) throw ConfigError("family '" + c.family + "' is a bare group; only `table` accepts it");
  return catalog_spec(c.family, c.params);
}

void write_header(std::ostream& out, const RunConfig& c, const std::vector<std::string>& extra) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, c.hash());
  std::string assume;
  try {
    assume = parse_assumptions(c.assume).describe();
  } catch (const ConfigError&) {
    assume = c.assume + " (invalid)";
  }
  out << "# chebias " << c.command << "\n"
      << "# config_hash: " << hash << "\n"
      << "# family: " << c.family << (c.params.empty() ? "" : " " + join(c.params, " ")) << "\n"
      << "# t: " << c.t << "\n"
      << "# assumptions: " << assume << "\n"
      << "# zeros: " << c.zeros << " (synthetic height " << num(c.synth_height) << ")\n"
      << "# seed: " << c.seed << "\n";
  for (const auto& e : extra) out << "# " << e << "\n";
}

void write_race_csv(std::ostream& out, const std::vector<double>& y, const std::vector<double>& E) {
  out << "y,E,running_density\n";
  const auto r = running_density(y, E);
  for (std::size_t k = 0; k < y.size(); ++k) out << num(y[k]) << "," << num(E[k]) << "," << num(r[k]) << "\n";
}

void write_phi_csv(std::ostream& out, const BiasModel& m, double xi_max, std::size_t points) {
  out << "xi,abs_phi\n";
  for (std::size_t k = 0; k < points; ++k) {
    const double xi = points > 1 ? xi_max * double(k) / double(points - 1) : 0;
    out << num(xi) << "," << num(std::abs(char_function(m, xi))) << "\n";
  }
}

std::vector<ValidationLine> validation_suite(int workers) {
  std::vector<ValidationLine> out;
  auto check = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
    try {
      auto [ok, detail] = f();
      out.push_back({name, ok, detail});
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };

  check("group_tables", [] {
    std::vector<GroupPtr> groups = {make_symmetric(3), make_symmetric(4), make_symmetric(5), make_symmetric(6),
                                    make_dihedral(5),  make_dihedral(7),  make_affine(5),    make_affine(7),
                                    make_abelian({2, 2, 2, 2}), make_quaternion8()};
    double worst = 0;
    for (const auto& g : groups) {
      const auto r = orthogonality(*g);
      worst = std::max({worst, r.row_error, r.column_error, r.degree_error});
    }
    return std::pair{worst < 1e-10, "max orthogonality error " + num(worst < 1e-13 ? 0.0 : worst)};
  });
  check("fourier_roundtrip", [] {
    std::mt19937_64 rng(7);
    double worst = 0;
    for (const auto& g : {make_symmetric(5), make_dihedral(7), make_affine(7)})
      for (int i = 0; i < 20; ++i) {
        const auto t = random_class_function(g, rng);
        const auto back = inverse_fourier(g, fourier_transform(t));
        worst = std::max(worst, (back.values() - t.values()).cwiseAbs().maxCoeff());
        const double parseval = std::abs(inner(t, t).real() - fourier_transform(t).squaredNorm());
        worst = std::max(worst, parseval);
      }
    return std::pair{worst < 1e-10, worst < 1e-10 ? "within 1e-10" : "error " + num(worst)};
  });
  check("root_counts", [] {
    double worst = 0;
    for (const auto& g : {make_symmetric(5), make_dihedral(7), make_quaternion8()})
      for (long k : {2L, 3L}) {
        const auto a = root_count(g, k), b = root_count_from_characters(g, k);
        worst = std::max(worst, (a.values() - b.values()).cwiseAbs().maxCoeff());
      }
    return std::pair{worst < 1e-10, worst < 1e-10 ? "within 1e-10" : "error " + num(worst)};
  });
  check("sn_identities", [] {
    bool ok = true;
    for (int n = 1; n <= 10; ++n) {
      BigInt sq = 0, lin = 0;
      for (const auto& l : partitions(n)) {
        const BigInt f = hook_dimension(l);
        sq += f * f;
        lin += f;
      }
      ok = ok && sq == factorial(n) && lin == involution_count(n);
    }
    return std::pair{ok, std::string("n <= 10")};
  });
  check("conductor_discriminant", [] {
    const std::vector<ExtensionSpec> specs = {radical_extension(3, 5), radical_extension(3, 7), radical_extension(5, 7),
                                              radical_extension(7, 11), multiquadratic_extension({3, 5, 7}),
                                              cyclotomic_extension(15), hilbert_class_field(-23),
                                              hilbert_class_field(-84)};
    for (const auto& s : specs) verify_spec(s);
    return std::pair{true, std::to_string(specs.size()) + " specs"};
  });
  check("radical_conductors", [] {
    bool ok = true;
    for (auto [a, p] : std::vector<std::pair<long, long>>{{3, 5}, {3, 7}, {5, 7}, {7, 11}}) {
      const auto s = radical_extension(a, p);
      ok = ok && conductor_discriminant_sum(s, p) == p * p - 2 && conductor_discriminant_sum(s, a) == (p - 1) * (p - 1);
    }
    return std::pair{ok, std::string("v_p(d) = p^2 - 2, v_a(d) = (p - 1)^2")};
  });
  check("zero_files", [] {
    const auto dir = bundled_zero_dir();
    std::string detail;
    bool ok = true;
    for (const char* label : {"zeta", "chi_3_2", "chi_4_3", "chi_5_4", "chi_5_2", "chi_5_3"}) {
      const auto z = load_label(dir, label);
      const auto r = check_zero_count(z, 3.0);
      ok = ok && r.ok;
      detail += std::string(detail.empty() ? "" : " ") + label + ":" + std::to_string(z.size());
    }
    return std::pair{ok, detail};
  });
  check("b0_fixture", [] {
    ZeroSet z;
    z.ordinates = {14.134725};
    z.multiplicities = {1};
    z.height = 20;
    const double b0 = b_sums(z).B0;
    // exact value 2 / (1/4 + 14.134725^2) = 0.00999798
    return std::pair{std::abs(b0 - 2 / (0.25 + 199.7905)) < 1e-6, "B0 " + num(b0)};
  });
  check("dirac_fixture", [] {
    const auto s = hilbert_class_field(-23);
    const auto t = ClassFunction::indicator(s.group(), 1) - ClassFunction::indicator(s.group(), 2);
    const auto m = build_model(s, t, {}, Assumptions{});
    return std::pair{m.dirac() && m.variance == 0 && std::abs(m.mean) < 1e-12, "mean " + num(m.mean)};
  });
  check("mod4_density", [workers] {
    const auto s = cyclotomic_extension(4);
    const auto t = race_function(s.group(), "race:3,1");
    const auto m = build_model(s, t, gather_zeros(s, support_of(s, t), "bundled", "", 0, 0), Assumptions{});
    const auto inv = density_inversion(m, 1e-9, workers);
    const auto mc = density_monte_carlo(m, 200000, 1, workers);
    const bool ok = inv.ok && std::abs(inv.delta - mc.delta) <= std::max(3 * std::hypot(inv.error, mc.error), 5e-3);
    return std::pair{ok, "inversion " + num(inv.delta) + " monte_carlo " + num(mc.delta)};
  });
  check("sieve_counts", [workers] {
    const auto c = sieve_classify(cyclotomic_extension(4), {1e6}, workers);
    std::uint64_t total = c.excluded[0];
    for (auto n : c.counts[0]) total += n;
    return std::pair{total == 78498 && c.pi[0] == 78498, "pi(10^6) " + std::to_string(c.pi[0])};
  });
  return out;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    Sink sink(c, out);
    if (c.command == "table") return cmd_table(c, sink);
    if (c.command == "bias") return cmd_bias(c, sink);
    if (c.command == "density") return cmd_density(c, sink);
    if (c.command == "race") return cmd_race(c, sink);
    if (c.command == "bounds") return cmd_bounds(c, sink);
    if (c.command == "validate") return cmd_validate(c, sink);
    throw ConfigError("unknown command '" + c.command + "'");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataMissingError& e) {
    err << "data missing: " << e.what() << "\n";
    return kExitData;
  } catch (const InvariantError& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace chebias
