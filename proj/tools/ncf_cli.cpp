// ncf: command-line front end for alternating N-continued-fraction systems.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncf/config_io.hpp"
#include "ncf/convergents.hpp"
#include "ncf/invariant_density.hpp"
#include "ncf/natural_extension.hpp"
#include "ncf/simulation.hpp"
#include "ncf/system.hpp"

namespace {

enum Exit : int { ok = 0, other = 1, usage = 2, config = 3, params = 4, domain = 5 };

struct RunSpec {
  std::string config_path;
  std::string mode = "exact";
  std::string out;
  std::size_t iters = 7;
  std::size_t depth = 10;
  std::size_t bins = 1000;
  std::size_t grid = 1000;
  std::optional<std::int64_t> digit_cap;
  std::uint64_t rng_seed = 1;
  bool seeded = false;
  bool report = false;
  bool density = false;
  std::string x = "1";
  std::size_t seeds = 16;
  std::uint64_t orbit_iters = 1'000'000;
  std::uint64_t burn_in = 1000;
  std::uint64_t segment = 1'000'000;
  std::string against = "theory";
  std::string normalize = "per-interval";
  std::vector<std::int64_t> intervals;
  std::vector<std::int64_t> numerators;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& csv() { return file_ ? *file_ : std::cout; }
  /// Key/value lines go to stdout only when the CSV goes to a file.
  bool summary() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

ncf::SystemConfig load(const RunSpec& s) {
  if (s.config_path.empty()) throw ncf::ConfigError("--config is required");
  return ncf::load_config(s.config_path);
}

ncf::Normalization normalization(const RunSpec& s) {
  if (s.normalize == "per-interval") return ncf::Normalization::per_interval;
  if (s.normalize == "global") return ncf::Normalization::global;
  throw std::invalid_argument("--normalize must be 'per-interval' or 'global'");
}

bool exact_mode(const RunSpec& s) {
  if (s.mode == "exact") return true;
  if (s.mode == "float") return false;
  throw std::invalid_argument("--mode must be 'exact' or 'float'");
}

void run_classify(const RunSpec& s) {
  auto cfg = load(s);
  auto c = ncf::classify(cfg);
  Output out(s.out);
  auto& os = out.csv();
  os << ncf::to_string(c.tag) << '\n';
  if (c.nonpositive_digit)
    os << "lowest digit on interval " << c.nonpositive_digit->interval + 1 << " is " << c.nonpositive_digit->digit
       << " (must be >= 1)\n";
  if (c.divisibility)
    os << "not desirable: " << c.divisibility->divisor << " does not divide N_" << c.divisibility->interval + 1 << " = "
       << c.divisibility->numerator << '\n';
  if (c.unequal_numerator) os << "not simple: N_" << *c.unequal_numerator + 1 << " differs from N_1\n";
}

void run_expand(const RunSpec& s) {
  auto cfg = load(s);
  Output out(s.out);
  if (exact_mode(s)) {
    auto rows = ncf::expand(cfg, ncf::parse_rational(s.x), s.depth);
    ncf::write_expansion_csv(out.csv(), cfg, rows);
  } else {
    auto rows = ncf::expand(cfg, ncf::to_double(ncf::parse_rational(s.x)), s.depth);
    ncf::write_expansion_csv(out.csv(), cfg, rows);
  }
}

ncf::SimpleTwoInterval simple_pair(const ncf::SystemConfig& cfg) {
  if (cfg.size() != 2 || cfg.numerator(0) != cfg.numerator(1))
    throw std::invalid_argument("this subcommand needs a simple two-interval system");
  return ncf::SimpleTwoInterval(cfg.left(0), cfg.left(1), cfg.numerator(0));
}

void run_density(const RunSpec& s) {
  auto sys = simple_pair(load(s));
  Output out(s.out);
  ncf::write_density_csv(out.csv(), ncf::sample_density(sys, s.grid));
  if (out.summary()) std::cout << "normalizing_constant = " << ncf::fmt(ncf::normalizing_constant(sys)) << '\n';
}

void run_dl(const RunSpec& s) {
  auto sys = simple_pair(load(s));
  auto bp = ncf::dl_breakpoints(sys);
  Output out(s.out);
  double lo = ncf::to_double(bp.support_low());
  double hi = ncf::to_double(bp.support_high());
  double pad = 0.05 * (hi - lo);
  auto& os = out.csv();
  os << "c,F\n";
  std::size_t n = std::max<std::size_t>(s.grid, 2);
  for (std::size_t i = 0; i < n; ++i) {
    double c = (lo - pad) + (hi - lo + 2 * pad) * static_cast<double>(i) / static_cast<double>(n - 1);
    os << ncf::fmt(c) << ',' << ncf::fmt(ncf::dl_cdf(sys, c)) << '\n';
  }
  if (out.summary()) {
    std::cout << "normalizing_constant = " << ncf::fmt(ncf::normalizing_constant(sys)) << '\n';
    for (std::size_t i = 0; i < bp.values.size(); ++i)
      std::cout << "breakpoint_" << i + 1 << " = " << ncf::to_string(bp.values[i]) << '\n';
  }
}

template <class S>
void natext_impl(const RunSpec& s, const ncf::SystemConfig& cfg) {
  ncf::IterateOptions opt;
  opt.digit_cap = s.digit_cap;
  if (cfg.has_zero_interval() && !s.digit_cap)
    throw std::invalid_argument("an interval [0,1) needs --digit-cap");
  if (cfg.has_zero_interval() && !s.seeded)
    throw std::invalid_argument("the mass of the unseeded start diverges on [0,1); use --seeded");
  std::optional<ncf::RectUnion<S>> seed;
  if (s.seeded) seed = ncf::seeded_domain<S>(cfg);
  std::vector<ncf::RectUnion<S>> domains;
  auto reports = ncf::r_sequence<S>(cfg, s.iters, opt, seed, &domains);
  Output out(s.out);
  if (s.report) {
    ncf::write_report_csv(out.csv(), reports);
  } else if (s.density) {
    ncf::write_density_csv(out.csv(), ncf::project_density(cfg, domains.back(), s.grid, normalization(s)));
  } else {
    ncf::write_domain_header(out.csv());
    for (std::size_t n = 0; n < domains.size(); ++n) ncf::write_domain_csv(out.csv(), domains[n], n);
  }
  if (out.summary()) {
    const auto& last = reports.back();
    std::cout << "iterations = " << last.n << "\nmass = " << ncf::fmt(last.mass) << "\nrect_count = " << last.rect_count
              << '\n';
  }
}

void run_natext(const RunSpec& s) {
  auto cfg = load(s);
  if (!ncf::classify(cfg).allowable()) throw std::invalid_argument("natext needs an allowable system");
  if (exact_mode(s))
    natext_impl<ncf::Rational>(s, cfg);
  else
    natext_impl<double>(s, cfg);
}

ncf::SimulationOptions sim_options(const RunSpec& s) {
  ncf::SimulationOptions o;
  o.seeds = s.seeds;
  o.iters = s.orbit_iters;
  o.burn_in = s.burn_in;
  o.segment = s.segment;
  o.bins = s.bins;
  o.rng_seed = s.rng_seed;
  return o;
}

void run_orbit(const RunSpec& s) {
  auto cfg = load(s);
  auto h = ncf::simulate_density(cfg, sim_options(s));
  Output out(s.out);
  ncf::write_histogram_csv(out.csv(), h);
  if (out.summary()) std::cout << "samples = " << h.total << '\n';
}

void run_compare(const RunSpec& s) {
  auto cfg = load(s);
  ncf::IterateOptions opt;
  opt.digit_cap = s.digit_cap;
  std::optional<ncf::RectUnion<double>> seed;
  if (s.seeded) seed = ncf::seeded_domain<double>(cfg);
  ncf::RectUnion<double> x = seed ? *seed : ncf::full_domain<double>(cfg);
  for (std::size_t n = 0; n < s.iters; ++n) x = ncf::iterate_domain(cfg, x, opt);
  auto proj = ncf::project_density(cfg, x, s.bins, normalization(s));

  ncf::ComparisonReport rep;
  if (s.against == "theory") {
    rep = ncf::compare(proj, ncf::sample_density(simple_pair(cfg), s.bins));
  } else if (s.against == "orbit") {
    auto h = ncf::simulate_density(cfg, sim_options(s));
    rep = ncf::compare(proj, h.density(), 0, h.total);
  } else {
    throw std::invalid_argument("--against must be 'theory' or 'orbit'");
  }
  Output out(s.out);
  auto& os = out.csv();
  os << "iterations = " << s.iters << "\nl1 = " << ncf::fmt(rep.l1) << "\nks = " << ncf::fmt(rep.ks)
     << "\nbins_per_unit = " << rep.per_unit << "\norbit_samples = " << rep.samples_g << '\n';
}

void run_make_config(const RunSpec& s) {
  std::vector<std::int64_t> nums = s.numerators;
  if (nums.size() == 1 && s.intervals.size() > 1) nums.assign(s.intervals.size(), nums.front());
  ncf::SystemConfig cfg(s.intervals, nums);
  Output out(s.out);
  out.csv() << ncf::format_config(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating N-continued fractions: expansions, densities, natural-extension domains"};
  app.require_subcommand(1);
  RunSpec s;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", s.config_path, "system config file");
    sub->add_option("--out", s.out, "output file (default stdout)");
  };

  auto* classify = app.add_subcommand("classify", "print the system class and the failing condition");
  common(classify);

  auto* expand = app.add_subcommand("expand", "digits, convergents, error bounds and theta as CSV");
  common(expand);
  expand->add_option("--x", s.x, "starting point, p/q or decimal");
  expand->add_option("--depth", s.depth, "number of digits");
  expand->add_option("--mode", s.mode, "exact|float");

  auto* density = app.add_subcommand("density", "projected invariant density (simple two-interval)");
  common(density);
  density->add_option("--grid", s.grid, "cells per unit interval");

  auto* dl = app.add_subcommand("dl", "Doeblin-Lenstra distribution F(c) samples");
  common(dl);
  dl->add_option("--grid", s.grid, "number of c samples");

  auto* natext = app.add_subcommand("natext", "iterate the rectangle domain X_n");
  common(natext);
  natext->add_option("--iters", s.iters, "last iteration n");
  natext->add_option("--mode", s.mode, "exact|float");
  natext->add_option("--digit-cap", s.digit_cap, "largest explicit digit on [0,1)");
  natext->add_flag("--seeded", s.seeded, "start from the periodic-point blocks");
  natext->add_flag("--report", s.report, "emit n, mass, r_n, rect_count");
  natext->add_flag("--density", s.density, "emit the projected density of the last domain");
  natext->add_option("--grid", s.grid, "cells per unit interval for --density");
  natext->add_option("--normalize", s.normalize, "per-interval|global");

  auto* orbit = app.add_subcommand("orbit", "orbit histogram of the invariant density");
  common(orbit);
  orbit->add_option("--bins", s.bins, "bins per unit interval");
  orbit->add_option("--seeds", s.seeds, "number of orbits");
  orbit->add_option("--iters", s.orbit_iters, "steps per orbit");
  orbit->add_option("--burn-in", s.burn_in, "discarded steps per orbit");
  orbit->add_option("--segment", s.segment, "restart each orbit this often, 0 never");
  orbit->add_option("--rng-seed", s.rng_seed, "random seed");

  auto* compare = app.add_subcommand("compare", "L1/KS distance of the X_n projection to a reference");
  common(compare);
  compare->add_option("--iters", s.iters, "domain iteration n");
  compare->add_option("--digit-cap", s.digit_cap, "largest explicit digit on [0,1)");
  compare->add_flag("--seeded", s.seeded, "start from the periodic-point blocks");
  compare->add_option("--against", s.against, "theory|orbit");
  compare->add_option("--bins", s.bins, "cells per unit interval");
  compare->add_option("--normalize", s.normalize, "per-interval|global");
  compare->add_option("--seeds", s.seeds, "number of orbits");
  compare->add_option("--orbit-iters", s.orbit_iters, "steps per orbit");
  compare->add_option("--burn-in", s.burn_in, "discarded steps per orbit");
  compare->add_option("--segment", s.segment, "restart each orbit this often, 0 never");
  compare->add_option("--rng-seed", s.rng_seed, "random seed");

  auto* make = app.add_subcommand("make-config", "write a config file");
  make->add_option("--intervals", s.intervals, "left endpoints a_i")->required()->delimiter(',');
  make->add_option("--numerators", s.numerators, "numerators N_i (one value: all equal)")->required()->delimiter(',');
  make->add_option("--out", s.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*classify) run_classify(s);
    else if (*expand) run_expand(s);
    else if (*density) run_density(s);
    else if (*dl) run_dl(s);
    else if (*natext) run_natext(s);
    else if (*orbit) run_orbit(s);
    else if (*compare) run_compare(s);
    else if (*make) run_make_config(s);
  } catch (const ncf::ConfigError& e) {
    std::cerr << "ncf: config error: " << e.what() << '\n';
    return Exit::config;
  } catch (const ncf::DomainError& e) {
    std::cerr << "ncf: domain error: " << e.what() << '\n';
    return Exit::domain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ncf: invalid parameters: " << e.what() << '\n';
    return Exit::params;
  } catch (const std::exception& e) {
    std::cerr << "ncf: " << e.what() << '\n';
    return Exit::other;
  }
  return Exit::ok;
}
