#include "experiment.hpp"

#include "work_pool.hpp"

#include "shadowing/alpha.hpp"
#include "shadowing/certify.hpp"
#include "shadowing/direct.hpp"
#include "shadowing/generate.hpp"
#include "shadowing/serialize.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace experiment {

using namespace shadowing;

namespace {

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void prepare_dir(const std::filesystem::path& dir) { std::filesystem::create_directories(dir); }

template <DynamicalSystem S>
struct Setup {
  S sys;
  CertifiedConstants<typename S::Distance> c;
  Json alpha_evidence;
};

/// Largest radius R with m^(2R+1) <= 256, the cap of the pairwise exhaustion.
std::int64_t shift_alpha_radius(int m) {
  std::int64_t r = 0;
  for (;;) {
    std::int64_t words = 1;
    for (std::int64_t i = 0; i < 2 * (r + 1) + 1; ++i) words *= m;
    if (words > 256) return r;
    ++r;
  }
}

Setup<ShiftSystem> setup_shift(int m, const std::string& eps_text) {
  ShiftSystem sys(m);
  const std::int64_t radius = shift_alpha_radius(m);
  const auto report = alpha_check_shift(sys, radius);
  if (!report.certified) throw std::runtime_error("coordinate-forcing check for alpha = 1/2 failed");
  const std::string note = "coordinate forcing: closeness <= 1/2 at all |n| <= " + std::to_string(radius) +
                           " forces equal words (" + std::to_string(report.pairs_checked) + " pairs)";
  auto c = derive_constants(sys, parse_rational(eps_text), Provenance::Exhaustion, note);
  c.checks.push_back("alpha: " + note);
  const Json evidence{{"method", "exhaustion"}, {"radius", radius}, {"pairs_checked", report.pairs_checked}};
  return {sys, std::move(c), evidence};
}

Setup<ToralSystem> setup_toral(const std::string& eps_text) {
  constexpr std::int64_t kHorizon = 12, kGrid = 64;
  Rational candidate(1, 8);
  AlphaSweepReport report;
  for (int i = 0; i < 16; ++i) {
    report = alpha_sweep_toral(candidate, kHorizon, kGrid);
    if (report.certified) break;
    candidate /= 2;
  }
  if (!report.certified) throw std::runtime_error("no expansivity constant certified for the cat map");
  ToralSystem sys{QuadraticNumber(candidate)};
  const std::string note = "lattice sweep certified alpha=" + to_string(candidate) + " (horizon " +
                           std::to_string(kHorizon) + ", grid " + std::to_string(kGrid) + ", " +
                           std::to_string(report.cells_checked) + " cells, max escape time " +
                           std::to_string(report.max_escape_time) + ")";
  auto c = derive_constants(sys, parse_quadratic(eps_text), Provenance::Sweep, note);
  c.checks.push_back("alpha: " + note);
  const Json evidence{{"method", "sweep"},
                      {"certified_value", to_string(candidate)},
                      {"horizon", kHorizon},
                      {"grid", kGrid},
                      {"cells_checked", report.cells_checked},
                      {"cells_refined", report.cells_refined},
                      {"max_escape_time", report.max_escape_time}};
  return {sys, std::move(c), evidence};
}

template <DynamicalSystem S>
void finish_checks(Setup<S>& s) {
  s.c.checks.push_back("chain: 0 < rho <= delta <= alpha/2, delta <= one-jump threshold");
  s.c.checks.push_back("delta is the minimum of delta_semiexp(eps), delta_semiexp(alpha/2), the one-jump threshold "
                       "and alpha/2");
}

template <DynamicalSystem S>
std::string constants_text(const Setup<S>& s) {
  Json j = constants_json(s.sys, s.c);
  j["alpha_evidence"] = s.alpha_evidence;
  return j.dump(2) + "\n";
}

template <DynamicalSystem S>
typename S::Distance jump_scale_for(const Setup<S>& s, const ExperimentConfig& cfg);

template <>
Rational jump_scale_for(const Setup<ShiftSystem>& s, const ExperimentConfig& cfg) {
  return cfg.jump_scale ? parse_rational(*cfg.jump_scale) : s.c.rho.value;
}

template <>
QuadraticNumber jump_scale_for(const Setup<ToralSystem>& s, const ExperimentConfig& cfg) {
  return cfg.jump_scale ? parse_quadratic(*cfg.jump_scale) : s.c.rho.value;
}

template <DynamicalSystem S>
typename S::Distance parse_distance(const std::string& text);
template <>
Rational parse_distance<ShiftSystem>(const std::string& text) {
  return parse_rational(text);
}
template <>
QuadraticNumber parse_distance<ToralSystem>(const std::string& text) {
  return parse_quadratic(text);
}

GapRange gaps_for(std::int64_t N) { return GapRange{1, 2 * N + 4}; }

// ---- shadow ---------------------------------------------------------------

template <DynamicalSystem S>
struct TrialOutcome {
  using D = typename S::Distance;
  bool ok = false;
  std::string error;
  std::int64_t k = 0;
  std::size_t trace = 0;
  std::optional<D> window_sup, oracle_error, agreement, gap;
  double seconds = 0;
  std::string certificate;
};

template <DynamicalSystem S>
int shadow_impl(Setup<S> s, const ExperimentConfig& cfg, const Resolved& r, std::ostream& log) {
  using D = typename S::Distance;
  finish_checks(s);
  const auto& c = s.c;
  const D scale = jump_scale_for(s, cfg);
  if (scale > c.rho.value || !(scale > D(0))) {
    log << "rejected: jump scale " << S::format_distance(scale) << " must lie in (0, rho], rho = "
        << S::format_distance(c.rho.value) << " (~" << decimal(S::approx(c.rho.value)) << ")\n";
    return kRejected;
  }
  ShadowOptions opt;
  opt.margin = cfg.window_margin.value_or(uniform_N(s.sys, c.epsilon.value));
  opt.keep_error_table = cfg.emit_error_table;
  opt.keep_intermediates = false;

  const auto outcomes = parallel_map(r.trials, [&](std::int64_t t) {
    TrialOutcome<S> out;
    const auto start = std::chrono::steady_clock::now();
    out.k = t % (r.jumps + 1);
    try {
      Rng rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
      const auto xi = generate_pseudo_orbit(s.sys, out.k, scale, gaps_for(c.N.value), rng);
      const auto cv = cross_validate(c, xi, opt);
      out.ok = cv.ok();
      out.trace = cv.inductive.trace.size();
      out.window_sup = cv.inductive.window_sup_error;
      out.oracle_error = cv.direct.window_sup_error;
      out.agreement = cv.triangle;
      out.gap = cv.gap;
      Json j = certificate_json(cv.inductive);
      j["trial"] = t;
      out.certificate = j.dump();
      if (!out.ok) out.error = "cross-validation failed";
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  });

  auto cell = [](const std::optional<D>& d) { return d ? S::format_distance(*d) : std::string(); };
  auto approx = [](const std::optional<D>& d) { return d ? decimal(S::approx(*d)) : std::string(); };
  std::ostringstream csv, timing, certs;
  csv << "trial,k,rho,rho_approx,window_sup_error,window_sup_error_approx,oracle_error,oracle_error_approx,"
         "agreement_bound,agreement_bound_approx,shadow_gap,shadow_gap_approx,trace_length,verified\n";
  timing << "trial,wall_time_s\n";
  std::int64_t failures = 0;
  std::optional<D> worst;
  std::size_t longest_trace = 0;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const auto& o = outcomes[t];
    csv << t << ',' << o.k << ',' << S::format_distance(c.rho.value) << ',' << decimal(S::approx(c.rho.value)) << ','
        << cell(o.window_sup) << ',' << approx(o.window_sup) << ',' << cell(o.oracle_error) << ','
        << approx(o.oracle_error) << ',' << cell(o.agreement) << ',' << approx(o.agreement) << ',' << cell(o.gap)
        << ',' << approx(o.gap) << ',' << o.trace << ',' << (o.ok ? "yes" : "no") << '\n';
    timing << t << ',' << decimal(o.seconds) << '\n';
    if (!o.certificate.empty()) certs << o.certificate << '\n';
    if (!o.ok) ++failures;
    if (o.window_sup && (!worst || *o.window_sup > *worst)) worst = o.window_sup;
    longest_trace = std::max(longest_trace, o.trace);
  }

  std::ostringstream report;
  report << "command: shadow\n"
         << "system: " << s.sys.name() << "\n"
         << "seed: " << cfg.seed << "\n"
         << "trials: " << r.trials << "\n"
         << "jumps per trial: 0.." << r.jumps << " (trial t uses t mod " << (r.jumps + 1) << ")\n"
         << "epsilon: " << S::format_distance(c.epsilon.value) << "\n"
         << "alpha: " << S::format_distance(c.alpha.value) << "\n"
         << "delta: " << S::format_distance(c.delta.value) << "\n"
         << "N: " << c.N.value << "\n"
         << "rho: " << S::format_distance(c.rho.value) << "\n"
         << "jump scale: " << S::format_distance(scale) << "\n"
         << "window margin: " << opt.margin << "\n"
         << "verified: " << (r.trials - failures) << "/" << r.trials << "\n"
         << "max window_sup_error: " << cell(worst) << (worst ? " (~" + approx(worst) + ")" : "") << "\n"
         << "longest trace: " << longest_trace << "\n";
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    if (!outcomes[t].ok) report << "trial " << t << " failed: " << outcomes[t].error << "\n";
  }
  report << "result: " << (failures == 0 ? "PASS" : "FAIL") << "\n";

  prepare_dir(cfg.output_dir);
  write_file(cfg.output_dir / "trials.csv", csv.str());
  write_file(cfg.output_dir / "timing.csv", timing.str());
  write_file(cfg.output_dir / "certificates.jsonl", certs.str());
  write_file(cfg.output_dir / "constants.json", constants_text(s));
  write_file(cfg.output_dir / "report.txt", report.str());
  log << report.str();
  return failures == 0 ? kOk : kFailed;
}

// ---- falsify --------------------------------------------------------------

AuditReport uniform_audit(const ShiftSystem& sys, const Rational& eps, std::int64_t, std::uint64_t) {
  const std::int64_t N = uniform_N(sys, eps);
  if (N > 6) return AuditReport{0, 0, "skipped: exhaustion limited to N <= 6"};
  return audit_uniform_N_shift(N);
}

AuditReport uniform_audit(const ToralSystem& sys, const QuadraticNumber& eps, std::int64_t samples,
                          std::uint64_t seed) {
  return audit_uniform_N_toral(sys, eps, samples, seed);
}

template <DynamicalSystem S>
int falsify_impl(Setup<S> s, const ExperimentConfig& cfg, const Resolved& r, std::ostream& log) {
  using D = typename S::Distance;
  finish_checks(s);
  const auto& c = s.c;
  const D delta = cfg.delta ? parse_distance<S>(*cfg.delta) : c.delta.value;
  if (!(delta > D(0))) {
    log << "rejected: delta must be positive\n";
    return kRejected;
  }
  const bool certified = delta <= c.delta.value;
  const auto fr = semiexp_falsify(s.sys, delta, c.epsilon.value, r.trials, cfg.seed, true);
  const auto audit = uniform_audit(s.sys, c.epsilon.value, std::min<std::int64_t>(r.trials, 1000), cfg.seed);

  std::ostringstream csv;
  csv << "trial,admissible,sup,sup_approx,witness\n";
  for (const auto& t : fr.log) {
    const bool w = fr.witness && fr.witness->trial == t.index;
    csv << t.index << ',' << (t.admissible ? "yes" : "no") << ',' << (t.sup ? S::format_distance(*t.sup) : "")
        << ',' << (t.sup ? decimal(S::approx(*t.sup)) : "") << ',' << (w ? "yes" : "no") << '\n';
  }

  std::ostringstream report;
  report << "command: falsify\n"
         << "system: " << s.sys.name() << "\n"
         << "seed: " << cfg.seed << "\n"
         << "trials: " << r.trials << (r.trials == 0 ? " (vacuous: nothing searched)" : "") << "\n"
         << "epsilon: " << S::format_distance(c.epsilon.value) << "\n"
         << "alpha: " << S::format_distance(c.alpha.value) << "\n"
         << "delta: " << S::format_distance(delta) << (certified ? " (certified)" : " (override above certified "
                                                                   + S::format_distance(c.delta.value) + ")")
         << "\n"
         << "trials run: " << fr.trials << "\n"
         << "admissible pairs: " << fr.admissible << "\n";
  if (fr.witness) {
    report << "witness: trial " << fr.witness->trial << ", index " << fr.witness->index << ", distance "
           << S::format_distance(fr.witness->distance) << "\n";
  } else {
    report << "witness: none\n";
  }
  report << "uniform expansivity audit: " << audit.cases << " cases, " << audit.exceptions
         << " exceptions, worst " << audit.worst << "\n";
  const bool failed = (fr.witness && certified) || audit.exceptions > 0;
  report << "result: " << (failed ? "FAIL" : "PASS") << "\n";

  prepare_dir(cfg.output_dir);
  write_file(cfg.output_dir / "trials.csv", csv.str());
  write_file(cfg.output_dir / "constants.json", constants_text(s));
  write_file(cfg.output_dir / "report.txt", report.str());
  if (fr.witness) {
    std::ostringstream w;
    w << "# trial " << fr.witness->trial << ", distance " << S::format_distance(fr.witness->distance)
      << " at index " << fr.witness->index << "\n# xi\n"
      << to_text(fr.witness->xi) << "# eta\n"
      << to_text(fr.witness->eta);
    write_file(cfg.output_dir / "witness.txt", w.str());
  }
  log << report.str();
  return failed ? kFailed : kOk;
}

// ---- constants and gen ----------------------------------------------------

template <DynamicalSystem S>
int constants_impl(Setup<S> s, const ExperimentConfig& cfg, std::ostream& log) {
  finish_checks(s);
  const std::string text = constants_text(s);
  prepare_dir(cfg.output_dir);
  write_file(cfg.output_dir / "constants.json", text);
  log << text;
  return kOk;
}

template <DynamicalSystem S>
int gen_impl(Setup<S> s, const ExperimentConfig& cfg, const Resolved& r, std::ostream& log) {
  using D = typename S::Distance;
  const D scale = jump_scale_for(s, cfg);
  if (!(scale > D(0))) {
    log << "rejected: jump scale must be positive\n";
    return kRejected;
  }
  if (scale > s.c.rho.value) {
    log << "rejected: jump scale " << S::format_distance(scale) << " exceeds rho = "
        << S::format_distance(s.c.rho.value) << "\n";
    return kRejected;
  }
  Rng rng = trial_rng(cfg.seed, 0);
  const auto xi = generate_pseudo_orbit(s.sys, r.jumps, scale, gaps_for(s.c.N.value), rng);
  const std::string text = to_text(xi);
  prepare_dir(cfg.output_dir);
  write_file(cfg.output_dir / "pseudo_orbit.txt", text);
  log << text;
  return kOk;
}

template <class F>
int dispatch(const ExperimentConfig& cfg, const Resolved& r, F f) {
  if (r.toral) return f(setup_toral(r.epsilon));
  return f(setup_shift(r.alphabet, r.epsilon));
}

}  // namespace

int run(Command cmd, const ExperimentConfig& cfg, std::ostream& log) {
  Resolved r;
  try {
    r = resolve(cfg, cmd);
  } catch (const ConfigError& e) {
    log << "rejected: " << e.what() << "\n";
    return kRejected;
  }
  try {
    return dispatch(cfg, r, [&](auto setup) {
      switch (cmd) {
        case Command::Shadow: return shadow_impl(std::move(setup), cfg, r, log);
        case Command::Falsify: return falsify_impl(std::move(setup), cfg, r, log);
        case Command::Constants: return constants_impl(std::move(setup), cfg, log);
        case Command::Gen: return gen_impl(std::move(setup), cfg, r, log);
      }
      return static_cast<int>(kInternal);
    });
  } catch (const std::invalid_argument& e) {
    log << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kInternal;
  }
}

int run_shadowing(const ExperimentConfig& cfg, std::ostream& log) { return run(Command::Shadow, cfg, log); }
int run_falsify(const ExperimentConfig& cfg, std::ostream& log) { return run(Command::Falsify, cfg, log); }
int run_constants(const ExperimentConfig& cfg, std::ostream& log) { return run(Command::Constants, cfg, log); }
int run_gen(const ExperimentConfig& cfg, std::ostream& log) { return run(Command::Gen, cfg, log); }

}  // namespace experiment
