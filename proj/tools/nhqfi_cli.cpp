// nhqfi: evaluate, sweep, optimise and cross-check the QFI of a damped qubit
// under PT-symmetric non-Hermitian evolution.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage / invalid parameters,
// 3 optimum on the search-range boundary.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <unistd.h>

#include "nhqfi/figures.hpp"
#include "nhqfi/io.hpp"
#include "nhqfi/sweep.hpp"
#include "nhqfi/verify.hpp"

namespace {

using nlohmann::json;
using namespace nhqfi;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kBoundary = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw parameter strings; angles are parsed after CLI11 so that pi-literals
// and --degrees work everywhere.
struct ParamFlags {
  std::string scheme = "post";
  std::string theta = "pi/2";
  std::string phi = "pi/2";
  std::string eta = "0.2";
  std::string alpha = "pi/5";
  std::string tau = "2.5";
  bool degrees = false;

  void add(CLI::App* app, bool with_scheme = true) {
    if (with_scheme)
      app->add_option("--scheme", scheme, "baseline | post (damping then NH) | prior (NH then damping)")
          ->capture_default_str();
    app->add_option("--theta", theta, "input amplitude angle")->capture_default_str();
    app->add_option("--phi", phi, "input phase angle")->capture_default_str();
    app->add_option("--eta", eta, "damping rate, 1 - eta^2 = survival of |e>")->capture_default_str();
    app->add_option("--alpha", alpha, "non-Hermiticity angle")->capture_default_str();
    app->add_option("--tau", tau, "scaled time s t cos(alpha)")->capture_default_str();
    app->add_flag("--degrees", degrees, "read theta, phi, alpha in degrees (pi-literals stay radians)");
  }

  SchemeOrder order() const {
    const auto s = parse_scheme(scheme);
    if (!s) throw UsageError("unknown scheme '" + scheme + "' (baseline | post | prior)");
    return *s;
  }

  PhysicalPoint point() const {
    return PhysicalPoint{parse_angle(theta, degrees), parse_angle(phi, degrees), parse_real(eta),
                         parse_angle(alpha, degrees), parse_real(tau)};
  }
};

// Writes to the --output file when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json bloch_json(const BlochVectord& r) { return json::array({r.x(), r.y(), r.z()}); }

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---- eval ----

struct EvalFlags {
  ParamFlags p;
  bool closed_form = false;
  std::string hamiltonian = "pt";
  std::string s = "1";
  std::string g_r;
  std::string delta = "0";
  std::string output;
};

int cmd_eval(const EvalFlags& f) {
  const SchemeOrder order = f.p.order();
  const PhysicalPoint pt = f.p.point();
  SchemeConfig cfg = make_config(order, pt);
  json rec{{"scheme", to_string(order)},
           {"theta", pt.theta}, {"phi", pt.phi}, {"eta", pt.eta}, {"alpha", pt.alpha}, {"tau", pt.tau}};

  if (f.hamiltonian == "general") {
    if (f.closed_form) throw UsageError("--closed-form needs --hamiltonian pt");
    if (order == SchemeOrder::Baseline) throw UsageError("baseline has no Hamiltonian");
    GeneralParams g;
    g.s = parse_real(f.s);
    g.g_r = f.g_r.empty() ? g.s : parse_real(f.g_r);
    g.alpha = pt.alpha;
    g.delta = parse_real(f.delta);
    const double c = g.s * std::cos(pt.alpha);
    if (std::abs(c) < 1e-12) throw Error(ErrorCode::ExceptionalPoint, "s cos(alpha) vanishes");
    g.t = pt.tau / c;
    cfg.nh = g;
    rec["hamiltonian"] = "general";
    rec["g_r"] = g.g_r;
    rec["s"] = g.s;
    rec["delta"] = g.delta;
  } else if (f.hamiltonian != "pt") {
    throw UsageError("--hamiltonian must be pt or general");
  }

  if (!f.closed_form) {
    const SchemeOutput out = run_pipeline(cfg);
    rec["method"] = "numeric";
    rec["bloch"] = bloch_json(out.bloch);
    rec["qfi_theta"] = out.qfi_theta;
    rec["qfi_phi"] = out.qfi_phi;
    rec["success_prob"] = out.success_prob;
    rec["delta_f"] = out.delta_f;
    rec["baseline_f"] = out.baseline_f;
  } else {
    cfg.input.validate();
    const double base = 1.0 - pt.eta * pt.eta;
    const bool optimal_input = pt.theta == std::numbers::pi / 2 && pt.phi == std::numbers::pi / 2;
    std::optional<double> f_theta, f_phi, prob;
    BlochVectord bloch;
    switch (order) {
      case SchemeOrder::Baseline:
        throw UsageError("no closed forms for the baseline; drop --closed-form");
      case SchemeOrder::PostNH: {
        bloch = bloch_scheme1(cfg);
        const ClosedFormQfi q = closed_form_f_scheme1_full(cfg);
        f_theta = q.f_theta;
        f_phi = q.f_phi;
        prob = success_prob_scheme1(pt.eta, pt.alpha, pt.tau, pt.theta, pt.phi);
        break;
      }
      case SchemeOrder::PriorNH:
        bloch = bloch_scheme2(cfg);
        // The scheme II closed forms hold at theta = phi = pi/2 only.
        if (optimal_input) {
          f_theta = f_phi = closed_form_f_scheme2(pt.eta, pt.alpha, pt.tau);
          prob = success_prob_scheme2(pt.alpha, pt.tau);
        }
        break;
    }
    rec["method"] = "closed_form";
    rec["bloch"] = bloch_json(bloch);
    rec["qfi_theta"] = nullable(f_theta);
    rec["qfi_phi"] = nullable(f_phi);
    rec["success_prob"] = nullable(prob);
    rec["delta_f"] = f_theta ? json(*f_theta - base) : json(nullptr);
    rec["baseline_f"] = base;
  }
  Sink sink(f.output);
  sink.out() << rec.dump() << '\n';
  return kOk;
}

// ---- sweep ----

struct SweepFlags {
  ParamFlags p;
  std::vector<std::string> vary;
  std::vector<std::string> fix;
  std::string quantity = "qfi_theta";
  std::string output;
  unsigned threads = 0;
};

int cmd_sweep(const SweepFlags& f) {
  SweepSpec spec;
  spec.scheme = f.p.order();
  spec.fixed = f.p.point();
  const auto q = parse_quantity(f.quantity);
  if (!q) throw UsageError("unknown quantity '" + f.quantity + "'");
  spec.quantity = *q;
  if (f.vary.size() > 2) throw UsageError("at most two --vary axes");
  for (const auto& v : f.vary) {
    Axis a = parse_vary(v, f.p.degrees);
    if (a.values.size() < 2) throw UsageError("zero-length range '" + v + "': use --fix for a single value");
    spec.axes.push_back(std::move(a));
  }
  for (const auto& v : f.fix) {
    const auto [name, value] = parse_fix(v, f.p.degrees);
    spec.fixed[name] = value;
  }
  spec.validate();
  const Table t = run_sweep(spec, f.threads);
  Sink sink(f.output);
  write_csv(sink.out(), t);
  return kOk;
}

// ---- optimize ----

struct OptimizeFlags {
  std::string scheme = "post";
  std::string eta = "0.2";
  std::string alpha_range = "0:0.49pi";
  std::string tau_range = "0:pi";
  int grid = 161;
  bool degrees = false;
  std::string output;
  unsigned threads = 0;
};

Interval parse_interval(const std::string& text, bool degrees) {
  const auto c = text.find(':');
  if (c == std::string::npos) {
    const double v = parse_angle(text, degrees);
    return {v, v};
  }
  const Interval iv{parse_angle(text.substr(0, c), degrees), parse_angle(text.substr(c + 1), degrees)};
  if (!(iv.hi >= iv.lo)) throw UsageError("range '" + text + "' needs lo <= hi");
  return iv;
}

json report_json(const OptimumReport& r, bool interior) {
  return json{{"alpha", r.alpha},
              {"tau", r.tau},
              {"qfi", r.qfi},
              {"best_grid_qfi", r.best_grid_qfi},
              {"grid_resolution", r.grid_resolution},
              {"refinement_iterations", r.refinement_iterations},
              {"gradient_norm", r.gradient_norm},
              {"interior", interior}};
}

int cmd_optimize(const OptimizeFlags& f) {
  const auto order = parse_scheme(f.scheme);
  if (!order || *order == SchemeOrder::Baseline) throw UsageError("--scheme must be post or prior");
  const Interval alpha = parse_interval(f.alpha_range, f.degrees);
  const Interval tau = parse_interval(f.tau_range, false);
  OptimizeOptions opt;
  opt.grid = f.grid;
  opt.threads = f.threads;
  Sink sink(f.output);
  try {
    const OptimumReport r = optimize_nh(parse_real(f.eta), *order, alpha, tau, opt);
    sink.out() << report_json(r, true).dump() << '\n';
    return kOk;
  } catch (const NoInteriorOptimumError& e) {
    sink.out() << report_json(e.report(), false).dump() << '\n';
    std::cerr << "nhqfi optimize: " << e.what() << '\n';
    return kBoundary;
  }
}

// ---- verify ----

struct VerifyFlags {
  std::uint64_t seed = 1;
  int samples = 200;
  std::optional<double> tolerance;
  std::vector<std::string> skip;
  bool list = false;
  unsigned threads = 0;
};

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stdout)); }

int cmd_verify(const VerifyFlags& f) {
  if (f.list) {
    for (const auto& n : verification_checks()) std::cout << n << '\n';
    return kOk;
  }
  if (f.samples < 1) throw UsageError("--samples must be >= 1");
  VerifyOptions opt;
  opt.seed = f.seed;
  opt.samples = f.samples;
  opt.tolerance = f.tolerance;
  opt.skip = {f.skip.begin(), f.skip.end()};
  opt.threads = f.threads;
  const auto results = run_verification(opt);

  const bool color = use_color();
  const auto tag = [&](const CheckResult& r) -> std::string {
    const char* word = r.skipped ? "SKIP" : r.passed() ? "PASS" : "FAIL";
    if (!color || r.skipped) return word;
    return std::string(r.passed() ? "\033[32m" : "\033[31m") + word + "\033[0m";
  };

  bool ok = true;
  std::printf("%-26s %-6s %-24s %-10s %s\n", "check", "result", "max_error", "tolerance", "failures");
  for (const auto& r : results) {
    ok = ok && r.passed();
    std::printf("%-26s %-6s %-24s %-10.3g %s\n", r.name.c_str(), tag(r).c_str(),
                r.skipped ? "-" : format_double(r.max_error).c_str(), r.tolerance,
                r.skipped ? "-" : (std::to_string(r.failures) + "/" + std::to_string(r.samples)).c_str());
  }
  for (const auto& r : results)
    if (!r.skipped && r.max_error > 0.0 && !r.passed()) std::printf("  %s: worst draw %s\n", r.name.c_str(), r.worst_draw.c_str());
  std::fflush(stdout);
  return ok ? kOk : kVerifyFailed;
}

// ---- figure ----

struct FigureFlags {
  int id = 0;
  std::string output;
  unsigned threads = 0;
};

int cmd_figure(const FigureFlags& f) {
  if (f.id < kFirstFigure || f.id > kLastFigure) throw UsageError("--id must be in 2..8");
  const Table t = make_figure(f.id, f.threads);
  Sink sink(f.output);
  write_csv(sink.out(), t);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QFI of a damped qubit with PT-symmetric non-Hermitian evolution"};
  app.set_config("--config", "", "key = value file with one [section] per subcommand; flags override it");
  app.require_subcommand(1);

  EvalFlags ef;
  auto* eval = app.add_subcommand("eval", "one pipeline evaluation as a JSON object");
  ef.p.add(eval);
  eval->add_flag("--closed-form", ef.closed_form, "use the closed-form expressions instead of the numeric pipeline");
  eval->add_option("--hamiltonian", ef.hamiltonian, "pt | general")->capture_default_str();
  eval->add_option("--s", ef.s, "coupling s (general Hamiltonian)")->capture_default_str();
  eval->add_option("--g-r", ef.g_r, "diagonal magnitude g_r (general Hamiltonian), default s");
  eval->add_option("--delta", ef.delta, "detuning delta (general Hamiltonian)")->capture_default_str();
  eval->add_option("-o,--output", ef.output, "output file (default stdout)");

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "grid evaluation as CSV");
  sf.p.add(sweep);
  sweep->add_option("--vary", sf.vary, "name=start:stop:step, up to two (outer first)");
  sweep->add_option("--fix", sf.fix, "name=value, overrides the parameter flags");
  sweep->add_option("--quantity", sf.quantity, "qfi_theta | qfi_phi | delta_f | success_prob")
      ->capture_default_str();
  sweep->add_option("-o,--output", sf.output, "output file (default stdout)");
  sweep->add_option("--threads", sf.threads, "worker threads, 0 = all cores")->capture_default_str();

  OptimizeFlags of;
  auto* optimize = app.add_subcommand("optimize", "maximise the theta-QFI over (alpha, tau) at theta = phi = pi/2");
  optimize->add_option("--scheme", of.scheme, "post | prior")->capture_default_str();
  optimize->add_option("--eta", of.eta, "damping rate")->capture_default_str();
  optimize->add_option("--alpha-range", of.alpha_range, "lo:hi, or a single value")->capture_default_str();
  optimize->add_option("--tau-range", of.tau_range, "lo:hi, or a single value")->capture_default_str();
  optimize->add_option("--grid", of.grid, "coarse grid points per axis")->capture_default_str();
  optimize->add_flag("--degrees", of.degrees, "alpha range in degrees");
  optimize->add_option("-o,--output", of.output, "output file (default stdout)");
  optimize->add_option("--threads", of.threads, "worker threads, 0 = all cores")->capture_default_str();

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "closed-form and invariant cross-checks on random draws");
  verify->add_option("--seed", vf.seed, "random seed")->capture_default_str();
  verify->add_option("--samples", vf.samples, "draws per check")->capture_default_str();
  verify->add_option("--tolerance", vf.tolerance, "override every check's tolerance");
  verify->add_option("--skip", vf.skip, "check names to skip");
  verify->add_flag("--list", vf.list, "list check names and exit");
  verify->add_option("--threads", vf.threads, "worker threads, 0 = all cores")->capture_default_str();

  FigureFlags ff;
  auto* figure = app.add_subcommand("figure", "figure data as CSV");
  figure->add_option("--id", ff.id, "figure id, 2..8")->required();
  figure->add_option("-o,--output", ff.output, "output file (default stdout)");
  figure->add_option("--threads", ff.threads, "worker threads, 0 = all cores")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "eval") return cmd_eval(ef);
    if (name == "sweep") return cmd_sweep(sf);
    if (name == "optimize") return cmd_optimize(of);
    if (name == "verify") return cmd_verify(vf);
    if (name == "figure") return cmd_figure(ff);
  } catch (const UsageError& e) {
    std::cerr << "nhqfi " << name << ": " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "nhqfi " << name << ": " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
