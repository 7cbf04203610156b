#include "nhqfi/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "nhqfi/io.hpp"
#include "nhqfi/sweep.hpp"

namespace nhqfi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Draw {
  double theta, phi, eta, alpha, alpha_wide, tau, s, t;
  Eigen::Vector3d r;  // a point in the Bloch ball
};

Draw sample(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n(0.0, 1.0);
  Draw d{};
  d.theta = kPi * u(g);
  d.phi = 2.0 * kPi * u(g);
  d.eta = 0.95 * u(g);
  d.alpha = 0.45 * kPi * (2.0 * u(g) - 1.0);
  d.alpha_wide = 0.49 * kPi * (2.0 * u(g) - 1.0);
  d.tau = kPi * u(g);
  d.s = 0.2 + 2.8 * u(g);
  d.t = 10.0 * u(g);
  Eigen::Vector3d dir(n(g), n(g), n(g));
  d.r = dir.normalized() * std::cbrt(u(g));
  return d;
}

std::string describe(const Draw& d, const std::vector<std::string>& fields) {
  std::string out;
  for (const auto& f : fields) {
    double v = 0.0;
    if (f == "theta") v = d.theta;
    else if (f == "phi") v = d.phi;
    else if (f == "eta") v = d.eta;
    else if (f == "alpha") v = d.alpha;
    else if (f == "alpha_wide") v = d.alpha_wide;
    else if (f == "tau") v = d.tau;
    else if (f == "s") v = d.s;
    else if (f == "t") v = d.t;
    if (f == "state") {
      out += (out.empty() ? "" : " ") + std::string("r=(") + format_double(d.r.x()) + "," +
             format_double(d.r.y()) + "," + format_double(d.r.z()) + ")";
      continue;
    }
    out += (out.empty() ? "" : " ") + (f == "alpha_wide" ? std::string("alpha") : f) + "=" + format_double(v);
  }
  return out;
}

double rel(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-12);
}

SchemeConfig config(SchemeOrder order, const Draw& d, bool optimal_input) {
  PhysicalPoint p{d.theta, d.phi, d.eta, d.alpha, d.tau};
  if (optimal_input) p.theta = p.phi = kPi / 2.0;
  return make_config(order, p);
}

double stationarity_error(SchemeOrder order, const Draw& d) {
  const StationarityReport r = verify_stationarity(config(order, d, true));
  double e = std::max(std::abs(r.d1_theta), std::abs(r.d1_phi));
  e = std::max(e, r.d2_theta - r.d2_floor);
  return std::max(e, r.d2_phi - r.d2_floor);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

struct CheckDef {
  std::string name;
  std::string description;
  double tolerance;
  std::vector<std::string> fields;
  std::function<double(const Draw&)> error;
};

std::vector<CheckDef> definitions() {
  using S = SchemeOrder;
  const std::vector<std::string> all5{"theta", "phi", "eta", "alpha", "tau"};
  const std::vector<std::string> opt3{"eta", "alpha", "tau"};
  std::vector<CheckDef> c;

  c.push_back({"evolution_operator", "closed-form U(t) vs exact exponential, entrywise, scaled by max(1,|U_ij|)",
               1e-12, {"s", "alpha_wide", "t"}, [](const Draw& d) {
                 const PtParams p{d.s, d.alpha_wide, d.t};
                 const CMat2d a = pt_evolution(p), b = expm2(pt_hamiltonian(p), p.t);
                 double e = 0.0;
                 for (int i = 0; i < 2; ++i)
                   for (int j = 0; j < 2; ++j)
                     e = std::max(e, std::abs(a(i, j) - b(i, j)) / std::max(1.0, std::abs(b(i, j))));
                 return e;
               }});
  c.push_back({"bloch_scheme1", "closed-form scheme I Bloch vector vs pipeline", 1e-10, all5,
               [](const Draw& d) {
                 const SchemeConfig cfg = config(S::PostNH, d, false);
                 return (bloch_scheme1(cfg) - to_bloch(output_state(cfg, d.theta, d.phi).state))
                     .cwiseAbs().maxCoeff();
               }});
  c.push_back({"bloch_scheme2", "closed-form scheme II Bloch vector vs pipeline", 1e-10, all5,
               [](const Draw& d) {
                 const SchemeConfig cfg = config(S::PriorNH, d, false);
                 return (bloch_scheme2(cfg) - to_bloch(output_state(cfg, d.theta, d.phi).state))
                     .cwiseAbs().maxCoeff();
               }});
  c.push_back({"qfi_theta_scheme1", "closed-form scheme I theta-QFI (general input) vs numeric, relative",
               1e-5, all5, [](const Draw& d) {
                 const SchemeConfig cfg = config(S::PostNH, d, false);
                 return rel(closed_form_f_scheme1_full(cfg).f_theta, run_pipeline(cfg).qfi_theta);
               }});
  c.push_back({"qfi_phi_scheme1", "closed-form scheme I phi-QFI (general input) vs numeric, relative", 1e-5,
               all5, [](const Draw& d) {
                 const SchemeConfig cfg = config(S::PostNH, d, false);
                 return rel(closed_form_f_scheme1_full(cfg).f_phi, run_pipeline(cfg).qfi_phi);
               }});
  c.push_back({"qfi_scheme1_optimal", "closed-form scheme I QFI at the optimal input vs numeric, relative",
               1e-5, opt3, [](const Draw& d) {
                 return rel(closed_form_f_scheme1_optimal(d.eta, d.alpha, d.tau),
                            run_pipeline(config(S::PostNH, d, true)).qfi_theta);
               }});
  c.push_back({"qfi_scheme2", "closed-form scheme II QFI at the optimal input vs numeric, relative", 1e-5,
               opt3, [](const Draw& d) {
                 return rel(closed_form_f_scheme2(d.eta, d.alpha, d.tau),
                            run_pipeline(config(S::PriorNH, d, true)).qfi_theta);
               }});
  c.push_back({"success_prob_scheme1", "closed-form scheme I success probability vs trace", 1e-10, opt3,
               [](const Draw& d) {
                 return std::abs(success_prob_scheme1(d.eta, d.alpha, d.tau) -
                                 run_pipeline(config(S::PostNH, d, true)).success_prob);
               }});
  c.push_back({"success_prob_scheme2", "closed-form scheme II success probability vs trace", 1e-10, opt3,
               [](const Draw& d) {
                 return std::abs(success_prob_scheme2(d.alpha, d.tau) -
                                 run_pipeline(config(S::PriorNH, d, true)).success_prob);
               }});
  c.push_back({"success_prob_scheme2_eta", "scheme II success probability at eta = 0 vs eta = 0.9", 1e-12,
               {"alpha", "tau"}, [](const Draw& d) {
                 Draw a = d, b = d;
                 a.eta = 0.0;
                 b.eta = 0.9;
                 return std::abs(run_pipeline(config(S::PriorNH, a, true)).success_prob -
                                 run_pipeline(config(S::PriorNH, b, true)).success_prob);
               }});
  c.push_back({"tau_periodicity", "F(tau + pi) vs F(tau), both schemes, numeric and closed form, relative",
               1e-10, all5, [](const Draw& d) {
                 Draw e = d;
                 e.tau = d.tau + kPi;
                 double err = 0.0;
                 for (S order : {S::PostNH, S::PriorNH}) {
                   const double a = exact_qfi(config(order, d, false), Parameter::Theta, d.theta, d.phi);
                   const double b = exact_qfi(config(order, e, false), Parameter::Theta, d.theta, d.phi);
                   err = std::max(err, rel(b, a));
                 }
                 err = std::max(err, rel(closed_form_f_scheme1_optimal(d.eta, d.alpha, e.tau),
                                         closed_form_f_scheme1_optimal(d.eta, d.alpha, d.tau)));
                 err = std::max(err, rel(closed_form_f_scheme2(d.eta, d.alpha, e.tau),
                                         closed_form_f_scheme2(d.eta, d.alpha, d.tau)));
                 return err;
               }});
  c.push_back({"closed_form_reductions",
               "closed-form QFIs at alpha = 0 and at tau = 0 vs 1 - eta^2 (theta-QFI at general input)", 1e-12,
               all5, [](const Draw& d) {
                 const double base = 1.0 - d.eta * d.eta;
                 double err = 0.0;
                 for (auto [alpha, tau] : {std::pair{0.0, d.tau}, std::pair{d.alpha, 0.0}}) {
                   Draw e = d;
                   e.alpha = alpha;
                   e.tau = tau;
                   const ClosedFormQfi general = closed_form_f_scheme1_full(config(S::PostNH, e, false));
                   const ClosedFormQfi optimal = closed_form_f_scheme1_full(config(S::PostNH, e, true));
                   for (double f : {general.f_theta, optimal.f_phi, closed_form_f_scheme1_optimal(e.eta, alpha, tau),
                                    closed_form_f_scheme2(e.eta, alpha, tau)})
                     err = std::max(err, std::abs(f - base));
                 }
                 return err;
               }});
  c.push_back({"baseline_reduction", "numeric baseline theta-QFI vs 1 - eta^2", 1e-9, {"eta"},
               [](const Draw& d) {
                 return std::abs(run_pipeline(config(S::Baseline, d, true)).qfi_theta - (1.0 - d.eta * d.eta));
               }});
  c.push_back({"trivial_evolution", "numeric theta-QFI of scheme I at alpha = 0 and of both schemes at tau = 0 vs the baseline",
               1e-10, opt3, [](const Draw& d) {
                 const double base = run_pipeline(config(S::Baseline, d, true)).qfi_theta;
                 Draw a = d, t = d;
                 a.alpha = 0.0;
                 t.tau = 0.0;
                 double err = std::abs(run_pipeline(config(S::PostNH, a, true)).qfi_theta - base);
                 for (S order : {S::PostNH, S::PriorNH})
                   err = std::max(err, std::abs(run_pipeline(config(order, t, true)).qfi_theta - base));
                 return err;
               }});
  c.push_back({"scheme2_alpha0_reduction", "numeric scheme II theta-QFI at alpha = 0 vs 1 - eta^2, relative", 1e-5,
               {"eta", "tau"}, [](const Draw& d) {
                 Draw a = d;
                 a.alpha = 0.0;
                 return rel(run_pipeline(config(S::PriorNH, a, true)).qfi_theta, 1.0 - d.eta * d.eta);
               }});
  c.push_back({"initial_phi_independence", "theta-QFI at tau = 0 for phi in {0, pi/4, pi/2}, both schemes",
               1e-10, {"theta", "eta", "alpha"}, [](const Draw& d) {
                 double err = 0.0;
                 for (S order : {S::PostNH, S::PriorNH}) {
                   Draw e = d;
                   e.tau = 0.0;
                   e.phi = 0.0;
                   const SchemeConfig cfg = config(order, e, false);
                   const double ref = exact_qfi(cfg, Parameter::Theta, d.theta, 0.0);
                   for (double phi : {kPi / 4.0, kPi / 2.0}) {
                     err = std::max(err, std::abs(exact_qfi(cfg, Parameter::Theta, d.theta, phi) - ref));
                   }
                 }
                 return err;
               }});
  c.push_back({"stationarity_scheme1",
               "scheme I: max(|dF/dtheta|, |dF/dphi|, excess of d2F over its rounding floor) at theta = phi = pi/2",
               kStationarityTol, opt3, [](const Draw& d) { return stationarity_error(S::PostNH, d); }});
  c.push_back({"stationarity_scheme2", "scheme II: as stationarity_scheme1", kStationarityTol, opt3,
               [](const Draw& d) { return stationarity_error(S::PriorNH, d); }});
  c.push_back({"general_hamiltonian",
               "renormalised evolution under H' (g_r = s, delta = 0) vs the PT Hamiltonian on random states", 1e-11,
               {"s", "alpha", "t", "state"}, [](const Draw& d) {
                 const QubitStated in = from_bloch<double>(d.r);
                 const CMat2d u_pt = expm2(pt_hamiltonian(PtParams{d.s, d.alpha, d.t}), d.t);
                 const CMat2d u_gen = general_evolution(GeneralParams{d.s, d.s, d.alpha, 0.0, d.t});
                 return max_abs(CMat2d(evolve_renormalized(u_pt, in).state.rho() -
                                       evolve_renormalized(u_gen, in).state.rho()));
               }});
  c.push_back({"qfi_methods", "spectral vs Bloch QFI on scheme I output curves with |r| <= 0.999, relative", 1e-4,
               all5, [](const Draw& d) {
                 const SchemeConfig cfg = config(S::PostNH, d, false);
                 const ParamCurve curve{[&](double x) { return output_state(cfg, x, d.phi).state; }, d.theta};
                 if (to_bloch(curve.state(d.theta)).norm() > 0.999) return 0.0;
                 return rel(qfi_spectral(curve).value, qfi_bloch(curve).value);
               }});
  return c;
}

}  // namespace

std::vector<std::string> verification_checks() {
  std::vector<std::string> names;
  for (const auto& c : definitions()) names.push_back(c.name);
  return names;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const std::vector<CheckDef> defs = definitions();
  for (const auto& s : options.skip) {
    bool known = false;
    for (const auto& c : defs) known = known || c.name == s;
    if (!known) throw Error(ErrorCode::InvalidArgument, "unknown check '" + s + "'");
  }
  const int n = std::max(1, options.samples);

  std::vector<CheckResult> results;
  for (const CheckDef& def : defs) {
    CheckResult r;
    r.name = def.name;
    r.description = def.description;
    r.tolerance = options.tolerance.value_or(def.tolerance);
    if (options.skip.count(def.name)) {
      r.skipped = true;
      results.push_back(r);
      continue;
    }

    const std::uint64_t tag = fnv1a(def.name);
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
    std::mt19937_64 gen(seq);
    std::vector<Draw> draws;
    for (int i = 0; i < n; ++i) draws.push_back(sample(gen));
    std::vector<double> errors(draws.size());
    std::vector<std::string> notes(draws.size());
    parallel_for(draws.size(), options.threads, [&](std::size_t i) {
      try {
        const double e = def.error(draws[i]);
        errors[i] = std::isnan(e) ? kInf : e;
      } catch (const Error& ex) {
        errors[i] = kInf;
        notes[i] = std::string(" [") + std::string(to_string(ex.code())) + "]";
      }
    });

    r.samples = n;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      if (!(errors[i] <= r.tolerance)) ++r.failures;
      if (errors[i] > errors[worst]) worst = i;
    }
    r.max_error = errors[worst];
    r.worst_draw = describe(draws[worst], def.fields) + notes[worst];
    results.push_back(r);
  }
  return results;
}

}  // namespace nhqfi
