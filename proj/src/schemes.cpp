#include "nhqfi/schemes.hpp"

#include <numbers>

namespace nhqfi {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// The checked closed forms run in extended precision: the transcriptions
// cancel heavily as cos(alpha) -> 0, which costs double about 1e-12.
using Ext = long double;

// Kraus operators of the whole map rho -> sigma (unnormalised output).
std::vector<CMat2d> composite_kraus(const SchemeConfig& cfg, const ChannelSpec& ch, const CMat2d& u) {
  std::vector<CMat2d> ops;
  for (const CMat2d& e : ch.kraus) {
    switch (cfg.order) {
      case SchemeOrder::Baseline: ops.push_back(e); break;
      case SchemeOrder::PostNH: ops.push_back(u * e); break;
      case SchemeOrder::PriorNH: ops.push_back(e * u); break;
    }
  }
  return ops;
}

std::complex<double> det2(const CVec2d& a, const CVec2d& b) { return a(0) * b(1) - a(1) * b(0); }

const PtParams& pt_params_for(const SchemeConfig& cfg, SchemeOrder expected) {
  if (cfg.order != expected)
    throw Error(ErrorCode::InvalidArgument, "closed form requested for a different scheme");
  const auto* p = std::get_if<PtParams>(&cfg.nh);
  if (p == nullptr)
    throw Error(ErrorCode::InvalidArgument, "closed forms need the PT Hamiltonian");
  require_pt_regime(p->alpha);
  return *p;
}

}  // namespace

void require_pt_regime(double alpha) {
  if (!(std::abs(alpha) <= kHalfPi))
    throw Error(ErrorCode::PtBroken, "|alpha| > pi/2: spectrum is complex");
  if (std::abs(std::cos(alpha)) < 1e-12)
    throw Error(ErrorCode::ExceptionalPoint, "alpha at the exceptional point");
}

SchemeConfig SchemeConfig::at_optimal_input(SchemeOrder order, double eta, double alpha, double tau) {
  SchemeConfig cfg;
  cfg.input = InputParams{kHalfPi, kHalfPi};
  cfg.eta = DampingRate(eta);
  cfg.order = order;
  if (order != SchemeOrder::Baseline) cfg.nh = PtParams::from_tau(alpha, tau);
  return cfg;
}

QubitStated encode_input(double theta, double phi) {
  return phase_gate(prepare_input(InputParams{theta, 0.0}), -phi);
}

CMat2d nh_propagator(const SchemeConfig& cfg) {
  if (cfg.order == SchemeOrder::Baseline) return CMat2d::Identity();
  if (const auto* p = std::get_if<PtParams>(&cfg.nh)) return expm2(pt_hamiltonian(*p), p->t);
  if (const auto* g = std::get_if<GeneralParams>(&cfg.nh)) return general_evolution(*g);
  throw Error(ErrorCode::InvalidArgument, "scheme needs non-Hermitian parameters");
}

EvolvedState output_state(const SchemeConfig& cfg, double theta, double phi) {
  const ChannelSpec ch = amplitude_damping(cfg.eta);
  const QubitStated in = encode_input(theta, phi);
  switch (cfg.order) {
    case SchemeOrder::Baseline:
      return EvolvedState{apply_channel(ch, in), 1.0};
    case SchemeOrder::PostNH:
      return evolve_renormalized(nh_propagator(cfg), apply_channel(ch, in));
    case SchemeOrder::PriorNH: {
      const EvolvedState mid = evolve_renormalized(nh_propagator(cfg), in);
      return EvolvedState{apply_channel(ch, mid.state), mid.success_prob};
    }
  }
  return EvolvedState{in, 1.0};
}

BlochJet output_jet(const SchemeConfig& cfg, Parameter wrt, double theta, double phi) {
  const std::complex<double> i(0, 1);
  const std::complex<double> phase = std::polar(1.0, -phi);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);

  CVec2d psi, dpsi;
  psi << c, phase * s;
  if (wrt == Parameter::Theta)
    dpsi << -s / 2.0, phase * c / 2.0;
  else
    dpsi << 0.0, -i * phase * s;

  // sigma = sum_k a_k a_k^dagger with a_k = M_k psi.
  const std::vector<CMat2d> ops = composite_kraus(cfg, amplitude_damping(cfg.eta), nh_propagator(cfg));
  std::vector<CVec2d> a, da;
  CMat2d sigma = CMat2d::Zero(), dsigma = CMat2d::Zero();
  for (const CMat2d& m : ops) {
    a.push_back(m * psi);
    da.push_back(m * dpsi);
    sigma += a.back() * a.back().adjoint();
    dsigma += da.back() * a.back().adjoint() + a.back() * da.back().adjoint();
  }
  const double tr = sigma.trace().real();
  const double dtr = dsigma.trace().real();
  if (!(tr > 1e-12)) throw Error(ErrorCode::VanishingNorm, "output trace vanishes");

  // det sigma = sum_{j<k} |det[a_j, a_k]|^2, free of the cancellation in
  // 1 - |r|^2 computed from r.
  double w2 = 0.0, dw_dot = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = j + 1; k < a.size(); ++k) {
      const std::complex<double> w = det2(a[j], a[k]);
      const std::complex<double> dw = det2(da[j], a[k]) + det2(a[j], da[k]);
      w2 += std::norm(w);
      dw_dot += std::real(std::conj(w) * dw);
    }
  const double wn = std::sqrt(w2);
  const double dwn = wn > 0.0 ? dw_dot / wn : 0.0;

  const CMat2d out = sigma / tr;
  const CMat2d dout = dsigma / tr - sigma * (dtr / (tr * tr));
  BlochJet jet{bloch_components<double>(out), bloch_components<double>(dout)};
  jet.g = 2.0 * wn / tr;
  jet.dg = 2.0 * dwn / tr - 2.0 * wn * dtr / (tr * tr);
  return jet;
}

double exact_qfi(const SchemeConfig& cfg, Parameter wrt, double theta, double phi) {
  // With g = sqrt(1 - |r|^2), (r . dr)^2 / (1 - |r|^2) = (dg)^2, so no
  // branch or threshold is needed; a pure output has g = dg = 0.
  const BlochJet jet = output_jet(cfg, wrt, theta, phi);
  return jet.dr.squaredNorm() + jet.dg * jet.dg;
}

SchemeOutput run_pipeline(const SchemeConfig& cfg) {
  cfg.input.validate();
  const double theta = cfg.input.theta, phi = cfg.input.phi;
  const EvolvedState out = output_state(cfg, theta, phi);

  const ParamCurve theta_curve{[&](double x) { return output_state(cfg, x, phi).state; }, theta, kPipelineStep};
  const ParamCurve phi_curve{[&](double x) { return output_state(cfg, theta, x).state; }, phi, kPipelineStep};

  SchemeOutput r;
  r.bloch = to_bloch(out.state);
  r.qfi_theta = qfi_numeric(theta_curve).value;
  r.qfi_phi = qfi_numeric(phi_curve).value;
  r.success_prob = out.success_prob;
  r.baseline_f = 1.0 - cfg.eta.eta() * cfg.eta.eta();
  r.delta_f = r.qfi_theta - r.baseline_f;
  r.gamma = closed_form::gamma_of(theta, cfg.eta.eta());
  return r;
}

double delta_f(const SchemeConfig& cfg) { return run_pipeline(cfg).delta_f; }

BlochVectord bloch_scheme1(const SchemeConfig& cfg) {
  const PtParams& p = pt_params_for(cfg, SchemeOrder::PostNH);
  return closed_form::bloch_scheme1<Ext>(cfg.input.theta, cfg.input.phi, cfg.eta.eta(), p.alpha, p.tau())
      .cast<double>();
}

BlochVectord bloch_scheme2(const SchemeConfig& cfg) {
  const PtParams& p = pt_params_for(cfg, SchemeOrder::PriorNH);
  return closed_form::bloch_scheme2<Ext>(cfg.input.theta, cfg.input.phi, cfg.eta.eta(), p.alpha, p.tau())
      .cast<double>();
}

ClosedFormQfi closed_form_f_scheme1_full(const SchemeConfig& cfg) {
  const PtParams& p = pt_params_for(cfg, SchemeOrder::PostNH);
  const double th = cfg.input.theta, ph = cfg.input.phi, eta = cfg.eta.eta();
  return ClosedFormQfi{static_cast<double>(closed_form::f_theta_scheme1<Ext>(th, ph, eta, p.alpha, p.tau())),
                       static_cast<double>(closed_form::f_phi_scheme1<Ext>(th, ph, eta, p.alpha, p.tau()))};
}

double closed_form_f_scheme1_optimal(double eta, double alpha, double tau) {
  require_pt_regime(alpha);
  return static_cast<double>(closed_form::f_scheme1_optimal<Ext>(DampingRate(eta).eta(), alpha, tau));
}

double closed_form_f_scheme2(double eta, double alpha, double tau) {
  require_pt_regime(alpha);
  if (std::abs(1.0 + std::cos(2.0 * tau) * std::sin(alpha)) <= 1e-9)
    throw Error(ErrorCode::DenominatorVanishes, "1 + cos(2 tau) sin(alpha) vanishes");
  return static_cast<double>(closed_form::f_scheme2<Ext>(DampingRate(eta).eta(), alpha, tau));
}

double success_prob_scheme1(double eta, double alpha, double tau) {
  require_pt_regime(alpha);
  return static_cast<double>(closed_form::success_prob_scheme1<Ext>(DampingRate(eta).eta(), alpha, tau));
}

double success_prob_scheme1(double eta, double alpha, double tau, double theta, double phi) {
  require_pt_regime(alpha);
  const Ext c = std::cos(Ext(alpha));
  return static_cast<double>(
      closed_form::scheme1_denominator<Ext>(theta, phi, DampingRate(eta).eta(), alpha, tau) / (2 * c * c));
}

double success_prob_scheme2(double alpha, double tau) {
  require_pt_regime(alpha);
  return static_cast<double>(closed_form::success_prob_scheme2<Ext>(alpha, tau));
}

}  // namespace nhqfi
