#pragma once

#include <variant>

#include "nhqfi/channels.hpp"
#include "nhqfi/closed_forms.hpp"
#include "nhqfi/nonhermitian.hpp"
#include "nhqfi/qfi.hpp"

namespace nhqfi {

// Baseline: damping only. PostNH (scheme I): damping, then the
// non-Hermitian evolution. PriorNH (scheme II): the reverse.
enum class SchemeOrder { Baseline, PostNH, PriorNH };

using NhParams = std::variant<std::monostate, PtParams, GeneralParams>;

struct SchemeConfig {
  InputParams input;
  DampingRate eta;
  NhParams nh;
  SchemeOrder order = SchemeOrder::Baseline;

  // theta = phi = pi/2 with the PT Hamiltonian indexed by (alpha, tau).
  static SchemeConfig at_optimal_input(SchemeOrder order, double eta, double alpha, double tau);
};

struct SchemeOutput {
  BlochVectord bloch;
  double qfi_theta = 0.0;
  double qfi_phi = 0.0;
  double success_prob = 1.0;
  double delta_f = 0.0;
  double baseline_f = 0.0;  // 1 - eta^2
  double gamma = 0.0;       // 1 + Delta^2 (cos theta - 1)
};

enum class Parameter { Theta, Phi };

// Input state with the estimated angles encoded:
//   cos(theta/2)|g> + e^{-i phi} sin(theta/2)|e>.
// The phase enters with this orientation, i.e. through phase_gate(-phi);
// that is the orientation under which the closed-form Bloch components hold.
QubitStated encode_input(double theta, double phi);

// The non-Hermitian propagator of a config (identity for Baseline).
CMat2d nh_propagator(const SchemeConfig& cfg);

// Renormalised output state at arbitrary (theta, phi), with the
// pre-normalisation trace. Angles are not range-checked.
EvolvedState output_state(const SchemeConfig& cfg, double theta, double phi);

// Output Bloch vector and its exact derivative with respect to one input
// angle, propagated analytically through every (linear) stage and the
// renormalisation. g = sqrt(1 - |r|^2) = 2 sqrt(det rho) is carried
// separately, computed from Kraus-vector determinants rather than from r.
struct BlochJet {
  BlochVectord r;
  BlochVectord dr;
  double g = 0.0;
  double dg = 0.0;
};
BlochJet output_jet(const SchemeConfig& cfg, Parameter wrt, double theta, double phi);

// QFI from output_jet, |dr|^2 + (dg)^2; no finite-difference noise and no
// pure/mixed branch. Used wherever QFI itself gets differentiated.
double exact_qfi(const SchemeConfig& cfg, Parameter wrt, double theta, double phi);

// Finite-difference step of run_pipeline. Closer to the 5-point stencil's
// roundoff optimum than the generic 1e-5.
inline constexpr double kPipelineStep = 1e-4;

// Full pipeline; QFIs via 5-point finite differences (h = kPipelineStep),
// see qfi_numeric.
SchemeOutput run_pipeline(const SchemeConfig& cfg);

// Scheme QFI (with respect to theta) minus 1 - eta^2.
double delta_f(const SchemeConfig& cfg);

// Checked closed forms. They require a PT-parametrised config with
// |alpha| < pi/2 and the matching scheme order.
BlochVectord bloch_scheme1(const SchemeConfig& cfg);
BlochVectord bloch_scheme2(const SchemeConfig& cfg);

struct ClosedFormQfi {
  double f_theta = 0.0;
  double f_phi = 0.0;
};
ClosedFormQfi closed_form_f_scheme1_full(const SchemeConfig& cfg);
double closed_form_f_scheme1_optimal(double eta, double alpha, double tau);
// Throws DenominatorVanishes when |1 + cos(2 tau) sin(alpha)| <= 1e-9.
double closed_form_f_scheme2(double eta, double alpha, double tau);
double success_prob_scheme1(double eta, double alpha, double tau);
// General-input variant: the normalisation of the scheme I Bloch components,
// which reduces to the above at theta = phi = pi/2.
double success_prob_scheme1(double eta, double alpha, double tau, double theta, double phi);
double success_prob_scheme2(double alpha, double tau);

// Throws PtBroken / ExceptionalPoint unless |alpha| < pi/2.
void require_pt_regime(double alpha);

}  // namespace nhqfi
