#pragma once

#include "nhqfi/qmat.hpp"

namespace nhqfi {

// H = s [[i sin(alpha), 1], [1, -i sin(alpha)]], evolved for time t.
struct PtParams {
  double s = 1.0;
  double alpha = 0.0;
  double t = 0.0;

  double tau() const { return s * t * std::cos(alpha); }
  // Real spectrum +-s cos(alpha) iff |alpha| <= pi/2.
  bool pt_unbroken() const;

  // Parameters with s = 1 and t = tau / cos(alpha), which is how the closed
  // forms are indexed. Throws ExceptionalPoint when cos(alpha) vanishes.
  static PtParams from_tau(double alpha, double tau);
};

// H' = [[g_r e^{i alpha} + delta, s], [s, g_r e^{-i alpha} - delta]].
struct GeneralParams {
  double g_r = 0.0;
  double s = 1.0;
  double alpha = 0.0;
  double delta = 0.0;
  double t = 0.0;

  // Principal sqrt(s^2 - g_r^2 sin^2(alpha)).
  std::complex<double> omega() const;
};

struct EvolvedState {
  QubitStated state;
  // Tr(U rho U^dagger) before renormalisation; may exceed 1.
  double success_prob = 1.0;
};

CMat2d pt_hamiltonian(const PtParams& p);

// Closed-form U(t) = (1/cos a) [[cos(tau - a), -i sin tau], [-i sin tau, cos(tau + a)]].
CMat2d pt_evolution(const PtParams& p);

CMat2d general_hamiltonian(const GeneralParams& p);

// exp(-i H' t) through the exact 2x2 exponential.
CMat2d general_evolution(const GeneralParams& p);

// U rho U^dagger / Tr(U rho U^dagger); throws VanishingNorm when the trace
// drops below 1e-12.
EvolvedState evolve_renormalized(const CMat2d& u, const QubitStated& state);

}  // namespace nhqfi
