#include "nhqfi/nonhermitian.hpp"

#include <numbers>

namespace nhqfi {

namespace {
constexpr double kExceptionalTol = 1e-12;
constexpr double kNormFloor = 1e-12;
}  // namespace

bool PtParams::pt_unbroken() const { return std::abs(alpha) <= std::numbers::pi / 2.0; }

PtParams PtParams::from_tau(double alpha, double tau) {
  const double c = std::cos(alpha);
  if (std::abs(c) < kExceptionalTol)
    throw Error(ErrorCode::ExceptionalPoint, "cos(alpha) vanishes; tau does not fix t");
  return PtParams{1.0, alpha, tau / c};
}

std::complex<double> GeneralParams::omega() const {
  const double sa = std::sin(alpha);
  return std::sqrt(std::complex<double>(s * s - g_r * g_r * sa * sa, 0.0));
}

CMat2d pt_hamiltonian(const PtParams& p) {
  const std::complex<double> i(0, 1);
  const double sa = std::sin(p.alpha);
  CMat2d h;
  h << i * sa, 1.0, 1.0, -i * sa;
  return p.s * h;
}

CMat2d pt_evolution(const PtParams& p) {
  const double c = std::cos(p.alpha);
  if (std::abs(c) < kExceptionalTol)
    throw Error(ErrorCode::ExceptionalPoint, "U(t) diverges at cos(alpha) = 0");
  const std::complex<double> i(0, 1);
  const double tau = p.tau();
  CMat2d u;
  u << std::cos(tau - p.alpha), -i * std::sin(tau), -i * std::sin(tau), std::cos(tau + p.alpha);
  return u / c;
}

CMat2d general_hamiltonian(const GeneralParams& p) {
  CMat2d h;
  h << std::polar(p.g_r, p.alpha) + p.delta, p.s, p.s, std::polar(p.g_r, -p.alpha) - p.delta;
  return h;
}

CMat2d general_evolution(const GeneralParams& p) { return expm2(general_hamiltonian(p), p.t); }

EvolvedState evolve_renormalized(const CMat2d& u, const QubitStated& state) {
  const CMat2d out = u * state.rho() * u.adjoint();
  const double tr = out.trace().real();
  if (!(tr > kNormFloor))
    throw Error(ErrorCode::VanishingNorm, "evolved operator has vanishing trace");
  return EvolvedState{QubitStated::assume_valid(out / tr), tr};
}

}  // namespace nhqfi
