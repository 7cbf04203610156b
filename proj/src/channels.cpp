#include "nhqfi/channels.hpp"

#include <numbers>
#include <string>

namespace nhqfi {

void InputParams::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
    throw Error(ErrorCode::InvalidArgument, "phi must lie in [0, 2 pi)");
}

DampingRate::DampingRate(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "eta must lie in [0, 1], got " + std::to_string(eta));
}

double DampingRate::delta() const { return std::sqrt(1.0 - eta_ * eta_); }

double ChannelSpec::completeness_error() const {
  CMat2d sum = CMat2d::Zero();
  for (const auto& e : kraus) sum += e.adjoint() * e;
  return max_abs(CMat2d(sum - CMat2d::Identity()));
}

QubitStated prepare_input(const InputParams& p) {
  CVec2d psi;
  psi << std::cos(p.theta / 2.0), std::sin(p.theta / 2.0);
  return QubitStated::from_pure(psi);
}

CMat2d phase_gate_matrix(double phi) {
  CMat2d u = CMat2d::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, phi);
  return u;
}

QubitStated phase_gate(const QubitStated& state, double phi) {
  const CMat2d u = phase_gate_matrix(phi);
  return QubitStated::assume_valid(u * state.rho() * u.adjoint());
}

ChannelSpec amplitude_damping(const DampingRate& eta) {
  CMat2d e1 = CMat2d::Zero();
  e1(0, 0) = 1.0;
  e1(1, 1) = eta.delta();
  CMat2d e2 = CMat2d::Zero();
  e2(0, 1) = eta.eta();
  return ChannelSpec{{e1, e2}};
}

CMat2d apply_kraus(const ChannelSpec& ch, const CMat2d& op) {
  CMat2d out = CMat2d::Zero();
  for (const auto& e : ch.kraus) out += e * op * e.adjoint();
  return out;
}

QubitStated apply_channel(const ChannelSpec& ch, const QubitStated& state) {
  if (ch.completeness_error() > 1e-12)
    throw Error(ErrorCode::IncompleteKraus, "Kraus operators do not sum to identity");
  return QubitStated::assume_valid(apply_kraus(ch, state.rho()));
}

}  // namespace nhqfi
