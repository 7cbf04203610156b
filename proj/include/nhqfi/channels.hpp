#pragma once

#include <vector>

#include "nhqfi/qmat.hpp"

namespace nhqfi {

// Input-state angles: theta in [0, pi], phi in [0, 2 pi).
struct InputParams {
  double theta = 0.0;
  double phi = 0.0;

  void validate() const;
};

// Amplitude-damping strength eta in [0, 1].
class DampingRate {
 public:
  DampingRate() = default;
  explicit DampingRate(double eta);

  double eta() const { return eta_; }
  // sqrt(1 - eta^2)
  double delta() const;

 private:
  double eta_ = 0.0;
};

struct ChannelSpec {
  std::vector<CMat2d> kraus;

  // max |sum_i E_i^dagger E_i - I|
  double completeness_error() const;
};

// cos(theta/2)|g> + sin(theta/2)|e>
QubitStated prepare_input(const InputParams& p);

// Conjugation by U_phi = |g><g| + e^{i phi}|e><e|.
QubitStated phase_gate(const QubitStated& state, double phi);
CMat2d phase_gate_matrix(double phi);

// E1 = |g><g| + sqrt(1 - eta^2)|e><e|, E2 = eta |g><e|.
ChannelSpec amplitude_damping(const DampingRate& eta);

// sum_i E_i rho E_i^dagger; throws IncompleteKraus if the family is not
// trace preserving to 1e-12.
QubitStated apply_channel(const ChannelSpec& ch, const QubitStated& state);

// Same Kraus sum on an arbitrary operator, without the completeness check.
// Used to push unnormalised operators and derivatives through a channel.
CMat2d apply_kraus(const ChannelSpec& ch, const CMat2d& op);

}  // namespace nhqfi
