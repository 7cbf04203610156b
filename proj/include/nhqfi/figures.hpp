#pragma once

#include "nhqfi/sweep.hpp"

namespace nhqfi {

// Figure data, ids 2..8. Every figure fixes theta = phi = pi/2 except
// figure 2, which varies phi.
//   2: tau in [0, 3.2], scheme I theta-QFI for phi in {0, pi/4, pi/2}
//      (eta = 0.2, alpha = pi/5); columns tau, phi_0, phi_pi_4, phi_pi_2
//   3: alpha in [0, 0.45 pi] x eta in [0, 0.99], scheme I, tau = 2.5
//   4: tau in [0, 3.2], scheme I for alpha in {-pi/5, 0, pi/5}, eta = 0.2;
//      columns tau, alpha_minus_pi_5, alpha_0, alpha_pi_5
//   5: tau in [0, pi] x eta, scheme I, alpha = pi/5
//   6: tau in [0, pi] x alpha in [0, 0.49 pi], scheme I, eta = 0.2, on the
//      optimizer's default 161 x 161 grid
//   7: as 3 for scheme II
//   8: as 5 for scheme II
// Surfaces 3, 5, 7, 8 carry the scheme value and f_baseline = 1 - eta^2.
// Throws InvalidArgument for other ids.
Table make_figure(int id, unsigned threads = 0);

inline constexpr int kFirstFigure = 2;
inline constexpr int kLastFigure = 8;

}  // namespace nhqfi
