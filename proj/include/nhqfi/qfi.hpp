#pragma once

#include <functional>

#include "nhqfi/qmat.hpp"

namespace nhqfi {

// A one-parameter family of states x -> rho(x), evaluated around x0. The
// callable must be re-entrant and return valid states on [x0 - 2h, x0 + 2h].
struct ParamCurve {
  std::function<QubitStated(double)> state;
  double x0 = 0.0;
  double h = 1e-5;
};

enum class QfiMethod { Bloch, Spectral };
enum class QfiBranch { Mixed, Pure };

struct QfiValue {
  double value = 0.0;
  QfiMethod method = QfiMethod::Bloch;
  QfiBranch branch = QfiBranch::Mixed;
};

// |r| at or above this is treated as pure in the Bloch formula.
inline constexpr double kPureThreshold = 1.0 - 1e-8;

// Bloch-vector QFI from a point and its tangent:
//   |dr|^2 + (r . dr)^2 / (1 - |r|^2)  for |r| < 1 - 1e-8,
//   |dr|^2                            otherwise.
// Throws NearBoundaryIllConditioned when the state is nearly (but not
// numerically) pure and the dropped mixed term would exceed 1e6.
QfiValue qfi_bloch_tangent(const BlochVectord& r, const BlochVectord& dr);

// Bloch formula with dr from a 5-point central difference.
QfiValue qfi_bloch(const ParamCurve& curve);

// Spectral-decomposition formula with finite-differenced eigenpairs.
QfiValue qfi_spectral(const ParamCurve& curve);

// Bloch formula on the same 5-point tangent as qfi_bloch, but with the pure
// branch only for 1 - |r|^2 <= 1e-12. Between that and |r| = 1 - 1e-8 the
// (r . dr)^2 / (1 - |r|^2) term is the small eigenvalue's classical Fisher
// information and can be 1e-3 of the total; the tangent error (~1e-11)
// keeps it accurate to ~1e-8 there, where qfi_bloch drops it and
// qfi_spectral drops eigenvalues below 1e-10.
QfiValue qfi_numeric(const ParamCurve& curve);

// 4 (<d psi|d psi> - |<psi|d psi>|^2) on a curve of pure states.
QfiValue qfi_pure(const ParamCurve& curve);

// 1 / sqrt(n F)
double cramer_rao_bound(const QfiValue& f, int n_experiments);

// 5-point central difference weights shared by the evaluators.
template <typename T, typename F>
T central_difference5(F&& f, double x0, double h) {
  const T fp2 = f(x0 + 2 * h), fp1 = f(x0 + h), fm1 = f(x0 - h), fm2 = f(x0 - 2 * h);
  return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
}

}  // namespace nhqfi
