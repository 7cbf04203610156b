#include "nhqfi/qfi.hpp"

#include <array>

namespace nhqfi {

namespace {

constexpr double kIllConditionedLow = 1e-12;
constexpr double kIllConditionedHigh = 1e-8;
constexpr double kIllConditionedTerm = 1e6;
constexpr double kVanishingEigenvalue = 1e-10;
constexpr double kVanishingDerivative = 1e-7;

// Eigenpairs at the stencil points, with each eigenvector's phase aligned to
// its counterpart at x0 so the finite differences see a smooth gauge.
struct SpectralStencil {
  Eigen::Vector2d values;
  Eigen::Vector2d dvalues;
  CMat2d vectors;
  CMat2d dvectors;
};

SpectralStencil spectral_stencil(const ParamCurve& curve) {
  const auto at = [&](double x) { return eig2_hermitian<double>(curve.state(x).rho()); };
  const auto centre = at(curve.x0);
  const std::array<double, 4> offsets{2.0, 1.0, -1.0, -2.0};
  const std::array<double, 4> weights{-1.0, 8.0, -8.0, 1.0};

  SpectralStencil out;
  out.values = centre.values;
  out.vectors = centre.vectors;
  out.dvalues.setZero();
  out.dvectors.setZero();
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    const auto e = at(curve.x0 + offsets[k] * curve.h);
    out.dvalues += weights[k] * e.values;
    for (int n = 0; n < 2; ++n) {
      CVec2d v = e.vectors.col(n);
      const std::complex<double> overlap = centre.vectors.col(n).dot(v);
      if (std::abs(overlap) > 0.0) v *= std::conj(overlap) / std::abs(overlap);
      out.dvectors.col(n) += weights[k] * v;
    }
  }
  out.dvalues /= 12.0 * curve.h;
  out.dvectors /= 12.0 * curve.h;
  return out;
}

double pure_state_qfi(const CVec2d& psi, const CVec2d& dpsi) {
  const double norm2 = dpsi.squaredNorm();
  const double overlap2 = std::norm(psi.dot(dpsi));
  return 4.0 * (norm2 - overlap2);
}

}  // namespace

QfiValue qfi_bloch_tangent(const BlochVectord& r, const BlochVectord& dr) {
  const double speed2 = dr.squaredNorm();
  const double gap = 1.0 - r.squaredNorm();
  if (r.norm() < kPureThreshold) {
    const double radial = r.dot(dr);
    return QfiValue{speed2 + radial * radial / gap, QfiMethod::Bloch, QfiBranch::Mixed};
  }
  if (gap > kIllConditionedLow && gap < kIllConditionedHigh) {
    const double radial = r.dot(dr);
    if (radial * radial / gap > kIllConditionedTerm)
      throw Error(ErrorCode::NearBoundaryIllConditioned,
                  "state is within 1e-8 of pure but the mixed correction is large");
  }
  return QfiValue{speed2, QfiMethod::Bloch, QfiBranch::Pure};
}

QfiValue qfi_bloch(const ParamCurve& curve) {
  const auto bloch_at = [&](double x) { return to_bloch(curve.state(x)); };
  const BlochVectord r = bloch_at(curve.x0);
  const BlochVectord dr = central_difference5<BlochVectord>(bloch_at, curve.x0, curve.h);
  return qfi_bloch_tangent(r, dr);
}

QfiValue qfi_numeric(const ParamCurve& curve) {
  const auto bloch_at = [&](double x) { return to_bloch(curve.state(x)); };
  const BlochVectord r = bloch_at(curve.x0);
  const BlochVectord dr = central_difference5<BlochVectord>(bloch_at, curve.x0, curve.h);
  const double gap = 1.0 - r.squaredNorm();
  if (gap <= kIllConditionedLow) return QfiValue{dr.squaredNorm(), QfiMethod::Bloch, QfiBranch::Pure};
  const double radial = r.dot(dr);
  return QfiValue{dr.squaredNorm() + radial * radial / gap, QfiMethod::Bloch, QfiBranch::Mixed};
}

QfiValue qfi_spectral(const ParamCurve& curve) {
  const SpectralStencil s = spectral_stencil(curve);

  double classical = 0.0;
  for (int n = 0; n < 2; ++n) {
    if (s.values(n) >= kVanishingEigenvalue) {
      classical += s.dvalues(n) * s.dvalues(n) / s.values(n);
    } else if (std::abs(s.dvalues(n)) >= kVanishingDerivative) {
      throw Error(ErrorCode::RankDeficientDerivative,
                  "a vanishing eigenvalue has a non-vanishing derivative");
    }
  }

  double weighted_pure = 0.0;
  for (int n = 0; n < 2; ++n)
    weighted_pure += s.values(n) * pure_state_qfi(s.vectors.col(n), s.dvectors.col(n));

  double coherence = 0.0;
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      if (n == m) continue;
      const double denom = s.values(n) + s.values(m);
      if (std::abs(denom) < 1e-12) continue;
      coherence += 8.0 * s.values(n) * s.values(m) / denom *
                   std::norm(s.vectors.col(n).dot(s.dvectors.col(m)));
    }
  }

  const QfiBranch branch = s.values(1) < kVanishingEigenvalue ? QfiBranch::Pure : QfiBranch::Mixed;
  return QfiValue{classical + weighted_pure - coherence, QfiMethod::Spectral, branch};
}

QfiValue qfi_pure(const ParamCurve& curve) {
  if (to_bloch(curve.state(curve.x0)).norm() < kPureThreshold)
    throw Error(ErrorCode::NotPure, "qfi_pure needs a pure-state curve");
  const SpectralStencil s = spectral_stencil(curve);
  return QfiValue{pure_state_qfi(s.vectors.col(0), s.dvectors.col(0)), QfiMethod::Spectral,
                  QfiBranch::Pure};
}

double cramer_rao_bound(const QfiValue& f, int n_experiments) {
  if (n_experiments < 1)
    throw Error(ErrorCode::InvalidArgument, "number of experiments must be >= 1");
  if (f.value <= 1e-15) throw Error(ErrorCode::ZeroInformation, "QFI is zero");
  return 1.0 / std::sqrt(static_cast<double>(n_experiments) * f.value);
}

}  // namespace nhqfi
