#pragma once

// 2x2 complex arithmetic for single-qubit work: density operators, Bloch
// vectors, exact small-matrix exponentials and Hermitian eigensystems.
//
// Conventions (used everywhere in the library):
//   basis {|g>, |e>} with |g> at index 0,
//   sigma_z = diag(1, -1), so |g><g| has Bloch vector (0, 0, +1),
//   sigma_y = [[0, -i], [i, 0]] (standard), so rho_01 = (r_x - i r_y) / 2.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "nhqfi/errors.hpp"

namespace nhqfi {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using CMat2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using CVec2 = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar>
using BlochVector = Eigen::Matrix<Scalar, 3, 1>;

using CMat2d = CMat2<double>;
using CVec2d = CVec2<double>;
using BlochVectord = BlochVector<double>;

template <typename Scalar>
CMat2<Scalar> pauli_x() {
  CMat2<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar>
CMat2<Scalar> pauli_y() {
  const Complex<Scalar> i(0, 1);
  CMat2<Scalar> m;
  m << 0, -i, i, 0;
  return m;
}

template <typename Scalar>
CMat2<Scalar> pauli_z() {
  CMat2<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

// Largest entrywise modulus.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
CMat2<Scalar> hermitian_part(const CMat2<Scalar>& m) {
  return (m + m.adjoint()) / Scalar(2);
}

// Bloch components of any 2x2 matrix M = (Tr M / 2) I + (r . sigma) / 2, read
// from the Hermitian part. Linear in M, so it also maps d(rho) to d(r).
template <typename Scalar>
BlochVector<Scalar> bloch_components(const CMat2<Scalar>& m) {
  const Complex<Scalar> off = (m(0, 1) + std::conj(m(1, 0))) / Scalar(2);
  return BlochVector<Scalar>(Scalar(2) * off.real(), -Scalar(2) * off.imag(),
                             m(0, 0).real() - m(1, 1).real());
}

template <typename Scalar>
struct HermitianEigen {
  Eigen::Matrix<Scalar, 2, 1> values;  // descending
  CMat2<Scalar> vectors;               // column n pairs with values(n)
};

// Rotates the phase so the largest-magnitude component is real and >= 0.
template <typename Scalar>
CVec2<Scalar> fix_gauge(const CVec2<Scalar>& v) {
  const Eigen::Index k = std::abs(v(1)) > std::abs(v(0)) ? 1 : 0;
  const Scalar mag = std::abs(v(k));
  if (mag == Scalar(0)) return v;
  return v * (std::conj(v(k)) / mag);
}

template <typename Scalar>
HermitianEigen<Scalar> eig2_hermitian(const CMat2<Scalar>& m) {
  if (max_abs(CMat2<Scalar>(m - m.adjoint())) > Scalar(1e-10))
    throw Error(ErrorCode::NotHermitian, "eig2_hermitian: input is not Hermitian");

  const BlochVector<Scalar> v = bloch_components(m);
  const Scalar centre = (m(0, 0).real() + m(1, 1).real()) / Scalar(2);
  const Scalar radius = v.norm() / Scalar(2);

  HermitianEigen<Scalar> out;
  out.values << centre + radius, centre - radius;
  if (radius == Scalar(0)) {
    out.vectors.setIdentity();
    return out;
  }
  const BlochVector<Scalar> n = v.normalized();
  CVec2<Scalar> up;
  if (n.z() >= Scalar(0))
    up << Complex<Scalar>(1 + n.z(), 0), Complex<Scalar>(n.x(), n.y());
  else
    up << Complex<Scalar>(n.x(), -n.y()), Complex<Scalar>(1 - n.z(), 0);
  up.normalize();
  CVec2<Scalar> down;
  down << -std::conj(up(1)), std::conj(up(0));
  out.vectors.col(0) = fix_gauge<Scalar>(up);
  out.vectors.col(1) = fix_gauge<Scalar>(down);
  return out;
}

// Density operator of one qubit. Construct through from_matrix (validated)
// or from_pure; library operations that preserve validity by construction use
// assume_valid after re-Hermitising.
template <typename Scalar>
class QubitState {
 public:
  static constexpr double kTolerance = 1e-12;

  QubitState() { rho_ << 1, 0, 0, 0; }

  static QubitState from_matrix(const CMat2<Scalar>& rho) {
    if (max_abs(CMat2<Scalar>(rho - rho.adjoint())) > Scalar(kTolerance))
      throw Error(ErrorCode::NotAState, "density operator is not Hermitian");
    const Complex<Scalar> tr = rho.trace();
    if (std::abs(tr - Complex<Scalar>(1)) > Scalar(kTolerance))
      throw Error(ErrorCode::NotAState, "density operator trace differs from 1");
    const auto eig = eig2_hermitian<Scalar>(hermitian_part<Scalar>(rho));
    if (eig.values(1) < -Scalar(kTolerance))
      throw Error(ErrorCode::NotAState, "density operator has a negative eigenvalue");
    return QubitState(hermitian_part<Scalar>(rho));
  }

  static QubitState from_pure(const CVec2<Scalar>& psi) {
    const CVec2<Scalar> unit = psi.normalized();
    return QubitState(unit * unit.adjoint());
  }

  static QubitState assume_valid(const CMat2<Scalar>& rho) {
    return QubitState(hermitian_part<Scalar>(rho));
  }

  const CMat2<Scalar>& rho() const { return rho_; }

 private:
  explicit QubitState(const CMat2<Scalar>& rho) : rho_(rho) {}
  CMat2<Scalar> rho_;
};

using QubitStated = QubitState<double>;

template <typename Scalar>
BlochVector<Scalar> to_bloch(const QubitState<Scalar>& state) {
  return bloch_components<Scalar>(state.rho());
}

template <typename Scalar>
QubitState<Scalar> from_bloch(const BlochVector<Scalar>& r) {
  if (r.norm() > Scalar(1) + Scalar(1e-9))
    throw Error(ErrorCode::NotAState, "Bloch vector longer than 1");
  const Complex<Scalar> i(0, 1);
  CMat2<Scalar> rho;
  rho << Scalar(1) + r.z(), r.x() - i * r.y(), r.x() + i * r.y(), Scalar(1) - r.z();
  return QubitState<Scalar>::assume_valid(rho / Scalar(2));
}

// exp(-i h t) for any finite 2x2 h. Writes h = a0 I + m with m traceless, so
// m^2 = mu I and exp(-i h t) = e^{-i a0 t} (cos(lt) I - i sin(lt)/l m), l^2 = mu.
// Both cos(lt) and sin(lt)/l are even in l, so the sqrt branch is irrelevant;
// complex l (non-Hermitian, PT-broken input) goes through std::cos/std::sin.
template <typename Scalar>
CMat2<Scalar> expm2(const CMat2<Scalar>& h, Scalar t) {
  using C = Complex<Scalar>;
  const C i(0, 1);
  const C a0 = h.trace() / Scalar(2);
  const CMat2<Scalar> m = h - a0 * CMat2<Scalar>::Identity();
  const C mu = m(0, 0) * m(0, 0) + m(0, 1) * m(1, 0);
  const C lambda = std::sqrt(mu);
  const C lt = lambda * t;

  C cos_lt, sinc_t;  // cos(l t), sin(l t) / l
  if (std::abs(lt) < Scalar(1e-6)) {
    const C x2 = lt * lt;
    cos_lt = C(1) - x2 / Scalar(2) + x2 * x2 / Scalar(24);
    sinc_t = t * (C(1) - x2 / Scalar(6) + x2 * x2 / Scalar(120));
  } else {
    cos_lt = std::cos(lt);
    sinc_t = std::sin(lt) / lambda;
  }
  return std::exp(-i * a0 * t) * (cos_lt * CMat2<Scalar>::Identity() - i * sinc_t * m);
}

}  // namespace nhqfi
