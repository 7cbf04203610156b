#pragma once

// Closed-form Bloch components, QFIs and success probabilities for the
// post-channel (scheme I) and pre-channel (scheme II) non-Hermitian
// processes. Each function is a literal transcription of the published
// expression so that a disagreement with the numerical pipeline points at
// the expression itself. They are templated on the scalar type and carry no
// domain checks; see schemes.hpp for the checked entry points.
//
// Arguments: theta, phi input angles; eta damping rate; alpha
// non-Hermiticity angle; tau = s t cos(alpha).

#include <cmath>

#include "nhqfi/qmat.hpp"

namespace nhqfi::closed_form {

template <typename T>
T delta_of(T eta) {
  using std::sqrt;
  return sqrt(T(1) - eta * eta);
}

// Gamma = 1 + Delta^2 (cos(theta) - 1)
template <typename T>
T gamma_of(T theta, T eta) {
  using std::cos;
  const T d = delta_of(eta);
  return T(1) + d * d * (cos(theta) - T(1));
}

template <typename T>
T scheme1_denominator(T theta, T phi, T eta, T alpha, T tau) {
  using std::cos;
  using std::sin;
  const T d = delta_of(eta), g = gamma_of(theta, eta);
  const T sa = sin(alpha), st = sin(tau);
  return T(2) + g * sin(T(2) * tau) * sin(T(2) * alpha) -
         T(2) * sa * (cos(T(2) * tau) * sa + T(2) * d * st * st * sin(theta) * sin(phi));
}

template <typename T>
BlochVector<T> bloch_scheme1(T theta, T phi, T eta, T alpha, T tau) {
  using std::cos;
  using std::sin;
  const T d = delta_of(eta), g = gamma_of(theta, eta);
  const T ca = cos(alpha), sa = sin(alpha), st = sin(tau), ct = cos(tau);
  const T sth = sin(theta), sph = sin(phi);
  const T den = scheme1_denominator(theta, phi, eta, alpha, tau);

  const T rx = T(2) * d * ca * ca * cos(phi) * sth;
  const T ry = st * st * (T(2) * d * sth * sph - T(4) * sa) +
               d * sth * sph * (T(1) - T(2) * ct * ct + sa * sa) -
               T(2) * g * ca * sin(T(2) * tau) - d * ca * ca * sth * sph;
  const T rz = T(2) * g * cos(T(2) * tau) * ca * ca +
               sin(T(2) * tau) * (sin(T(2) * alpha) - T(2) * d * ca * sth * sph);
  return BlochVector<T>(rx / den, ry / den, rz / den);
}

template <typename T>
T f_theta_scheme1(T theta, T phi, T eta, T alpha, T tau) {
  using std::cos;
  using std::pow;
  using std::sin;
  const T d = delta_of(eta);
  const T ca = cos(alpha), sa = sin(alpha), s2a = sin(T(2) * alpha), c2a = cos(T(2) * alpha);
  const T st = sin(tau), ct = cos(tau), s2t = sin(T(2) * tau), c2t = cos(T(2) * tau);
  const T sth = sin(theta), cth = cos(theta), sph = sin(phi), cph = cos(phi);
  const T e2 = eta * eta, d2 = d * d;
  const T n = pow(scheme1_denominator(theta, phi, eta, alpha, tau), 4);

  const T a = cth * (T(2) - T(2) * c2t * sa * sa) + (d2 + e2 * cth) * s2t * s2a;
  const T b = d * c2t * ca * cth * sph + d * s2t * (d2 * sa * sph + e2 * cth * sa * sph - d * sth);
  const T c = (T(2) - c2t + cos(T(2) * (tau - alpha))) * cos(theta / T(2)) -
              T(4) * d * st * st * sa * sph * sin(theta / T(2));
  const T e = d * sph * s2a * (ct * ct + e2 * ct * ct * cth + e2 + e2 * st * st) -
              T(2) * d * sph * s2t * ca * ca * cth + d2 * ca * (T(1) - T(2) * c2t - c2a) * sth +
              d * s2a * sph * (d2 * ct * ct - e2 * cth * (st * st + T(1)) - T(2));
  const T sh2 = sin(theta / T(2)) * sin(theta / T(2));

  const T bracket = d2 * ca * ca * cph * cph * a * a + T(4) * pow(ca, 4) * b * b +
                    T(4) * e2 * d2 * ca * ca * sh2 * c * c + e * e;
  return T(4) * ca * ca / n * bracket;
}

template <typename T>
T f_phi_scheme1(T theta, T phi, T eta, T alpha, T tau) {
  using std::cos;
  using std::pow;
  using std::sin;
  const T d = delta_of(eta), g = gamma_of(theta, eta);
  const T ca = cos(alpha), sa = sin(alpha), s2a = sin(T(2) * alpha);
  const T st = sin(tau), ct = cos(tau), s2t = sin(T(2) * tau), c2t = cos(T(2) * tau);
  const T sth = sin(theta), sph = sin(phi), cph = cos(phi);
  const T ch = cos(theta / T(2)), sh = sin(theta / T(2));
  const T e2 = eta * eta, d2 = d * d;
  const T n = pow(scheme1_denominator(theta, phi, eta, alpha, tau), 4);

  const T t1 = T(256) * e2 * d2 * ch * ch * cph * cph * pow(st, 4) * sa * sa * pow(sh, 6);
  const T t2 = T(16) * d2 * cph * cph * st * st * sth * sth * pow(ct * ca + g * st * sa, 2);
  const T t3 = T(4) * d2 * ca * ca * cph * cph * sth * sth * pow(c2t * ca + g * s2t * sa, 2);
  const T t4 = sth * sth *
               pow(d * (T(2) - T(2) * c2t * sa * sa + g * s2t * s2a * sph) -
                       T(4) * d2 * st * st * sa * sth,
                   2);
  return T(4) * pow(ca, 4) / n * (t1 + t2 + t3 + t4);
}

// Scheme I QFI at theta = phi = pi/2.
template <typename T>
T f_scheme1_optimal(T eta, T alpha, T tau) {
  using std::cos;
  using std::pow;
  using std::sin;
  const T d = delta_of(eta), e2 = eta * eta;
  const T sa = sin(alpha), s2a = sin(T(2) * alpha), st = sin(tau);
  const T s2t = sin(T(2) * tau), c2t = cos(T(2) * tau);
  const T num = T(4) * pow(cos(alpha), 4) *
                pow(d * (T(2) - T(2) * c2t * sa * sa + e2 * s2t * s2a) - T(4) * d * d * st * st * sa, 2);
  const T den = pow(T(2) - T(2) * sa * (T(2) * d * st * st + c2t * sa) + e2 * s2t * s2a, 4);
  return num / den;
}

template <typename T>
T scheme2_denominator(T theta, T phi, T alpha, T tau) {
  using std::cos;
  using std::sin;
  using std::tan;
  const T sec = T(1) / cos(alpha), ta = tan(alpha), st = sin(tau);
  return cos(T(2) * tau) + cos(theta) * sin(T(2) * tau) * ta +
         T(2) * sec * st * st * (sec - sin(theta) * sin(phi) * ta);
}

template <typename T>
BlochVector<T> bloch_scheme2(T theta, T phi, T eta, T alpha, T tau) {
  using std::cos;
  using std::sin;
  const T d = delta_of(eta);
  const T sec = T(1) / cos(alpha), st = sin(tau);
  const T sth = sin(theta), sph = sin(phi);
  const T den = scheme2_denominator(theta, phi, alpha, tau);
  const T ch = cos(theta / T(2)), sh = sin(theta / T(2)), cta = cos(tau + alpha);

  const T rx = d * cos(phi) * sth / den;
  const T ry = -(d * sec * sec *
                 (T(2) * cos(alpha) * cos(theta) * sin(T(2) * tau) + T(4) * st * st * sin(alpha) +
                  (T(2) * cos(T(2) * tau) + cos(T(2) * alpha) - T(1)) * sth * sph)) /
               (T(2) * den);
  const T rz = T(1) - T(2) * d * d * sec * sec *
                          (ch * ch * st * st + cta * cta * sh * sh + cta * st * sth * sph) / den;
  return BlochVector<T>(rx, ry, rz);
}

// Scheme II QFI at theta = phi = pi/2.
template <typename T>
T f_scheme2(T eta, T alpha, T tau) {
  using std::cos;
  using std::sin;
  const T den = T(1) + cos(T(2) * tau) * sin(alpha);
  return (T(1) - eta * eta) * (T(3) - cos(T(2) * alpha) + T(4) * sin(alpha)) / (T(2) * den * den);
}

// Scheme I success probability at theta = phi = pi/2.
template <typename T>
T success_prob_scheme1(T eta, T alpha, T tau) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  using std::tan;
  const T sec = T(1) / cos(alpha), sa = sin(alpha), st = sin(tau);
  return sec * (sec + eta * eta * sin(T(2) * tau) * sa -
                tan(alpha) * (T(2) * sqrt(T(1) - eta * eta) * st * st + cos(T(2) * tau) * sa));
}

// Scheme II success probability at theta = phi = pi/2 (no eta dependence).
template <typename T>
T success_prob_scheme2(T alpha, T tau) {
  using std::cos;
  using std::sin;
  using std::tan;
  const T sec = T(1) / cos(alpha), st = sin(tau);
  return cos(T(2) * tau) + T(2) * sec * st * st * (sec - tan(alpha));
}

}  // namespace nhqfi::closed_form
