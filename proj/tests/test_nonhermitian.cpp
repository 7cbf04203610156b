#include "nhqfi/nonhermitian.hpp"

#include "nhqfi/channels.hpp"
#include "support.hpp"

using namespace nhqfi;
using namespace nhqfi::test;

namespace {

double scaled_diff(const CMat2d& a, const CMat2d& b) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::max(1.0, std::abs(b(i, j))));
  return worst;
}

}  // namespace

TEST_CASE("pt_hamiltonian examples") {
  const PtParams herm{1.7, 0.0, 0.0};
  CHECK(max_diff(pt_hamiltonian(herm), CMat2d(1.7 * pauli_x<double>())) == 0.0);

  Draws d(31);
  for (int k = 0; k < 50; ++k) {
    const PtParams p{d.uniform(0.2, 3), d.uniform(-kPi / 2, kPi / 2), 0.0};
    const CMat2d h = pt_hamiltonian(p);
    // traceless, so the eigenvalues are +-sqrt(-det h)
    const std::complex<double> lambda = std::sqrt(-h.determinant());
    CHECK(near(std::abs(lambda.imag()), 0.0, 1e-12));
    CHECK(near(std::abs(lambda.real()), p.s * std::cos(p.alpha), 1e-12));
  }

  const CMat2d ep = pt_hamiltonian({1.0, kPi / 2, 0.0});
  CHECK(std::abs(ep.determinant()) < 1e-15);
  CHECK(std::abs(ep.trace()) < 1e-15);
}

TEST_CASE("PT regime flag and tau") {
  CHECK(PtParams{1, kPi / 2, 1}.pt_unbroken());
  CHECK_FALSE(PtParams{1, kPi / 2 + 1e-9, 1}.pt_unbroken());
  CHECK(PtParams{2, kPi / 3, 1.5}.tau() == doctest::Approx(1.5));
  const PtParams p = PtParams::from_tau(kPi / 5, 2.5);
  CHECK(p.s == 1.0);
  CHECK(p.tau() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK_THROWS_AS(PtParams::from_tau(kPi / 2, 1.0), Error);
}

TEST_CASE("pt_evolution examples") {
  const CMat2d u0 = pt_evolution({1.3, 0.7, 0.0});
  CHECK(max_diff(u0, CMat2d(CMat2d::Identity())) < 1e-15);

  const double tau = 0.9;
  CMat2d rot;
  rot << std::cos(tau), std::complex<double>(0, -std::sin(tau)), std::complex<double>(0, -std::sin(tau)),
      std::cos(tau);
  CHECK(max_diff(pt_evolution({1.0, 0.0, tau}), rot) < 1e-15);

  try {
    pt_evolution({1.0, kPi / 2, 1.0});
    FAIL("expected ExceptionalPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExceptionalPoint);
  }
}

TEST_CASE("pt_evolution equals the exponential of pt_hamiltonian") {
  Draws d(32);
  for (int k = 0; k < 100; ++k) {
    const PtParams p{d.uniform(0.2, 3), d.uniform(-0.49 * kPi, 0.49 * kPi), d.uniform(0, 10)};
    CHECK(scaled_diff(pt_evolution(p), expm2(pt_hamiltonian(p), p.t)) <= 1e-12);
  }
}

TEST_CASE("general_evolution examples") {
  const GeneralParams herm{0.0, 1.2, 0.4, 0.0, 0.8};
  const CMat2d u = general_evolution(herm);
  CHECK(max_diff(u, expm2(CMat2d(1.2 * pauli_x<double>()), 0.8)) < 1e-15);
  CHECK(max_diff(CMat2d(u * u.adjoint()), CMat2d(CMat2d::Identity())) < 1e-14);

  CHECK(GeneralParams{2.0, 1.0, kPi / 2, 0.0, 0.0}.omega().imag() > 0.0);
  CHECK(GeneralParams{0.5, 1.0, kPi / 2, 0.0, 0.0}.omega().imag() == 0.0);
}

TEST_CASE("general evolution with g_r = s reproduces the PT evolution") {
  Draws d(33);
  for (int k = 0; k < 100; ++k) {
    const double s = d.uniform(0.2, 3), alpha = d.uniform(-0.49 * kPi, 0.49 * kPi), t = d.uniform(0, 10);
    const QubitStated in = from_bloch(d.bloch());
    const EvolvedState pt = evolve_renormalized(pt_evolution({s, alpha, t}), in);
    const EvolvedState gen = evolve_renormalized(general_evolution({s, s, alpha, 0.0, t}), in);
    CHECK(max_diff(gen.state.rho(), pt.state.rho()) < 1e-11);
  }
}

TEST_CASE("unnormalised trace stays bounded when omega is real") {
  Draws d(34);
  for (int k = 0; k < 20; ++k) {
    const GeneralParams base{d.uniform(0, 1), d.uniform(1.1, 2), d.uniform(-1.4, 1.4), 0.0, 0.0};
    REQUIRE(base.omega().imag() == 0.0);
    const QubitStated in = from_bloch(d.bloch(1.0, 1.0));
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      GeneralParams p = base;
      p.t = 0.05 * i;
      const CMat2d u = general_evolution(p);
      worst = std::max(worst, (u * in.rho() * u.adjoint()).trace().real());
    }
    // growth is at most the oscillation amplitude, not exponential
    CHECK(worst < 1e3);
  }
}

TEST_CASE("evolve_renormalized examples") {
  Draws d(35);
  const QubitStated in = from_bloch(d.bloch());
  const CMat2d u = expm2(d.hermitian(), 1.3);
  const EvolvedState out = evolve_renormalized(u, in);
  CHECK(near(out.success_prob, 1.0, 1e-14));
  CHECK(max_diff(out.state.rho(), CMat2d(u * in.rho() * u.adjoint())) < 1e-14);

  const EvolvedState same = evolve_renormalized(pt_evolution({1.0, 0.8, 0.0}), in);
  CHECK(same.success_prob == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(max_diff(same.state.rho(), in.rho()) < 1e-15);

  CMat2d kill = CMat2d::Zero();
  kill(1, 1) = 1;
  try {
    evolve_renormalized(kill, prepare_input({0.0, 0.0}));
    FAIL("expected VanishingNorm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VanishingNorm);
  }
}

TEST_CASE("renormalised evolution properties") {
  Draws d(36);
  for (int k = 0; k < 200; ++k) {
    const PtParams p{d.uniform(0.2, 3), d.uniform(-0.49 * kPi, 0.49 * kPi), d.uniform(0, 10)};
    const QubitStated pure = from_bloch(d.bloch(1.0, 1.0));
    CHECK(near(to_bloch(evolve_renormalized(pt_evolution(p), pure).state).norm(), 1.0, 1e-10));

    const PtParams herm{p.s, 0.0, p.t};
    const QubitStated mixed = from_bloch(d.bloch());
    CHECK(near(evolve_renormalized(pt_evolution(herm), mixed).success_prob, 1.0, 1e-13));

    const CMat2d h = d.matrix();
    const double c = d.uniform(-5, 5), t = d.uniform(0, 2);
    const CMat2d shifted = h + c * CMat2d::Identity();
    CHECK(max_diff(evolve_renormalized(expm2(shifted, t), mixed).state.rho(),
                   evolve_renormalized(expm2(h, t), mixed).state.rho()) < 1e-11);
  }
}
