#include "nhqfi/sweep.hpp"

#include <atomic>
#include <cstring>

#include "nhqfi/figures.hpp"
#include "support.hpp"

using namespace nhqfi;
using namespace nhqfi::test;

namespace {

bool bit_identical(const Table& a, const Table& b) {
  if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
      if (std::memcmp(&a.rows[i][j].value, &b.rows[i][j].value, sizeof(double)) != 0) return false;
      if (a.rows[i][j].error != b.rows[i][j].error) return false;
    }
  }
  return true;
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    if (t.columns[j] == name) return j;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("axis construction") {
  const Axis a = Axis::from_range(AxisName::Tau, 0.0, 1.0, 0.25);
  CHECK(a.values == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(Axis::from_range(AxisName::Tau, 0.0, 0.3, 0.1).values.size() == 4);
  CHECK(Axis::from_range(AxisName::Eta, 0.5, 0.5, 0.1).values.size() == 1);
  CHECK_THROWS_AS(Axis::from_range(AxisName::Tau, 0.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(Axis::from_range(AxisName::Tau, 0.0, 1.0, -0.1), Error);
  CHECK_THROWS_AS(Axis::from_range(AxisName::Tau, 1.0, 0.0, 0.1), Error);

  const Axis l = Axis::linspace(AxisName::Alpha, 0.0, 1.0, 11);
  REQUIRE(l.values.size() == 11);
  CHECK(l.values.front() == 0.0);
  CHECK(l.values.back() == 1.0);
  CHECK_THROWS_AS(Axis::linspace(AxisName::Alpha, 0.0, 1.0, 0), Error);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.axes = {Axis::linspace(AxisName::Tau, 0, 1, 3), Axis::linspace(AxisName::Tau, 0, 1, 3)};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.axes = {Axis::linspace(AxisName::Tau, 0, 1, 3), Axis::linspace(AxisName::Eta, 0, 1, 3),
               Axis::linspace(AxisName::Alpha, 0, 1, 3)};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.axes = {Axis{AxisName::Eta, {}}};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.axes = {};
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("names round trip") {
  for (AxisName n : {AxisName::Theta, AxisName::Phi, AxisName::Eta, AxisName::Alpha, AxisName::Tau})
    CHECK(parse_axis_name(to_string(n)) == n);
  for (Quantity q : {Quantity::QfiTheta, Quantity::QfiPhi, Quantity::DeltaF, Quantity::SuccessProb})
    CHECK(parse_quantity(to_string(q)) == q);
  CHECK(parse_scheme("post") == SchemeOrder::PostNH);
  CHECK(parse_scheme("prior") == SchemeOrder::PriorNH);
  CHECK(parse_scheme("baseline") == SchemeOrder::Baseline);
  CHECK_FALSE(parse_scheme("sideways").has_value());
  CHECK_FALSE(parse_axis_name("omega").has_value());
}

TEST_CASE("physical point indexing") {
  PhysicalPoint p;
  CHECK(p[AxisName::Theta] == kPi / 2);
  CHECK(p[AxisName::Eta] == 0.2);
  CHECK(p[AxisName::Alpha] == kPi / 5);
  CHECK(p[AxisName::Tau] == 2.5);
  p[AxisName::Phi] = 0.3;
  CHECK(p.phi == 0.3);
}

TEST_CASE("two-axis sweep layout") {
  SweepSpec spec;
  spec.axes = {Axis::linspace(AxisName::Alpha, 0.0, 0.4, 3), Axis::linspace(AxisName::Eta, 0.0, 0.5, 4)};
  const Table t = run_sweep(spec);
  CHECK(t.columns == std::vector<std::string>{"alpha", "eta", "qfi_theta"});
  REQUIRE(t.rows.size() == 12);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const auto& row = t.rows[i * 4 + j];
      CHECK(row[0].value == spec.axes[0].values[i]);
      CHECK(row[1].value == spec.axes[1].values[j]);
      PhysicalPoint p = spec.fixed;
      p.alpha = row[0].value;
      p.eta = row[1].value;
      CHECK(row[2].value == run_pipeline(make_config(SchemeOrder::PostNH, p)).qfi_theta);
    }
  }
}

TEST_CASE("single-point sweep equals the pipeline") {
  for (Quantity q : {Quantity::QfiTheta, Quantity::QfiPhi, Quantity::DeltaF, Quantity::SuccessProb}) {
    SweepSpec spec;
    spec.quantity = q;
    spec.scheme = SchemeOrder::PriorNH;
    spec.axes = {Axis::from_range(AxisName::Tau, 1.3, 1.3, 0.1)};
    const Table t = run_sweep(spec);
    REQUIRE(t.rows.size() == 1);
    PhysicalPoint p;
    p.tau = 1.3;
    const SchemeOutput out = run_pipeline(make_config(SchemeOrder::PriorNH, p));
    const double expect = q == Quantity::QfiTheta  ? out.qfi_theta
                          : q == Quantity::QfiPhi  ? out.qfi_phi
                          : q == Quantity::DeltaF  ? out.delta_f
                                                   : out.success_prob;
    CHECK(t.rows[0][1].value == expect);
    CHECK(evaluate_quantity(SchemeOrder::PriorNH, p, q) == expect);
  }
}

TEST_CASE("sweeps are deterministic across thread counts") {
  SweepSpec spec;
  spec.axes = {Axis::linspace(AxisName::Tau, 0.0, kPi, 23), Axis::linspace(AxisName::Theta, 0.0, kPi, 17)};
  spec.quantity = Quantity::DeltaF;
  const Table one = run_sweep(spec, 1);
  CHECK(bit_identical(one, run_sweep(spec, 7)));
  CHECK(bit_identical(one, run_sweep(spec, 0)));
}

TEST_CASE("failing cells become error-tagged rows") {
  SweepSpec spec;
  spec.axes = {Axis{AxisName::Alpha, {0.0, kPi / 2, 0.3}}};
  const Table t = run_sweep(spec);
  REQUIRE(t.rows.size() == 3);
  CHECK_FALSE(t.rows[0][1].error.has_value());
  REQUIRE(t.rows[1][1].error.has_value());
  CHECK(*t.rows[1][1].error == ErrorCode::ExceptionalPoint);
  CHECK(std::isnan(t.rows[1][1].value));
  CHECK_FALSE(t.rows[2][1].error.has_value());

  spec.axes = {Axis{AxisName::Theta, {1.0, 4.0}}};
  const Table bad = run_sweep(spec);
  REQUIRE(bad.rows[1][1].error.has_value());
  CHECK(*bad.rows[1][1].error == ErrorCode::InvalidArgument);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 5, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("phi = pi/2 dominates phi = 0 with period pi in tau") {
  const Table t = make_figure(2);
  const std::size_t c0 = column(t, "phi_0"), c2 = column(t, "phi_pi_2");
  for (const auto& row : t.rows) CHECK(row[c2].value >= row[c0].value - 1e-10);
  // tau grid step 0.02: pi is not on the grid, so compare against the pipeline
  PhysicalPoint p;
  for (const auto& row : t.rows) {
    p.tau = row[0].value + kPi;
    p.phi = kPi / 2;
    CHECK(rel_near(evaluate_quantity(SchemeOrder::PostNH, p, Quantity::QfiTheta), row[c2].value, 1e-8));
  }
}

TEST_CASE("alpha = 0 curve of the tau sweep is flat at 0.96") {
  const Table t = make_figure(4);
  const std::size_t c = column(t, "alpha_0");
  for (const auto& row : t.rows) CHECK(near(row[c].value, 0.96, 1e-10));
}

TEST_CASE("scheme II surface at tau = 2.5 is above the baseline and increasing in alpha") {
  SweepSpec spec;
  spec.scheme = SchemeOrder::PriorNH;
  spec.quantity = Quantity::DeltaF;
  spec.axes = {Axis::linspace(AxisName::Eta, 0.0, 0.99, 34), Axis::linspace(AxisName::Alpha, 0.0, 0.45 * kPi, 46)};
  const Table t = run_sweep(spec);
  for (std::size_t i = 0; i < 34; ++i) {
    for (std::size_t j = 0; j < 46; ++j) {
      const auto& row = t.rows[i * 46 + j];
      CHECK(row[2].value >= -1e-10);
      if (j > 0) CHECK(row[2].value >= t.rows[i * 46 + j - 1][2].value - 1e-10);
    }
  }
}

TEST_CASE("figure tables") {
  CHECK_THROWS_AS(make_figure(1), Error);
  CHECK_THROWS_AS(make_figure(9), Error);
  const Table f3 = make_figure(3);
  CHECK(f3.columns == std::vector<std::string>{"alpha", "eta", "f_scheme1", "f_baseline"});
  CHECK(f3.rows.size() == 46 * 34);
  for (const auto& row : f3.rows) {
    CHECK(row[3].value == doctest::Approx(1 - row[1].value * row[1].value).epsilon(1e-15));
    if (row[0].value == 0.0) CHECK(near(row[2].value, row[3].value, 1e-10));
  }
  const Table f6 = make_figure(6);
  CHECK(f6.columns == std::vector<std::string>{"tau", "alpha", "f_scheme1"});
  CHECK(f6.rows.size() == 161 * 161);
  CHECK(make_figure(7).columns == std::vector<std::string>{"alpha", "eta", "f_scheme2", "f_baseline"});
  CHECK(make_figure(8).columns == std::vector<std::string>{"tau", "eta", "f_scheme2", "f_baseline"});
  CHECK(make_figure(5).columns == std::vector<std::string>{"tau", "eta", "f_scheme1", "f_baseline"});
}

TEST_CASE("optimum of scheme I at eta = 0.2") {
  const OptimumReport r = optimize_nh(0.2, SchemeOrder::PostNH, {0.0, 0.49 * kPi}, {0.0, kPi});
  CHECK(std::abs(r.alpha - 5 * kPi / 16) < 0.05);
  CHECK(std::abs(r.tau - 1.64) < 0.05);
  CHECK(r.qfi > 0.96);
  CHECK(r.qfi >= r.best_grid_qfi - 1e-12);
  CHECK(r.gradient_norm < 1e-6);
  CHECK(r.grid_resolution == 161);
  CHECK(r.refinement_iterations > 0);

  // no grid sample beats the report
  SchemeConfig cfg = SchemeConfig::at_optimal_input(SchemeOrder::PostNH, 0.2, 0.0, 0.0);
  for (int i = 0; i < 161; i += 4)
    for (int j = 0; j < 161; j += 4) {
      const double a = 0.49 * kPi * i / 160, tau = kPi * j / 160;
      cfg = SchemeConfig::at_optimal_input(SchemeOrder::PostNH, 0.2, a, tau);
      CHECK(exact_qfi(cfg, Parameter::Theta, kPi / 2, kPi / 2) <= r.qfi + 1e-12);
    }
}

TEST_CASE("optimizer is deterministic and thread independent") {
  OptimizeOptions one, many;
  one.threads = 1;
  many.threads = 6;
  const OptimumReport a = optimize_nh(0.4, SchemeOrder::PostNH, {0.0, 0.49 * kPi}, {0.0, kPi}, one);
  const OptimumReport b = optimize_nh(0.4, SchemeOrder::PostNH, {0.0, 0.49 * kPi}, {0.0, kPi}, many);
  CHECK(a.alpha == b.alpha);
  CHECK(a.tau == b.tau);
  CHECK(a.qfi == b.qfi);
}

TEST_CASE("degenerate ranges return the point") {
  const OptimumReport r = optimize_nh(0.2, SchemeOrder::PostNH, {0.7, 0.7}, {1.1, 1.1});
  CHECK(r.alpha == 0.7);
  CHECK(r.tau == 1.1);
  CHECK(r.qfi == exact_qfi(SchemeConfig::at_optimal_input(SchemeOrder::PostNH, 0.2, 0.7, 1.1), Parameter::Theta,
                           kPi / 2, kPi / 2));
}

TEST_CASE("boundary optima raise with the report attached") {
  try {
    optimize_nh(0.0, SchemeOrder::PostNH, {0.0, 0.49 * kPi}, {0.0, kPi});
    FAIL("expected NoInteriorOptimum");
  } catch (const NoInteriorOptimumError& e) {
    CHECK(e.code() == ErrorCode::NoInteriorOptimum);
    CHECK(e.report().qfi >= 1 - 1e-6);
    CHECK(e.report().alpha == doctest::Approx(0.49 * kPi));
  }
  try {
    optimize_nh(0.0, SchemeOrder::PostNH, {-0.1, 0.1}, {0.0, 1e-3});
    FAIL("expected NoInteriorOptimum");
  } catch (const NoInteriorOptimumError& e) {
    CHECK(near(e.report().qfi, 1.0, 1e-3));
  }
}

TEST_CASE("optimizer input checks") {
  CHECK_THROWS_AS(optimize_nh(0.2, SchemeOrder::Baseline, {0, 1}, {0, 1}), Error);
  CHECK_THROWS_AS(optimize_nh(0.2, SchemeOrder::PostNH, {1, 0}, {0, 1}), Error);
  CHECK_THROWS_AS(optimize_nh(0.2, SchemeOrder::PostNH, {0, kPi / 2}, {0, 1}), Error);
  CHECK_THROWS_AS(optimize_nh(1.5, SchemeOrder::PostNH, {0, 1}, {0, 1}), Error);
}

TEST_CASE("stationarity of the baseline") {
  const StationarityReport r =
      verify_stationarity(make_config(SchemeOrder::Baseline, PhysicalPoint{kPi / 2, kPi / 2, 0.2, 0.0, 0.0}));
  CHECK(std::abs(r.d1_theta) < 1e-6);
  CHECK(std::abs(r.d1_phi) < 1e-6);
  CHECK(r.pass());
}

TEST_CASE("stationarity derivatives match the closed-form slope") {
  // The optimal-input claim does not hold in theta: the reported derivative is
  // the true, non-zero slope of the theta-QFI, while phi = pi/2 is stationary.
  const auto slope = [](double eta, double alpha, double tau) {
    const double h = 1e-4;
    SchemeConfig cfg = SchemeConfig::at_optimal_input(SchemeOrder::PostNH, eta, alpha, tau);
    auto f = [&](double theta) {
      cfg.input.theta = theta;
      return closed_form_f_scheme1_full(cfg).f_theta;
    };
    return (f(kPi / 2 + h) - f(kPi / 2 - h)) / (2 * h);
  };
  const StationarityReport r = verify_stationarity(make_config(SchemeOrder::PostNH, PhysicalPoint{}));
  CHECK(rel_near(r.d1_theta, slope(0.2, kPi / 5, 2.5), 1e-6));
  CHECK(r.d1_theta == doctest::Approx(-3.44).epsilon(0.01));
  CHECK_FALSE(r.theta_pass);
  CHECK(std::abs(r.d1_phi) < 1e-6);
  CHECK(r.phi_pass);

  const StationarityReport r2 =
      verify_stationarity(make_config(SchemeOrder::PriorNH, PhysicalPoint{kPi / 2, kPi / 2, 0.5, kPi / 6, 1.0}));
  CHECK(std::abs(r2.d1_theta) > 1.0);
  CHECK(std::abs(r2.d1_phi) < 1e-6);
  CHECK(r2.phi_pass);
}

TEST_CASE("alpha = 0 is stationary in both angles") {
  Draws d(71);
  for (int k = 0; k < 20; ++k) {
    const PhysicalPoint p{kPi / 2, kPi / 2, d.uniform(0, 0.95), 0.0, d.uniform(0, kPi)};
    CHECK(verify_stationarity(make_config(SchemeOrder::PostNH, p)).pass());
    CHECK(verify_stationarity(make_config(SchemeOrder::PriorNH, p)).pass());
  }
}
