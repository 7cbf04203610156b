#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nhqfi/schemes.hpp"

namespace nhqfi {

enum class AxisName { Theta, Phi, Eta, Alpha, Tau };
enum class Quantity { QfiTheta, QfiPhi, DeltaF, SuccessProb };

std::string_view to_string(AxisName name);
std::string_view to_string(Quantity q);
std::optional<AxisName> parse_axis_name(std::string_view s);
std::optional<Quantity> parse_quantity(std::string_view s);
std::optional<SchemeOrder> parse_scheme(std::string_view s);
std::string_view to_string(SchemeOrder order);

// The five physical parameters. Defaults are the most common figure
// settings: theta = phi = pi/2, eta = 0.2, alpha = pi/5, tau = 2.5.
struct PhysicalPoint {
  double theta = std::numbers::pi / 2.0;
  double phi = std::numbers::pi / 2.0;
  double eta = 0.2;
  double alpha = std::numbers::pi / 5.0;
  double tau = 2.5;

  double& operator[](AxisName name);
  double operator[](AxisName name) const;
};

SchemeConfig make_config(SchemeOrder order, const PhysicalPoint& p);

struct Axis {
  AxisName name = AxisName::Tau;
  std::vector<double> values;

  // start, start + step, ... up to stop (inclusive within 1e-9 steps).
  // Throws InvalidArgument for step <= 0 or stop < start.
  static Axis from_range(AxisName name, double start, double stop, double step);
  static Axis linspace(AxisName name, double start, double stop, int count);
};

struct SweepSpec {
  std::vector<Axis> axes;  // at most two, outer axis first
  PhysicalPoint fixed;
  SchemeOrder scheme = SchemeOrder::PostNH;
  Quantity quantity = Quantity::QfiTheta;

  void validate() const;
};

struct Cell {
  double value = 0.0;
  std::optional<ErrorCode> error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// One pipeline evaluation of a quantity.
double evaluate_quantity(SchemeOrder scheme, const PhysicalPoint& p, Quantity q);

// Dense grid, outer axis major. Cells are evaluated on worker threads
// (threads = 0 picks hardware concurrency); the table is identical for any
// thread count. Failing cells become error-tagged rows.
Table run_sweep(const SweepSpec& spec, unsigned threads = 0);

// Runs fn(i) for i in [0, n) across worker threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate() const { return hi == lo; }
};

struct OptimizeOptions {
  int grid = 161;
  int max_iterations = 4000;
  unsigned threads = 0;
};

struct OptimumReport {
  double alpha = 0.0;
  double tau = 0.0;
  double qfi = 0.0;
  double best_grid_qfi = 0.0;
  int grid_resolution = 0;
  int refinement_iterations = 0;
  double gradient_norm = 0.0;
};

// Raised when the optimum sits on the boundary of a non-degenerate range;
// the report is still available.
class NoInteriorOptimumError : public Error {
 public:
  explicit NoInteriorOptimumError(const OptimumReport& report)
      : Error(ErrorCode::NoInteriorOptimum, "optimum lies on the search-range boundary"),
        report_(report) {}
  const OptimumReport& report() const { return report_; }

 private:
  OptimumReport report_;
};

// Maximises the theta-QFI at the optimal input over (alpha, tau): coarse grid,
// Nelder-Mead from the best cell, then a short Newton polish. The gradient
// norm is a central-difference certificate.
OptimumReport optimize_nh(double eta, SchemeOrder scheme, Interval alpha, Interval tau,
                          const OptimizeOptions& options = {});

struct StationarityReport {
  double d1_theta = 0.0;
  double d2_theta = 0.0;
  double d1_phi = 0.0;
  double d2_phi = 0.0;
  double d2_floor = 0.0;
  bool theta_pass = false;
  bool phi_pass = false;
  bool pass() const { return theta_pass && phi_pass; }
};

inline constexpr double kStationarityStep = 1e-5;
inline constexpr double kStationarityTol = 1e-6;

// Central first/second differences of the theta-QFI in theta and in phi at
// the config's input angles. Pass: |d1| < 1e-6 and d2 < 0, where a d2
// within the rounding floor of the second difference (about
// 100 eps max(1, |F|) / h^2) counts as a flat, degenerate maximum.
StationarityReport verify_stationarity(const SchemeConfig& cfg);

}  // namespace nhqfi
