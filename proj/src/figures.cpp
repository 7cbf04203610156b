#include "nhqfi/figures.hpp"

#include <numbers>

namespace nhqfi {

namespace {

constexpr double kPi = std::numbers::pi;

Axis tau_line() { return Axis::linspace(AxisName::Tau, 0.0, 3.2, 161); }
Axis tau_period() { return Axis::linspace(AxisName::Tau, 0.0, kPi, 101); }
Axis alpha_span() { return Axis::linspace(AxisName::Alpha, 0.0, 0.45 * kPi, 46); }
Axis eta_span() { return Axis::linspace(AxisName::Eta, 0.0, 0.99, 34); }

// One sweep per value of a curve parameter, joined column-wise on the shared
// axis.
Table curves(const Axis& x, AxisName curve, const std::vector<std::pair<double, std::string>>& values,
             unsigned threads) {
  Table out;
  out.columns.emplace_back(to_string(x.name));
  for (const auto& [v, label] : values) out.columns.push_back(label);
  out.rows.resize(x.values.size());
  for (std::size_t i = 0; i < x.values.size(); ++i) out.rows[i].push_back(Cell{x.values[i], std::nullopt});

  for (const auto& [v, label] : values) {
    SweepSpec spec;
    spec.axes = {x};
    spec.fixed[curve] = v;
    const Table t = run_sweep(spec, threads);
    for (std::size_t i = 0; i < t.rows.size(); ++i) out.rows[i].push_back(t.rows[i].back());
  }
  return out;
}

Table surface(SchemeOrder scheme, Axis outer, Axis inner, PhysicalPoint fixed, std::string value_column,
              bool with_baseline, unsigned threads) {
  SweepSpec spec;
  spec.axes = {std::move(outer), std::move(inner)};
  spec.fixed = fixed;
  spec.scheme = scheme;
  Table t = run_sweep(spec, threads);
  t.columns.back() = std::move(value_column);
  if (with_baseline) {
    t.columns.emplace_back("f_baseline");
    const int eta_col = spec.axes[0].name == AxisName::Eta ? 0 : 1;
    for (auto& row : t.rows) {
      const double eta = row[eta_col].value;
      row.push_back(Cell{1.0 - eta * eta, std::nullopt});
    }
  }
  return t;
}

}  // namespace

Table make_figure(int id, unsigned threads) {
  PhysicalPoint p;
  switch (id) {
    case 2:
      return curves(tau_line(), AxisName::Phi, {{0.0, "phi_0"}, {kPi / 4, "phi_pi_4"}, {kPi / 2, "phi_pi_2"}},
                    threads);
    case 3:
      return surface(SchemeOrder::PostNH, alpha_span(), eta_span(), p, "f_scheme1", true, threads);
    case 4:
      return curves(tau_line(), AxisName::Alpha,
                    {{-kPi / 5, "alpha_minus_pi_5"}, {0.0, "alpha_0"}, {kPi / 5, "alpha_pi_5"}}, threads);
    case 5:
      return surface(SchemeOrder::PostNH, tau_period(), eta_span(), p, "f_scheme1", true, threads);
    case 6:
      return surface(SchemeOrder::PostNH, Axis::linspace(AxisName::Tau, 0.0, kPi, 161),
                     Axis::linspace(AxisName::Alpha, 0.0, 0.49 * kPi, 161), p, "f_scheme1", false, threads);
    case 7:
      return surface(SchemeOrder::PriorNH, alpha_span(), eta_span(), p, "f_scheme2", true, threads);
    case 8:
      return surface(SchemeOrder::PriorNH, tau_period(), eta_span(), p, "f_scheme2", true, threads);
    default:
      throw Error(ErrorCode::InvalidArgument, "figure id must be in 2..8");
  }
}

}  // namespace nhqfi
