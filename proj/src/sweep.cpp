#include "nhqfi/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace nhqfi {

namespace {

constexpr std::array<std::pair<AxisName, std::string_view>, 5> kAxisNames{{
    {AxisName::Theta, "theta"},
    {AxisName::Phi, "phi"},
    {AxisName::Eta, "eta"},
    {AxisName::Alpha, "alpha"},
    {AxisName::Tau, "tau"},
}};

constexpr std::array<std::pair<Quantity, std::string_view>, 4> kQuantityNames{{
    {Quantity::QfiTheta, "qfi_theta"},
    {Quantity::QfiPhi, "qfi_phi"},
    {Quantity::DeltaF, "delta_f"},
    {Quantity::SuccessProb, "success_prob"},
}};

constexpr std::array<std::pair<SchemeOrder, std::string_view>, 3> kSchemeNames{{
    {SchemeOrder::Baseline, "baseline"},
    {SchemeOrder::PostNH, "post"},
    {SchemeOrder::PriorNH, "prior"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
  for (const auto& [k, v] : table)
    if (k == e) return v;
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s) {
  for (const auto& [k, v] : table)
    if (v == s) return k;
  return std::nullopt;
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ---- optimizer internals ----

// Objective over the free coordinates; fixed ones stay at their value.
struct Objective {
  double eta;
  SchemeOrder scheme;
  std::array<Interval, 2> box;  // alpha, tau
  std::vector<int> free;        // indices into box

  std::array<double, 2> embed(const std::vector<double>& x, std::array<double, 2> base) const {
    for (std::size_t k = 0; k < free.size(); ++k) base[free[k]] = x[k];
    return base;
  }

  double at(const std::array<double, 2>& p) const {
    try {
      const SchemeConfig cfg = SchemeConfig::at_optimal_input(scheme, eta, p[0], p[1]);
      const double f = exact_qfi(cfg, Parameter::Theta, cfg.input.theta, cfg.input.phi);
      return std::isfinite(f) ? f : kNegInf;
    } catch (const Error&) {
      return kNegInf;
    }
  }

  double clamp(int axis, double v) const { return std::clamp(v, box[axis].lo, box[axis].hi); }
};

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;  // objective values (maximised)
};

// Box-clamped Nelder-Mead maximisation. Returns the iteration count.
int nelder_mead(const Objective& obj, const std::array<double, 2>& base, Simplex& s, int max_iter) {
  const std::size_t n = obj.free.size();
  const auto eval = [&](std::vector<double> x) {
    for (std::size_t k = 0; k < n; ++k) x[k] = obj.clamp(obj.free[k], x[k]);
    return std::pair{x, obj.at(obj.embed(x, base))};
  };

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::vector<std::size_t> order(n + 1);
    for (std::size_t k = 0; k <= n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.f[a] > s.f[b]; });
    Simplex sorted;
    for (auto k : order) {
      sorted.x.push_back(s.x[k]);
      sorted.f.push_back(s.f[k]);
    }
    s = std::move(sorted);

    double size = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t d = 0; d < n; ++d) size = std::max(size, std::abs(s.x[k][d] - s.x[0][d]));
    if (size < 1e-13 && std::abs(s.f[0] - s.f[n]) <= 1e-15 * std::max(1.0, std::abs(s.f[0]))) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t d = 0; d < n; ++d) centroid[d] += s.x[k][d] / static_cast<double>(n);
    const auto along = [&](double t) {
      std::vector<double> y(n);
      for (std::size_t d = 0; d < n; ++d) y[d] = centroid[d] + t * (s.x[n][d] - centroid[d]);
      return y;
    };

    auto [xr, fr] = eval(along(-1.0));
    if (fr > s.f[0]) {
      auto [xe, fe] = eval(along(-2.0));
      if (fe > fr) {
        s.x[n] = xe;
        s.f[n] = fe;
      } else {
        s.x[n] = xr;
        s.f[n] = fr;
      }
      continue;
    }
    if (fr > s.f[n - 1]) {
      s.x[n] = xr;
      s.f[n] = fr;
      continue;
    }
    auto [xc, fc] = fr > s.f[n] ? eval(along(-0.5)) : eval(along(0.5));
    if (fc > std::max(fr, s.f[n])) {
      s.x[n] = xc;
      s.f[n] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<double> y(n);
      for (std::size_t d = 0; d < n; ++d) y[d] = s.x[0][d] + 0.5 * (s.x[k][d] - s.x[0][d]);
      auto [xs, fs] = eval(y);
      s.x[k] = xs;
      s.f[k] = fs;
    }
  }
  return iter;
}

struct Derivatives {
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
};

// Central differences over the free coordinates.
Derivatives differentiate(const Objective& obj, const std::array<double, 2>& p, double hg, double hh) {
  Derivatives d;
  const double f0 = obj.at(p);
  const auto shifted = [&](int a, double da, int b, double db) {
    auto q = p;
    q[a] += da;
    q[b] += db;
    return obj.at(q);
  };
  for (std::size_t i = 0; i < obj.free.size(); ++i) {
    const int a = obj.free[i];
    d.grad(a) = (shifted(a, hg, a, 0.0) - shifted(a, -hg, a, 0.0)) / (2.0 * hg);
    d.hess(a, a) = (shifted(a, hh, a, 0.0) - 2.0 * f0 + shifted(a, -hh, a, 0.0)) / (hh * hh);
  }
  if (obj.free.size() == 2) {
    const double c = (shifted(0, hh, 1, hh) - shifted(0, hh, 1, -hh) - shifted(0, -hh, 1, hh) +
                      shifted(0, -hh, 1, -hh)) /
                     (4.0 * hh * hh);
    d.hess(0, 1) = d.hess(1, 0) = c;
  }
  return d;
}

bool on_boundary(const Objective& obj, const std::array<double, 2>& p) {
  for (int a : obj.free) {
    const double tol = 1e-7 * (obj.box[a].hi - obj.box[a].lo);
    if (p[a] - obj.box[a].lo <= tol || obj.box[a].hi - p[a] <= tol) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(AxisName name) { return name_of(kAxisNames, name); }
std::string_view to_string(Quantity q) { return name_of(kQuantityNames, q); }
std::string_view to_string(SchemeOrder order) { return name_of(kSchemeNames, order); }
std::optional<AxisName> parse_axis_name(std::string_view s) { return lookup(kAxisNames, s); }
std::optional<Quantity> parse_quantity(std::string_view s) { return lookup(kQuantityNames, s); }
std::optional<SchemeOrder> parse_scheme(std::string_view s) { return lookup(kSchemeNames, s); }

double& PhysicalPoint::operator[](AxisName name) {
  switch (name) {
    case AxisName::Theta: return theta;
    case AxisName::Phi: return phi;
    case AxisName::Eta: return eta;
    case AxisName::Alpha: return alpha;
    case AxisName::Tau: return tau;
  }
  return tau;
}

double PhysicalPoint::operator[](AxisName name) const {
  return const_cast<PhysicalPoint&>(*this)[name];
}

SchemeConfig make_config(SchemeOrder order, const PhysicalPoint& p) {
  SchemeConfig cfg = SchemeConfig::at_optimal_input(SchemeOrder::Baseline, p.eta, 0.0, 0.0);
  cfg.input = InputParams{p.theta, p.phi};
  cfg.order = order;
  if (order != SchemeOrder::Baseline) cfg.nh = PtParams::from_tau(p.alpha, p.tau);
  return cfg;
}

Axis Axis::from_range(AxisName name, double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(ErrorCode::InvalidArgument, "sweep step must be > 0");
  if (!(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
    throw Error(ErrorCode::InvalidArgument, "sweep range needs start <= stop");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  Axis a{name, {}};
  a.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) a.values.push_back(start + static_cast<double>(k) * step);
  return a;
}

Axis Axis::linspace(AxisName name, double start, double stop, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "linspace needs at least one point");
  Axis a{name, {}};
  if (count == 1) {
    a.values.push_back(start);
    return a;
  }
  for (int k = 0; k < count; ++k)
    a.values.push_back(k == count - 1 ? stop : start + (stop - start) * k / (count - 1));
  return a;
}

void SweepSpec::validate() const {
  if (axes.size() > 2) throw Error(ErrorCode::InvalidArgument, "at most two sweep axes");
  if (axes.size() == 2 && axes[0].name == axes[1].name)
    throw Error(ErrorCode::InvalidArgument, "sweep axes must be distinct");
  for (const Axis& a : axes)
    if (a.values.empty()) throw Error(ErrorCode::InvalidArgument, "empty sweep axis");
}

double evaluate_quantity(SchemeOrder scheme, const PhysicalPoint& p, Quantity q) {
  const SchemeOutput out = run_pipeline(make_config(scheme, p));
  switch (q) {
    case Quantity::QfiTheta: return out.qfi_theta;
    case Quantity::QfiPhi: return out.qfi_phi;
    case Quantity::DeltaF: return out.delta_f;
    case Quantity::SuccessProb: return out.success_prob;
  }
  return out.qfi_theta;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
}

Table run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  Table table;
  for (const Axis& a : spec.axes) table.columns.emplace_back(to_string(a.name));
  table.columns.emplace_back(to_string(spec.quantity));

  const std::size_t inner = spec.axes.size() == 2 ? spec.axes[1].values.size() : 1;
  const std::size_t outer = spec.axes.empty() ? 1 : spec.axes[0].values.size();
  table.rows.resize(outer * inner);

  parallel_for(table.rows.size(), threads, [&](std::size_t idx) {
    PhysicalPoint p = spec.fixed;
    std::vector<Cell> row;
    if (!spec.axes.empty()) {
      const double v = spec.axes[0].values[idx / inner];
      p[spec.axes[0].name] = v;
      row.push_back(Cell{v, std::nullopt});
    }
    if (spec.axes.size() == 2) {
      const double v = spec.axes[1].values[idx % inner];
      p[spec.axes[1].name] = v;
      row.push_back(Cell{v, std::nullopt});
    }
    try {
      row.push_back(Cell{evaluate_quantity(spec.scheme, p, spec.quantity), std::nullopt});
    } catch (const Error& e) {
      row.push_back(Cell{std::numeric_limits<double>::quiet_NaN(), e.code()});
    }
    table.rows[idx] = std::move(row);
  });
  return table;
}

OptimumReport optimize_nh(double eta, SchemeOrder scheme, Interval alpha, Interval tau,
                          const OptimizeOptions& options) {
  if (scheme == SchemeOrder::Baseline)
    throw Error(ErrorCode::InvalidArgument, "optimize_nh needs a non-Hermitian scheme");
  DampingRate{eta};
  for (const Interval& iv : {alpha, tau})
    if (!(iv.hi >= iv.lo) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw Error(ErrorCode::InvalidArgument, "search interval needs lo <= hi");
  require_pt_regime(alpha.lo);
  require_pt_regime(alpha.hi);
  if (options.grid < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");

  Objective obj{eta, scheme, {alpha, tau}, {}};
  for (int a = 0; a < 2; ++a)
    if (!obj.box[a].degenerate()) obj.free.push_back(a);

  // Coarse grid.
  const auto axis_points = [&](const Interval& iv) {
    return iv.degenerate() ? Axis{AxisName::Alpha, {iv.lo}}.values
                           : Axis::linspace(AxisName::Alpha, iv.lo, iv.hi, options.grid).values;
  };
  const std::vector<double> ga = axis_points(alpha), gt = axis_points(tau);
  std::vector<double> values(ga.size() * gt.size());
  parallel_for(values.size(), options.threads, [&](std::size_t k) {
    values[k] = obj.at({ga[k / gt.size()], gt[k % gt.size()]});
  });
  const auto best_it = std::max_element(values.begin(), values.end());
  if (*best_it == kNegInf) throw Error(ErrorCode::InvalidArgument, "objective undefined on the whole grid");
  const auto best_idx = static_cast<std::size_t>(best_it - values.begin());
  std::array<double, 2> best{ga[best_idx / gt.size()], gt[best_idx % gt.size()]};

  OptimumReport report;
  report.grid_resolution = static_cast<int>(std::max(ga.size(), gt.size()));
  report.best_grid_qfi = *best_it;
  report.alpha = best[0];
  report.tau = best[1];
  report.qfi = *best_it;
  if (obj.free.empty()) return report;

  // Simplex started one grid cell inward along each free axis.
  Simplex s;
  std::vector<double> x0;
  for (int a : obj.free) x0.push_back(best[a]);
  s.x.push_back(x0);
  s.f.push_back(*best_it);
  for (std::size_t k = 0; k < obj.free.size(); ++k) {
    const int a = obj.free[k];
    const double cell = (obj.box[a].hi - obj.box[a].lo) / (options.grid - 1);
    std::vector<double> y = x0;
    y[k] = x0[k] + cell <= obj.box[a].hi ? x0[k] + cell : x0[k] - cell;
    s.x.push_back(y);
    s.f.push_back(obj.at(obj.embed(y, best)));
  }
  report.refinement_iterations = nelder_mead(obj, best, s, options.max_iterations);

  std::size_t top = 0;
  for (std::size_t k = 1; k < s.f.size(); ++k)
    if (s.f[k] > s.f[top]) top = k;
  std::array<double, 2> p = obj.embed(s.x[top], best);
  double fp = s.f[top];

  // Newton polish: the simplex stalls around 1e-8 in position, which leaves
  // a gradient above the certificate threshold on steep ridges.
  constexpr double kGradStep = 1e-6;
  constexpr double kHessStep = 1e-4;
  if (!on_boundary(obj, p)) {
    for (int it = 0; it < 8; ++it) {
      const Derivatives d = differentiate(obj, p, kGradStep, kHessStep);
      if (d.grad.norm() < 1e-9) break;
      Eigen::Matrix2d h = d.hess;
      for (int a = 0; a < 2; ++a)
        if (obj.box[a].degenerate()) {
          h.row(a).setZero();
          h.col(a).setZero();
          h(a, a) = -1.0;
        }
      if (!(h.determinant() > 0.0 && h.trace() < 0.0)) break;  // not a local maximum
      const Eigen::Vector2d step = -h.inverse() * d.grad;
      std::array<double, 2> q{obj.clamp(0, p[0] + step(0)), obj.clamp(1, p[1] + step(1))};
      const double fq = obj.at(q);
      if (!(fq >= fp - 1e-12 * std::max(1.0, std::abs(fp)))) break;
      p = q;
      fp = std::max(fp, fq);
      ++report.refinement_iterations;
    }
  }

  if (fp >= report.best_grid_qfi) {
    report.alpha = p[0];
    report.tau = p[1];
    report.qfi = obj.at(p);
  }
  const std::array<double, 2> at{report.alpha, report.tau};
  report.gradient_norm = differentiate(obj, at, kGradStep, kHessStep).grad.norm();
  if (on_boundary(obj, at)) throw NoInteriorOptimumError(report);
  return report;
}

StationarityReport verify_stationarity(const SchemeConfig& cfg) {
  const double th = cfg.input.theta, ph = cfg.input.phi, h = kStationarityStep;
  const auto f = [&](double t, double p) { return exact_qfi(cfg, Parameter::Theta, t, p); };
  const double f0 = f(th, ph);

  StationarityReport r;
  const double tp = f(th + h, ph), tm = f(th - h, ph);
  const double pp = f(th, ph + h), pm = f(th, ph - h);
  r.d1_theta = (tp - tm) / (2.0 * h);
  r.d2_theta = (tp - 2.0 * f0 + tm) / (h * h);
  r.d1_phi = (pp - pm) / (2.0 * h);
  r.d2_phi = (pp - 2.0 * f0 + pm) / (h * h);
  r.d2_floor = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f0)) / (h * h);
  r.theta_pass = std::abs(r.d1_theta) < kStationarityTol && r.d2_theta < r.d2_floor;
  r.phi_pass = std::abs(r.d1_phi) < kStationarityTol && r.d2_phi < r.d2_floor;
  return r;
}

}  // namespace nhqfi
