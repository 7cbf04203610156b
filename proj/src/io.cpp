#include "nhqfi/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace nhqfi {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view what, std::string_view text) {
  throw Error(ErrorCode::InvalidArgument, std::string(what) + ": '" + std::string(text) + "'");
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

double parse_real(std::string_view text) {
  const auto v = to_double(text);
  if (!v) bad("not a number", text);
  return *v;
}

double parse_angle(std::string_view text, bool degrees) {
  std::string_view s = trim(text);
  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) {
    const double v = parse_real(s);
    return degrees ? v * std::numbers::pi / 180.0 : v;
  }

  // [sign][coef][*]pi[*factor][/denominator]
  std::string_view head = trim(s.substr(0, pos));
  std::string_view tail = trim(s.substr(pos + 2));
  double sign = 1.0;
  if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
    if (head.front() == '-') sign = -1.0;
    head = trim(head.substr(1));
  }
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  double value = sign * std::numbers::pi;
  if (!head.empty()) {
    const auto c = to_double(head);
    if (!c) bad("malformed pi-literal", text);
    value *= *c;
  }
  if (!tail.empty() && tail.front() == '*') {
    tail = trim(tail.substr(1));
    const auto slash = tail.find('/');
    const auto f = to_double(tail.substr(0, slash));
    if (!f) bad("malformed pi-literal", text);
    value *= *f;
    tail = slash == std::string_view::npos ? std::string_view{} : tail.substr(slash);
  }
  if (!tail.empty()) {
    if (tail.front() != '/') bad("malformed pi-literal", text);
    const auto d = to_double(tail.substr(1));
    if (!d || *d == 0.0) bad("malformed pi-literal", text);
    value /= *d;
  }
  return value;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_angle_axis(AxisName name) {
  return name == AxisName::Theta || name == AxisName::Phi || name == AxisName::Alpha;
}

Axis parse_vary(std::string_view text, bool degrees) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) bad("expected name=start:stop:step", text);
  const auto name = parse_axis_name(trim(text.substr(0, eq)));
  if (!name) bad("unknown axis", text);
  const std::string_view rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos || rest.find(':', c2 + 1) != std::string_view::npos)
    bad("expected name=start:stop:step", text);
  const bool deg = degrees && is_angle_axis(*name);
  const double start = parse_angle(rest.substr(0, c1), deg);
  const double stop = parse_angle(rest.substr(c1 + 1, c2 - c1 - 1), deg);
  const double step = parse_angle(rest.substr(c2 + 1), deg);
  return Axis::from_range(*name, start, stop, step);
}

std::pair<AxisName, double> parse_fix(std::string_view text, bool degrees) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) bad("expected name=value", text);
  const auto name = parse_axis_name(trim(text.substr(0, eq)));
  if (!name) bad("unknown parameter", text);
  return {*name, parse_angle(text.substr(eq + 1), degrees && is_angle_axis(*name))};
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      if (row[c].error)
        os << "ERR:" << to_string(*row[c].error);
      else
        os << format_double(row[c].value);
    }
    os << '\n';
  }
}

}  // namespace nhqfi
