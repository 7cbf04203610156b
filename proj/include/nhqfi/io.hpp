#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "nhqfi/sweep.hpp"

namespace nhqfi {

// Parses a real number or a pi-literal: "0.3", "pi", "-pi/5", "5pi/16",
// "5*pi/16", "pi*0.49", "0.49pi". With degrees = true the result is converted
// from degrees (pi-literals are already radians and are left alone).
// Throws InvalidArgument on malformed input.
double parse_angle(std::string_view text, bool degrees = false);

// Plain real number, no pi-literals.
double parse_real(std::string_view text);

// Shortest-exact formatting: 17 significant digits, '.' decimal.
std::string format_double(double x);

// "name=start:stop:step" and "name=value". Angles go through parse_angle;
// degrees applies to theta, phi and alpha only.
Axis parse_vary(std::string_view text, bool degrees = false);
std::pair<AxisName, double> parse_fix(std::string_view text, bool degrees = false);

bool is_angle_axis(AxisName name);

// Header row, then one line per row; error cells print "ERR:<code>".
void write_csv(std::ostream& os, const Table& table);

}  // namespace nhqfi
