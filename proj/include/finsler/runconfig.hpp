#pragma once

#include <string>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

/// Points file: {"points": [{"x": [...], "v": [...]}, ...]}
/// Grid file:   {"box_min": [...], "box_max": [...], "counts": [n0,n1,n2,n3],
///               "v": [...]} — Cartesian product over the chart box with a
/// fixed fiber representative.
std::vector<ChartPoint> load_points(const std::string& path);

/// Parses "kx,kv" into a truncation order.
TruncationOrder parse_order(const std::string& text);

/// Parses "a,b,c,d" into four reals.
std::array<double, 4> parse_vec4(const std::string& text);

}  // namespace finsler
