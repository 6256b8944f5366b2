#include "finsler/runconfig.hpp"

#include <fstream>
#include <sstream>

#include "finsler/errors.hpp"
#include "json.hpp"

namespace finsler {

using nlohmann::json;

std::vector<ChartPoint> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FinslerError(ErrorCode::IOError, "cannot open points file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw FinslerError(ErrorCode::ConfigError, std::string("points JSON parse: ") + e.what());
  }
  std::vector<ChartPoint> pts;
  try {
    if (j.contains("points")) {
      for (const auto& p : j.at("points")) {
        ChartPoint pt;
        for (int i = 0; i < 4; ++i) {
          pt.x[static_cast<std::size_t>(i)] = p.at("x").at(static_cast<std::size_t>(i)).get<double>();
          pt.v[static_cast<std::size_t>(i)] = p.at("v").at(static_cast<std::size_t>(i)).get<double>();
        }
        pts.push_back(pt);
      }
      return pts;
    }
    if (j.contains("counts")) {
      std::array<double, 4> lo{}, hi{}, v{1, 0, 0, 0};
      std::array<int, 4> n{};
      for (int i = 0; i < 4; ++i) {
        lo[static_cast<std::size_t>(i)] = j.at("box_min").at(static_cast<std::size_t>(i)).get<double>();
        hi[static_cast<std::size_t>(i)] = j.at("box_max").at(static_cast<std::size_t>(i)).get<double>();
        n[static_cast<std::size_t>(i)] = j.at("counts").at(static_cast<std::size_t>(i)).get<int>();
        if (n[static_cast<std::size_t>(i)] < 1) throw FinslerError(ErrorCode::ConfigError, "grid counts must be >= 1");
      }
      if (j.contains("v"))
        for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = j.at("v").at(static_cast<std::size_t>(i)).get<double>();
      auto coord = [&](int axis, int k) {
        const std::size_t a = static_cast<std::size_t>(axis);
        if (n[a] == 1) return 0.5 * (lo[a] + hi[a]);
        return lo[a] + (hi[a] - lo[a]) * k / (n[a] - 1);
      };
      for (int i0 = 0; i0 < n[0]; ++i0)
        for (int i1 = 0; i1 < n[1]; ++i1)
          for (int i2 = 0; i2 < n[2]; ++i2)
            for (int i3 = 0; i3 < n[3]; ++i3) {
              ChartPoint pt;
              pt.x = {coord(0, i0), coord(1, i1), coord(2, i2), coord(3, i3)};
              pt.v = v;
              pts.push_back(pt);
            }
      return pts;
    }
  } catch (const FinslerError&) {
    throw;
  } catch (const std::exception& e) {
    throw FinslerError(ErrorCode::ConfigError, std::string("points JSON: ") + e.what());
  }
  throw FinslerError(ErrorCode::ConfigError, "points file needs \"points\" or a grid spec");
}

TruncationOrder parse_order(const std::string& text) {
  TruncationOrder ord;
  if (std::sscanf(text.c_str(), "%d,%d", &ord.max_x, &ord.max_v) != 2 || ord.max_x < 0 ||
      ord.max_v < 0)
    throw FinslerError(ErrorCode::ConfigError, "bad --order, expected kx,kv");
  return ord;
}

std::array<double, 4> parse_vec4(const std::string& text) {
  std::array<double, 4> v{};
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
    throw FinslerError(ErrorCode::ConfigError, "expected four comma-separated reals");
  return v;
}

}  // namespace finsler
