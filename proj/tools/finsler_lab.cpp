#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "finsler/causal.hpp"
#include "finsler/dynamics.hpp"
#include "finsler/geodesic.hpp"
#include "finsler/geometry.hpp"
#include "finsler/parallel.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/report.hpp"
#include "finsler/runconfig.hpp"
#include "finsler/verify.hpp"
#include "json.hpp"

namespace {

using namespace finsler;

struct GlobalOpts {
  std::string out = "-";
  std::string format = "json";
  std::uint64_t seed = 20240915;
  int threads = 0;
};

void emit(const GlobalOpts& g, const std::string& content) {
  if (content.empty())
    throw FinslerError(ErrorCode::ConfigError, "refusing to emit an empty report");
  if (g.out == "-") {
    std::cout << content;
  } else {
    write_file(g.out, content);
  }
}

std::string point_fields_json(const ChartPoint& pt) {
  JsonWriter w;
  w.begin_object();
  w.key("x");
  w.begin_array();
  for (double c : pt.x) w.value(c);
  w.end_array();
  w.key("v");
  w.begin_array();
  for (double c : pt.v) w.value(c);
  w.end_array();
  w.end_object();
  return w.str();
}

int run_inspect(const GlobalOpts& g, const std::string& model_path, const std::string& points_path,
                const std::string& order_text) {
  const FinslerModel model = build_model_from_file(model_path);
  const auto points = load_points(points_path);
  const TruncationOrder ord = order_text.empty() ? TruncationOrder{} : parse_order(order_text);

  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(std::string("finsler-lab-inspect/1"));
  w.key("model");
  w.value(model.name);
  w.key("points");
  w.begin_array();
  for (const auto& pt : points) {
    w.begin_object();
    w.key("point");
    w.raw(point_fields_json(pt));
    const auto rep = admissibility_report(model, pt);
    w.key("region");
    w.value(std::string(region_name(rep.region)));
    w.key("L");
    w.value(rep.L_value);
    w.key("det_g");
    w.value(rep.det_g);
    if (rep.region == Region::Timelike || rep.region == Region::SpacelikeSigned) {
      const GeometryBundle gb = build_geometry(model, pt, ord, Stage::Full);
      w.key("F");
      w.value(gb.F.value());
      w.key("epsilon");
      w.value(gb.epsilon);
      w.key("R0");
      w.value(gb.R0.value());
      w.key("E");
      w.value(vacuum_scalar_E_jet(gb).value());
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(g, w.str() + "\n");
  return 0;
}

int run_geodesic(const GlobalOpts& g, const std::string& model_path, const std::string& points_path,
                 const std::string& method, double h, double s_end, long max_steps) {
  const FinslerModel model = build_model_from_file(model_path);
  const auto points = load_points(points_path);
  IntegratorConfig cfg;
  cfg.method = (method == "rk45") ? IntegratorConfig::Method::RK45 : IntegratorConfig::Method::RK4;
  cfg.step = h;
  cfg.s_end = s_end;
  cfg.max_steps = max_steps;

  int k = 0;
  for (const auto& pt : points) {
    GeodesicState s0;
    s0.x = pt.x;
    s0.v = pt.v;
    const Trajectory traj = integrate_geodesic(model, s0, cfg);
    CsvWriter csv({"s", "x0", "x1", "x2", "x3", "v0", "v1", "v2", "v3", "L"});
    for (const auto& st : traj.states) {
      csv.row({st.s, st.x[0], st.x[1], st.x[2], st.x[3], st.v[0], st.v[1], st.v[2], st.v[3],
               lagrangian_value(model, st.x, st.v)});
    }
    std::string path = g.out;
    if (points.size() > 1 && g.out != "-") {
      path = g.out + "." + std::to_string(k);
    }
    if (path == "-") std::cout << csv.str();
    else write_file(path, csv.str());
    ++k;
  }
  return 0;
}

int run_fieldeq(const GlobalOpts& g, const std::string& model_path, const std::string& points_path,
                const std::string& gas_path, const std::string& order_text) {
  const FinslerModel model = build_model_from_file(model_path);
  const auto points = load_points(points_path);
  const TruncationOrder ord = order_text.empty() ? TruncationOrder{} : parse_order(order_text);
  const bool with_gas = !gas_path.empty();
  KineticGas gas;
  if (with_gas) gas = gas_from_file(gas_path);

  std::vector<std::string> cols{"x0", "x1", "x2", "x3", "v0", "v1", "v2", "v3", "E"};
  if (with_gas) cols.push_back("residual");
  CsvWriter csv(cols);
  std::vector<std::vector<double>> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto& pt = points[i];
    std::vector<double> row{pt.x[0], pt.x[1], pt.x[2], pt.x[3],
                            pt.v[0], pt.v[1], pt.v[2], pt.v[3]};
    const double E = vacuum_scalar_E(model, pt, ord);
    row.push_back(E);
    if (with_gas) row.push_back(E + gas.kappa_sq * phi_value(model, gas, pt.x, pt.v));
    rows[i] = std::move(row);
  });
  for (const auto& r : rows) csv.row(r);
  emit(g, csv.str());
  return 0;
}

FiberQuadrature parse_quadrature(const std::string& quad_path, double chi_max,
                                 const std::string& orders_text) {
  FiberQuadrature quad;
  if (!quad_path.empty()) {
    std::ifstream in(quad_path);
    if (!in) throw FinslerError(ErrorCode::IOError, "cannot open quadrature config: " + quad_path);
    nlohmann::json j;
    try {
      in >> j;
      quad.chi_max = j.value("chi_max", quad.chi_max);
      if (j.contains("orders"))
        for (int i = 0; i < 3; ++i) quad.orders[static_cast<std::size_t>(i)] = j.at("orders").at(static_cast<std::size_t>(i)).get<int>();
    } catch (const std::exception& e) {
      throw FinslerError(ErrorCode::ConfigError, std::string("quadrature config: ") + e.what());
    }
  }
  if (chi_max > 0) quad.chi_max = chi_max;
  if (!orders_text.empty()) {
    int a, b, c;
    if (std::sscanf(orders_text.c_str(), "%d,%d,%d", &a, &b, &c) != 3)
      throw FinslerError(ErrorCode::ConfigError, "bad --orders, expected n_chi,n_theta,n_phi");
    quad.orders = {a, b, c};
  }
  return quad;
}

int run_emtensor(const GlobalOpts& g, const std::string& model_path, const std::string& gas_path,
                 const std::string& x_text, const std::string& points_path, double chi_max,
                 const std::string& orders_text, const std::string& quad_path) {
  const FinslerModel model = build_model_from_file(model_path);
  const KineticGas gas = gas_from_file(gas_path);
  FiberQuadrature quad = parse_quadrature(quad_path, chi_max, orders_text);
  std::vector<std::array<double, 4>> xs;
  if (!x_text.empty()) xs.push_back(parse_vec4(x_text));
  if (!points_path.empty())
    for (const auto& pt : load_points(points_path)) xs.push_back(pt.x);
  if (xs.empty()) throw FinslerError(ErrorCode::ConfigError, "emtensor needs --x or --points");

  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(std::string("finsler-lab-emtensor/1"));
  w.key("model");
  w.value(model.name);
  w.key("entries");
  w.begin_array();
  for (const auto& x : xs) {
    const EmDensity dens = em_density(model, gas, x, quad);
    const auto cons = averaged_conservation_check(model, gas, x, quad);
    w.begin_object();
    w.key("x");
    w.begin_array();
    for (double c : x) w.value(c);
    w.end_array();
    w.key("T_density");
    w.begin_array();
    for (int i = 0; i < 4; ++i) {
      w.begin_array();
      for (int j = 0; j < 4; ++j) w.value(dens.density[i][j]);
      w.end_array();
    }
    w.end_array();
    if (dens.lorentzian) {
      w.key("T_lorentzian");
      w.begin_array();
      for (int i = 0; i < 4; ++i) {
        w.begin_array();
        for (int j = 0; j < 4; ++j) w.value((*dens.lorentzian)[i][j]);
        w.end_array();
      }
      w.end_array();
    }
    w.key("conservation_integrals");
    w.begin_array();
    for (int i = 0; i < 4; ++i) w.value(cons[static_cast<std::size_t>(i)].value);
    w.end_array();
    w.key("conservation_error_estimates");
    w.begin_array();
    for (int i = 0; i < 4; ++i) w.value(cons[static_cast<std::size_t>(i)].error_estimate);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(g, w.str() + "\n");
  return 0;
}

int run_quadrature(const GlobalOpts& g, const std::string& model_path, const std::string& gas_path,
                   const std::string& x_text, double chi_max, const std::string& orders_text,
                   const std::string& quad_path) {
  const FinslerModel model = build_model_from_file(model_path);
  FiberQuadrature quad = parse_quadrature(quad_path, chi_max, orders_text);
  const auto x = parse_vec4(x_text);

  FiberIntegral result;
  std::string integrand = "unit";
  if (!gas_path.empty()) {
    const KineticGas gas = gas_from_file(gas_path);
    integrand = "phi";
    result = integrate_observer_fiber(
        model, x,
        [&](const std::array<double, 4>& xx, const std::array<double, 4>& vv) {
          return phi_value(model, gas, xx, vv);
        },
        quad);
  } else {
    result = integrate_observer_fiber(
        model, x, [](const std::array<double, 4>&, const std::array<double, 4>&) { return 1.0; },
        quad);
  }
  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(std::string("finsler-lab-quadrature/1"));
  w.key("model");
  w.value(model.name);
  w.key("integrand");
  w.value(integrand);
  w.key("chi_max");
  w.value(quad.chi_max);
  w.key("orders");
  w.begin_array();
  for (int o : quad.orders) w.value(o);
  w.end_array();
  w.key("value");
  w.value(result.value);
  w.key("error_estimate");
  w.value(result.error_estimate);
  w.end_object();
  emit(g, w.str() + "\n");
  return 0;
}

int run_verify(const GlobalOpts& g, const std::string& model_path, int n_points) {
  const FinslerModel model = build_model_from_file(model_path);
  const auto checks = verify_model_suite(model, n_points, g.seed);
  if (checks.empty()) throw FinslerError(ErrorCode::ConfigError, "no checks produced");
  emit(g, checks_to_json(checks, g.seed));
  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.pass;
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finsler-lab: numerical laboratory for Finsler spacetime geometry"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  if (const char* env = std::getenv("FINSLER_LAB_THREADS")) g.threads = std::atoi(env);
  app.add_option("--out", g.out, "output path ('-' = stdout)");
  app.add_option("--format", g.format, "json|csv (subcommands pick their native format)");
  app.add_option("--seed", g.seed, "random seed for sampled checks");
  app.add_option("--threads", g.threads, "worker threads (0 = library default)");

  std::string model_path, points_path, gas_path, order_text, x_text, orders_text, quad_path;
  std::string method = "rk4";
  double h = 0.01, s_end = 10.0, chi_max = 0.0;
  long max_steps = 1000000;
  int n_points = 100;

  auto* inspect = app.add_subcommand("inspect", "geometry bundle scalars at points");
  inspect->add_option("--model", model_path)->required();
  inspect->add_option("--points", points_path)->required();
  inspect->add_option("--order", order_text);

  auto* geodesic = app.add_subcommand("geodesic", "integrate geodesics from the given states");
  geodesic->add_option("--model", model_path)->required();
  geodesic->add_option("--points", points_path)->required();
  geodesic->add_option("--method", method, "rk4|rk45");
  geodesic->add_option("--step", h, "step size");
  geodesic->add_option("--s-end", s_end, "parameter length");
  geodesic->add_option("--max-steps", max_steps);

  auto* fieldeq = app.add_subcommand("fieldeq", "vacuum scalar E (and sourced residual)");
  fieldeq->add_option("--model", model_path)->required();
  fieldeq->add_option("--points", points_path)->required();
  fieldeq->add_option("--gas", gas_path);
  fieldeq->add_option("--order", order_text);

  auto* emtensor = app.add_subcommand("emtensor", "energy-momentum density and conservation integrals");
  emtensor->add_option("--model", model_path)->required();
  emtensor->add_option("--gas", gas_path)->required();
  emtensor->add_option("--x", x_text, "base point t,r,theta,phi");
  emtensor->add_option("--points", points_path);
  emtensor->add_option("--chi-max", chi_max);
  emtensor->add_option("--orders", orders_text, "n_chi,n_theta,n_phi");
  emtensor->add_option("--quad", quad_path, "quadrature config JSON {chi_max, orders}");

  auto* quadrature = app.add_subcommand("quadrature", "observer-fiber integrals");
  quadrature->add_option("--model", model_path)->required();
  quadrature->add_option("--x", x_text)->required();
  quadrature->add_option("--gas", gas_path);
  quadrature->add_option("--chi-max", chi_max);
  quadrature->add_option("--orders", orders_text);
  quadrature->add_option("--quad", quad_path, "quadrature config JSON {chi_max, orders}");

  auto* verify = app.add_subcommand("verify", "full check-report suite for a model");
  verify->add_option("--model", model_path)->required();
  verify->add_option("--points-n", n_points, "number of sampled points");

  CLI11_PARSE(app, argc, argv);
  finsler::set_threads(g.threads);

  try {
    if (inspect->parsed()) return run_inspect(g, model_path, points_path, order_text);
    if (geodesic->parsed()) return run_geodesic(g, model_path, points_path, method, h, s_end, max_steps);
    if (fieldeq->parsed()) return run_fieldeq(g, model_path, points_path, gas_path, order_text);
    if (emtensor->parsed())
      return run_emtensor(g, model_path, gas_path, x_text, points_path, chi_max, orders_text, quad_path);
    if (quadrature->parsed())
      return run_quadrature(g, model_path, gas_path, x_text, chi_max, orders_text, quad_path);
    if (verify->parsed()) return run_verify(g, model_path, n_points);
  } catch (const finsler::FinslerError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case finsler::ErrorCode::ConfigError:
      case finsler::ErrorCode::IOError:
      case finsler::ErrorCode::InvalidParameter:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
