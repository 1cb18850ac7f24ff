#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <set>

namespace skop::cli {

namespace pt = boost::property_tree;

void RunConfig::validate() const {
  require(ball_radius > 0.0, "ball_radius must be positive");
  require(format == "json" || format == "csv", "format must be json or csv");
  require(threads >= 0, "threads must be nonnegative");
  if (schedule.delta_max > 0.0) {
    schedule.validate();
  } else {
    RegularizationSchedule probe = schedule;
    probe.delta_max = 1.0;
    probe.validate();
  }
  quad.validate();
}

std::string curve_descriptor_from_fields(const std::string& kind, const std::optional<int>& r,
                                         const std::optional<int>& s, const std::string& gamma1,
                                         const std::string& gamma2, const std::string& defining) {
  if (kind == "cusp") {
    require(r && s, "[curve] kind = cusp needs r and s");
    return "cusp:" + std::to_string(*r) + "," + std::to_string(*s);
  }
  if (kind == "map") {
    require(!gamma1.empty() && !gamma2.empty(), "[curve] kind = map needs gamma1 and gamma2");
    return "map:" + gamma1 + "," + gamma2;
  }
  if (kind == "implicit") {
    require(!defining.empty(), "[curve] kind = implicit needs defining");
    return "implicit:" + defining;
  }
  if (kind == "disc") return "disc";
  fail(ErrorKind::InvalidInput, "[curve] kind must be cusp, map, implicit or disc");
}

void load_config(const std::string& path, RunConfig& config) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::InvalidInput, std::string("config: ") + e.what());
  }
  static const std::set<std::string> known{
      "curve.kind",          "curve.r",
      "curve.s",             "curve.gamma1",
      "curve.gamma2",        "curve.defining",
      "curve.ball_radius",   "regularization.delta_max",
      "regularization.ratio", "regularization.count",
      "regularization.extrapolation_order", "quadrature.radial_points",
      "quadrature.angular_points", "quadrature.tol",
      "output.path",         "output.format",
      "output.plot",         "run.threads"};
  for (const auto& [section, body] : tree) {
    require(!body.empty() || body.data().empty(), "config: top-level keys must live in a section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      require(known.contains(full), "config: unknown key '" + full + "'");
    }
  }
  try {
    if (auto kind = tree.get_optional<std::string>("curve.kind")) {
      config.curve = curve_descriptor_from_fields(
          *kind, tree.get_optional<int>("curve.r") ? std::optional<int>(tree.get<int>("curve.r")) : std::nullopt,
          tree.get_optional<int>("curve.s") ? std::optional<int>(tree.get<int>("curve.s")) : std::nullopt,
          tree.get<std::string>("curve.gamma1", ""), tree.get<std::string>("curve.gamma2", ""),
          tree.get<std::string>("curve.defining", ""));
    }
    config.ball_radius = tree.get<double>("curve.ball_radius", config.ball_radius);
    config.schedule.delta_max = tree.get<double>("regularization.delta_max", config.schedule.delta_max);
    config.schedule.ratio = tree.get<double>("regularization.ratio", config.schedule.ratio);
    config.schedule.count = tree.get<int>("regularization.count", config.schedule.count);
    config.schedule.extrapolation_order =
        tree.get<int>("regularization.extrapolation_order", config.schedule.extrapolation_order);
    config.quad.radial_points = tree.get<int>("quadrature.radial_points", config.quad.radial_points);
    config.quad.angular_points = tree.get<int>("quadrature.angular_points", config.quad.angular_points);
    config.quad.adaptive_tolerance = tree.get<double>("quadrature.tol", config.quad.adaptive_tolerance);
    config.output_path = tree.get<std::string>("output.path", config.output_path);
    config.format = tree.get<std::string>("output.format", config.format);
    config.plot_path = tree.get<std::string>("output.plot", config.plot_path);
    config.threads = tree.get<int>("run.threads", config.threads);
  } catch (const pt::ptree_bad_data& e) {
    fail(ErrorKind::InvalidInput, std::string("config: bad value: ") + e.what());
  }
}

Geometry make_geometry(const RunConfig& config, KernelRole role) {
  Geometry g;
  const std::string& d = config.curve;
  if (d == "disc" || d.rfind("disc:", 0) == 0) {
    double radius = config.ball_radius;
    if (d.size() > 5) {
      try {
        radius = std::stod(d.substr(5));
      } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidInput, "disc descriptor must be disc or disc:R");
      }
    }
    require(radius > 0.0, "disc radius must be positive");
    g.kernel = smooth_disc_kernel(radius, WeightSpec::for_ball(radius, 1), role);
    g.disc_radius = radius;
    return g;
  }
  g.curve = parse_curve(d, config.ball_radius);
  g.kernel = curve_kernel_assemble(*g.curve, WeightSpec::for_ball(config.ball_radius), role);
  g.disc_radius = g.kernel.disc_radius();
  return g;
}

RegularizationSchedule effective_schedule(const RunConfig& config, double disc_radius) {
  RegularizationSchedule s = config.schedule;
  if (s.delta_max <= 0.0) s.delta_max = RegularizationSchedule::for_disc(disc_radius).delta_max;
  s.validate();
  return s;
}

}  // namespace skop::cli
