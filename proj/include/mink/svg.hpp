#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "mink/json_io.hpp"

namespace mink {

/// Renders 2D space-time scenes (the x1-t section) to SVG for documentation
/// figures. Scene files list shells, hyperboloids, cones, lines and points
/// with float64 coordinates.
class SvgScene {
 public:
  SvgScene(double x_min, double x_max, double t_min, double t_max,
           int width = 640, int height = 640)
      : x_min_(x_min), x_max_(x_max), t_min_(t_min), t_max_(t_max),
        width_(width), height_(height) {}

  void add_polyline(const std::vector<std::pair<double, double>>& pts,
                    const std::string& color) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, t] : pts) os << px(x) << "," << py(t) << " ";
    os << "\"/>";
    body_.push_back(os.str());
  }

  void add_segment(double x0, double t0, double x1, double t1,
                   const std::string& color) {
    std::ostringstream os;
    os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(t0) << "\" x2=\""
       << px(x1) << "\" y2=\"" << py(t1) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"/>";
    body_.push_back(os.str());
  }

  void add_point(double x, double t, const std::string& color) {
    std::ostringstream os;
    os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(t)
       << "\" r=\"3\" fill=\"" << color << "\"/>";
    body_.push_back(os.str());
  }

  /// Branch of Q(p - c) = r^2 in the x1-t section, one orientation.
  void add_shell_branch(double cx, double ct, double r, bool forward,
                        const std::string& color) {
    std::vector<std::pair<double, double>> pts;
    const int samples = 160;
    for (int i = 0; i <= samples; ++i) {
      double x = x_min_ + (x_max_ - x_min_) * i / samples;
      double dx = x - cx;
      double t = std::sqrt(r * r + dx * dx);
      pts.emplace_back(x, forward ? ct + t : ct - t);
    }
    add_polyline(pts, color);
  }

  void add_cone(double cx, double ct, const std::string& color) {
    double reach = std::max(std::abs(x_max_ - cx), std::abs(x_min_ - cx)) +
                   std::abs(t_max_ - t_min_);
    add_segment(cx - reach, ct - reach, cx + reach, ct + reach, color);
    add_segment(cx - reach, ct + reach, cx + reach, ct - reach, color);
  }

  void add_line(double bx, double bt, double dx, double dt,
                const std::string& color) {
    double span = (x_max_ - x_min_) + (t_max_ - t_min_);
    double norm = std::hypot(dx, dt);
    if (norm == 0) return;
    dx /= norm;
    dt /= norm;
    add_segment(bx - span * dx, bt - span * dt, bx + span * dx,
                bt + span * dt, color);
  }

  std::string str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
       << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << " "
       << height_ << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"" << px(x_min_) << "\" y1=\"" << py(0) << "\" x2=\""
       << px(x_max_) << "\" y2=\"" << py(0)
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(t_min_) << "\" x2=\""
       << px(0) << "\" y2=\"" << py(t_max_)
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (const auto& el : body_) os << el << "\n";
    os << "</svg>\n";
    return os.str();
  }

 private:
  double px(double x) const {
    return (x - x_min_) / (x_max_ - x_min_) * width_;
  }
  double py(double t) const {
    return height_ - (t - t_min_) / (t_max_ - t_min_) * height_;
  }

  double x_min_, x_max_, t_min_, t_max_;
  int width_, height_;
  std::vector<std::string> body_;
};

/// Renders a scene JSON document. Items with more than one space dimension
/// are projected onto the x1-t section.
inline std::string render_scene(const json& scene) {
  auto range = [&](const char* key, double dflt_lo,
                   double dflt_hi) -> std::pair<double, double> {
    if (!scene.contains(key)) return {dflt_lo, dflt_hi};
    return {scene[key][0].get<double>(), scene[key][1].get<double>()};
  };
  auto [x_lo, x_hi] = range("x_range", -5.0, 5.0);
  auto [t_lo, t_hi] = range("t_range", -5.0, 5.0);
  SvgScene svg(x_lo, x_hi, t_lo, t_hi, scene.value("width", 640),
               scene.value("height", 640));
  if (!scene.contains("items") || !scene["items"].is_array())
    fail(Errc::parse_error, "scene needs an \"items\" array");
  for (const auto& item : scene["items"]) {
    std::string kind = item.value("kind", std::string());
    std::string color = item.value("color", std::string("#1f4f9f"));
    auto coord = [&](const json& arr, size_t i) {
      return i < arr.size() ? scalar_from_json<double>(arr[i]) : 0.0;
    };
    if (kind == "shell" || kind == "hyperboloid") {
      const json& c = item.at("center");
      double r = scalar_from_json<double>(item.at("radius"));
      double ct = coord(c, 0), cx = coord(c, 1);
      if (kind == "hyperboloid") {
        svg.add_shell_branch(cx, ct, r, true, color);
        svg.add_shell_branch(cx, ct, r, false, color);
      } else {
        bool fwd = item.value("orientation", std::string("forward")) ==
                   "forward";
        svg.add_shell_branch(cx, ct, r, fwd, color);
      }
    } else if (kind == "cone") {
      const json& c = item.at("apex");
      svg.add_cone(coord(c, 1), coord(c, 0), color);
    } else if (kind == "line") {
      const json& b = item.at("base");
      const json& d = item.at("direction");
      svg.add_line(coord(b, 1), coord(b, 0), coord(d, 1), coord(d, 0), color);
    } else if (kind == "point") {
      const json& p = item.at("at");
      svg.add_point(coord(p, 1), coord(p, 0), color);
    } else {
      fail(Errc::parse_error, "unknown scene item kind '" + kind + "'");
    }
  }
  return svg.str();
}

}  // namespace mink
