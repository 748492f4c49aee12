#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "flexswim/app.hpp"

namespace flexswim::app {

namespace {

std::string chars(double v, std::chars_format fmt, int precision) {
  std::array<char, 64> buf{};
  const auto res = precision < 0 ? std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt)
                                 : std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt, precision);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), res.ptr);
}

struct Series {
  const char* name;
  const char* color;
  std::vector<double> values;
};

struct Panel {
  const char* title;
  const char* y_label;
  std::vector<Series> series;
};

constexpr double kWidth = 960.0;
constexpr double kHeight = 720.0;
constexpr double kPanelW = kWidth / 2.0;
constexpr double kPanelH = kHeight / 2.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string px(double v) { return chars(v, std::chars_format::fixed, 2); }

void render_panel(std::string& out, const Panel& panel, const std::vector<double>& t, double ox,
                  double oy, char tag) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& s : panel.series) {
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(hi > lo)) {
    const double pad = std::abs(lo) > 0.0 ? 0.1 * std::abs(lo) : 1.0;
    lo -= pad;
    hi += pad;
  }
  const double t0 = t.front();
  const double t1 = t.back() > t0 ? t.back() : t0 + 1.0;
  const double w = kPanelW - kLeft - kRight;
  const double h = kPanelH - kTop - kBottom;
  auto X = [&](double tv) { return ox + kLeft + (tv - t0) / (t1 - t0) * w; };
  auto Y = [&](double v) { return oy + kTop + (hi - v) / (hi - lo) * h; };

  out += "<g id=\"panel-";
  out += tag;
  out += "\">\n";
  out += "<text x=\"" + px(ox + kLeft) + "\" y=\"" + px(oy + 24.0) + "\" font-size=\"14\">(" + tag +
         ") " + panel.title + "</text>\n";
  out += "<rect x=\"" + px(ox + kLeft) + "\" y=\"" + px(oy + kTop) + "\" width=\"" + px(w) +
         "\" height=\"" + px(h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto label = [&](double x, double y, const std::string& text, const char* anchor) {
    out += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-size=\"11\" text-anchor=\"" + anchor +
           "\">" + text + "</text>\n";
  };
  label(ox + kLeft - 6.0, oy + kTop + 4.0, format_short(hi), "end");
  label(ox + kLeft - 6.0, oy + kTop + h, format_short(lo), "end");
  label(ox + kLeft, oy + kTop + h + 16.0, format_short(t0), "middle");
  label(ox + kLeft + w, oy + kTop + h + 16.0, format_short(t1), "middle");
  label(ox + kLeft + 0.5 * w, oy + kTop + h + 34.0, "time [s]", "middle");
  label(ox + 16.0, oy + kTop + 0.5 * h, panel.y_label, "start");

  double legend_y = oy + kTop + 14.0;
  for (const auto& s : panel.series) {
    out += "<polyline id=\"" + std::string(s.name) + "\" fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += ' ';
      out += px(X(t[i]));
      out += ',';
      out += px(Y(s.values[i]));
    }
    out += "\"/>\n";
    out += "<text x=\"" + px(ox + kLeft + w - 6.0) + "\" y=\"" + px(legend_y) +
           "\" font-size=\"11\" text-anchor=\"end\" fill=\"" + s.color + "\">" + s.name + "</text>\n";
    legend_y += 14.0;
  }
  out += "</g>\n";
}

}  // namespace

std::string format_number(double v) { return chars(v, std::chars_format::general, 17); }

std::string format_short(double v) { return chars(v, std::chars_format::general, -1); }

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,v0x,v0y,omega0,x,y,theta,theta_unwrapped\n";
  for (const auto& s : traj.samples) {
    for (double v : {s.t, s.xi.v0x, s.xi.v0y, s.xi.omega0, s.pose.x, s.pose.y, s.pose.theta,
                     s.theta_unwrapped}) {
      out += format_number(v);
      out += ',';
    }
    out.back() = '\n';
  }
  return out;
}

std::string snapshot_csv(const ShapeState& state, const Pose& pose) {
  std::string out = "s,x_head,y_head,x_world,y_world,x_native,y_native\n";
  const auto world = reconstruct_world(state.curve, pose);
  const Mat2 to_native = rotation(state.frame_angle);
  const auto& smp = state.curve.samples();
  for (std::size_t i = 0; i < smp.size(); ++i) {
    const Vec2 native = to_native * smp[i].r;
    for (double v : {smp[i].s, smp[i].r.x(), smp[i].r.y(), world[i].x(), world[i].y(), native.x(),
                     native.y()}) {
      out += format_number(v);
      out += ',';
    }
    out.back() = '\n';
  }
  return out;
}

std::string plots_svg(const Trajectory& traj) {
  std::vector<double> t;
  Series vx{"v0x", "#1f77b4", {}}, vy{"v0y", "#d62728", {}};
  Series px_{"x", "#1f77b4", {}}, py_{"y", "#d62728", {}};
  Series om{"omega0", "#2ca02c", {}}, th{"theta_unwrapped", "#9467bd", {}};
  for (const auto& s : traj.samples) {
    t.push_back(s.t);
    vx.values.push_back(s.xi.v0x);
    vy.values.push_back(s.xi.v0y);
    px_.values.push_back(s.pose.x);
    py_.values.push_back(s.pose.y);
    om.values.push_back(s.xi.omega0);
    th.values.push_back(s.theta_unwrapped);
  }
  if (t.empty()) throw std::invalid_argument("cannot plot an empty trajectory");
  const std::array<Panel, 4> panels{
      Panel{"translational velocity", "v", {vx, vy}},
      Panel{"translational position", "position", {px_, py_}},
      Panel{"rotational velocity", "omega", {om}},
      Panel{"rotational position", "theta [rad]", {th}},
  };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"720\" viewBox=\"0 0 960 720\">\n";
  out += "<rect width=\"960\" height=\"720\" fill=\"white\"/>\n";
  const char tags[] = {'a', 'b', 'c', 'd'};
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const double ox = (k % 2) * kPanelW;
    const double oy = static_cast<double>(k / 2) * kPanelH;
    render_panel(out, panels[k], t, ox, oy, tags[k]);
  }
  out += "</svg>\n";
  return out;
}

void write_artifacts(const std::string& dir, const Artifacts& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : files) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
  }
}

}  // namespace flexswim::app
