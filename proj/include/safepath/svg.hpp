#pragma once
/**
 * @file  svg.hpp
 * @brief Deterministic SVG rendering of trace steps: environment, obstacles,
 *        safe-zone outlines, robot, planned target and the path so far.
 *
 * Output bytes are a pure function of the trace (fixed-precision number
 * formatting, fixed element order), so renders are reproducible.
 */

#include "safepath/simulation.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace safepath::sim {

namespace detail {

class SvgWriter {
  public:
    SvgWriter(geometry::EuclidPoint lo, geometry::EuclidPoint hi, double width_px = 800.0)
        : lo_(lo), hi_(hi) {
        scale_ = width_px / (hi.x - lo.x);
        width_ = width_px;
        height_ = (hi.y - lo.y) * scale_;
    }

    std::string header() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
               fmt(width_) + "\" height=\"" + fmt(height_) + "\" viewBox=\"0 0 " + fmt(width_) +
               " " + fmt(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    }
    static std::string footer() { return "</svg>\n"; }

    std::string polygon(const std::vector<geometry::EuclidPoint>& ring, const std::string& fill,
                        const std::string& stroke, double stroke_w,
                        double fill_opacity = 1.0) const {
        std::string s = "<polygon points=\"";
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (i) s += ' ';
            s += pt(ring[i]);
        }
        s += "\" fill=\"" + fill + "\" fill-opacity=\"" + fmt(fill_opacity) + "\" stroke=\"" +
             stroke + "\" stroke-width=\"" + fmt(stroke_w) + "\"/>\n";
        return s;
    }

    std::string polyline(const std::vector<geometry::EuclidPoint>& pts, const std::string& stroke,
                         double stroke_w) const {
        if (pts.size() < 2) return {};
        std::string s = "<polyline points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) s += ' ';
            s += pt(pts[i]);
        }
        s += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(stroke_w) +
             "\"/>\n";
        return s;
    }

    std::string circle(geometry::EuclidPoint c, double r_px, const std::string& fill) const {
        const auto [x, y] = map(c);
        return "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r_px) +
               "\" fill=\"" + fill + "\"/>\n";
    }

    std::string cross(geometry::EuclidPoint c, double arm_px, const std::string& stroke) const {
        const auto [x, y] = map(c);
        return "<path d=\"M " + fmt(x - arm_px) + " " + fmt(y) + " L " + fmt(x + arm_px) + " " +
               fmt(y) + " M " + fmt(x) + " " + fmt(y - arm_px) + " L " + fmt(x) + " " +
               fmt(y + arm_px) + "\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
    }

    std::pair<double, double> map(geometry::EuclidPoint p) const {
        return {(p.x - lo_.x) * scale_, height_ - (p.y - lo_.y) * scale_};
    }

  private:
    static std::string fmt(double v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.4f", v);
        return buf;
    }
    std::string pt(geometry::EuclidPoint p) const {
        const auto [x, y] = map(p);
        return fmt(x) + "," + fmt(y);
    }

    geometry::EuclidPoint lo_, hi_;
    double scale_ = 1.0, width_ = 0.0, height_ = 0.0;
};

} // namespace detail

/// Render one step of a trace as an SVG document (string).
inline std::string render_step_svg(const Trace& tr, std::size_t step_index) {
    if (step_index >= tr.steps.size())
        throw std::out_of_range("render: step index beyond trace");
    const auto& sc = tr.scenario;
    const auto& step = tr.steps[step_index];
    detail::SvgWriter w(sc.env_lo, sc.env_hi);

    std::string out = w.header();
    // environment border
    out += w.polygon({{sc.env_lo.x, sc.env_lo.y},
                      {sc.env_hi.x, sc.env_lo.y},
                      {sc.env_hi.x, sc.env_hi.y},
                      {sc.env_lo.x, sc.env_hi.y}},
                     "none", "#222222", 2.0);
    // static obstacles
    for (const auto& s : sc.statics)
        out += w.polygon(s.shape.build().placed_at(s.position), "#555555", "#333333", 1.0);
    // safe-zone union outline
    for (const auto& ring : step.safe_zones)
        out += w.polygon(ring, "#cc3333", "#cc3333", 1.0, 0.12);
    // shortest path (static) faint, then path so far
    out += w.polyline(tr.shortest_path_points, "#bbbbbb", 1.0);
    std::vector<geometry::EuclidPoint> so_far;
    for (std::size_t i = 0; i <= step_index; ++i) so_far.push_back(tr.steps[i].robot_position);
    out += w.polyline(so_far, "#0066cc", 1.5);
    // objects
    for (const auto& o : step.objects) {
        const auto* spec = [&]() -> const ObjectSpec* {
            for (const auto& os : sc.objects)
                if (os.id == o.id) return &os;
            return nullptr;
        }();
        if (!spec) continue;
        const std::string fill = spec->deterministic() ? "#2a9d54" : "#8844cc";
        out += w.polygon(spec->shape.build().placed_at(o.position), fill, "#115522", 1.0, 0.85);
    }
    // goal, planned target, robot
    out += w.cross(sc.robot.goal, 6.0, "#dd8800");
    out += w.cross(step.plan.target, 4.0, "#ff3399");
    if (sc.robot.shape)
        out += w.polygon(sc.robot.shape->build().placed_at(step.robot_position), "#0066cc",
                         "#003366", 1.0, 0.9);
    else
        out += w.circle(step.robot_position, 3.5, "#0066cc");
    out += detail::SvgWriter::footer();
    return out;
}

/// Render a step range [from, to] into out_dir/step_NNNN.svg files.
/// Returns the written file paths in order.
inline std::vector<std::string> render_svg(const Trace& tr, std::size_t from, std::size_t to,
                                           const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (from > to || to >= tr.steps.size())
        throw std::out_of_range("render: bad step range");
    fs::create_directories(out_dir);
    std::vector<std::string> files;
    for (std::size_t i = from; i <= to; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "step_%04zu.svg", i);
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("render: cannot write " + path.string());
        f << render_step_svg(tr, i);
        files.push_back(path.string());
    }
    return files;
}

} // namespace safepath::sim
