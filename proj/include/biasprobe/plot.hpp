#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace biasprobe::plot {

struct Color {
  std::uint8_t r = 0, g = 0, b = 0;
  std::string hex() const;
  friend bool operator==(const Color&, const Color&) = default;
};

inline constexpr Color kBlack{0, 0, 0};
inline constexpr Color kWhite{255, 255, 255};
inline constexpr Color kGray{200, 200, 200};
inline constexpr Color kBlue{31, 119, 180};
inline constexpr Color kOrange{255, 127, 14};
inline constexpr Color kGreen{44, 160, 44};
inline constexpr Color kRed{214, 39, 40};

/// Cycles through a fixed qualitative palette.
Color palette(std::size_t i);

struct Point {
  double x = 0, y = 0;
};

struct Line {
  Point a, b;
  Color color;
  double width = 1.0;
};

struct Polyline {
  std::vector<Point> points;
  Color color;
  double width = 1.5;
};

struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
  Color fill;
  double opacity = 1.0;
};

struct Circle {
  Point center;
  double radius = 2.0;
  Color fill;
  double opacity = 1.0;
};

/// An 'x' marker.
struct Cross {
  Point center;
  double size = 6.0;
  Color color;
  double width = 2.0;
};

enum class Anchor { kStart, kMiddle, kEnd };

struct Text {
  Point at;
  std::string text;
  double size = 11.0;
  Anchor anchor = Anchor::kStart;
  double rotate = 0.0;  // degrees
};

using Shape = std::variant<Line, Polyline, Rect, Circle, Cross, Text>;

/// Retained-mode drawing surface in pixel coordinates (origin top-left).
/// Renders to SVG, or to PNG without text.
class Canvas {
 public:
  Canvas(int width, int height) : width_(width), height_(height) {}

  int width() const { return width_; }
  int height() const { return height_; }

  template <typename S>
  void add(S shape) {
    shapes_.emplace_back(std::move(shape));
  }

  const std::vector<Shape>& shapes() const { return shapes_; }

  std::string to_svg() const;

  /// Rasterizes into packed RGB rows.
  std::vector<std::uint8_t> rasterize() const;

  void write_svg(const std::filesystem::path& path) const;
  void write_png(const std::filesystem::path& path) const;

 private:
  int width_, height_;
  std::vector<Shape> shapes_;
};

/// Linear mapping from a data interval onto a pixel interval.
struct Scale {
  double d0 = 0, d1 = 1, p0 = 0, p1 = 1;
  double operator()(double v) const {
    if (d1 == d0) return (p0 + p1) / 2;
    return p0 + (v - d0) / (d1 - d0) * (p1 - p0);
  }
};

/// Draws a frame with ticks and labels for the given scales.
void draw_axes(Canvas& c, const Scale& x, const Scale& y, const std::string& x_label,
               const std::string& y_label, int ticks = 5);

std::string format_tick(double v);

}  // namespace biasprobe::plot
