#include "biasprobe/plot.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "biasprobe/error.hpp"
#include "biasprobe/io.hpp"

namespace biasprobe::plot {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string_view anchor_name(Anchor a) {
  switch (a) {
    case Anchor::kStart: return "start";
    case Anchor::kMiddle: return "middle";
    case Anchor::kEnd: return "end";
  }
  return "start";
}

class Raster {
 public:
  Raster(int w, int h) : w_(w), h_(h), px_(static_cast<std::size_t>(w) * h * 3, 255) {}

  void blend(int x, int y, Color c, double alpha) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
    auto* p = &px_[(static_cast<std::size_t>(y) * w_ + x) * 3];
    const std::uint8_t rgb[3] = {c.r, c.g, c.b};
    for (int i = 0; i < 3; ++i) {
      p[i] = static_cast<std::uint8_t>(std::lround(p[i] * (1.0 - alpha) + rgb[i] * alpha));
    }
  }

  void fill_rect(double x, double y, double w, double h, Color c, double alpha) {
    const int x0 = static_cast<int>(std::floor(x)), x1 = static_cast<int>(std::ceil(x + w));
    const int y0 = static_cast<int>(std::floor(y)), y1 = static_cast<int>(std::ceil(y + h));
    for (int yy = y0; yy < y1; ++yy)
      for (int xx = x0; xx < x1; ++xx) blend(xx, yy, c, alpha);
  }

  void fill_disc(Point center, double r, Color c, double alpha) {
    const int x0 = static_cast<int>(std::floor(center.x - r));
    const int x1 = static_cast<int>(std::ceil(center.x + r));
    const int y0 = static_cast<int>(std::floor(center.y - r));
    const int y1 = static_cast<int>(std::ceil(center.y + r));
    for (int yy = y0; yy <= y1; ++yy) {
      for (int xx = x0; xx <= x1; ++xx) {
        const double dx = xx + 0.5 - center.x, dy = yy + 0.5 - center.y;
        if (dx * dx + dy * dy <= r * r) blend(xx, yy, c, alpha);
      }
    }
  }

  void stroke(Point a, Point b, double width, Color c) {
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int steps = std::max(1, static_cast<int>(std::ceil(len * 2)));
    const double r = std::max(0.5, width / 2);
    for (int i = 0; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      const Point p{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
      const int x0 = static_cast<int>(std::floor(p.x - r)), x1 = static_cast<int>(std::floor(p.x + r));
      const int y0 = static_cast<int>(std::floor(p.y - r)), y1 = static_cast<int>(std::floor(p.y + r));
      for (int yy = y0; yy <= y1; ++yy)
        for (int xx = x0; xx <= x1; ++xx) set(xx, yy, c);
    }
  }

  std::vector<std::uint8_t> take() { return std::move(px_); }

 private:
  void set(int x, int y, Color c) { blend(x, y, c, 1.0); }

  int w_, h_;
  std::vector<std::uint8_t> px_;
};

}  // namespace

std::string Color::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

Color palette(std::size_t i) {
  static constexpr Color kColors[] = {kBlue, kOrange, kGreen, kRed, {148, 103, 189},
                                      {140, 86, 75}, {227, 119, 194}, {127, 127, 127}};
  return kColors[i % std::size(kColors)];
}

std::string Canvas::to_svg() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_
      << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width_ << "\" height=\"" << height_
      << "\" fill=\"#ffffff\"/>\n";
  for (const auto& shape : shapes_) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Line>) {
            out << "<line x1=\"" << num(s.a.x) << "\" y1=\"" << num(s.a.y) << "\" x2=\""
                << num(s.b.x) << "\" y2=\"" << num(s.b.y) << "\" stroke=\"" << s.color.hex()
                << "\" stroke-width=\"" << num(s.width) << "\"/>\n";
          } else if constexpr (std::is_same_v<T, Polyline>) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color.hex() << "\" stroke-width=\""
                << num(s.width) << "\" points=\"";
            for (std::size_t i = 0; i < s.points.size(); ++i) {
              if (i) out << ' ';
              out << num(s.points[i].x) << ',' << num(s.points[i].y);
            }
            out << "\"/>\n";
          } else if constexpr (std::is_same_v<T, Rect>) {
            out << "<rect x=\"" << num(s.x) << "\" y=\"" << num(s.y) << "\" width=\"" << num(s.w)
                << "\" height=\"" << num(s.h) << "\" fill=\"" << s.fill.hex() << '"';
            if (s.opacity < 1.0) out << " fill-opacity=\"" << num(s.opacity) << '"';
            out << "/>\n";
          } else if constexpr (std::is_same_v<T, Circle>) {
            out << "<circle cx=\"" << num(s.center.x) << "\" cy=\"" << num(s.center.y)
                << "\" r=\"" << num(s.radius) << "\" fill=\"" << s.fill.hex() << '"';
            if (s.opacity < 1.0) out << " fill-opacity=\"" << num(s.opacity) << '"';
            out << "/>\n";
          } else if constexpr (std::is_same_v<T, Cross>) {
            const double h = s.size / 2;
            out << "<path d=\"M" << num(s.center.x - h) << ' ' << num(s.center.y - h) << " L"
                << num(s.center.x + h) << ' ' << num(s.center.y + h) << " M"
                << num(s.center.x - h) << ' ' << num(s.center.y + h) << " L"
                << num(s.center.x + h) << ' ' << num(s.center.y - h) << "\" stroke=\""
                << s.color.hex() << "\" stroke-width=\"" << num(s.width) << "\"/>\n";
          } else if constexpr (std::is_same_v<T, Text>) {
            out << "<text x=\"" << num(s.at.x) << "\" y=\"" << num(s.at.y)
                << "\" font-family=\"sans-serif\" font-size=\"" << num(s.size)
                << "\" text-anchor=\"" << anchor_name(s.anchor) << '"';
            if (s.rotate != 0.0) {
              out << " transform=\"rotate(" << num(s.rotate) << ' ' << num(s.at.x) << ' '
                  << num(s.at.y) << ")\"";
            }
            out << '>' << escape(s.text) << "</text>\n";
          }
        },
        shape);
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::uint8_t> Canvas::rasterize() const {
  Raster r(width_, height_);
  for (const auto& shape : shapes_) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Line>) {
            r.stroke(s.a, s.b, s.width, s.color);
          } else if constexpr (std::is_same_v<T, Polyline>) {
            for (std::size_t i = 1; i < s.points.size(); ++i) {
              r.stroke(s.points[i - 1], s.points[i], s.width, s.color);
            }
          } else if constexpr (std::is_same_v<T, Rect>) {
            r.fill_rect(s.x, s.y, s.w, s.h, s.fill, s.opacity);
          } else if constexpr (std::is_same_v<T, Circle>) {
            r.fill_disc(s.center, s.radius, s.fill, s.opacity);
          } else if constexpr (std::is_same_v<T, Cross>) {
            const double h = s.size / 2;
            r.stroke({s.center.x - h, s.center.y - h}, {s.center.x + h, s.center.y + h}, s.width,
                     s.color);
            r.stroke({s.center.x - h, s.center.y + h}, {s.center.x + h, s.center.y - h}, s.width,
                     s.color);
          }
        },
        shape);
  }
  return r.take();
}

void Canvas::write_svg(const std::filesystem::path& path) const {
  write_file_atomic(path, to_svg());
}

void Canvas::write_png(const std::filesystem::path& path) const {
  const auto pixels = rasterize();
  std::string encoded;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("libpng: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("libpng: encoding failed for " + path.string());
  }
  png_set_write_fn(
      png, &encoded,
      [](png_structp p, png_bytep data, png_size_t len) {
        static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<char*>(data), len);
      },
      nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width_), static_cast<png_uint_32>(height_), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height_; ++y) {
    png_write_row(png, const_cast<png_bytep>(&pixels[static_cast<std::size_t>(y) * width_ * 3]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  write_file_atomic(path, encoded);
}

std::string format_tick(double v) {
  char buf[32];
  const double a = std::fabs(v);
  if (a != 0.0 && (a >= 1e5 || a < 1e-3)) {
    std::snprintf(buf, sizeof buf, "%.1e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.3g", v);
  }
  return buf;
}

void draw_axes(Canvas& c, const Scale& x, const Scale& y, const std::string& x_label,
               const std::string& y_label, int ticks) {
  const double left = std::min(x.p0, x.p1), right = std::max(x.p0, x.p1);
  const double top = std::min(y.p0, y.p1), bottom = std::max(y.p0, y.p1);
  c.add(Line{{left, bottom}, {right, bottom}, kBlack, 1.0});
  c.add(Line{{left, top}, {left, bottom}, kBlack, 1.0});
  for (int i = 0; i <= ticks; ++i) {
    const double xv = x.d0 + (x.d1 - x.d0) * i / ticks;
    const double px = x(xv);
    c.add(Line{{px, bottom}, {px, bottom + 4}, kBlack, 1.0});
    c.add(Text{{px, bottom + 16}, format_tick(xv), 10.0, Anchor::kMiddle});
    const double yv = y.d0 + (y.d1 - y.d0) * i / ticks;
    const double py = y(yv);
    c.add(Line{{left - 4, py}, {left, py}, kBlack, 1.0});
    c.add(Text{{left - 6, py + 3}, format_tick(yv), 10.0, Anchor::kEnd});
  }
  c.add(Text{{(left + right) / 2, bottom + 34}, x_label, 12.0, Anchor::kMiddle});
  c.add(Text{{left - 46, (top + bottom) / 2}, y_label, 12.0, Anchor::kMiddle, -90.0});
}

}  // namespace biasprobe::plot
