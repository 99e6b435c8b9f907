#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcdvf {

// Errors raised by the engine. Computation errors map to exit code 1 in the
// CLI, IO errors to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class EmptyMaskError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Sub-pixel position, (u, v) = (column, row), pixel centers at integers.
struct Point {
  double u = 0.0;
  double v = 0.0;

  friend Point operator+(Point a, Point b) { return {a.u + b.u, a.v + b.v}; }
  friend Point operator-(Point a, Point b) { return {a.u - b.u, a.v - b.v}; }
  friend Point operator*(double s, Point a) { return {s * a.u, s * a.v}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.u * b.u + a.v * b.v; }
double norm(Point p);

struct Pixel {
  int u = 0;
  int v = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Row-major U x V grid.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw DimensionError("grid dimensions must be at least 1x1, got " +
                           std::to_string(width) + "x" + std::to_string(height));
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int u, int v) { return data_[index(u, v)]; }
  const T& operator()(int u, int v) const { return data_[index(u, v)]; }

  bool contains(int u, int v) const { return u >= 0 && v >= 0 && u < width_ && v < height_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool same_shape(const Grid<T>& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(u);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using ScalarField = Grid<double>;
using BinaryMask = Grid<std::uint8_t>;

struct VectorField {
  ScalarField u;
  ScalarField v;

  VectorField() = default;
  VectorField(int width, int height) : u(width, height, 0.0), v(width, height, 0.0) {}

  int width() const { return u.width(); }
  int height() const { return u.height(); }
  Point at(int x, int y) const { return {u(x, y), v(x, y)}; }
};

struct Circle {
  Point center;
  double radius = 0.0;
};

template <typename A, typename B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()) + ")");
  }
}

std::size_t count_foreground(const BinaryMask& mask);

}  // namespace lcdvf
