#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace kirchhoff {

// Structured Dirichlet grid on an interval or axis-aligned rectangle.
// Only interior nodes are stored; boundary values are identically zero.
struct GridDomain {
  enum class Kind { interval, rectangle };

  Kind kind = Kind::interval;
  std::array<double, 2> extent = {1.0, 1.0};  // side lengths
  std::array<int, 2> resolution = {3, 1};     // interior nodes per axis

  int axes() const { return kind == Kind::interval ? 1 : 2; }
  double spacing(int axis) const {
    return extent[axis] / (resolution[axis] + 1);
  }
  int node_count() const {
    return kind == Kind::interval ? resolution[0]
                                  : resolution[0] * resolution[1];
  }
  // Cells of the dual grid carrying the gradient; (n+1) per axis.
  int cell_count() const {
    return kind == Kind::interval
               ? resolution[0] + 1
               : (resolution[0] + 1) * (resolution[1] + 1);
  }
  double cell_volume() const {
    return kind == Kind::interval ? spacing(0) : spacing(0) * spacing(1);
  }
  // Trapezoidal node volume; boundary rows carry zero data so all interior
  // nodes get full weight.
  double node_volume() const { return cell_volume(); }

  std::array<double, 2> node_position(int idx) const {
    if (kind == Kind::interval) return {(idx + 1) * spacing(0), 0.0};
    const int i = idx % resolution[0];
    const int j = idx / resolution[0];
    return {(i + 1) * spacing(0), (j + 1) * spacing(1)};
  }

  bool operator==(const GridDomain&) const = default;

  static GridDomain interval(double length, int nodes) {
    return {Kind::interval, {length, 0.0}, {nodes, 1}};
  }
  static GridDomain rectangle(double lx, double ly, int nx, int ny) {
    return {Kind::rectangle, {lx, ly}, {nx, ny}};
  }
};

// Nodal values of a discrete function with zero boundary data.
struct ScalarField {
  GridDomain domain;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridDomain& d)
      : domain(d), values(static_cast<std::size_t>(d.node_count()), 0.0) {}
  ScalarField(const GridDomain& d, std::vector<double> v)
      : domain(d), values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

// Forward-difference gradient on the cells of the dual grid.
struct CellGradient {
  std::vector<double> gx;
  std::vector<double> gy;         // empty for intervals
  std::vector<double> magnitude;  // |grad u| per cell
  double cell_volume = 0.0;
};

}  // namespace kirchhoff
