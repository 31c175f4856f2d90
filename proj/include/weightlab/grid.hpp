#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "weightlab/error.hpp"

namespace weightlab {

using Complex = std::complex<double>;
using Point = std::array<double, 2>;

/// Uniform cell-centred discretization of a box in R^1 or R^2.
///
/// Cells are indexed row-major: in 2D the flat index of cell (i, j) is
/// i * n(1) + j, with i running along axis 0. Every axis shares the same
/// bounds and cell count, so cells are squares and the windows used by the
/// maximal operators are geometric cubes.
class Grid {
 public:
  Grid(int dim, double lo, double hi, std::size_t n);

  int dim() const { return dim_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t n() const { return n_; }
  double h() const { return h_; }
  std::size_t size() const { return dim_ == 1 ? n_ : n_ * n_; }
  /// Volume of one cell, h^dim.
  double cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }
  double volume() const { return cell_volume() * static_cast<double>(size()); }

  /// Coordinate of the centre of cell i along one axis.
  double center(std::size_t i) const { return lo_ + (static_cast<double>(i) + 0.5) * h_; }
  /// Centre of flat cell index `idx` (second component is 0 in 1D).
  Point center_point(std::size_t idx) const;
  std::vector<double> axis_centers() const;

  /// True when no cell centre sits on the coordinate origin of any axis.
  bool centers_avoid_origin() const;

  bool operator==(const Grid& other) const;

 private:
  int dim_;
  double lo_;
  double hi_;
  std::size_t n_;
  double h_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, double lo, double hi, std::size_t n);

void check_same_grid(const GridPtr& a, const GridPtr& b);

/// Per-cell values on a grid.
template <typename T>
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, std::vector<T> values);
  Field(GridPtr grid, T fill);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }
  std::span<const T> span() const { return values_; }
  T operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

 private:
  GridPtr grid_;
  std::vector<T> values_;
};

using SampledFunction = Field<double>;
using ComplexField = Field<Complex>;

/// Strictly positive sampled function, optionally carrying an upper bound
/// on its A_1 constant established by whoever built it.
class Weight {
 public:
  explicit Weight(SampledFunction base, std::optional<double> certified_a1 = std::nullopt);

  const SampledFunction& base() const { return base_; }
  const GridPtr& grid() const { return base_.grid(); }
  std::size_t size() const { return base_.size(); }
  double operator[](std::size_t i) const { return base_[i]; }
  std::span<const double> span() const { return base_.span(); }
  std::optional<double> certified_a1() const { return certified_a1_; }

  static Weight unit(const GridPtr& grid);

 private:
  SampledFunction base_;
  std::optional<double> certified_a1_;
};

/// Boolean mask over the cells of a grid.
class CellSet {
 public:
  CellSet(GridPtr grid, std::vector<unsigned char> mask);

  const GridPtr& grid() const { return grid_; }
  const std::vector<unsigned char>& mask() const { return mask_; }
  bool contains(std::size_t i) const { return mask_[i] != 0; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  static CellSet all(const GridPtr& grid);
  static CellSet none(const GridPtr& grid);
  /// Cells whose centre lies in [a, b) (1D) or [a0, b0) x [a1, b1) (2D).
  static CellSet box(const GridPtr& grid, Point a, Point b);
  static CellSet interval(const GridPtr& grid, double a, double b);

  CellSet operator|(const CellSet& other) const;
  SampledFunction indicator() const;

 private:
  GridPtr grid_;
  std::vector<unsigned char> mask_;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Pointwise evaluation at cell centres. Throws on non-finite values.
SampledFunction sample(const Fn1& fn, const GridPtr& grid);
SampledFunction sample(const Fn2& fn, const GridPtr& grid);

/// v(E) = sum over cells of E of v * h^dim.
double weighted_measure(const CellSet& set, const Weight& v);
double measure(const CellSet& set);

/// sum f * v * h^dim; the unweighted overload uses v = 1.
double integrate(const SampledFunction& f, const Weight& v);
double integrate(const SampledFunction& f);

SampledFunction abs(const ComplexField& f);
SampledFunction abs(const SampledFunction& f);
SampledFunction real_part(const ComplexField& f);
SampledFunction imag_part(const ComplexField& f);
ComplexField to_complex(const SampledFunction& f);

/// Pointwise helpers used across modules.
SampledFunction pow(const SampledFunction& f, double exponent);
SampledFunction multiply(const SampledFunction& a, const SampledFunction& b);
SampledFunction divide(const SampledFunction& a, const SampledFunction& b);
SampledFunction scale(const SampledFunction& a, double c);
ComplexField add(const ComplexField& a, const ComplexField& b);
ComplexField scale(const ComplexField& a, Complex c);

/// Discrete L^2 norm: (sum |f|^2 h^dim)^(1/2).
double l2_norm(const ComplexField& f);
double l2_norm(const SampledFunction& f);
double max_abs_diff(const ComplexField& a, const ComplexField& b);
double max_abs_diff(const SampledFunction& a, const SampledFunction& b);

// ---------------------------------------------------------------------------

template <typename T>
Field<T>::Field(GridPtr grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw Error("field requires a grid");
  if (values_.size() != grid_->size()) throw DomainError("field length does not match grid cell count");
}

template <typename T>
Field<T>::Field(GridPtr grid, T fill) : grid_(std::move(grid)) {
  if (!grid_) throw Error("field requires a grid");
  values_.assign(grid_->size(), fill);
}

}  // namespace weightlab
