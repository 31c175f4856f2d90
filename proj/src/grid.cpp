#include "weightlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace weightlab {

Grid::Grid(int dim, double lo, double hi, std::size_t n) : dim_(dim), lo_(lo), hi_(hi), n_(n) {
  if (dim != 1 && dim != 2) throw DomainError("grid dimension must be 1 or 2");
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo)) throw DomainError("grid extent must be positive");
  if (n < 2) throw DomainError("grid needs at least 2 cells per axis");
  h_ = (hi - lo) / static_cast<double>(n);
}

Point Grid::center_point(std::size_t idx) const {
  if (dim_ == 1) return {center(idx), 0.0};
  return {center(idx / n_), center(idx % n_)};
}

std::vector<double> Grid::axis_centers() const {
  std::vector<double> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = center(i);
  return c;
}

bool Grid::centers_avoid_origin() const {
  // The origin is a centre when (0 - lo)/h - 1/2 is an integer in [0, n).
  const double k = (0.0 - lo_) / h_ - 0.5;
  if (k < -0.5 || k > static_cast<double>(n_) - 0.5) return true;
  return std::abs(k - std::round(k)) > 1e-9;
}

bool Grid::operator==(const Grid& o) const { return dim_ == o.dim_ && lo_ == o.lo_ && hi_ == o.hi_ && n_ == o.n_; }

GridPtr make_grid(int dim, double lo, double hi, std::size_t n) { return std::make_shared<const Grid>(dim, lo, hi, n); }

void check_same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b) throw GridMismatch("missing grid");
  if (a != b && !(*a == *b)) throw GridMismatch("operands live on different grids");
}

// ---------------------------------------------------------------------------

Weight::Weight(SampledFunction base, std::optional<double> certified_a1)
    : base_(std::move(base)), certified_a1_(certified_a1) {
  for (double x : base_.values()) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("weight values must be finite and strictly positive");
  }
  if (certified_a1_ && !(*certified_a1_ >= 1.0)) throw DomainError("certified A1 bound must be >= 1");
}

Weight Weight::unit(const GridPtr& grid) { return Weight(SampledFunction(grid, 1.0), 1.0); }

// ---------------------------------------------------------------------------

CellSet::CellSet(GridPtr grid, std::vector<unsigned char> mask) : grid_(std::move(grid)), mask_(std::move(mask)) {
  if (!grid_) throw Error("cell set requires a grid");
  if (mask_.size() != grid_->size()) throw DomainError("mask length does not match grid cell count");
}

std::size_t CellSet::count() const {
  return static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(), [](unsigned char m) { return m != 0; }));
}

CellSet CellSet::all(const GridPtr& grid) { return CellSet(grid, std::vector<unsigned char>(grid->size(), 1)); }
CellSet CellSet::none(const GridPtr& grid) { return CellSet(grid, std::vector<unsigned char>(grid->size(), 0)); }

CellSet CellSet::box(const GridPtr& grid, Point a, Point b) {
  std::vector<unsigned char> mask(grid->size(), 0);
  for (std::size_t idx = 0; idx < grid->size(); ++idx) {
    const Point c = grid->center_point(idx);
    bool in = c[0] >= a[0] && c[0] < b[0];
    if (grid->dim() == 2) in = in && c[1] >= a[1] && c[1] < b[1];
    mask[idx] = in ? 1 : 0;
  }
  return CellSet(grid, std::move(mask));
}

CellSet CellSet::interval(const GridPtr& grid, double a, double b) { return box(grid, {a, a}, {b, b}); }

CellSet CellSet::operator|(const CellSet& other) const {
  check_same_grid(grid_, other.grid_);
  std::vector<unsigned char> mask(mask_.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = (mask_[i] || other.mask_[i]) ? 1 : 0;
  return CellSet(grid_, std::move(mask));
}

SampledFunction CellSet::indicator() const {
  std::vector<double> v(mask_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mask_[i] ? 1.0 : 0.0;
  return SampledFunction(grid_, std::move(v));
}

// ---------------------------------------------------------------------------

namespace {

void check_finite(double x) {
  if (!std::isfinite(x)) throw DomainError("sampled function is not finite at a cell centre");
}

}  // namespace

SampledFunction sample(const Fn1& fn, const GridPtr& grid) {
  if (grid->dim() != 1) throw DomainError("one-variable descriptor sampled on a 2D grid");
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = fn(grid->center(i));
    check_finite(v[i]);
  }
  return SampledFunction(grid, std::move(v));
}

SampledFunction sample(const Fn2& fn, const GridPtr& grid) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point c = grid->center_point(i);
    v[i] = fn(c[0], c[1]);
    check_finite(v[i]);
  }
  return SampledFunction(grid, std::move(v));
}

double weighted_measure(const CellSet& set, const Weight& v) {
  check_same_grid(set.grid(), v.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < set.mask().size(); ++i) {
    if (set.contains(i)) sum += v[i];
  }
  return sum * set.grid()->cell_volume();
}

double measure(const CellSet& set) { return static_cast<double>(set.count()) * set.grid()->cell_volume(); }

double integrate(const SampledFunction& f, const Weight& v) {
  check_same_grid(f.grid(), v.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * v[i];
  return sum * f.grid()->cell_volume();
}

double integrate(const SampledFunction& f) {
  const double sum = std::accumulate(f.values().begin(), f.values().end(), 0.0);
  return sum * f.grid()->cell_volume();
}

namespace {

template <typename In, typename Op>
SampledFunction map_real(const Field<In>& f, Op op) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(f[i]);
  return SampledFunction(f.grid(), std::move(v));
}

}  // namespace

SampledFunction abs(const ComplexField& f) {
  return map_real(f, [](Complex z) { return std::abs(z); });
}
SampledFunction abs(const SampledFunction& f) {
  return map_real(f, [](double x) { return std::abs(x); });
}
SampledFunction real_part(const ComplexField& f) {
  return map_real(f, [](Complex z) { return z.real(); });
}
SampledFunction imag_part(const ComplexField& f) {
  return map_real(f, [](Complex z) { return z.imag(); });
}

ComplexField to_complex(const SampledFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  return ComplexField(f.grid(), std::move(v));
}

SampledFunction pow(const SampledFunction& f, double exponent) {
  return map_real(f, [exponent](double x) { return std::pow(x, exponent); });
}

SampledFunction multiply(const SampledFunction& a, const SampledFunction& b) {
  check_same_grid(a.grid(), b.grid());
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return SampledFunction(a.grid(), std::move(v));
}

SampledFunction divide(const SampledFunction& a, const SampledFunction& b) {
  check_same_grid(a.grid(), b.grid());
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] / b[i];
  return SampledFunction(a.grid(), std::move(v));
}

SampledFunction scale(const SampledFunction& a, double c) {
  return map_real(a, [c](double x) { return c * x; });
}

ComplexField add(const ComplexField& a, const ComplexField& b) {
  check_same_grid(a.grid(), b.grid());
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return ComplexField(a.grid(), std::move(v));
}

ComplexField scale(const ComplexField& a, Complex c) {
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a[i];
  return ComplexField(a.grid(), std::move(v));
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (Complex z : f.values()) s += std::norm(z);
  return std::sqrt(s * f.grid()->cell_volume());
}

double l2_norm(const SampledFunction& f) {
  double s = 0.0;
  for (double x : f.values()) s += x * x;
  return std::sqrt(s * f.grid()->cell_volume());
}

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  check_same_grid(a.grid(), b.grid());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const SampledFunction& a, const SampledFunction& b) {
  check_same_grid(a.grid(), b.grid());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace weightlab
