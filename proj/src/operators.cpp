#include "weightlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "fft.hpp"

namespace weightlab {

namespace {

constexpr double pi = std::numbers::pi;

double sinc(double u) {
  if (u == 0.0) return 1.0;
  return std::sin(pi * u) / (pi * u);
}

Complex checked(Complex value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw DomainError("multiplier symbol is not finite on the sampled frequencies");
  return value;
}

/// Symbol seen by cell-averaged data: sum over aliases of m(xi + l/h) sinc^2(h xi + l).
Complex cell_average_symbol(const MultiplierSpec& m, double xi, double h, int terms) {
  const double u = h * xi;
  if (u == 0.0) return checked(m.m1(xi));
  Complex acc = 0.0;
  for (int l = -terms; l <= terms; ++l) {
    const double w = sinc(u + l);
    acc += checked(m.m1(xi + l / h)) * (w * w);
  }
  const double s = std::sin(pi * u);
  const double c = s * s / (pi * pi);
  acc += m.at_plus_inf * (c * boost::math::trigamma(terms + 1 + u));
  acc += m.at_minus_inf * (c * boost::math::trigamma(terms + 1 - u));
  return acc;
}

void axpy(std::vector<Complex>& y, Complex a, const ComplexField& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

MultiplierSpec MultiplierSpec::line(std::function<Complex(double)> m, std::string name, Complex minus_inf,
                                    Complex plus_inf) {
  MultiplierSpec s;
  s.dim = 1;
  s.m1 = std::move(m);
  s.name = std::move(name);
  s.at_minus_inf = minus_inf;
  s.at_plus_inf = plus_inf;
  return s;
}

MultiplierSpec MultiplierSpec::plane(std::function<Complex(double, double)> m, std::string name) {
  MultiplierSpec s;
  s.dim = 2;
  s.m2 = std::move(m);
  s.name = std::move(name);
  return s;
}

Spectrum::Spectrum(const ComplexField& f, const MultiplierOptions& options) : grid_(f.grid()), options_(options) {
  const auto& g = *grid_;
  if (!detail::is_power_of_two(g.n())) throw DomainError("multiplier grids need a power-of-two cell count");
  if (!detail::is_power_of_two(options.padding)) throw DomainError("padding factor must be a power of two");
  if (options.mode == Discretization::cell_average && g.dim() != 1)
    throw DomainError("cell_average discretization is only available in 1D");
  const std::size_t n = g.n(), N = n * options.padding;
  padded_n_ = N;
  freq_.resize(N);
  for (std::size_t q = 0; q < N; ++q) {
    const double k = q < N / 2 ? static_cast<double>(q) : static_cast<double>(q) - static_cast<double>(N);
    freq_[q] = k / (static_cast<double>(N) * g.h());
  }
  if (g.dim() == 1) {
    coeffs_.assign(N, 0.0);
    std::copy(f.values().begin(), f.values().end(), coeffs_.begin());
  } else {
    coeffs_.assign(N * N, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      std::copy_n(f.values().begin() + static_cast<std::ptrdiff_t>(i * n), n, coeffs_.begin() + static_cast<std::ptrdiff_t>(i * N));
  }
  detail::fft_inplace(coeffs_.data(), g.dim(), N, -1);
}

ComplexField Spectrum::apply(const MultiplierSpec& m) const {
  const auto& g = *grid_;
  if (m.dim != g.dim()) throw DomainError("multiplier dimension does not match the grid");
  const std::size_t n = g.n(), N = padded_n_;
  std::vector<Complex> work = coeffs_;
  if (g.dim() == 1) {
    for (std::size_t q = 0; q < N; ++q) {
      const Complex s = options_.mode == Discretization::cell_average
                            ? cell_average_symbol(m, freq_[q], g.h(), options_.alias_terms)
                            : checked(m.m1(freq_[q]));
      work[q] *= s;
    }
  } else {
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) work[a * N + b] *= checked(m.m2(freq_[a], freq_[b]));
  }
  detail::fft_inplace(work.data(), g.dim(), N, +1);
  const double norm = g.dim() == 1 ? 1.0 / static_cast<double>(N) : 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  std::vector<Complex> out(g.size());
  if (g.dim() == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = work[i] * norm;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] = work[i * N + j] * norm;
  }
  return ComplexField(grid_, std::move(out));
}

ComplexField fourier_multiplier(const MultiplierSpec& m, const ComplexField& f, const MultiplierOptions& options) {
  return Spectrum(f, options).apply(m);
}

ComplexField fourier_multiplier(const MultiplierSpec& m, const SampledFunction& f, const MultiplierOptions& options) {
  return fourier_multiplier(m, to_complex(f), options);
}

double half_line_symbol(double t, double xi) {
  if (xi > t) return 1.0;
  if (xi < t) return 0.0;
  return 0.5;
}

MultiplierSpec half_line_spec(double t) {
  return MultiplierSpec::line([t](double xi) { return Complex(half_line_symbol(t, xi)); }, "half_line", 0.0, 1.0);
}

MultiplierSpec hilbert_spec() {
  const Complex minus_i(0.0, -1.0);
  return MultiplierSpec::line(
      [minus_i](double xi) {
        const double sgn = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
        return minus_i * sgn;
      },
      "hilbert", -minus_i, minus_i);
}

MultiplierSpec bochner_riesz_spec(double lambda, int dim) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("Bochner-Riesz index must be >= 0");
  const auto radial = [lambda](double r2) -> Complex {
    if (r2 >= 1.0) return 0.0;
    return lambda == 0.0 ? 1.0 : std::pow(1.0 - r2, lambda);
  };
  if (dim == 1) return MultiplierSpec::line([radial](double xi) { return radial(xi * xi); }, "bochner_riesz");
  if (dim == 2)
    return MultiplierSpec::plane([radial](double a, double b) { return radial(a * a + b * b); }, "bochner_riesz");
  throw DomainError("Bochner-Riesz is available in dimensions 1 and 2");
}

ComplexField half_line_multiplier(double t, const SampledFunction& f, const MultiplierOptions& options) {
  return fourier_multiplier(half_line_spec(t), f, options);
}

ComplexField hilbert(const SampledFunction& f, const MultiplierOptions& options) {
  return fourier_multiplier(hilbert_spec(), f, options);
}

ComplexField hilbert(const ComplexField& f, const MultiplierOptions& options) {
  return fourier_multiplier(hilbert_spec(), f, options);
}

ComplexField bochner_riesz(double lambda, const SampledFunction& f, const MultiplierOptions& options) {
  return fourier_multiplier(bochner_riesz_spec(lambda, f.grid()->dim()), f, options);
}

std::vector<double> lattice_frequencies(const GridPtr& grid, const MultiplierOptions& options, double a, double b) {
  // Same arithmetic as Spectrum so the values match the sampled frequencies bit for bit.
  const double span = static_cast<double>(grid->n() * options.padding) * grid->h();
  std::vector<double> out;
  if (!(a <= b)) return out;
  for (double k = std::ceil(a * span); k / span <= b; k += 1.0)
    if (k / span >= a) out.push_back(k / span);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct GaussRule {
  std::vector<double> x, w;
};

/// Ten-point Gauss-Legendre on [-1, 1]; boost stores the nonnegative half.
const GaussRule& rule10() {
  static const GaussRule r = [] {
    using G = boost::math::quadrature::gauss<double, 10>;
    GaussRule g;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      g.x.push_back(-xs[i]);
      g.w.push_back(ws[i]);
      g.x.push_back(xs[i]);
      g.w.push_back(ws[i]);
    }
    return g;
  }();
  return r;
}

double gl_panel(const std::function<double(double)>& fn, double a, double b) {
  const auto& r = rule10();
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * fn(c + hw * r.x[i]);
  return s * hw;
}

double adaptive(const std::function<double(double)>& fn, double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gl_panel(fn, a, m), right = gl_panel(fn, m, b);
  if (depth >= 40 || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive(fn, a, m, left, 0.5 * tol, depth + 1) + adaptive(fn, m, b, right, 0.5 * tol, depth + 1);
}

/// Split [lo, hi] at the given points (those strictly inside).
std::vector<double> panel_edges(double lo, double hi, const std::vector<double>& a, const std::vector<double>& b = {}) {
  std::vector<double> e{lo, hi};
  for (double x : a)
    if (x > lo && x < hi) e.push_back(x);
  for (double x : b)
    if (x > lo && x < hi) e.push_back(x);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

double integrate_density(const Density& d, double lo, double hi, const std::function<double(double)>& fn) {
  if (!(hi > lo)) return 0.0;
  const auto edges = panel_edges(lo, hi, d.breakpoints);
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) s += integrate_adaptive(fn, edges[k], edges[k + 1], 1e-14);
  return s;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& fn, double a, double b, double tol) {
  if (a == b) return 0.0;
  return adaptive(fn, a, b, gl_panel(fn, a, b), tol, 0);
}

StieltjesMeasure::StieltjesMeasure(std::vector<Atom> atoms, std::optional<Density> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  std::stable_sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.point) || !std::isfinite(a.mass)) throw DomainError("Stieltjes atoms must be finite");
    total_variation_ += std::abs(a.mass);
    total_mass_ += a.mass;
    if (a.mass < 0.0) nonnegative_ = false;
  }
  if (density_) {
    auto& d = *density_;
    if (!d.fn) throw DomainError("density needs a function");
    if (!(d.lo < d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi))
      throw DomainError("density support must be a bounded interval");
    const auto& fn = d.fn;
    const double abs_int = integrate_density(d, d.lo, d.hi, [&fn](double t) { return std::abs(fn(t)); });
    const double signed_int = integrate_density(d, d.lo, d.hi, fn);
    total_variation_ += abs_int;
    total_mass_ += signed_int;
    if (std::abs(abs_int - signed_int) > 1e-13 * std::max(1.0, abs_int)) nonnegative_ = false;
  }
  if (!std::isfinite(total_variation_)) throw DomainError("Stieltjes measure has infinite total variation");
}

StieltjesMeasure StieltjesMeasure::dirac(double point, double mass) { return StieltjesMeasure({{point, mass}}); }

double StieltjesMeasure::symbol(double xi) const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass * half_line_symbol(a.point, xi);
  if (density_ && xi > density_->lo) s += integrate_density(*density_, density_->lo, std::min(xi, density_->hi), density_->fn);
  return s;
}

StieltjesMeasure StieltjesMeasure::restrict_from(double a) const {
  std::vector<Atom> kept;
  for (const auto& atom : atoms_)
    if (atom.point >= a) kept.push_back(atom);
  std::optional<Density> d;
  if (density_ && density_->hi > a) {
    d = *density_;
    d->lo = std::max(d->lo, a);
  }
  return StieltjesMeasure(std::move(kept), std::move(d));
}

ComplexField stieltjes_average(const OperatorFamily& family, const StieltjesMeasure& dm, const GridPtr& grid,
                               const AverageOptions& options) {
  std::vector<Complex> acc(grid->size(), 0.0);
  for (const auto& a : dm.atoms()) axpy(acc, a.mass, family(a.point));
  if (!dm.density()) return ComplexField(grid, std::move(acc));
  const auto& d = *dm.density();
  const auto edges = panel_edges(d.lo, d.hi, d.breakpoints, options.breakpoints);
  if (options.piecewise_constant) {
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      const double w = integrate_adaptive(d.fn, edges[k], edges[k + 1], 1e-14);
      if (w != 0.0) axpy(acc, w, family(0.5 * (edges[k] + edges[k + 1])));
    }
    return ComplexField(grid, std::move(acc));
  }
  const auto& r = rule10();
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1];
    std::vector<Complex> prev;
    for (int level = 0; level <= options.max_level; ++level) {
      const std::size_t pieces = std::size_t{1} << level;
      const double w = (b - a) / static_cast<double>(pieces);
      std::vector<Complex> cur(grid->size(), 0.0);
      for (std::size_t p = 0; p < pieces; ++p) {
        const double c = a + (static_cast<double>(p) + 0.5) * w;
        for (std::size_t i = 0; i < r.x.size(); ++i) {
          const double t = c + 0.5 * w * r.x[i];
          axpy(cur, 0.5 * w * r.w[i] * d.fn(t), family(t));
        }
      }
      if (!prev.empty()) {
        double diff = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) diff += std::norm(cur[i] - prev[i]);
        diff = std::sqrt(diff * grid->cell_volume());
        if (diff < options.tol) {
          prev = std::move(cur);
          break;
        }
      }
      prev = std::move(cur);
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += prev[i];
  }
  return ComplexField(grid, std::move(acc));
}

ComplexField bv_multiplier_average(const StieltjesMeasure& dm, const SampledFunction& f,
                                   const MultiplierOptions& options, double tol) {
  const Spectrum spectrum(to_complex(f), options);
  AverageOptions avg;
  avg.tol = tol;
  // H_t only changes when t crosses a sampled frequency (or an alias of one).
  if (dm.density()) {
    avg.breakpoints = lattice_frequencies(f.grid(), options, dm.density()->lo, dm.density()->hi);
    avg.piecewise_constant = true;
  }
  return stieltjes_average([&spectrum](double t) { return spectrum.apply(half_line_spec(t)); }, dm, f.grid(), avg);
}

ComplexField average_operator(const OperatorFamily& family, const StieltjesMeasure& p, const GridPtr& grid,
                              const AverageOptions& options) {
  if (!p.nonnegative()) throw DomainError("average_operator needs a nonnegative measure");
  if (std::abs(p.total_mass() - 1.0) > 1e-12) throw DomainError("average_operator needs total mass 1");
  return stieltjes_average(family, p, grid, options);
}

ComplexField series_operator(const std::vector<double>& c, const std::vector<OperatorFamily>& ops,
                             const GridPtr& grid) {
  if (c.empty() || c.size() != ops.size()) throw DomainError("series_operator needs matching non-empty lists");
  double l1 = 0.0;
  bool nonneg = true;
  for (double x : c) {
    if (!std::isfinite(x)) throw DomainError("series coefficients must be finite");
    l1 += std::abs(x);
    nonneg = nonneg && x >= 0.0;
  }
  const auto member = [&ops](double j) { return ops[static_cast<std::size_t>(j)](j); };
  if (nonneg && l1 > 0.0) {
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < c.size(); ++j) atoms.push_back({static_cast<double>(j), c[j] / l1});
    auto out = stieltjes_average(member, StieltjesMeasure(std::move(atoms)), grid);
    if (l1 != 1.0) out = scale(out, l1);
    return out;
  }
  std::vector<Complex> acc(grid->size(), 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) axpy(acc, c[j], member(static_cast<double>(j)));
  return ComplexField(grid, std::move(acc));
}

// ---------------------------------------------------------------------------

KernelSpec KernelSpec::line(std::function<double(double, double)> k, std::string name) {
  KernelSpec s;
  s.k = [k = std::move(k)](const Point& x, const Point& y) { return k(x[0], y[0]); };
  s.name = std::move(name);
  return s;
}

KernelSpec signed_inverse_kernel() {
  auto s = KernelSpec::line(
      [](double x, double y) {
        const double d = x - y;
        return (d > 0.0 ? 1.0 : -1.0) / std::abs(d);
      },
      "signed_inverse");
  s.size_bound = 1.0;
  return s;
}

KernelSpec unit_kernel() {
  KernelSpec s;
  s.k = [](const Point&, const Point&) { return 1.0; };
  s.name = "unit";
  return s;
}

SampledFunction kernel_op(const KernelSpec& k, double s, const SampledFunction& f) {
  if (!(s >= 0.0)) throw DomainError("truncation radius must be >= 0");
  const auto& g = *f.grid();
  const double h = g.h();
  const double vol = g.cell_volume();
  std::vector<double> out(g.size(), 0.0);
  const auto eval = [&k](const Point& x, const Point& y) {
    const double v = k.k(x, y);
    if (!std::isfinite(v)) throw DomainError("kernel is not finite off the diagonal");
    return v;
  };
  // Work with integer distances so thresholds at s = k h are not decided by rounding.
  const double rel = s / h;
  if (g.dim() == 1) {
    const long n = static_cast<long>(g.n());
    const long kmin = std::max(1L, static_cast<long>(std::ceil(rel - 1e-9)));
    for (long i = 0; i < n; ++i) {
      const Point x{g.center(static_cast<std::size_t>(i)), 0.0};
      double acc = 0.0;
      for (long j = 0; j < n; ++j) {
        if (std::labs(i - j) < kmin) continue;
        acc += eval(x, Point{g.center(static_cast<std::size_t>(j)), 0.0}) * f[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = acc * vol;
    }
    return SampledFunction(f.grid(), std::move(out));
  }
  const long n = static_cast<long>(g.n());
  const double r2min = rel * rel * (1.0 - 1e-12);
  for (long i = 0; i < n * n; ++i) {
    const long xi = i / n, xj = i % n;
    const Point x = g.center_point(static_cast<std::size_t>(i));
    double acc = 0.0;
    for (long j = 0; j < n * n; ++j) {
      if (j == i) continue;
      const long di = j / n - xi, dj = j % n - xj;
      if (static_cast<double>(di * di + dj * dj) < r2min) continue;
      acc += eval(x, g.center_point(static_cast<std::size_t>(j))) * f[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc * vol;
  }
  return SampledFunction(f.grid(), std::move(out));
}

std::vector<double> kernel_distances(const GridPtr& grid, double limit) {
  const double h = grid->h();
  const long n = static_cast<long>(grid->n());
  std::vector<double> out;
  if (grid->dim() == 1) {
    for (long k = 1; k < n && k * h <= limit; ++k) out.push_back(static_cast<double>(k) * h);
    return out;
  }
  std::vector<long> sq;
  for (long a = 0; a < n; ++a)
    for (long b = a; b < n; ++b)
      if (a + b > 0 && h * std::sqrt(static_cast<double>(a * a + b * b)) <= limit) sq.push_back(a * a + b * b);
  std::sort(sq.begin(), sq.end());
  sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
  for (long m : sq) out.push_back(h * std::sqrt(static_cast<double>(m)));
  return out;
}

RadialModulated radial_modulated_op(const KernelSpec& k, const std::function<double(double)>& phi,
                                    const StieltjesMeasure& dphi, double eps, const SampledFunction& f,
                                    double tol) {
  if (!(eps > 0.0)) throw DomainError("radial_modulated_op needs eps > 0");
  if (std::abs(phi(std::numeric_limits<double>::min())) > 1e-12) throw DomainError("phi must vanish at 0+");
  const auto& g = *f.grid();
  KernelSpec modulated;
  modulated.k = [&k, &phi, dim = g.dim()](const Point& x, const Point& y) {
    const double d = dim == 1 ? std::abs(x[0] - y[0]) : std::hypot(x[0] - y[0], x[1] - y[1]);
    return k.k(x, y) * phi(d);
  };
  RadialModulated out;
  out.direct = kernel_op(modulated, 0.0, f);

  const auto tail = dphi.restrict_from(eps);
  AverageOptions avg;
  avg.tol = tol;
  if (tail.density()) {
    // T_s is constant while s stays between consecutive centre distances.
    avg.breakpoints = kernel_distances(f.grid(), tail.density()->hi);
    avg.piecewise_constant = true;
  }
  const auto integral =
      stieltjes_average([&](double s) { return to_complex(kernel_op(k, s, f)); }, tail, f.grid(), avg);
  const auto base = kernel_op(k, 0.0, f);
  const double phi_eps = phi(eps);
  std::vector<double> av(base.size());
  for (std::size_t i = 0; i < av.size(); ++i) av[i] = phi_eps * base[i] + integral[i].real();
  out.averaged = SampledFunction(f.grid(), std::move(av));
  return out;
}

// ---------------------------------------------------------------------------

RestrictedMultiplier restricted_multiplier(const MultiplierSpec& m2, std::function<double(double)> phi, double lo,
                                           double hi, double tol) {
  if (m2.dim != 2) throw DomainError("restricted_multiplier needs a symbol on R^2");
  if (!(lo < hi)) throw DomainError("phi needs a bounded support interval");
  const double l1 = integrate_adaptive([&phi](double y) { return std::abs(phi(y)); }, lo, hi, 1e-12);
  if (!std::isfinite(l1)) throw DomainError("phi is not integrable");
  const auto m = m2.m2;
  auto symbol = [m, phi, lo, hi, tol](double xi) {
    const double re = integrate_adaptive([&](double y) { return m(xi, y).real() * phi(y); }, lo, hi, tol);
    const double im = integrate_adaptive([&](double y) { return m(xi, y).imag() * phi(y); }, lo, hi, tol);
    return Complex(re, im);
  };
  return {MultiplierSpec::line(symbol, m2.name + "_restricted"), std::move(phi), lo, hi};
}

double restricted_identity_residual(const RestrictedMultiplier& r, const MultiplierSpec& m2,
                                    const SampledFunction& f, double tol) {
  const Spectrum spectrum(to_complex(f));
  const auto lhs = spectrum.apply(r.spec);
  const auto m = m2.m2;
  const auto family = [&](double y) {
    return spectrum.apply(MultiplierSpec::line([m, y](double xi) { return m(xi, y); }));
  };
  const StieltjesMeasure weight({}, Density{r.phi, r.lo, r.hi, {}});
  AverageOptions avg;
  avg.tol = tol;
  const auto rhs = stieltjes_average(family, weight, f.grid(), avg);
  return max_abs_diff(lhs, rhs);
}

}  // namespace weightlab
