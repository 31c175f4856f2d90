#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {

// ---------------------------------------------------------------------------
// Fourier multipliers
//
// Convention: f^(xi) = int f(x) e^{-2 pi i x xi} dx. On a grid with n cells of
// width h, zero-padded to N = n * padding cells, the sampled frequencies are
// k / (N h) with k in [-N/2, N/2).

enum class Discretization {
  /// Multiply the DFT of the point samples by m at the lattice frequencies.
  point,
  /// Treat f as piecewise constant on cells and return cell averages of T_m f.
  /// The symbol is folded with sinc^2 weights over all aliases (1D only).
  cell_average,
};

struct MultiplierOptions {
  Discretization mode = Discretization::point;
  std::size_t padding = 1;
  /// Aliases summed explicitly in cell_average mode; the rest use m(+-inf).
  int alias_terms = 64;
};

struct MultiplierSpec {
  int dim = 1;
  std::function<Complex(double)> m1;
  std::function<Complex(double, double)> m2;
  /// Limits of m at -inf and +inf, needed for the alias tails in cell_average mode.
  Complex at_minus_inf{0.0, 0.0};
  Complex at_plus_inf{0.0, 0.0};
  std::string name;

  static MultiplierSpec line(std::function<Complex(double)> m, std::string name = "custom", Complex minus_inf = 0.0,
                             Complex plus_inf = 0.0);
  static MultiplierSpec plane(std::function<Complex(double, double)> m, std::string name = "custom");
};

/// Forward transform of f kept around so many symbols can be applied cheaply.
class Spectrum {
 public:
  Spectrum(const ComplexField& f, const MultiplierOptions& options = {});

  const GridPtr& grid() const { return grid_; }
  const MultiplierOptions& options() const { return options_; }
  /// Frequencies along one axis of the padded transform.
  const std::vector<double>& frequencies() const { return freq_; }

  ComplexField apply(const MultiplierSpec& m) const;

 private:
  GridPtr grid_;
  MultiplierOptions options_;
  std::size_t padded_n_;
  std::vector<double> freq_;
  std::vector<Complex> coeffs_;
};

ComplexField fourier_multiplier(const MultiplierSpec& m, const ComplexField& f, const MultiplierOptions& options = {});
ComplexField fourier_multiplier(const MultiplierSpec& m, const SampledFunction& f,
                                const MultiplierOptions& options = {});

/// chi_(t,inf)(xi) = (sgn(xi - t) + 1) / 2, so the value at xi = t is 1/2.
double half_line_symbol(double t, double xi);
MultiplierSpec half_line_spec(double t);
MultiplierSpec hilbert_spec();
MultiplierSpec bochner_riesz_spec(double lambda, int dim);

ComplexField half_line_multiplier(double t, const SampledFunction& f, const MultiplierOptions& options = {});
ComplexField hilbert(const SampledFunction& f, const MultiplierOptions& options = {});
ComplexField hilbert(const ComplexField& f, const MultiplierOptions& options = {});
ComplexField bochner_riesz(double lambda, const SampledFunction& f, const MultiplierOptions& options = {});

/// Inclusive list of sampled frequencies in [a, b] for a grid and options.
std::vector<double> lattice_frequencies(const GridPtr& grid, const MultiplierOptions& options, double a, double b);

// ---------------------------------------------------------------------------
// Stieltjes measures and averaging

struct Atom {
  double point;
  double mass;
};

/// Absolutely continuous part: fn on [lo, hi], smooth between breakpoints.
struct Density {
  std::function<double(double)> fn;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> breakpoints;
};

class StieltjesMeasure {
 public:
  explicit StieltjesMeasure(std::vector<Atom> atoms, std::optional<Density> density = std::nullopt);

  static StieltjesMeasure dirac(double point, double mass = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<Density>& density() const { return density_; }
  double total_variation() const { return total_variation_; }
  double total_mass() const { return total_mass_; }
  bool nonnegative() const { return nonnegative_; }

  /// int chi_(t,inf)(xi) dm(t).
  double symbol(double xi) const;
  /// Restriction to [a, inf).
  StieltjesMeasure restrict_from(double a) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
  double total_variation_ = 0.0;
  double total_mass_ = 0.0;
  bool nonnegative_ = true;
};

/// Adaptive Gauss-Legendre for scalar integrands.
double integrate_adaptive(const std::function<double(double)>& fn, double a, double b, double tol = 1e-12);

using OperatorFamily = std::function<ComplexField(double)>;

struct AverageOptions {
  /// Stopping rule for densities: successive refinements differ by < tol in L^2.
  double tol = 1e-8;
  int max_level = 14;
  /// Parameters where the family may jump. If piecewise_constant is set the
  /// family is assumed constant between them and is evaluated once per panel.
  std::vector<double> breakpoints;
  bool piecewise_constant = false;
};

/// int T_theta f dm(theta): atoms exact, density by quadrature.
ComplexField stieltjes_average(const OperatorFamily& family, const StieltjesMeasure& dm, const GridPtr& grid,
                               const AverageOptions& options = {});

/// T_m f = int H_t f dm(t).
ComplexField bv_multiplier_average(const StieltjesMeasure& dm, const SampledFunction& f,
                                   const MultiplierOptions& options = {}, double tol = 1e-8);

/// int T_theta f dP(theta) for a probability measure P.
ComplexField average_operator(const OperatorFamily& family, const StieltjesMeasure& p, const GridPtr& grid,
                              const AverageOptions& options = {});

/// sum c_j T_j f.
ComplexField series_operator(const std::vector<double>& c, const std::vector<OperatorFamily>& ops,
                             const GridPtr& grid);

// ---------------------------------------------------------------------------
// Kernel operators

struct KernelSpec {
  std::function<double(const Point&, const Point&)> k;
  std::optional<double> size_bound;
  std::string name;

  static KernelSpec line(std::function<double(double, double)> k, std::string name = "custom");
};

/// Standard examples: sgn(x - y) / |x - y| (the Hilbert kernel without 1/pi) and K = 1.
KernelSpec signed_inverse_kernel();
KernelSpec unit_kernel();

/// T_s f(x) = sum over cells y with |x - y| >= s of K(x, y) f(y) h^dim.
/// The cell containing x is always excluded; distances are between centres.
SampledFunction kernel_op(const KernelSpec& k, double s, const SampledFunction& f);

/// Distances between distinct cell centres that are <= limit (1D: k h; 2D: h sqrt(k)).
std::vector<double> kernel_distances(const GridPtr& grid, double limit);

struct RadialModulated {
  /// T_phi f with kernel K(x, y) phi(|x - y|).
  SampledFunction direct;
  /// phi(eps) T f + int_eps^inf T_s f dphi(s).
  SampledFunction averaged;
};

RadialModulated radial_modulated_op(const KernelSpec& k, const std::function<double(double)>& phi,
                                    const StieltjesMeasure& dphi, double eps, const SampledFunction& f,
                                    double tol = 1e-8);

// ---------------------------------------------------------------------------
// Restriction multipliers

struct RestrictedMultiplier {
  MultiplierSpec spec;
  std::function<double(double)> phi;
  double lo;
  double hi;
};

/// m_phi(xi) = int m2(xi, y) phi(y) dy over the support [lo, hi] of phi.
RestrictedMultiplier restricted_multiplier(const MultiplierSpec& m2, std::function<double(double)> phi, double lo,
                                           double hi, double tol = 1e-8);

/// max |T_{m_phi} f - int T_{m2(., y)} f phi(y) dy|.
double restricted_identity_residual(const RestrictedMultiplier& r, const MultiplierSpec& m2,
                                    const SampledFunction& f, double tol = 1e-8);

}  // namespace weightlab
