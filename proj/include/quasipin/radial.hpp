#ifndef QUASIPIN_RADIAL_HPP
#define QUASIPIN_RADIAL_HPP

#include <functional>
#include <vector>

namespace qpin {

/// One term c * r^k * exp(-beta r) of a radial function (atomic units,
/// beta in 1/bohr). Powers may go down to -1 after a Laplacian has been
/// applied; functions built from the named basis sets always have k >= 0.
struct RadialTerm {
    double coeff;
    int power;
    double exponent;
};

/// Finite sum of c * r^k * exp(-beta r) terms, kept canonical: at most one
/// term per (k, beta) pair, zero coefficients dropped, terms ordered by
/// (power, exponent). The class is closed under addition, scaling,
/// pointwise product and the radial Laplacian.
class RadialFunction {
  public:
    RadialFunction() = default;
    explicit RadialFunction(std::vector<RadialTerm> terms);

    static RadialFunction monomial(double coeff, int power, double exponent);

    const std::vector<RadialTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int min_power() const;

    /// Pointwise value; r must be > 0 when negative powers are present.
    double operator()(double r) const;

    RadialFunction scaled(double s) const;
    RadialFunction& operator+=(const RadialFunction& other);

    /// g'' + (2/r) g', the Laplacian of a spherically symmetric function.
    RadialFunction laplacian() const;

  private:
    std::vector<RadialTerm> terms_;
    void canonicalize();
};

RadialFunction operator+(RadialFunction a, const RadialFunction& b);
RadialFunction product(const RadialFunction& f, const RadialFunction& g);

/// n! as an exact double (n <= 25 stays within the 53-bit mantissa budget
/// needed here; larger n throws).
double factorial(int n);

/// Integral over the half line of f(r) * r^n dr in closed form,
/// sum of c (k+n)! / beta^(k+n+1). Requires k + n >= 0 for every term.
double moment_integral(const RadialFunction& f, int n);

/// Lower incomplete moment: integral from 0 to x of r^n exp(-q r) dr.
double lower_incomplete_moment(int n, double q, double x);

/// 3-D integrals for spherically symmetric orbitals.
double overlap(const RadialFunction& f, const RadialFunction& g);
double kinetic(const RadialFunction& f, const RadialFunction& g);
double nuclear(const RadialFunction& f, const RadialFunction& g);

/// Two-electron repulsion (f1 f2 | g1 g2) in chemist notation. The kernel
/// reduces to 1/max(r1, r2) for spherically symmetric densities; evaluated
/// in closed form through nested incomplete-gamma integrals.
double coulomb(const RadialFunction& f1, const RadialFunction& f2, const RadialFunction& g1,
               const RadialFunction& g2);

/// Composite Gauss-Legendre quadrature on [0, r_max], used only to validate
/// the closed-form integrals. Deterministic for fixed settings.
class QuadratureOracle {
  public:
    QuadratureOracle(int nodes_per_panel = 20, double r_max = 80.0, double panel_width = 2.0);

    int nodes_per_panel() const { return nodes_per_panel_; }
    double r_max() const { return r_max_; }
    const char* scheme() const { return "composite-gauss-legendre"; }

    double integrate(const std::function<double(double)>& f) const;
    /// Integral of f over [a, b] with a single mapped Gauss-Legendre rule.
    double integrate_segment(const std::function<double(double)>& f, double a, double b) const;

    double moment(const RadialFunction& f, int n) const;
    double overlap(const RadialFunction& f, const RadialFunction& g) const;
    double kinetic(const RadialFunction& f, const RadialFunction& g) const;
    double nuclear(const RadialFunction& f, const RadialFunction& g) const;
    double coulomb(const RadialFunction& f1, const RadialFunction& f2, const RadialFunction& g1,
                   const RadialFunction& g2) const;

  private:
    int nodes_per_panel_;
    double r_max_;
    double panel_width_;
    std::vector<double> ref_nodes_;   // on (-1, 1)
    std::vector<double> ref_weights_;
    std::vector<double> panel_edges_;
};

} // namespace qpin

#endif
