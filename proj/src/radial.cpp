#include "quasipin/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpin {

namespace {
constexpr double four_pi = 4.0 * std::numbers::pi;
}

RadialFunction::RadialFunction(std::vector<RadialTerm> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (!(t.exponent > 0.0))
            throw std::invalid_argument("radial term exponent must be positive");
        if (t.power < -2)
            throw std::invalid_argument("radial term power below Laplacian closure range");
    }
    canonicalize();
}

RadialFunction RadialFunction::monomial(double coeff, int power, double exponent) {
    return RadialFunction({{coeff, power, exponent}});
}

void RadialFunction::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const RadialTerm& a, const RadialTerm& b) {
        if (a.power != b.power)
            return a.power < b.power;
        return a.exponent < b.exponent;
    });
    std::vector<RadialTerm> merged;
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().power == t.power &&
            merged.back().exponent == t.exponent) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const RadialTerm& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
}

int RadialFunction::min_power() const {
    int m = 0;
    for (const auto& t : terms_)
        m = std::min(m, t.power);
    return m;
}

double RadialFunction::operator()(double r) const {
    double v = 0.0;
    for (const auto& t : terms_)
        v += t.coeff * std::pow(r, t.power) * std::exp(-t.exponent * r);
    return v;
}

RadialFunction RadialFunction::scaled(double s) const {
    std::vector<RadialTerm> out = terms_;
    for (auto& t : out)
        t.coeff *= s;
    return RadialFunction(std::move(out));
}

RadialFunction& RadialFunction::operator+=(const RadialFunction& other) {
    std::vector<RadialTerm> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    terms_ = std::move(all);
    canonicalize();
    return *this;
}

RadialFunction operator+(RadialFunction a, const RadialFunction& b) {
    a += b;
    return a;
}

RadialFunction product(const RadialFunction& f, const RadialFunction& g) {
    std::vector<RadialTerm> out;
    out.reserve(f.terms().size() * g.terms().size());
    for (const auto& a : f.terms())
        for (const auto& b : g.terms())
            out.push_back({a.coeff * b.coeff, a.power + b.power, a.exponent + b.exponent});
    return RadialFunction(std::move(out));
}

RadialFunction RadialFunction::laplacian() const {
    // (d2/dr2 + (2/r) d/dr) c r^k e^{-b r}
    //   = c [k(k+1) r^{k-2} - 2 b (k+1) r^{k-1} + b^2 r^k] e^{-b r}
    std::vector<RadialTerm> out;
    for (const auto& t : terms_) {
        const double k = static_cast<double>(t.power);
        const double b = t.exponent;
        if (t.power != 0)
            out.push_back({t.coeff * k * (k + 1.0), t.power - 2, b});
        out.push_back({-t.coeff * 2.0 * b * (k + 1.0), t.power - 1, b});
        out.push_back({t.coeff * b * b, t.power, b});
    }
    return RadialFunction(std::move(out));
}

double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(26);
        long double acc = 1.0L;
        t[0] = 1.0;
        for (int i = 1; i <= 25; ++i) {
            acc *= i;
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (n < 0 || n > 25)
        throw std::invalid_argument("factorial argument out of range");
    return table[n];
}

double moment_integral(const RadialFunction& f, int n) {
    double s = 0.0;
    for (const auto& t : f.terms()) {
        const int m = t.power + n;
        if (m < 0)
            throw std::invalid_argument("moment_integral: n + power must be >= 0");
        s += t.coeff * factorial(m) / std::pow(t.exponent, m + 1);
    }
    return s;
}

double lower_incomplete_moment(int n, double q, double x) {
    // (n!/q^{n+1}) (1 - e^{-qx} sum_{m<=n} (qx)^m / m!)
    double partial = 0.0;
    double term = 1.0;
    for (int m = 0; m <= n; ++m) {
        if (m > 0)
            term *= q * x / m;
        partial += term;
    }
    return factorial(n) / std::pow(q, n + 1) * (1.0 - std::exp(-q * x) * partial);
}

double overlap(const RadialFunction& f, const RadialFunction& g) {
    return four_pi * moment_integral(product(f, g), 2);
}

double kinetic(const RadialFunction& f, const RadialFunction& g) {
    return -0.5 * four_pi * moment_integral(product(f, g.laplacian()), 2);
}

double nuclear(const RadialFunction& f, const RadialFunction& g) {
    return four_pi * moment_integral(product(f, g), 1);
}

namespace {

// Radial two-electron kernel for a pair of density terms
//   a r1^k e^{-p r1}  and  b r2^l e^{-q r2}:
//   I = int r1^{k+1} e^{-p r1} [int_0^{r1} r2^{l+2} e^{-q r2} dr2] dr1
//     + int r1^{k+2} e^{-p r1} [int_{r1}^inf r2^{l+1} e^{-q r2} dr2] dr1,
// both reduced to factorial sums.
double coulomb_term_pair(int k, double p, int l, double q) {
    const double pq = p + q;

    double inner = 0.0; // sum over the incomplete-gamma expansion of the inner lower integral
    double qm_over_mfact = 1.0;
    for (int m = 0; m <= l + 2; ++m) {
        if (m > 0)
            qm_over_mfact *= q / m;
        inner += qm_over_mfact * factorial(k + 1 + m) / std::pow(pq, k + 2 + m);
    }
    const double term1 =
        factorial(l + 2) / std::pow(q, l + 3) * (factorial(k + 1) / std::pow(p, k + 2) - inner);

    double tail = 0.0;
    qm_over_mfact = 1.0;
    for (int m = 0; m <= l + 1; ++m) {
        if (m > 0)
            qm_over_mfact *= q / m;
        tail += qm_over_mfact * factorial(k + 2 + m) / std::pow(pq, k + 3 + m);
    }
    const double term2 = factorial(l + 1) / std::pow(q, l + 2) * tail;

    return term1 + term2;
}

} // namespace

double coulomb(const RadialFunction& f1, const RadialFunction& f2, const RadialFunction& g1,
               const RadialFunction& g2) {
    const RadialFunction bra = product(f1, f2);
    const RadialFunction ket = product(g1, g2);
    double s = 0.0;
    for (const auto& a : bra.terms())
        for (const auto& b : ket.terms()) {
            if (a.power < 0 || b.power < 0)
                throw std::invalid_argument("coulomb: negative powers not supported");
            s += a.coeff * b.coeff *
                 coulomb_term_pair(a.power, a.exponent, b.power, b.exponent);
        }
    return four_pi * four_pi * s;
}

namespace {

// Nodes and weights of the n-point Gauss-Legendre rule on (-1, 1),
// Newton iteration on the Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15)
                break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

} // namespace

QuadratureOracle::QuadratureOracle(int nodes_per_panel, double r_max, double panel_width)
    : nodes_per_panel_(nodes_per_panel), r_max_(r_max), panel_width_(panel_width) {
    if (nodes_per_panel < 2 || r_max <= 0.0 || panel_width <= 0.0)
        throw std::invalid_argument("quadrature oracle: bad settings");
    gauss_legendre(nodes_per_panel_, ref_nodes_, ref_weights_);
    double edge = 0.0;
    panel_edges_.push_back(0.0);
    while (edge < r_max_) {
        edge = std::min(edge + panel_width_, r_max_);
        panel_edges_.push_back(edge);
    }
}

double QuadratureOracle::integrate_segment(const std::function<double(double)>& f, double a,
                                           double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < nodes_per_panel_; ++i)
        s += ref_weights_[i] * f(mid + half * ref_nodes_[i]);
    return s * half;
}

double QuadratureOracle::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < panel_edges_.size(); ++p)
        s += integrate_segment(f, panel_edges_[p], panel_edges_[p + 1]);
    return s;
}

double QuadratureOracle::moment(const RadialFunction& f, int n) const {
    return integrate([&](double r) { return f(r) * std::pow(r, n); });
}

double QuadratureOracle::overlap(const RadialFunction& f, const RadialFunction& g) const {
    return four_pi * integrate([&](double r) { return f(r) * g(r) * r * r; });
}

double QuadratureOracle::kinetic(const RadialFunction& f, const RadialFunction& g) const {
    const RadialFunction lap = g.laplacian();
    return -0.5 * four_pi * integrate([&](double r) { return f(r) * lap(r) * r * r; });
}

double QuadratureOracle::nuclear(const RadialFunction& f, const RadialFunction& g) const {
    return four_pi * integrate([&](double r) { return f(r) * g(r) * r; });
}

double QuadratureOracle::coulomb(const RadialFunction& f1, const RadialFunction& f2,
                                 const RadialFunction& g1, const RadialFunction& g2) const {
    const RadialFunction bra = product(f1, f2);
    const RadialFunction ket = product(g1, g2);

    // Per-panel moments of the inner density, then running sums so the
    // inner integrals at an outer node only need two partial panels.
    const std::size_t np = panel_edges_.size() - 1;
    std::vector<double> panel_m2(np), panel_m1(np);
    for (std::size_t p = 0; p < np; ++p) {
        panel_m2[p] = integrate_segment([&](double r) { return ket(r) * r * r; },
                                        panel_edges_[p], panel_edges_[p + 1]);
        panel_m1[p] = integrate_segment([&](double r) { return ket(r) * r; }, panel_edges_[p],
                                        panel_edges_[p + 1]);
    }
    std::vector<double> below(np + 1, 0.0), above(np + 1, 0.0);
    for (std::size_t p = 0; p < np; ++p)
        below[p + 1] = below[p] + panel_m2[p];
    for (std::size_t p = np; p-- > 0;)
        above[p] = above[p + 1] + panel_m1[p];

    double total = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        const double a = panel_edges_[p], b = panel_edges_[p + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < nodes_per_panel_; ++i) {
            const double r1 = mid + half * ref_nodes_[i];
            const double low = below[p] + integrate_segment(
                                              [&](double r) { return ket(r) * r * r; }, a, r1);
            const double high =
                integrate_segment([&](double r) { return ket(r) * r; }, r1, b) + above[p + 1];
            total += ref_weights_[i] * half * bra(r1) * r1 * r1 * (low / r1 + high);
        }
    }
    return four_pi * four_pi * total;
}

} // namespace qpin
