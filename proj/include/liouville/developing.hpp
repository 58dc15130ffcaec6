#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "liouville/circle.hpp"
#include "liouville/mobius.hpp"
#include "liouville/schwarzian.hpp"
#include "liouville/spaceform.hpp"

namespace liouville {

class NumericMap;

// Finite Laurent series F(z) = sum_{k} coeffs[k] z^{min_degree + k} with a
// boundary symmetry: RealOnReal means F(conj z) = conj F(z) (real
// coefficients), Unimodular means F(z) conj(F(conj z)) = 1 (unimodular
// monomials).
enum class FactorSymmetry { RealOnReal, Unimodular };

struct SymmetricFactor {
    int min_degree = 0;
    std::vector<Cplx> coeffs; // empty means F == 0
    FactorSymmetry symmetry = FactorSymmetry::RealOnReal;

    static SymmetricFactor zero() { return {}; }
    static SymmetricFactor one() { return {0, {Cplx(1.0)}, FactorSymmetry::RealOnReal}; }
    static SymmetricFactor real_laurent(int min_degree, std::vector<double> c);
    static SymmetricFactor unimodular_monomial(Cplx coeff, int degree);

    bool is_zero() const { return coeffs.empty(); }
    int order_at_zero() const; // throws for F == 0
    Cplx eval(Cplx z) const;
    Jet3 eval_jet(Cplx z) const;       // derivatives in z
    SymmetricFactor times_power(int k) const;
    void validate() const;             // throws SymmetryViolation
};

enum class MapVariant { PowerForm, LogForm, SpiralForm, Numeric };

// Developing map g of a constant-curvature metric: one of the closed normal
// forms psi(z^gamma F), psi(F + log z), psi(z^{i gamma} F), or an ODE-backed
// solution of {g, z} = Q. Evaluation is two-chart on the sphere (K = 1):
// values of modulus > 1 are reported in the -1/g chart.
struct DevelopingMap {
    MapVariant variant = MapVariant::PowerForm;
    int K = 1;
    double domain_radius = std::numeric_limits<double>::infinity();

    // Closed-form payload. gamma is the normal-form exponent (PowerForm keeps
    // it in [0,1) and folds integer parts into F; SpiralForm has gamma < 0).
    double gamma = 0.0;
    int gamma_folded = 0; // integer power moved from z^gamma into F
    SymmetricFactor F = SymmetricFactor::one();
    Mobius psi;

    // Numeric payload; psi doubles as the post-composition gauge.
    std::shared_ptr<NumericMap> numeric;

    SphereJet eval_jet(Cplx z) const;
    ComplexPt eval(Cplx z) const;
    Cplx schwarzian_at(Cplx z) const;

    // Jet in w of the lifted map g~(w) = g(e^w) (single-valued lift).
    SphereJet eval_log_chart(Cplx w) const;

    // Mobius Psi with g~(w + 2 pi i) = Psi(g~(w)) (closed forms only).
    Mobius descent_map() const;

    DevelopingMap postcompose(const Mobius& m) const;
};

// Apply a Mobius map to a two-chart jet, re-deciding the chart.
SphereJet apply_mobius(const SphereJet& j, const Mobius& m, int K);

// The three boundary normal forms. K <= 0 constructions run a range check
// 1 + K|g|^2 > 0 on a sample of the half-disk of the given radius.
DevelopingMap construct_case_i(double gamma, SymmetricFactor F, Mobius psi, int K,
                               double domain_radius = 1.0);
DevelopingMap construct_case_ii(SymmetricFactor F, Mobius psi, int K,
                                double domain_radius = 1.0);
DevelopingMap construct_case_iii(double gamma, SymmetricFactor F, Mobius psi, int K,
                                 double domain_radius = 1.0);

// Exact solutions of {g, z} = c/z^2 for real c: psi(log z) when 2c = 1,
// psi(z^gamma) with gamma = sqrt(1 - 2c) otherwise.
DevelopingMap solve_global(double c, Mobius psi = Mobius::identity(), int K = 1);

// ODE-backed developing map with basepoint normalization
// (y1, y2, y1', y2') = (1, 0, 0, 1).
DevelopingMap developing_map_numeric(const SchwarzianSpec& spec, Cplx basepoint,
                                     Mobius gauge = Mobius::identity());

struct BoundaryCircleFit {
    GeneralizedCircle circle;
    double residual; // max chordal residual over the extra samples
};

// Circle carrying the image of a real boundary interval (approached from
// above), fitted through three well-spread samples and checked on 20 more.
BoundaryCircleFit boundary_circles(const DevelopingMap& dm, double a, double b,
                                   double pass_tol = 1e-8);

} // namespace liouville
