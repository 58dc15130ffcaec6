#pragma once

#include <functional>

#include "liouville/complex_sphere.hpp"
#include "liouville/jet.hpp"

namespace liouville {

// The curvature-K model surface: Riemann sphere (K=1), plane (K=0) or unit
// disk (K=-1), with conformal density 4|dzeta|^2 / (1 + K|zeta|^2)^2.

// Value-plus-derivatives of a sphere-valued map. When `inverted` is set the
// jet describes -1/g instead of g (the chart used near poles; only ever set
// for K = 1 targets, where the chart switch is an isometry).
struct SphereJet {
    Jet3 jet;
    bool inverted = false;

    ComplexPt value() const {
        if (!inverted) return ComplexPt::finite(jet.f0);
        if (jet.f0 == Cplx(0.0)) return ComplexPt::infinity();
        return ComplexPt::finite(-1.0 / jet.f0);
    }
};

// |g'| / (1 + |g|^2); invariant under the -1/g chart switch, so it is
// well defined across poles.
inline double spherical_derivative(const SphereJet& g) {
    return std::abs(g.jet.f1) / (1.0 + std::norm(g.jet.f0));
}

inline double spherical_derivative(const Jet3& g) {
    return std::abs(g.f1) / (1.0 + std::norm(g.f0));
}

// Metric length scale at zeta (so ds = conformal_factor * |dzeta|).
inline double conformal_factor(int K, Cplx zeta) {
    return 2.0 / (1.0 + static_cast<double>(K) * std::norm(zeta));
}

struct CurvatureResult {
    double value;
    double error_estimate;
};

// Signed geodesic curvature of a parametrized curve in the model surface,
// computed by a finite-difference covariant derivative of the metric-unit
// tangent. Sign convention: positive when curving toward the left normal of
// the parametrization direction. Throws StepTooLarge when the Richardson
// error estimate exceeds tol.
CurvatureResult geodesic_curvature(const std::function<Cplx(double)>& curve, int K, double t,
                                   double h, double tol = 1e-6);

} // namespace liouville
