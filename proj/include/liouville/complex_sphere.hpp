#pragma once

#include <cmath>
#include <complex>

namespace liouville {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Point on the Riemann sphere: either a finite complex value or infinity.
// The second chart is z -> -1/z, which sends infinity to 0.
struct ComplexPt {
    Cplx value{0.0, 0.0};
    bool at_infinity = false;

    static ComplexPt finite(Cplx z) { return ComplexPt{z, false}; }
    static ComplexPt infinity() { return ComplexPt{Cplx(0.0, 0.0), true}; }

    bool is_finite() const { return !at_infinity; }

    // Chart switch z -> -1/z (an involution on the sphere).
    ComplexPt chart_switched() const {
        if (at_infinity) return finite(Cplx(0.0, 0.0));
        if (value == Cplx(0.0, 0.0)) return infinity();
        return finite(-1.0 / value);
    }
};

// Chordal (spherical) distance, diameter 2.
inline double chordal_distance(const ComplexPt& p, const ComplexPt& q) {
    auto lift = [](const ComplexPt& a) {
        return a.at_infinity ? 0.0 : 1.0 / std::sqrt(1.0 + std::norm(a.value));
    };
    if (p.at_infinity && q.at_infinity) return 0.0;
    if (p.at_infinity) return 2.0 * lift(q);
    if (q.at_infinity) return 2.0 * lift(p);
    return 2.0 * std::abs(p.value - q.value) * lift(p) * lift(q);
}

inline double chordal_distance(Cplx p, Cplx q) {
    return chordal_distance(ComplexPt::finite(p), ComplexPt::finite(q));
}

} // namespace liouville
