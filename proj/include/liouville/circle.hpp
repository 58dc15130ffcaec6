#pragma once

#include <optional>
#include <vector>

#include "liouville/complex_sphere.hpp"
#include "liouville/mobius.hpp"

namespace liouville {

// Generalized circle { z : A|z|^2 + 2 Re(conj(B) z) + D = 0 }; lines have
// A = 0 and pass through infinity. Stored in the canonical scaling
// |B|^2 - A*D = 1 with A >= 0 (for lines: Re B > 0, or Re B == 0 and
// Im B > 0), which makes equality testing well defined.
struct GeneralizedCircle {
    double A = 0.0;
    Cplx B{0.0, 0.0};
    double D = 0.0;

    bool is_line() const { return A == 0.0; }

    // Finite circles only.
    Cplx center() const { return -B / A; }
    double radius() const { return 1.0 / A; }

    // Signed canonical-form residual; ~2x the Euclidean distance near the
    // circle. Infinity evaluates to A (so lines contain infinity).
    double algebraic_residual(const ComplexPt& z) const;

    // Chordal-scale distance proxy used by fit diagnostics.
    double chordal_residual(const ComplexPt& z) const;

    bool contains(const ComplexPt& z, double tol = 1e-10) const {
        return chordal_residual(z) <= tol;
    }

    // Points on the circle, well spread.
    std::vector<ComplexPt> sample(int n) const;
};

struct IntersectionResult {
    enum class Tag { TwoPoints, Tangent, Disjoint, Equal };
    Tag tag;
    std::vector<ComplexPt> witnesses; // 2 for TwoPoints, 1 for Tangent
};

// Circle through three distinct sphere points (any may be infinity).
GeneralizedCircle circle_through(const ComplexPt& p1, const ComplexPt& p2, const ComplexPt& p3);

// Inversive product of two canonically scaled circles; |.| < 1 iff the
// circles meet twice, = 1 tangent or equal, > 1 disjoint. For circles meeting
// at angle theta it equals +-cos(theta).
double inversive_product(const GeneralizedCircle& c1, const GeneralizedCircle& c2);

IntersectionResult classify_intersection(const GeneralizedCircle& c1, const GeneralizedCircle& c2);

// Image of a circle under a Mobius map, computed by mapping three spread
// samples and refitting.
GeneralizedCircle transport(const GeneralizedCircle& c, const Mobius& m);

} // namespace liouville
