#pragma once

#include <cmath>

#include "liouville/complex_sphere.hpp"
#include "liouville/errors.hpp"
#include "liouville/jet.hpp"

namespace liouville {

// z -> (az + b) / (cz + d), kept normalized to ad - bc = 1
// (determined up to a global sign).
struct Mobius {
    Cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Mobius() = default;
    Mobius(Cplx a_, Cplx b_, Cplx c_, Cplx d_) : a(a_), b(b_), c(c_), d(d_) { normalize(); }

    static Mobius identity() { return Mobius(); }

    Cplx det() const { return a * d - b * c; }

    void normalize() {
        const Cplx dt = det();
        if (std::abs(dt) < 1e-300)
            throw degenerate_input("Mobius coefficients with vanishing determinant");
        const Cplx s = std::sqrt(dt);
        a /= s; b /= s; c /= s; d /= s;
    }

    Mobius inverse() const { return Mobius(d, -b, -c, a); }

    ComplexPt apply(const ComplexPt& z) const {
        if (z.at_infinity) {
            if (c == Cplx(0.0)) return ComplexPt::infinity();
            return ComplexPt::finite(a / c);
        }
        const Cplx den = c * z.value + d;
        const Cplx num = a * z.value + b;
        // Total on the sphere: poles map to infinity. Guard against the
        // fully degenerate 0/0 which cannot occur for det = 1.
        if (std::abs(den) <= 1e-15 * (1.0 + std::abs(c) * std::abs(z.value) + std::abs(d)))
            return ComplexPt::infinity();
        return ComplexPt::finite(num / den);
    }

    ComplexPt apply(Cplx z) const { return apply(ComplexPt::finite(z)); }

    // Jet of the image. Caller must keep away from the pole; near a pole use
    // apply_inverted_jet (the -1/g chart) instead.
    Jet3 apply_jet(const Jet3& z) const { return (a * z + b) / (c * z + d); }

    // Jet of -1/psi(z), finite across poles of psi.
    Jet3 apply_inverted_jet(const Jet3& z) const { return -(c * z + d) / (a * z + b); }

    friend Mobius operator*(const Mobius& m1, const Mobius& m2) {
        return Mobius(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                      m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d);
    }
};

// The isometry group of the curvature-K model metric in normal form:
// g -> (alpha g - conj(beta)) / (K beta g + conj(alpha)),
// subject to |alpha|^2 + K |beta|^2 = 1.
inline Mobius isometry_normal_form(Cplx alpha, Cplx beta, int K) {
    const double unit = std::norm(alpha) + static_cast<double>(K) * std::norm(beta);
    if (std::abs(unit - 1.0) > 1e-12)
        throw constraint_violation("|alpha|^2 + K|beta|^2 must equal 1");
    return Mobius(alpha, -std::conj(beta), static_cast<double>(K) * beta, std::conj(alpha));
}

} // namespace liouville
