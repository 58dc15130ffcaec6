#pragma once

#include <cmath>

#include "liouville/complex_sphere.hpp"
#include "liouville/errors.hpp"

namespace liouville {

// Order-3 jet: value and first three derivatives with respect to z.
// Arithmetic follows truncated Taylor rules; this is what carries g', g'',
// g''' into the Schwarzian and curvature computations.
struct Jet3 {
    Cplx f0{}, f1{}, f2{}, f3{};

    static Jet3 constant(Cplx c) { return {c, 0.0, 0.0, 0.0}; }
    static Jet3 variable(Cplx z) { return {z, 1.0, 0.0, 0.0}; }

    Jet3 operator-() const { return {-f0, -f1, -f2, -f3}; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.f0 + b.f0, a.f1 + b.f1, a.f2 + b.f2, a.f3 + b.f3};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.f0 - b.f0, a.f1 - b.f1, a.f2 - b.f2, a.f3 - b.f3};
}
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.f0 * b.f0,
            a.f1 * b.f0 + a.f0 * b.f1,
            a.f2 * b.f0 + 2.0 * a.f1 * b.f1 + a.f0 * b.f2,
            a.f3 * b.f0 + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f0 * b.f3};
}
inline Jet3 operator*(Cplx c, const Jet3& a) { return {c * a.f0, c * a.f1, c * a.f2, c * a.f3}; }
inline Jet3 operator*(const Jet3& a, Cplx c) { return c * a; }
inline Jet3 operator+(const Jet3& a, Cplx c) { return {a.f0 + c, a.f1, a.f2, a.f3}; }
inline Jet3 operator+(Cplx c, const Jet3& a) { return a + c; }
inline Jet3 operator-(const Jet3& a, Cplx c) { return {a.f0 - c, a.f1, a.f2, a.f3}; }

inline Jet3 reciprocal(const Jet3& g) {
    const Cplx g0 = g.f0;
    const Cplx r0 = 1.0 / g0;
    const Cplx r1 = -g.f1 * r0 * r0;
    const Cplx r2 = (-g.f2 + 2.0 * g.f1 * g.f1 * r0) * r0 * r0;
    const Cplx r3 = (-g.f3 + 6.0 * g.f1 * g.f2 * r0 - 6.0 * g.f1 * g.f1 * g.f1 * r0 * r0) * r0 * r0;
    return {r0, r1, r2, r3};
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
inline Jet3 operator/(const Jet3& a, Cplx c) { return (1.0 / c) * a; }

// Composition f(g) from derivatives of f at g.f0 (Faa di Bruno to order 3).
inline Jet3 compose(const Jet3& f, const Jet3& g) {
    const Cplx g1 = g.f1, g2 = g.f2, g3 = g.f3;
    return {f.f0,
            f.f1 * g1,
            f.f2 * g1 * g1 + f.f1 * g2,
            f.f3 * g1 * g1 * g1 + 3.0 * f.f2 * g1 * g2 + f.f1 * g3};
}

inline Jet3 log(const Jet3& g) {
    const Cplx v = g.f0;
    Jet3 outer{std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v)};
    return compose(outer, g);
}

inline Jet3 exp(const Jet3& g) {
    const Cplx e = std::exp(g.f0);
    Jet3 outer{e, e, e, e};
    return compose(outer, g);
}

// Principal-branch power g^alpha (alpha may be complex).
inline Jet3 pow(const Jet3& g, Cplx alpha) {
    const Cplx v = g.f0;
    const Cplx p = std::exp(alpha * std::log(v));
    Jet3 outer{p,
               alpha * p / v,
               alpha * (alpha - 1.0) * p / (v * v),
               alpha * (alpha - 1.0) * (alpha - 2.0) * p / (v * v * v)};
    return compose(outer, g);
}

// Mobius-invariant Schwarzian derivative assembled from jet components:
// (g''/g')' - (g''/g')^2 / 2 = g'''/g' - (3/2)(g''/g')^2.
inline Cplx schwarzian(const Jet3& g) {
    const double scale = 1.0 + std::abs(g.f0);
    if (std::abs(g.f1) < 1e-13 * scale)
        throw critical_point("schwarzian requires g' != 0 at the evaluation point");
    const Cplx q = g.f2 / g.f1;
    return g.f3 / g.f1 - 1.5 * q * q;
}

} // namespace liouville
