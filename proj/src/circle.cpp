#include "liouville/circle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// Canonicalize (A, B, D) up to positive scaling and sign.
GeneralizedCircle canonicalize(double A, Cplx B, double D) {
    const double s2 = std::norm(B) - A * D;
    if (!(s2 > 0.0) || !std::isfinite(s2))
        throw degenerate_input("degenerate circle coefficients (|B|^2 - AD <= 0)");
    const double s = std::sqrt(s2);
    A /= s; B /= s; D /= s;
    bool flip = false;
    if (A < 0.0) {
        flip = true;
    } else if (A == 0.0) {
        if (B.real() < 0.0) flip = true;
        else if (B.real() == 0.0 && B.imag() < 0.0) flip = true;
    }
    if (flip) { A = -A; B = -B; D = -D; }
    if (std::abs(A) < 1e-14) A = std::abs(A) == 0.0 ? 0.0 : A;
    return GeneralizedCircle{A, B, D};
}

} // namespace

double GeneralizedCircle::algebraic_residual(const ComplexPt& z) const {
    if (z.at_infinity) return A;
    return A * std::norm(z.value) + 2.0 * (std::conj(B) * z.value).real() + D;
}

double GeneralizedCircle::chordal_residual(const ComplexPt& z) const {
    if (z.at_infinity) return std::abs(A);
    return std::abs(algebraic_residual(z)) / (1.0 + std::norm(z.value));
}

std::vector<ComplexPt> GeneralizedCircle::sample(int n) const {
    std::vector<ComplexPt> out;
    out.reserve(static_cast<size_t>(n));
    if (is_line()) {
        // Foot point and unit direction of the line 2 Re(conj(B) z) + D = 0.
        const Cplx p0 = -0.5 * D * B / std::norm(B);
        const Cplx u = Cplx(0.0, 1.0) * B / std::abs(B);
        for (int k = 0; k < n; ++k) {
            const double t = std::tan(kPi * (static_cast<double>(k) / n - 0.499));
            out.push_back(ComplexPt::finite(p0 + t * u));
        }
    } else {
        const Cplx m = center();
        const double r = radius();
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * kPi * k / n + 0.37;
            out.push_back(ComplexPt::finite(m + r * Cplx(std::cos(th), std::sin(th))));
        }
    }
    return out;
}

GeneralizedCircle circle_through(const ComplexPt& p1, const ComplexPt& p2, const ComplexPt& p3) {
    const std::array<ComplexPt, 3> pts{p1, p2, p3};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (chordal_distance(pts[i], pts[j]) < 1e-13)
                throw degenerate_input("circle_through requires three distinct points");

    // Row per point of the homogeneous system M * (A, Bx, By, D) = 0, with
    // B = Bx + i By and the residual written as A|z|^2 + 2Bx x + 2By y + D.
    double M[3][4];
    for (int i = 0; i < 3; ++i) {
        if (pts[i].at_infinity) {
            M[i][0] = 1.0; M[i][1] = 0.0; M[i][2] = 0.0; M[i][3] = 0.0;
        } else {
            const Cplx z = pts[i].value;
            M[i][0] = std::norm(z);
            M[i][1] = 2.0 * z.real();
            M[i][2] = 2.0 * z.imag();
            M[i][3] = 1.0;
        }
    }
    // Null vector by cofactor expansion.
    auto det3 = [&](int c0, int c1, int c2) {
        return M[0][c0] * (M[1][c1] * M[2][c2] - M[1][c2] * M[2][c1])
             - M[0][c1] * (M[1][c0] * M[2][c2] - M[1][c2] * M[2][c0])
             + M[0][c2] * (M[1][c0] * M[2][c1] - M[1][c1] * M[2][c0]);
    };
    const double A = det3(1, 2, 3);
    const double Bx = -det3(0, 2, 3);
    const double By = det3(0, 1, 3);
    const double D = -det3(0, 1, 2);
    return canonicalize(A, Cplx(Bx, By), D);
}

double inversive_product(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
    return (std::conj(c1.B) * c2.B + c1.B * std::conj(c2.B)).real() / 2.0
         - 0.5 * (c1.A * c2.D + c2.A * c1.D);
}

namespace {

// Intersection of a line (A = 0) with an arbitrary generalized circle.
IntersectionResult line_vs_circle(const GeneralizedCircle& line, const GeneralizedCircle& circ) {
    const Cplx p0 = -0.5 * line.D * line.B / std::norm(line.B);
    const Cplx u = Cplx(0.0, 1.0) * line.B / std::abs(line.B);
    // Substitute z = p0 + t u into the circle equation.
    const double qa = circ.A;
    const double qb = 2.0 * (circ.A * (std::conj(u) * p0).real()
                             + (std::conj(circ.B) * u).real());
    const double qc = circ.A * std::norm(p0) + 2.0 * (std::conj(circ.B) * p0).real() + circ.D;
    if (std::abs(qa) < 1e-14) {
        // Two lines: they always share the point at infinity.
        if (std::abs(qb) < 1e-12) {
            // Parallel. Same line was handled by the caller.
            return {IntersectionResult::Tag::Tangent, {ComplexPt::infinity()}};
        }
        return {IntersectionResult::Tag::TwoPoints,
                {ComplexPt::finite(p0 - (qc / qb) * u), ComplexPt::infinity()}};
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    const double scale = qb * qb + std::abs(4.0 * qa * qc);
    if (disc > 1e-12 * scale) {
        const double sq = std::sqrt(disc);
        // Numerically stable quadratic roots.
        const double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
        const double t1 = q / qa;
        const double t2 = (std::abs(q) > 0) ? qc / q : -qb / qa - t1;
        return {IntersectionResult::Tag::TwoPoints,
                {ComplexPt::finite(p0 + t1 * u), ComplexPt::finite(p0 + t2 * u)}};
    }
    if (disc < -1e-12 * scale) return {IntersectionResult::Tag::Disjoint, {}};
    return {IntersectionResult::Tag::Tangent, {ComplexPt::finite(p0 - 0.5 * qb / qa * u)}};
}

bool same_circle(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
    return std::abs(c1.A - c2.A) < 1e-10 && std::abs(c1.B - c2.B) < 1e-10
        && std::abs(c1.D - c2.D) < 1e-10;
}

} // namespace

IntersectionResult classify_intersection(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
    if (same_circle(c1, c2)) return {IntersectionResult::Tag::Equal, {}};

    const double delta = inversive_product(c1, c2);
    if (c1.is_line()) return line_vs_circle(c1, c2);
    if (c2.is_line()) return line_vs_circle(c2, c1);

    // Radical line of the pencil passes through all common points.
    const double lA = c2.A * c1.A - c1.A * c2.A; // identically zero
    (void)lA;
    GeneralizedCircle radical;
    try {
        radical = [&] {
            const double A = 0.0;
            const Cplx B = c2.A * c1.B - c1.A * c2.B;
            const double D = c2.A * c1.D - c1.A * c2.D;
            const double s2 = std::norm(B) - A * D;
            if (!(s2 > 1e-28)) throw degenerate_input("concentric");
            GeneralizedCircle g{A, B, D};
            const double s = std::sqrt(s2);
            g.B /= s; g.D /= s;
            return g;
        }();
    } catch (const Error&) {
        // Concentric circles never meet.
        return {IntersectionResult::Tag::Disjoint, {}};
    }
    IntersectionResult r = line_vs_circle(radical, c1);
    // The pencil discriminant sign is the classification; fix borderline
    // disagreements between the quadratic and the inversive product.
    if (r.tag == IntersectionResult::Tag::Disjoint && std::abs(delta) < 1.0 - 1e-9)
        throw degenerate_input("inconsistent intersection classification");
    return r;
}

GeneralizedCircle transport(const GeneralizedCircle& c, const Mobius& m) {
    const auto pts = c.sample(7);
    // Pick three images that are pairwise well separated on the sphere.
    std::vector<ComplexPt> img;
    for (const auto& p : pts) img.push_back(m.apply(p));
    int best_i = 0, best_j = 1, best_k = 2;
    double best = -1.0;
    for (size_t i = 0; i < img.size(); ++i)
        for (size_t j = i + 1; j < img.size(); ++j)
            for (size_t k = j + 1; k < img.size(); ++k) {
                const double q = std::min({chordal_distance(img[i], img[j]),
                                           chordal_distance(img[i], img[k]),
                                           chordal_distance(img[j], img[k])});
                if (q > best) {
                    best = q;
                    best_i = static_cast<int>(i);
                    best_j = static_cast<int>(j);
                    best_k = static_cast<int>(k);
                }
            }
    return circle_through(img[best_i], img[best_j], img[best_k]);
}

} // namespace liouville
