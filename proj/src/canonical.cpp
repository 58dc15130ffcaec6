#include "liouville/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// Geometry of the image of the closed upper half-plane minus the origin:
// Power family maps onto the sector {r e^{i phi}: r > 0, 0 <= phi <= pi*gamma},
// Log family onto the strip {0 <= Im <= pi}.
struct SectorGap {
    bool inside = false;        // z0 in the closed sector
    double attained = 0.0;      // min distance attained at positive radius (inf if none)
    double closure = 0.0;       // distance to the closed sector including the origin
    bool has_foot = false;
};

SectorGap sector_gap(Cplx z0, double phi_max) {
    SectorGap g;
    const double r0 = std::abs(z0);
    if (r0 == 0.0) {
        g.inside = false;
        g.attained = std::numeric_limits<double>::infinity();
        g.closure = 0.0;
        return g;
    }
    double th = std::arg(z0);
    if (th < 0.0) th += 2.0 * kPi;
    if (phi_max >= 2.0 * kPi || th <= phi_max) {
        g.inside = true;
        return g;
    }
    g.attained = std::numeric_limits<double>::infinity();
    g.closure = r0;
    for (double edge : {0.0, phi_max}) {
        double sep = std::abs(th - edge);
        sep = std::min(sep, 2.0 * kPi - sep);
        if (sep < kPi / 2.0) {
            const double d = r0 * std::sin(sep);
            g.attained = std::min(g.attained, d);
            g.closure = std::min(g.closure, d);
            g.has_foot = true;
        }
    }
    return g;
}

// Minimum of the density denominator over a sample of the domain, in both
// the z and -1/z charts; corroborates the geometric verdict.
double denominator_sample_min(const CanonicalParams& p) {
    double best = std::numeric_limits<double>::infinity();
    const double K = p.K, l2 = p.lambda * p.lambda;
    for (int ir = 0; ir <= 96; ++ir) {
        const double lr = -9.0 + 18.0 * ir / 96.0;
        const double r = std::pow(10.0, lr);
        for (int it = 0; it <= 48; ++it) {
            const double th = kPi * it / 48.0;
            const Cplx z = r * Cplx(std::cos(th), std::sin(th));
            double den;
            if (p.family == Family::Power) {
                const Cplx w = std::exp(p.gamma * std::log(z));
                den = K * l2 + std::norm(w - p.z0);
            } else {
                const Cplx q(std::log(r), th);
                den = K * l2 + std::norm(q - p.z0);
            }
            best = std::min(best, den);
        }
    }
    return best;
}

} // namespace

Validity validate_params(const CanonicalParams& p) {
    Validity v;
    if (!(p.lambda > 0.0)) {
        v.reason = "lambda must be positive";
        return v;
    }
    if (p.family == Family::Power && !(p.gamma > 0.0)) {
        v.reason = "gamma must be positive";
        return v;
    }

    const double l = p.lambda;
    if (p.family == Family::Log) {
        const double im = p.z0.imag();
        const double dist = im < 0.0 ? -im : (im > kPi ? im - kPi : 0.0);
        const double need = (p.K == 1) ? -1.0 : (p.K == 0 ? 0.0 : l);
        v.valid = v.strictly_valid = v.analytic_valid = dist > need;
        v.denom_infimum = p.K * l * l + dist * dist;
        if (!v.valid) v.reason = "Im(z0) meets the log-strip constraint";
        v.scan_sample_min = denominator_sample_min(p);
        v.scan_agrees = true;
        return v;
    }

    // Power family.
    if (p.K == 1) {
        v.valid = v.strictly_valid = v.analytic_valid = true;
        v.denom_infimum = l * l;
        v.scan_sample_min = denominator_sample_min(p);
        return v;
    }

    const SectorGap g = sector_gap(p.z0, kPi * p.gamma);
    const double r0 = p.r0();
    const double th0 = p.theta0();

    if (p.K == 0) {
        v.valid = (r0 == 0.0) || !g.inside;
        v.strictly_valid = (r0 != 0.0) && !g.inside;
        v.analytic_valid = (r0 == 0.0) || (kPi * p.gamma < th0);
        v.denom_infimum = g.inside ? 0.0 : std::pow(std::min(g.closure, r0), 2.0);
        if (!v.valid) v.reason = "z0 lies in the closed power sector";
    } else { // K == -1
        bool weak;
        if (g.inside) {
            weak = false;
        } else if (g.has_foot && g.attained <= r0) {
            weak = l < g.attained;
        } else {
            // Nearest approach within the open sector is the origin limit.
            weak = l <= r0;
        }
        v.valid = weak;
        v.strictly_valid = !g.inside && l < std::min(g.closure, r0);
        const double a0 = (r0 > 0.0 && l <= r0) ? std::asin(std::min(1.0, l / r0)) : kPi;
        v.analytic_valid = (l <= r0) && (kPi * p.gamma < th0 - a0);
        v.denom_infimum = -l * l + (g.inside ? 0.0 : std::pow(std::min(g.closure, r0), 2.0));
        if (!v.valid) v.reason = "distance from z0 to the power sector does not exceed lambda";
    }
    v.scan_sample_min = denominator_sample_min(p);
    v.scan_agrees = (v.analytic_valid == v.valid);
    return v;
}

BoundaryConstants boundary_constants(const CanonicalParams& p) {
    if (p.family == Family::Power) {
        const double R = 2.0 * p.r0() / p.lambda;
        return {R * std::sin(p.theta0()), -R * std::sin(p.theta0() - kPi * p.gamma)};
    }
    return {2.0 / p.lambda * p.z0.imag(), 2.0 / p.lambda * (kPi - p.z0.imag())};
}

double evaluate_density(const CanonicalParams& p, Cplx z) {
    if (z.imag() < 0.0 || z == Cplx(0.0))
        throw domain_error("density is defined on the closed upper half-plane minus the origin");
    const double K = p.K, l = p.lambda;
    if (p.family == Family::Power) {
        const double lnr = std::log(std::abs(z));
        const double L = p.gamma * lnr;
        double ln_den;
        if (L > 300.0) {
            ln_den = 2.0 * L; // |z^g|^2 dominates every other term
        } else if (L < -300.0) {
            ln_den = std::log(K * l * l + std::norm(p.z0));
        } else {
            const Cplx w = std::exp(p.gamma * std::log(z));
            ln_den = std::log(K * l * l + std::norm(w - p.z0));
        }
        return std::log(4.0 * l * l * p.gamma * p.gamma) + 2.0 * (p.gamma - 1.0) * lnr - 2.0 * ln_den;
    }
    const Cplx q = std::log(z); // arg in [0, pi] on the closed half-plane
    const double ln_den = std::log(K * l * l + std::norm(q - p.z0));
    return std::log(4.0 * l * l) - 2.0 * std::log(std::abs(z)) - 2.0 * ln_den;
}

bool existence(int K, double c1, double c2) {
    if (K == 1) return true;
    if (K == 0) return std::min(c1, c2) < 0.0;
    return c1 < -2.0 || c2 < -2.0 || c1 + c2 < 0.0;
}

std::optional<CanonicalParams> synthesize(int K, double c1, double c2) {
    if (!existence(K, c1, c2)) return std::nullopt;

    CanonicalParams p;
    p.family = Family::Power;
    p.K = K;
    p.lambda = 1.0;

    if (K == 1 && c1 == 0.0 && c2 == 0.0) {
        p.gamma = 1.0;
        p.z0 = 0.0;
        return p;
    }

    // Angle-window construction: c1 = R0 sin x, c2 = -R0 sin y with
    // theta0 = x, pi*gamma = x - y, r0/lambda = R0/2.
    const double R0 = 2.0 * std::max({2.0, std::abs(c1), std::abs(c2)}) + 1.0;
    const double s1 = c1 / R0, s2 = -c2 / R0;
    double x, y;
    if (c1 + c2 < 0.0) {
        x = kPi - std::asin(s1);
        y = kPi - std::asin(s2);
    } else if ((K == -1 && c2 < -2.0) || (K == 0 && c2 < 0.0) || K == 1) {
        y = std::asin(s2);
        x = kPi - std::asin(s1);
    } else {
        // Remaining branch: c1 < -2 (K = -1) or c1 < 0 (K = 0).
        x = 2.0 * kPi + std::asin(s1);
        y = kPi - std::asin(s2);
    }
    p.gamma = (x - y) / kPi;
    const double r0 = R0 / 2.0;
    p.z0 = r0 * Cplx(std::cos(x), std::sin(x));
    return p;
}

AsymptoticClass classify_asymptotics(const CanonicalParams& p) {
    const Validity v = validate_params(p);
    if (!v.valid) throw domain_error("classify_asymptotics needs valid parameters");

    AsymptoticClass out{};
    const Cplx dir = Cplx(std::cos(kPi / 4.0), std::sin(kPi / 4.0));
    if (p.family == Family::Power) {
        out.tag = AsymptoticClass::Tag::Conical;
        out.alpha = p.gamma - 1.0;
        // Least-squares slope of v against 2 ln r.
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const int n = 11;
        for (int i = 0; i < n; ++i) {
            const double lr = -8.0 + 5.0 * i / (n - 1.0);
            const double r = std::pow(10.0, lr);
            const double X = std::log(r);
            const double Y = evaluate_density(p, r * dir);
            sx += X; sy += Y; sxx += X * X; sxy += X * Y;
        }
        out.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        return out;
    }
    out.tag = AsymptoticClass::Tag::LogFour;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i < 9; ++i) {
        const double lr = -8.0 + 4.0 * i / 8.0;
        const double r = std::pow(10.0, lr);
        const double q = std::exp(evaluate_density(p, r * dir)) * r * r
                         * std::pow(std::log(r), 4.0);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    out.band = (hi - lo) / hi;
    return out;
}

DevelopingMap closed_form_developing_map(const CanonicalParams& p) {
    const Validity v = validate_params(p);
    if (!v.valid) throw domain_error("closed_form_developing_map needs valid parameters");

    // psi pulls the model density back to 4 l^2 / (K l^2 + |w - z0|^2)^2:
    //   K =  1: (w - z0)/l        K = 0: -l/(w - z0)        K = -1: l/(w - z0)
    Mobius psi;
    if (p.K == 1) psi = Mobius(1.0, -p.z0, 0.0, p.lambda);
    else if (p.K == 0) psi = Mobius(0.0, -p.lambda, 1.0, -p.z0);
    else psi = Mobius(0.0, p.lambda, 1.0, -p.z0);

    // Invert the normalization identities as a self-check.
    const double mu = p.K * std::norm(psi.a) + std::norm(psi.c);
    if (std::abs(mu) < 1e-14) throw normalization_failure("degenerate coefficient choice");
    const double l_back = 1.0 / std::abs(mu);
    const Cplx z0_back = -(static_cast<double>(p.K) * std::conj(psi.a) * psi.b
                           + std::conj(psi.c) * psi.d) / mu;
    if (std::abs(l_back - p.lambda) > 1e-10 * p.lambda
        || std::abs(z0_back - p.z0) > 1e-10 * (1.0 + std::abs(p.z0)))
        throw normalization_failure("coefficients do not reproduce (lambda, z0)");

    DevelopingMap dm;
    dm.K = p.K;
    dm.psi = psi;
    if (p.family == Family::Log) {
        dm.variant = MapVariant::LogForm;
        dm.F = SymmetricFactor::zero();
        return dm;
    }
    dm.variant = MapVariant::PowerForm;
    const double frac = p.gamma - std::floor(p.gamma);
    dm.gamma = frac;
    dm.gamma_folded = static_cast<int>(std::floor(p.gamma));
    dm.F = SymmetricFactor::one().times_power(dm.gamma_folded);
    return dm;
}

} // namespace liouville
