#pragma once

#include <optional>
#include <string>

#include "liouville/complex_sphere.hpp"
#include "liouville/developing.hpp"

namespace liouville {

// The two explicit solution families of the boundary Neumann problem:
//   Power: v = log( 4 l^2 g^2 |z|^{2(g-1)} / (K l^2 + |z^g - z0|^2)^2 )
//   Log:   v = log( 4 l^2 / ( |z|^2 (K l^2 + |log z - z0|^2)^2 ) )
// with principal branches taking arg(z) in [0, pi].
enum class Family { Power, Log };

struct CanonicalParams {
    Family family = Family::Power;
    int K = 1;
    double gamma = 1.0;  // Power only, > 0
    double lambda = 1.0; // > 0
    Cplx z0{0.0, 0.0};

    double r0() const { return std::abs(z0); }
    double theta0() const {
        if (z0 == Cplx(0.0)) return 0.0; // degenerate convention: c1 = c2 = 0
        double t = std::arg(z0);
        if (t < 0.0) t += 2.0 * kPi;
        return t;
    }
};

struct Validity {
    bool valid = false;          // density defined on the closed half-plane minus 0
    bool strictly_valid = false; // denominator also bounded away from 0 at the origin (finite area)
    bool analytic_valid = false; // the two printed inequalities, verbatim
    bool scan_agrees = true;     // analytic criterion vs denominator scan
    double denom_infimum = 0.0;  // exact infimum of K l^2 + |.|^2 over the domain
    double scan_sample_min = 0.0;
    std::string reason;          // set when invalid
};

// Decides where the denominator of the density vanishes. The geometric
// denominator scan (distance from z0 to the power-sector / log-strip image)
// is authoritative; the verbatim inequality verdict is reported alongside.
Validity validate_params(const CanonicalParams& p);

struct BoundaryConstants {
    double c1;
    double c2;
};

// Neumann data of the two boundary rays: c1 on s > 0, c2 on s < 0.
BoundaryConstants boundary_constants(const CanonicalParams& p);

// v(z) for Im z >= 0, z != 0; throws DomainError outside.
double evaluate_density(const CanonicalParams& p, Cplx z);

// Finite-area solvability of the Neumann problem for given (K, c1, c2).
bool existence(int K, double c1, double c2);

// Deterministic construction of parameters reproducing (c1, c2); empty
// exactly when existence() is false.
std::optional<CanonicalParams> synthesize(int K, double c1, double c2);

struct AsymptoticClass {
    enum class Tag { Conical, LogFour, LogTwo };
    Tag tag;
    double alpha = 0.0;        // Conical exponent (e^v ~ |z|^{2 alpha})
    double fitted_slope = 0.0; // log-log regression of e^v along a ray
    double band = 0.0;         // LogFour: relative variation of |z|^2 (ln|z|)^4 e^v
};

// Behavior of e^v at the origin, cross-checked by sampling along
// z = r e^{i pi/4}.
AsymptoticClass classify_asymptotics(const CanonicalParams& p);

// Closed-form developing map psi(z^gamma) or psi(log z) whose pullback
// density reproduces the parameters exactly.
DevelopingMap closed_form_developing_map(const CanonicalParams& p);

} // namespace liouville
