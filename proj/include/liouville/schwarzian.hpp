#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liouville/complex_sphere.hpp"
#include "liouville/jet.hpp"

namespace liouville {

// Specification of the Schwarzian map Q: either a sum of double poles with
// residues on the real axis,
//   Q(z) = sum_i [ alpha_i/(z - q_i)^2 + beta_i/(z - q_i) ],
// or the global form Q = c/z^2.
struct SchwarzianPole {
    double q;
    double alpha;
    double beta;
};

struct SchwarzianSpec {
    std::vector<SchwarzianPole> poles; // strictly increasing q, used when !global
    bool global = false;
    Cplx global_c{0.0, 0.0};

    static SchwarzianSpec global_form(Cplx c) {
        SchwarzianSpec s;
        s.global = true;
        s.global_c = c;
        return s;
    }
    static SchwarzianSpec from_poles(std::vector<SchwarzianPole> p) {
        SchwarzianSpec s;
        s.poles = std::move(p);
        return s;
    }

    // Coefficient sum that becomes the double-pole datum at infinity.
    double alpha_infinity() const;
};

struct SpecVerdict {
    bool valid = true;
    std::string reason;                 // set when invalid
    double alpha_infinity = 0.0;        // sum(alpha_i + q_i beta_i)
    double beta_sum = 0.0;
};

// Admissibility: alpha_i <= 1/2, sum beta_i = 0, alpha_infinity <= 1/2,
// strictly increasing q_i. Verdict-returning, never throws.
SpecVerdict validate_spec(const SchwarzianSpec& spec);

// Q evaluated off the poles; refuses evaluation within 1e-12 of a pole.
Cplx eval_Q(const SchwarzianSpec& spec, Cplx z);

struct InversionTransform {
    std::function<Cplx(Cplx)> Q_tilde;  // Q~(w) = Q(-1/w)/w^4
    double alpha_infinity_limit = 0.0;  // extrapolated lim w^2 Q~(w)
    bool divergent = false;             // set when w^2 Q~(w) blows up as w -> 0
    double growth_rate = 0.0;           // observed |w^2 Q~| ratio per decade
};

// Conformal transfer of the quadratic differential Q dz^2 under w = -1/z,
// plus the numeric extraction of the coefficient at infinity.
InversionTransform inversion_transform(const SchwarzianSpec& spec);

// e^{2w} Q(e^w) - 1/2: the Schwarzian of g(e^w) in terms of that of g.
Cplx log_chart_transform(const std::function<Cplx(Cplx)>& Q, Cplx w);
Cplx log_chart_transform(const SchwarzianSpec& spec, Cplx w);

struct IndicialRoots {
    double lambda1; // <= lambda2
    double lambda2;
    bool logarithmic; // lambda2 - lambda1 is a nonnegative integer
};

// Roots of lambda^2 - lambda + alpha/2 = 0; real exactly when alpha <= 1/2.
IndicialRoots indicial_roots(double alpha);

} // namespace liouville
