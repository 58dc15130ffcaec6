#include "liouville/schwarzian.hpp"

#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

double SchwarzianSpec::alpha_infinity() const {
    if (global) return global_c.real();
    double s = 0.0;
    for (const auto& p : poles) s += p.alpha + p.q * p.beta;
    return s;
}

SpecVerdict validate_spec(const SchwarzianSpec& spec) {
    SpecVerdict v;
    if (spec.global) {
        v.alpha_infinity = spec.global_c.real();
        return v;
    }
    for (size_t i = 0; i + 1 < spec.poles.size(); ++i) {
        if (!(spec.poles[i].q < spec.poles[i + 1].q)) {
            v.valid = false;
            v.reason = "pole locations must be strictly increasing";
            return v;
        }
    }
    for (const auto& p : spec.poles) {
        v.beta_sum += p.beta;
        v.alpha_infinity += p.alpha + p.q * p.beta;
        if (p.alpha > 0.5) {
            v.valid = false;
            v.reason = "alpha exceeds 1/2 at q = " + std::to_string(p.q);
        }
    }
    if (v.valid && std::abs(v.beta_sum) > 1e-14) {
        v.valid = false;
        v.reason = "residues must sum to zero";
    }
    if (v.valid && v.alpha_infinity > 0.5 + 1e-14) {
        v.valid = false;
        v.reason = "coefficient at infinity exceeds 1/2";
    }
    return v;
}

Cplx eval_Q(const SchwarzianSpec& spec, Cplx z) {
    if (spec.global) {
        if (std::abs(z) < 1e-12) throw pole_evaluation("eval_Q at the origin of c/z^2");
        return spec.global_c / (z * z);
    }
    Cplx q{0.0, 0.0};
    for (const auto& p : spec.poles) {
        const Cplx d = z - p.q;
        if (std::abs(d) < 1e-12)
            throw pole_evaluation("eval_Q within 1e-12 of pole q = " + std::to_string(p.q));
        q += p.alpha / (d * d) + p.beta / d;
    }
    return q;
}

InversionTransform inversion_transform(const SchwarzianSpec& spec) {
    InversionTransform t;
    SchwarzianSpec copy = spec;
    t.Q_tilde = [copy](Cplx w) {
        const Cplx z = -1.0 / w;
        return eval_Q(copy, z) / (w * w * w * w);
    };
    if (spec.global) {
        // c/z^2 is inversion covariant; the limit is exact.
        t.alpha_infinity_limit = spec.global_c.real();
        return t;
    }
    // Numeric limit of w^2 Q~(w) along a ray, w = 10^{-3} .. 10^{-6}.
    double prev = 0.0;
    std::vector<double> vals;
    for (int k = 3; k <= 6; ++k) {
        const Cplx w = std::pow(10.0, -k) * Cplx(std::cos(0.3), std::sin(0.3));
        const Cplx v = w * w * t.Q_tilde(w);
        vals.push_back(v.real());
        if (k > 3 && std::abs(vals.back()) > 10.0 * std::max(1.0, std::abs(prev))) t.divergent = true;
        prev = vals.back();
    }
    if (!t.divergent && std::abs(vals.back()) > 1e3 * (1.0 + std::abs(vals.front())))
        t.divergent = true;
    if (t.divergent) {
        t.growth_rate = std::abs(vals.back() / (std::abs(vals[vals.size() - 2]) + 1e-300));
        t.alpha_infinity_limit = vals.back();
        return t;
    }
    // Richardson step: the limit is approached linearly in w.
    t.alpha_infinity_limit = vals.back() + (vals.back() - vals[vals.size() - 2]) / 9.0;
    return t;
}

Cplx log_chart_transform(const std::function<Cplx(Cplx)>& Q, Cplx w) {
    const Cplx ew = std::exp(w);
    return ew * ew * Q(ew) - 0.5;
}

Cplx log_chart_transform(const SchwarzianSpec& spec, Cplx w) {
    return log_chart_transform([&spec](Cplx z) { return eval_Q(spec, z); }, w);
}

IndicialRoots indicial_roots(double alpha) {
    if (alpha > 0.5) throw domain_error("indicial equation has complex roots for alpha > 1/2");
    const double root = std::sqrt(1.0 - 2.0 * alpha);
    IndicialRoots r;
    r.lambda1 = 0.5 * (1.0 - root);
    r.lambda2 = 0.5 * (1.0 + root);
    const double nearest = std::round(root);
    r.logarithmic = std::abs(root - nearest) < 1e-12;
    return r;
}

} // namespace liouville
