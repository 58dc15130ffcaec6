#include "liouville/verify.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/errors.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

MetricField metric_from_dev(const DevelopingMap& dm, int K) {
    if (dm.K != K) throw domain_error("curvature tag mismatch between map and metric");
    MetricField f;
    f.K = K;
    f.domain_radius = dm.domain_radius;
    f.dev = dm;
    f.v = [dm, K](Cplx z) {
        const SphereJet g = dm.eval_jet(z);
        const double one_plus = 1.0 + static_cast<double>(K) * std::norm(g.jet.f0);
        if (one_plus <= 0.0) throw range_violation("1 + K|g|^2 <= 0 in metric assembly");
        return std::log(4.0) + 2.0 * std::log(std::abs(g.jet.f1)) - 2.0 * std::log(one_plus);
    };
    f.singular = {0.0};
    return f;
}

MetricField canonical_field(const CanonicalParams& p) {
    MetricField f;
    f.K = p.K;
    f.v = [p](Cplx z) { return evaluate_density(p, z); };
    f.singular = {0.0};
    return f;
}

namespace {

double point_h(const MetricField& field, Cplx z, double requested) {
    double h = (requested > 0.0) ? requested : 0.01 * (1.0 + std::abs(z));
    for (double q : field.singular) h = std::min(h, 0.1 * std::abs(z - q));
    if (z.imag() > 0.0) h = std::min(h, 0.45 * z.imag());
    return std::max(h, 1e-6);
}

double laplacian(const MetricField& field, Cplx z, double h) {
    const double c = field.v(z);
    const double sum = field.v(z + h) + field.v(z - h) + field.v(z + Cplx(0.0, h))
                     + field.v(z - Cplx(0.0, h));
    return (sum - 4.0 * c) / (h * h);
}

} // namespace

ResidualStats liouville_residual(const MetricField& field, const GridSpec& grid) {
    ResidualStats st;
    double sum = 0.0;
    for (int i = 0; i < grid.ns; ++i) {
        for (int j = 0; j < grid.nt; ++j) {
            const double s = grid.s0 + (grid.s1 - grid.s0) * (i + 0.5) / grid.ns;
            const double t = grid.t0 + (grid.t1 - grid.t0) * (j + 0.5) / grid.nt;
            const Cplx z(s, t);
            bool near = false;
            for (double q : field.singular)
                if (std::abs(z - q) < 10.0 * point_h(field, z, grid.h)) near = true;
            if (near) continue;

            const double h = point_h(field, z, grid.h);
            const double lap_h = laplacian(field, z, h);
            const double lap_h2 = laplacian(field, z, h / 2.0);
            const double lap = (4.0 * lap_h2 - lap_h) / 3.0;
            if (std::abs(lap_h - lap_h2) > 0.75 * std::abs(lap) + 1.0) st.grid_too_coarse = true;

            const double ev = std::exp(field.v(z));
            const double res = std::abs(lap + 2.0 * field.K * ev) / (1.0 + 2.0 * ev);
            if (res > st.max_normalized) {
                st.max_normalized = res;
                st.worst_point = z;
            }
            sum += res;
            ++st.points;
        }
    }
    if (st.points > 0) st.mean_normalized = sum / st.points;
    return st;
}

NeumannFit neumann_residual(const MetricField& field, double a, double b,
                            std::optional<double> expected_c, int points) {
    if (!(a < b)) throw domain_error("neumann window needs a < b");
    for (double q : field.singular)
        if (q >= a - 1e-12 && q <= b + 1e-12)
            throw margin_violation("neumann window touches a singular point");

    NeumannFit fit;
    std::vector<double> cs;
    cs.reserve(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double s = a + (b - a) * (i + 0.5) / points;
        double h = 0.02 * (1.0 + std::abs(s));
        for (double q : field.singular) h = std::min(h, 0.05 * std::abs(s - q));
        h = std::max(h, 1e-5);
        // 4th-order one-sided derivative into the interior.
        const double v0 = field.v(Cplx(s, 0.0));
        const double v1 = field.v(Cplx(s, h));
        const double v2 = field.v(Cplx(s, 2.0 * h));
        const double v3 = field.v(Cplx(s, 3.0 * h));
        const double v4 = field.v(Cplx(s, 4.0 * h));
        const double dvdt = (-25.0 * v0 + 48.0 * v1 - 36.0 * v2 + 16.0 * v3 - 3.0 * v4) / (12.0 * h);
        cs.push_back(dvdt * std::exp(-0.5 * v0));
    }
    double mean = 0.0;
    for (double c : cs) mean += c;
    mean /= static_cast<double>(cs.size());
    fit.fitted_c = mean;
    for (double c : cs) fit.residual = std::max(fit.residual, std::abs(c - mean));
    fit.points = points;
    if (expected_c) fit.expected_error = std::abs(mean - *expected_c);
    return fit;
}

double semicircle_length(const MetricField& field, double r) {
    const QuadResult q = integrate(
        [&](double th) { return std::exp(0.5 * field.v(r * Cplx(std::cos(th), std::sin(th)))); },
        0.0, kPi, 1e-9, 1e-300);
    return r * q.value;
}

namespace {

// One half-ring integral of e^v about `center` over radii [a, b].
QuadResult half_ring(const MetricField& field, double center, double a, double b,
                     double rel_tol) {
    // Radial integration in log r so thin dyadic rings stay well conditioned.
    return integrate(
        [&](double u) {
            const double r = std::exp(u);
            const QuadResult th = integrate(
                [&](double t) {
                    const Cplx z = center + r * Cplx(std::cos(t), std::sin(t));
                    return std::exp(field.v(z) + 2.0 * u);
                },
                0.0, kPi, rel_tol, 1e-300, 24);
            return th.value;
        },
        std::log(a), std::log(b), rel_tol, 1e-300, 24);
}

} // namespace

AreaResult area_half_disk(const MetricField& field, double center, double radius, double rel_tol) {
    AreaResult out;
    const double floor_r = 1e-10;
    std::vector<double> rings;
    double hi = radius;
    double total = 0.0, err = 0.0;
    while (hi > floor_r) {
        const double lo = std::max(hi / 2.0, floor_r);
        const QuadResult q = half_ring(field, center, lo, hi, rel_tol);
        rings.push_back(q.value);
        total += q.value;
        err += q.error;
        ++out.rings;
        hi = lo;
        // Convergent tail became negligible: stop ringing early.
        if (rings.size() >= 8 && rings.back() < 1e-14 * std::max(total, 1e-300)) break;
        if (rings.size() >= 6 && rings.back() > 1e8 * (std::abs(rings.front()) + 1e-300)) break;
    }
    // Tail analysis over the last few rings.
    const size_t m = std::min<size_t>(6, rings.size() > 1 ? rings.size() - 1 : 0);
    std::vector<double> ratios;
    for (size_t i = rings.size() - m; i + 1 <= rings.size() && i >= 1 && m > 0; ++i)
        if (i < rings.size() && rings[i - 1] > 0.0) ratios.push_back(rings[i] / rings[i - 1]);
    double rho = 0.0;
    if (!ratios.empty()) {
        std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
        rho = ratios[ratios.size() / 2];
    }
    out.ring_ratio = rho;
    out.growth_exponent = (rho > 0.0) ? std::log2(rho) : 0.0;
    if (rho >= 0.95) {
        out.divergent = true;
        out.slow_divergence = rho < 1.2;
        out.value = total;
        out.error = err;
        return out;
    }
    // Geometric tail below the last ring.
    const double tail = (rho > 0.0 && rho < 0.95 && !rings.empty())
                            ? rings.back() * rho / (1.0 - rho)
                            : 0.0;
    out.value = total + tail;
    out.error = err + 0.5 * tail;
    return out;
}

AreaResult area_half_plane(const MetricField& field, double rel_tol) {
    for (double q : field.singular)
        if (q != 0.0)
            throw unsupported_variant("half-plane area needs the singular set within {0}");

    const AreaResult inner = area_half_disk(field, 0.0, 1.0, rel_tol);

    // w = -1/z chart for |z| >= 1: e^v(-1/w) / |w|^4.
    MetricField outer_field;
    outer_field.K = field.K;
    outer_field.singular = {0.0};
    const auto v = field.v;
    outer_field.v = [v](Cplx w) { return v(-1.0 / w) - 4.0 * std::log(std::abs(w)); };
    const AreaResult outer = area_half_disk(outer_field, 0.0, 1.0, rel_tol);

    AreaResult out;
    out.value = inner.value + outer.value;
    out.error = inner.error + outer.error;
    out.divergent = inner.divergent || outer.divergent;
    out.slow_divergence = (inner.divergent && inner.slow_divergence)
                       || (outer.divergent && outer.slow_divergence);
    out.ring_ratio = std::max(inner.ring_ratio, outer.ring_ratio);
    out.growth_exponent = std::max(inner.growth_exponent, outer.growth_exponent);
    out.rings = inner.rings + outer.rings;
    return out;
}

double area_half_annulus(const MetricField& field, double r0, double r1, double rel_tol) {
    return half_ring(field, 0.0, r0, r1, rel_tol).value;
}

FinitenessVerdict finiteness_at_origin(MapVariant variant, const Mobius& psi,
                                       int F_order_at_zero, bool F_is_zero, int K) {
    const double Kd = static_cast<double>(K);
    const double dKb = std::norm(psi.d) + Kd * std::norm(psi.b);
    const double cKa = std::norm(psi.c) + Kd * std::norm(psi.a);
    const Cplx delta = -psi.a * std::conj(psi.b) + psi.c * std::conj(psi.d);
    const bool F_finite = F_is_zero || F_order_at_zero >= 0;
    const double tol = 1e-9 * (std::norm(psi.a) + std::norm(psi.b) + std::norm(psi.c)
                               + std::norm(psi.d));

    if (variant == MapVariant::SpiralForm)
        return {Finiteness::Infinite, "case (iii): semicircle lengths bounded below", false, false};

    if (variant == MapVariant::PowerForm) {
        if (F_finite) {
            if (std::abs(dKb) > tol) return {Finiteness::Finite, "case (i): conical at 0", false, false};
            if (K == 0) return {Finiteness::Infinite, "case (i): K=0 with D=0", false, false};
            return {Finiteness::Infinite, "case (i): K=-1 with |D|=|B|", true, false};
        }
        if (std::abs(cKa) > tol) return {Finiteness::Finite, "case (i): conical through the pole", false, false};
        if (K == 0) return {Finiteness::Infinite, "case (i): K=0 with C=0 and a pole", false, false};
        return {Finiteness::Infinite, "case (i): K=-1 with |A|=|C| and a pole", true, false};
    }

    if (variant == MapVariant::LogForm) {
        if (std::abs(cKa) > tol) {
            if (F_finite) return {Finiteness::Finite, "case (ii): |z|^-2 (ln|z|)^-4 profile", false, false};
            return {Finiteness::Finite, "case (ii): pole-order conical profile", false, false};
        }
        if (K == 0) return {Finiteness::Infinite, "case (ii): K=0 with C=0", true, false};
        // K = -1 with |A| = |C|.
        if (!F_finite)
            return {Finiteness::Infinite, "case (ii): K=-1 tangency with a pole", true, false};
        if (std::abs(delta.real()) > 1e-9)
            return {Finiteness::Finite, "case (ii): K=-1 tangency, Re(delta) != 0", false, true};
        return {Finiteness::Infinite, "case (ii): K=-1 tangency, Re(delta) = 0", true, false};
    }
    throw unsupported_variant("finiteness table applies to closed normal forms");
}

Cplx schwarzian_estimate(const MetricField& field, Cplx z, double h) {
    const auto v = [&](double ds, double dt) { return field.v(z + Cplx(ds, dt)); };
    const double v0 = v(0, 0);
    const double vs = (v(h, 0) - v(-h, 0)) / (2.0 * h);
    const double vt = (v(0, h) - v(0, -h)) / (2.0 * h);
    const double vss = (v(h, 0) - 2.0 * v0 + v(-h, 0)) / (h * h);
    const double vtt = (v(0, h) - 2.0 * v0 + v(0, -h)) / (h * h);
    const double vst = (v(h, h) - v(h, -h) - v(-h, h) + v(-h, -h)) / (4.0 * h * h);
    const Cplx vz = 0.5 * Cplx(vs, -vt);
    const Cplx vzz = 0.25 * Cplx(vss - vtt, -2.0 * vst);
    return vzz - 0.5 * vz * vz;
}

ResidualReport verify_canonical(const CanonicalParams& p, const VerifyOptions& opt) {
    ResidualReport rep;
    const Validity val = validate_params(p);
    if (!val.valid) throw domain_error("verify_canonical needs valid parameters: " + val.reason);
    const MetricField field = canonical_field(p);
    const BoundaryConstants bc = boundary_constants(p);

    rep.pde = liouville_residual(field, opt.grid);
    rep.verdicts.push_back({"pde_residual", rep.pde.max_normalized <= opt.pde_tol,
                            rep.pde.max_normalized, opt.pde_tol});

    rep.neumann.push_back(neumann_residual(field, 0.2, 2.2, bc.c1));
    rep.neumann.push_back(neumann_residual(field, -2.2, -0.2, bc.c2));
    rep.verdicts.push_back({"neumann_c1", rep.neumann[0].expected_error <= opt.neumann_tol,
                            rep.neumann[0].expected_error, opt.neumann_tol});
    rep.verdicts.push_back({"neumann_c2", rep.neumann[1].expected_error <= opt.neumann_tol,
                            rep.neumann[1].expected_error, opt.neumann_tol});

    rep.area = area_half_plane(field, opt.area_rel_tol);
    const bool area_ok = val.strictly_valid ? !rep.area->divergent : rep.area->divergent;
    rep.verdicts.push_back({"area_finiteness", area_ok, rep.area->value, 0.0});

    for (int k = 1; k <= 6; ++k) {
        const double r = std::pow(10.0, -k);
        rep.semicircle_lengths.emplace_back(r, semicircle_length(field, r));
    }
    rep.asymptotics = classify_asymptotics(p);
    if (rep.asymptotics->tag == AsymptoticClass::Tag::Conical) {
        const double err = std::abs(rep.asymptotics->fitted_slope - 2.0 * rep.asymptotics->alpha);
        rep.verdicts.push_back({"asymptotic_slope", err <= 0.01, err, 0.01});
    } else {
        rep.verdicts.push_back({"logfour_band", rep.asymptotics->band <= 0.05,
                                rep.asymptotics->band, 0.05});
    }
    return rep;
}

} // namespace liouville
