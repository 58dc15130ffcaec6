#include "liouville/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/errors.hpp"
#include "liouville/ode.hpp"
#include "liouville/spaceform.hpp"

namespace liouville {

double vertex_angle(double alpha) {
    if (alpha > 0.5) throw domain_error("vertex angle needs alpha <= 1/2");
    return kPi * std::sqrt(1.0 - 2.0 * alpha);
}

namespace {

std::vector<double> interval_params(double q_lo, double q_hi, int n) {
    std::vector<double> s;
    s.reserve(static_cast<size_t>(n));
    const bool lo_inf = !std::isfinite(q_lo);
    const bool hi_inf = !std::isfinite(q_hi);
    if (!lo_inf && !hi_inf) {
        for (int i = 0; i < n; ++i) s.push_back(q_lo + (q_hi - q_lo) * (0.03 + 0.94 * i / (n - 1.0)));
    } else if (lo_inf) {
        const double scale = 1.0 + std::abs(q_hi);
        for (int i = 0; i < n; ++i) {
            const double d = scale * std::pow(10.0, -1.6 + 3.2 * i / (n - 1.0));
            s.push_back(q_hi - d);
        }
    } else {
        const double scale = 1.0 + std::abs(q_lo);
        for (int i = 0; i < n; ++i) {
            const double d = scale * std::pow(10.0, -1.6 + 3.2 * i / (n - 1.0));
            s.push_back(q_lo + d);
        }
    }
    return s;
}

GeneralizedCircle fit_circle(const std::vector<ComplexPt>& pts, double* residual) {
    // Three samples maximizing the minimal pairwise separation, greedily.
    size_t i0 = 0, i1 = pts.size() / 2, i2 = pts.size() - 1;
    double best = -1.0;
    for (size_t a = 0; a < pts.size(); a += 3)
        for (size_t b = a + 1; b < pts.size(); b += 3)
            for (size_t c = b + 1; c < pts.size(); c += 3) {
                const double q = std::min({chordal_distance(pts[a], pts[b]),
                                           chordal_distance(pts[a], pts[c]),
                                           chordal_distance(pts[b], pts[c])});
                if (q > best) { best = q; i0 = a; i1 = b; i2 = c; }
            }
    if (best < 1e-11) throw degenerate_fit("arc samples nearly coincide");
    const GeneralizedCircle circ = circle_through(pts[i0], pts[i1], pts[i2]);
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, circ.chordal_residual(p));
    if (residual) *residual = worst;
    return circ;
}

// Geodesic curvature of the image arc at a benign parameter; chart-switched
// when the image sits near infinity (the switch is an isometry for K = 1).
double arc_curvature_c(const DevelopingMap& dm, const std::vector<double>& params) {
    double best_s = params[params.size() / 2];
    double best_mod = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < params.size(); ++i) {
        const ComplexPt g = dm.eval(Cplx(params[i], 0.0));
        const double mod = g.at_infinity ? std::numeric_limits<double>::infinity()
                                         : std::abs(g.value);
        if (mod < best_mod) { best_mod = mod; best_s = params[i]; }
    }
    const bool flip = best_mod > 2.0;
    auto curve = [&dm, flip](double s) {
        const ComplexPt g = dm.eval(Cplx(s, 0.0));
        if (flip) return g.at_infinity ? Cplx(0.0) : -1.0 / g.value;
        return g.value;
    };
    const double h = std::max(1e-4, 1e-3 * (1.0 + std::abs(best_s)));
    const CurvatureResult k = geodesic_curvature(curve, dm.K, best_s, h, 1e-3);
    return -2.0 * k.value;
}

double circle_pair_angle(const GeneralizedCircle& c1, const GeneralizedCircle& c2,
                         double winding_hint) {
    const double d = std::clamp(inversive_product(c1, c2), -1.0, 1.0);
    const double t = std::acos(std::abs(d) > 1.0 - 1e-9 ? (d > 0 ? 1.0 : -1.0) : d);
    // Canonical scaling leaves a sign ambiguity; resolve against the winding.
    const double cand1 = t, cand2 = kPi - t;
    const double ref = std::fmod(std::abs(winding_hint), 2.0 * kPi);
    return (std::abs(cand1 - ref) <= std::abs(cand2 - ref)) ? cand1 : cand2;
}

} // namespace

PolygonResult polygon_from_spec(const PolygonalMetricSpec& spec) {
    const SpecVerdict verdict = validate_spec(spec.schwarzian);
    if (!verdict.valid) throw constraint_violation("polygon spec rejected: " + verdict.reason);
    if (spec.schwarzian.global || spec.schwarzian.poles.empty())
        throw domain_error("polygon synthesis needs at least one finite pole");

    PolygonResult out;
    out.map = developing_map_numeric(spec.schwarzian, spec.basepoint, spec.gauge);
    const NumericMap& nm = *out.map.numeric;
    const MetricField field = [&] {
        MetricField f = metric_from_dev(out.map, 1);
        f.singular.clear();
        for (const auto& p : spec.schwarzian.poles) f.singular.push_back(p.q);
        return f;
    }();

    const auto& poles = spec.schwarzian.poles;
    const int n_arcs = static_cast<int>(poles.size()) + 1;
    const double inf = std::numeric_limits<double>::infinity();

    // Vertex images first (they are the arc endpoints).
    std::vector<ComplexPt> vert_pts;
    for (size_t i = 0; i < poles.size(); ++i) {
        SphereJet lift{Jet3::constant(0.0), false};
        const ComplexPt raw = nm.vertex_limit(static_cast<int>(i));
        vert_pts.push_back(spec.gauge.apply(raw));
    }
    const ComplexPt vert_inf = spec.gauge.apply(nm.vertex_limit(-1));

    out.polygon.K = 1;
    for (int j = 0; j < n_arcs; ++j) {
        PolygonArc arc;
        arc.q_lo = (j == 0) ? -inf : poles[static_cast<size_t>(j - 1)].q;
        arc.q_hi = (j == n_arcs - 1) ? inf : poles[static_cast<size_t>(j)].q;
        const auto params = interval_params(arc.q_lo, arc.q_hi, 23);
        std::vector<ComplexPt> samples;
        for (double s : params) samples.push_back(out.map.eval(Cplx(s, 0.0)));
        arc.circle = fit_circle(samples, &arc.fit_residual);
        arc.witness = samples[samples.size() / 2];
        arc.start = (j == 0) ? vert_inf : vert_pts[static_cast<size_t>(j - 1)];
        arc.end = (j == n_arcs - 1) ? vert_inf : vert_pts[static_cast<size_t>(j)];

        // Boundary constant, fitted two independent ways.
        double w_lo, w_hi;
        if (!std::isfinite(arc.q_lo)) {
            const double scale = 1.0 + std::abs(arc.q_hi);
            w_lo = arc.q_hi - 2.0 * scale;
            w_hi = arc.q_hi - 0.4 * scale;
        } else if (!std::isfinite(arc.q_hi)) {
            const double scale = 1.0 + std::abs(arc.q_lo);
            w_lo = arc.q_lo + 0.4 * scale;
            w_hi = arc.q_lo + 2.0 * scale;
        } else {
            const double len = arc.q_hi - arc.q_lo;
            w_lo = arc.q_lo + 0.3 * len;
            w_hi = arc.q_hi - 0.3 * len;
        }
        arc.fitted_c = neumann_residual(field, w_lo, w_hi, std::nullopt, 24).fitted_c;
        arc.curvature_c = arc_curvature_c(out.map, params);
        out.polygon.arcs.push_back(std::move(arc));
    }

    for (size_t i = 0; i <= poles.size(); ++i) {
        const bool at_inf = (i == poles.size());
        PolygonVertex v;
        v.q = at_inf ? inf : poles[i].q;
        v.alpha = at_inf ? verdict.alpha_infinity : poles[i].alpha;
        v.point = at_inf ? vert_inf : vert_pts[i];
        v.angle_law = vertex_angle(std::min(v.alpha, 0.5));
        const int index = at_inf ? -1 : static_cast<int>(i);
        const double winding = nm.vertex_winding_angle(index);
        const GeneralizedCircle& left =
            at_inf ? out.polygon.arcs.back().circle : out.polygon.arcs[i].circle;
        const GeneralizedCircle& right =
            at_inf ? out.polygon.arcs.front().circle : out.polygon.arcs[i + 1].circle;
        v.angle_circle = circle_pair_angle(left, right, winding);
        v.angle_measured = (v.alpha > 0.5 - 1e-9) ? v.angle_circle : winding;
        v.closure_residual = std::max(left.chordal_residual(v.point),
                                      right.chordal_residual(v.point));
        out.polygon.vertices.push_back(v);
    }
    return out;
}

namespace {

// Membership of a sphere point in the arc cut out by (start, end) and pinned
// by the witness sample.
bool on_arc(const PolygonArc& arc, const ComplexPt& p, double tol) {
    if (arc.circle.chordal_residual(p) > tol) return false;
    auto angle_of = [&](const ComplexPt& q) {
        return std::arg(q.at_infinity ? Cplx(1.0, 0.0) : q.value - arc.circle.center());
    };
    auto line_t = [&](const ComplexPt& q) {
        const Cplx u = Cplx(0.0, 1.0) * arc.circle.B / std::abs(arc.circle.B);
        return q.at_infinity ? std::numeric_limits<double>::infinity()
                             : (std::conj(u) * q.value).real();
    };
    if (arc.circle.is_line()) {
        const double ts = line_t(arc.start), te = line_t(arc.end);
        const double tw = line_t(arc.witness), tp = line_t(p);
        const double lo = std::min(ts, te), hi = std::max(ts, te);
        const bool witness_inside = (tw >= lo && tw <= hi);
        const bool p_inside = (tp >= lo && tp <= hi);
        return witness_inside == p_inside;
    }
    auto wrap = [](double a) {
        while (a < 0.0) a += 2.0 * kPi;
        while (a >= 2.0 * kPi) a -= 2.0 * kPi;
        return a;
    };
    const double as = angle_of(arc.start);
    const double span_w = wrap(angle_of(arc.witness) - as);
    const double span_e = wrap(angle_of(arc.end) - as);
    const double span_p = wrap(angle_of(p) - as);
    const bool witness_first = span_w <= span_e;
    return witness_first ? (span_p <= span_e) : (span_p >= span_e);
}

} // namespace

AlexandrovCertificate alexandrov_partial_check(const DevelopingMap& dm,
                                               const ImmersedCircularPolygon& poly,
                                               int sample_density) {
    AlexandrovCertificate cert;
    cert.min_spherical_derivative = std::numeric_limits<double>::infinity();

    double lo = -2.0, hi = 2.0;
    for (const auto& a : poly.arcs) {
        if (std::isfinite(a.q_lo)) { lo = std::min(lo, a.q_lo - 2.0); }
        if (std::isfinite(a.q_hi)) { hi = std::max(hi, a.q_hi + 2.0); }
    }
    const int nx = std::max(4, static_cast<int>(std::sqrt(sample_density)));
    cert.local_diffeo = true;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nx; ++j) {
            const double x = lo + (hi - lo) * (i + 0.5) / nx;
            const double y = 0.05 + 3.95 * (j + 0.5) / nx;
            const double sd = spherical_derivative(dm.eval_jet(Cplx(x, y)));
            cert.min_spherical_derivative = std::min(cert.min_spherical_derivative, sd);
            if (!(sd > 1e-12)) cert.local_diffeo = false;
            ++cert.interior_samples;
        }
    }

    cert.arcs_regular = true;
    for (const auto& arc : poly.arcs) {
        const auto params = interval_params(arc.q_lo, arc.q_hi, 11);
        for (double s : params) {
            const double sd = spherical_derivative(dm.eval_jet(Cplx(s, 0.0)));
            if (!(sd > 1e-12)) cert.arcs_regular = false;
        }
    }

    // Pairwise arc crossings (shared vertices excluded).
    cert.boundary_embedded = true;
    for (size_t i = 0; i < poly.arcs.size(); ++i) {
        for (size_t j = i + 1; j < poly.arcs.size(); ++j) {
            const IntersectionResult r =
                classify_intersection(poly.arcs[i].circle, poly.arcs[j].circle);
            if (r.tag == IntersectionResult::Tag::Equal) continue;
            for (const auto& w : r.witnesses) {
                if (!on_arc(poly.arcs[i], w, 1e-7) || !on_arc(poly.arcs[j], w, 1e-7)) continue;
                bool is_vertex = false;
                for (const auto& v : poly.vertices)
                    if (chordal_distance(w, v.point) < 1e-6) is_vertex = true;
                if (!is_vertex) cert.boundary_embedded = false;
            }
        }
    }
    cert.self_intersecting = !cert.boundary_embedded;
    cert.full_certificate = cert.local_diffeo && cert.arcs_regular && cert.boundary_embedded;
    if (!cert.full_certificate)
        cert.notes = cert.self_intersecting
                         ? "partial certificate: boundary trace self-intersects"
                         : "certificate denied: local diffeomorphism evidence failed";
    return cert;
}

AccessoryFit fit_accessory(double q1, double q2, double alpha1, double alpha2,
                           double target_alpha_inf, double tol) {
    if (!(q1 < q2)) throw domain_error("fit_accessory needs q1 < q2");
    if (alpha1 > 0.5 || alpha2 > 0.5) throw domain_error("fit_accessory needs alpha_i <= 1/2");

    auto alpha_inf_measured = [&](double beta) {
        const SchwarzianSpec s = SchwarzianSpec::from_poles(
            {{q1, alpha1, beta}, {q2, alpha2, -beta}});
        return inversion_transform(s).alpha_infinity_limit;
    };
    auto f = [&](double beta) { return alpha_inf_measured(beta) - target_alpha_inf; };

    // Admissible betas keep the coefficient at infinity below 1/2.
    const double beta_lo = (alpha1 + alpha2 - 0.5) / (q2 - q1);
    double lo = beta_lo;
    double flo = f(lo);
    if (std::abs(flo) <= 1e-9) return {lo, flo, 0};
    if (flo < 0.0)
        throw no_bracket("target coefficient exceeds the admissible bound 1/2");

    double hi = lo + 1.0, fhi = f(hi);
    int it = 0;
    while (fhi > 0.0 && it < 60) {
        hi = lo + (hi - lo) * 2.0;
        fhi = f(hi);
        ++it;
    }
    if (fhi > 0.0) throw no_bracket("objective does not change sign on the admissible interval");

    while (hi - lo > tol && it < 200) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm > 0.0) { lo = mid; flo = fm; }
        else { hi = mid; fhi = fm; }
        ++it;
    }
    const double beta = 0.5 * (lo + hi);
    return {beta, f(beta), it};
}

} // namespace liouville
