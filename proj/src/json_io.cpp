#include "liouville/json_io.hpp"

#include <cmath>
#include <sstream>

#include "liouville/errors.hpp"
#include "liouville/ode.hpp"

namespace liouville {

Json to_json(Cplx z) { return Json::array({z.real(), z.imag()}); }

Cplx cplx_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw domain_error("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const CanonicalParams& p) {
    Json j;
    j["family"] = (p.family == Family::Power) ? "power" : "log";
    j["K"] = p.K;
    if (p.family == Family::Power) j["gamma"] = p.gamma;
    j["lambda"] = p.lambda;
    j["z0"] = to_json(p.z0);
    return j;
}

CanonicalParams canonical_params_from_json(const Json& j) {
    CanonicalParams p;
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "power") p.family = Family::Power;
    else if (fam == "log") p.family = Family::Log;
    else throw domain_error("family must be 'power' or 'log'");
    p.K = j.at("K").get<int>();
    if (p.K != -1 && p.K != 0 && p.K != 1) throw domain_error("K must be -1, 0 or 1");
    if (p.family == Family::Power) p.gamma = j.at("gamma").get<double>();
    p.lambda = j.at("lambda").get<double>();
    p.z0 = cplx_from_json(j.at("z0"));
    return p;
}

Json to_json(const SchwarzianSpec& s) {
    Json j;
    if (s.global) {
        j["global_c"] = to_json(s.global_c);
        return j;
    }
    Json poles = Json::array();
    for (const auto& p : s.poles)
        poles.push_back(Json{{"q", p.q}, {"alpha", p.alpha}, {"beta", p.beta}});
    j["poles"] = poles;
    return j;
}

SchwarzianSpec schwarzian_spec_from_json(const Json& j) {
    if (j.contains("global_c")) return SchwarzianSpec::global_form(cplx_from_json(j["global_c"]));
    std::vector<SchwarzianPole> poles;
    for (const auto& p : j.at("poles"))
        poles.push_back({p.at("q").get<double>(), p.at("alpha").get<double>(),
                         p.at("beta").get<double>()});
    return SchwarzianSpec::from_poles(std::move(poles));
}

Json to_json(const Mobius& m) {
    return Json::array({to_json(m.a), to_json(m.b), to_json(m.c), to_json(m.d)});
}

Mobius mobius_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw domain_error("Mobius must be [[re,im] x 4]");
    return Mobius(cplx_from_json(j[0]), cplx_from_json(j[1]), cplx_from_json(j[2]),
                  cplx_from_json(j[3]));
}

Json to_json(const DevelopingMap& dm) {
    Json j;
    switch (dm.variant) {
        case MapVariant::PowerForm: j["variant"] = "power"; break;
        case MapVariant::LogForm: j["variant"] = "log"; break;
        case MapVariant::SpiralForm: j["variant"] = "spiral"; break;
        case MapVariant::Numeric: j["variant"] = "numeric"; break;
    }
    j["K"] = dm.K;
    if (dm.variant == MapVariant::Numeric) {
        j["spec"] = to_json(dm.numeric->spec());
        j["basepoint"] = to_json(dm.numeric->basepoint());
        j["psi"] = to_json(dm.psi);
        return j;
    }
    if (dm.variant != MapVariant::LogForm) j["gamma"] = dm.gamma;
    if (dm.gamma_folded != 0) j["gamma_folded"] = dm.gamma_folded;
    Json F;
    F["min_degree"] = dm.F.min_degree;
    Json coeffs = Json::array();
    for (const auto& c : dm.F.coeffs) coeffs.push_back(to_json(c));
    F["coeffs"] = coeffs;
    F["symmetry"] = (dm.F.symmetry == FactorSymmetry::RealOnReal) ? "real_on_real" : "unimodular";
    j["F"] = F;
    j["psi"] = to_json(dm.psi);
    if (std::isfinite(dm.domain_radius)) j["domain_radius"] = dm.domain_radius;
    return j;
}

DevelopingMap developing_map_from_json(const Json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    const int K = j.at("K").get<int>();
    if (variant == "numeric") {
        return developing_map_numeric(schwarzian_spec_from_json(j.at("spec")),
                                      cplx_from_json(j.at("basepoint")),
                                      j.contains("psi") ? mobius_from_json(j["psi"])
                                                        : Mobius::identity());
    }
    SymmetricFactor F;
    if (j.contains("F")) {
        const Json& fj = j["F"];
        F.min_degree = fj.at("min_degree").get<int>();
        for (const auto& c : fj.at("coeffs")) F.coeffs.push_back(cplx_from_json(c));
        F.symmetry = fj.at("symmetry").get<std::string>() == "unimodular"
                         ? FactorSymmetry::Unimodular
                         : FactorSymmetry::RealOnReal;
    }
    const Mobius psi = j.contains("psi") ? mobius_from_json(j["psi"]) : Mobius::identity();
    const double radius = j.contains("domain_radius") ? j["domain_radius"].get<double>()
                                                      : std::numeric_limits<double>::infinity();
    if (variant == "log") return construct_case_ii(F, psi, K, radius);
    const double gamma = j.at("gamma").get<double>();
    if (variant == "spiral") return construct_case_iii(gamma, F, psi, K, radius);
    // Power form; accept folded integer parts transparently.
    DevelopingMap dm = construct_case_i(gamma - std::floor(gamma),
                                        F.times_power(0), psi, K, radius);
    dm.gamma = gamma - std::floor(gamma);
    dm.gamma_folded = j.contains("gamma_folded") ? j["gamma_folded"].get<int>() : 0;
    return dm;
}

Json to_json(const AreaResult& a) {
    Json j;
    j["value"] = a.value;
    j["error"] = a.error;
    j["divergent"] = a.divergent;
    j["slow_divergence"] = a.slow_divergence;
    j["ring_ratio"] = a.ring_ratio;
    j["growth_exponent"] = a.growth_exponent;
    j["rings"] = a.rings;
    return j;
}

Json to_json(const ResidualReport& r) {
    Json j;
    j["pde"] = Json{{"max", r.pde.max_normalized},
                    {"mean", r.pde.mean_normalized},
                    {"points", r.pde.points},
                    {"grid_too_coarse", r.pde.grid_too_coarse}};
    Json neu = Json::array();
    for (const auto& n : r.neumann)
        neu.push_back(Json{{"fitted_c", n.fitted_c},
                           {"residual", n.residual},
                           {"expected_error", n.expected_error},
                           {"points", n.points}});
    j["neumann"] = neu;
    if (r.area) j["area"] = to_json(*r.area);
    Json lengths = Json::array();
    for (const auto& [rad, len] : r.semicircle_lengths)
        lengths.push_back(Json{{"r", rad}, {"L", len}});
    j["semicircle_lengths"] = lengths;
    if (r.asymptotics) {
        Json a;
        switch (r.asymptotics->tag) {
            case AsymptoticClass::Tag::Conical: a["class"] = "conical"; break;
            case AsymptoticClass::Tag::LogFour: a["class"] = "log_four"; break;
            case AsymptoticClass::Tag::LogTwo: a["class"] = "log_two"; break;
        }
        a["alpha"] = r.asymptotics->alpha;
        a["fitted_slope"] = r.asymptotics->fitted_slope;
        a["band"] = r.asymptotics->band;
        j["asymptotics"] = a;
    }
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back(Json{{"name", v.name},
                                {"pass", v.pass},
                                {"measured", v.measured},
                                {"tolerance", v.tolerance}});
    j["verdicts"] = verdicts;
    j["all_pass"] = r.all_pass();
    return j;
}

namespace {

Json to_json(const GeneralizedCircle& c) {
    return Json{{"A", c.A}, {"B", to_json(c.B)}, {"D", c.D}};
}

Json to_json(const ComplexPt& p) {
    if (p.at_infinity) return Json("inf");
    return to_json(p.value);
}

} // namespace

Json to_json(const ImmersedCircularPolygon& poly) {
    Json j;
    j["K"] = poly.K;
    Json arcs = Json::array();
    for (const auto& a : poly.arcs) {
        Json aj;
        aj["circle"] = to_json(a.circle);
        aj["start"] = to_json(a.start);
        aj["end"] = to_json(a.end);
        aj["interval"] = Json::array({a.q_lo, a.q_hi});
        aj["fit_residual"] = a.fit_residual;
        aj["fitted_c"] = a.fitted_c;
        aj["curvature_c"] = a.curvature_c;
        arcs.push_back(aj);
    }
    j["arcs"] = arcs;
    Json verts = Json::array();
    for (const auto& v : poly.vertices) {
        Json vj;
        vj["q"] = std::isfinite(v.q) ? Json(v.q) : Json("inf");
        vj["point"] = to_json(v.point);
        vj["alpha"] = v.alpha;
        vj["angle_law"] = v.angle_law;
        vj["angle_measured"] = v.angle_measured;
        vj["angle_circle"] = v.angle_circle;
        vj["closure_residual"] = v.closure_residual;
        vj["ideal"] = v.ideal;
        verts.push_back(vj);
    }
    j["vertices"] = verts;
    return j;
}

Json to_json(const AlexandrovCertificate& c) {
    Json j;
    j["local_diffeo"] = c.local_diffeo;
    j["min_spherical_derivative"] = c.min_spherical_derivative;
    j["arcs_regular"] = c.arcs_regular;
    j["boundary_embedded"] = c.boundary_embedded;
    j["self_intersecting"] = c.self_intersecting;
    j["full_certificate"] = c.full_certificate;
    j["interior_samples"] = c.interior_samples;
    j["notes"] = c.notes;
    return j;
}

std::string field_csv(const MetricField& field, const GridSpec& grid) {
    std::ostringstream os;
    os.precision(17);
    os << "s,t,v,ev\n";
    for (int i = 0; i < grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const double s = grid.s0 + (grid.s1 - grid.s0) * (i + 0.5) / grid.ns;
            const double t = grid.t0 + (grid.t1 - grid.t0) * (j + 0.5) / grid.nt;
            bool skip = false;
            for (double q : field.singular)
                if (std::abs(Cplx(s, t) - q) < 1e-6) skip = true;
            if (skip) continue;
            const double v = field.v(Cplx(s, t));
            os << s << "," << t << "," << v << "," << std::exp(v) << "\n";
        }
    return os.str();
}

std::string boundary_csv(const DevelopingMap& dm, const ImmersedCircularPolygon& poly,
                         int samples_per_arc) {
    std::ostringstream os;
    os.precision(17);
    os << "arc,s,re,im\n";
    for (size_t a = 0; a < poly.arcs.size(); ++a) {
        const auto& arc = poly.arcs[a];
        for (int i = 0; i < samples_per_arc; ++i) {
            const double u = (i + 0.5) / samples_per_arc;
            double s;
            if (!std::isfinite(arc.q_lo)) {
                s = arc.q_hi - (1.0 + std::abs(arc.q_hi)) * std::pow(10.0, 2.0 - 3.6 * u);
            } else if (!std::isfinite(arc.q_hi)) {
                s = arc.q_lo + (1.0 + std::abs(arc.q_lo)) * std::pow(10.0, -1.6 + 3.6 * u);
            } else {
                s = arc.q_lo + (arc.q_hi - arc.q_lo) * (0.02 + 0.96 * u);
            }
            const ComplexPt g = dm.eval(Cplx(s, 0.0));
            if (g.at_infinity) continue;
            os << a << "," << s << "," << g.value.real() << "," << g.value.imag() << "\n";
        }
    }
    return os.str();
}

} // namespace liouville
