#include "liouville/developing.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/errors.hpp"
#include "liouville/ode.hpp"

namespace liouville {

SymmetricFactor SymmetricFactor::real_laurent(int min_degree, std::vector<double> c) {
    SymmetricFactor f;
    f.min_degree = min_degree;
    for (double x : c) f.coeffs.emplace_back(x, 0.0);
    f.symmetry = FactorSymmetry::RealOnReal;
    f.validate();
    return f;
}

SymmetricFactor SymmetricFactor::unimodular_monomial(Cplx coeff, int degree) {
    SymmetricFactor f;
    f.min_degree = degree;
    f.coeffs = {coeff};
    f.symmetry = FactorSymmetry::Unimodular;
    f.validate();
    return f;
}

int SymmetricFactor::order_at_zero() const {
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != Cplx(0.0)) return min_degree + static_cast<int>(i);
    throw domain_error("order_at_zero of the zero factor");
}

Cplx SymmetricFactor::eval(Cplx z) const { return eval_jet(z).f0; }

Jet3 SymmetricFactor::eval_jet(Cplx z) const {
    if (coeffs.empty()) return Jet3::constant(0.0);
    Jet3 poly = Jet3::constant(0.0);
    const Jet3 Z = Jet3::variable(z);
    for (size_t i = coeffs.size(); i-- > 0;) poly = poly * Z + coeffs[i];
    if (min_degree == 0) return poly;
    // z^{min_degree} factor as an exact integer power (valid at negative
    // reals, unlike the principal branch).
    Jet3 zp = Jet3::constant(1.0);
    const int n = std::abs(min_degree);
    for (int i = 0; i < n; ++i) zp = zp * Z;
    if (min_degree < 0) zp = reciprocal(zp);
    return poly * zp;
}

SymmetricFactor SymmetricFactor::times_power(int p) const {
    SymmetricFactor f = *this;
    f.min_degree += p;
    return f;
}

void SymmetricFactor::validate() const {
    if (symmetry == FactorSymmetry::RealOnReal) {
        for (const auto& c : coeffs)
            if (std::abs(c.imag()) > 1e-14 * (1.0 + std::abs(c.real())))
                throw symmetry_violation("real-on-real factor needs real coefficients");
        return;
    }
    // Unimodular: F(z) conj(F(conj z)) == 1; verified at sample points.
    if (coeffs.empty()) throw symmetry_violation("unimodular factor cannot vanish");
    for (int i = 0; i < 20; ++i) {
        const double th = 0.1 + 2.9 * i / 19.0;
        const double r = 0.3 + 1.4 * i / 19.0;
        const Cplx z = r * Cplx(std::cos(th), std::sin(th));
        const Cplx prod = eval(z) * std::conj(eval(std::conj(z)));
        if (std::abs(prod - 1.0) > 1e-12)
            throw symmetry_violation("factor fails the unimodular identity");
    }
}

// ---------------------------------------------------------------------------

SphereJet apply_mobius(const SphereJet& j, const Mobius& m, int K) {
    // If the jet is in the -1/g chart, fold the chart switch into the map.
    Mobius eff = m;
    if (j.inverted) eff = m * Mobius(Cplx(0.0), Cplx(-1.0), Cplx(1.0), Cplx(0.0));
    const Jet3& t = j.jet;
    const Cplx num = eff.a * t.f0 + eff.b;
    const Cplx den = eff.c * t.f0 + eff.d;
    if (K == 1 && std::abs(num) > std::abs(den)) return {eff.apply_inverted_jet(t), true};
    if (std::abs(den) < 1e-300) throw range_violation("map evaluates to infinity with K <= 0");
    return {eff.apply_jet(t), false};
}

namespace {

Jet3 inner_jet(const DevelopingMap& dm, Cplx z) {
    const Jet3 Z = Jet3::variable(z);
    switch (dm.variant) {
        case MapVariant::PowerForm: {
            Jet3 t = dm.F.eval_jet(z);
            if (dm.gamma != 0.0) t = pow(Z, Cplx(dm.gamma, 0.0)) * t;
            return t;
        }
        case MapVariant::LogForm:
            return dm.F.eval_jet(z) + log(Z);
        case MapVariant::SpiralForm:
            return pow(Z, Cplx(0.0, dm.gamma)) * dm.F.eval_jet(z);
        default:
            throw unsupported_variant("inner_jet on a numeric map");
    }
}

Jet3 inner_jet_log_chart(const DevelopingMap& dm, Cplx w) {
    // Single-valued lift: z = e^w, with z^gamma lifted to e^{gamma w}.
    const Jet3 W = Jet3::variable(w);
    const Jet3 Z = exp(W);
    const Jet3 Fz = compose(dm.F.eval_jet(Z.f0), Z);
    switch (dm.variant) {
        case MapVariant::PowerForm:
            return exp(Cplx(dm.gamma, 0.0) * W) * Fz;
        case MapVariant::LogForm:
            return Fz + W;
        case MapVariant::SpiralForm:
            return exp(Cplx(0.0, dm.gamma) * W) * Fz;
        default:
            throw unsupported_variant("log chart of a numeric map");
    }
}

} // namespace

SphereJet DevelopingMap::eval_jet(Cplx z) const {
    if (variant == MapVariant::Numeric) {
        const SphereJet base = numeric->jet(z);
        return apply_mobius(base, psi, K);
    }
    if (z.imag() < -1e-15) throw domain_error("developing maps live on the closed upper half-plane");
    return apply_mobius({inner_jet(*this, z), false}, psi, K);
}

ComplexPt DevelopingMap::eval(Cplx z) const { return eval_jet(z).value(); }

Cplx DevelopingMap::schwarzian_at(Cplx z) const {
    if (variant == MapVariant::Numeric) {
        // Exact by construction of the quotient map; read through the jet.
        return schwarzian(eval_jet(z).jet);
    }
    return schwarzian(eval_jet(z).jet);
}

SphereJet DevelopingMap::eval_log_chart(Cplx w) const {
    if (variant == MapVariant::Numeric)
        throw unsupported_variant("log chart evaluation of a numeric map");
    return apply_mobius({inner_jet_log_chart(*this, w), false}, psi, K);
}

Mobius DevelopingMap::descent_map() const {
    switch (variant) {
        case MapVariant::PowerForm: {
            const Cplx rot = std::exp(Cplx(0.0, 2.0 * kPi * gamma));
            return psi * Mobius(rot, 0.0, 0.0, 1.0) * psi.inverse();
        }
        case MapVariant::LogForm:
            return psi * Mobius(1.0, Cplx(0.0, 2.0 * kPi), 0.0, 1.0) * psi.inverse();
        case MapVariant::SpiralForm: {
            const double R2 = std::exp(-2.0 * kPi * gamma);
            return psi * Mobius(R2, 0.0, 0.0, 1.0) * psi.inverse();
        }
        default:
            throw unsupported_variant("descent map of a numeric map");
    }
}

DevelopingMap DevelopingMap::postcompose(const Mobius& m) const {
    DevelopingMap r = *this;
    r.psi = m * psi;
    return r;
}

namespace {

void range_check(const DevelopingMap& dm) {
    if (dm.K > 0) return;
    const double eps = std::min(dm.domain_radius, 1e6);
    for (int i = 0; i < 24; ++i) {
        const double r = eps * std::pow(10.0, -6.0 + 6.0 * i / 23.0) * 0.999;
        for (int j = 0; j <= 12; ++j) {
            const double th = kPi * j / 12.0;
            Cplx z = r * Cplx(std::cos(th), std::sin(th));
            if (j == 0) z = Cplx(r, 0.0);
            if (j == 12) z = Cplx(-r, 0.0);
            SphereJet g;
            try {
                g = dm.eval_jet(z);
            } catch (const Error&) {
                throw range_violation("1 + K|g|^2 > 0 fails on the validation sample");
            }
            if (1.0 + dm.K * std::norm(g.jet.f0) <= 0.0)
                throw range_violation("1 + K|g|^2 > 0 fails on the validation sample");
        }
    }
}

} // namespace

DevelopingMap construct_case_i(double gamma, SymmetricFactor F, Mobius psi, int K,
                               double domain_radius) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw domain_error("case (i) needs gamma in [0, 1)");
    if (F.symmetry != FactorSymmetry::RealOnReal)
        throw symmetry_violation("case (i) needs a real-on-real factor");
    F.validate();
    if (F.is_zero()) throw degenerate_input("case (i) factor cannot vanish identically");
    DevelopingMap dm;
    dm.variant = MapVariant::PowerForm;
    dm.gamma = gamma;
    dm.F = std::move(F);
    dm.psi = psi;
    dm.K = K;
    dm.domain_radius = domain_radius;
    range_check(dm);
    return dm;
}

DevelopingMap construct_case_ii(SymmetricFactor F, Mobius psi, int K, double domain_radius) {
    if (F.symmetry != FactorSymmetry::RealOnReal)
        throw symmetry_violation("case (ii) needs a real-on-real factor");
    F.validate();
    DevelopingMap dm;
    dm.variant = MapVariant::LogForm;
    dm.F = std::move(F);
    dm.psi = psi;
    dm.K = K;
    dm.domain_radius = domain_radius;
    range_check(dm);
    return dm;
}

DevelopingMap construct_case_iii(double gamma, SymmetricFactor F, Mobius psi, int K,
                                 double domain_radius) {
    if (!(gamma < 0.0)) throw domain_error("case (iii) needs gamma < 0");
    if (F.symmetry != FactorSymmetry::Unimodular)
        throw symmetry_violation("case (iii) needs a unimodular factor");
    F.validate();
    DevelopingMap dm;
    dm.variant = MapVariant::SpiralForm;
    dm.gamma = gamma;
    dm.F = std::move(F);
    dm.psi = psi;
    dm.K = K;
    dm.domain_radius = domain_radius;
    range_check(dm);
    return dm;
}

DevelopingMap solve_global(double c, Mobius psi, int K) {
    DevelopingMap dm;
    dm.K = K;
    dm.psi = psi;
    if (std::abs(2.0 * c - 1.0) < 1e-14) {
        dm.variant = MapVariant::LogForm;
        dm.F = SymmetricFactor::zero();
        return dm;
    }
    const double g2 = 1.0 - 2.0 * c;
    if (g2 <= 0.0) throw domain_error("solve_global needs c <= 1/2 for a real exponent");
    const double gamma = std::sqrt(g2);
    dm.variant = MapVariant::PowerForm;
    const double frac = gamma - std::floor(gamma);
    dm.gamma = frac;
    dm.gamma_folded = static_cast<int>(std::floor(gamma));
    dm.F = SymmetricFactor::one().times_power(dm.gamma_folded);
    return dm;
}

DevelopingMap developing_map_numeric(const SchwarzianSpec& spec, Cplx basepoint, Mobius gauge) {
    DevelopingMap dm;
    dm.variant = MapVariant::Numeric;
    dm.K = 1;
    dm.psi = gauge;
    dm.numeric = std::make_shared<NumericMap>(spec, basepoint);
    return dm;
}

BoundaryCircleFit boundary_circles(const DevelopingMap& dm, double a, double b, double pass_tol) {
    (void)pass_tol;
    if (!(a < b)) throw domain_error("boundary interval needs a < b");
    auto at = [&](double u) { return dm.eval(Cplx(a + (b - a) * u, 0.0)); };
    const ComplexPt p1 = at(0.15), p2 = at(0.5), p3 = at(0.85);
    if (chordal_distance(p1, p2) < 1e-11 || chordal_distance(p2, p3) < 1e-11
        || chordal_distance(p1, p3) < 1e-11)
        throw degenerate_fit("boundary samples nearly coincide");
    const GeneralizedCircle c = circle_through(p1, p2, p3);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double u = 0.04 + 0.92 * i / 19.0;
        worst = std::max(worst, c.chordal_residual(at(u)));
    }
    return {c, worst};
}

} // namespace liouville
