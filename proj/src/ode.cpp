#include "liouville/ode.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

Mat2 Mat2::inverse() const {
    const Cplx dt = det();
    if (std::abs(dt) < 1e-300) throw degenerate_input("singular 2x2 matrix");
    Mat2 r;
    r.m[0][0] = m[1][1] / dt;
    r.m[0][1] = -m[0][1] / dt;
    r.m[1][0] = -m[1][0] / dt;
    r.m[1][1] = m[0][0] / dt;
    return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
}

namespace {

// Laurent data of the potential P = Q/2 in the local coordinate of a
// regular singular point: P = s_m2/x^2 + s_m1/x + sum_j s[j] x^j.
struct LocalPotential {
    double s_m2 = 0.0, s_m1 = 0.0;
    std::vector<Cplx> s;
};

LocalPotential local_potential(const SchwarzianSpec& spec, int index, int n_terms) {
    LocalPotential P;
    P.s.assign(static_cast<size_t>(n_terms) + 2, Cplx(0.0));
    if (spec.global) {
        if (std::abs(spec.global_c.imag()) > 1e-12)
            throw domain_error("Frobenius data requires a real coefficient");
        P.s_m2 = 0.5 * spec.global_c.real();
        return P; // both at 0 and at infinity: c/z^2 is inversion covariant
    }
    if (index == -1) {
        // w = -1/z chart at w = 0.
        double m3 = 0.0;
        for (const auto& p : spec.poles) m3 += 2.0 * p.q * p.alpha + p.q * p.q * p.beta;
        P.s_m2 = 0.5 * spec.alpha_infinity();
        P.s_m1 = -0.5 * m3;
        for (size_t j = 0; j < P.s.size(); ++j) {
            double c = 0.0;
            for (const auto& p : spec.poles) {
                const double pw = std::pow(-p.q, static_cast<double>(j) + 2.0);
                c += pw * ((static_cast<double>(j) + 3.0) * p.alpha + p.q * p.beta);
            }
            P.s[j] = 0.5 * c;
        }
        return P;
    }
    const auto& pole = spec.poles.at(static_cast<size_t>(index));
    P.s_m2 = 0.5 * pole.alpha;
    P.s_m1 = 0.5 * pole.beta;
    for (size_t j = 0; j < P.s.size(); ++j) {
        double c = 0.0;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        for (size_t i = 0; i < spec.poles.size(); ++i) {
            if (static_cast<int>(i) == index) continue;
            const double d = pole.q - spec.poles[i].q;
            c += sign * (spec.poles[i].alpha * (static_cast<double>(j) + 1.0) / std::pow(d, static_cast<double>(j) + 2.0)
                         + spec.poles[i].beta / std::pow(d, static_cast<double>(j) + 1.0));
        }
        P.s[j] = 0.5 * c;
    }
    return P;
}

Cplx potential_term(const LocalPotential& P, int j) {
    if (j == -2) return P.s_m2;
    if (j == -1) return P.s_m1;
    if (j >= 0 && j < static_cast<int>(P.s.size())) return P.s[static_cast<size_t>(j)];
    return Cplx(0.0);
}

} // namespace

FrobeniusBasis frobenius_seed(const SchwarzianSpec& spec, int index, int n_terms) {
    if (n_terms < 4) throw domain_error("frobenius_seed needs n_terms >= 4");
    const LocalPotential P = local_potential(spec, index, n_terms);
    const double alpha = 2.0 * P.s_m2;
    if (alpha > 0.5 + 1e-14) throw domain_error("alpha exceeds 1/2 at the requested singular point");

    FrobeniusBasis fb;
    fb.alpha = alpha;
    fb.beta = 2.0 * P.s_m1;
    const IndicialRoots roots = indicial_roots(std::min(alpha, 0.5));
    fb.lam1 = roots.lambda1;
    fb.lam2 = roots.lambda2;
    fb.potential.assign(P.s.begin(), P.s.end());

    auto f = [&](double t) { return t * (t - 1.0) + P.s_m2; };

    const size_t N = static_cast<size_t>(n_terms);
    fb.a.assign(N, Cplx(0.0));
    fb.a[0] = 1.0;
    for (size_t n = 1; n < N; ++n) {
        Cplx acc(0.0);
        for (size_t m = 0; m < n; ++m)
            acc += potential_term(P, static_cast<int>(n) - 2 - static_cast<int>(m)) * fb.a[m];
        fb.a[n] = -acc / f(fb.lam2 + static_cast<double>(n));
    }

    fb.b.assign(N, Cplx(0.0));
    const double diff = fb.lam2 - fb.lam1;
    const long delta = std::lround(diff);
    const bool resonant = roots.logarithmic;

    if (!resonant) {
        fb.b[0] = 1.0;
        for (size_t n = 1; n < N; ++n) {
            Cplx acc(0.0);
            for (size_t m = 0; m < n; ++m)
                acc += potential_term(P, static_cast<int>(n) - 2 - static_cast<int>(m)) * fb.b[m];
            fb.b[n] = -acc / f(fb.lam1 + static_cast<double>(n));
        }
        fb.k = 0.0;
        return fb;
    }

    if (delta == 0) {
        // Double root lambda = 1/2: second solution u_a log x + x^{1/2} B(x).
        fb.k = 1.0;
        for (size_t n = 1; n < N; ++n) {
            Cplx acc(0.0);
            for (size_t m = 1; m < n; ++m)
                acc += potential_term(P, static_cast<int>(n) - 2 - static_cast<int>(m)) * fb.b[m];
            acc += fb.a[n] * (2.0 * static_cast<double>(n));
            fb.b[n] = -acc / f(fb.lam1 + static_cast<double>(n));
        }
        return fb;
    }

    // Resonant case with distinct roots: the obstruction at order delta
    // produces the log coefficient.
    fb.b[0] = 1.0;
    for (size_t n = 1; n < N; ++n) {
        Cplx acc(0.0);
        for (size_t m = 0; m < n; ++m)
            acc += potential_term(P, static_cast<int>(n) - 2 - static_cast<int>(m)) * fb.b[m];
        if (static_cast<long>(n) < delta) {
            fb.b[n] = -acc / f(fb.lam1 + static_cast<double>(n));
        } else if (static_cast<long>(n) == delta) {
            fb.k = -acc / (fb.a[0] * (2.0 * fb.lam2 - 1.0));
            fb.b[n] = 0.0; // convention
        } else {
            const size_t j = n - static_cast<size_t>(delta);
            acc += fb.k * fb.a[j] * (2.0 * fb.lam2 + 2.0 * static_cast<double>(j) - 1.0);
            fb.b[n] = -acc / f(fb.lam1 + static_cast<double>(n));
        }
    }
    if (std::abs(fb.k) < 1e-290) fb.k = 0.0;
    return fb;
}

namespace {

struct SeriesEval {
    Cplx S, dS, d2S; // sum, and derivatives with respect to x
};

SeriesEval eval_series(const std::vector<Cplx>& c, Cplx x) {
    SeriesEval r{Cplx(0.0), Cplx(0.0), Cplx(0.0)};
    for (size_t i = c.size(); i-- > 0;) {
        const double n = static_cast<double>(i);
        r.d2S = r.d2S * x + c[i] * n * (n - 1.0);
        r.dS = r.dS * x + c[i] * n;
        r.S = r.S * x + c[i];
    }
    // dS and d2S above are sum n c_n x^n and sum n(n-1) c_n x^n; convert.
    r.dS = (x == Cplx(0.0)) ? (c.size() > 1 ? c[1] : Cplx(0.0)) : r.dS / x;
    r.d2S = (x == Cplx(0.0)) ? (c.size() > 2 ? 2.0 * c[2] : Cplx(0.0)) : r.d2S / (x * x);
    return r;
}

} // namespace

std::array<Cplx, 6> FrobeniusBasis::eval_with_second(Cplx x) const {
    const Cplx L = std::log(x);
    const Cplx xl1 = std::exp(lam1 * L);
    const Cplx xl2 = std::exp(lam2 * L);
    const SeriesEval A = eval_series(a, x);
    const SeriesEval B = eval_series(b, x);

    const Cplx ua = xl2 * A.S;
    const Cplx dua = xl2 / x * (lam2 * A.S + x * A.dS);
    const Cplx d2ua = xl2 / (x * x)
        * (lam2 * (lam2 - 1.0) * A.S + 2.0 * lam2 * x * A.dS + x * x * A.d2S);

    Cplx ub = xl1 * B.S;
    Cplx dub = xl1 / x * (lam1 * B.S + x * B.dS);
    Cplx d2ub = xl1 / (x * x)
        * (lam1 * (lam1 - 1.0) * B.S + 2.0 * lam1 * x * B.dS + x * x * B.d2S);
    if (k != Cplx(0.0)) {
        ub += k * ua * L;
        dub += k * (dua * L + ua / x);
        d2ub += k * (d2ua * L + 2.0 * dua / x - ua / (x * x));
    }
    return {ua, ub, dua, dub, d2ua, d2ub};
}

Mat2 FrobeniusBasis::eval(Cplx x) const {
    const auto v = eval_with_second(x);
    Mat2 U;
    U.m[0][0] = v[0]; U.m[0][1] = v[1];
    U.m[1][0] = v[2]; U.m[1][1] = v[3];
    return U;
}

double FrobeniusBasis::residual(Cplx x, int column) const {
    const auto v = eval_with_second(x);
    Cplx Pv = alpha / 2.0 / (x * x) + beta / 2.0 / x;
    Cplx xp(1.0);
    for (const auto& s : potential) {
        Pv += s * xp;
        xp *= x;
    }
    const Cplx u = (column == 0) ? v[0] : v[1];
    const Cplx d2u = (column == 0) ? v[4] : v[5];
    return std::abs(d2u + Pv * u);
}

Cplx FrobeniusBasis::y1(Cplx x) const {
    const auto v = eval_with_second(x);
    return swapped() ? v[0] : v[1];
}

Cplx FrobeniusBasis::y2(Cplx x) const {
    const auto v = eval_with_second(x);
    return swapped() ? v[1] : v[0];
}

Cplx FrobeniusBasis::ratio(Cplx x) const {
    const auto v = eval_with_second(x);
    return v[0] / v[1];
}

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) for the first-order system
//   (y, y')' = (y', -(Q/2) y)
// applied to both columns at once, along straight segments.

namespace {

using Vec4 = std::array<Cplx, 4>; // y1, y1', y2, y2'

Vec4 rhs(const SchwarzianSpec& spec, Cplx z, Cplx dir, const Vec4& y) {
    const Cplx halfq = 0.5 * eval_Q(spec, z);
    return {dir * y[1], -dir * halfq * y[0], dir * y[3], -dir * halfq * y[2]};
}

Vec4 axpy(const Vec4& y, double h, std::initializer_list<std::pair<double, const Vec4*>> terms) {
    Vec4 r = y;
    for (const auto& [c, k] : terms)
        for (int i = 0; i < 4; ++i) r[i] += h * c * (*k)[i];
    return r;
}

double segment_distance(Cplx a, Cplx b, Cplx p) {
    const Cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

// One segment of DP54; appends accepted states to `out`.
void integrate_segment(const SchwarzianSpec& spec, Cplx za, Cplx zb, Vec4& y,
                       const IntegrateOptions& opt, std::vector<OdeState>* out) {
    const double L = std::abs(zb - za);
    if (L == 0.0) return;
    const Cplx u = (zb - za) / L;

    const double hmin = std::max(1e-13, 1e-14 * L);
    double t = 0.0;
    double h = std::min(L, 0.05 * (1.0 + std::abs(za)));

    while (t < L) {
        h = std::min(h, L - t);
        const Cplx z0 = za + t * u;

        const Vec4 k1 = rhs(spec, z0, u, y);
        const Vec4 k2 = rhs(spec, za + (t + h / 5.0) * u, u, axpy(y, h, {{1.0 / 5.0, &k1}}));
        const Vec4 k3 = rhs(spec, za + (t + 3.0 * h / 10.0) * u, u,
                            axpy(y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
        const Vec4 k4 = rhs(spec, za + (t + 4.0 * h / 5.0) * u, u,
                            axpy(y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
        const Vec4 k5 = rhs(spec, za + (t + 8.0 * h / 9.0) * u, u,
                            axpy(y, h, {{19372.0 / 6561.0, &k1}, {-25360.0 / 2187.0, &k2},
                                        {64448.0 / 6561.0, &k3}, {-212.0 / 729.0, &k4}}));
        const Vec4 k6 = rhs(spec, za + (t + h) * u, u,
                            axpy(y, h, {{9017.0 / 3168.0, &k1}, {-355.0 / 33.0, &k2},
                                        {46732.0 / 5247.0, &k3}, {49.0 / 176.0, &k4},
                                        {-5103.0 / 18656.0, &k5}}));
        const Vec4 y5 = axpy(y, h, {{35.0 / 384.0, &k1}, {500.0 / 1113.0, &k3},
                                    {125.0 / 192.0, &k4}, {-2187.0 / 6784.0, &k5},
                                    {11.0 / 84.0, &k6}});
        const Vec4 k7 = rhs(spec, za + (t + h) * u, u, y5);

        double err = 0.0;
        static const double e[7] = {71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                    -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0};
        const Vec4* ks[7] = {&k1, &k2, &k3, &k4, &k5, &k6, &k7};
        for (int i = 0; i < 4; ++i) {
            Cplx de(0.0);
            for (int j = 0; j < 7; ++j) de += e[j] * (*ks[j])[i];
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(h * de) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;
            if (out) out->push_back({za + t * u, y[0], y[1], y[2], y[3]});
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (h < hmin) throw step_underflow("integrator step size underflow");
    }
}

std::vector<double> pole_locations(const SchwarzianSpec& spec) {
    if (spec.global) return {0.0};
    std::vector<double> q;
    for (const auto& p : spec.poles) q.push_back(p.q);
    return q;
}

} // namespace

ODESolutionPair integrate_pair(const SchwarzianSpec& spec, const std::vector<Cplx>& path,
                               const OdeState& init, const IntegrateOptions& opt) {
    if (path.size() < 2) throw domain_error("integration path needs at least two points");
    if (std::abs(path.front() - init.z) > 1e-12)
        throw domain_error("initial state must sit at the start of the path");
    const Cplx W0 = init.wronskian();
    if (std::abs(W0) < 1e-300) throw domain_error("initial Wronskian must be nonzero");

    const double margin = (opt.pole_margin > 0.0) ? opt.pole_margin : 10.0 * 1e-13;
    const auto qs = pole_locations(spec);
    for (size_t i = 0; i + 1 < path.size(); ++i)
        for (double q : qs)
            if (segment_distance(path[i], path[i + 1], Cplx(q, 0.0)) < margin)
                throw pole_proximity("integration path too close to a pole");

    ODESolutionPair out;
    out.trace.push_back(init);
    Vec4 y{init.y1, init.dy1, init.y2, init.dy2};
    for (size_t i = 0; i + 1 < path.size(); ++i)
        integrate_segment(spec, path[i], path[i + 1], y, opt, &out.trace);

    for (const auto& st : out.trace)
        out.wronskian_drift = std::max(out.wronskian_drift,
                                       std::abs(st.wronskian() - W0) / std::abs(W0));
    return out;
}

// ---------------------------------------------------------------------------
// NumericMap

NumericMap::NumericMap(SchwarzianSpec spec, Cplx basepoint)
    : spec_(std::move(spec)), basepoint_(basepoint) {
    const SpecVerdict v = validate_spec(spec_);
    if (!v.valid) throw constraint_violation("invalid Schwarzian data: " + v.reason);
    if (basepoint_.imag() <= 0.0)
        throw domain_error("basepoint must lie in the open upper half-plane");
    poles_ = pole_locations(spec_);
    pole_data_.resize(poles_.size());
    for (size_t i = 0; i < poles_.size(); ++i) {
        pole_data_[i].q = poles_[i];
        double gap = 2.0 * (1.0 + std::abs(poles_[i]));
        for (size_t j = 0; j < poles_.size(); ++j)
            if (j != i) gap = std::min(gap, std::abs(poles_[i] - poles_[j]));
        pole_data_[i].handoff = 0.1 * std::min(gap, 10.0);
    }
    double wgap = 1.0;
    for (double q : poles_)
        if (q != 0.0) wgap = std::min(wgap, 1.0 / std::abs(q));
    inf_data_.q = 0.0;
    inf_data_.handoff = 0.1 * wgap;
    anchors_.push_back({basepoint_, Mat2::identity()});
}

double NumericMap::handoff_radius(int index) const {
    return (index < 0) ? inf_data_.handoff : pole_data_.at(static_cast<size_t>(index)).handoff;
}

const FrobeniusBasis& NumericMap::basis(int index) const {
    ensure_connection(index);
    return (index < 0) ? inf_data_.basis : pole_data_.at(static_cast<size_t>(index)).basis;
}

double NumericMap::clearance(Cplx a, Cplx b) const {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& pd : pole_data_)
        worst = std::min(worst, segment_distance(a, b, Cplx(pd.q, 0.0)) / pd.handoff);
    return worst;
}

Mat2 NumericMap::ode_continue(Cplx z) const {
    for (const auto& [az, aY] : anchors_)
        if (std::abs(az - z) < 1e-13) return aY;

    IntegrateOptions opt;
    opt.pole_margin = 1e-9;

    // Nearest anchor whose straight segment stays clear of every pole disk.
    const std::pair<Cplx, Mat2>* best = nullptr;
    double best_len = std::numeric_limits<double>::infinity();
    for (const auto& a : anchors_) {
        const double len = std::abs(a.first - z);
        if (len < best_len && clearance(a.first, z) >= 0.6) {
            best = &a;
            best_len = len;
        }
    }
    std::vector<Cplx> path;
    const std::pair<Cplx, Mat2>* origin = best;
    if (best) {
        path = {best->first, z};
    } else {
        // Route up, across, and back down; vertical legs never decrease the
        // distance to a real pole.
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& a : anchors_) {
            const double len = std::abs(a.first - z);
            if (len < nearest) {
                nearest = len;
                origin = &a;
            }
        }
        double maxh = inf_data_.handoff;
        for (const auto& pd : pole_data_) maxh = std::max(maxh, pd.handoff);
        const double H = std::max({origin->first.imag(), z.imag(), 1.0 + maxh});
        path = {origin->first, Cplx(origin->first.real(), H), Cplx(z.real(), H), z};
    }

    Vec4 y{origin->second.m[0][0], origin->second.m[1][0], origin->second.m[0][1],
           origin->second.m[1][1]};
    for (size_t i = 0; i + 1 < path.size(); ++i)
        integrate_segment(spec_, path[i], path[i + 1], y, opt, nullptr);
    Mat2 Y;
    Y.m[0][0] = y[0]; Y.m[1][0] = y[1];
    Y.m[0][1] = y[2]; Y.m[1][1] = y[3];
    anchors_.push_back({z, Y});
    if (anchors_.size() > 4096) anchors_.erase(anchors_.begin() + 1, anchors_.begin() + 2048);
    return Y;
}

void NumericMap::ensure_connection(int index) const {
    PoleData& pd = (index < 0) ? inf_data_ : pole_data_.at(static_cast<size_t>(index));
    if (pd.ready) return;
    pd.basis = frobenius_seed(spec_, index, 48);
    const Cplx xm = Cplx(0.0, 0.8 * pd.handoff);
    Mat2 local = pd.basis.eval(xm);
    Mat2 Y;
    if (index < 0) {
        const Cplx w = xm;
        const Cplx zm = -1.0 / w;
        const Mat2 Yz = ode_continue(zm);
        // Transform to the w chart: yh = w y, dyh/dw = y + y'/w.
        for (int j = 0; j < 2; ++j) {
            Y.m[0][j] = w * Yz.m[0][j];
            Y.m[1][j] = Yz.m[0][j] + Yz.m[1][j] / w;
        }
    } else {
        Y = ode_continue(Cplx(pd.q, 0.0) + xm);
    }
    pd.connection = local.inverse() * Y;
    pd.ready = true;
}

Mat2 NumericMap::series_fundamental(int index, Cplx x) const {
    ensure_connection(index);
    const PoleData& pd = (index < 0) ? inf_data_ : pole_data_.at(static_cast<size_t>(index));
    return pd.basis.eval(x) * pd.connection;
}

Mat2 NumericMap::fundamental(Cplx z) const {
    for (size_t i = 0; i < pole_data_.size(); ++i) {
        const Cplx x = z - pole_data_[i].q;
        if (std::abs(x) < pole_data_[i].handoff)
            return series_fundamental(static_cast<int>(i), x);
    }
    if (std::abs(z) > 1.0 / inf_data_.handoff) {
        const Cplx w = -1.0 / z;
        const Mat2 Yh = series_fundamental(-1, w);
        Mat2 Y;
        for (int j = 0; j < 2; ++j) {
            Y.m[0][j] = Yh.m[0][j] / w;
            Y.m[1][j] = w * Yh.m[1][j] - Yh.m[0][j];
        }
        return Y;
    }
    return ode_continue(z);
}

Mat2 NumericMap::fundamental_along(const std::vector<Cplx>& path) const {
    IntegrateOptions opt;
    opt.pole_margin = 1e-9;
    Vec4 y{1.0, 0.0, 0.0, 1.0};
    for (size_t i = 0; i + 1 < path.size(); ++i)
        integrate_segment(spec_, path[i], path[i + 1], y, opt, nullptr);
    Mat2 Y;
    Y.m[0][0] = y[0]; Y.m[1][0] = y[1];
    Y.m[0][1] = y[2]; Y.m[1][1] = y[3];
    return Y;
}

SphereJet NumericMap::jet(Cplx z) const {
    for (const auto& pd : pole_data_)
        if (std::abs(z - pd.q) < 1e-9)
            throw pole_proximity("jet evaluation within 1e-9 of a singular point");
    const Mat2 Y = fundamental(z);
    const OdeState st = OdeState::from_fundamental(z, Y);
    const Cplx W = st.wronskian();
    const Cplx Q = eval_Q(spec_, z);

    const bool inv = std::abs(st.y2) > std::abs(st.y1);
    const Cplx u = inv ? st.y2 : st.y1;
    const Cplx du = inv ? st.dy2 : st.dy1;
    Jet3 j;
    j.f0 = inv ? (-st.y1 / st.y2) : (st.y2 / st.y1);
    j.f1 = W / (u * u);
    j.f2 = -2.0 * W * du / (u * u * u);
    j.f3 = W * Q / (u * u) + 6.0 * W * du * du / (u * u * u * u);
    return {j, inv};
}

ComplexPt NumericMap::vertex_limit(int index) const {
    ensure_connection(index);
    const PoleData& pd = (index < 0) ? inf_data_ : pole_data_.at(static_cast<size_t>(index));
    const Cplx num = pd.connection.m[1][1];
    const Cplx den = pd.connection.m[1][0];
    if (std::abs(den) <= 1e-13 * std::abs(num)) return ComplexPt::infinity();
    return ComplexPt::finite(num / den);
}

double NumericMap::vertex_winding_angle(int index, double h) const {
    ensure_connection(index);
    const PoleData& pd = (index < 0) ? inf_data_ : pole_data_.at(static_cast<size_t>(index));
    const int N = 32;
    double total = 0.0;
    double prev = 0.0;
    for (int j = 0; j <= N; ++j) {
        const double th = kPi * j / N;
        const Cplx x = h * Cplx(std::cos(th), std::sin(th));
        const double ph = std::arg(pd.basis.ratio(x));
        if (j > 0) {
            double d = ph - prev;
            while (d > kPi) d -= 2.0 * kPi;
            while (d < -kPi) d += 2.0 * kPi;
            total += d;
        }
        prev = ph;
    }
    return total;
}

} // namespace liouville
