#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liouville/canonical.hpp"
#include "liouville/developing.hpp"

namespace liouville {

// A conformal metric e^v |dz|^2 presented through its log-density.
struct MetricField {
    int K = 1;
    std::function<double(Cplx)> v;
    std::vector<double> singular; // boundary singular points on the real axis
    double domain_radius = std::numeric_limits<double>::infinity();
    std::optional<DevelopingMap> dev; // backing map when available

    double density(Cplx z) const { return std::exp(v(z)); }
};

// v = log(4|g'|^2 / (1 + K|g|^2)^2) assembled from jets in log-space.
MetricField metric_from_dev(const DevelopingMap& dm, int K);

// Field evaluating the canonical closed form directly.
MetricField canonical_field(const CanonicalParams& p);

struct GridSpec {
    double s0 = -2.0, s1 = 2.0;
    double t0 = 0.1, t1 = 3.0;
    int ns = 25, nt = 25;
    double h = 0.0; // 0: tuned per point
};

struct ResidualStats {
    double max_normalized = 0.0;
    double mean_normalized = 0.0;
    int points = 0;
    Cplx worst_point{0.0, 0.0};
    bool grid_too_coarse = false;
};

// 5-point Laplacian of v with one Richardson level (h, h/2); residual
// |Delta v + 2 K e^v| normalized by (1 + 2 e^v).
ResidualStats liouville_residual(const MetricField& field, const GridSpec& grid);

struct NeumannFit {
    double fitted_c = 0.0;
    double residual = 0.0;       // max deviation of pointwise c over the window
    double expected_error = 0.0; // |fitted - expected| when expected was given
    int points = 0;
};

// One-sided 4th-order normal derivative on a boundary window [a, b];
// fitted c is the mean of (dv/dt) e^{-v/2}.
NeumannFit neumann_residual(const MetricField& field, double a, double b,
                            std::optional<double> expected_c = std::nullopt, int points = 50);

// L(r) = r * integral_0^pi e^{v/2} dtheta, adaptive, relative error 1e-8.
double semicircle_length(const MetricField& field, double r);

struct AreaResult {
    double value = 0.0;
    double error = 0.0;
    bool divergent = false;
    bool slow_divergence = false; // ring sums nearly constant (log-type)
    double ring_ratio = 0.0;      // late-ring ratio S_{k+1}/S_k
    double growth_exponent = 0.0; // log2(ring_ratio)
    int rings = 0;
};

// Dyadic-ring quadrature around a boundary singular point down to r = 1e-10
// with a geometric-tail test; divergence is a reported verdict.
AreaResult area_half_disk(const MetricField& field, double center, double radius,
                          double rel_tol = 1e-9);

// Half-plane split into |z| <= 1 and the w = -1/z image of |z| >= 1; the
// field must have its singular set within {0} (plus infinity).
AreaResult area_half_plane(const MetricField& field, double rel_tol = 1e-9);

// Direct half-annulus integral r in [r0, r1]; used by chart-consistency checks.
double area_half_annulus(const MetricField& field, double r0, double r1, double rel_tol = 1e-10);

enum class Finiteness { Finite, Infinite };

struct FinitenessVerdict {
    Finiteness verdict;
    std::string branch;
    bool slow_divergence = false; // divergence only logarithmic in the cutoff
    bool log_two = false;         // the K=-1 tangency case with c1 = -c2 in (-2,2)
};

// Decision table for the local finite-area question at the origin of a
// case (i) / case (ii) closed form. Case (iii) reports Infinite (semicircle
// lengths are bounded below).
FinitenessVerdict finiteness_at_origin(MapVariant variant, const Mobius& psi,
                                       int F_order_at_zero, bool F_is_zero, int K);

// Finite-difference v_zz - v_z^2/2 (the Schwarzian map of the solution).
Cplx schwarzian_estimate(const MetricField& field, Cplx z, double h = 1e-3);

struct Verdict {
    std::string name;
    bool pass;
    double measured;
    double tolerance;
};

struct ResidualReport {
    ResidualStats pde;
    std::vector<NeumannFit> neumann; // side order: s > 0, then s < 0
    std::optional<AreaResult> area;
    std::vector<std::pair<double, double>> semicircle_lengths; // (r, L)
    std::optional<AsymptoticClass> asymptotics;
    std::vector<Verdict> verdicts;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    double pde_tol = 1e-5;
    double neumann_tol = 1e-6;
    double area_rel_tol = 1e-6;
    GridSpec grid;
};

// Full diagnostic pass over a canonical solution.
ResidualReport verify_canonical(const CanonicalParams& p, const VerifyOptions& opt = {});

} // namespace liouville
