#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liouville/developing.hpp"
#include "liouville/verify.hpp"

namespace liouville {

struct PolygonArc {
    GeneralizedCircle circle;
    ComplexPt start, end;   // vertex images in traversal order
    ComplexPt witness;      // interior sample pinning the arc side
    double q_lo, q_hi;      // parameter interval (+-inf on the unbounded sides)
    double fit_residual = 0.0;
    double fitted_c = 0.0;      // Neumann fit of the boundary constant
    double curvature_c = 0.0;   // -2 * geodesic curvature of the image arc
};

struct PolygonVertex {
    double q;               // +inf encodes the vertex at infinity
    ComplexPt point;
    double alpha = 0.0;
    double angle_law = 0.0;      // pi * sqrt(1 - 2 alpha)
    double angle_measured = 0.0;
    double angle_circle = 0.0;   // from the adjacent circles' intersection
    double closure_residual = 0.0;
    bool ideal = false;
};

struct ImmersedCircularPolygon {
    int K = 1;
    std::vector<PolygonArc> arcs;       // in boundary order I_0, ..., I_{n-1}
    std::vector<PolygonVertex> vertices; // q_1, ..., q_{n-1}, then infinity
};

struct PolygonalMetricSpec {
    SchwarzianSpec schwarzian; // poles carry the singular points q_j
    Mobius gauge;              // post-composition gauge choice
    Cplx basepoint{0.0, 1.0};
    std::optional<std::vector<double>> expected_c; // per interval, for reports
};

// Interior angle from the double-pole coefficient: pi * sqrt(1 - 2 alpha).
double vertex_angle(double alpha);

struct PolygonResult {
    ImmersedCircularPolygon polygon;
    DevelopingMap map; // the gauged numeric developing map
};

// Integrates the numeric developing map along each boundary interval, fits
// one circle per interval, extends continuously into the vertices, and
// measures angles and boundary constants.
PolygonResult polygon_from_spec(const PolygonalMetricSpec& spec);

struct AlexandrovCertificate {
    bool local_diffeo = false;           // (a) spherical derivative positive at samples
    double min_spherical_derivative = 0.0;
    bool arcs_regular = false;           // (b) boundary speed bounded below off vertices
    bool boundary_embedded = false;      // (c) no arc-arc self-intersection detected
    bool self_intersecting = false;
    bool full_certificate = false;       // (a) + (b) + embedded boundary
    int interior_samples = 0;
    std::string notes;
};

// Necessary-condition certificate; only the embedded-boundary case upgrades
// to a full certificate.
AlexandrovCertificate alexandrov_partial_check(const DevelopingMap& dm,
                                               const ImmersedCircularPolygon& poly,
                                               int sample_density = 200);

struct AccessoryFit {
    double beta;             // beta_1 = -beta_2
    double objective = 0.0;  // achieved residual of the closure objective
    int iterations = 0;
};

// One-dimensional accessory fit for two poles: drive the measured
// coefficient at infinity to `target_alpha_inf` by bisection in beta.
AccessoryFit fit_accessory(double q1, double q2, double alpha1, double alpha2,
                           double target_alpha_inf, double tol = 1e-10);

} // namespace liouville
