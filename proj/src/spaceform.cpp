#include "liouville/spaceform.hpp"

#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// d(log conformal_factor)/dz for the model metric; the only Christoffel
// datum a conformal metric needs.
Cplx log_density_dz(int K, Cplx z) {
    return -static_cast<double>(K) * std::conj(z) / (1.0 + static_cast<double>(K) * std::norm(z));
}

// One covariant-derivative curvature evaluation at step h.
double curvature_at_step(const std::function<Cplx(double)>& c, int K, double t, double h) {
    auto unit_tangent = [&](double s) {
        const Cplx d = (c(s + h) - c(s - h)) / (2.0 * h);
        const Cplx z = c(s);
        return d / (conformal_factor(K, z) * std::abs(d));
    };
    const Cplx u = unit_tangent(t);
    const Cplx du = (unit_tangent(t + h) - unit_tangent(t - h)) / (2.0 * h);
    const Cplx z = c(t);
    const Cplx dz = (c(t + h) - c(t - h)) / (2.0 * h);
    // Covariant derivative along the curve, then divide by metric speed.
    const Cplx Du = du + 2.0 * log_density_dz(K, z) * dz * u;
    const double speed = conformal_factor(K, z) * std::abs(dz);
    const Cplx acc = Du / speed;
    const Cplx n = Cplx(0.0, 1.0) * u; // metric-unit left normal
    const double rho = conformal_factor(K, z);
    return rho * rho * (std::conj(n) * acc).real();
}

} // namespace

CurvatureResult geodesic_curvature(const std::function<Cplx(double)>& curve, int K, double t,
                                   double h, double tol) {
    const double k_h = curvature_at_step(curve, K, t, h);
    const double k_h2 = curvature_at_step(curve, K, t, h / 2.0);
    // Central differences are O(h^2); one Richardson level.
    const double extrap = (4.0 * k_h2 - k_h) / 3.0;
    const double err = std::abs(k_h2 - k_h) / 3.0;
    if (err > tol * (1.0 + std::abs(extrap)))
        throw step_too_large("geodesic_curvature: discretization error above tolerance");
    return {extrap, err};
}

} // namespace liouville
