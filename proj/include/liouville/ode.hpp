#pragma once

#include <array>
#include <memory>
#include <vector>

#include "liouville/complex_sphere.hpp"
#include "liouville/schwarzian.hpp"
#include "liouville/spaceform.hpp"

namespace liouville {

// 2x2 complex matrix; fundamental matrices are [[y1, y2], [y1', y2']].
struct Mat2 {
    Cplx m[2][2]{{{0.0}, {0.0}}, {{0.0}, {0.0}}};

    static Mat2 identity() {
        Mat2 I;
        I.m[0][0] = I.m[1][1] = 1.0;
        return I;
    }
    Cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    Mat2 inverse() const;
    friend Mat2 operator*(const Mat2& a, const Mat2& b);
};

struct OdeState {
    Cplx z;
    Cplx y1, dy1, y2, dy2;

    Cplx wronskian() const { return y1 * dy2 - y2 * dy1; }
    Mat2 fundamental() const {
        Mat2 Y;
        Y.m[0][0] = y1; Y.m[0][1] = y2;
        Y.m[1][0] = dy1; Y.m[1][1] = dy2;
        return Y;
    }
    static OdeState from_fundamental(Cplx z, const Mat2& Y) {
        return {z, Y.m[0][0], Y.m[1][0], Y.m[0][1], Y.m[1][1]};
    }
};

// Frobenius fundamental system at a regular singular point of
// y'' + (Q/2) y = 0, in the local coordinate x (= z - q, or the -1/z chart
// coordinate at infinity):
//   u_a = x^{lam2} * A(x),                          A(0) = 1
//   u_b = x^{lam1} * B(x) + k * u_a * log x
// with k produced by the resonant recurrence when lam2 - lam1 is a
// nonnegative integer (zero otherwise). The published pair (y1, y2) follows
// the quotient convention: y1 = u_b, y2 = u_a when k = 0, swapped otherwise,
// so that y2/y1 realizes the local developing-map normal form.
struct FrobeniusBasis {
    double alpha = 0.0, beta = 0.0;
    double lam1 = 0.0, lam2 = 0.0;
    Cplx k{0.0};
    std::vector<Cplx> a, b;          // series coefficients
    std::vector<Cplx> potential;     // Taylor coefficients of the regular part of Q/2

    // Columns (u_a, u_b) and their derivatives at x != 0 (principal branch).
    Mat2 eval(Cplx x) const;
    // Column values plus second derivatives, for residual checks.
    std::array<Cplx, 6> eval_with_second(Cplx x) const;
    // |y'' + (Q/2) y| of the requested column at x.
    double residual(Cplx x, int column) const;

    // Spec-facing pair (see above).
    Cplx y1(Cplx x) const;
    Cplx y2(Cplx x) const;
    bool swapped() const { return k != Cplx(0.0); }

    // u_a / u_b, which tends to 0 as x -> 0.
    Cplx ratio(Cplx x) const;
};

// Local series at pole `index` of the spec (global c/z^2 counts as a single
// pole at the origin). index = -1 requests the point at infinity in the
// w = -1/z chart.
FrobeniusBasis frobenius_seed(const SchwarzianSpec& spec, int index, int n_terms = 40);

struct IntegrateOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double pole_margin = 0.0;  // 0: use 10x the minimum step
    double max_wronskian_drift = 1e-8;
};

struct ODESolutionPair {
    std::vector<OdeState> trace; // accepted steps, including endpoints
    double wronskian_drift = 0.0;

    const OdeState& back() const { return trace.back(); }
};

// Adaptive integration of y'' + (Q/2) y = 0 for two solutions at once along
// a polyline. Throws PoleProximity / StepUnderflow.
ODESolutionPair integrate_pair(const SchwarzianSpec& spec, const std::vector<Cplx>& path,
                               const OdeState& init, const IntegrateOptions& opt = {});

// ODE-backed realization of a developing map g = y2/y1 on the upper
// half-plane, with Frobenius series taking over inside a handoff radius of
// each pole (and of infinity in the -1/z chart). Evaluations continue the
// fundamental matrix from the basepoint along pole-avoiding paths and
// memoize anchors; see the concurrency note in the README.
class NumericMap {
public:
    NumericMap(SchwarzianSpec spec, Cplx basepoint);

    const SchwarzianSpec& spec() const { return spec_; }
    Cplx basepoint() const { return basepoint_; }
    int pole_count() const { return static_cast<int>(poles_.size()); }

    // Fundamental matrix continued from the basepoint (identity there).
    Mat2 fundamental(Cplx z) const;

    // Two-chart jet of g = y2/y1 at z (needs |z - q_i| >= 1e-9).
    SphereJet jet(Cplx z) const;

    // Continuous extension of g to a boundary singular point; index -1 is
    // the point at infinity.
    ComplexPt vertex_limit(int index) const;

    // Interior angle at the vertex measured by unwrapping arg(u_a/u_b) along
    // a small upper semicircle around the pole.
    double vertex_winding_angle(int index, double h = 1e-5) const;

    const FrobeniusBasis& basis(int index) const;
    double handoff_radius(int index) const;

    // Continuation along an explicit polyline, ignoring the cache (used by
    // the homotopy-coherence checks).
    Mat2 fundamental_along(const std::vector<Cplx>& path) const;

private:
    struct PoleData {
        double q;
        FrobeniusBasis basis;
        double handoff;
        Mat2 connection; // Y(z) = U(z - q) * T
        bool ready = false;
    };

    Mat2 series_fundamental(int index, Cplx z) const;
    void ensure_connection(int index) const;
    Mat2 ode_continue(Cplx z) const;
    double clearance(Cplx a, Cplx b) const; // min over poles of segment distance / handoff

    SchwarzianSpec spec_;
    Cplx basepoint_;
    std::vector<double> poles_;
    mutable std::vector<PoleData> pole_data_;
    mutable PoleData inf_data_; // w = -1/z chart at w = 0
    mutable std::vector<std::pair<Cplx, Mat2>> anchors_;
};

} // namespace liouville
