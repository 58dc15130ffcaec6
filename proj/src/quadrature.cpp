#include "liouville/quadrature.hpp"

#include <cmath>

namespace liouville {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kx[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691, 0.741531185599394,
    0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double kw[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double gw[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

QuadResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(m + h * kx[i]);
        k += kw[i] * v;
        if (i % 2 == 1) g += gw[i / 2] * v;
    }
    QuadResult r;
    r.value = k * h;
    r.error = std::abs((k - g) * h);
    return r;
}

void adapt(const std::function<double(double)>& f, double a, double b, double rel_tol,
           double abs_tol, int depth, QuadResult& acc) {
    const QuadResult r = gk15(f, a, b);
    if (depth <= 0 || r.error <= abs_tol + rel_tol * std::abs(r.value)) {
        acc.value += r.value;
        acc.error += r.error;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, rel_tol, abs_tol / 2.0, depth - 1, acc);
    adapt(f, m, b, rel_tol, abs_tol / 2.0, depth - 1, acc);
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     double abs_tol, int max_depth) {
    QuadResult acc;
    adapt(f, a, b, rel_tol, abs_tol, max_depth, acc);
    return acc;
}

} // namespace liouville
