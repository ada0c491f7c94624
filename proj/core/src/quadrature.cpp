#include "sbrg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sbrg {

Quad1D gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    Quad1D q;
    q.x.resize(n);
    q.w.resize(n);
    // Newton iteration on Legendre roots, standard symmetric construction.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        q.x[i] = xm - xl * x;
        q.x[n - 1 - i] = xm + xl * x;
        q.w[i] = q.w[n - 1 - i] = 2.0 * xl / ((1.0 - x * x) * pp * pp);
    }
    return q;
}

Quad1D log_panel_rule(double a, double b, int per_panel, double panel_ratio) {
    if (!(a > 0.0 && b > a)) throw std::invalid_argument("log_panel_rule: need 0 < a < b");
    Quad1D out;
    double lo = a;
    while (lo < b) {
        double hi = std::min(lo * panel_ratio, b);
        Quad1D p = gauss_legendre(per_panel, lo, hi);
        out.x.insert(out.x.end(), p.x.begin(), p.x.end());
        out.w.insert(out.w.end(), p.w.begin(), p.w.end());
        lo = hi;
    }
    return out;
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, m, fm, lm, flm);
    double right = simpson(f, m, fm, b, fb, rm, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
} // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth) {
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson(f, a, fa, b, fb, m, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

} // namespace sbrg
