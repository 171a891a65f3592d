#include "hyperlag/binomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperlag {

namespace {

double factorial(int r) {
    double f = 1;
    for (int i = 2; i <= r; ++i) f *= i;
    return f;
}

}  // namespace

double generalized_binomial(double x, int r) {
    if (r < 1) throw std::invalid_argument("generalized_binomial: r >= 1 required");
    double num = 1;
    for (int i = 0; i < r; ++i) num *= (x - i);
    return num / factorial(r);
}

double generalized_binomial_inverse(double m, int r) {
    if (r < 1) throw std::invalid_argument("generalized_binomial_inverse: r >= 1 required");
    if (m < 0) throw std::domain_error("generalized_binomial_inverse: m < 0");
    if (m == 0) return r - 1;
    // Newton inside a bisection-safe bracket, driven to the rounding
    // floor of p_r so that downstream finite differences stay clean.
    const double tol = 1e-15 * (r + 1) * std::max(1.0, m);
    double lo = r - 1;
    double hi = r * (1.0 + m);
    while (generalized_binomial(hi, r) < m) hi *= 2;
    double s = std::max(lo + 1e-12, r * std::pow(m, 1.0 / r));
    s = std::min(s, hi);
    for (int it = 0; it < 200; ++it) {
        double f = generalized_binomial(s, r) - m;
        if (f > 0) hi = s; else lo = s;
        if (std::abs(f) <= tol) break;
        // derivative of the falling product
        double d = 0;
        for (int j = 0; j < r; ++j) {
            double term = 1;
            for (int i = 0; i < r; ++i)
                if (i != j) term *= (s - i);
            d += term;
        }
        d /= factorial(r);
        double next = (d > 0) ? s - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) <= 4e-16 * std::max(1.0, std::abs(s))) { s = next; break; }
        s = next;
    }
    return s;
}

BoundContext BoundContext::make(int r, double m, double p) {
    if (r < 2) throw std::invalid_argument("BoundContext: r >= 2 required");
    if (m < 0) throw std::domain_error("BoundContext: m < 0");
    if (p < 1) throw std::domain_error("BoundContext: p >= 1 required");
    BoundContext ctx;
    ctx.r = r;
    ctx.m = m;
    ctx.p = p;
    ctx.s = generalized_binomial_inverse(m, r);
    ctx.d0 = (m > 0) ? r * m / ctx.s : 0.0;
    return ctx;
}

double nikiforov_bound(const BoundContext& ctx) {
    if (ctx.m == 0) return 0;
    return ctx.r * ctx.m / std::pow(ctx.s, ctx.r / ctx.p);
}

namespace {

double boundary_delta(double m) { return 1e-9 * std::max(1.0, m); }

// sum_{i=0}^{k} 1/(v-i) and sum_{i=0}^{k} i/(v-i)
double harmonic_sum(double v, int k) {
    double s = 0;
    for (int i = 0; i <= k; ++i) s += 1.0 / (v - i);
    return s;
}
double weighted_sum(double v, int k) {
    double s = 0;
    for (int i = 0; i <= k; ++i) s += i / (v - i);
    return s;
}

}  // namespace

ABPoint eval_ab(const BoundContext& ctx, double x) {
    const int r = ctx.r;
    const double m = ctx.m;
    const double slack = 1e-9 * std::max(1.0, m);
    if (x < ctx.d0 - slack || x > m + slack)
        throw std::domain_error("eval_ab: x outside [d0, m]");
    x = std::clamp(x, 0.0, m);

    ABPoint pt;
    pt.x = x;
    pt.t = generalized_binomial_inverse(x, r - 1);
    pt.A = (r == 2) ? 1.0 : x * std::pow(pt.t, -(r - 1));
    if (x == 0 && r > 2) pt.A = 0;  // m = 0 degenerate context
    // A' via the ratio form; the empty-sum numerator makes A' = 0 at r = 2.
    {
        double hs = harmonic_sum(pt.t, r - 2);
        double ws = weighted_sum(pt.t, r - 2);
        pt.A1 = ws / (std::pow(pt.t, r) * hs);
    }

    const double delta = boundary_delta(m);
    if (m - x < delta) {
        // x -> m limit: u -> r-1, B -> 0, B' -> -(r-1)^{-r}
        pt.u = r - 1;
        pt.B = (m - x) * std::pow(static_cast<double>(r - 1), -r);
        pt.B1 = -std::pow(static_cast<double>(r - 1), -r);
    } else {
        pt.u = generalized_binomial_inverse(m - x, r);
        pt.B = (m - x) * std::pow(pt.u, -r);
        double hs = harmonic_sum(pt.u, r - 1);
        double ws = weighted_sum(pt.u, r - 1);
        pt.B1 = -ws / (std::pow(pt.u, r + 1) * hs);
    }

    pt.F = (pt.A - r * pt.B) * pt.A1 + (r - 1) * pt.A * pt.B1;
    if (pt.A > pt.B) {
        pt.x0 = (pt.A - r * pt.B) / (r * (pt.A - pt.B));
        pt.h = std::pow(static_cast<double>(r - 1), r - 1) * std::pow(pt.A, r) /
               (std::pow(static_cast<double>(r), r - 1) * std::pow(pt.A - pt.B, r - 1));
    } else {
        pt.x0 = std::numeric_limits<double>::quiet_NaN();
        pt.h = std::numeric_limits<double>::quiet_NaN();
    }
    return pt;
}

double eval_f(const BoundContext& ctx, double x) {
    if (x >= ctx.m)
        throw std::domain_error("eval_f: x must lie in [d0, m)");
    return eval_ab(ctx, x).F;
}

double eval_h(const BoundContext& ctx, double x) {
    ABPoint pt = eval_ab(ctx, x);
    if (!(pt.A > pt.B))
        throw std::domain_error("eval_h: A <= B, numerical breakdown");
    return pt.h;
}

GPoint eval_g(double x, int r) {
    if (r < 1) throw std::invalid_argument("eval_g: r >= 1 required");
    if (x <= 0) throw std::domain_error("eval_g: x > 0 required");
    GPoint pt;
    pt.x = x;
    pt.u = generalized_binomial_inverse(x, r);
    pt.g = x * std::pow(pt.u, -r);
    double hs = harmonic_sum(pt.u, r - 1);
    double ws = weighted_sum(pt.u, r - 1);
    pt.g1 = ws / (std::pow(pt.u, r + 1) * hs);
    pt.second_coeff = (r + 1) / (pt.u * x * hs);
    return pt;
}

// ---- lemma checkers ---------------------------------------------------

namespace {

struct Collector {
    LemmaReport* rep;
    void point(int r, double s, double x, const char* check, double margin, bool pass) {
        ++rep->points_checked;
        if (rep->points_checked == 1 || margin < rep->worst_margin) {
            rep->worst_margin = margin;
            rep->worst_location = {r, s, x, check, margin};
        }
        if (!pass) rep->failures.push_back({r, s, x, check, margin});
    }
    void excluded() { ++rep->points_excluded; }
};

double rel_err(double got, double want) {
    double scale = std::max({std::abs(got), std::abs(want), 1e-300});
    return std::abs(got - want) / scale;
}

// Checks for the g_r derivative identity, the second-derivative
// inequality, and the Chebyshev sum inequality, sampled over u.
void check_g_row(Collector& col, int r, double s, int samples) {
    double u_lo = r - 1 + 0.25;
    double u_hi = s;
    if (u_hi <= u_lo) return;
    for (int j = 0; j < samples; ++j) {
        double u = u_lo + j * (u_hi - u_lo) / (samples - 1);
        double x = generalized_binomial(u, r);
        GPoint pt = eval_g(x, r);

        // first derivative vs central finite difference
        double eps = 1e-6 * x;
        double fd = (eval_g(x + eps, r).g - eval_g(x - eps, r).g) / (2 * eps);
        double err = rel_err(pt.g1, fd);
        col.point(r, s, x, "g_derivative_fd", 1e-5 - err, err <= 1e-5);

        // two closed forms of g' agree
        double alt = std::pow(pt.u, -r) * (1.0 - r / (pt.u * harmonic_sum(pt.u, r - 1)));
        double err2 = rel_err(pt.g1, alt);
        col.point(r, s, x, "g_derivative_forms", 1e-10 - err2, err2 <= 1e-10);

        // g'' <= -c |g'| with finite-difference second derivative
        double eps2 = 3e-5 * x;
        double g2 = (eval_g(x + eps2, r).g - 2 * pt.g + eval_g(x - eps2, r).g) / (eps2 * eps2);
        double rhs = -pt.second_coeff * std::abs(pt.g1);
        double scale = std::max({std::abs(g2), std::abs(rhs), 1e-300});
        double margin = (rhs - g2) / scale;
        col.point(r, s, x, "g_second_bound", margin, margin >= -1e-5);

        // Chebyshev sum inequality at u
        double lhs = 0;
        for (int i = 0; i < r; ++i) lhs += i / ((pt.u - i) * (pt.u - i));
        lhs *= r;
        double cheb = lhs - harmonic_sum(pt.u, r - 1) * weighted_sum(pt.u, r - 1);
        col.point(r, s, x, "chebyshev_step", cheb, cheb >= 0);
    }
}

// A'/B' closed forms vs finite differences over the x-grid.
void check_ab_derivatives_row(Collector& col, const BoundContext& ctx, int s, int samples) {
    double delta = boundary_delta(ctx.m);
    double lo = ctx.d0, hi = ctx.m - delta;
    if (hi <= lo) return;
    for (int j = 0; j < samples; ++j) {
        double x = lo + j * (hi - lo) / (samples - 1);
        double eps = 1e-6 * x;
        if (x - eps < lo || x + 2 * eps > hi) {
            col.excluded();  // finite-difference stencil would leave the domain
            continue;
        }
        ABPoint pt = eval_ab(ctx, x);
        ABPoint up = eval_ab(ctx, x + eps);
        ABPoint dn = eval_ab(ctx, x - eps);
        double fda = (up.A - dn.A) / (2 * eps);
        double fdb = (up.B - dn.B) / (2 * eps);
        if (std::abs(pt.A1) < 1e-12) {
            // r = 2: A is identically 1, both sides vanish
            col.point(ctx.r, s, x, "A_derivative_fd", 1e-8 - std::abs(fda),
                      std::abs(fda) <= 1e-8);
        } else {
            double err = rel_err(pt.A1, fda);
            col.point(ctx.r, s, x, "A_derivative_fd", 1e-5 - err, err <= 1e-5);
        }
        double errb = rel_err(pt.B1, fdb);
        col.point(ctx.r, s, x, "B_derivative_fd", 1e-5 - errb, errb <= 1e-5);
    }
}

void check_ordering_row(Collector& col, const BoundContext& ctx, int s, int samples) {
    double delta = boundary_delta(ctx.m);
    double lo = ctx.d0, hi = ctx.m - delta;
    if (hi <= lo) return;
    const int r = ctx.r;
    for (int j = 0; j < samples; ++j) {
        double x = lo + j * (hi - lo) / (samples - 1);
        ABPoint pt = eval_ab(ctx, x);
        // t >= s-1 >= u, equality only at x = d0
        col.point(r, s, x, "t_ge_s_minus_1", pt.t - (s - 1), pt.t >= s - 1 - 1e-9);
        col.point(r, s, x, "s_minus_1_ge_u", (s - 1) - pt.u, pt.u <= s - 1 + 1e-9);
        if (j == 0) {
            col.point(r, s, x, "equality_at_d0",
                      1e-6 - std::max(std::abs(pt.t - (s - 1)), std::abs(pt.u - (s - 1))),
                      std::abs(pt.t - (s - 1)) <= 1e-6 && std::abs(pt.u - (s - 1)) <= 1e-6);
        }
        // A - rB >= A (r-1)/u. The margin vanishes as x -> m, so inside
        // the boundary-limit branch (u clamped to r-1) the O(delta)
        // clamp error dominates it; those points are excluded.
        if (ctx.m - x > delta * (1 + 1e-6)) {
            double m19 = (pt.A - r * pt.B) - pt.A * (r - 1) / pt.u;
            col.point(r, s, x, "A_minus_rB", m19, m19 >= -1e-12 * std::abs(pt.A));
        } else {
            col.excluded();
        }
        // A >= ru/(u-r+1) B, only where u is safely above r-1
        if (pt.u >= r - 1 + 1e-6) {
            double m20 = pt.A - r * pt.u / (pt.u - r + 1) * pt.B;
            col.point(r, s, x, "A_over_B", m20, m20 >= -1e-12 * std::abs(pt.A));
        } else {
            col.excluded();
        }
    }
}

void check_comparison_row(Collector& col, const BoundContext& ctx, int s, int samples) {
    double delta = boundary_delta(ctx.m);
    double lo = ctx.d0, hi = ctx.m - delta;
    if (hi <= lo) return;
    const int r = ctx.r;
    for (int j = 0; j < samples; ++j) {
        double x = lo + j * (hi - lo) / (samples - 1);
        ABPoint pt = eval_ab(ctx, x);
        double m21 = pt.u * harmonic_sum(pt.u, r - 1) / r -
                     pt.t * harmonic_sum(pt.t, r - 2) / (r - 1);
        col.point(r, s, x, "harmonic_ratio", m21, m21 > 0);
        double m22 = -std::pow(pt.u, r) * pt.B1 - std::pow(pt.t, r - 1) * pt.A1;
        col.point(r, s, x, "uB1_vs_tA1", m22, m22 > 0);
    }
}

void check_f_row(Collector& col, const BoundContext& ctx, int s, int samples) {
    double delta = boundary_delta(ctx.m);
    double lo = ctx.d0, hi = ctx.m - delta;
    if (hi <= lo) return;
    const int r = ctx.r;
    for (int j = 0; j < samples; ++j) {
        double x = lo + j * (hi - lo) / (samples - 1);
        double f = eval_f(ctx, x);
        col.point(r, s, x, "F_negative", -f, f < 0);
        double eps = 1e-6 * x;
        if (x - eps < lo - 1e-12 || x + eps > hi) {
            col.excluded();
            continue;
        }
        double f1 = (eval_f(ctx, x + eps) - eval_f(ctx, x - eps)) / (2 * eps);
        col.point(r, s, x, "F_prime_negative", -f1, f1 < 0);
    }
}

}  // namespace

LemmaReport check_lemma(const GridSpec& grid, LemmaId which) {
    if (grid.samples < 2 || grid.r_min > grid.r_max)
        throw std::invalid_argument("check_lemma: empty grid");
    LemmaReport rep;
    rep.grid = grid;
    switch (which) {
        case LemmaId::chebyshev_g: rep.lemma = "g_function"; break;
        case LemmaId::ordering: rep.lemma = "ordering"; break;
        case LemmaId::derivative_comparison: rep.lemma = "derivative_comparison"; break;
        case LemmaId::f_negative: rep.lemma = "f_negative"; break;
    }
    Collector col{&rep};
    for (int r = std::max(2, grid.r_min); r <= grid.r_max; ++r) {
        int s_lo = (grid.s_min == 0) ? r : std::max(grid.s_min, r);
        for (int s = s_lo; s <= grid.s_max; ++s) {
            double m = generalized_binomial(static_cast<double>(s), r);
            BoundContext ctx = BoundContext::make(r, m, 1.0);
            switch (which) {
                case LemmaId::chebyshev_g:
                    check_g_row(col, r, s, grid.samples);
                    check_ab_derivatives_row(col, ctx, s, grid.samples);
                    break;
                case LemmaId::ordering:
                    check_ordering_row(col, ctx, s, grid.samples);
                    break;
                case LemmaId::derivative_comparison:
                    check_comparison_row(col, ctx, s, grid.samples);
                    break;
                case LemmaId::f_negative:
                    check_f_row(col, ctx, s, grid.samples);
                    break;
            }
        }
    }
    return rep;
}

nlohmann::json LemmaReport::to_json() const {
    nlohmann::json j;
    j["lemma"] = lemma;
    j["grid"] = {{"r_min", grid.r_min}, {"r_max", grid.r_max},
                 {"s_min", grid.s_min}, {"s_max", grid.s_max},
                 {"samples", grid.samples}};
    j["points_checked"] = points_checked;
    j["points_excluded"] = points_excluded;
    j["failures"] = nlohmann::json::array();
    for (auto& f : failures)
        j["failures"].push_back({{"r", f.r}, {"s", f.s}, {"x", f.x},
                                 {"check", f.check}, {"margin", f.margin}});
    j["worst_margin"] = worst_margin;
    j["worst_location"] = {{"r", worst_location.r}, {"s", worst_location.s},
                           {"x", worst_location.x}, {"check", worst_location.check}};
    return j;
}

}  // namespace hyperlag
