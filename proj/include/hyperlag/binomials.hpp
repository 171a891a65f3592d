#ifndef HYPERLAG_BINOMIALS_HPP
#define HYPERLAG_BINOMIALS_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace hyperlag {

/// Generalized binomial p_r(x) = x(x-1)...(x-r+1)/r!; equals C(x,r) at
/// integer x >= 0.
double generalized_binomial(double x, int r);

/// The inverse of p_r restricted to [r-1, inf): the unique s >= r-1 with
/// p_r(s) = m. Newton with a bisection-safe bracket, driven to rounding
/// error so finite differences of downstream functions stay clean.
/// generalized_binomial_inverse(0, r) = r-1.
double generalized_binomial_inverse(double m, int r);

/// The (r, m, s, d0, p) bundle: s = p_r^{-1}(m), d0 = rm/s.
struct BoundContext {
    int r = 2;
    double m = 0;
    double s = 1;
    double d0 = 0;
    double p = 1;

    static BoundContext make(int r, double m, double p);
};

/// rm / s^{r/p}; 0 at m = 0.
double nikiforov_bound(const BoundContext& ctx);

/// Pointwise data for the pair A(x) = x t^{-(r-1)}, B(x) = (m-x) u^{-r}
/// with x = C(t, r-1) and m - x = C(u, r), plus first derivatives, the
/// combination F = (A - rB)A' + (r-1)AB', the envelope value h, and the
/// crossing point x0 = (A - rB)/(r(A - B)).
struct ABPoint {
    double x = 0;
    double t = 0;
    double u = 0;
    double A = 0;
    double B = 0;
    double A1 = 0;
    double B1 = 0;
    double F = 0;
    double h = 0;
    double x0 = 0;
};

ABPoint eval_ab(const BoundContext& ctx, double x);
double eval_f(const BoundContext& ctx, double x);  // domain [d0, m)
double eval_h(const BoundContext& ctx, double x);  // domain [d0, m]

/// g_r(x) = x u^{-r} with u = p_r^{-1}(x), plus the closed-form first
/// derivative and the coefficient c with g'' <= -c |g'|.
struct GPoint {
    double x = 0;
    double u = 0;
    double g = 0;
    double g1 = 0;
    double second_coeff = 0;  // (r+1) / (u x sum 1/(u-j))
};
GPoint eval_g(double x, int r);

// ---- grid-based lemma checkers ---------------------------------------

enum class LemmaId { chebyshev_g = 1, ordering = 2, derivative_comparison = 3, f_negative = 4 };

struct GridSpec {
    int r_min = 2;
    int r_max = 8;
    int s_min = 0;  // 0 means "r" per row
    int s_max = 30;
    int samples = 257;
};

struct GridLocation {
    int r = 0;
    double s = 0;
    double x = 0;
    std::string check;
    double margin = 0;
};

struct LemmaReport {
    std::string lemma;
    GridSpec grid;
    long long points_checked = 0;
    long long points_excluded = 0;
    std::vector<GridLocation> failures;
    double worst_margin = 0;
    GridLocation worst_location;

    bool ok() const { return failures.empty(); }
    nlohmann::json to_json() const;
};

/// Evaluates the selected lemma's inequalities/identities at every grid
/// point. Identity checks compare closed-form derivatives against
/// central finite differences (relative 1e-5); inequality checks record
/// the signed margin (negative = failure). Points where a check is
/// undefined near the domain boundary are counted as excluded.
LemmaReport check_lemma(const GridSpec& grid, LemmaId which);

}  // namespace hyperlag

#endif
