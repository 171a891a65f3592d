#include "hyperlag/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <bit>
#include <random>
#include <stdexcept>

namespace hyperlag {

SolverConfig SolverConfig::from_json(const nlohmann::json& j) {
    SolverConfig cfg;
    if (j.contains("p")) cfg.p = j.at("p").get<double>();
    if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<long long>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("residual_tol")) cfg.residual_tol = j.at("residual_tol").get<double>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    return cfg;
}

nlohmann::json SolverConfig::to_json() const {
    return {{"p", p},         {"restarts", restarts},       {"seed", seed},
            {"max_iters", max_iters}, {"tol", tol},
            {"residual_tol", residual_tol}, {"threads", threads}};
}

double WeightVector::pnorm() const {
    double s = 0;
    for (double v : entries) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

void WeightVector::normalize() {
    double nrm = pnorm();
    if (!(nrm > 0)) throw std::domain_error("WeightVector: zero vector");
    for (double& v : entries) v /= nrm;
}

namespace {

// 0-based edge index lists for the hot loops.
struct Compiled {
    int n = 0, r = 1;
    std::vector<std::vector<int>> edges;

    explicit Compiled(const Hypergraph& h) : n(h.vertex_count()), r(h.arity()) {
        edges.reserve(h.edge_count());
        for (auto& e : h.edges()) {
            std::vector<int> e0(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) e0[i] = e[i] - 1;
            edges.push_back(std::move(e0));
        }
    }

    double poly(std::span<const double> x) const {
        double s = 0;
        for (auto& e : edges) {
            double prod = 1;
            for (int v : e) prod *= x[v];
            s += prod;
        }
        return r * s;
    }

    // grad_i = r * sum over edges containing i of the product without i
    void grad(std::span<const double> x, std::vector<double>& g) const {
        g.assign(n, 0.0);
        for (auto& e : edges) {
            for (std::size_t skip = 0; skip < e.size(); ++skip) {
                double prod = 1;
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (i != skip) prod *= x[e[i]];
                g[e[skip]] += prod;
            }
        }
        for (double& v : g) v *= r;
    }

    // hess_{ij} = d grad_i / d x_j (zero diagonal: edges have distinct vertices)
    void hess(std::span<const double> x, std::vector<double>& hmat) const {
        hmat.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (auto& e : edges) {
            for (std::size_t a = 0; a < e.size(); ++a) {
                for (std::size_t b = 0; b < e.size(); ++b) {
                    if (a == b) continue;
                    double prod = 1;
                    for (std::size_t i = 0; i < e.size(); ++i)
                        if (i != a && i != b) prod *= x[e[i]];
                    hmat[static_cast<std::size_t>(e[a]) * n + e[b]] += r * prod;
                }
            }
        }
    }
};

void normalize_p(std::vector<double>& x, double p) {
    double s = 0;
    for (double v : x) s += std::pow(v, p);
    double nrm = std::pow(s, 1.0 / p);
    if (!(nrm > 0)) return;
    for (double& v : x) v /= nrm;
}

// Gaussian elimination with partial pivoting; a is row-major k x k.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, int k) {
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int row = col + 1; row < k; ++row)
            if (std::abs(a[row * k + col]) > std::abs(a[piv * k + col])) piv = row;
        if (std::abs(a[piv * k + col]) < 1e-300) return false;
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(a[col * k + j], a[piv * k + j]);
            std::swap(b[col], b[piv]);
        }
        for (int row = col + 1; row < k; ++row) {
            double f = a[row * k + col] / a[col * k + col];
            if (f == 0) continue;
            for (int j = col; j < k; ++j) a[row * k + j] -= f * a[col * k + j];
            b[row] -= f * b[col];
        }
    }
    for (int row = k - 1; row >= 0; --row) {
        double s = b[row];
        for (int j = row + 1; j < k; ++j) s -= a[row * k + j] * b[j];
        b[row] = s / a[row * k + row];
    }
    return true;
}

struct RunResult {
    double rho = -1;
    std::vector<double> x;
    double residual = std::numeric_limits<double>::infinity();
    long long iterations = 0;
};

double max_defect(const Compiled& c, std::span<const double> x, double rho, double p,
                  double support_eps) {
    std::vector<double> g;
    c.grad(x, g);
    double worst = 0;
    for (int i = 0; i < c.n; ++i) {
        if (x[i] <= support_eps) continue;
        double link = g[i] / c.r;
        double defect = std::abs(link - rho * std::pow(x[i], p - 1));
        worst = std::max(worst, defect);
    }
    return worst;
}

// Newton on the eigen-equation system restricted to the given support:
//   link_i(x) - rho x_i^{p-1} = 0  (i in S),  sum_S x_i^p = 1.
// Entries outside S are zeroed. Returns true and overwrites (x, rho)
// on success.
bool newton_polish(const Compiled& c, std::vector<double>& x, double& rho, double p,
                   const std::vector<int>& sup) {
    if (sup.empty()) return false;
    const int k = static_cast<int>(sup.size());
    const int dim = k + 1;

    std::vector<double> xs(c.n, 0.0);
    for (int i : sup) xs[i] = x[i];
    normalize_p(xs, p);
    if (!(c.poly(xs) > 0)) return false;
    double rh = c.poly(xs);

    std::vector<double> g, hmat, F(dim), J(static_cast<std::size_t>(dim) * dim), step;
    auto eval_fnorm = [&](const std::vector<double>& xv, double rv) {
        c.grad(xv, g);
        double fn = 0;
        for (int a = 0; a < k; ++a) {
            double xi = xv[sup[a]];
            F[a] = g[sup[a]] / c.r - rv * std::pow(xi, p - 1);
            fn = std::max(fn, std::abs(F[a]));
        }
        double con = -1;
        for (int a = 0; a < k; ++a) con += std::pow(xv[sup[a]], p);
        F[k] = con;
        return std::max(fn, std::abs(con));
    };
    for (int it = 0; it < 80; ++it) {
        double fnorm = eval_fnorm(xs, rh);
        if (fnorm < 1e-14 * std::max(1.0, std::abs(rh))) break;

        c.hess(xs, hmat);
        std::fill(J.begin(), J.end(), 0.0);
        for (int a = 0; a < k; ++a) {
            double xi = xs[sup[a]];
            for (int b = 0; b < k; ++b)
                J[static_cast<std::size_t>(a) * dim + b] =
                    hmat[static_cast<std::size_t>(sup[a]) * c.n + sup[b]] / c.r;
            if (p > 1)
                J[static_cast<std::size_t>(a) * dim + a] -=
                    rh * (p - 1) * std::pow(xi, p - 2);
            J[static_cast<std::size_t>(a) * dim + k] = -std::pow(xi, p - 1);
        }
        for (int b = 0; b < k; ++b)
            J[static_cast<std::size_t>(k) * dim + b] = p * std::pow(xs[sup[b]], p - 1);

        step.assign(F.begin(), F.end());
        for (double& v : step) v = -v;
        std::vector<double> Jcopy = J;
        if (!solve_dense(Jcopy, step, dim)) {
            // Twin vertices (identical link structure) make J exactly
            // singular: their equations coincide and the solutions form
            // a manifold. Take the damped minimum-norm step
            // (J^T J + lam I) step = -J^T F instead.
            std::vector<double> jtj(static_cast<std::size_t>(dim) * dim, 0.0);
            std::vector<double> jtf(dim, 0.0);
            double diag_scale = 0;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    double s = 0;
                    for (int t = 0; t < dim; ++t)
                        s += J[static_cast<std::size_t>(t) * dim + a] *
                             J[static_cast<std::size_t>(t) * dim + b];
                    jtj[static_cast<std::size_t>(a) * dim + b] = s;
                    if (a == b) diag_scale = std::max(diag_scale, std::abs(s));
                }
            double lam = 1e-12 * std::max(1.0, diag_scale);
            for (int a = 0; a < dim; ++a)
                jtj[static_cast<std::size_t>(a) * dim + a] += lam;
            for (int a = 0; a < dim; ++a) {
                double s = 0;
                for (int t = 0; t < dim; ++t)
                    s -= J[static_cast<std::size_t>(t) * dim + a] * F[t];
                jtf[a] = s;
            }
            step = jtf;
            if (!solve_dense(jtj, step, dim)) return false;
        }

        // keep the iterate nonnegative
        double scale = 1.0;
        for (int a = 0; a < k; ++a) {
            double xi = xs[sup[a]];
            if (xi + scale * step[a] < 0) scale = std::min(scale, -0.9 * xi / step[a]);
        }
        // damped step: backtrack until the defect norm decreases
        bool moved = false;
        for (int bt = 0; bt < 10; ++bt) {
            std::vector<double> xt = xs;
            for (int a = 0; a < k; ++a) xt[sup[a]] += scale * step[a];
            double rt = rh + scale * step[k];
            std::vector<double> Fsave = F;
            if (eval_fnorm(xt, rt) < fnorm) {
                xs = std::move(xt);
                rh = rt;
                moved = true;
                break;
            }
            F = Fsave;
            scale *= 0.5;
        }
        if (!moved) return false;  // stalled away from a root
    }
    normalize_p(xs, p);
    double rho_new = c.poly(xs);
    if (!std::isfinite(rho_new)) return false;
    x = xs;
    rho = rho_new;
    return true;
}

RunResult run_one(const Compiled& c, std::vector<double> x, const SolverConfig& cfg) {
    const double p = cfg.p;
    normalize_p(x, p);
    RunResult res;
    double P = c.poly(x);
    double eta = 0.5;
    int small_count = 0;
    std::vector<double> g, y;
    long long it = 0;
    for (; it < cfg.max_iters; ++it) {
        c.grad(x, g);
        double gmax = 0;
        for (double v : g) gmax = std::max(gmax, v);
        if (gmax == 0) break;
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries) {
            y = x;
            for (int i = 0; i < c.n; ++i) y[i] += eta * g[i];
            normalize_p(y, p);
            double Py = c.poly(y);
            if (Py > P) {
                double rel = (Py - P) / std::max(P, 1e-300);
                x.swap(y);
                P = Py;
                eta = std::min(eta * 1.3, 1e6);
                accepted = true;
                if (rel < cfg.tol) {
                    if (++small_count >= 20) it = cfg.max_iters;  // done
                } else {
                    small_count = 0;
                }
                break;
            }
            eta *= 0.5;
            if (eta < 1e-18) break;
        }
        if (!accepted) break;  // stationary to rounding
    }
    res.iterations = std::min(it, cfg.max_iters);

    // The ascent can stall with stray mass on vertices outside the true
    // support (their entries drain only geometrically). Polish over every
    // prefix of the sorted-entry support and keep the best
    // residual-certified result; fall back to the raw ascent point.
    std::vector<int> order(c.n);
    for (int i = 0; i < c.n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return x[a] > x[b]; });

    double best_rho = P;
    std::vector<double> best_x = x;
    double best_def = max_defect(c, x, P, p, cfg.support_eps);
    double cert_rho = -1;
    std::vector<double> cert_x;
    double cert_def = 0;

    std::vector<int> sup;
    for (int k = 0; k < c.n; ++k) {
        if (!(x[order[k]] > 0)) break;
        sup.push_back(order[k]);
        if (k + 1 < c.n && x[order[k + 1]] == x[order[k]]) continue;  // tie: keep both
        std::vector<double> xp = x;
        double rho_p = P;
        if (!newton_polish(c, xp, rho_p, p, sup)) continue;
        double def = max_defect(c, xp, rho_p, p, cfg.support_eps);
        if (rho_p > best_rho) {
            best_rho = rho_p;
            best_x = xp;
            best_def = def;
        }
        if (def <= cfg.residual_tol && rho_p > cert_rho) {
            cert_rho = rho_p;
            cert_x = std::move(xp);
            cert_def = def;
        }
    }
    // Degenerate corners: a critical point can have off-support links
    // exactly equal to rho (first-order flat), hiding a better maximum
    // on a larger support. Expand the support along KKT-tight vertices
    // and re-polish from a seeded interior point.
    {
        std::vector<double> base = (cert_rho > -1) ? cert_x : best_x;
        double base_rho = (cert_rho > -1) ? cert_rho : best_rho;
        std::vector<double> gb;
        for (int round = 0; round < 3; ++round) {
            c.grad(base, gb);
            std::vector<int> sup2;
            std::vector<int> added;
            double min_pos = std::numeric_limits<double>::infinity();
            for (int i = 0; i < c.n; ++i) {
                if (base[i] > cfg.support_eps) {
                    sup2.push_back(i);
                    min_pos = std::min(min_pos, base[i]);
                } else if (gb[i] / c.r >=
                           base_rho - std::max(1e-8, 1e-6 * std::abs(base_rho))) {
                    added.push_back(i);
                }
            }
            if (added.empty() || sup2.empty()) break;
            for (int i : added) sup2.push_back(i);
            // The base point itself can solve the expanded system (x^0 = 1
            // keeps its equations satisfied at p = 1), so Newton may fall
            // back into it; try several seed magnitudes and keep the best
            // certified root.
            double exp_rho = -1;
            std::vector<double> exp_x;
            double exp_def = 0;
            for (double factor : {1.0, 0.5, 0.25}) {
                std::vector<double> xe = base;
                for (int i : added) xe[i] = factor * min_pos;
                normalize_p(xe, p);
                double rho_e = c.poly(xe);
                if (!newton_polish(c, xe, rho_e, p, sup2)) continue;
                double def = max_defect(c, xe, rho_e, p, cfg.support_eps);
                if (rho_e > best_rho) {
                    best_rho = rho_e;
                    best_x = xe;
                    best_def = def;
                }
                if (def <= cfg.residual_tol && rho_e > exp_rho) {
                    exp_rho = rho_e;
                    exp_x = std::move(xe);
                    exp_def = def;
                }
            }
            if (exp_rho > base_rho + 1e-12 * std::max(1.0, std::abs(base_rho))) {
                cert_rho = exp_rho;
                cert_x = exp_x;
                cert_def = exp_def;
                base = std::move(exp_x);
                base_rho = exp_rho;
            } else {
                break;
            }
        }
    }

    // prefer the certified point unless the uncertified one is genuinely higher
    if (cert_rho >= best_rho - 1e-9 * std::max(1.0, std::abs(best_rho))) {
        res.x = std::move(cert_x);
        res.rho = cert_rho;
        res.residual = cert_def;
    } else {
        res.x = std::move(best_x);
        res.rho = best_rho;
        res.residual = best_def;
    }
    return res;
}

std::vector<double> make_start(const Compiled& c, int which, std::uint64_t seed) {
    std::vector<double> x(c.n, 0.0);
    if (which == 0) {  // uniform
        std::fill(x.begin(), x.end(), 1.0);
        return x;
    }
    if (which == 1) {  // degree-weighted
        for (auto& e : c.edges)
            for (int v : e) x[v] += 1.0;
        bool any = std::any_of(x.begin(), x.end(), [](double v) { return v > 0; });
        if (!any) std::fill(x.begin(), x.end(), 1.0);
        return x;
    }
    int nedge_starts = std::min<int>(static_cast<int>(c.edges.size()), 12);
    if (which - 2 < nedge_starts) {  // concentrated on a single edge
        for (int v : c.edges[which - 2]) x[v] = 1.0;
        // slight interior perturbation so other vertices can re-enter
        for (double& v : x) v += 1e-3;
        return x;
    }
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + which);
    std::exponential_distribution<double> dist(1.0);
    for (double& v : x) v = dist(rng) + 1e-9;
    return x;
}

}  // namespace

double poly_form(const Hypergraph& h, std::span<const double> x) {
    if (static_cast<int>(x.size()) != h.vertex_count())
        throw std::invalid_argument("poly_form: index mismatch");
    return Compiled(h).poly(x);
}

std::vector<double> poly_gradient(const Hypergraph& h, std::span<const double> x) {
    if (static_cast<int>(x.size()) != h.vertex_count())
        throw std::invalid_argument("poly_gradient: index mismatch");
    std::vector<double> g;
    Compiled(h).grad(x, g);
    return g;
}

SpectralSolution solve_rho(const Hypergraph& h, double p, const SolverConfig& cfg_in) {
    if (p < 1) throw std::domain_error("solve_rho: p >= 1 required");
    SolverConfig cfg = cfg_in;
    cfg.p = p;
    SpectralSolution sol;
    sol.vector.p = p;
    sol.vector.entries.assign(h.vertex_count(), 0.0);
    if (h.edge_count() == 0) {
        sol.converged = true;
        if (h.vertex_count() > 0) {
            sol.vector.entries.assign(h.vertex_count(), 0.0);
            sol.vector.entries[0] = 1.0;  // arbitrary feasible point
        }
        return sol;
    }
    Compiled c(h);
    int restarts = std::max(1, cfg.restarts);
    RunResult best;
    for (int k = 0; k < restarts; ++k) {
        RunResult r = run_one(c, make_start(c, k, cfg.seed), cfg);
        sol.iterations += r.iterations;
        bool take = false;
        if (r.rho > best.rho) take = true;
        else if (r.rho == best.rho && r.x < best.x) take = true;
        if (take) best = std::move(r);
    }
    sol.restarts_used = restarts;
    sol.rho = best.rho;
    sol.vector.entries = best.x;
    sol.residual = best.residual;
    sol.converged = best.residual <= cfg.residual_tol;
    for (int i = 0; i < h.vertex_count(); ++i)
        if (best.x[i] > cfg.support_eps) sol.support.push_back(i + 1);
    return sol;
}

double lagrangian(const Hypergraph& h, const SolverConfig& cfg) {
    if (h.edge_count() == 0) return 0;
    return solve_rho(h, 1.0, cfg).rho / h.arity();
}

int clique_number(const Hypergraph& h) {
    if (h.arity() != 2) throw std::invalid_argument("clique_number: requires r = 2");
    const int n = h.vertex_count();
    if (n == 0) return 0;
    std::vector<std::uint32_t> adj(n, 0);
    for (auto& e : h.edges()) {
        adj[e[0] - 1] |= std::uint32_t{1} << (e[1] - 1);
        adj[e[1] - 1] |= std::uint32_t{1} << (e[0] - 1);
    }
    int best = 1;
    // Carraghan-Pardalos style branch and bound.
    auto expand = [&](auto&& self, std::uint32_t cand, int size) -> void {
        while (cand) {
            if (size + std::popcount(cand) <= best) return;
            int v = std::countr_zero(cand);
            cand &= cand - 1;
            best = std::max(best, size + 1);
            std::uint32_t next = cand & adj[v];
            if (next) self(self, next, size + 1);
        }
    };
    std::uint32_t all = (n >= 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    expand(expand, all, 0);
    return best;
}

namespace {

double eval_scaled(const Compiled& c, std::vector<double> y, double p) {
    double s = 0;
    for (double v : y) s += std::pow(v, p);
    if (!(s > 0)) return 0;
    double nrm = std::pow(s, 1.0 / p);
    for (double& v : y) v /= nrm;
    return c.poly(y);
}

}  // namespace

double rho_brute(const Hypergraph& h, double p, int resolution, int refine_rounds) {
    if (p < 1) throw std::domain_error("rho_brute: p >= 1 required");
    if (h.edge_count() == 0) return 0;
    Compiled c(h);
    const int n = c.n;
    const int N = std::max(2, resolution);

    double best = 0;
    std::vector<double> best_x(n, 0.0);
    std::vector<int> comp(n, 0);
    // all compositions of N into n nonnegative parts
    auto rec = [&](auto&& self, int idx, int left) -> void {
        if (idx == n - 1) {
            comp[idx] = left;
            std::vector<double> y(n);
            for (int i = 0; i < n; ++i) y[i] = static_cast<double>(comp[i]) / N;
            double val = eval_scaled(c, y, p);
            if (val > best) {
                best = val;
                for (int i = 0; i < n; ++i) best_x[i] = y[i];
            }
            return;
        }
        for (int v = left; v >= 0; --v) {
            comp[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    rec(rec, 0, N);

    // local mass-transfer refinement on the simplex around the best point
    double hstep = 1.0 / N;
    for (int round = 0; round < refine_rounds; ++round) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n; ++i) {
                if (best_x[i] <= 0) continue;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    double t = std::min(hstep, best_x[i]);
                    std::vector<double> y = best_x;
                    y[i] -= t;
                    y[j] += t;
                    double val = eval_scaled(c, y, p);
                    if (val > best) {
                        best = val;
                        best_x = std::move(y);
                        improved = true;
                    }
                }
            }
        }
        hstep /= 8;
    }
    return best;
}

std::vector<PowerMeanPoint> power_mean_curve(const Hypergraph& h,
                                             const std::vector<double>& p_list,
                                             const SolverConfig& cfg) {
    std::vector<PowerMeanPoint> out;
    out.reserve(p_list.size());
    const double rm = static_cast<double>(h.arity()) * h.edge_count();
    for (double p : p_list) {
        PowerMeanPoint pt;
        pt.p = p;
        if (h.edge_count() == 0) {
            out.push_back(pt);
            continue;
        }
        pt.rho = solve_rho(h, p, cfg).rho;
        pt.transformed = std::pow(pt.rho / rm, p);
        out.push_back(pt);
    }
    return out;
}

nlohmann::json SpectralSolution::to_json() const {
    nlohmann::json j;
    j["rho"] = rho;
    j["p"] = vector.p;
    j["vector"] = vector.entries;
    j["residual"] = residual;
    j["restarts_used"] = restarts_used;
    j["iterations"] = iterations;
    j["converged"] = converged;
    j["support"] = support;
    return j;
}

}  // namespace hyperlag
