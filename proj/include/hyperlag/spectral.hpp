#ifndef HYPERLAG_SPECTRAL_HPP
#define HYPERLAG_SPECTRAL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "hyperlag/hypergraph.hpp"

namespace hyperlag {

struct SolverConfig {
    double p = 1.0;
    int restarts = 32;
    std::uint64_t seed = 0;
    long long max_iters = 100000;  // per restart
    double tol = 1e-12;            // relative objective change
    double residual_tol = 1e-8;
    double support_eps = 1e-10;
    int threads = 1;

    static SolverConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Nonnegative weights with unit p-norm (the feasible set of the
/// maximization problem).
struct WeightVector {
    std::vector<double> entries;
    double p = 1.0;

    double pnorm() const;
    void normalize();  // throws on zero vector
};

struct SpectralSolution {
    double rho = 0;
    WeightVector vector;
    double residual = 0;  // max eigen-equation defect over the support
    int restarts_used = 0;
    long long iterations = 0;
    bool converged = false;
    std::vector<int> support;  // 1-based vertices with weight > support_eps

    nlohmann::json to_json() const;
};

/// P_H(x) = r * sum over edges of the entry product.
double poly_form(const Hypergraph& h, std::span<const double> x);

/// Component i is r * sum over link sets at i of the entry product.
std::vector<double> poly_gradient(const Hypergraph& h, std::span<const double> x);

/// Multi-start projected gradient ascent over the nonnegative unit
/// p-sphere with a Newton polish of the eigen-equations on the support.
/// Deterministic for a fixed cfg.seed.
SpectralSolution solve_rho(const Hypergraph& h, double p, const SolverConfig& cfg = {});

/// rho_1(H) / r.
double lagrangian(const Hypergraph& h, const SolverConfig& cfg = {});

/// Exact maximum clique size of a graph (r = 2), branch and bound.
int clique_number(const Hypergraph& h);

/// Independent lower-bound oracle: dense simplex grid with denominator
/// `resolution`, then local mass-transfer refinement rounds around the
/// best point. Never evaluates the eigen-equations.
double rho_brute(const Hypergraph& h, double p, int resolution = 15, int refine_rounds = 3);

struct PowerMeanPoint {
    double p = 1;
    double rho = 0;
    double transformed = 0;  // (rho / (rm))^p
};

std::vector<PowerMeanPoint> power_mean_curve(const Hypergraph& h,
                                             const std::vector<double>& p_list,
                                             const SolverConfig& cfg = {});

}  // namespace hyperlag

#endif
