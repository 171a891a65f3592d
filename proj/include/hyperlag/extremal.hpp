#ifndef HYPERLAG_EXTREMAL_HPP
#define HYPERLAG_EXTREMAL_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlag/binomials.hpp"
#include "hyperlag/hypergraph.hpp"
#include "hyperlag/spectral.hpp"

namespace hyperlag {

struct VerifyFailure {
    Hypergraph graph;
    double value = 0;
    double bound = 0;
    double margin = 0;
    std::string note;
};

struct VerificationReport {
    std::string claim;
    long long instances = 0;
    long long passes = 0;
    std::vector<VerifyFailure> failures;
    std::vector<Hypergraph> equality_cases;
    long long nonconverged = 0;  // solver non-convergence, reported distinctly
    double wall_seconds = 0;

    bool ok() const { return failures.empty() && nonconverged == 0; }
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

struct VerifyOptions {
    double tol_outer = 1e-7;  // bound violations
    double tol_eq = 1e-5;     // equality detection
    long long budget = 10'000'000;
    bool progress = false;    // print instance counts to stderr
};

/// Theorem check: every isomorphism class with m <= m_max edges on at
/// most n_max non-isolated vertices has rho_p <= rm/s^{r/p} + tol_outer;
/// equality cases (within tol_eq) must be complete hypergraphs at
/// integer s.
VerificationReport verify_bound(int r, double p, int m_max, int n_max,
                                const SolverConfig& cfg = {},
                                const VerifyOptions& opts = {});

/// Runs the shift loop at the heaviest Perron vertex for every class:
/// termination, terminal shadow containment, terminal degree >= d0, and
/// a non-decreasing frozen-vector objective along the shifts.
VerificationReport verify_degree_lemma(int r, int m_max, int n_max,
                                       const SolverConfig& cfg = {},
                                       const VerifyOptions& opts = {});

/// |shadow(F)| >= C(p_r^{-1}(m), r-1) for every enumerated family.
VerificationReport verify_shadow_bound(int r, int m_max, int n_max,
                                       const VerifyOptions& opts = {});

struct ColexCompareRow {
    int m = 0;
    double mu = 0;
    double bound = 0;  // m / s^r
    bool principal = false;
};

/// Lagrangian of the colex prefix against the m/s^r bound, per m.
std::vector<ColexCompareRow> frankl_furedi_compare(int r, int m_max,
                                                   const SolverConfig& cfg = {});

/// rho_2 of K_s plus two isolated vertices vs (sqrt(1+8m)-1)/2 = s-1.
VerificationReport stanley_check(int s_max, const SolverConfig& cfg = {});

}  // namespace hyperlag

#endif
