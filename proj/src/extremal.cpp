#include "hyperlag/extremal.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "hyperlag/io.hpp"

namespace hyperlag {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// H (as emitted by enumerate: no isolated vertices) equals K_s^r?
bool is_complete_principal(const Hypergraph& h) {
    int s = h.vertex_count();
    int r = h.arity();
    if (s < r) return false;
    double full = generalized_binomial(static_cast<double>(s), r);
    return static_cast<double>(h.edge_count()) == full;
}

void progress_tick(const VerifyOptions& opts, long long count) {
    if (opts.progress && count % 500 == 0)
        std::cerr << "  ...instances: " << count << "\n";
}

}  // namespace

VerificationReport verify_bound(int r, double p, int m_max, int n_max,
                                const SolverConfig& cfg, const VerifyOptions& opts) {
    auto t0 = Clock::now();
    VerificationReport rep;
    {
        std::ostringstream name;
        name << "bound_r" << r << "_p" << p;
        rep.claim = name.str();
    }
    EnumOptions eopts{opts.budget};
    for (int m = 1; m <= m_max; ++m) {
        BoundContext ctx = BoundContext::make(r, m, p);
        double bound = nikiforov_bound(ctx);
        enumerate(r, m, n_max, [&](const Hypergraph& h) {
            ++rep.instances;
            progress_tick(opts, rep.instances);
            SpectralSolution sol = solve_rho(h, p, cfg);
            if (!sol.converged) {
                ++rep.nonconverged;
                rep.failures.push_back({h, sol.rho, bound, bound - sol.rho,
                                        "solver did not converge"});
                return;
            }
            double margin = bound - sol.rho;
            if (margin < -opts.tol_outer) {
                rep.failures.push_back({h, sol.rho, bound, margin, "bound violated"});
                return;
            }
            if (std::abs(margin) <= opts.tol_eq) {
                rep.equality_cases.push_back(h);
                if (!is_complete_principal(h)) {
                    rep.failures.push_back({h, sol.rho, bound, margin,
                                            "equality case is not a complete hypergraph"});
                    return;
                }
            }
            ++rep.passes;
        }, eopts);
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

VerificationReport verify_degree_lemma(int r, int m_max, int n_max,
                                       const SolverConfig& cfg, const VerifyOptions& opts) {
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "degree_lemma_r" + std::to_string(r);
    EnumOptions eopts{opts.budget};
    for (int m = 1; m <= m_max; ++m) {
        BoundContext ctx = BoundContext::make(r, m, 1.0);
        enumerate(r, m, n_max, [&](const Hypergraph& h) {
            ++rep.instances;
            progress_tick(opts, rep.instances);
            SpectralSolution sol = solve_rho(h, 1.0, cfg);
            if (!sol.converged) {
                ++rep.nonconverged;
                rep.failures.push_back({h, sol.rho, ctx.d0, 0,
                                        "solver did not converge"});
                return;
            }
            // heaviest Perron entry, least index on ties
            const auto& x = sol.vector.entries;
            int v = 1;
            for (int i = 2; i <= h.vertex_count(); ++i)
                if (x[i - 1] > x[v - 1]) v = i;

            Hypergraph cur = h;
            double frozen = poly_form(cur, x);
            const int max_steps = 4 * h.edge_count() + 4;
            int steps = 0;
            bool chain_ok = true;
            while (!shadow_contained(cur, v)) {
                if (++steps > max_steps) {
                    chain_ok = false;
                    rep.failures.push_back({h, 0, 0, 0, "shift loop did not terminate"});
                    break;
                }
                ShiftResult sr = shift_edge(cur, v);
                if (!sr.changed) break;  // cannot happen while containment fails
                double next = poly_form(sr.graph, x);
                if (next < frozen - 1e-10 * std::max(1.0, frozen)) {
                    chain_ok = false;
                    rep.failures.push_back({h, next, frozen, next - frozen,
                                            "frozen-vector objective decreased on shift"});
                    break;
                }
                frozen = next;
                cur = sr.graph;
            }
            if (!chain_ok) return;
            if (!shadow_contained(cur, v)) {
                rep.failures.push_back({h, 0, 0, 0, "terminal shadow containment failed"});
                return;
            }
            double deg = cur.degree(v);
            if (deg < ctx.d0 - 1e-7) {
                rep.failures.push_back({cur, deg, ctx.d0, deg - ctx.d0,
                                        "terminal degree below d0"});
                return;
            }
            ++rep.passes;
        }, eopts);
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

VerificationReport verify_shadow_bound(int r, int m_max, int n_max,
                                       const VerifyOptions& opts) {
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "shadow_bound_r" + std::to_string(r);
    EnumOptions eopts{opts.budget};
    for (int m = 1; m <= m_max; ++m) {
        double x = generalized_binomial_inverse(m, r);
        double bound = generalized_binomial(x, r - 1);
        enumerate(r, m, n_max, [&](const Hypergraph& h) {
            ++rep.instances;
            progress_tick(opts, rep.instances);
            SetFamily fam(r, h.edges());
            double size = shadow(fam).size();
            double margin = size - bound;
            if (margin < -1e-9) {
                rep.failures.push_back({h, size, bound, margin, "shadow bound violated"});
                return;
            }
            if (margin <= 1e-9) rep.equality_cases.push_back(h);
            ++rep.passes;
        }, eopts);
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

std::vector<ColexCompareRow> frankl_furedi_compare(int r, int m_max,
                                                   const SolverConfig& cfg) {
    std::vector<ColexCompareRow> rows;
    rows.reserve(m_max);
    for (int m = 1; m <= m_max; ++m) {
        ColexCompareRow row;
        row.m = m;
        double s = generalized_binomial_inverse(m, r);
        row.bound = m / std::pow(s, r);
        row.mu = lagrangian(colex_prefix(m, r), cfg);
        double srounded = std::round(s);
        row.principal = std::abs(s - srounded) < 1e-9 &&
                        std::abs(generalized_binomial(srounded, r) - m) < 1e-9;
        rows.push_back(row);
    }
    return rows;
}

VerificationReport stanley_check(int s_max, const SolverConfig& cfg) {
    auto t0 = Clock::now();
    VerificationReport rep;
    rep.claim = "stanley";
    if (s_max < 2) throw std::invalid_argument("stanley_check: s_max >= 2 required");
    for (int s = 2; s <= s_max; ++s) {
        ++rep.instances;
        Hypergraph ks = complete(s, 2);
        Hypergraph h(s + 2, 2, ks.edges());  // two isolated vertices added
        long long m = ks.edge_count();
        // exact arithmetic: 1 + 8m = (2s-1)^2, so the bound is exactly s-1
        long long disc = 1 + 8 * m;
        if (disc != (2LL * s - 1) * (2LL * s - 1)) {
            rep.failures.push_back({h, static_cast<double>(disc), 0, 0,
                                    "exact discriminant identity failed"});
            continue;
        }
        double bound = (std::sqrt(static_cast<double>(disc)) - 1) / 2;
        SpectralSolution sol = solve_rho(h, 2.0, cfg);
        if (!sol.converged) {
            ++rep.nonconverged;
            rep.failures.push_back({h, sol.rho, bound, 0, "solver did not converge"});
            continue;
        }
        if (std::abs(sol.rho - (s - 1)) > 1e-8 || std::abs(bound - (s - 1)) > 1e-12) {
            rep.failures.push_back({h, sol.rho, bound, sol.rho - (s - 1),
                                    "rho_2 of K_s differs from s-1"});
            continue;
        }
        rep.equality_cases.push_back(h);
        ++rep.passes;
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["claim"] = claim;
    j["instances"] = instances;
    j["passes"] = passes;
    j["nonconverged"] = nonconverged;
    j["wall_seconds"] = wall_seconds;
    j["failures"] = nlohmann::json::array();
    for (auto& f : failures) {
        j["failures"].push_back({{"graph", nlohmann::json::parse(hypergraph_to_json_string(f.graph))},
                                 {"value", f.value},
                                 {"bound", f.bound},
                                 {"margin", f.margin},
                                 {"note", f.note}});
    }
    j["equality_cases"] = nlohmann::json::array();
    for (auto& h : equality_cases)
        j["equality_cases"].push_back(nlohmann::json::parse(hypergraph_to_json_string(h)));
    return j;
}

std::string VerificationReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "claim,instances,passes,failures,nonconverged,wall_seconds\n";
    out << claim << "," << instances << "," << passes << "," << failures.size() << ","
        << nonconverged << "," << wall_seconds << "\n";
    if (!failures.empty()) {
        out << "note,value,bound,margin,n,r,m\n";
        for (auto& f : failures)
            out << f.note << "," << f.value << "," << f.bound << "," << f.margin << ","
                << f.graph.vertex_count() << "," << f.graph.arity() << ","
                << f.graph.edge_count() << "\n";
    }
    return out.str();
}

}  // namespace hyperlag
