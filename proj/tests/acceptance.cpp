// Acceptance gate: one pass/fail line per criterion, nonzero exit on
// any failure. Tolerances are pinned here on purpose; do not loosen
// them to make a run green.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hyperlag/extremal.hpp"

using namespace hyperlag;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int id, std::string label)
        : id_(id), label_(std::move(label)), t0_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok) {
            passed_ = false;
            if (detail_.empty()) detail_ = detail;
        }
    }

    ~Criterion() {
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0_).count();
        std::printf("[%s] %02d %s (%.1fs)%s%s\n", passed_ ? "PASS" : "FAIL",
                    id_, label_.c_str(), secs, detail_.empty() ? "" : " -- ",
                    detail_.c_str());
        std::fflush(stdout);
        if (!passed_) ++g_failures;
    }

private:
    int id_;
    std::string label_;
    std::chrono::steady_clock::time_point t0_;
    bool passed_ = true;
    std::string detail_;
};

SolverConfig acceptance_cfg() {
    SolverConfig cfg;
    cfg.restarts = 16;
    return cfg;
}

std::string report_note(const VerificationReport& rep) {
    if (rep.ok()) return {};
    std::string note = rep.claim + ": " + std::to_string(rep.failures.size()) +
                       " failures, " + std::to_string(rep.nonconverged) +
                       " nonconverged";
    if (!rep.failures.empty()) note += "; first: " + rep.failures.front().note;
    return note;
}

// Deterministic corpus for the power-mean criterion.
std::vector<Hypergraph> random_corpus(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Hypergraph> out;
    while (static_cast<int>(out.size()) < count) {
        int r = (rng() % 2 == 0) ? 2 : 3;
        std::uniform_int_distribution<int> npick(r + 1, r + 4);
        int n = npick(rng);
        auto slots = complete(n, r).edges();
        int cap = std::min<int>(8, static_cast<int>(slots.size()));
        std::uniform_int_distribution<int> mpick(1, cap);
        int m = mpick(rng);
        std::shuffle(slots.begin(), slots.end(), rng);
        slots.resize(m);
        std::sort(slots.begin(), slots.end(), colex_less);
        out.emplace_back(n, r, slots);
    }
    return out;
}

void run_criterion_1(const SolverConfig& cfg) {
    Criterion c(1, "rho_1 bound over all 3-uniform classes, m <= 6, n <= 7");
    auto rep = verify_bound(3, 1.0, 6, 7, cfg);
    c.require(rep.ok(), report_note(rep));
    c.require(rep.instances > 0, "empty corpus");
    // equality exactly at the complete hypergraphs in range: one edge
    // (m = 1) and the complete 3-graph on four vertices (m = 4)
    bool saw_m1 = false, saw_k43 = false;
    for (const auto& g : rep.equality_cases) {
        if (g.edge_count() == 1) saw_m1 = true;
        else if (isomorphic(g, complete(4, 3))) saw_k43 = true;
        else c.require(false, "unexpected equality case with m = " +
                              std::to_string(g.edge_count()));
    }
    c.require(saw_m1 && saw_k43, "expected equality cases missing");
}

void run_criterion_2(const SolverConfig& cfg) {
    Criterion c(2, "rho_p bound on the same corpus, p in {1, 1.5, 2, 3}");
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        auto rep = verify_bound(3, p, 6, 7, cfg);
        c.require(rep.ok(), report_note(rep));
    }
}

void run_criterion_3(const SolverConfig& cfg) {
    Criterion c(3, "Motzkin-Straus: rho_1 = 1 - 1/omega on all graphs, n <= 7");
    long long checked = 0;
    for (int m = 1; m <= 21; ++m) {
        for (const auto& h : enumerate_all(2, m, 7)) {
            auto sol = solve_rho(h, 1.0, cfg);
            if (!sol.converged) {
                c.require(false, "nonconverged at m = " + std::to_string(m));
                continue;
            }
            double want = 1.0 - 1.0 / clique_number(h);
            if (std::abs(sol.rho - want) > 1e-6)
                c.require(false, "mismatch " + std::to_string(sol.rho - want) +
                                 " at m = " + std::to_string(m));
            ++checked;
        }
    }
    c.require(checked > 1000, "corpus unexpectedly small");
}

void run_criterion_4(const SolverConfig& cfg) {
    Criterion c(4, "Stanley equality: rho_2(K_s) = s - 1, s = 2..8");
    auto rep = stanley_check(8, cfg);
    c.require(rep.ok(), report_note(rep));
    c.require(rep.equality_cases.size() == 7, "expected 7 equality cases");
}

void run_criterion_5() {
    Criterion c(5, "F < 0 strictly on the default grid");
    auto rep = check_lemma(GridSpec{}, LemmaId::f_negative);
    c.require(rep.failures.empty(), "grid failures: " +
                                    std::to_string(rep.failures.size()));
    c.require(rep.worst_margin > 0, "worst margin not positive: " +
                                    std::to_string(rep.worst_margin));
}

void run_criterion_6() {
    Criterion c(6, "derivative identities vs finite differences on the grid");
    auto rep = check_lemma(GridSpec{}, LemmaId::chebyshev_g);
    c.require(rep.failures.empty(), "grid failures: " +
                                    std::to_string(rep.failures.size()) +
                                    " (worst " + rep.worst_location.check + ")");
    c.require(rep.points_checked > 0, "no points checked");
}

void run_criterion_7() {
    Criterion c(7, "h(d0) identity and monotonicity of h along each row");
    const int samples = 257;
    for (int r = 2; r <= 8; ++r) {
        for (int s = r; s <= 30; ++s) {
            double m = generalized_binomial(static_cast<double>(s), r);
            auto ctx = BoundContext::make(r, m, 1.0);
            double want = r * m / std::pow(static_cast<double>(s), r);
            double got = eval_h(ctx, ctx.d0);
            if (std::abs(got - want) > 1e-10 * std::max(1.0, std::abs(want)))
                c.require(false, "h(d0) off at r=" + std::to_string(r) +
                                 " s=" + std::to_string(s));
            double delta = 1e-9 * std::max(1.0, m);
            double lo = ctx.d0, hi = m - delta;
            if (hi <= lo) continue;
            double prev = got;
            for (int j = 1; j < samples; ++j) {
                double x = lo + j * (hi - lo) / (samples - 1);
                double h = eval_h(ctx, x);
                if (!(h < prev))
                    c.require(false, "h not strictly decreasing at r=" +
                                     std::to_string(r) + " s=" + std::to_string(s));
                prev = h;
            }
        }
    }
}

void run_criterion_8(const SolverConfig& cfg) {
    Criterion c(8, "power-mean monotonicity on 50 seeded random hypergraphs");
    std::vector<double> ps;
    for (double p = 1.0; p <= 4.0 + 1e-12; p += 0.25) ps.push_back(p);
    auto corpus = random_corpus(50, 20240817);
    for (const auto& h : corpus) {
        auto pts = power_mean_curve(h, ps, cfg);
        double rm = static_cast<double>(h.arity()) * h.edge_count();
        double rho1 = pts.front().rho;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1].transformed > pts[i].transformed + 1e-8)
                c.require(false, "transformed sequence increased at p = " +
                                 std::to_string(pts[i + 1].p));
        }
        for (const auto& pt : pts) {
            double cap = std::pow(rho1, 1.0 / pt.p) * std::pow(rm, 1.0 - 1.0 / pt.p);
            if (pt.rho > cap + 1e-8)
                c.require(false, "interpolation bound violated at p = " +
                                 std::to_string(pt.p));
        }
    }
}

void run_criterion_9() {
    Criterion c(9, "shadow lower bound C(s, r-1) on 3-uniform families");
    auto rep = verify_shadow_bound(3, 6, 7);
    c.require(rep.ok(), report_note(rep));
    bool all_complete = true;
    for (const auto& g : rep.equality_cases) {
        double full = generalized_binomial(g.vertex_count(), 3);
        if (static_cast<double>(g.edge_count()) != full) all_complete = false;
    }
    c.require(all_complete, "tight case that is not a complete family");
    c.require(!rep.equality_cases.empty(), "no tight cases found");
}

void run_criterion_10(const SolverConfig& cfg) {
    Criterion c(10, "shift harness: termination, containment, degree >= d0");
    auto rep = verify_degree_lemma(3, 6, 7, cfg);
    c.require(rep.ok(), report_note(rep));
    c.require(rep.instances > 0, "empty corpus");
}

void run_criterion_11(const SolverConfig& cfg) {
    Criterion c(11, "solver certification against the grid oracle, n <= 6");
    // n <= 6 slices of the corpora used by the earlier criteria: every
    // graph on at most 6 vertices and every 3-uniform class with m <= 6
    long long checked = 0;
    for (int r : {2, 3}) {
        int m_max = (r == 2) ? 15 : 6;
        for (int m = 1; m <= m_max; ++m) {
            for (const auto& h : enumerate_all(r, m, 6)) {
                for (double p : {1.0, 2.0}) {
                    auto sol = solve_rho(h, p, cfg);
                    if (!sol.converged || sol.residual > 1e-8) {
                        c.require(false, "residual certificate failed, r = " +
                                         std::to_string(r) + " m = " +
                                         std::to_string(m));
                        continue;
                    }
                    double oracle = rho_brute(h, p);
                    if (std::abs(sol.rho - oracle) > 1e-3)
                        c.require(false, "oracle gap " +
                                         std::to_string(sol.rho - oracle));
                    ++checked;
                }
            }
        }
    }
    c.require(checked > 100, "corpus unexpectedly small");
}

}  // namespace

int main() {
    auto cfg = acceptance_cfg();
    run_criterion_1(cfg);
    run_criterion_2(cfg);
    run_criterion_3(cfg);
    run_criterion_4(cfg);
    run_criterion_5();
    run_criterion_6();
    run_criterion_7();
    run_criterion_8(cfg);
    run_criterion_9();
    run_criterion_10(cfg);
    run_criterion_11(cfg);
    if (g_failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
