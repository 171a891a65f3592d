// Command-line front end: every numeric operation lives in the library,
// this file only parses flags, loads inputs, and prints reports.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlag/binomials.hpp"
#include "hyperlag/extremal.hpp"
#include "hyperlag/hypergraph.hpp"
#include "hyperlag/io.hpp"
#include "hyperlag/spectral.hpp"

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitBadFile = 3;
constexpr int kExitBudget = 4;
constexpr int kExitNoConverge = 5;

struct SolverFlags {
    hyperlag::SolverConfig cfg;

    void attach(CLI::App* cmd, bool with_p) {
        if (with_p) cmd->add_option("--p", cfg.p, "norm exponent p >= 1");
        cmd->add_option("--restarts", cfg.restarts, "solver restarts");
        cmd->add_option("--seed", cfg.seed, "rng seed (deterministic output)");
        cmd->add_option("--max-iters", cfg.max_iters, "iteration cap per restart");
        cmd->add_option("--tol", cfg.tol, "relative objective tolerance");
        cmd->add_option("--residual-tol", cfg.residual_tol, "eigen-equation residual tolerance");
        cmd->add_option("--threads", cfg.threads, "worker cap (env HYPERLAG_THREADS)")
            ->envname("HYPERLAG_THREADS");
    }
};

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-spectral radii and Lagrangians of uniform hypergraphs"};
    app.require_subcommand(1);

    // rho
    auto* rho_cmd = app.add_subcommand("rho", "p-spectral radius of a hypergraph file");
    std::string rho_file;
    SolverFlags rho_flags;
    rho_cmd->add_option("file", rho_file, "hypergraph file (text or JSON)")->required();
    rho_flags.attach(rho_cmd, true);

    // lagrangian
    auto* lag_cmd = app.add_subcommand("lagrangian", "Lagrangian rho_1/r of a hypergraph file");
    std::string lag_file;
    SolverFlags lag_flags;
    lag_cmd->add_option("file", lag_file, "hypergraph file (text or JSON)")->required();
    lag_flags.attach(lag_cmd, false);

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "the rm/s^{r/p} bound with s, d0");
    int bound_r = 3;
    double bound_m = 0, bound_p = 1;
    bound_cmd->add_option("--r", bound_r, "edge arity")->required();
    bound_cmd->add_option("--m", bound_m, "edge count")->required();
    bound_cmd->add_option("--p", bound_p, "norm exponent");

    // shadow
    auto* shadow_cmd = app.add_subcommand("shadow", "shadow family of a hypergraph file");
    std::string shadow_file;
    shadow_cmd->add_option("file", shadow_file, "hypergraph file")->required();

    // colex
    auto* colex_cmd = app.add_subcommand("colex", "first m r-sets in colex order");
    int colex_r = 3, colex_m = 0;
    bool colex_json = false;
    colex_cmd->add_option("--r", colex_r, "edge arity")->required();
    colex_cmd->add_option("--m", colex_m, "edge count")->required();
    colex_cmd->add_flag("--json", colex_json, "emit JSON instead of text");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "desk-scale theorem/lemma verification");
    std::string claim;
    int v_r = 3, v_mmax = 4, v_nmax = 6, v_smax = 8, v_ffmax = 10;
    bool v_csv = false, v_progress = false;
    SolverFlags v_flags;
    verify_cmd->add_option("--claim", claim, "theorem2|degree|shadow|stanley|ff")
        ->required()
        ->check(CLI::IsMember({"theorem2", "degree", "shadow", "stanley", "ff"}));
    verify_cmd->add_option("--r", v_r, "edge arity");
    verify_cmd->add_option("--m-max", v_mmax, "max edge count");
    verify_cmd->add_option("--n-max", v_nmax, "max non-isolated vertices");
    verify_cmd->add_option("--s-max", v_smax, "max s for stanley");
    verify_cmd->add_option("--ff-max", v_ffmax, "max m for ff");
    verify_cmd->add_flag("--csv", v_csv, "emit CSV instead of JSON");
    verify_cmd->add_flag("--progress", v_progress, "print instance counts to stderr");
    v_flags.attach(verify_cmd, true);

    // lemmas
    auto* lemmas_cmd = app.add_subcommand("lemmas", "grid-based lemma checks");
    int which = 4;
    hyperlag::GridSpec grid;
    lemmas_cmd->add_option("--which", which, "lemma id 1..4")->required()
        ->check(CLI::Range(1, 4));
    lemmas_cmd->add_option("--r-min", grid.r_min, "grid: min arity");
    lemmas_cmd->add_option("--r-max", grid.r_max, "grid: max arity");
    lemmas_cmd->add_option("--s-min", grid.s_min, "grid: min s (0 = r)");
    lemmas_cmd->add_option("--s-max", grid.s_max, "grid: max s");
    lemmas_cmd->add_option("--samples", grid.samples, "grid: samples per interval");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    try {
        if (*rho_cmd) {
            auto h = hyperlag::read_hypergraph_file(rho_file);
            auto sol = hyperlag::solve_rho(h, rho_flags.cfg.p, rho_flags.cfg);
            emit(sol.to_json());
            return sol.converged ? 0 : kExitNoConverge;
        }
        if (*lag_cmd) {
            auto h = hyperlag::read_hypergraph_file(lag_file);
            auto sol = hyperlag::solve_rho(h, 1.0, lag_flags.cfg);
            nlohmann::json j;
            j["mu"] = sol.rho / h.arity();
            j["rho_1"] = sol.rho;
            j["residual"] = sol.residual;
            j["converged"] = sol.converged;
            emit(j);
            return sol.converged ? 0 : kExitNoConverge;
        }
        if (*bound_cmd) {
            auto ctx = hyperlag::BoundContext::make(bound_r, bound_m, bound_p);
            nlohmann::json j;
            j["r"] = ctx.r;
            j["m"] = ctx.m;
            j["p"] = ctx.p;
            j["s"] = ctx.s;
            j["d0"] = ctx.d0;
            j["bound"] = hyperlag::nikiforov_bound(ctx);
            emit(j);
            return 0;
        }
        if (*shadow_cmd) {
            auto h = hyperlag::read_hypergraph_file(shadow_file);
            hyperlag::SetFamily fam(h.arity(), h.edges());
            auto sh = hyperlag::shadow(fam);
            nlohmann::json j;
            j["k"] = sh.k;
            j["size"] = sh.size();
            j["members"] = sh.members;
            emit(j);
            return 0;
        }
        if (*colex_cmd) {
            auto h = hyperlag::colex_prefix(colex_m, colex_r);
            if (colex_json)
                std::cout << hyperlag::hypergraph_to_json_string(h) << "\n";
            else
                hyperlag::write_hypergraph_text(std::cout, h);
            return 0;
        }
        if (*verify_cmd) {
            hyperlag::VerifyOptions opts;
            opts.progress = v_progress;
            hyperlag::VerificationReport rep;
            if (claim == "theorem2") {
                rep = hyperlag::verify_bound(v_r, v_flags.cfg.p, v_mmax, v_nmax,
                                             v_flags.cfg, opts);
            } else if (claim == "degree") {
                rep = hyperlag::verify_degree_lemma(v_r, v_mmax, v_nmax, v_flags.cfg, opts);
            } else if (claim == "shadow") {
                rep = hyperlag::verify_shadow_bound(v_r, v_mmax, v_nmax, opts);
            } else if (claim == "stanley") {
                rep = hyperlag::stanley_check(v_smax, v_flags.cfg);
            } else {  // ff
                auto rows = hyperlag::frankl_furedi_compare(v_r, v_ffmax, v_flags.cfg);
                nlohmann::json j = nlohmann::json::array();
                bool ok = true;
                for (auto& row : rows) {
                    ok = ok && row.mu <= row.bound + 1e-7;
                    j.push_back({{"m", row.m}, {"mu", row.mu}, {"bound", row.bound},
                                 {"principal", row.principal}});
                }
                emit(j);
                return ok ? 0 : 1;
            }
            if (rep.nonconverged > 0) {
                if (v_csv) std::cout << rep.to_csv();
                else emit(rep.to_json());
                return kExitNoConverge;
            }
            if (v_csv) std::cout << rep.to_csv();
            else emit(rep.to_json());
            return rep.ok() ? 0 : 1;
        }
        if (*lemmas_cmd) {
            auto rep = hyperlag::check_lemma(grid, static_cast<hyperlag::LemmaId>(which));
            emit(rep.to_json());
            return rep.ok() ? 0 : 1;
        }
    } catch (const hyperlag::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const hyperlag::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadFile;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    return kExitBadArgs;
}
