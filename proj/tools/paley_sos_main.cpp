#include "CLI11.hpp"

#include "paley/block_circulant.hpp"
#include "paley/fk_optimizer.hpp"
#include "paley/plot_svg.hpp"
#include "paley/sdp.hpp"
#include "paley/sweep.hpp"
#include "paley/verify.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace paley;

namespace {

std::vector<int64_t> parse_primes(const std::string& list, int64_t p_max) {
    if (!list.empty()) {
        std::vector<int64_t> out;
        std::stringstream ss(list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            int64_t p = std::stoll(tok);
            if (!PrimeContext::is_prime(p) || p % 4 != 1)
                throw CLI::ValidationError("--primes entries must be primes = 1 (mod 4)");
            out.push_back(p);
        }
        return out;
    }
    return paley_primes(5, p_max);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degree-4 sum-of-squares experiments on Paley graphs"};
    app.require_subcommand(1);

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run an invariant suite over a prime range");
    std::string suite = "all";
    int64_t vp_min = 13, vp_max = 17;
    verify->add_option("--suite", suite,
                       "field|charsums|graph|graphmx|blockcirc|fk|sdp|all");
    verify->add_option("--p-min", vp_min, "smallest prime considered");
    verify->add_option("--p-max", vp_max, "largest prime considered");

    // sweep -----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "compute a quantity across primes, write CSV");
    std::string quantity, out_path, primes_list;
    int64_t sp_max = 61;
    int jobs = 0;
    double timeout_seconds = 600, tol = 1e-3;
    bool trace = false;
    sweep->add_option("--quantity", quantity,
                      "omega|sos2|sos4|fk4|t441norm|diamondnorm|restricted:<shape>:<i>:<j>|norm:<shape>")
        ->required();
    sweep->add_option("--p-max", sp_max, "largest prime");
    sweep->add_option("--primes", primes_list, "explicit comma list, overrides --p-max");
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_option("--jobs", jobs, "worker pool size (default: machine parallelism)");
    sweep->add_option("--timeout-seconds", timeout_seconds, "per-(quantity,p) cap");
    sweep->add_option("--tol", tol, "solver tolerance where applicable");
    sweep->add_flag("--trace", trace, "emit solver iteration traces next to the CSV");

    // fit -------------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "fit a p^b power law to a sweep CSV");
    std::string fit_csv;
    fit_cmd->add_option("csv", fit_csv, "input CSV")->required();

    // plot ------------------------------------------------------------------
    auto* plot = app.add_subcommand("plot", "render CSVs as a log-log SVG with fits");
    std::vector<std::string> plot_csvs;
    std::string svg_path;
    plot->add_option("csv", plot_csvs, "input CSVs")->required();
    plot->add_option("--out", svg_path, "output SVG path")->required();

    // bounds ----------------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "clique bounds table for one prime");
    int64_t bp = 13;
    bool with_sdp = false;
    bounds->add_option("--p", bp, "prime = 1 (mod 4)")->required();
    bounds->add_flag("--solve", with_sdp, "also solve SOS2/FK4 (and SOS4 when p <= 61)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) {
            VerifyReport rep = run_verify(suite, vp_min, vp_max);
            print_report(rep, std::cout);
            return rep.ok() ? 0 : 1;
        }
        if (*sweep) {
            SweepConfig cfg;
            cfg.quantity = quantity;
            cfg.primes = parse_primes(primes_list, sp_max);
            cfg.jobs = jobs;
            cfg.timeout_seconds = timeout_seconds;
            cfg.tol = tol;
            if (trace && (quantity == "sos2" || quantity == "sos4")) {
                // trace runs are sequential so the per-iteration CSVs are tidy
                std::vector<SweepRecord> recs;
                for (int64_t p : cfg.primes) {
                    SdpOptions o;
                    o.tol = std::min(tol, 1e-5);
                    o.max_iter = quantity == "sos2" ? 200000 : 40000;
                    o.trace_path = out_path + "." + std::to_string(p) + ".trace.csv";
                    PaleyGraph g = build_paley(p);
                    SdpProblem prob = quantity == "sos2" ? build_sos2(g) : build_sos4(g);
                    auto t0 = std::chrono::steady_clock::now();
                    SdpSolution s = solve(prob, o);
                    double dt = std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
                    recs.push_back({p, quantity, s.value, dt,
                                    s.status == SdpStatus::Optimal ? "ok" : "failed"});
                }
                write_csv(recs, out_path);
            } else {
                write_csv(run_sweep(cfg), out_path);
            }
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }
        if (*fit_cmd) {
            PowerFit f = fit_power_law(read_csv(fit_csv));
            std::cout << "a=" << f.a << " b=" << f.b << " r_squared=" << f.r_squared
                      << " n=" << f.n_points << "\n";
            return 0;
        }
        if (*plot) {
            emit_plot(plot_csvs, svg_path);
            std::cout << "wrote " << svg_path << "\n";
            return 0;
        }
        if (*bounds) {
            PaleyGraph g = build_paley(bp);
            ClassicalBounds cb = classical_bounds(bp);
            std::cout << "p = " << bp << "\n";
            if (bp <= 1000) std::cout << "omega          = " << clique_number(g) << "\n";
            std::cout << "sqrt(p)        = " << cb.hoffman << "\n";
            std::cout << "hansen-podolskii = " << cb.hansen_podolskii << "\n";
            if (with_sdp) {
                SdpSolution s2 = solve(build_sos2(g), 2e-6, 200000);
                std::cout << "sos2           = " << s2.value << "\n";
                FkResult fk = fk4_value(g, 1e-3);
                std::cout << "fk4            = " << fk.value << "  [" << fk.lower << ", "
                          << fk.upper << "]\n";
                if (bp <= 61) {
                    SdpSolution s4 = solve(build_sos4(g), 5e-6, 40000);
                    std::cout << "sos4           = " << s4.value << "\n";
                }
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
