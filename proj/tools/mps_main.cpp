// mps: pseudo-spectral micropolar simulator and verification harness.
//
// Subcommands:
//   run      --config FILE [--out DIR] [--seed U64] [--threads N]
//   verify   [--suite NAME] [--seed U64] [--out DIR] [--threads N]
//   sweep    --config FILE [--out DIR] [--seed U64] [--threads N]
//   spectra  CHECKPOINT [--out DIR]
//
// Exit codes: 0 success, 1 configuration/input error, 2 numerical abort
// (NaN or CFL stop), 3 property-suite failure. Set MPS_LOG=1 for progress
// lines on stderr; CSV outputs carry no timestamps so identical inputs give
// byte-identical files.

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <set>

#include "mps/config.hpp"
#include "mps/csvio.hpp"
#include "mps/diagnostics.hpp"
#include "mps/dynamics.hpp"
#include "mps/initial_data.hpp"
#include "mps/lp.hpp"
#include "mps/norms.hpp"
#include "mps/parallel.hpp"
#include "mps/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool log_enabled() {
    const char* v = std::getenv("MPS_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void logline(const std::string& msg) {
    if (log_enabled()) std::cerr << "[mps] " << msg << "\n";
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 0xf]; }

std::string hex64(std::uint64_t v) {
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = hex_digit(unsigned(v));
    return s;
}

mps::State initial_state(const mps::RunConfig& cfg, const mps::Grid& grid) {
    if (cfg.init == "random") {
        double kmax = cfg.kmax > 0.0 ? cfg.kmax : grid.n / 3.0;
        return mps::random_state(grid, cfg.spec, cfg.seed, kmax,
                                 cfg.spectrum_slope, cfg.amplitude);
    }
    return mps::taylor_green_state(grid, cfg.spec, cfg.amplitude);
}

std::vector<std::string> norm_header(const std::vector<double>& sigmas) {
    std::vector<std::string> h{"t"};
    for (double s : sigmas) h.push_back("u_H" + mps::format_double(s));
    for (double s : sigmas) h.push_back("w_H" + mps::format_double(s));
    h.push_back("grad_u_inf");
    h.push_back("w_inf");
    return h;
}

void write_ledger_csv(const fs::path& path,
                      const std::vector<std::pair<double, mps::EnergyTerms>>& samples) {
    std::ofstream os(path, std::ios::binary);
    mps::write_csv_row(os, {"t", "kinetic", "micro", "dissipation_u",
                            "dissipation_w", "damping", "graddiv", "cross",
                            "residual"});
    auto emit = [&](double t, const mps::EnergyTerms& e, double residual) {
        mps::write_csv_row(
            os, {mps::format_double(t), mps::format_double(e.kinetic),
                 mps::format_double(e.micro), mps::format_double(e.dissipation_u),
                 mps::format_double(e.dissipation_w), mps::format_double(e.damping),
                 mps::format_double(e.graddiv), mps::format_double(e.cross),
                 mps::format_double(residual)});
    };
    if (samples.size() >= 3) {
        for (const auto& row : mps::energy_budget(samples))
            emit(row.t, row.terms, row.residual);
    } else {
        // Too short for centered differences; residual column stays nan.
        for (const auto& [t, e] : samples)
            emit(t, e, std::numeric_limits<double>::quiet_NaN());
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override) {
    mps::RunConfig cfg;
    try {
        cfg = mps::parse_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    if (seed_override) cfg.seed = *seed_override;

    fs::create_directories(out_dir);
    mps::Grid grid = mps::make_grid(cfg.spec.dim(), cfg.n);
    std::vector<double> sigmas = mps::default_sigma_list(cfg.spec, cfg.s_norm);
    logline("run: " + cfg.spec.describe() + " n=" + std::to_string(cfg.n) +
            " scheme=" + mps::scheme_label(cfg.stepper.scheme));

    std::ofstream norms(fs::path(out_dir) / "norms.csv", std::ios::binary);
    mps::write_csv_row(norms, norm_header(sigmas));

    std::vector<std::pair<double, mps::EnergyTerms>> ledger;
    mps::SimulateCallbacks cbs;
    cbs.probe = [&](const mps::State& s, std::size_t step) {
        mps::NormRecord rec = mps::monitor_norms(s, sigmas);
        std::vector<std::string> row{mps::format_double(s.t)};
        for (double v : rec.sigma_u) row.push_back(mps::format_double(v));
        for (double v : rec.sigma_w) row.push_back(mps::format_double(v));
        row.push_back(mps::format_double(rec.grad_u_inf));
        row.push_back(mps::format_double(rec.w_inf));
        mps::write_csv_row(norms, row);
        ledger.emplace_back(s.t, mps::ledger_terms(s, cfg.spec));
        logline("probe step=" + std::to_string(step) +
                " t=" + mps::format_double(s.t));
    };
    cbs.checkpoint = [&](const mps::State& s, std::size_t step) {
        char name[32];
        std::snprintf(name, sizeof name, "checkpoint_%08zu.ckpt", step);
        mps::write_checkpoint_file((fs::path(out_dir) / name).string(), s,
                                   cfg.spec_hash(), cfg.config_hash());
    };

    auto t0 = std::chrono::steady_clock::now();
    json summary;
    summary["command"] = "run";
    summary["model"] = mps::model_label(cfg.spec.model);
    summary["dim"] = cfg.spec.dim();
    summary["n"] = cfg.n;
    summary["scheme"] = mps::scheme_label(cfg.stepper.scheme);
    summary["dt"] = cfg.stepper.dt;
    summary["t_end"] = cfg.stepper.t_end;
    summary["seed"] = cfg.seed;
    summary["threads"] = mps::thread_count();
    summary["spec_hash"] = hex64(cfg.spec_hash());
    summary["config_hash"] = hex64(cfg.config_hash());
    summary["outputs"] = {{"ledger", "ledger.csv"},
                          {"norms", "norms.csv"},
                          {"final_checkpoint", "final.ckpt"}};

    int code = 0;
    mps::State final_state;
    try {
        final_state = mps::simulate(initial_state(cfg, grid), cfg.spec,
                                    cfg.cutoff, cfg.stepper, cbs);
        summary["status"] = "ok";
    } catch (const mps::SimulationAbort& e) {
        // Keep whatever the probes saw; partial CSVs are the diagnostic.
        summary["status"] = "abort";
        summary["abort_reason"] = e.what();
        std::cerr << "numerical abort: " << e.what() << "\n";
        code = 2;
    }
    norms.close();
    write_ledger_csv(fs::path(out_dir) / "ledger.csv", ledger);
    if (code == 0) {
        mps::write_checkpoint_file((fs::path(out_dir) / "final.ckpt").string(),
                                   final_state, cfg.spec_hash(),
                                   cfg.config_hash());
        summary["final"] = {
            {"t", final_state.t},
            {"kinetic", mps::ledger_terms(final_state, cfg.spec).kinetic},
            {"micro", mps::ledger_terms(final_state, cfg.spec).micro},
            {"divergence_linf", mps::divergence_linf(final_state.u)}};
    }
    summary["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::ofstream(fs::path(out_dir) / "summary.json") << summary.dump(2) << "\n";
    logline("run finished, status=" + summary["status"].get<std::string>());
    return code;
}

void write_lp_report(const fs::path& dir, std::uint64_t seed) {
    // Per-block norms of one fixed random field plus Bernstein ratios on
    // per-shell annular fields, plot-ready.
    mps::Grid g = mps::make_grid(2, 64);
    mps::DyadicPartition part = mps::build_partition(g);
    mps::SpectralScalarField f =
        mps::random_field(g, 1, seed, 20.0, -1.0, 1.0).comp[0];
    std::ofstream os(dir / "lp_blocks.csv", std::ios::binary);
    mps::write_csv_row(os, {"j", "block_l2", "bernstein_q", "bernstein_p"});
    for (int j = -1; j <= part.j_max; ++j) {
        double bl2 = mps::l2_norm(mps::dyadic_block(part, f, j));
        std::string rq = "nan", rp = "nan";
        if (j >= 0) {
            std::mt19937_64 rng(seed + 100 + std::uint64_t(j));
            std::normal_distribution<double> gauss;
            mps::SpectralScalarField ann(g);
            double lo = 0.5625 * std::ldexp(1.0, 2 * j);   // (3/4 2^j)^2
            double hi = 7.1111 * std::ldexp(1.0, 2 * j);   // (8/3 2^j)^2
            mps::for_each_mode(g, [&](std::size_t idx, int a, int b, int) {
                double k2 = double(a) * a + double(b) * b;
                if (k2 >= lo && k2 <= hi && std::sqrt(k2) <= g.n / 2.0 - 1.0)
                    ann.c[idx] = mps::cplx(gauss(rng), gauss(rng));
            });
            mps::hermitian_symmetrize(ann);
            if (mps::max_abs_coef(ann) > 0.0) {
                auto [q, p] = mps::bernstein_ratio(ann, j, 1.0, 2.0, 2.0);
                rq = mps::format_double(q);
                rp = mps::format_double(p);
            }
        }
        mps::write_csv_row(os, {std::to_string(j), mps::format_double(bl2), rq, rp});
    }
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out_dir) {
    std::vector<std::string> suites;
    if (suite.empty() || suite == "all")
        suites = mps::verify_suite_names();
    else
        suites.push_back(suite);

    std::vector<mps::PropertyResult> all;
    for (const std::string& s : suites) {
        logline("verify suite " + s);
        std::vector<mps::PropertyResult> res;
        try {
            res = mps::run_verify_suite(s, seed);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        all.insert(all.end(), res.begin(), res.end());
    }
    bool ok = true;
    for (const auto& r : all) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.pass || log_enabled()) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        ok = ok && r.pass;
    }
    std::cout << (ok ? "all properties passed" : "property failures present")
              << " (" << all.size() << " checked)\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream os(fs::path(out_dir) / "verify_report.csv",
                         std::ios::binary);
        mps::write_csv_row(os, {"name", "pass", "detail"});
        for (const auto& r : all)
            mps::write_csv_row(os, {r.name, r.pass ? "1" : "0", r.detail});
        for (const std::string& s : suites)
            if (s == "lp") write_lp_report(out_dir, seed + 7);
    }
    return ok ? 0 : 3;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override) {
    mps::RunConfig cfg;
    try {
        cfg = mps::parse_config_file(config_path);
        if (cfg.alpha_list.empty() || cfg.beta_list.empty())
            throw mps::ConfigError(
                "sweep needs non-empty 'alpha_list' and 'beta_list'");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    if (seed_override) cfg.seed = *seed_override;

    std::vector<std::pair<double, double>> cells;
    std::set<std::pair<double, double>> seen;
    for (double a : cfg.alpha_list)
        for (double b : cfg.beta_list) {
            if (!seen.insert({a, b}).second) {
                std::cerr << "warning: duplicate sweep cell (alpha="
                          << mps::format_double(a)
                          << ", beta=" << mps::format_double(b)
                          << ") skipped; identical cells rerun identically\n";
                continue;
            }
            cells.push_back({a, b});
        }

    fs::create_directories(out_dir);
    mps::Grid grid = mps::make_grid(cfg.spec.dim(), cfg.n);
    mps::State init = initial_state(cfg, grid);
    logline("sweep: " + std::to_string(cells.size()) + " cells");
    std::vector<mps::SweepCell> rows = mps::threshold_sweep(
        cells, cfg.spec, cfg.cutoff, cfg.stepper, init, cfg.s_norm);

    std::ofstream os(fs::path(out_dir) / "sweep.csv", std::ios::binary);
    mps::write_csv_row(os, {"alpha", "beta", "status", "growth_factor",
                            "int_grad_u_inf", "int_w_inf_sq"});
    for (const auto& c : rows)
        mps::write_csv_row(os, {mps::format_double(c.alpha),
                                mps::format_double(c.beta), c.status,
                                mps::format_double(c.growth_factor),
                                mps::format_double(c.int_grad_u_inf),
                                mps::format_double(c.int_w_inf_sq)});
    return 0;
}

int cmd_spectra(const std::string& ckpt_path, const std::string& out_dir) {
    mps::CheckpointData data;
    try {
        data = mps::read_checkpoint_file(ckpt_path);
    } catch (const std::exception& e) {
        std::cerr << "checkpoint error: " << e.what() << "\n";
        return 1;
    }
    const mps::Grid& g = data.u.grid;
    fs::create_directories(out_dir);

    // Nearest-integer shells partition the lattice exactly, so the e_total
    // column sums to ||u||_2^2 + ||w||_2^2 to roundoff.
    int max_shell =
        int(std::lround(std::sqrt(double(g.dim) * 0.25 * g.n * g.n))) + 1;
    std::vector<double> eu(max_shell + 1, 0.0), ew(max_shell + 1, 0.0);
    mps::for_each_mode(g, [&](std::size_t f, int k1, int k2, int k3) {
        double k2sum = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        int shell = int(std::lround(std::sqrt(k2sum)));
        for (const auto& c : data.u.comp) eu[shell] += std::norm(c.c[f]);
        for (const auto& c : data.w.comp) ew[shell] += std::norm(c.c[f]);
    });
    {
        std::ofstream os(fs::path(out_dir) / "radial.csv", std::ios::binary);
        mps::write_csv_row(os, {"shell", "e_u", "e_w", "e_total"});
        for (int s = 0; s <= max_shell; ++s)
            mps::write_csv_row(os, {std::to_string(s), mps::format_double(eu[s]),
                                    mps::format_double(ew[s]),
                                    mps::format_double(eu[s] + ew[s])});
    }
    {
        mps::DyadicPartition part = mps::build_partition(g);
        std::ofstream os(fs::path(out_dir) / "dyadic.csv", std::ios::binary);
        mps::write_csv_row(os, {"j", "l2_u", "l2_w"});
        for (int j = -1; j <= part.j_max; ++j)
            mps::write_csv_row(
                os, {std::to_string(j),
                     mps::format_double(mps::l2_norm(mps::dyadic_block(part, data.u, j))),
                     mps::format_double(mps::l2_norm(mps::dyadic_block(part, data.w, j)))});
    }
    double total_u = 0.0, total_w = 0.0;
    for (int s = 0; s <= max_shell; ++s) total_u += eu[s], total_w += ew[s];
    std::cout << "t=" << mps::format_double(data.t)
              << " sum_e_u=" << mps::format_double(total_u)
              << " sum_e_w=" << mps::format_double(total_w) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral micropolar simulator and verification harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", suite, ckpt_path;
    std::optional<std::uint64_t> seed_opt;
    std::uint64_t verify_seed = 1;
    int threads = 1;
    std::string verify_out;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "worker threads (1 = default, deterministic)");
    };

    CLI::App* run = app.add_subcommand("run", "integrate one configuration");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_option("--seed", seed_opt, "override the config RNG seed");
    add_common(run);

    CLI::App* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("suite,--suite", suite,
                       "core|lp|g|energy|commutator|linop|all");
    verify->add_option("--seed", verify_seed, "suite RNG seed (default 1)");
    verify->add_option("--out", verify_out, "optional report directory");
    add_common(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "run the (alpha, beta) grid");
    sweep->add_option("--config", config_path, "config with alpha_list/beta_list")->required();
    sweep->add_option("--out", out_dir, "output directory (default: out)");
    sweep->add_option("--seed", seed_opt, "override the config RNG seed");
    add_common(sweep);

    CLI::App* spectra = app.add_subcommand("spectra", "spectral breakdown of a checkpoint");
    spectra->add_option("checkpoint", ckpt_path, "checkpoint file")->required();
    spectra->add_option("--out", out_dir, "output directory (default: out)");
    add_common(spectra);

    CLI11_PARSE(app, argc, argv);
    if (threads < 1) {
        std::cerr << "error: --threads must be >= 1\n";
        return 1;
    }
    mps::set_thread_count(threads);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, seed_opt);
        if (verify->parsed()) return cmd_verify(suite, verify_seed, verify_out);
        if (sweep->parsed()) return cmd_sweep(config_path, out_dir, seed_opt);
        if (spectra->parsed()) return cmd_spectra(ckpt_path, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
