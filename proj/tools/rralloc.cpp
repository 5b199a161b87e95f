// rralloc — generate, run, verify, and benchmark round-robin allocations
// under instrumented noiseless and noisy query models.
//
// Exit codes: 0 success, 2 validation error, 3 I/O error, 4 internal invariant.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rr/analysis.hpp"
#include "rr/io.hpp"

namespace {

std::vector<rr::Item> parse_order(const std::string& text) {
    std::vector<rr::Item> order;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        order.push_back(std::stoi(tok));
    return order;
}

rr::PairReversalSpec parse_bits(const std::string& text) {
    rr::PairReversalSpec spec;
    for (char c : text) {
        rr::require(c == '0' || c == '1', rr::ErrorCode::BadParameter,
                    "--bits must be a string of 0s and 1s");
        spec.bits.push_back(c == '1');
    }
    return spec;
}

std::vector<rr::SweepPoint> parse_grid(const std::string& text) {
    // "n1,m1;n2,m2;..."
    std::vector<rr::SweepPoint> grid;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ';')) {
        if (cell.empty()) continue;
        const auto comma = cell.find(',');
        rr::require(comma != std::string::npos, rr::ErrorCode::BadParameter,
                    "grid cells must look like 'n,m'");
        grid.push_back({std::stoi(cell.substr(0, comma)), std::stoi(cell.substr(comma + 1))});
    }
    rr::require(!grid.empty(), rr::ErrorCode::BadParameter, "grid is empty");
    return grid;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        rr::write_text_file(out_path, text);
    }
}

struct McParams {
    std::string allocator;
    std::string family = "uniform";
    std::string instance_path;
    int n = 2, m = 16;
    double rho = 0.25, delta = 0.05;
    std::string adversary = "None";
    std::uint64_t seed = 0;
    long long trials = 1000;
    std::string out_path, per_trial_path;
};

int cmd_mc(const McParams& p) {
    rr::NoiseConfig cfg;
    cfg.rho = p.rho;
    cfg.delta = p.delta;
    cfg.adversary = rr::adversary_from_name(p.adversary);
    cfg.seed = p.seed;
    rr::validate_noise_config(cfg);

    rr::InstanceMaker maker;
    int n = p.n, m = p.m;
    if (!p.instance_path.empty()) {
        auto inst = std::make_shared<rr::Instance>(rr::load_instance(p.instance_path));
        n = inst->n;
        m = inst->m;
        maker = [inst](std::uint64_t) { return *inst; };
    } else if (p.family == "uniform") {
        maker = [n, m](std::uint64_t s) { return rr::gen_uniform(n, m, s); };
    } else if (p.family == "identical") {
        n = 2;
        maker = [m](std::uint64_t s) { return rr::gen_identical(m, s); };
    } else if (p.family == "pair-reversal") {
        rr::require(m % 2 == 0, rr::ErrorCode::OddItemCount,
                    "pair-reversal family needs an even m");
        n = 2;
        maker = [m](std::uint64_t s) {
            rr::PairReversalSpec spec;
            rr::Xoshiro256pp rng(rr::derive_seed(s, 1));
            for (int k = 0; k < m / 2; ++k)
                spec.bits.push_back(rr::draw_bernoulli(rng, rr::bernoulli_threshold(0.5)));
            return rr::gen_pair_reversal(spec);
        };
    } else {
        rr::fail(rr::ErrorCode::BadParameter,
                 "unknown family '" + p.family + "' (uniform|identical|pair-reversal)");
    }

    std::string per_trial;
    rr::TrialSink sink;
    if (!p.per_trial_path.empty()) {
        per_trial = rr::transcript_csv_header();
        sink = [&](long long, const rr::RunReport& report, bool success) {
            per_trial += rr::transcript_csv_row(report.algorithm, n, m, cfg.rho, cfg.delta,
                                                report.seed, report.transcript, success);
        };
    }

    const rr::SuccessEstimate est = rr::mc_success_rate(p.allocator, maker, cfg, p.trials, sink);

    rr::SweepRow row;
    row.allocator = p.allocator;
    row.n = n;
    row.m = m;
    row.rho = cfg.rho;
    row.delta = cfg.delta;
    row.trials = est.trials;
    row.success_rate = est.rate;
    // Mean counts for the row come from one representative derived-seed run.
    {
        const std::uint64_t noise_seed = rr::derive_seed(cfg.seed, 0);
        const std::uint64_t inst_seed = rr::derive_seed(cfg.seed, 1);
        rr::NoiseConfig probe = cfg;
        probe.seed = noise_seed;
        const rr::Instance inst = maker(inst_seed);
        const rr::RunReport report = rr::run_allocator(p.allocator, inst, &probe, false);
        row.mean_comparisons = static_cast<double>(report.transcript.comparison_count);
        row.mean_values = static_cast<double>(report.transcript.value_count);
        const double dn = n, dm = m;
        const double total = row.mean_comparisons + row.mean_values;
        row.norm_nmlog_m_over_n = total / (dn * dm * std::log2(std::max(2.0, dm / dn)));
        row.norm_nm_plus_mlogm = total / (dn * dm + dm * std::log2(dm));
        row.norm_nmlogm = total / (dn * dm * std::log2(dm));
        row.norm_m2 = total / (dm * (dm - 1.0) / 2.0);
    }

    emit(rr::sweep_csv_header() + rr::sweep_csv_row(row), p.out_path);
    if (!p.per_trial_path.empty()) rr::write_text_file(p.per_trial_path, per_trial);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"round-robin allocation workbench"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string gen_kind = "uniform", gen_bits, gen_order, gen_out;
    int gen_n = 2, gen_m = 4;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "uniform|identical|pair-reversal");
    gen->add_option("--n", gen_n, "agent count");
    gen->add_option("--m", gen_m, "item count");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--bits", gen_bits, "pair-reversal indicators, e.g. 100");
    gen->add_option("--order", gen_order, "explicit identical preference order, e.g. 2,1,3");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // run
    auto* run = app.add_subcommand("run", "run one allocator on an instance");
    std::string run_alloc, run_in, run_noise;
    std::optional<std::uint64_t> run_seed;
    bool run_no_trace = false, run_timing = false;
    run->add_option("--allocator", run_alloc, "allocator id")->required();
    run->add_option("--in", run_in, "instance JSON path")->required();
    run->add_option("--noise", run_noise, "noise config JSON path");
    run->add_option("--seed", run_seed, "override the noise config seed");
    run->add_flag("--no-trace", run_no_trace, "omit the pick trace");
    run->add_flag("--timing", run_timing, "include wall time (not byte-reproducible)");

    // verify
    auto* verify = app.add_subcommand("verify", "check an allocation against an instance");
    std::string verify_in, verify_alloc;
    verify->add_option("--in", verify_in, "instance JSON path")->required();
    verify->add_option("--alloc", verify_alloc, "allocation JSON path")->required();

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo success-rate estimate");
    McParams mcp;
    mc->add_option("--allocator", mcp.allocator, "allocator id")->required();
    mc->add_option("--family", mcp.family, "uniform|identical|pair-reversal");
    mc->add_option("--in", mcp.instance_path, "fixed instance JSON path (overrides --family)");
    mc->add_option("--n", mcp.n, "agent count");
    mc->add_option("--m", mcp.m, "item count");
    mc->add_option("--rho", mcp.rho, "noise level");
    mc->add_option("--delta", mcp.delta, "failure budget");
    mc->add_option("--adversary", mcp.adversary, "None|PlusOneSwap|PairSwap|UniformRandomValue");
    mc->add_option("--seed", mcp.seed, "master seed");
    mc->add_option("--trials", mcp.trials, "trial count (>= 100)");
    mc->add_option("--out", mcp.out_path, "CSV output path (default stdout)");
    mc->add_option("--per-trial", mcp.per_trial_path, "per-trial transcript CSV path");

    // bench
    auto* bench = app.add_subcommand("bench", "query-count scaling sweep");
    std::string bench_alloc, bench_grid, bench_out, bench_adversary = "None";
    int bench_reps = 3;
    std::uint64_t bench_seed = 0;
    std::optional<double> bench_rho, bench_delta;
    bench->add_option("--allocator", bench_alloc, "allocator id")->required();
    bench->add_option("--grid", bench_grid, "grid like '2,1024;2,2048'")->required();
    bench->add_option("--reps", bench_reps, "repetitions per grid point");
    bench->add_option("--seed", bench_seed, "master seed");
    bench->add_option("--rho", bench_rho, "noise level (noisy allocators)");
    bench->add_option("--delta", bench_delta, "failure budget (noisy allocators)");
    bench->add_option("--adversary", bench_adversary, "value adversary (noisy allocators)");
    bench->add_option("--out", bench_out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);

        if (gen->parsed()) {
            rr::Instance inst;
            if (gen_kind == "uniform") {
                inst = rr::gen_uniform(gen_n, gen_m, gen_seed);
            } else if (gen_kind == "identical") {
                inst = gen_order.empty() ? rr::gen_identical(gen_m, gen_seed)
                                         : rr::gen_identical_from(parse_order(gen_order));
            } else if (gen_kind == "pair-reversal") {
                inst = rr::gen_pair_reversal(parse_bits(gen_bits));
            } else {
                rr::fail(rr::ErrorCode::BadParameter,
                         "unknown kind '" + gen_kind + "' (uniform|identical|pair-reversal)");
            }
            emit(rr::instance_to_json(inst).dump() + "\n", gen_out);
            return 0;
        }

        if (run->parsed()) {
            const rr::Instance inst = rr::load_instance(run_in);
            rr::NoiseConfig cfg;
            const rr::NoiseConfig* cfg_ptr = nullptr;
            if (!run_noise.empty()) {
                cfg = rr::load_noise_config(run_noise);
                if (run_seed) cfg.seed = *run_seed;
                cfg_ptr = &cfg;
            }
            rr::RunReport report = rr::run_allocator(run_alloc, inst, cfg_ptr, !run_no_trace);
            rr::evaluate_success(inst, report);
            std::cout << rr::report_to_json(report, run_timing).dump(2) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            const rr::Instance inst = rr::load_instance(verify_in);
            const rr::Allocation alloc = rr::load_allocation(verify_alloc);
            const bool ef1 = rr::check_ef1(inst, alloc);
            const bool matches =
                rr::same_bundles(alloc, rr::round_robin_reference(inst, false));
            const rr::UnpickedSets unpicked = rr::unpicked_sets(inst);
            nlohmann::ordered_json out;
            out["ef1"] = ef1 ? 1 : 0;
            out["matches_reference"] = matches ? 1 : 0;
            out["lemma3_sum"] = unpicked.total;
            out["lemma3_bound"] = unpicked.bound;
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (mc->parsed()) return cmd_mc(mcp);

        if (bench->parsed()) {
            const auto grid = parse_grid(bench_grid);
            rr::NoiseConfig cfg;
            const rr::NoiseConfig* cfg_ptr = nullptr;
            if (rr::is_noisy_allocator(bench_alloc) || bench_rho || bench_delta) {
                if (bench_rho) cfg.rho = *bench_rho;
                if (bench_delta) cfg.delta = *bench_delta;
                cfg.adversary = rr::adversary_from_name(bench_adversary);
                cfg.seed = bench_seed;
                rr::validate_noise_config(cfg);
                cfg_ptr = &cfg;
            }
            const auto rows =
                rr::scaling_sweep(bench_alloc, grid, bench_reps, bench_seed, cfg_ptr);
            std::string csv = rr::sweep_csv_header();
            for (const auto& row : rows) csv += rr::sweep_csv_row(row);
            emit(csv, bench_out);
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const rr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
