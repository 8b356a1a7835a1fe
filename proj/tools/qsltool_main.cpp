#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsl/runner.hpp"

namespace {

struct Flags {
    std::string config_path, out_dir, norm_flavor, h_spread;
    int jobs = 0;
    long long seed = -1;
    std::vector<double> betas;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--jobs", f.jobs, "worker pool size");
    cmd->add_option("--seed", f.seed, "seed (replaces the seed list)");
    cmd->add_option("--beta", f.betas, "beta values in (0,1]")->delimiter(',');
    cmd->add_option("--norm-flavor", f.norm_flavor, "op|tr|hs")
        ->check(CLI::IsMember({"op", "tr", "hs"}));
    cmd->add_option("--h-spread", f.h_spread, "full|half")
        ->check(CLI::IsMember({"full", "half"}));
}

// precedence: flag > config file > default
qsl::RunConfig resolve(const Flags& f) {
    qsl::RunConfig c;
    if (!f.config_path.empty()) c = qsl::load_config_file(f.config_path);
    if (!f.out_dir.empty()) c.out_dir = f.out_dir;
    if (f.jobs > 0) c.jobs = f.jobs;
    if (f.seed >= 0) {
        c.seed = static_cast<std::uint64_t>(f.seed);
        c.seeds = {c.seed};
    }
    if (!f.betas.empty()) c.betas = f.betas;
    if (!f.norm_flavor.empty()) c.norm_flavor = f.norm_flavor;
    if (!f.h_spread.empty()) c.h_spread = f.h_spread;
    c.validate();
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-speed-limit bounds for two open-system models"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* jc_sweep = app.add_subcommand("jc-sweep", "gamma0 sweep of tau_hat and its bounds");
    CLI::App* jc_traj = app.add_subcommand("jc-trajectory", "single damped-JC trajectory dump");
    CLI::App* dot_run = app.add_subcommand("dot-run", "two-band dot model ensemble run");
    CLI::App* ineq = app.add_subcommand("ineq-check", "randomized norm-inequality campaign");
    for (CLI::App* cmd : {jc_sweep, jc_traj, dot_run, ineq}) add_common_flags(cmd, flags);

    try {
        app.parse(argc, argv);
        const qsl::RunConfig config = resolve(flags);
        if (jc_sweep->parsed()) qsl::run_jc_sweep(config);
        if (jc_traj->parsed()) qsl::run_jc_trajectory(config);
        if (dot_run->parsed()) qsl::run_dot(config);
        if (ineq->parsed()) qsl::run_ineq_check(config);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qsl::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical contract violation: %s\n", e.what());
        return 3;
    }
    return 0;
}
