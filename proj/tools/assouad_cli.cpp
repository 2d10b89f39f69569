#include "assouad/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Mean Assouad dimension and spectrum of symbolic systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string theta_grid;
    std::string mode;
    std::size_t n_max = 0;
    int k_max = 0;
    double slack = -1.0;
    unsigned jobs = 1;

    for (const char* name : {"dims", "spectrum", "sweep", "verify", "oracle"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config JSON")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--theta-grid", theta_grid, "theta grid a:b:step");
        sub->add_option("--n-max", n_max, "largest block length N")->check(CLI::PositiveNumber);
        sub->add_option("--k-max", k_max, "largest scale ratio exponent")->check(CLI::PositiveNumber);
        sub->add_option("--mode", mode, "exact | interval | estimate")
            ->check(CLI::IsMember({"exact", "interval", "estimate"}));
        sub->add_option("--slack", slack, "slack for estimate-level checks")->check(CLI::NonNegativeNumber);
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : assouad::kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        auto cfg = assouad::parse_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!theta_grid.empty()) cfg.grid.thetas = assouad::parse_theta_grid(theta_grid);
        if (!mode.empty()) cfg.mode = assouad::parse_mode(mode);
        if (n_max > 0) cfg.grid.n_max = n_max;
        if (k_max > 0) cfg.grid.k_max = k_max;
        if (slack >= 0.0) cfg.slack = slack;
        cfg.jobs = jobs;
        return assouad::run(command, cfg, std::cout, std::cerr);
    } catch (const assouad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return assouad::exit_code_for(e);
    }
}
