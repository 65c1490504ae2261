#include <CLI11.hpp>

#include "metricdim/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"metricdim: packing dimensions and dilated-ball measures on "
                 "finite pseudo-metric spaces"};
    app.require_subcommand(1);

    metricdim::RunConfig config;
    std::string ratio_text = "1/3";

    auto add_space_opt = [&](CLI::App* cmd) {
        cmd->add_option("--space", config.space_path,
                        "space JSON file, or inline cantor:RATIO:LEVEL:[a,b]")
            ->required();
    };
    auto add_out_opt = [&](CLI::App* cmd) {
        cmd->add_option("--out", config.out_dir, "output directory");
    };
    auto add_exponent_opts = [&](CLI::App* cmd) {
        cmd->add_option("--s", config.s, "upper packing exponent s");
        cmd->add_option("--t", config.t, "lower packing exponent t");
        cmd->add_option("--s-prime", config.s_prime, "target upper exponent s'");
        cmd->add_option("--t-prime", config.t_prime, "target lower exponent t'");
        cmd->add_option("--c-s", config.c_s, "upper packing constant");
        cmd->add_option("--c-t", config.c_t, "lower packing constant");
        cmd->add_option("--scale-base", config.a_override,
                        "override the computed scale base A");
        cmd->add_flag("--normalized", config.normalized,
                      "rescale distances so the diameter is below 1");
    };

    auto* gen = app.add_subcommand("gen", "generate a space file");
    auto* gen_cantor = gen->add_subcommand("cantor", "truncated Cantor set");
    gen_cantor->add_option("--ratio", ratio_text, "contraction ratio, e.g. 1/3");
    gen_cantor->add_option("--level", config.level, "truncation depth");
    gen_cantor->add_option("--from", config.interval_a, "interval left endpoint");
    gen_cantor->add_option("--to", config.interval_b, "interval right endpoint");
    auto* gen_union = gen->add_subcommand("union", "union of generated pieces");
    gen_union->add_option("specs", config.union_specs,
                          "two or more cantor:RATIO:LEVEL:[a,b] specs")
        ->expected(2, -1);
    gen->require_subcommand(1);
    gen->fallthrough();
    gen_cantor->fallthrough();
    gen_union->fallthrough();
    add_out_opt(gen);

    auto* dims = app.add_subcommand("dims", "estimate packing dimensions");
    add_space_opt(dims);
    add_out_opt(dims);
    dims->add_option("--radii", config.radii_policy, "spectrum or dyadic");
    dims->add_option("--oracle-cap", config.oracle_cap,
                     "max candidate-set size for exact packing counts");
    dims->add_option("--resolution", config.resolution, "gamma grid step");
    dims->add_option("--gamma-cap", config.gamma_cap, "gamma grid upper end");

    auto* measure = app.add_subcommand("measure", "construct a measure");
    add_space_opt(measure);
    add_out_opt(measure);
    add_exponent_opts(measure);

    auto* verify = app.add_subcommand("verify", "verify a measure file");
    add_space_opt(verify);
    add_out_opt(verify);
    verify->add_option("--measure", config.measure_path, "measure JSON file")
        ->required();
    double gu = 0.0, gl = 0.0;
    auto* gu_opt = verify->add_option("--gamma-upper", gu,
                                      "exponent for the upper bound check");
    auto* gl_opt = verify->add_option("--gamma-lower", gl,
                                      "exponent for the lower bound check");

    auto* demo = app.add_subcommand("demo", "run the built-in scenarios");
    add_out_opt(demo);
    demo->add_option("--level", config.demo_level, "truncation level");
    demo->add_option("--budget", config.demo_budget_seconds,
                     "time budget in seconds");
    demo->add_option("--oracle-cap", config.oracle_cap,
                     "max candidate-set size for exact packing counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : metricdim::exit_code::invalid_config;
    }

    if (gen->parsed()) {
        config.command = "gen";
        config.gen_kind = gen_cantor->parsed() ? "cantor" : "union";
        if (gen_cantor->parsed()) {
            try {
                config.ratio = metricdim::parse_ratio(ratio_text);
            } catch (const std::exception& e) {
                std::cerr << "error: bad ratio: " << e.what() << "\n";
                return metricdim::exit_code::invalid_config;
            }
        }
    } else if (dims->parsed()) {
        config.command = "dims";
    } else if (measure->parsed()) {
        config.command = "measure";
    } else if (verify->parsed()) {
        config.command = "verify";
        if (gu_opt->count() > 0) config.gamma_upper = gu;
        if (gl_opt->count() > 0) config.gamma_lower = gl;
    } else if (demo->parsed()) {
        config.command = "demo";
    }

    return metricdim::run_command(config);
}
