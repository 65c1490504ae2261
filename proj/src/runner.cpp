#include "metricdim/runner.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "metricdim/errors.hpp"

namespace metricdim {

double parse_ratio(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return std::stod(text);
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0.0) throw InvalidRatio("zero denominator in ratio " + text);
    return num / den;
}

PseudoMetricSpace space_from_generator_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream ss(spec);
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4 || parts[0] != "cantor")
        throw InvalidRatio("unrecognized generator spec: " + spec);
    const double ratio = parse_ratio(parts[1]);
    const int level = std::stoi(parts[2]);
    std::string iv = parts[3];
    if (iv.size() < 5 || iv.front() != '[' || iv.back() != ']')
        throw InvalidRatio("generator interval must look like [a,b]: " + spec);
    iv = iv.substr(1, iv.size() - 2);
    const auto comma = iv.find(',');
    if (comma == std::string::npos)
        throw InvalidRatio("generator interval must look like [a,b]: " + spec);
    const double a = std::stod(iv.substr(0, comma));
    const double b = std::stod(iv.substr(comma + 1));
    return generate_cantor(ratio, level, a, b);
}

DimsResult run_dims(const PseudoMetricSpace& space, RadiiPolicy policy,
                    CountMode mode, double resolution, double gamma_cap,
                    int oracle_cap) {
    DimsResult result;
    result.c_d = space.c_d;
    result.scale_cap = space.diameter > 0.0 ? space.diameter : 1.0;
    result.profile = packing_profile(space, policy, mode, result.scale_cap, oracle_cap);
    result.upper_curve = scan_dimension(result.profile, FitSide::Upper, resolution, gamma_cap);
    result.lower_curve = scan_dimension(result.profile, FitSide::Lower, resolution, gamma_cap);
    result.upper_knee = knee_gamma(result.upper_curve, FitSide::Upper);
    result.lower_knee = knee_gamma(result.lower_curve, FitSide::Lower);
    return result;
}

MeasureRun run_measure_pipeline(const PseudoMetricSpace& space,
                                const RunConfig& config) {
    MeasureRun run;
    run.scale_choice =
        choose_scale_base(space.c_d, config.s, config.t, config.s_prime,
                          config.t_prime, config.c_s, config.c_t, config.a_override);
    run.hierarchy = build_hierarchy(space, run.scale_choice.a, config.normalized);
    run.constants = TransferConstants::make(run.scale_choice.a, space.c_d,
                                            config.s_prime, config.t_prime);
    run.build = build_measure(space, run.hierarchy, run.constants);
    run.child_bounds =
        check_child_bounds(run.hierarchy, config.s_prime, config.t_prime);
    const double diameter = space.diameter > 0.0 ? space.diameter : 1.0;
    run.scale_cap = config.normalized ? diameter / 0.99 : diameter;
    return run;
}

PseudoMetricSpace make_touching_union(int level) {
    return union_spaces(generate_cantor(1.0 / 3.0, 2 * level, 0.0, 1.0),
                        generate_cantor(1.0 / 9.0, level, 1.0, 2.0));
}

RunConfig touching_union_config() {
    RunConfig config;
    config.normalized = false;
    config.a_override = 9.0;
    config.s = std::log(2.0) / std::log(3.0);
    config.s_prime = std::log(5.0) / std::log(9.0);
    config.t = 0.35;
    config.t_prime = std::log(2.0) / std::log(9.0);
    config.c_s = 4.0;
    config.c_t = 1.0;
    return config;
}

std::vector<DemoScenario> demo_scenarios(int level) {
    std::vector<DemoScenario> scenarios;

    {
        DemoScenario sc;
        sc.name = "cantor";
        sc.space = generate_cantor(1.0 / 3.0, 2 * level, 0.0, 1.0);
        sc.config.normalized = true;
        sc.config.s = 0.7;
        sc.config.t = 0.0;
        sc.config.s_prime = 1.0;
        sc.config.t_prime = 0.0;
        sc.config.c_s = 4.0;
        sc.config.c_t = 1.0;
        scenarios.push_back(std::move(sc));
    }
    {
        DemoScenario sc;
        sc.name = "disjoint_union";
        sc.space = union_spaces(generate_cantor(1.0 / 3.0, 2 * level, 0.0, 1.0),
                                generate_cantor(1.0 / 9.0, level, 2.0, 3.0));
        sc.config = touching_union_config();
        scenarios.push_back(std::move(sc));
    }
    {
        DemoScenario sc;
        sc.name = "touching_union";
        sc.space = make_touching_union(level);
        sc.config = touching_union_config();
        scenarios.push_back(std::move(sc));
    }
    return scenarios;
}

namespace {

PseudoMetricSpace resolve_space(const RunConfig& config) {
    if (config.space_path.rfind("cantor:", 0) == 0)
        return space_from_generator_spec(config.space_path);
    return load_space(config.space_path);
}

RadiiPolicy policy_from_name(const std::string& name) {
    if (name == "spectrum") return RadiiPolicy::Spectrum;
    if (name == "dyadic") return RadiiPolicy::Dyadic;
    throw InvalidResolution("unknown radii policy: " + name);
}

nlohmann::json fit_to_json(const DimensionFit& fit,
                           const PseudoMetricSpace& space) {
    return {{"gamma", fit.gamma},
            {"c", fit.c},
            {"side", fit.side == FitSide::Upper ? "upper" : "lower"},
            {"witness",
             {{"center", space.ids[fit.witness.center]},
              {"R", fit.witness.r_small},
              {"kR", fit.witness.r_big},
              {"k", fit.witness.k},
              {"count", fit.witness.count},
              {"exact", fit.witness.exact}}}};
}

nlohmann::json measure_fit_to_json(const MeasureFit& fit,
                                   const PseudoMetricSpace& space) {
    return {{"gamma", fit.gamma},
            {"c", fit.c},
            {"side", fit.side == FitSide::Upper ? "upper" : "lower"},
            {"witness",
             {{"center", space.ids[fit.witness.center]},
              {"r_small", fit.witness.r_small},
              {"r_big", fit.witness.r_big},
              {"k", fit.witness.k},
              {"mass_small", fit.witness.mass_small},
              {"mass_big", fit.witness.mass_big},
              {"ratio", fit.witness.ratio}}}};
}

nlohmann::json step_report_to_json(const StepReport& r) {
    return {{"level", r.level},          {"a_ok", r.a_ok},
            {"b_ok", r.b_ok},            {"c_ok", r.c_ok},
            {"d_ok", r.d_ok},            {"no_relay_ok", r.no_relay_ok},
            {"max_move_distance", r.max_move_distance},
            {"drift", r.drift}};
}

nlohmann::json measure_metadata(const MeasureRun& run, const RunConfig& config) {
    return {{"a", run.scale_choice.a},
            {"a_overridden", run.scale_choice.overridden},
            {"a_warnings", run.scale_choice.warnings},
            {"s_prime", config.s_prime},
            {"t_prime", config.t_prime},
            {"c1", run.constants.c1},
            {"c2", run.constants.c2},
            {"c4", run.constants.c4},
            {"normalized", config.normalized},
            {"scale_cap", run.scale_cap},
            {"stable_level", run.build.stable_level},
            {"conservation_drift", run.build.conservation_drift}};
}

int with_error_mapping(const std::function<int()>& body) {
    try {
        return body();
    } catch (const HypothesisViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::precondition;
    } catch (const UnsupportedMeasure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::precondition;
    } catch (const InvalidRatio& e) {
        std::cerr << "error: InvalidRatio: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const InvalidExponents& e) {
        std::cerr << "error: InvalidExponents: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const InvalidResolution& e) {
        std::cerr << "error: InvalidResolution: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const ScaleTooSmall& e) {
        std::cerr << "error: ScaleTooSmall: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const SymmetryViolation& e) {
        std::cerr << "error: SymmetryViolation: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const DegeneratePair& e) {
        std::cerr << "error: DegeneratePair: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const InvalidDistance& e) {
        std::cerr << "error: InvalidDistance: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const MetricMismatch& e) {
        std::cerr << "error: MetricMismatch: " << e.what() << "\n";
        return exit_code::invalid_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::unexpected;
    }
}

}  // namespace

int cmd_gen(const RunConfig& config) {
    return with_error_mapping([&] {
        PseudoMetricSpace space;
        if (config.gen_kind == "cantor") {
            space = generate_cantor(config.ratio, config.level, config.interval_a,
                                    config.interval_b);
        } else if (config.gen_kind == "union") {
            if (config.union_specs.size() < 2)
                throw InvalidRatio("union needs at least two generator specs");
            space = space_from_generator_spec(config.union_specs[0]);
            for (size_t i = 1; i < config.union_specs.size(); ++i)
                space = union_spaces(space,
                                     space_from_generator_spec(config.union_specs[i]));
        } else {
            throw InvalidRatio("unknown generator kind: " + config.gen_kind);
        }
        OutputManifest out(config.out_dir);
        out.write_json("space.json", space_to_json(space));
        out.finalize();
        std::cout << "wrote " << config.out_dir << "/space.json (" << space.size()
                  << " points, c_d = " << format_g17(space.c_d) << ")\n";
        return exit_code::ok;
    });
}

int cmd_dims(const RunConfig& config) {
    return with_error_mapping([&] {
        const PseudoMetricSpace space = resolve_space(config);
        const DimsResult result =
            run_dims(space, policy_from_name(config.radii_policy), CountMode::Exact,
                     config.resolution, config.gamma_cap, config.oracle_cap);
        OutputManifest out(config.out_dir);
        out.write("packing_profile.tsv", packing_profile_tsv(space, result.profile));
        out.write("upper_curve.tsv", curve_tsv(result.upper_curve));
        out.write("lower_curve.tsv", curve_tsv(result.lower_curve));
        out.write_json("dims_report.json",
                       {{"c_d", result.c_d},
                        {"scale_cap", result.scale_cap},
                        {"radii_policy", config.radii_policy},
                        {"observations", result.profile.size()},
                        {"upper_knee", result.upper_knee},
                        {"lower_knee", result.lower_knee},
                        {"upper_fit",
                         fit_to_json(fit_upper_dimension(result.profile,
                                                         result.upper_knee),
                                     space)},
                        {"lower_fit",
                         fit_to_json(fit_lower_dimension(result.profile,
                                                         result.lower_knee),
                                     space)}});
        out.finalize();
        std::cout << "upper knee " << format_g17(result.upper_knee)
                  << ", lower knee " << format_g17(result.lower_knee) << "\n";
        return exit_code::ok;
    });
}

int cmd_measure(const RunConfig& config) {
    return with_error_mapping([&] {
        const PseudoMetricSpace space = resolve_space(config);
        const MeasureRun run = run_measure_pipeline(space, config);
        OutputManifest out(config.out_dir);
        out.write("hierarchy.txt", hierarchy_dump(run.hierarchy, space));
        out.write_json("measure.json", measure_to_json(run.build.measure, space,
                                                       measure_metadata(run, config)));
        out.write("transfer_log.tsv", transfer_log_tsv(space, run.build.log));
        nlohmann::json reports = nlohmann::json::array();
        for (const auto& r : run.build.reports) reports.push_back(step_report_to_json(r));
        out.write_json("step_reports.json", reports);
        nlohmann::json bounds{{"lower", run.child_bounds.lower},
                              {"upper", run.child_bounds.upper},
                              {"violations", nlohmann::json::array()}};
        for (const auto& v : run.child_bounds.violations)
            bounds["violations"].push_back(
                {{"level", v.level}, {"point", space.ids[v.point]}, {"count", v.count}});
        out.write_json("child_bounds.json", bounds);
        out.finalize();
        bool all_ok = true;
        for (const auto& r : run.build.reports) all_ok = all_ok && r.all_ok();
        std::cout << "measure stable at level " << run.build.stable_level
                  << ", step reports " << (all_ok ? "all pass" : "have failures")
                  << "\n";
        return exit_code::ok;
    });
}

int cmd_verify(const RunConfig& config) {
    return with_error_mapping([&] {
        const PseudoMetricSpace space = resolve_space(config);
        const nlohmann::json doc =
            nlohmann::json::parse(read_text_file(config.measure_path));
        const DiscreteMeasure measure = measure_from_json(doc, space);
        const nlohmann::json metadata = doc.value("metadata", nlohmann::json::object());
        const double cap = metadata.value(
            "scale_cap", space.diameter > 0.0 ? space.diameter : 1.0);
        const double gamma_u =
            config.gamma_upper.value_or(metadata.value("s_prime", 1.0));
        const double gamma_l =
            config.gamma_lower.value_or(metadata.value("t_prime", 0.0));

        RatioScanner scanner(space, measure, cap);
        const MeasureFit u_fit = fit_measure_upper(scanner, gamma_u);
        const MeasureFit l_fit = fit_measure_lower(scanner, gamma_l);
        const double doubling = doubling_constant(measure, space, cap);

        OutputManifest out(config.out_dir);
        out.write_json("verification_report.json",
                       {{"scale_cap", cap},
                        {"u_fit", measure_fit_to_json(u_fit, space)},
                        {"l_fit", measure_fit_to_json(l_fit, space)},
                        {"doubling_constant", doubling}});
        // Plot data only on small spaces; the materialized profile is quadratic.
        if (space.size() <= 512)
            out.write("ratio_plot.tsv",
                      ratio_plot_tsv(ratio_profile(measure, space, cap)));
        out.finalize();
        std::cout << "U(" << format_g17(gamma_u) << ") constant "
                  << format_g17(u_fit.c) << ", L(" << format_g17(gamma_l)
                  << ") constant " << format_g17(l_fit.c) << ", doubling "
                  << format_g17(doubling) << "\n";
        return exit_code::ok;
    });
}

int cmd_demo(const RunConfig& config) {
    return with_error_mapping([&] {
        const auto start = std::chrono::steady_clock::now();
        OutputManifest out(config.out_dir);
        nlohmann::json summary = nlohmann::json::array();

        for (const auto& scenario : demo_scenarios(config.demo_level)) {
            const PseudoMetricSpace& space = scenario.space;
            const DimsResult dims =
                run_dims(space, policy_from_name(config.radii_policy),
                         CountMode::Exact, config.resolution, config.gamma_cap,
                         config.oracle_cap);
            const MeasureRun run = run_measure_pipeline(space, scenario.config);

            RatioScanner scanner(space, run.build.measure, run.scale_cap);
            const MeasureFit u_fit =
                fit_measure_upper(scanner, scenario.config.s_prime);
            const MeasureFit l_fit =
                fit_measure_lower(scanner, scenario.config.t_prime);
            const double doubling =
                doubling_constant(run.build.measure, space, run.scale_cap);

            std::map<int, int> histogram;
            for (const auto& e : run.child_bounds.entries) ++histogram[e.count];
            nlohmann::json hist = nlohmann::json::object();
            for (const auto& [count, freq] : histogram)
                hist[std::to_string(count)] = freq;

            bool steps_ok = true;
            for (const auto& r : run.build.reports) steps_ok = steps_ok && r.all_ok();

            summary.push_back({{"scenario", scenario.name},
                               {"points", space.size()},
                               {"a", run.scale_choice.a},
                               {"upper_knee", dims.upper_knee},
                               {"lower_knee", dims.lower_knee},
                               {"child_count_histogram", hist},
                               {"u_constant", u_fit.c},
                               {"l_constant", l_fit.c},
                               {"doubling_constant", doubling},
                               {"step_reports_ok", steps_ok},
                               {"stable_level", run.build.stable_level}});

            out.write_json(scenario.name + "_space.json", space_to_json(space));
            out.write_json(scenario.name + "_measure.json",
                           measure_to_json(run.build.measure, space,
                                           measure_metadata(run, scenario.config)));
        }

        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        out.write_json("demo_summary.json",
                       {{"level", config.demo_level},
                        {"elapsed_seconds", elapsed},
                        {"budget_seconds", config.demo_budget_seconds},
                        {"scenarios", summary}});
        out.finalize();
        std::cout << summary.dump(2) << "\n";
        if (elapsed > config.demo_budget_seconds) {
            std::cerr << "demo exceeded its time budget: " << elapsed << " s\n";
            return exit_code::unexpected;
        }
        return exit_code::ok;
    });
}

int run_command(const RunConfig& config) {
    if (config.command == "gen") return cmd_gen(config);
    if (config.command == "dims") return cmd_dims(config);
    if (config.command == "measure") return cmd_measure(config);
    if (config.command == "verify") return cmd_verify(config);
    if (config.command == "demo") return cmd_demo(config);
    std::cerr << "error: unknown command " << config.command << "\n";
    return exit_code::invalid_config;
}

}  // namespace metricdim
