#include <iostream>

#include <CLI11.hpp>

#include <solitonic/cli_io.hpp>

namespace sl = solitonic;

int main(int argc, char** argv)
{
    CLI::App app{"Determinant solutions of multicomponent NLS and Davey-Stewartson systems"};
    app.require_subcommand(1);

    std::string config, outdir, preset;
    bool verify = false;
    auto* solve = app.add_subcommand("solve", "build a scenario from a JSON config and write its fields");
    solve->add_option("--config", config, "scenario JSON")->required();
    solve->add_option("--out", outdir, "output directory")->required();
    solve->add_flag("--verify", verify, "also check the PDE residual");

    auto* ver = app.add_subcommand("verify", "check the PDE residual of a scenario");
    ver->add_option("--config", config, "scenario JSON")->required();
    ver->add_option("--out", outdir, "directory for verify.json");

    auto* pre = app.add_subcommand("preset", "render one of the built-in scenarios");
    pre->add_option("name", preset, "preset name")->required();
    pre->add_option("--out", outdir, "output directory")->required();
    pre->add_flag("--verify", verify, "also check the PDE residual");

    int genus = 4, trials = 100;
    std::uint64_t seed = 1;
    auto* orc = app.add_subcommand("oracle", "compare the determinant with the theta-type sum on random data");
    orc->add_option("--genus", genus, "matrix size, at most 12");
    orc->add_option("--trials", trials, "number of random samples");
    orc->add_option("--seed", seed, "generator seed");

    auto* lf = app.add_subcommand("list-families", "print the supported family tags");
    auto* lp = app.add_subcommand("list-presets", "print the built-in scenario names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve || *pre) {
            sl::ScenarioConfig c;
            if (*pre) {
                c = sl::parse_config(sl::find_preset(preset));
                std::filesystem::create_directories(outdir);
                sl::write_json(c.source, std::filesystem::path(outdir) / "config.json");
            } else {
                c = sl::load_config(config);
            }
            auto r = sl::run_scenario(c, outdir, verify);
            for (const auto& f : r.files) std::cout << f << "\n";
            if (r.verified) std::cout << (r.verify_pass ? "verify: pass" : "verify: FAIL") << "\n";
            return r.verify_pass ? 0 : 3;
        }
        if (*ver) {
            auto c = sl::load_config(config);
            auto v = sl::verify_solution(sl::build_solution(c), c.grid, c.tolerance);
            if (!outdir.empty()) {
                std::filesystem::create_directories(outdir);
                sl::write_json(v.report, std::filesystem::path(outdir) / "verify.json");
            }
            std::cout << v.report.dump(2) << "\n";
            return v.pass ? 0 : 3;
        }
        if (*orc) {
            auto r = sl::oracle_cmd(genus, trials, seed);
            std::cout << sl::json{{"genus", r.genus}, {"trials", r.trials}, {"seed", r.seed}, {"max_rel_error", r.max_rel_error}}.dump(2)
                      << "\n";
            return 0;
        }
        if (*lf) {
            for (const auto& [tag, desc] : sl::family_table()) std::cout << tag << "\t" << desc << "\n";
            return 0;
        }
        if (*lp) {
            for (const auto& p : sl::figure_presets()) std::cout << p.first << "\n";
            return 0;
        }
    } catch (const sl::Error& e) {
        std::cerr << "error [" << sl::to_string(e.kind()) << "]: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
