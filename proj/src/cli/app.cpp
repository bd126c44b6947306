#include "filippov/cli/app.hpp"

#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "filippov/cli/commands.hpp"

namespace filippov::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Piecewise-linear Filippov systems on the sphere and the torus"};
    app.require_subcommand(1);

    Options opt;
    std::string spec;
    std::string x0;
    std::string out_path;
    std::string theorem = "A";

    const auto add_spec = [&](CLI::App* cmd) {
        cmd->add_option("--spec", spec, "System spec (JSON)")->required();
    };
    auto* build = app.add_subcommand("build", "Print the inelastic companion B and its residual");
    add_spec(build);
    build->add_option("--out", out_path, "Write a JSON report here");

    auto* classify = app.add_subcommand("classify", "Tangency set and region labels (JSON)");
    add_spec(classify);
    classify->add_option("--out", out_path, "Output file (default: stdout)");
    classify->add_option("--tol", opt.tol, "Tolerance");

    auto* simulate = app.add_subcommand("simulate", "Concatenated Filippov trajectory (CSV)");
    add_spec(simulate);
    simulate->add_option("--x0", x0, "Start point a,b,c")->required();
    simulate->add_option("--tmax", opt.tmax, "Final time");
    simulate->add_option("--seed", opt.seed, "Seed recorded in the CSV header");
    simulate->add_option("--tol", opt.tol, "Closure tolerance");
    simulate->add_option("--out", out_path, "CSV file (default: stdout, summary on stderr)");
    simulate->add_flag("--strict", opt.strict, "Exit 4 when an advisory is raised");

    auto* verify = app.add_subcommand("verify", "Run the Theorem A or B verification harness");
    add_spec(verify);
    verify->add_option("--theorem", theorem, "A (sphere) or B (torus)")->check(CLI::IsMember({"A", "B"}));
    verify->add_option("--trials", opt.trials, "Random starts");
    verify->add_option("--seed", opt.seed, "Seed");
    verify->add_option("--tol", opt.tol, "Return-distance tolerance");
    verify->add_option("--out", out_path, "Write the JSON report here");

    auto* emit = app.add_subcommand("emit-figure", "Curve, surface and trajectory data for a figure");
    add_spec(emit);
    emit->add_option("--figure", opt.figure, "1 (sphere) or 2 (torus)")->check(CLI::IsMember({1, 2}));
    emit->add_option("--seed", opt.seed, "Seed recorded in the CSV header");
    emit->add_option("--out", out_path, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    opt.spec = spec;
    if (!out_path.empty()) opt.out = out_path;
    opt.theorem = theorem.front();
    if (!x0.empty()) {
        try {
            opt.x0 = parse_point(x0);
        } catch (const SpecError& e) {
            err << "error: --x0: " << e.what() << "\n";
            return kUsage;
        }
    }
    if (!(opt.tol > 0.0)) {
        err << "error: --tol must be positive\n";
        return kUsage;
    }

    if (build->parsed()) return cmd_build(opt, out, err);
    if (classify->parsed()) return cmd_classify(opt, out, err);
    if (simulate->parsed()) return cmd_simulate(opt, out, err);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    return cmd_emit_figure(opt, out, err);
}

}  // namespace filippov::cli
