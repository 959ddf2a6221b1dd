// pairsim: exact photon-pair coincidence predictions from the command line.
//
//   pairsim run scenario.txt
//   pairsim scan --experiment fig1 --angle theta1 0 --scan theta2 0 180 5
//   pairsim chsh --state psi_u
//   pairsim selfcheck
//   pairsim verify table.csv
//
// Exit codes: 0 success, 1 bad input, 2 a value missed its closed form.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pairsim/report.hpp"
#include "pairsim/scenario.hpp"

using namespace pairsim;

namespace {

struct OutputOptions {
    std::string format;
    std::string out_path;
    double tolerance = kDefaultTolerance;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "Write the table to this file instead of stdout");
    cmd->add_option("--tolerance", opts.tolerance, "Allowed |value - closed_form|")->capture_default_str();
}

int emit(const std::vector<ScenarioResult>& rows, OutputFormat format, const OutputOptions& opts) {
    if (opts.format == "csv") format = OutputFormat::csv;
    if (opts.format == "json") format = OutputFormat::json;
    const std::string table = render(rows, format);
    if (opts.out_path.empty()) {
        std::cout << table;
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "pairsim: cannot open " << opts.out_path << " for writing\n";
            return exit_input_error;
        }
        out << table;
    }
    const int code = check_rows(rows, opts.tolerance);
    if (code != exit_ok) {
        for (const auto& r : rows)
            if (!row_passes(r, opts.tolerance))
                std::cerr << "pairsim: " << param_label(r) << " misses its closed form by " << *r.abs_error() << '\n';
    }
    return code;
}

int run_text(const std::string& text, const OutputOptions& opts) {
    try {
        const ScenarioSpec spec = parse_scenario(text);
        return emit(run_scenario(spec), spec.format, opts);
    } catch (const ParseError& e) {
        std::cerr << "pairsim: parse error at " << e.what() << '\n';
    } catch (const ValidationError& e) {
        std::cerr << "pairsim: invalid scenario: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "pairsim: " << e.what() << '\n';
    }
    return exit_input_error;
}

int verify_table(const std::string& path, double tolerance) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    try {
        int code = exit_ok;
        for (const auto& r : parse_csv(text.str())) {
            if (row_passes(r, tolerance)) continue;
            std::cerr << "pairsim: " << r.label << " misses its closed form by " << *r.abs_error() << '\n';
            code = exit_check_failed;
        }
        return code;
    } catch (const ParseError& e) {
        std::cerr << "pairsim: " << path << ", " << e.what() << '\n';
        return exit_input_error;
    }
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact coincidence, CHSH and visibility predictions for photon-pair sources"};
    app.require_subcommand(1);

    OutputOptions run_opts, scan_opts, chsh_opts, check_opts;

    std::string scenario_path;
    auto* run = app.add_subcommand("run", "Evaluate a scenario file");
    run->add_option("file", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    add_output_flags(run, run_opts);

    std::string experiment, state;
    std::vector<std::vector<std::string>> angles, beams;
    std::vector<std::string> scan, geometry;
    auto* scan_cmd = app.add_subcommand("scan", "Evaluate a scenario given inline");
    scan_cmd->add_option("--experiment", experiment, "fig1, pdc, fig2, fig3, cascade, chsh or same-channel")
        ->required();
    scan_cmd->add_option("--state", state, "circular_pair, psi_e, psi_u or psi_u_prime");
    scan_cmd->add_option("--angle", angles, "Fixed angle: NAME DEGREES")->expected(2)->allow_extra_args(false);
    scan_cmd->add_option("--scan", scan, "Scanned angle: NAME FROM TO STEP (degrees)")->expected(4);
    scan_cmd->add_option("--beam", beams, "Beam: INDEX KIND TILT [WIDTH] [PHASE] [AMPLITUDE]")->expected(3, 6);
    scan_cmd->add_option("--geometry", geometry, "Cascade couplings G11 G12 G21 G22 (re+imi)")->expected(4);
    add_output_flags(scan_cmd, scan_opts);

    std::string chsh_state = "psi_e";
    std::optional<double> a, a_prime, b, b_prime;
    auto* chsh = app.add_subcommand("chsh", "CHSH S value (canonical angles unless given, degrees)");
    chsh->add_option("--state", chsh_state, "Source state")->capture_default_str();
    chsh->add_option("--a", a, "Analyzer 1 setting a");
    chsh->add_option("--a-prime", a_prime, "Analyzer 1 setting a'");
    chsh->add_option("--b", b, "Analyzer 2 setting b");
    chsh->add_option("--b-prime", b_prime, "Analyzer 2 setting b'");
    add_output_flags(chsh, chsh_opts);

    auto* selfcheck = app.add_subcommand("selfcheck", "Reproduce every analytic prediction and check it");
    add_output_flags(selfcheck, check_opts);

    std::string table_path;
    double verify_tolerance = kDefaultTolerance;
    auto* verify = app.add_subcommand("verify", "Re-check value against closed_form in a saved CSV table");
    verify->add_option("file", table_path, "CSV table")->required()->check(CLI::ExistingFile);
    verify->add_option("--tolerance", verify_tolerance, "Allowed |value - closed_form|")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    if (*run) {
        std::ifstream in(scenario_path, std::ios::binary);
        std::stringstream text;
        text << in.rdbuf();
        return run_text(text.str(), run_opts);
    }
    if (*scan_cmd) {
        std::ostringstream text;
        text << "experiment " << experiment << '\n';
        if (!state.empty()) text << "state " << state << '\n';
        for (const auto& angle : angles) text << "angle " << join(angle) << '\n';
        if (!scan.empty()) text << "scan " << join(scan) << '\n';
        for (const auto& beam : beams) text << "beam " << join(beam) << '\n';
        if (!geometry.empty()) text << "geometry " << join(geometry) << '\n';
        return run_text(text.str(), scan_opts);
    }
    if (*chsh) {
        std::ostringstream text;
        text << std::setprecision(17) << "experiment chsh\nstate " << chsh_state << '\n';
        if (a) text << "angle a " << *a << '\n';
        if (a_prime) text << "angle a_prime " << *a_prime << '\n';
        if (b) text << "angle b " << *b << '\n';
        if (b_prime) text << "angle b_prime " << *b_prime << '\n';
        return run_text(text.str(), chsh_opts);
    }
    if (*selfcheck) {
        try {
            return emit(selfcheck_table(), OutputFormat::csv, check_opts);
        } catch (const std::exception& e) {
            std::cerr << "pairsim: " << e.what() << '\n';
            return exit_input_error;
        }
    }
    if (*verify) {
        std::ifstream in(table_path, std::ios::binary);
        std::stringstream text;
        text << in.rdbuf();
        try {
            const auto rows = parse_csv(text.str());
            int code = exit_ok;
            for (const auto& r : rows) {
                if (row_passes(r, verify_tolerance)) continue;
                std::cerr << "pairsim: " << r.label << " misses its closed form by " << *r.abs_error() << '\n';
                code = exit_check_failed;
            }
            return code;
        } catch (const ParseError& e) {
            std::cerr << "pairsim: " << table_path << ", " << e.what() << '\n';
            return exit_input_error;
        }
    }
    if (*verify) return verify_table(table_path, verify_tolerance);
    return exit_input_error;
}
