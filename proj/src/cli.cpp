#include "predistill/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>

#include "json.hpp"
#include "predistill/design_io.hpp"
#include "predistill/distill.hpp"
#include "predistill/errors.hpp"
#include "predistill/photonic.hpp"
#include "predistill/reference_tables.hpp"
#include "predistill/sweep.hpp"
#include "predistill/xy_composite.hpp"
#include "predistill/xz_composite.hpp"

namespace predistill {

namespace {

using std::numbers::pi;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Platform { XY, XZ, Photonic };
enum class TargetGate { T, H };
enum class OutputFormat { Csv, Json };
enum class TableId { T1, T2, XZ3, Coupler };

const std::map<std::string, Platform> platform_names{
    {"xy", Platform::XY}, {"xz", Platform::XZ}, {"photonic", Platform::Photonic}};
const std::map<std::string, TargetGate> target_names{{"t", TargetGate::T}, {"h", TargetGate::H}};
const std::map<std::string, OutputFormat> format_names{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
const std::map<std::string, TableId> table_names{
    {"T1", TableId::T1}, {"T2", TableId::T2}, {"XZ3", TableId::XZ3}, {"Coupler", TableId::Coupler}};

std::string platform_name(Platform p) {
    for (const auto& [name, value] : platform_names)
        if (value == p) return name;
    return "?";
}

struct RunConfig {
    Platform platform = Platform::XY;
    TargetGate target = TargetGate::T;
    int pulses = 3;
    std::optional<int> segments;
    std::optional<std::string> design;
    double phi1 = 0.5;
    std::optional<double> sweep_min;
    std::optional<double> sweep_max;
    std::optional<double> sweep_step;
    double threshold = 1e-15;
    std::string output;
    OutputFormat format = OutputFormat::Csv;
};

struct DistillConfig {
    double eps = 0.0;
    TargetGate code = TargetGate::T;
    double threshold = 1e-15;
};

struct TablesConfig {
    TableId which = TableId::T1;
    bool check = false;
};

GateTarget gate_target(const RunConfig& cfg) {
    if (cfg.platform == Platform::XY) return cfg.target == TargetGate::T ? t_gate_target() : h_gate_target();
    if (cfg.target != TargetGate::T) throw UsageError("X-Z platforms support only the T target");
    return t_gate_target(Convention::XZ);
}

DistillationCode code_for(TargetGate target) {
    return target == TargetGate::T ? five_qubit_code() : fifteen_to_one_code();
}

double positive_angle(double a) {
    const double r = std::fmod(a, 2.0 * pi);
    return r < 0.0 ? r + 2.0 * pi : r;
}

std::string angle_line(const std::string& name, double radians) {
    return fmt::format("{:<8} {:>18.12f} rad {:>16.12f} pi\n", name, radians, radians / pi);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty())
        out << text;
    else
        write_file_atomically(cfg.output, text);
}

const XZSequence& printed_xz(const std::string& id) {
    const auto& rows = reference_tables().xz_three_segment;
    const auto it = rows.find(id);
    if (it == rows.end()) throw UsageError(fmt::format("unknown X-Z design '{}' (expected a, b or c)", id));
    return it->second;
}

const CouplerDesign& printed_coupler(const std::string& id) {
    const auto& designs = reference_tables().coupler_designs;
    const auto it = designs.find(id);
    if (it == designs.end()) throw UsageError(fmt::format("unknown coupler design '{}' (expected two, a, b or c)", id));
    return it->second;
}

SymmetricSequence xy_scheme(const GateTarget& target, int pulses) {
    if (pulses < 1 || pulses % 2 == 0) throw UsageError("symmetric scheme requires odd pulse count");
    switch (pulses) {
        case 1: return single_pulse(target);
        case 3: return solve_three_pulse(target).front();
        case 5: return solve_five_pulse(target).front();
        case 7: {
            const auto& printed = reference_tables();
            const auto& v = (target.phi_star == t_gate_target().phi_star ? printed.t_gate : printed.h_gate).seven_pulse;
            return solve_seven_pulse(target, SymmetricSequence{v[0], {v[1], v[2], v[3], v[4]}, target});
        }
        default: throw UsageError(fmt::format("no symmetric solver for {} pulses (use 1, 3, 5 or 7)", pulses));
    }
}

std::string describe_xy(const SymmetricSequence& seq) {
    const Unitary2 gate = apply_with_error(seq, 0.0);
    std::string text = fmt::format("# {}-pulse symmetric sequence\n", seq.pulse_count());
    text += angle_line("theta", seq.theta);
    for (std::size_t i = 0; i < seq.phases.size(); ++i)
        text += angle_line(fmt::format("phi_{}", i + 1), positive_angle(seq.phases[i]));
    text += fmt::format("frobenius {:.15f}\n", frobenius_fidelity(gate, target_unitary(seq.target)));
    text += fmt::format("tmagic    {:.3e}\n", t_magic_error(gate, magic_frame_for(seq.target)));
    return text;
}

std::string describe_xz(const XZSequence& seq, const std::string& title) {
    std::string text = fmt::format("# {}\n", title);
    for (std::size_t i = 0; i < seq.segments.size(); ++i) {
        text += angle_line(fmt::format("theta_{}", i + 1), seq.segments[i].theta);
        text += angle_line(fmt::format("phi_{}", i + 1), seq.segments[i].phi);
    }
    text += fmt::format("residual  {:.3e}\n", robust_residual(seq));
    return text;
}

std::string describe_coupler(const CouplerDesign& d, const std::string& title) {
    std::string text = fmt::format("# {}\n# {:>10} {:>10} {:>10}\n", title, "w1_nm", "w2_nm", "z_um");
    for (const CouplerSegment& s : d.segments) text += fmt::format("  {:>10.4f} {:>10.4f} {:>10.4f}\n", s.w1_nm, s.w2_nm, s.z_um);
    text += fmt::format("  tmagic {:.3e}\n", t_magic_error(design_unitary(d, {0.0}), xz_magic_frame()));
    return text;
}

// Each distinct warning is reported once per command.
WarningSink warnings_to(std::ostream& err) {
    auto seen = std::make_shared<std::set<std::string>>();
    return [&err, seen](const std::string& m) {
        if (seen->insert(m).second) err << "warning: " << m << '\n';
    };
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const GateTarget target = gate_target(cfg);
    switch (cfg.platform) {
        case Platform::XY: emit(cfg, describe_xy(xy_scheme(target, cfg.pulses)), out); break;
        case Platform::XZ: {
            const int segments = cfg.segments.value_or(3);
            std::string text;
            if (segments == 2) {
                for (const TwoSegmentSolution& s : two_segment_synthesis(cfg.phi1))
                    text += describe_xz(s.sequence, fmt::format("two-segment, {} branch",
                                                                s.branch == CotBranch::Plus ? "plus" : "minus"));
            } else if (segments == 3) {
                const std::string id = cfg.design.value_or("a");
                const RobustSolveResult r = three_segment_robust_solve(printed_xz(id));
                text = describe_xz(r.sequence, fmt::format("three-segment robust, seeded from design {}", id));
            } else {
                throw UsageError("X-Z synthesis supports 2 or 3 segments");
            }
            emit(cfg, text, out);
            break;
        }
        case Platform::Photonic: {
            const int segments = cfg.segments.value_or(2);
            SynthesizedDesign s;
            std::string title;
            if (segments == 2) {
                s = synthesize_two_segment(target);
                title = "two-segment";
            } else if (segments == 4) {
                const std::string id = cfg.design.value_or("c");
                s = synthesize_four_segment_robust(target, printed_coupler(id), warnings_to(err));
                title = fmt::format("four-segment robust, seeded from design {}", id);
            } else {
                throw UsageError("photonic synthesis supports 2 or 4 segments");
            }
            out << describe_coupler(s.exact, title + ", exact") << describe_coupler(s.rounded, title + ", 1 nm grid");
            if (!cfg.output.empty()) write_file_atomically(cfg.output, format_design(s.rounded, title + ", 1 nm grid"));
            break;
        }
    }
    return exit_ok;
}

std::vector<double> sweep_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw UsageError("sweep step must be positive");
    if (lo > hi) throw UsageError("sweep min must not exceed max");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> grid;
    for (long i = 0; i <= n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

SweepResult run_sweep(const RunConfig& cfg, std::ostream& err) {
    const GateTarget target = gate_target(cfg);
    const Unitary2 goal = target_unitary(target);
    const DistillationCode code = code_for(cfg.target);
    const bool photonic = cfg.platform == Platform::Photonic;
    const auto grid = sweep_grid(cfg.sweep_min.value_or(photonic ? -5.0 : 0.0), cfg.sweep_max.value_or(photonic ? 5.0 : 0.1),
                                 cfg.sweep_step.value_or(photonic ? 0.1 : 0.005));
    SweepResult result;
    result.platform = platform_name(cfg.platform);
    switch (cfg.platform) {
        case Platform::XY: {
            const SymmetricSequence seq = xy_scheme(target, cfg.pulses);
            result.design_id = fmt::format("{}-pulse", cfg.pulses);
            for (double e : grid)
                result.rows.push_back(evaluate_gate(e, apply_with_error(seq, e), goal, magic_frame_for(target), code,
                                                    cfg.threshold, false));
            break;
        }
        case Platform::XZ: {
            const std::string id = cfg.design.value_or("a");
            const XZSequence seq = id == "two" ? two_segment_synthesis(cfg.phi1).front().sequence
                                               : three_segment_robust_solve(printed_xz(id)).sequence;
            result.design_id = id;
            for (double e : grid)
                result.rows.push_back(
                    evaluate_gate(e, xz_sequence_unitary(seq, e), goal, xz_magic_frame(), code, cfg.threshold, true));
            break;
        }
        case Platform::Photonic: {
            const std::string id = cfg.design.value_or("c");
            result = width_error_sweep(printed_coupler(id), grid, target, cfg.threshold, warnings_to(err));
            result.design_id = id;
            break;
        }
    }
    return result;
}

std::string sweep_csv(const SweepResult& r) {
    std::string text = "error,frobenius,trace,tmagic,magicfid,levels\n";
    for (const SweepRow& row : r.rows)
        text += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", row.error, row.frobenius, row.trace, row.tmagic,
                            row.magic_fidelity, row.levels ? std::to_string(*row.levels) : "divergent");
    return text;
}

std::string sweep_json(const SweepResult& r) {
    using nlohmann::json;
    json rows = json::array();
    for (const SweepRow& row : r.rows)
        rows.push_back({{"error", row.error},
                        {"frobenius", row.frobenius},
                        {"trace", row.trace},
                        {"tmagic", row.tmagic},
                        {"magicfid", row.magic_fidelity},
                        {"levels", row.levels ? json(*row.levels) : json(nullptr)}});
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    const json doc{{"metadata",
                    {{"platform", r.platform},
                     {"design", r.design_id},
                     {"tool_version", tool_version},
                     {"timestamp", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now))}}},
                   {"rows", rows}};
    return doc.dump(2) + "\n";
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SweepResult r = run_sweep(cfg, err);
    emit(cfg, cfg.format == OutputFormat::Csv ? sweep_csv(r) : sweep_json(r), out);
    return exit_ok;
}

int cmd_distill(const DistillConfig& cfg, std::ostream& out) {
    const DistillationCode code = code_for(cfg.code);
    const IterationPlan plan = iterations_to_threshold(cfg.eps, cfg.threshold, code);
    out << fmt::format("code               {}\n", cfg.code == TargetGate::T ? "5-qubit T" : "15-to-1 H");
    out << fmt::format("input error        {:.6e}\n", cfg.eps);
    out << fmt::format("target error       {:.6e}\n", cfg.threshold);
    if (plan.divergent()) {
        out << "DIVERGENT (ε ≥ ε_c)\n" << fmt::format("threshold ε_c      {:.16g}\n", code.threshold_error);
        return exit_ok;
    }
    out << fmt::format("levels             {}\n", *plan.levels);
    out << fmt::format("qubits per logical {}\n", plan.qubits_per_logical);
    out << "trajectory\n";
    for (std::size_t k = 0; k < plan.trajectory.size(); ++k) out << fmt::format("  round {:<3} {:.6e}\n", k, plan.trajectory[k]);
    return exit_ok;
}

struct Mismatches {
    std::vector<std::string> cells;

    void compare(const std::string& where, double computed, double printed, double tolerance) {
        if (!(std::abs(computed - printed) <= tolerance))
            cells.push_back(fmt::format("{}: computed {:.6f}, printed {:.6f}", where, computed, printed));
    }
    void require(const std::string& where, bool ok, const std::string& detail) {
        if (!ok) cells.push_back(fmt::format("{}: {}", where, detail));
    }
};

std::string pulse_table(TableKind kind, bool check, Mismatches& bad) {
    const auto rows = table_rows(kind);
    const auto& printed = kind == TableKind::ThreePulse ? reference_tables().three_pulse : reference_tables().five_pulse;
    const std::size_t phases = rows.front().phase_offsets_pi.size();
    std::string text = fmt::format("{:>9} {:>9}", "theta*/pi", "theta/pi");
    for (std::size_t j = 0; j < phases; ++j) text += fmt::format(" {:>9}", fmt::format("dphi{}/pi", j + 1));
    text += "\n";
    constexpr double tolerance = 1e-5;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        text += fmt::format("{:>9.1f} {:>9.5f}", row.theta_star_pi, row.theta_pi);
        for (double p : row.phase_offsets_pi) text += fmt::format(" {:>9.5f}", p);
        text += "\n";
        if (!check) continue;
        const std::string where = fmt::format("row {}", i + 1);
        bad.compare(where + " theta", row.theta_pi, printed[i].theta_pi, tolerance);
        for (std::size_t j = 0; j < phases; ++j)
            bad.compare(fmt::format("{} phi{}", where, j + 1), row.phase_offsets_pi[j], printed[i].phase_offsets_pi[j],
                        tolerance);
    }
    if (check) text += fmt::format("check: {} rows against printed values, tolerance {:g} pi\n", rows.size(), tolerance);
    return text;
}

std::string xz_table(bool check, Mismatches& bad) {
    std::string text = fmt::format("{:>6}", "design");
    for (const char* c : {"phi1", "phi2", "phi3", "theta1", "theta2", "theta3"}) text += fmt::format(" {:>9}", c);
    text += fmt::format(" {:>10} {:>10} {:>10}\n", "printed", "polished", "shift");
    for (const auto& [id, printed] : reference_tables().xz_three_segment) {
        const double raw = robust_residual(printed);
        const RobustSolveResult r = three_segment_robust_solve(printed);
        double shift = 0.0;
        text += fmt::format("{:>6}", id);
        for (std::size_t k = 0; k < 3; ++k) {
            text += fmt::format(" {:>9.5f}", r.sequence.segments[k].phi);
            shift = std::max(shift, std::abs(r.sequence.segments[k].phi - printed.segments[k].phi));
        }
        for (std::size_t k = 0; k < 3; ++k) {
            text += fmt::format(" {:>9.5f}", r.sequence.segments[k].theta);
            shift = std::max(shift, std::abs(r.sequence.segments[k].theta - printed.segments[k].theta));
        }
        text += fmt::format(" {:>10.2e} {:>10.2e} {:>10.2e}\n", raw, r.residual, shift);
        if (!check) continue;
        bad.require(id + " printed residual", raw <= 1e-3, fmt::format("{:.3e} > 1e-3", raw));
        bad.require(id + " polished residual", r.residual <= 1e-9, fmt::format("{:.3e} > 1e-9", r.residual));
        bad.require(id + " parameter shift", shift <= 1e-3, fmt::format("{:.3e} > 1e-3", shift));
    }
    if (check) text += "check: residuals and re-polish shifts against printed rows\n";
    return text;
}

std::string coupler_table(bool check, Mismatches& bad) {
    const GateTarget target = t_gate_target(Convention::XZ);
    const MagicFrame frame = xz_magic_frame();
    const DistillationCode code = five_qubit_code();
    std::string text = fmt::format("{:>6} {:>7} {:>7} {:>9} {:>10} {:>10} {:>6}\n", "design", "w1_nm", "w2_nm", "z_um",
                                   "tmagic@0", "tmagic@2nm", "levels");
    auto add_design = [&](const std::string& id, const CouplerDesign& d) {
        const double t0 = t_magic_error(design_unitary(d, {0.0}), frame);
        const double t2 = t_magic_error(design_unitary(d, {2.0}), frame);
        const auto levels = iterations_to_threshold(t0, 1e-15, code).levels;
        for (std::size_t k = 0; k < d.segments.size(); ++k) {
            const CouplerSegment& s = d.segments[k];
            text += fmt::format("{:>6} {:>7.0f} {:>7.0f} {:>9.3f}", k == 0 ? id : "", s.w1_nm, s.w2_nm, s.z_um);
            text += k == 0 ? fmt::format(" {:>10.3e} {:>10.3e} {:>6}\n", t0, t2, levels ? std::to_string(*levels) : "div")
                           : "\n";
        }
        if (check) bad.require(id + " tmagic", t0 <= 1e-4, fmt::format("{:.3e} > 1e-4", t0));
    };
    for (const char* id : {"two", "a", "b", "c"}) add_design(id, printed_coupler(id));
    const CouplerDesign regenerated = synthesize_two_segment(target).rounded;
    add_design("two*", regenerated);
    if (check) {
        const CouplerDesign& printed = printed_coupler("two");
        for (std::size_t k = 0; k < 2; ++k) {
            bad.compare(fmt::format("two* segment {} w1", k + 1), regenerated.segments[k].w1_nm, printed.segments[k].w1_nm, 1.0);
            bad.compare(fmt::format("two* segment {} w2", k + 1), regenerated.segments[k].w2_nm, printed.segments[k].w2_nm, 1.0);
        }
        text += "check: printed designs realize the target; regenerated widths within 1 nm\n";
    }
    text += "two* = two-segment design regenerated on the 1 nm grid\n";
    return text;
}

int cmd_tables(const TablesConfig& cfg, std::ostream& out, std::ostream& err) {
    Mismatches bad;
    switch (cfg.which) {
        case TableId::T1: out << pulse_table(TableKind::ThreePulse, cfg.check, bad); break;
        case TableId::T2: out << pulse_table(TableKind::FivePulse, cfg.check, bad); break;
        case TableId::XZ3: out << xz_table(cfg.check, bad); break;
        case TableId::Coupler: out << coupler_table(cfg.check, bad); break;
    }
    if (!cfg.check) return exit_ok;
    if (bad.cells.empty()) {
        out << "check: PASS\n";
        return exit_ok;
    }
    for (const std::string& c : bad.cells) err << "mismatch " << c << '\n';
    out << fmt::format("check: FAIL ({} cells)\n", bad.cells.size());
    return exit_failure;
}

void add_scheme_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--platform", cfg.platform, "xy, xz or photonic")
        ->transform(CLI::CheckedTransformer(platform_names, CLI::ignore_case))
        ->option_text("xy|xz|photonic");
    sub.add_option("--target", cfg.target, "t or h")
        ->transform(CLI::CheckedTransformer(target_names, CLI::ignore_case))
        ->option_text("t|h");
    sub.add_option("--pulses", cfg.pulses, "pulse count of the symmetric X-Y scheme");
    sub.add_option("--segments", cfg.segments, "segment count (X-Z: 2 or 3, photonic: 2 or 4)");
    sub.add_option("--design", cfg.design, "reference design id (X-Z: a, b, c; photonic: two, a, b, c)");
    sub.add_option("--phi1", cfg.phi1, "first axis angle of the X-Z two-segment scheme (rad)");
    sub.add_option("--threshold", cfg.threshold, "distillation target error")->check(CLI::PositiveNumber);
    sub.add_option("-o,--output", cfg.output, "write to this file instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gate design, error sweeps and distillation overhead for magic-state preparation", "predistill"};
    app.set_version_flag("--version", tool_version);
    app.set_config("--config", "", "TOML configuration file; command-line flags take precedence")
        ->envname("PREDISTILL_CONFIG")
        ->check(CLI::ExistingFile);
    app.require_subcommand(1);

    RunConfig synth_cfg;
    CLI::App* synth = app.add_subcommand("synthesize", "solve for a gate design and print its parameters");
    add_scheme_options(*synth, synth_cfg);

    RunConfig sweep_cfg;
    CLI::App* sweep = app.add_subcommand("sweep", "tabulate fidelities and distillation levels against the error");
    add_scheme_options(*sweep, sweep_cfg);
    sweep->add_option("--min", sweep_cfg.sweep_min, "first error value (relative Rabi error, or nm for photonic)");
    sweep->add_option("--max", sweep_cfg.sweep_max, "last error value");
    sweep->add_option("--step", sweep_cfg.sweep_step, "grid spacing");
    sweep->add_option("--format", sweep_cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
        ->option_text("csv|json");

    TablesConfig tables_cfg;
    CLI::App* tables = app.add_subcommand("tables", "regenerate the reference parameter tables");
    tables->add_option("which", tables_cfg.which, "T1, T2, XZ3 or Coupler")
        ->required()
        ->transform(CLI::CheckedTransformer(table_names, CLI::ignore_case))
        ->option_text("T1|T2|XZ3|Coupler");
    tables->add_flag("--check", tables_cfg.check, "compare against the shipped printed values");

    DistillConfig distill_cfg;
    CLI::App* distill = app.add_subcommand("distill", "plan distillation rounds for an input error");
    distill->add_option("eps", distill_cfg.eps, "input magic-state error")->required();
    distill->add_option("--code", distill_cfg.code, "t (5-qubit code) or h (15-to-1)")
        ->transform(CLI::CheckedTransformer(target_names, CLI::ignore_case))
        ->option_text("t|h");
    distill->add_option("--threshold", distill_cfg.threshold, "target output error")->check(CLI::PositiveNumber);

    std::vector<const char*> argv{"predistill"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (synth->parsed()) return cmd_synthesize(synth_cfg, out, err);
        if (sweep->parsed()) return cmd_sweep(sweep_cfg, out, err);
        if (tables->parsed()) return cmd_tables(tables_cfg, out, err);
        return cmd_distill(distill_cfg, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace predistill
