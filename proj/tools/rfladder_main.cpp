// rfladder: synthesize, simulate, and characterize acoustic-resonator ladder
// filters; fit MBVD models to measured one-port data; convert Touchstone
// files. Exit codes: 0 ok, 2 input error, 3 no result.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfladder/errors.hpp"
#include "rfladder/fitting.hpp"
#include "rfladder/ladder.hpp"
#include "rfladder/metrics.hpp"
#include "rfladder/report.hpp"
#include "rfladder/touchstone.hpp"

namespace {

using nlohmann::json;
using namespace rfladder;

struct DesignConfig {
    SynthesisInputs inputs;
    std::optional<C0Range> c0_series_range;
    std::optional<C0Range> c0_shunt_range;
    FrequencyGrid grid;
    double z0{50.0};
};

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) {
        throw InvalidSpec("config: missing required field \"" + key + "\"");
    }
    if (!j[key].is_number()) {
        throw InvalidSpec("config: field \"" + key + "\" must be a number");
    }
    return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j[key].is_number()) {
        throw InvalidSpec("config: field \"" + key + "\" must be a number");
    }
    return j[key].get<double>();
}

DesignConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidSpec("config: cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidSpec("config: invalid JSON in " + path + ": " + e.what());
    }

    static const std::set<std::string> known{
        "fs_series_hz", "k2",          "q",          "order",
        "z0_ohm",       "rs_ohm",      "ls_h",       "topology",
        "c0_series_f",  "c0_shunt_f",  "c0_series_range_f", "c0_shunt_range_f",
        "grid"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            throw InvalidSpec("config: unknown field \"" + key + "\"");
        }
    }

    DesignConfig cfg;
    cfg.inputs.fs_series_hz = require_number(j, "fs_series_hz");
    cfg.inputs.k2 = require_number(j, "k2");
    cfg.inputs.q = require_number(j, "q");
    cfg.inputs.order = static_cast<int>(number_or(j, "order", 3));
    cfg.inputs.rs_ohm = number_or(j, "rs_ohm", 0.0);
    cfg.inputs.ls_h = number_or(j, "ls_h", 0.0);
    cfg.z0 = number_or(j, "z0_ohm", 50.0);

    if (j.contains("topology")) {
        if (!j["topology"].is_string()) {
            throw InvalidSpec("config: field \"topology\" must be a string");
        }
        const std::string variant = j["topology"].get<std::string>();
        if (variant == "series-first") {
            cfg.inputs.variant = TopologyVariant::SeriesFirst;
        } else if (variant == "shunt-first") {
            cfg.inputs.variant = TopologyVariant::ShuntFirst;
        } else {
            throw InvalidSpec(
                "config: field \"topology\" must be \"series-first\" or \"shunt-first\"");
        }
    }

    const auto read_c0 = [&](const std::string& fixed_key, const std::string& range_key,
                             double& fixed_out) -> std::optional<C0Range> {
        if (j.contains(fixed_key) && j.contains(range_key)) {
            throw InvalidSpec("config: \"" + fixed_key + "\" and \"" + range_key +
                              "\" are mutually exclusive");
        }
        if (j.contains(range_key)) {
            const json& r = j[range_key];
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
                throw InvalidSpec("config: field \"" + range_key + "\" must be [min, max]");
            }
            C0Range range{r[0].get<double>(), r[1].get<double>()};
            if (!(range.min_f > 0.0) || !(range.max_f >= range.min_f)) {
                throw InvalidSpec("config: field \"" + range_key +
                                  "\" must satisfy 0 < min <= max");
            }
            fixed_out = range.min_f;
            return range;
        }
        fixed_out = require_number(j, fixed_key);
        if (!(fixed_out > 0.0)) {
            throw InvalidSpec("config: field \"" + fixed_key + "\" must be positive");
        }
        return std::nullopt;
    };
    cfg.c0_series_range = read_c0("c0_series_f", "c0_series_range_f", cfg.inputs.c0_series_f);
    cfg.c0_shunt_range = read_c0("c0_shunt_f", "c0_shunt_range_f", cfg.inputs.c0_shunt_f);

    if (j.contains("grid")) {
        const json& g = j["grid"];
        for (const auto& [key, value] : g.items()) {
            if (key != "f_start_hz" && key != "f_stop_hz" && key != "n_points") {
                throw InvalidSpec("config: unknown grid field \"" + key + "\"");
            }
        }
        cfg.grid.f_start_hz = require_number(g, "f_start_hz");
        cfg.grid.f_stop_hz = require_number(g, "f_stop_hz");
        cfg.grid.n_points = static_cast<Eigen::Index>(number_or(g, "n_points", 2001));
    } else {
        cfg.grid.f_start_hz = 0.6 * cfg.inputs.fs_series_hz;
        cfg.grid.f_stop_hz = 1.4 * cfg.inputs.fs_series_hz;
        cfg.grid.n_points = 2001;
    }
    return cfg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("IoError", "cannot write " + path);
    }
    out << content;
}

void emit(const std::optional<std::string>& output_path, const std::string& content) {
    if (output_path) {
        write_text_file(*output_path, content);
    } else {
        std::cout << content;
    }
}

json config_echo(const DesignConfig& cfg, double c0_series, double c0_shunt) {
    nlohmann::ordered_json run;
    run["tool"] = "rfladder";
    run["fs_series_hz"] = cfg.inputs.fs_series_hz;
    run["k2"] = cfg.inputs.k2;
    run["q"] = cfg.inputs.q;
    run["order"] = cfg.inputs.order;
    run["z0_ohm"] = cfg.z0;
    run["rs_ohm"] = cfg.inputs.rs_ohm;
    run["ls_h"] = cfg.inputs.ls_h;
    run["topology"] =
        cfg.inputs.variant == TopologyVariant::SeriesFirst ? "series-first" : "shunt-first";
    run["c0_series_f"] = c0_series;
    run["c0_shunt_f"] = c0_shunt;
    run["grid"] = {{"f_start_hz", cfg.grid.f_start_hz},
                   {"f_stop_hz", cfg.grid.f_stop_hz},
                   {"n_points", cfg.grid.n_points}};
    return run;
}

int run_synth(const std::string& config_path, const std::string& output_base,
              std::optional<double> z0_override, std::optional<int> grid_points_override,
              bool allow_optimization) {
    DesignConfig cfg = load_config(config_path);
    if (z0_override) {
        cfg.z0 = *z0_override;
    }
    if (grid_points_override) {
        cfg.grid.n_points = *grid_points_override;
    }
    if (!(cfg.z0 > 0.0)) {
        throw InvalidSpec("config: z0 must be positive");
    }

    const bool wants_optimization = cfg.c0_series_range || cfg.c0_shunt_range;
    if (wants_optimization && !allow_optimization) {
        throw InvalidSpec("simulate requires fixed c0 values; use synth for c0 ranges");
    }

    FilterMetrics metrics;
    if (wants_optimization) {
        const C0Range series =
            cfg.c0_series_range.value_or(C0Range{cfg.inputs.c0_series_f, cfg.inputs.c0_series_f});
        const C0Range shunt =
            cfg.c0_shunt_range.value_or(C0Range{cfg.inputs.c0_shunt_f, cfg.inputs.c0_shunt_f});
        const OptimizeC0Result opt =
            optimize_c0(cfg.inputs, series, shunt, cfg.grid, cfg.z0);
        cfg.inputs.c0_series_f = opt.c0_series_f;
        cfg.inputs.c0_shunt_f = opt.c0_shunt_f;
        metrics = opt.metrics;
    }

    const LadderTopology topology = synthesize(cfg.inputs);
    const FrequencySweep response = sweep(topology, cfg.grid, cfg.z0);
    if (!wants_optimization) {
        metrics = filter_metrics(response);
    }

    TouchstoneMeta meta;
    meta.freq_unit = FreqUnit::GHz;
    meta.parameter = ParamKind::S;
    meta.format = ValueFormat::RI;
    meta.r_ref = cfg.z0;
    const TouchstoneDocument doc = document_from_sweep(response, 2, meta);
    write_touchstone_file(doc, output_base + ".s2p");
    write_text_file(output_base + "_metrics.json", metrics_to_json(metrics));
    write_text_file(output_base + "_run.json",
                    config_echo(cfg, cfg.inputs.c0_series_f, cfg.inputs.c0_shunt_f).dump(2) + "\n");
    return 0;
}

int run_fit(const std::string& input_path, const std::optional<std::string>& output_path,
            const FitOptions& options) {
    const TouchstoneDocument doc = parse_touchstone_file(input_path);
    if (doc.n_ports != 1) {
        throw ArityError("fit requires a one-port (.s1p) input");
    }
    const FrequencySweep data = sweep_from_document(doc);
    const MbvdParams guess = initial_guess(data);
    const FitResult result = fit_mbvd(data, guess, options);
    emit(output_path, fit_report_to_json(fit_report(result)));
    return 0;
}

int run_metrics(const std::string& input_path, const std::optional<std::string>& output_path) {
    const TouchstoneDocument doc = parse_touchstone_file(input_path);
    if (doc.n_ports != 2) {
        throw ArityError("metrics requires a two-port (.s2p) input");
    }
    emit(output_path, metrics_to_json(filter_metrics(sweep_from_document(doc))));
    return 0;
}

int run_export(const std::string& input_path, const std::optional<std::string>& output_path,
               const std::string& format) {
    if (format != "csv") {
        throw Unsupported("export format \"" + format + "\" (only csv is supported)");
    }
    const TouchstoneDocument doc = parse_touchstone_file(input_path);
    FrequencySweep data = sweep_from_document(doc);
    if (!data.has_trace("S11")) {  // Y-parameter one-ports
        const Eigen::VectorXcd& y = data.trace("Y");
        Eigen::VectorXcd s11(y.size());
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            s11[i] = one_port_s11(y[i], doc.r_ref);
        }
        data.set_trace("S11", std::move(s11));
    }
    emit(output_path, sweep_to_csv(data));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acoustic-resonator ladder filter synthesis and analysis"};
    app.require_subcommand(1);

    std::string config_path;
    std::string input_path;
    std::string output_base = "filter";
    std::optional<std::string> output_path;
    std::optional<double> z0_override;
    std::optional<int> grid_points_override;
    std::string export_format = "csv";
    FitOptions fit_options;
    std::string weighting = "magnitude";

    CLI::App* synth = app.add_subcommand("synth", "Synthesize a ladder filter from a config");
    synth->add_option("--config", config_path, "Design config JSON")->required();
    synth->add_option("--output", output_base, "Output base path (writes <base>.s2p, ...)");
    synth->add_option("--z0", z0_override, "Reference impedance override, ohms");
    synth->add_option("--grid-points", grid_points_override, "Grid point count override");

    CLI::App* simulate = app.add_subcommand("simulate", "Sweep a fully specified design");
    simulate->add_option("--config", config_path, "Design config JSON (fixed c0)")->required();
    simulate->add_option("--output", output_base, "Output base path");
    simulate->add_option("--z0", z0_override, "Reference impedance override, ohms");
    simulate->add_option("--grid-points", grid_points_override, "Grid point count override");

    CLI::App* fit = app.add_subcommand("fit", "Fit an MBVD model to one-port data");
    fit->add_option("--input", input_path, "Measured .s1p file")->required();
    fit->add_option("--output", output_path, "Report JSON path (default: stdout)");
    fit->add_flag("--fit-parasitics", fit_options.fit_parasitics, "Also fit rs and ls");
    fit->add_option("--max-iterations", fit_options.max_iterations, "Refinement pass cap");
    fit->add_option("--tolerance", fit_options.tolerance, "Relative decrease threshold");
    fit->add_option("--weighting", weighting, "uniform | magnitude");

    CLI::App* metrics = app.add_subcommand("metrics", "Filter metrics from a .s2p file");
    metrics->add_option("--input", input_path, "Input .s2p file")->required();
    metrics->add_option("--output", output_path, "Metrics JSON path (default: stdout)");

    CLI::App* exporter = app.add_subcommand("export", "Export network data as CSV");
    exporter->add_option("--input", input_path, "Input .s1p/.s2p file")->required();
    exporter->add_option("--output", output_path, "CSV path (default: stdout)");
    exporter->add_option("--format", export_format, "Output format (csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        std::cerr << "error: Usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (synth->parsed()) {
            return run_synth(config_path, output_base, z0_override, grid_points_override, true);
        }
        if (simulate->parsed()) {
            return run_synth(config_path, output_base, z0_override, grid_points_override, false);
        }
        if (fit->parsed()) {
            if (weighting == "uniform") {
                fit_options.weighting = FitWeighting::Uniform;
            } else if (weighting == "magnitude") {
                fit_options.weighting = FitWeighting::MagnitudeNormalized;
            } else {
                throw InvalidSpec("--weighting must be \"uniform\" or \"magnitude\"");
            }
            return run_fit(input_path, output_path, fit_options);
        }
        if (metrics->parsed()) {
            return run_metrics(input_path, output_path);
        }
        if (exporter->parsed()) {
            return run_export(input_path, output_path, export_format);
        }
    } catch (const NoResultError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
