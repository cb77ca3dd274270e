// morse-persist: Morse decompositions of grid maps across a dyadic depth
// chain, from a map expression or from time-series data.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "morse_persist/morse_persist.hpp"

namespace mp = morse_persist;

namespace {

struct CliOptions {
    std::string map_expr;
    std::string observations_path;
    std::string samples_path;
    std::string box_text;
    std::string depths_text;
    std::string mu_text;
    std::string schedule_mu_text;
    std::string lambda_text;
    long long min_count = 1;
    int embed = 0;
    std::string format = "json";
    std::string output;
    int threads = 0;
};

mp::Box parse_box(const std::string& text) {
    std::vector<mp::Rational> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string part =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        values.push_back(mp::parse_rational(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.size() < 2 || values.size() % 2 != 0)
        throw mp::ConfigError("--box needs lo,hi pairs per axis, e.g. '0,1' or '0,1,0,1'");
    std::vector<mp::Rational> lo, hi;
    for (std::size_t i = 0; i < values.size(); i += 2) {
        lo.push_back(values[i]);
        hi.push_back(values[i + 1]);
    }
    return mp::Box(std::move(lo), std::move(hi));
}

std::pair<int, int> parse_depths(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int d = std::stoi(text);
            return {d, d};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw mp::ConfigError("--depths expects 'k' or 'min..max', got '" + text + "'");
    }
}

mp::PipelineConfig build_config(const CliOptions& opt) {
    mp::PipelineConfig config;
    int sources = (!opt.map_expr.empty()) + (!opt.observations_path.empty()) +
                  (!opt.samples_path.empty());
    if (sources != 1)
        throw mp::ConfigError("choose exactly one of --map, --observations, --samples");
    if (!opt.map_expr.empty()) {
        config.source = mp::PipelineConfig::Source::Map;
        config.map_expr = opt.map_expr;
    } else if (!opt.observations_path.empty()) {
        config.source = mp::PipelineConfig::Source::Observations;
        config.data_path = opt.observations_path;
    } else {
        config.source = mp::PipelineConfig::Source::Samples;
        config.data_path = opt.samples_path;
    }
    if (opt.box_text.empty()) throw mp::ConfigError("--box is required");
    config.box = parse_box(opt.box_text);
    if (opt.depths_text.empty()) throw mp::ConfigError("--depths is required");
    std::tie(config.depth_min, config.depth_max) = parse_depths(opt.depths_text);
    if (!opt.mu_text.empty() && !opt.schedule_mu_text.empty())
        throw mp::ConfigError("choose either --mu or --schedule-mu");
    if (!opt.mu_text.empty()) config.mu = mp::parse_rational(opt.mu_text);
    if (!opt.schedule_mu_text.empty()) {
        config.mu = mp::parse_rational(opt.schedule_mu_text);
        config.schedule = true;
    }
    if (!opt.lambda_text.empty()) config.lambda = mp::parse_rational(opt.lambda_text);
    config.min_count = opt.min_count;
    config.embed = opt.embed;
    config.threads = opt.threads;
    if (opt.format == "json")
        config.format = mp::PipelineConfig::Format::Json;
    else if (opt.format == "dot")
        config.format = mp::PipelineConfig::Format::Dot;
    else
        throw mp::ConfigError("--format must be json or dot");
    return config;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw mp::DataError("cannot open output file: " + path);
    out << text;
}

std::vector<std::string> morse_set_labels(const mp::LevelAnalysis& level) {
    std::vector<std::string> labels;
    const auto& md = level.augmented.decomposition;
    labels.reserve(md.sets.size());
    for (const auto& s : md.sets) {
        std::string l = "{";
        for (std::size_t i = 0; i < s.cells.size(); ++i) {
            if (i) l += " ";
            l += level.grid.cell_id(s.cells[i]);
        }
        l += "}";
        labels.push_back(std::move(l));
    }
    return labels;
}

std::string render(const mp::PipelineResult& result, const mp::PipelineConfig& config,
                   const std::string& subcommand) {
    using Format = mp::PipelineConfig::Format;
    if (subcommand == "analyze") {
        return mp::pipeline_report_json(result).dump(2) + "\n";
    }
    if (subcommand == "morse") {
        if (config.format == Format::Dot) {
            std::string out;
            for (const auto& level : result.levels) {
                if (!out.empty()) out += "\n";
                out += emit_dot(level.graph, morse_set_labels(level));
            }
            return out;
        }
        mp::Json levels = mp::Json::array();
        for (const auto& level : result.levels)
            levels.push_back(
                mp::Json{{"depth", level.depth},
                         {"morse", decomposition_json(level.augmented.decomposition)},
                         {"morse_graph", morse_graph_json(level.graph)}});
        return levels.dump(2) + "\n";
    }
    if (subcommand == "mixing") {
        mp::Json levels = mp::Json::array();
        for (const auto& level : result.levels)
            levels.push_back(mp::Json{{"depth", level.depth},
                                      {"mixing", mixing_json(level.mixing, level.grid)}});
        return levels.dump(2) + "\n";
    }
    if (subcommand == "barcode") {
        return mp::Json{{"barcode", barcode_json(result.bars)}}.dump(2) + "\n";
    }
    if (subcommand == "merge-tree") {
        if (config.format == Format::Dot) return emit_dot(result.tree);
        return merge_tree_json(result.tree).dump(2) + "\n";
    }
    throw mp::InternalError("unknown subcommand: " + subcommand);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morse decompositions of grid maps and their persistence "
                 "over grid resolution"};
    app.require_subcommand(1);

    CliOptions opt;
    std::vector<std::string> names = {"analyze", "morse", "mixing", "barcode", "merge-tree"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--map", opt.map_expr,
                        "map expression, components separated by ';' (e.g. \"x^2\")");
        sub->add_option("--observations", opt.observations_path, "observation CSV");
        sub->add_option("--samples", opt.samples_path, "sample CSV (x columns then y)");
        sub->add_option("--box", opt.box_text, "box as lo,hi per axis (e.g. 0,1,0,1)");
        sub->add_option("--depths", opt.depths_text, "depth range min..max or single depth");
        sub->add_option("--mu", opt.mu_text, "fixed count threshold in [0,1)");
        sub->add_option("--schedule-mu", opt.schedule_mu_text,
                        "threshold at the finest depth, scheduled as mu/M^2 when coarsening");
        sub->add_option("--lambda", opt.lambda_text, "Morita transition-probability factor");
        sub->add_option("--min-count", opt.min_count, "Morita minimum transition count");
        sub->add_option("--embed", opt.embed, "delay-embed a scalar series with this window");
        sub->add_option("--format", opt.format, "json or dot");
        sub->add_option("--output", opt.output, "write to a file instead of stdout");
        sub->add_option("--threads", opt.threads,
                        "parallel depth analyses (default: MORSE_PERSIST_THREADS or cores)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        mp::PipelineConfig config = build_config(opt);
        mp::PipelineResult result = mp::run_pipeline(config);
        write_output(opt.output, render(result, config, app.get_subcommands().front()->get_name()));
        return 0;
    } catch (const mp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mp::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
