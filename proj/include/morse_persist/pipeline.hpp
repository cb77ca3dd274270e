#pragma once

#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "morse_persist/barcode.hpp"
#include "morse_persist/dot.hpp"
#include "morse_persist/json_io.hpp"
#include "morse_persist/mapspec.hpp"
#include "morse_persist/merge_tree.hpp"
#include "morse_persist/recurrence.hpp"
#include "morse_persist/timeseries.hpp"

namespace morse_persist {

struct PipelineConfig {
    enum class Source { Map, Observations, Samples };
    enum class Format { Json, Dot };

    Source source = Source::Map;
    std::string map_expr;    // Source::Map
    std::string data_path;   // observation/sample CSV
    Box box;
    int depth_min = 0;
    int depth_max = 0;
    int embed = 0;           // > 0: delay-embed a scalar observation series
    std::optional<Rational> mu;   // count threshold (samples only)
    bool schedule = false;        // apply mu/M^2 down the chain
    std::optional<Rational> lambda;  // Morita test (with min_count)
    long long min_count = 1;
    Format format = Format::Json;
    int threads = 0;  // 0: MORSE_PERSIST_THREADS or hardware concurrency

    void validate() const {
        if (depth_min > depth_max)
            throw ConfigError("depth range is empty: " + std::to_string(depth_min) + ".." +
                              std::to_string(depth_max));
        if (depth_min < 0) throw ConfigError("depths must be >= 0");
        bool data_source = source != Source::Map;
        if ((mu || lambda || schedule) && !data_source)
            throw ConfigError("thresholds apply only to data sources");
        if (mu && lambda)
            throw ConfigError("choose either the count threshold or the Morita test");
        if (schedule && !mu) throw ConfigError("--schedule-mu needs a threshold value");
    }
};

inline int thread_cap(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MORSE_PERSIST_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

// Index-ordered parallel map: tasks run in batches of at most `threads`;
// the first failure (by index) is rethrown, so errors are deterministic.
template <typename F>
void parallel_for(int n, int threads, F&& body) {
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    for (int start = 0; start < n; start += threads) {
        int end = std::min(n, start + threads);
        std::vector<std::thread> pool;
        pool.reserve(end - start);
        for (int i = start; i < end; ++i)
            pool.emplace_back([i, &errors, &body]() {
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

struct LevelAnalysis {
    int depth = 0;
    Grid grid;
    std::optional<Rational> mu;
    GridMap map;  // trimmed
    AugmentedMorseDecomposition augmented;
    MorseGraph graph;
    std::vector<MixingReportEntry> mixing;
    HomologySummary hom;
};

struct PipelineResult {
    std::vector<LevelAnalysis> levels;         // finest (deepest) first
    std::vector<MorseMorphism> morphisms;      // consecutive fine -> coarse
    std::vector<std::vector<int>> vertex_maps; // induced Morse graph morphisms
    MergeTree tree;
    Barcode bars;
};

// Full pipeline: per-depth grid map, Morse decomposition, Morse graph and
// mixing report; across depths, morphisms, merge tree, and barcodes.
// Levels run from the finest grid (depth_max) to the coarsest (depth_min).
inline PipelineResult run_pipeline(const PipelineConfig& config) {
    config.validate();

    std::optional<MapSpec> spec;
    std::optional<ObservationSet> observations;
    std::optional<SampleSet> samples;
    switch (config.source) {
        case PipelineConfig::Source::Map:
            spec = MapSpec::parse(config.map_expr);
            if (spec->dim() != config.box.dim())
                throw ConfigError("map spec dimension does not match box dimension");
            break;
        case PipelineConfig::Source::Observations: {
            std::ifstream in(config.data_path);
            if (!in) throw DataError("cannot open input file: " + config.data_path);
            observations = csv::read_observations(in, config.data_path);
            if (config.embed > 0) {
                if (observations->dim != 1)
                    throw ConfigError("--embed expects a scalar (1-column) series");
                ObservationSet embedded;
                embedded.dim = config.embed;
                for (const auto& run : observations->series) {
                    std::vector<Rational> scalars;
                    scalars.reserve(run.size());
                    for (const Point& p : run) scalars.push_back(p[0]);
                    auto e = delay_embed(scalars, config.embed);
                    embedded.series.push_back(std::move(e.series.front()));
                }
                observations = std::move(embedded);
            }
            break;
        }
        case PipelineConfig::Source::Samples: {
            std::ifstream in(config.data_path);
            if (!in) throw DataError("cannot open input file: " + config.data_path);
            samples = csv::read_samples(in, config.data_path);
            break;
        }
    }

    int level_count = config.depth_max - config.depth_min + 1;
    std::vector<int> depths(level_count);
    for (int i = 0; i < level_count; ++i) depths[i] = config.depth_max - i;

    // mu per level under the schedule: M doubles per axis per depth step
    Grid finest(config.box, config.depth_max);
    std::vector<std::optional<Rational>> mu_at(level_count);
    if (config.mu) {
        for (int i = 0; i < level_count; ++i) {
            Grid level_grid(config.box, depths[i]);
            mu_at[i] = config.schedule ? persistent_threshold(*config.mu, finest, level_grid)
                                       : *config.mu;
        }
    }

    PipelineResult result;
    result.levels.resize(level_count);
    detail::parallel_for(level_count, thread_cap(config.threads), [&](int i) {
        LevelAnalysis& level = result.levels[i];
        level.depth = depths[i];
        level.grid = Grid(config.box, depths[i]);
        level.mu = mu_at[i];
        GridMap raw;
        switch (config.source) {
            case PipelineConfig::Source::Map:
                raw = minimal_map(*spec, level.grid);
                break;
            case PipelineConfig::Source::Observations:
                raw = observation_map(*observations, level.grid);
                break;
            case PipelineConfig::Source::Samples:
                if (config.lambda)
                    raw = morita_map(*samples, level.grid, *config.lambda, config.min_count);
                else if (level.mu)
                    raw = thresholded_map(*samples, level.grid, *level.mu);
                else
                    raw = sampled_map(*samples, level.grid);
                break;
        }
        level.map = trim_stranded(raw);
        level.augmented = restrictions(finest_decomposition(level.map));
        level.graph = morse_graph(level.augmented.decomposition);
        level.mixing = mixing_report(level.augmented);
        level.hom = homology(level.graph);
    });

    // For map, observation, plain-sample, and scheduled-threshold sources the
    // refinement morphism is guaranteed; a fixed threshold or the Morita test
    // can genuinely break it, which is then a property of the inputs.
    bool persistence_guaranteed =
        config.source != PipelineConfig::Source::Samples ||
        (!config.lambda && (!config.mu || config.schedule));
    for (int i = 0; i + 1 < level_count; ++i) {
        const LevelAnalysis& fine = result.levels[i];
        const LevelAnalysis& coarse = result.levels[i + 1];
        RefinementCellMap h(fine.grid, coarse.grid);
        if (!is_morphism(h, fine.map, coarse.map)) {
            std::string what = "refinement is not a grid map morphism between depths " +
                               std::to_string(fine.depth) + " and " +
                               std::to_string(coarse.depth);
            if (persistence_guaranteed) throw InternalError(what);
            throw DataError(what + "; these thresholds do not persist over refinement "
                                   "(--schedule-mu guarantees persistence)");
        }
        result.morphisms.push_back(morse_morphism(h, fine.augmented, coarse.augmented));
        result.vertex_maps.push_back(result.morphisms.back().set_map);
    }

    std::vector<std::string> labels;
    labels.reserve(level_count);
    for (int d : depths) labels.push_back(std::to_string(d));
    if (level_count == 1) {
        result.tree = merge_tree_single(result.levels.front().graph.vertex_count,
                                        labels.front());
    } else {
        result.tree = merge_tree(result.morphisms, labels);
    }

    std::vector<MorseGraph> graphs;
    graphs.reserve(level_count);
    for (const auto& level : result.levels) graphs.push_back(level.graph);
    result.bars = barcode(graphs, result.vertex_maps);
    return result;
}

inline Json pipeline_report_json(const PipelineResult& r) {
    Json levels = Json::array();
    for (const LevelAnalysis& level : r.levels) {
        Json jl{{"depth", level.depth},
                {"grid", grid_json(level.grid)},
                {"diameter", format_rational(level.grid.diameter())}};
        if (level.mu) jl["mu"] = format_rational(*level.mu);
        jl["map"] = Json{{"vertices", level.map.vertex_count()},
                         {"edges", level.map.edge_count()}};
        jl["morse"] = decomposition_json(level.augmented.decomposition);
        jl["morse_graph"] = morse_graph_json(level.graph);
        jl["mixing"] = mixing_json(level.mixing, level.grid);
        jl["homology"] = Json{{"h0", level.hom.h0}, {"h1", level.hom.h1}};
        levels.push_back(std::move(jl));
    }
    Json vmaps = Json::array();
    for (const auto& vm : r.vertex_maps) {
        Json m = Json::array();
        for (int t : vm) m.push_back(t);
        vmaps.push_back(m);
    }
    return Json{{"levels", levels},
                {"morse_graph_morphisms", vmaps},
                {"merge_tree", merge_tree_json(r.tree)},
                {"persistent_morse_sets", r.tree.full_branches()},
                {"barcode", barcode_json(r.bars)}};
}

}  // namespace morse_persist
