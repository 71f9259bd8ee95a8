#include "pmbo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pmbo/baselines.hpp"
#include "pmbo/optimizer.hpp"

namespace pmbo {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, sep)) parts.push_back(item);
    return parts;
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const long long parsed = std::stoll(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

int thread_cap() {
    const char* env = std::getenv("PMBO_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;
    bool have_objective = false;
    bool have_algorithms = false;

    std::stringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_number) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw ConfigError("config: key '" + key + "' has an empty value");

        if (key == "objective") {
            config.objective = value;
            have_objective = true;
        } else if (key == "algorithms") {
            config.algorithms.clear();
            for (const std::string& part : split(value, ',')) {
                const std::string name = trim(part);
                if (!name.empty()) config.algorithms.push_back(name);
            }
            have_algorithms = !config.algorithms.empty();
        } else if (key == "repeats") {
            config.repeats = static_cast<int>(parse_integer(key, value));
        } else if (key == "max_evaluations") {
            config.max_evaluations = static_cast<int>(parse_integer(key, value));
        } else if (key == "seed_strategy") {
            // Accepted for single-algorithm configs: folded into the
            // algorithm name for pmbo.
            config.algorithms = {"pmbo-" + value};
            have_algorithms = true;
        } else if (key == "seed_size") {
            config.seed_size = static_cast<int>(parse_integer(key, value));
        } else if (key == "gamma") {
            config.gamma = parse_real(key, value);
        } else if (key == "bootstrap_B") {
            config.bootstrap_replicates = static_cast<int>(parse_integer(key, value));
        } else if (key == "rng_seed") {
            config.base_rng_seed = static_cast<std::uint64_t>(parse_integer(key, value));
        } else if (key == "out_dir") {
            config.out_dir = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    if (!have_objective) throw ConfigError("config: missing 'objective'");
    if (!have_algorithms) throw ConfigError("config: missing 'algorithms'");
    if (config.repeats < 1) throw ConfigError("config: repeats must be >= 1");
    if (config.max_evaluations < 1) throw ConfigError("config: max_evaluations must be >= 1");
    if (config.seed_size < 1) throw ConfigError("config: seed_size must be >= 1");
    if (config.gamma < 0.0 || config.gamma > 1.0)
        throw ConfigError("config: gamma must be in [0,1]");
    if (config.bootstrap_replicates < 1) throw ConfigError("config: bootstrap_B must be >= 1");
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

AggregateCurve aggregate(const std::vector<RunTrace>& traces, const std::string& algorithm) {
    if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
    const std::size_t length = traces.front().records.size();
    for (const RunTrace& t : traces)
        if (t.records.size() != length)
            throw std::invalid_argument("aggregate: traces have mismatched lengths");

    AggregateCurve curve;
    curve.algorithm = algorithm;
    curve.median.resize(length);
    curve.lo.resize(length);
    curve.hi.resize(length);
    std::vector<double> column(traces.size());
    for (std::size_t i = 0; i < length; ++i) {
        for (std::size_t r = 0; r < traces.size(); ++r)
            column[r] = traces[r].records[i].best_so_far;
        std::sort(column.begin(), column.end());
        curve.lo[i] = column.front();
        curve.hi[i] = column.back();
        curve.median[i] = column[(column.size() - 1) / 2];  // lower-middle for even counts
    }
    return curve;
}

RunTrace run_algorithm(const std::string& algorithm, const Objective& objective,
                       const ExperimentConfig& config, std::uint64_t rng_seed) {
    if (algorithm == "random") return random_search(objective, config.max_evaluations, rng_seed);
    if (algorithm == "sobol") return sobol_search(objective, config.max_evaluations);
    if (algorithm == "cmaes") return cmaes_run(objective, config.max_evaluations, rng_seed);
    if (algorithm.rfind("pmbo-", 0) == 0) {
        PmboConfig pmbo;
        try {
            pmbo.seed.strategy = seed_strategy_from_name(algorithm.substr(5));
        } catch (const std::invalid_argument&) {
            throw ConfigError("unknown algorithm: " + algorithm);
        }
        pmbo.seed.size = config.seed_size;
        pmbo.seed.rng_seed = rng_seed;
        pmbo.acquisition.gamma = config.gamma;
        pmbo.bootstrap_replicates = config.bootstrap_replicates;
        pmbo.max_evaluations = config.max_evaluations;
        pmbo.rng_seed = rng_seed;
        return run_pmbo(objective, pmbo);
    }
    throw ConfigError("unknown algorithm: " + algorithm);
}

void write_trace_csv(std::ostream& out, const std::string& run_id, const std::string& algorithm,
                     const RunTrace& trace) {
    if (trace.records.empty()) throw std::invalid_argument("write_trace_csv: empty trace");
    const std::size_t m = trace.records.front().x.size();
    out << "run_id,algorithm,eval_index,origin";
    for (std::size_t d = 1; d <= m; ++d) out << ",x_" << d;
    out << ",f,best_so_far\n";
    for (const TraceRecord& rec : trace.records) {
        out << run_id << ',' << algorithm << ',' << rec.eval_index << ','
            << sample_origin_name(rec.origin);
        for (double v : rec.x) out << ',' << format_double(v);
        out << ',' << format_double(rec.f) << ',' << format_double(rec.best_so_far) << '\n';
    }
}

LoadedTrace read_trace_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("trace csv: missing header");
    const std::vector<std::string> columns = split(trim(header), ',');
    if (columns.size() < 7 || columns[0] != "run_id" || columns.back() != "best_so_far")
        throw std::runtime_error("trace csv: unexpected header");
    const std::size_t m = columns.size() - 6;

    LoadedTrace loaded;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != columns.size()) throw std::runtime_error("trace csv: ragged row");
        if (loaded.trace.records.empty()) {
            loaded.run_id = fields[0];
            loaded.algorithm = fields[1];
        }
        Point x(m);
        for (std::size_t d = 0; d < m; ++d) x[d] = std::stod(fields[4 + d]);
        TraceRecord rec;
        rec.eval_index = std::stoi(fields[2]);
        if (fields[3] == "frontier")
            rec.origin = SampleOrigin::Frontier;
        else if (fields[3] == "exploit")
            rec.origin = SampleOrigin::Exploit;
        else
            rec.origin = SampleOrigin::Seed;
        rec.x = std::move(x);
        rec.f = std::stod(fields[4 + m]);
        rec.best_so_far = std::stod(fields[5 + m]);
        loaded.trace.records.push_back(std::move(rec));
    }
    if (loaded.trace.records.empty()) throw std::runtime_error("trace csv: no rows");
    return loaded;
}

namespace {

/// Extends shorter traces by holding their final best, so repeats that
/// stopped early can be aggregated on a shared axis.
void pad_to_length(RunTrace& trace, std::size_t length) {
    while (trace.records.size() < length) {
        const TraceRecord& last = trace.records.back();
        trace.append(last.x, last.best_so_far, last.origin);
    }
}

struct CompletedRun {
    std::string algorithm;
    int repeat = 0;
    std::uint64_t rng_seed = 0;
    RunTrace trace;
};

}  // namespace

AggregateResult run_experiment(const ExperimentConfig& config) {
    if (config.algorithms.empty()) throw ConfigError("run_experiment: no algorithms");
    if (config.repeats < 1) throw ConfigError("run_experiment: repeats must be >= 1");
    if (config.out_dir.empty()) throw ConfigError("run_experiment: out_dir is required");

    const Objective objective = make_objective(config.objective);
    // Fail fast on unknown algorithm names before spending evaluations.
    for (const std::string& algorithm : config.algorithms) {
        if (algorithm != "random" && algorithm != "sobol" && algorithm != "cmaes" &&
            !(algorithm.rfind("pmbo-", 0) == 0)) {
            throw ConfigError("unknown algorithm: " + algorithm);
        }
        if (algorithm.rfind("pmbo-", 0) == 0) seed_strategy_from_name(algorithm.substr(5));
    }

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory: " + config.out_dir);

    std::vector<CompletedRun> runs;
    for (const std::string& algorithm : config.algorithms)
        for (int r = 0; r < config.repeats; ++r)
            runs.push_back({algorithm, r, config.base_rng_seed + static_cast<std::uint64_t>(r), {}});

    const int threads = std::min<int>(thread_cap(), static_cast<int>(runs.size()));
    if (threads <= 1) {
        for (CompletedRun& run : runs)
            run.trace = run_algorithm(run.algorithm, objective, config, run.rng_seed);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::atomic<bool> failed{false};
        std::string error_message;
        std::mutex error_mutex;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= runs.size() || failed.load()) return;
                    try {
                        runs[i].trace =
                            run_algorithm(runs[i].algorithm, objective, config, runs[i].rng_seed);
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        failed.store(true);
                        error_message = e.what();
                        return;
                    }
                }
            });
        }
        for (std::thread& t : pool) t.join();
        if (failed.load()) throw std::runtime_error("experiment run failed: " + error_message);
    }

    // All file writes happen after the runs, in run order.
    nlohmann::json summary;
    summary["objective"] = config.objective;
    summary["algorithms"] = config.algorithms;
    summary["repeats"] = config.repeats;
    summary["max_evaluations"] = config.max_evaluations;
    summary["seed_size"] = config.seed_size;
    summary["gamma"] = config.gamma;
    summary["bootstrap_B"] = config.bootstrap_replicates;
    summary["base_rng_seed"] = config.base_rng_seed;
    summary["runs"] = nlohmann::json::array();

    std::size_t max_length = 0;
    for (const CompletedRun& run : runs) max_length = std::max(max_length, run.trace.evaluations());

    for (const CompletedRun& run : runs) {
        const std::string run_id = run.algorithm + "-r" + std::to_string(run.repeat);
        const std::string file_name = run.algorithm + "_rep" + std::to_string(run.repeat) + ".csv";
        const std::filesystem::path path = std::filesystem::path(config.out_dir) / file_name;
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot write: " + path.string());
        write_trace_csv(out, run_id, run.algorithm, run.trace);
        if (!out) throw std::runtime_error("failed while writing: " + path.string());

        nlohmann::json entry;
        entry["run_id"] = run_id;
        entry["algorithm"] = run.algorithm;
        entry["repeat"] = run.repeat;
        entry["rng_seed"] = run.rng_seed;
        entry["file"] = file_name;
        entry["evaluations"] = run.trace.evaluations();
        entry["final_best"] = run.trace.final_best();
        entry["reason"] = stop_reason_name(run.trace.reason);
        if (run.trace.final_surrogate)
            entry["surrogate"] = nlohmann::json::parse(run.trace.final_surrogate->to_json());
        summary["runs"].push_back(std::move(entry));
    }

    AggregateResult result;
    summary["aggregate"] = nlohmann::json::array();
    for (const std::string& algorithm : config.algorithms) {
        std::vector<RunTrace> padded;
        for (const CompletedRun& run : runs) {
            if (run.algorithm != algorithm) continue;
            RunTrace copy = run.trace;
            copy.final_surrogate.reset();
            pad_to_length(copy, max_length);
            padded.push_back(std::move(copy));
        }
        AggregateCurve curve = aggregate(padded, algorithm);
        nlohmann::json entry;
        entry["algorithm"] = algorithm;
        entry["final_median"] = curve.median.back();
        entry["final_min"] = curve.lo.back();
        entry["final_max"] = curve.hi.back();
        summary["aggregate"].push_back(std::move(entry));
        result.curves.push_back(std::move(curve));
    }

    {
        const std::filesystem::path path = std::filesystem::path(config.out_dir) / "summary.json";
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot write: " + path.string());
        out << summary.dump(2) << '\n';
    }
    emit_plot(result, (std::filesystem::path(config.out_dir) / "convergence.svg").string(),
              config.objective);
    return result;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string svg_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void emit_plot(const AggregateResult& result, const std::string& path, const std::string& title) {
    if (result.curves.empty()) throw std::invalid_argument("emit_plot: no curves to plot");

    std::size_t length = 0;
    bool all_positive = true;
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (const AggregateCurve& curve : result.curves) {
        length = std::max(length, curve.median.size());
        for (const std::vector<double>* series : {&curve.median, &curve.lo, &curve.hi}) {
            for (double v : *series) {
                all_positive = all_positive && v > 0.0;
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
    }
    if (length < 1) throw std::invalid_argument("emit_plot: empty curves");

    const bool log_scale = all_positive;
    auto transform = [&](double v) { return log_scale ? std::log10(v) : v; };
    double tmin = transform(vmin);
    double tmax = transform(vmax);
    if (tmax - tmin < 1e-12) {
        tmin -= 0.5;
        tmax += 0.5;
    }

    const double width = 860.0, height = 520.0;
    const double left = 80.0, right = width - 190.0, top = 50.0, bottom = height - 60.0;
    auto x_at = [&](std::size_t i) {
        return length == 1 ? (left + right) / 2.0
                           : left + (right - left) * static_cast<double>(i) /
                                 static_cast<double>(length - 1);
    };
    auto y_at = [&](double v) {
        return bottom - (bottom - top) * (transform(v) - tmin) / (tmax - tmin);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    if (!title.empty())
        svg << "<text x=\"" << svg_number((left + right) / 2) << "\" y=\"28\" font-size=\"16\" "
               "text-anchor=\"middle\" font-family=\"sans-serif\">"
            << title << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
        << "\" stroke=\"black\"/>\n";

    // Y ticks: decades on log scale, 5 even steps otherwise.
    if (log_scale) {
        for (int e = static_cast<int>(std::floor(tmin)); e <= static_cast<int>(std::ceil(tmax));
             ++e) {
            if (e < tmin - 1e-9 || e > tmax + 1e-9) continue;
            const double y = bottom - (bottom - top) * (e - tmin) / (tmax - tmin);
            svg << "<line x1=\"" << left - 4 << "\" y1=\"" << svg_number(y) << "\" x2=\"" << left
                << "\" y2=\"" << svg_number(y) << "\" stroke=\"black\"/>\n"
                << "<text x=\"" << left - 8 << "\" y=\"" << svg_number(y + 4)
                << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">1e" << e
                << "</text>\n";
        }
    } else {
        for (int t = 0; t <= 4; ++t) {
            const double v = tmin + (tmax - tmin) * t / 4.0;
            const double y = bottom - (bottom - top) * t / 4.0;
            char label[32];
            std::snprintf(label, sizeof(label), "%.4g", v);
            svg << "<line x1=\"" << left - 4 << "\" y1=\"" << svg_number(y) << "\" x2=\"" << left
                << "\" y2=\"" << svg_number(y) << "\" stroke=\"black\"/>\n"
                << "<text x=\"" << left - 8 << "\" y=\"" << svg_number(y + 4)
                << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" << label
                << "</text>\n";
        }
    }
    // X ticks at quarters of the evaluation range.
    for (int t = 0; t <= 4; ++t) {
        const std::size_t i =
            static_cast<std::size_t>(std::llround((length - 1) * (t / 4.0)));
        const double x = x_at(i);
        svg << "<line x1=\"" << svg_number(x) << "\" y1=\"" << bottom << "\" x2=\""
            << svg_number(x) << "\" y2=\"" << bottom + 4 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << svg_number(x) << "\" y=\"" << bottom + 18
            << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" << i
            << "</text>\n";
    }
    svg << "<text x=\"" << svg_number((left + right) / 2) << "\" y=\"" << height - 14
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
           "evaluations</text>\n"
        << "<text x=\"20\" y=\"" << svg_number((top + bottom) / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 "
        << svg_number((top + bottom) / 2) << ")\">best objective value</text>\n";

    for (std::size_t c = 0; c < result.curves.size(); ++c) {
        const AggregateCurve& curve = result.curves[c];
        const char* color = kPalette[c % 8];

        // Min/max band.
        svg << "<path d=\"M";
        for (std::size_t i = 0; i < curve.hi.size(); ++i)
            svg << (i ? " L" : "") << svg_number(x_at(i)) << ' ' << svg_number(y_at(curve.hi[i]));
        for (std::size_t i = curve.lo.size(); i-- > 0;)
            svg << " L" << svg_number(x_at(i)) << ' ' << svg_number(y_at(curve.lo[i]));
        svg << " Z\" fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";

        // Median line.
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < curve.median.size(); ++i)
            svg << (i ? " " : "") << svg_number(x_at(i)) << ',' << svg_number(y_at(curve.median[i]));
        svg << "\"/>\n";

        // Legend entry.
        const double ly = top + 10.0 + 18.0 * static_cast<double>(c);
        svg << "<line x1=\"" << right + 12 << "\" y1=\"" << svg_number(ly) << "\" x2=\""
            << right + 36 << "\" y2=\"" << svg_number(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << right + 42 << "\" y=\"" << svg_number(ly + 4)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << curve.algorithm
            << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_plot: cannot write " + path);
    out << svg.str();
}

AggregateResult aggregate_directory(const std::string& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    if (files.empty()) throw std::runtime_error("no trace CSV files under " + dir);
    std::sort(files.begin(), files.end());

    std::vector<std::string> algorithm_order;
    std::map<std::string, std::vector<RunTrace>> by_algorithm;
    std::size_t max_length = 0;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open " + file.string());
        LoadedTrace loaded = read_trace_csv(in);
        if (by_algorithm.find(loaded.algorithm) == by_algorithm.end())
            algorithm_order.push_back(loaded.algorithm);
        max_length = std::max(max_length, loaded.trace.evaluations());
        by_algorithm[loaded.algorithm].push_back(std::move(loaded.trace));
    }

    AggregateResult result;
    for (const std::string& algorithm : algorithm_order) {
        std::vector<RunTrace>& traces = by_algorithm[algorithm];
        for (RunTrace& t : traces) pad_to_length(t, max_length);
        result.curves.push_back(aggregate(traces, algorithm));
    }
    return result;
}

}  // namespace pmbo
