// Command-line front end: simulate scenarios, render traces, evaluate
// objectives and run seed batches.

#include "safepath/scenario.hpp"
#include "safepath/simulation.hpp"
#include "safepath/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using safepath::sim::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw safepath::sim::LoadError(path, "cannot open file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (const fs::path parent = fs::path(path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

struct SimulateArgs {
    std::string scenario_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_steps;
    std::optional<std::string> predictor;
    std::optional<double> confidence;
    std::optional<double> grid_cell;
    std::optional<double> sensing_radius;
};

safepath::sim::Scenario load_with_overrides(const SimulateArgs& a) {
    auto sc = safepath::sim::load_scenario_text(read_file(a.scenario_path));
    if (a.seed) sc.params.seed = *a.seed;
    if (a.max_steps) sc.params.max_steps = *a.max_steps;
    if (a.predictor) sc.params.predictor = safepath::sim::predictor_from_string(*a.predictor);
    if (a.confidence) sc.params.confidence_z = *a.confidence;
    if (a.grid_cell) sc.params.grid_cell = *a.grid_cell;
    if (a.sensing_radius) sc.params.sensing_radius = *a.sensing_radius;
    return sc;
}

int cmd_simulate(const SimulateArgs& a) {
    const auto sc = load_with_overrides(a);
    const auto trace = safepath::sim::run(sc);
    write_file(a.out_path, safepath::sim::to_json(trace).dump(2) + "\n");
    std::cout << "outcome: " << safepath::sim::to_string(trace.outcome)
              << "  steps: " << trace.steps_used << "  valid: " << (trace.valid ? "yes" : "no");
    if (trace.objective)
        std::cout << "  objective: " << *trace.objective;
    std::cout << "\n";
    return 0;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& spec) {
    const auto pos = spec.find("..");
    try {
        if (pos == std::string::npos) {
            const std::size_t k = std::stoul(spec);
            return {k, k};
        }
        return {std::stoul(spec.substr(0, pos)), std::stoul(spec.substr(pos + 2))};
    } catch (const std::exception&) {
        throw safepath::sim::LoadError("--steps", "expected <a..b> or <k>, got '" + spec + "'");
    }
}

int cmd_render(const std::string& trace_path, const std::string& steps,
               const std::string& out_dir) {
    json j;
    try {
        j = json::parse(read_file(trace_path));
    } catch (const json::exception& e) {
        throw safepath::sim::LoadError(trace_path, std::string("malformed JSON: ") + e.what());
    }
    const auto trace = safepath::sim::trace_from_json(j);
    auto [from, to] = parse_range(steps);
    to = std::min(to, trace.steps.size() - 1);
    if (from > to) throw safepath::sim::LoadError("--steps", "empty range");
    const auto files = safepath::sim::render_svg(trace, from, to, out_dir);
    std::cout << files.size() << " files written to " << out_dir << "\n";
    return 0;
}

int cmd_eval(const std::string& trace_path) {
    json j;
    try {
        j = json::parse(read_file(trace_path));
    } catch (const json::exception& e) {
        throw safepath::sim::LoadError(trace_path, std::string("malformed JSON: ") + e.what());
    }
    const auto trace = safepath::sim::trace_from_json(j);
    std::cout << "outcome:   " << safepath::sim::to_string(trace.outcome) << "\n"
              << "steps:     " << trace.steps_used << "\n"
              << "valid:     " << (trace.valid ? "yes" : "no") << "\n"
              << "objective: ";
    if (trace.objective)
        std::cout << *trace.objective << "\n";
    else
        std::cout << "invalid\n";
    return 0;
}

int cmd_batch(const std::string& dir, int seeds, const std::string& report_path) {
    if (seeds < 1) throw safepath::sim::LoadError("--seeds", "must be >= 1");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw safepath::sim::LoadError(dir, "no scenario files");

    json report = json::array();
    int total_runs = 0, total_goal = 0, total_collision = 0;
    for (const auto& file : files) {
        const auto sc = safepath::sim::load_scenario_text(read_file(file.string()));
        int goal = 0, collision = 0, timeout = 0;
        double obj_sum = 0.0;
        int obj_count = 0;
        double steps_sum = 0.0;
        for (int i = 0; i < seeds; ++i) {
            const auto trace = safepath::sim::run(sc, sc.params.seed + static_cast<std::uint64_t>(i));
            switch (trace.outcome) {
                case safepath::sim::Outcome::Goal: ++goal; break;
                case safepath::sim::Outcome::Collision: ++collision; break;
                case safepath::sim::Outcome::Timeout: ++timeout; break;
            }
            if (trace.objective) {
                obj_sum += *trace.objective;
                ++obj_count;
            }
            steps_sum += static_cast<double>(trace.steps_used);
        }
        total_runs += seeds;
        total_goal += goal;
        total_collision += collision;
        json entry{{"scenario", sc.name},
                   {"file", file.filename().string()},
                   {"runs", seeds},
                   {"goal", goal},
                   {"collision", collision},
                   {"timeout", timeout},
                   {"success_rate", static_cast<double>(goal) / seeds},
                   {"collision_rate", static_cast<double>(collision) / seeds},
                   {"mean_steps", steps_sum / seeds}};
        entry["mean_objective"] = obj_count ? json(obj_sum / obj_count) : json(nullptr);
        std::cout << sc.name << ": " << goal << "/" << seeds << " goal, " << collision
                  << " collision";
        if (obj_count) std::cout << ", mean objective " << obj_sum / obj_count;
        std::cout << "\n";
        report.push_back(std::move(entry));
    }
    json summary{{"scenarios", report},
                 {"total_runs", total_runs},
                 {"overall_success_rate", static_cast<double>(total_goal) / total_runs},
                 {"overall_collision_rate", static_cast<double>(total_collision) / total_runs}};
    write_file(report_path, summary.dump(2) + "\n");
    std::cout << "report written to " << report_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"safepath: 2D motion planning with probabilistic safe zones"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "run one scenario and write a trace");
    sim_cmd->add_option("--scenario", sim_args.scenario_path, "scenario JSON file")->required();
    sim_cmd->add_option("--out", sim_args.out_path, "trace output file")->required();
    std::uint64_t seed_opt = 0;
    auto* seed_flag = sim_cmd->add_option("--seed", seed_opt, "override the scenario seed");
    int max_steps_opt = 0;
    auto* ms_flag = sim_cmd->add_option("--max-steps", max_steps_opt, "override max steps");
    std::string predictor_opt;
    auto* pred_flag = sim_cmd->add_option("--predictor", predictor_opt,
                                          "mean | naive-ar | gen-ar");
    double conf_opt = 0.0;
    auto* conf_flag = sim_cmd->add_option("--confidence", conf_opt, "confidence multiple z");
    double cell_opt = 0.0;
    auto* cell_flag = sim_cmd->add_option("--grid-cell", cell_opt, "grid cell size");
    double sense_opt = 0.0;
    auto* sense_flag = sim_cmd->add_option("--sensing-radius", sense_opt, "sensing radius");

    std::string trace_path, steps_spec = "0..1000000", out_dir = "renders";
    auto* render_cmd = app.add_subcommand("render", "render trace steps as SVG files");
    render_cmd->add_option("--trace", trace_path, "trace JSON file")->required();
    render_cmd->add_option("--steps", steps_spec, "step range a..b or single step");
    render_cmd->add_option("--out-dir", out_dir, "output directory")->required();

    std::string eval_trace;
    auto* eval_cmd = app.add_subcommand("eval", "print objective, steps, outcome, validity");
    eval_cmd->add_option("--trace", eval_trace, "trace JSON file")->required();

    std::string batch_dir, report_path = "report.json";
    int batch_seeds = 1;
    auto* batch_cmd = app.add_subcommand("batch", "run every scenario in a directory");
    batch_cmd->add_option("--scenario-dir", batch_dir, "directory of scenario files")->required();
    batch_cmd->add_option("--seeds", batch_seeds, "seeds per scenario")->required();
    batch_cmd->add_option("--report", report_path, "report output file")->required();

    try {
        app.parse(argc, argv);
        if (sim_cmd->parsed()) {
            if (*seed_flag) sim_args.seed = seed_opt;
            if (*ms_flag) sim_args.max_steps = max_steps_opt;
            if (*pred_flag) sim_args.predictor = predictor_opt;
            if (*conf_flag) sim_args.confidence = conf_opt;
            if (*cell_flag) sim_args.grid_cell = cell_opt;
            if (*sense_flag) sim_args.sensing_radius = sense_opt;
            return cmd_simulate(sim_args);
        }
        if (render_cmd->parsed()) return cmd_render(trace_path, steps_spec, out_dir);
        if (eval_cmd->parsed()) return cmd_eval(eval_trace);
        if (batch_cmd->parsed()) return cmd_batch(batch_dir, batch_seeds, report_path);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const safepath::sim::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
