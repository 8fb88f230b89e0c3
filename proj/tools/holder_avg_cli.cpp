#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holder_avg/bracketing.hpp"
#include "holder_avg/csv_io.hpp"
#include "holder_avg/experiments.hpp"
#include "holder_avg/learner.hpp"
#include "holder_avg/pmse.hpp"
#include "holder_avg/smoothness.hpp"
#include "holder_avg/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace holder_avg;

// every --out file gets a <out>.json sidecar recording how it was produced
void write_sidecar(const std::string& out_path, const std::string& command,
                   const ordered_json& config) {
    ordered_json sidecar;
    sidecar["command"] = command;
    sidecar["config"] = config;
    sidecar["version"] = kVersion;
    std::ofstream file(out_path + ".json");
    if (!file) throw std::runtime_error("cannot write " + out_path + ".json");
    file << sidecar.dump(2) << "\n";
}

void emit_csv(const std::optional<std::string>& out_path, const std::string& command,
              const ordered_json& config, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows) {
    if (out_path) {
        write_csv_file(*out_path, header, rows);
        write_sidecar(*out_path, command, config);
    } else {
        write_csv(std::cout, header, rows);
    }
}

std::vector<std::size_t> indices_from_column(const std::vector<double>& values,
                                             std::size_t space_size, const std::string& what) {
    std::vector<std::size_t> indices;
    indices.reserve(values.size());
    for (double v : values) {
        if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(space_size))
            throw std::runtime_error(what + ": '" + format_number(v) +
                                     "' is not a point index of the space");
        indices.push_back(static_cast<std::size_t>(v));
    }
    return indices;
}

double lp_distance(const double* a, const double* b, std::size_t dim, double p) {
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    }
    if (std::isinf(p)) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i) s = std::max(s, std::abs(a[i] - b[i]));
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += std::pow(std::abs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

// --- pmse-eval ---------------------------------------------------------

struct PmseEvalArgs {
    std::string base_path, targets_path;
    std::string metric = "euclidean";
    std::string data_path;
    double beta = 1.0;
    std::optional<std::string> out;
};

void run_pmse_eval(const PmseEvalArgs& args) {
    std::vector<std::vector<double>> rows;
    if (args.metric == "euclidean") {
        const CsvTable base = read_csv(args.base_path);
        const CsvTable targets = read_csv(args.targets_path);
        const std::size_t d = coordinate_dim(base);
        if (coordinate_dim(targets) != d || targets.columns() != d)
            throw std::runtime_error("targets must carry exactly the base's coordinate "
                                     "columns x0..x" + std::to_string(d - 1));
        const std::vector<double> values = column_values(base, "value");

        // one space over base points followed by targets, so base indices are
        // 0..B-1 and target i sits at B+i
        std::vector<double> coords = coordinate_rows(base);
        const std::vector<double> target_coords = coordinate_rows(targets);
        coords.insert(coords.end(), target_coords.begin(), target_coords.end());
        const std::size_t b = base.rows.size(), t = targets.rows.size();
        const MetricAccessor space = MetricAccessor::from_coordinates(b + t, d, coords);

        std::vector<std::size_t> base_idx(b), target_idx(t);
        for (std::size_t i = 0; i < b; ++i) base_idx[i] = i;
        for (std::size_t i = 0; i < t; ++i) target_idx[i] = b + i;
        const PmseModel model = pmse_fit(space, base_idx, values, args.beta);
        const std::vector<double> out = pmse_extend_all(space, model, target_idx);
        for (std::size_t i = 0; i < t; ++i)
            rows.push_back({static_cast<double>(i), out[i]});
    } else {
        if (args.data_path.empty())
            throw std::runtime_error("matrix mode needs --data with the distance matrix");
        const MetricAccessor space = load_space(args.data_path, "matrix");
        const CsvTable base = read_csv(args.base_path);
        const CsvTable targets = read_csv(args.targets_path);
        const std::vector<std::size_t> base_idx =
            indices_from_column(column_values(base, "index"), space.size(), args.base_path);
        const std::vector<std::size_t> target_idx =
            indices_from_column(column_values(targets, "index"), space.size(),
                                args.targets_path);
        const PmseModel model =
            pmse_fit(space, base_idx, column_values(base, "value"), args.beta);
        const std::vector<double> out = pmse_extend_all(space, model, target_idx);
        for (std::size_t i = 0; i < target_idx.size(); ++i)
            rows.push_back({static_cast<double>(target_idx[i]), out[i]});
    }

    ordered_json config{{"base", args.base_path},
                        {"targets", args.targets_path},
                        {"metric", args.metric},
                        {"beta", args.beta}};
    if (!args.data_path.empty()) config["data"] = args.data_path;
    emit_csv(args.out, "pmse-eval", config, {"index", "value"}, rows);
}

// --- learn / predict ----------------------------------------------------

struct LearnArgs {
    std::string data_path;
    std::string labels_path;
    std::string metric = "euclidean";
    double beta = 1.0;
    std::optional<double> gamma, epsilon, L;
    std::uint64_t seed = 0;
    std::string out;
};

void run_learn(const LearnArgs& args) {
    LearnerConfig cfg;
    cfg.beta = args.beta;
    cfg.gamma = args.gamma;
    cfg.epsilon = args.epsilon;
    cfg.L = args.L;
    cfg.seed = args.seed;

    ordered_json model_json;
    model_json["mode"] = args.metric;
    model_json["beta"] = args.beta;

    if (args.metric == "euclidean") {
        if (!args.labels_path.empty())
            throw std::runtime_error("--labels applies to matrix mode; euclidean samples carry a label column");
        const CsvTable data = read_csv(args.data_path);
        const std::size_t d = coordinate_dim(data);
        const std::vector<double> labels = column_values(data, "label");
        const MetricAccessor space =
            MetricAccessor::from_coordinates(data.rows.size(), d, coordinate_rows(data));
        LabeledSample sample;
        sample.points.resize(data.rows.size());
        for (std::size_t i = 0; i < sample.points.size(); ++i) sample.points[i] = i;
        sample.labels = labels;

        const Hypothesis h = learn(space, sample, cfg);
        std::vector<std::vector<double>> base_coords;
        for (std::size_t p : h.model.base) {
            std::vector<double> row(d);
            for (std::size_t i = 0; i < d; ++i) row[i] = space.coordinates()[p * d + i];
            base_coords.push_back(std::move(row));
        }
        model_json["norm_p"] = space.norm_p();
        model_json["base_coordinates"] = base_coords;
        model_json["base_values"] = h.model.values;
        model_json["gamma"] = h.gamma;
        model_json["net_radius"] = h.net_radius;
        model_json["discarded"] = h.discarded;
        model_json["empirical_slope"] = h.empirical_slope;
        model_json["degenerate"] = h.model.degenerate;
        model_json["seed"] = h.seed;
    } else {
        if (args.labels_path.empty())
            throw std::runtime_error("matrix mode needs --labels with index,label rows");
        const MetricAccessor space = load_space(args.data_path, "matrix");
        const CsvTable labels = read_csv(args.labels_path);
        LabeledSample sample;
        sample.points = indices_from_column(column_values(labels, "index"), space.size(),
                                            args.labels_path);
        sample.labels = column_values(labels, "label");

        const Hypothesis h = learn(space, sample, cfg);
        model_json["base_indices"] = h.model.base;
        model_json["base_values"] = h.model.values;
        model_json["gamma"] = h.gamma;
        model_json["net_radius"] = h.net_radius;
        model_json["discarded"] = h.discarded;
        model_json["empirical_slope"] = h.empirical_slope;
        model_json["degenerate"] = h.model.degenerate;
        model_json["seed"] = h.seed;
    }
    model_json["version"] = kVersion;

    std::ofstream file(args.out);
    if (!file) throw std::runtime_error("cannot write " + args.out);
    file << model_json.dump(2) << "\n";
    std::cerr << "model written to " << args.out << "\n";
}

struct PredictArgs {
    std::string model_path, targets_path;
    std::string data_path;
    std::optional<std::string> out;
};

void run_predict(const PredictArgs& args) {
    std::ifstream model_file(args.model_path);
    if (!model_file) throw std::runtime_error("cannot open " + args.model_path);
    ordered_json model_json;
    model_file >> model_json;

    PmseModel model;
    model.beta = model_json.at("beta").get<double>();
    model.values = model_json.at("base_values").get<std::vector<double>>();
    model.degenerate = model_json.at("degenerate").get<bool>();
    model.base.resize(model.values.size());
    for (std::size_t i = 0; i < model.base.size(); ++i) model.base[i] = i;

    const std::string mode = model_json.at("mode").get<std::string>();
    std::vector<std::vector<double>> rows;
    if (mode == "euclidean") {
        const auto base_coords =
            model_json.at("base_coordinates").get<std::vector<std::vector<double>>>();
        const double p = model_json.at("norm_p").get<double>();
        if (base_coords.empty()) throw std::runtime_error("model has no base points");
        const std::size_t d = base_coords[0].size();
        const CsvTable targets = read_csv(args.targets_path);
        if (coordinate_dim(targets) != d || targets.columns() != d)
            throw std::runtime_error("targets must carry coordinate columns x0..x" +
                                     std::to_string(d - 1));
        std::vector<double> distances(base_coords.size());
        for (std::size_t i = 0; i < targets.rows.size(); ++i) {
            for (std::size_t j = 0; j < base_coords.size(); ++j)
                distances[j] =
                    lp_distance(targets.rows[i].data(), base_coords[j].data(), d, p);
            rows.push_back({static_cast<double>(i), pmse_eval_at(model, distances)});
        }
    } else if (mode == "matrix") {
        if (args.data_path.empty())
            throw std::runtime_error("matrix-mode models need --data with the distance matrix");
        const MetricAccessor space = load_space(args.data_path, "matrix");
        const auto base_idx = model_json.at("base_indices").get<std::vector<std::size_t>>();
        for (std::size_t b : base_idx)
            if (b >= space.size())
                throw std::runtime_error("model base index out of range of the matrix");
        const CsvTable targets = read_csv(args.targets_path);
        const std::vector<std::size_t> target_idx = indices_from_column(
            column_values(targets, "index"), space.size(), args.targets_path);
        std::vector<double> distances(base_idx.size());
        for (std::size_t x : target_idx) {
            for (std::size_t j = 0; j < base_idx.size(); ++j)
                distances[j] = space.distance(x, base_idx[j]);
            rows.push_back({static_cast<double>(x), pmse_eval_at(model, distances)});
        }
    } else {
        throw std::runtime_error("unknown model mode '" + mode + "'");
    }

    ordered_json config{{"model", args.model_path}, {"targets", args.targets_path}};
    if (!args.data_path.empty()) config["data"] = args.data_path;
    emit_csv(args.out, "predict", config, {"index", "value"}, rows);
}

// --- bracket-check ------------------------------------------------------

struct BracketArgs {
    std::string data_path, f_path, mu_path;
    std::string metric = "euclidean";
    double epsilon = 0.1, L = 1.0, beta = 1.0;
    std::optional<std::string> out;
};

void run_bracket_check(const BracketArgs& args) {
    const MetricAccessor space = load_space(args.data_path, args.metric);
    const std::vector<double> f = column_values(read_csv(args.f_path), "value");
    const std::vector<double> weights = column_values(read_csv(args.mu_path), "weight");
    if (f.size() != space.size() || weights.size() != space.size())
        throw std::runtime_error("--f and --mu must list one row per data point");
    const DiscreteMeasure mu{weights};

    const BracketParams params = bracket_params(args.epsilon, args.L, args.beta);
    const Bracket bracket = bracket_for_function(space, mu, f, params);
    const BracketReport report = verify_bracket(bracket, f, mu);
    const std::vector<double> masses = level_masses(bracket, mu);
    std::vector<std::size_t> cell_counts(static_cast<std::size_t>(params.K) + 1, 0);
    for (int level : bracket.level) ++cell_counts[static_cast<std::size_t>(level) - 1];

    ordered_json result;
    result["contains"] = report.contains;
    result["width"] = report.width;
    result["epsilon"] = params.epsilon;
    result["K"] = params.K;
    result["eps_prime"] = params.eps_prime;
    result["net_radius"] = params.net_radius;
    result["net_size"] = bracket.net.centers.size();
    result["level_cells"] = cell_counts;
    result["level_mass"] = masses;
    result["version"] = kVersion;

    if (args.out) {
        std::ofstream file(*args.out);
        if (!file) throw std::runtime_error("cannot write " + *args.out);
        file << result.dump(2) << "\n";
    } else {
        std::cout << result.dump(2) << "\n";
    }
}

// --- experiments --------------------------------------------------------

struct ExamplesArgs {
    int which = 1;
    double beta = 0.5;
    std::vector<std::size_t> resolutions;
    std::optional<std::string> out;
};

void run_examples(const ExamplesArgs& args) {
    const auto table = example_slope_table(args.which, args.beta, args.resolutions);
    std::vector<std::vector<double>> rows;
    for (const auto& row : table)
        rows.push_back({static_cast<double>(row.resolution), row.avg_slope,
                        row.weak_avg_slope, row.lip_weak_avg_slope});
    ordered_json config{{"which", args.which}, {"beta", args.beta}};
    config["resolutions"] = args.resolutions;
    if (args.which == 1) config["avg_slope_limit"] = example1_avg_slope_limit(args.beta);
    emit_csv(args.out, "examples", config,
             {"resolution", "avg_slope", "weak_avg_slope", "lip_weak_avg_slope"}, rows);
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    GeneratorSpec spec;
    const std::size_t colon = text.find(':');
    spec.kind = text.substr(0, colon);
    if (colon == std::string::npos) return spec;
    std::istringstream pairs(text.substr(colon + 1));
    std::string item;
    while (std::getline(pairs, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("generator spec entries look like key=value, got '" +
                                     item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            if (key == "beta")
                spec.beta = std::stod(value);
            else if (key == "resolution")
                spec.resolution = std::stoul(value);
            else if (key == "epsilon")
                spec.epsilon = std::stod(value);
            else if (key == "L")
                spec.L = std::stod(value);
            else if (key == "seed")
                spec.seed = std::stoull(value);
            else
                throw std::runtime_error("unknown generator key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("generator key '" + key + "' needs a numeric value");
        }
    }
    return spec;
}

struct SweepArgs {
    std::string gen = "grid-uniform";
    std::vector<std::size_t> n_grid;
    std::size_t trials = 5;
    std::uint64_t seed = 1;
    std::optional<std::string> out;
};

void run_risk_sweep(const SweepArgs& args) {
    const GeneratorSpec spec = parse_generator_spec(args.gen);
    const Instance inst = build_instance(spec);
    const SweepResult result = risk_sweep(inst, spec.beta, args.n_grid, args.trials, args.seed);

    std::vector<std::vector<double>> rows;
    for (const auto& row : result.rows)
        rows.push_back({static_cast<double>(row.n), static_cast<double>(row.trial), row.gamma,
                        row.train_risk, row.test_risk});

    ordered_json config{{"gen", args.gen},
                        {"trials", args.trials},
                        {"seed", args.seed},
                        {"n", args.n_grid}};
    config["fit"] = {{"defined", result.fit.defined},
                     {"slope", result.fit.slope},
                     {"slope_stderr", result.fit.slope_stderr},
                     {"intercept", result.fit.intercept},
                     {"r2", result.fit.r2}};
    config["mean_test_risk"] = result.mean_test_risk;
    config["interpolation_violations"] = result.interpolation_violations;
    emit_csv(args.out, "risk-sweep", config, {"n", "trial", "gamma", "train_risk", "test_risk"},
             rows);

    if (result.fit.defined)
        std::cerr << "fitted log-log slope " << result.fit.slope << " (stderr "
                  << result.fit.slope_stderr << ", r2 " << result.fit.r2 << "), "
                  << result.interpolation_violations << " interpolation violations\n";
    else
        std::cerr << "slope undefined (degenerate risks), " << result.interpolation_violations
                  << " interpolation violations\n";
}

struct LowerBoundArgs {
    double epsilon = 0.1, L = 8.0, beta = 1.0;
    std::size_t n = 64, trials = 50, resolution = 1024;
    std::uint64_t seed = 1;
    std::optional<std::string> out;
};

void run_lowerbound(const LowerBoundArgs& args) {
    const Instance grid = uniform_grid_instance(args.resolution);
    const LowerBoundDesign design =
        lowerbound_design(grid.space, args.epsilon, args.L, args.beta);
    const LowerBoundTrialResult result = lowerbound_trial(
        grid.space, args.epsilon, args.L, args.beta, args.n, args.trials, args.seed);

    ordered_json summary;
    summary["mean_risk"] = result.mean_risk;
    summary["std_err"] = result.std_err;
    summary["n"] = args.n;
    summary["trials"] = args.trials;
    summary["k_size"] = design.k_set.size();
    summary["packing_size"] = design.packing_size;
    summary["diam"] = design.diam;
    summary["epsilon_over_8"] = args.epsilon / 8.0;
    std::cout << summary.dump() << "\n";

    if (args.out) {
        std::vector<std::vector<double>> rows;
        for (std::size_t t = 0; t < result.risks.size(); ++t)
            rows.push_back({static_cast<double>(t), result.risks[t]});
        write_csv_file(*args.out, {"trial", "risk"}, rows);
        ordered_json config{{"epsilon", args.epsilon}, {"L", args.L},
                            {"beta", args.beta},       {"n", args.n},
                            {"trials", args.trials},   {"resolution", args.resolution},
                            {"seed", args.seed}};
        config["summary"] = summary;
        write_sidecar(*args.out, "lowerbound", config);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Learning and verification toolkit for average-smooth functions "
                 "on finite metric spaces"};
    app.require_subcommand(1);

    PmseEvalArgs pmse_args;
    auto* pmse = app.add_subcommand(
        "pmse-eval", "Extend values from a base set to target points by the pointwise "
                     "minimal smooth extension");
    pmse->add_option("--base", pmse_args.base_path,
                     "CSV of base points (x0..,value) or (index,value) in matrix mode")
        ->required()->check(CLI::ExistingFile);
    pmse->add_option("--targets", pmse_args.targets_path,
                     "CSV of evaluation points (x0..) or (index) in matrix mode")
        ->required()->check(CLI::ExistingFile);
    pmse->add_option("--beta", pmse_args.beta, "smoothness exponent in (0,1]")->required();
    pmse->add_option("--metric", pmse_args.metric, "euclidean or matrix")
        ->check(CLI::IsMember({"euclidean", "matrix"}));
    pmse->add_option("--data", pmse_args.data_path, "distance matrix CSV (matrix mode)")
        ->check(CLI::ExistingFile);
    std::string pmse_out;
    auto* pmse_out_opt = pmse->add_option(
        "--out", pmse_out, "output CSV path (stdout otherwise); writes a .json sidecar");

    LearnArgs learn_args;
    auto* learn_cmd = app.add_subcommand(
        "learn", "Fit a smooth hypothesis to a labeled sample and store it as model.json");
    learn_cmd->add_option("--data", learn_args.data_path,
                          "sample CSV (x0..,label) or the distance matrix in matrix mode")
        ->required()->check(CLI::ExistingFile);
    learn_cmd->add_option("--labels", learn_args.labels_path,
                          "matrix mode: CSV of sample entries (index,label)")
        ->check(CLI::ExistingFile);
    learn_cmd->add_option("--metric", learn_args.metric, "euclidean or matrix")
        ->check(CLI::IsMember({"euclidean", "matrix"}));
    learn_cmd->add_option("--beta", learn_args.beta, "smoothness exponent in (0,1]")
        ->required();
    double gamma_in = 0, eps_in = 0, L_in = 0;
    auto* gamma_opt = learn_cmd->add_option("--gamma", gamma_in, "discard fraction in (0,1)");
    auto* eps_opt = learn_cmd->add_option("--epsilon", eps_in,
                                          "accuracy target; derives gamma together with --L");
    auto* L_opt = learn_cmd->add_option("--L", L_in, "smoothness budget for --epsilon");
    gamma_opt->excludes(eps_opt);
    learn_cmd->add_option("--seed", learn_args.seed, "seed recorded in the model");
    learn_cmd->add_option("--out", learn_args.out, "model JSON path")->required();

    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "Evaluate a stored model at target points");
    predict->add_option("--model", predict_args.model_path, "model JSON from learn")
        ->required()->check(CLI::ExistingFile);
    predict->add_option("--targets", predict_args.targets_path,
                        "CSV of points (x0..) or (index) for matrix-mode models")
        ->required()->check(CLI::ExistingFile);
    predict->add_option("--data", predict_args.data_path,
                        "distance matrix CSV (matrix-mode models)")
        ->check(CLI::ExistingFile);
    std::string predict_out;
    auto* predict_out_opt =
        predict->add_option("--out", predict_out, "output CSV path (stdout otherwise)");

    BracketArgs bracket_args;
    auto* bracket = app.add_subcommand(
        "bracket-check", "Build the envelope pair for a function and verify containment "
                         "and width");
    bracket->add_option("--data", bracket_args.data_path, "point set CSV")
        ->required()->check(CLI::ExistingFile);
    bracket->add_option("--f", bracket_args.f_path, "function values CSV (header: value)")
        ->required()->check(CLI::ExistingFile);
    bracket->add_option("--mu", bracket_args.mu_path, "measure weights CSV (header: weight)")
        ->required()->check(CLI::ExistingFile);
    bracket->add_option("--epsilon", bracket_args.epsilon, "accuracy in (0, 1/4)")->required();
    bracket->add_option("--L", bracket_args.L, "slope budget")->required();
    bracket->add_option("--beta", bracket_args.beta, "smoothness exponent in (0,1]")
        ->required();
    bracket->add_option("--metric", bracket_args.metric, "euclidean or matrix")
        ->check(CLI::IsMember({"euclidean", "matrix"}));
    std::string bracket_out;
    auto* bracket_out_opt =
        bracket->add_option("--out", bracket_out, "report JSON path (stdout otherwise)");

    ExamplesArgs examples_args;
    auto* examples = app.add_subcommand(
        "examples", "Slope statistics of the singular-density step-function families "
                    "across grid resolutions");
    examples->add_option("--which", examples_args.which, "family: 1 or 2")
        ->required()->check(CLI::IsMember({1, 2}));
    examples->add_option("--beta", examples_args.beta, "smoothness exponent in (0,1)")
        ->required();
    examples->add_option("--resolution", examples_args.resolutions,
                         "comma-separated even grid sizes")
        ->required()->delimiter(',');
    std::string examples_out;
    auto* examples_out_opt =
        examples->add_option("--out", examples_out, "output CSV path (stdout otherwise)");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand(
        "risk-sweep", "Learning-curve sweep: risk vs training-set size with a log-log fit");
    sweep->add_option("--gen", sweep_args.gen,
                      "target instance, kind[:key=value,...] with kind grid-uniform, "
                      "example1, example2 or lowerbound and keys beta, resolution, epsilon, "
                      "L, seed")
        ->required();
    sweep->add_option("--n", sweep_args.n_grid, "comma-separated training sizes (>= 4)")
        ->required()->delimiter(',');
    sweep->add_option("--trials", sweep_args.trials, "trials per size")->required();
    sweep->add_option("--seed", sweep_args.seed, "sweep seed");
    std::string sweep_out;
    auto* sweep_out_opt =
        sweep->add_option("--out", sweep_out, "output CSV path (stdout otherwise)");

    LowerBoundArgs lb_args;
    auto* lb = app.add_subcommand(
        "lowerbound", "Hard-target experiment: mean learner risk on the coin-labeled "
                      "packing measure");
    lb->add_option("--epsilon", lb_args.epsilon, "accuracy in (0,1)")->required();
    lb->add_option("--L", lb_args.L, "slope budget (>= 8/diam)")->required();
    lb->add_option("--beta", lb_args.beta, "smoothness exponent in (0,1]")->required();
    lb->add_option("--n", lb_args.n, "training sample size")->required();
    lb->add_option("--trials", lb_args.trials, "number of target draws")->required();
    lb->add_option("--resolution", lb_args.resolution, "grid size of the unit-interval space");
    lb->add_option("--seed", lb_args.seed, "trial seed");
    std::string lb_out;
    auto* lb_out_opt = lb->add_option("--out", lb_out, "per-trial risk CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pmse->parsed()) {
            if (*pmse_out_opt) pmse_args.out = pmse_out;
            run_pmse_eval(pmse_args);
        }
        if (learn_cmd->parsed()) {
            if (*gamma_opt) learn_args.gamma = gamma_in;
            if (*eps_opt) learn_args.epsilon = eps_in;
            if (*L_opt) learn_args.L = L_in;
            run_learn(learn_args);
        }
        if (predict->parsed()) {
            if (*predict_out_opt) predict_args.out = predict_out;
            run_predict(predict_args);
        }
        if (bracket->parsed()) {
            if (*bracket_out_opt) bracket_args.out = bracket_out;
            run_bracket_check(bracket_args);
        }
        if (examples->parsed()) {
            if (*examples_out_opt) examples_args.out = examples_out;
            run_examples(examples_args);
        }
        if (sweep->parsed()) {
            if (*sweep_out_opt) sweep_args.out = sweep_out;
            run_risk_sweep(sweep_args);
        }
        if (lb->parsed()) {
            if (*lb_out_opt) lb_args.out = lb_out;
            run_lowerbound(lb_args);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
