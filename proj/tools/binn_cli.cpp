// binn: command-line front end for data generation, fitting, evaluation,
// GP comparison, scaling studies and active-learning campaigns.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "binn/active.hpp"
#include "binn/gp.hpp"
#include "binn/json_io.hpp"
#include "binn/model.hpp"
#include "binn/problems.hpp"

#ifndef BINN_VERSION
#define BINN_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace binn;

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string out;
    bool quiet = false;
};

struct Manifest {
    std::string command;
    Json config = nullptr;
    Json seeds = Json::object();
    Json inputs = Json::array();
    Json outputs = Json::array();
    Json timings = Json::object();
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t base_seed(const Globals& g) { return g.seed.value_or(0); }

fs::path require_out(const Globals& g) {
    if (g.out.empty()) throw InvalidArgument("--out is required");
    return g.out;
}

fs::path manifest_path(const fs::path& out, bool is_directory) {
    return is_directory ? out / "manifest.json" : fs::path(out.string() + ".manifest.json");
}

void write_manifest(const Globals& g, const Manifest& m, const fs::path& path, const std::vector<std::string>& argv) {
    Json j;
    j["command"] = m.command;
    j["argv"] = argv;
    j["config"] = m.config;
    Json seeds = m.seeds;
    seeds["base"] = base_seed(g);
    j["seeds"] = seeds;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["timings"] = m.timings;
    j["version"] = BINN_VERSION;
    write_json(j, path);
}

void ensure_parent(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

/// Model config from --config, with the init seed taken from --seed when given.
ModelConfig model_config(const Globals& g, const ModelConfig& fallback = {}) {
    ModelConfig c = g.config.empty() ? fallback : load_config(g.config);
    if (g.seed) c.seed = derive_seed(*g.seed, "init");
    c.validate();
    return c;
}

void log(const Globals& g, const std::string& msg) {
    if (!g.quiet) std::cerr << msg << '\n';
}

// Column selection ------------------------------------------------------------

struct TargetSpec {
    std::size_t n_targets = 1;
    std::string target_column;  // name or zero-based index; empty = last column
};

std::size_t column_index(const CsvTable& t, const std::string& key) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == key) return i;
    }
    try {
        std::size_t pos = 0;
        const auto idx = std::stoul(key, &pos);
        if (pos == key.size() && idx < t.header.size()) return idx;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("no column '" + key + "'");
}

/// Input columns are every column before the trailing target block.
std::vector<std::size_t> input_columns(const CsvTable& t, std::size_t n_targets) {
    if (n_targets < 1 || n_targets >= t.header.size()) {
        throw InvalidArgument("CSV with " + std::to_string(t.header.size()) + " columns cannot hold " +
                              std::to_string(n_targets) + " target column(s) and at least one input");
    }
    std::vector<std::size_t> cols(t.header.size() - n_targets);
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
    return cols;
}

std::size_t target_column(const CsvTable& t, const TargetSpec& spec) {
    const auto first_target = t.header.size() - spec.n_targets;
    if (spec.target_column.empty()) return t.header.size() - 1;
    const auto idx = column_index(t, spec.target_column);
    if (idx < first_target) throw InvalidArgument("column '" + spec.target_column + "' is an input column");
    return idx;
}

Dataset table_dataset(const CsvTable& t, const TargetSpec& spec) {
    return dataset_from_table(t, input_columns(t, spec.n_targets), target_column(t, spec));
}

/// Dataset for a model with `dims` inputs; the CSV must hold exactly dims + n_targets columns.
Dataset model_dataset(const CsvTable& t, std::size_t dims, const TargetSpec& spec) {
    if (t.header.size() != dims + spec.n_targets) {
        throw DimensionMismatch("model has " + std::to_string(dims) + " inputs but the CSV has " +
                                std::to_string(t.header.size()) + " columns (expected " +
                                std::to_string(dims + spec.n_targets) + ")");
    }
    return table_dataset(t, spec);
}

fs::path suffixed(const fs::path& p, const std::string& suffix) {
    auto out = p;
    out.replace_filename(p.stem().string() + "." + suffix + p.extension().string());
    return out;
}

// gen -----------------------------------------------------------------------

struct GenArgs {
    std::string problem;
    std::size_t n = 60;
    bool noise_free = false;
    std::size_t grid = 16;
    std::vector<double> p{0.5};
    problems::HeatSpec heat;
};

void cmd_gen(const Globals& g, const GenArgs& a, Manifest& m) {
    const auto out = require_out(g);
    ensure_parent(out);
    const auto start = std::chrono::steady_clock::now();
    const auto data_seed = derive_seed(base_seed(g), "data");
    m.seeds["data"] = data_seed;
    if (a.problem == "synthetic1d") {
        if (a.n < 1) throw InvalidArgument("--n must be >= 1");
        save_csv(problems::synthetic_1d(a.n, data_seed, !a.noise_free), out, {"x", "y"});
        m.config = {{"problem", a.problem}, {"n", a.n}, {"noise", !a.noise_free}};
    } else if (a.problem == "poisson") {
        if (a.p.empty()) throw InvalidArgument("--p needs at least one value");
        Dataset all = Dataset::empty(4);
        for (double p : a.p) all = all.concat(problems::poisson_dataset(a.grid, p));
        save_csv(all, out, {"x1", "x2", "x3", "p", "u"});
        m.config = {{"problem", a.problem}, {"grid", a.grid}, {"p", a.p}};
    } else if (a.problem == "heat") {
        save_csv(problems::heat_solve(a.heat), out, {"x", "y", "t", "k", "P", "u"});
        auto meta_path = out;
        meta_path.replace_extension(".meta.json");
        write_json(problems::heat_metadata(a.heat), meta_path);
        m.outputs.push_back(meta_path.string());
        m.config = problems::heat_metadata(a.heat);
    } else {
        throw InvalidArgument("unknown problem '" + a.problem + "'");
    }
    m.outputs.push_back(out.string());
    m.timings["generate_seconds"] = seconds_since(start);
    log(g, "wrote " + out.string());
}

// fit / predict / eval ----------------------------------------------------------

struct FitArgs {
    std::string train;
    TargetSpec target;
    bool all_targets = false;
};

void cmd_fit(const Globals& g, const FitArgs& a, Manifest& m) {
    const auto out = require_out(g);
    ensure_parent(out);
    const auto config = model_config(g);
    m.config = config_to_json(config);
    m.seeds["init"] = config.seed;
    m.inputs.push_back(a.train);
    const auto table = read_csv_table(a.train);

    std::vector<std::size_t> targets;
    if (a.all_targets) {
        input_columns(table, a.target.n_targets);
        for (auto c = table.header.size() - a.target.n_targets; c < table.header.size(); ++c) targets.push_back(c);
    } else {
        targets.push_back(target_column(table, a.target));
    }
    Json fit_seconds = Json::object();
    for (auto col : targets) {
        const auto data = dataset_from_table(table, input_columns(table, a.target.n_targets), col);
        const auto path = a.all_targets ? suffixed(out, table.header[col]) : out;
        const auto start = std::chrono::steady_clock::now();
        FitTrace trace;
        const auto model = fit(config, data, {}, &trace);
        const double secs = seconds_since(start);
        save_model(model, path);
        m.outputs.push_back(path.string());
        fit_seconds[path.filename().string()] = secs;
        log(g, "fit " + table.header[col] + ": " + std::to_string(trace.sweeps_run) + " sweeps, train rmse " +
                   format_double(training_rmse(model, data)) + ", " + std::to_string(secs) + " s -> " + path.string());
    }
    if (a.all_targets) {
        m.timings["fit_seconds"] = fit_seconds;
    } else {
        m.timings["fit_seconds"] = fit_seconds.begin().value();
    }
}

struct PredictArgs {
    std::string model;
    std::string input;
    std::size_t n_targets = 1;
    bool include_noise = false;
};

void cmd_predict(const Globals& g, const PredictArgs& a, Manifest& m) {
    const auto out = require_out(g);
    ensure_parent(out);
    const auto model = load_model(a.model);
    const auto table = read_csv_table(a.input);
    m.inputs = {a.model, a.input};
    const auto dims = model.dims();
    if (table.header.size() != dims && table.header.size() != dims + a.n_targets) {
        throw DimensionMismatch("model has " + std::to_string(dims) + " inputs but the CSV has " +
                                std::to_string(table.header.size()) + " columns");
    }
    const Matrix x = table.values.leftCols(static_cast<Eigen::Index>(dims));
    const auto start = std::chrono::steady_clock::now();
    const auto pred = predict_batch(model, x, a.include_noise);
    m.timings["predict_seconds"] = seconds_since(start);

    CsvTable result;
    result.header.assign(table.header.begin(), table.header.begin() + static_cast<std::ptrdiff_t>(dims));
    result.header.insert(result.header.end(), {"mean", "variance", "std"});
    result.values.resize(x.rows(), static_cast<Eigen::Index>(dims) + 3);
    result.values.leftCols(static_cast<Eigen::Index>(dims)) = x;
    result.values.col(static_cast<Eigen::Index>(dims)) = pred.means;
    result.values.col(static_cast<Eigen::Index>(dims) + 1) = pred.variances;
    result.values.col(static_cast<Eigen::Index>(dims) + 2) = pred.variances.cwiseSqrt();
    write_csv_table(result, out);
    m.config = {{"include_noise", a.include_noise}};
    m.outputs.push_back(out.string());
    log(g, "wrote " + std::to_string(x.rows()) + " predictions to " + out.string());
}

struct EvalArgs {
    std::string model;
    std::string test;
    std::string manifest;
    TargetSpec target;
};

Json recorded_fit_seconds(const fs::path& model_path, const std::string& manifest) {
    const fs::path path = manifest.empty() ? manifest_path(model_path, false) : fs::path(manifest);
    if (!fs::exists(path)) return nullptr;
    const auto j = read_json(path);
    if (!j.contains("timings") || !j["timings"].contains("fit_seconds")) return nullptr;
    const auto& fs_json = j["timings"]["fit_seconds"];
    if (fs_json.is_number()) return fs_json;
    const auto key = model_path.filename().string();
    return fs_json.contains(key) ? fs_json[key] : Json(nullptr);
}

void cmd_eval(const Globals& g, const EvalArgs& a, Manifest& m) {
    const auto out = require_out(g);
    ensure_parent(out);
    const auto model = load_model(a.model);
    const auto data = model_dataset(read_csv_table(a.test), model.dims(), a.target);
    m.inputs = {a.model, a.test};
    if (data.is_empty()) throw InvalidArgument("test set is empty");
    const auto pred = predict_batch(model, data.inputs(), false);
    Json metrics;
    metrics["rmse"] = rmse(pred.means, data.targets());
    metrics["mean_predictive_std"] = pred.variances.cwiseSqrt().mean();
    metrics["n"] = data.size();
    metrics["fit_seconds"] = recorded_fit_seconds(a.model, a.manifest);
    write_json(metrics, out);
    m.outputs.push_back(out.string());
    if (!g.quiet) std::cout << metrics.dump(2) << '\n';
}

// compare-gp -------------------------------------------------------------------

struct CompareArgs {
    std::string train;
    std::string test;
    std::string kernel = "binn";
    double signal_variance = 1.0;
    double gp_length_scale = 0.5;
    std::size_t gp_cap = 10000;
    TargetSpec target;
};

void cmd_compare_gp(const Globals& g, const CompareArgs& a, Manifest& m) {
    const auto out = require_out(g);
    ensure_parent(out);
    const auto config = model_config(g);
    m.config = config_to_json(config);
    m.config["kernel"] = a.kernel;
    m.seeds["init"] = config.seed;
    m.inputs = {a.train, a.test};
    const auto train = table_dataset(read_csv_table(a.train), a.target);
    const auto test = model_dataset(read_csv_table(a.test), train.dims(), a.target);
    if (test.is_empty()) throw InvalidArgument("test set is empty");
    if (train.size() > a.gp_cap) {
        throw InvalidArgument("GP training set of " + std::to_string(train.size()) + " exceeds the cap of " +
                              std::to_string(a.gp_cap));
    }

    auto start = std::chrono::steady_clock::now();
    const auto model = fit(config, train);
    m.timings["binn_fit_seconds"] = seconds_since(start);
    const auto binn = predict_batch(model, test.inputs(), false);

    start = std::chrono::steady_clock::now();
    GpPrediction gp;
    if (a.kernel == "binn") {
        gp = gp_fit_predict(BinnProductKernel{model.bases, model.config.prior_variance},
                            Dataset(model.scaler.transform(train.inputs()), train.targets()),
                            model.scaler.transform(test.inputs()), config.noise_variance, false, config.jitter);
    } else if (a.kernel == "rbf") {
        gp = gp_fit_predict(RbfKernel{a.signal_variance, a.gp_length_scale}, train, test.inputs(),
                            config.noise_variance, false, config.jitter);
        m.config["gp_signal_variance"] = a.signal_variance;
        m.config["gp_length_scale"] = a.gp_length_scale;
    } else {
        throw InvalidArgument("unknown kernel '" + a.kernel + "' (expected binn or rbf)");
    }
    m.timings["gp_fit_seconds"] = seconds_since(start);

    Json r;
    r["kernel"] = a.kernel;
    r["n_train"] = train.size();
    r["n_test"] = test.size();
    r["binn_rmse"] = rmse(binn.means, test.targets());
    r["gp_rmse"] = rmse(gp.means, test.targets());
    r["rmse_abs_diff"] = std::abs(r["binn_rmse"].get<double>() - r["gp_rmse"].get<double>());
    r["max_abs_mean_diff"] = (binn.means - gp.means).cwiseAbs().maxCoeff();
    r["max_abs_std_diff"] = (binn.variances.cwiseSqrt() - gp.variances.cwiseSqrt()).cwiseAbs().maxCoeff();
    write_json(r, out);
    m.outputs.push_back(out.string());
    if (!g.quiet) std::cout << r.dump(2) << '\n';
}

// scale ----------------------------------------------------------------------

struct ScaleArgs {
    std::string problem = "synthetic1d";
    std::vector<std::size_t> ns;
    std::size_t gp_cap = 10000;
    std::size_t test_n = 1000;
    double gp_length_scale = 0.5;
};

void cmd_scale(const Globals& g, const ScaleArgs& a, Manifest& m) {
    const auto out = require_out(g);
    ensure_parent(out);
    if (a.problem != "synthetic1d") throw InvalidArgument("scale supports the synthetic1d problem");
    if (a.ns.empty()) throw InvalidArgument("--n needs at least one value");
    if (!std::is_sorted(a.ns.begin(), a.ns.end()) || a.ns.front() < 1) {
        throw InvalidArgument("--n values must be positive and ascending");
    }
    auto defaults = ModelConfig{};
    defaults.basis_counts = {20};
    defaults.length_scales = {0.25};
    defaults.sweeps = 1;
    const auto config = model_config(g, defaults);
    m.config = config_to_json(config);
    m.config["gp_cap"] = a.gp_cap;
    m.seeds["init"] = config.seed;
    const auto test = problems::synthetic_1d(a.test_n, derive_seed(base_seed(g), "test"), false);

    std::ofstream os(out);
    if (!os) throw InvalidArgument("cannot write " + out.string());
    os << "model,n,seconds,rmse\n";
    for (auto n : a.ns) {
        const auto data = problems::synthetic_1d(n, derive_seed(base_seed(g), "data-" + std::to_string(n)));
        auto start = std::chrono::steady_clock::now();
        const auto model = fit(config, data);
        double secs = seconds_since(start);
        const double err = rmse(predict_batch(model, test.inputs(), false).means, test.targets());
        os << "binn," << n << ',' << format_double(secs) << ',' << format_double(err) << '\n';
        log(g, "binn n=" + std::to_string(n) + " " + std::to_string(secs) + " s");
        if (n > a.gp_cap) continue;
        start = std::chrono::steady_clock::now();
        const auto gp = gp_fit_predict(RbfKernel{1.0, a.gp_length_scale}, data, test.inputs(), config.noise_variance);
        secs = seconds_since(start);
        os << "gp," << n << ',' << format_double(secs) << ',' << format_double(rmse(gp.means, test.targets()))
           << '\n';
        log(g, "gp   n=" + std::to_string(n) + " " + std::to_string(secs) + " s");
    }
    if (!os) throw InvalidArgument("failed writing " + out.string());
    m.outputs.push_back(out.string());
}

// al -------------------------------------------------------------------------

struct AlArgs {
    std::string problem = "poisson";
    std::size_t rounds = 10;
    std::size_t init = 6;
    std::size_t validation = 2;
    std::size_t pool_size = 40;
    std::size_t grid = 8;
    problems::HeatSpec heat;
    std::size_t k_count = 6;
    std::size_t p_count = 6;
};

Json vector_to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

void cmd_al(const Globals& g, AlArgs a, Manifest& m) {
    const fs::path dir = require_out(g);
    fs::create_directories(dir);

    std::unique_ptr<active::LabelSource> source;
    active::CampaignConfig al;
    ModelConfig defaults;
    Json problem_json;
    if (a.problem == "poisson") {
        source = std::make_unique<active::PoissonSource>(a.grid);
        al.pool = active::linspace_pool(0.0, 1.0, a.pool_size);
        defaults = active::poisson_al_config();
        problem_json = {{"problem", "poisson"}, {"grid", a.grid}, {"pool_size", a.pool_size}};
    } else if (a.problem == "heat") {
        a.heat.validate();
        source = std::make_unique<active::HeatSource>(a.heat);
        al.pool = active::grid_pool_2d(problems::kHeatConductivityMin, problems::kHeatConductivityMax, a.k_count,
                                       problems::kHeatPowerMin, problems::kHeatPowerMax, a.p_count);
        defaults = active::heat_al_config();
        problem_json = problems::heat_metadata(a.heat);
        problem_json["k_count"] = a.k_count;
        problem_json["p_count"] = a.p_count;
    } else {
        throw InvalidArgument("unknown problem '" + a.problem + "'");
    }
    const auto config = model_config(g, defaults);
    al.rounds = a.rounds;
    al.init_size = a.init;
    al.validation_size = a.validation;
    al.seed = base_seed(g);

    m.config = {{"model", config_to_json(config)},
                {"campaign", {{"rounds", a.rounds}, {"init", a.init}, {"validation", a.validation}}},
                {"problem", problem_json}};
    m.seeds["init"] = config.seed;
    m.seeds["al_sampling"] = derive_seed(al.seed, "al-sampling");

    const auto rounds_path = dir / "rounds.jsonl";
    std::ofstream rounds(rounds_path);
    if (!rounds) throw InvalidArgument("cannot write " + rounds_path.string());
    double total_fit = 0.0;
    const auto result = active::run_campaign(*source, config, al, [&](const active::RoundRecord& r) {
        Json rec;
        rec["round"] = r.round;
        rec["selected_parameter"] = r.round == 0 ? Json(nullptr) : vector_to_json(r.selected_parameter);
        rec["score"] = r.score;
        rec["pool_size"] = r.pool_size;
        rec["train_size"] = r.train_size;
        rec["validation_rmse"] = r.validation_rmse;
        rec["fit_seconds"] = r.fit_seconds;
        rounds << rec.dump() << '\n';
        total_fit += r.fit_seconds;
        log(g, "round " + std::to_string(r.round) + ": validation rmse " + format_double(r.validation_rmse));
    });
    rounds.close();

    save_model(result.models.back(), dir / "model.json");
    const auto s = active::summarize(result.rmse_history);
    Json summary;
    summary["init_rmse"] = s.init_rmse;
    summary["best_rmse"] = s.best_rmse;
    summary["final_rmse"] = s.final_rmse;
    summary["pct_improvement"] = s.pct_improvement;
    summary["best_round"] = s.best_round;
    summary["rounds_run"] = result.rmse_history.size() - 1;
    summary["total_fit_seconds"] = total_fit;
    write_json(summary, dir / "summary.json");
    m.outputs = {rounds_path.string(), (dir / "model.json").string(), (dir / "summary.json").string()};
    m.timings["total_fit_seconds"] = total_fit;
    if (!g.quiet) std::cout << summary.dump(2) << '\n';
}

void add_heat_options(CLI::App* cmd, problems::HeatSpec& h) {
    cmd->add_option("--nx", h.nx, "Heat grid nodes along x")->capture_default_str();
    cmd->add_option("--ny", h.ny, "Heat grid nodes along y")->capture_default_str();
    cmd->add_option("--snapshots", h.snapshots, "Saved time levels")->capture_default_str();
    cmd->add_option("--steps-per-snapshot", h.steps_per_snapshot, "Solver steps per saved level")->capture_default_str();
    cmd->add_option("--final-time", h.final_time, "Final time")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian interpolating neural network surrogates"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Base seed (split per purpose)");
    app.add_option("--config", g.config, "Model config JSON");
    app.add_option("--out", g.out, "Output path (a directory for al)");
    app.add_flag("--quiet", g.quiet, "Suppress progress output");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a dataset CSV");
    gen_cmd->add_option("problem", gen.problem, "synthetic1d | poisson | heat")
        ->required()
        ->check(CLI::IsMember({"synthetic1d", "poisson", "heat"}));
    gen_cmd->add_option("--n", gen.n, "Number of points (synthetic1d)")->capture_default_str();
    gen_cmd->add_flag("--noise-free", gen.noise_free, "Omit observation noise (synthetic1d)");
    gen_cmd->add_option("--grid", gen.grid, "Points per axis (poisson)")->capture_default_str();
    gen_cmd->add_option("--p", gen.p, "Parameter value(s) (poisson)");
    gen_cmd->add_option("--k", gen.heat.conductivity, "Conductivity (heat)")->capture_default_str();
    gen_cmd->add_option("--P", gen.heat.power, "Source power (heat)")->capture_default_str();
    add_heat_options(gen_cmd, gen.heat);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a model to a CSV");
    fit_cmd->add_option("--train", fit_args.train, "Training CSV")->required();
    fit_cmd->add_option("--target-column", fit_args.target.target_column, "Target column name or index");
    fit_cmd->add_option("--n-targets", fit_args.target.n_targets, "Trailing target columns")->capture_default_str();
    fit_cmd->add_flag("--all-targets", fit_args.all_targets, "Fit every target column");

    PredictArgs pred;
    auto* pred_cmd = app.add_subcommand("predict", "Predict mean and variance for CSV inputs");
    pred_cmd->add_option("--model", pred.model, "Model JSON")->required();
    pred_cmd->add_option("--input", pred.input, "Input CSV")->required();
    pred_cmd->add_option("--n-targets", pred.n_targets, "Trailing target columns to ignore")->capture_default_str();
    pred_cmd->add_flag("--include-noise", pred.include_noise, "Add the noise variance");

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a labeled CSV");
    eval_cmd->add_option("--model", ev.model, "Model JSON")->required();
    eval_cmd->add_option("--test", ev.test, "Test CSV")->required();
    eval_cmd->add_option("--manifest", ev.manifest, "Fit manifest holding the fit time");
    eval_cmd->add_option("--target-column", ev.target.target_column, "Target column name or index");
    eval_cmd->add_option("--n-targets", ev.target.n_targets, "Trailing target columns")->capture_default_str();

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare-gp", "Compare a fit against an exact Gaussian process");
    cmp_cmd->add_option("--train", cmp.train, "Training CSV")->required();
    cmp_cmd->add_option("--test", cmp.test, "Test CSV")->required();
    cmp_cmd->add_option("--kernel", cmp.kernel, "binn | rbf")->capture_default_str();
    cmp_cmd->add_option("--gp-signal-variance", cmp.signal_variance, "RBF signal variance")->capture_default_str();
    cmp_cmd->add_option("--gp-length-scale", cmp.gp_length_scale, "RBF length scale")->capture_default_str();
    cmp_cmd->add_option("--gp-cap", cmp.gp_cap, "Maximum GP training size")->capture_default_str();
    cmp_cmd->add_option("--target-column", cmp.target.target_column, "Target column name or index");
    cmp_cmd->add_option("--n-targets", cmp.target.n_targets, "Trailing target columns")->capture_default_str();

    ScaleArgs sc;
    auto* scale_cmd = app.add_subcommand("scale", "Time fits over increasing data sizes");
    scale_cmd->add_option("--problem", sc.problem, "synthetic1d")->capture_default_str();
    scale_cmd->add_option("--n", sc.ns, "Data sizes, ascending")->required()->delimiter(',');
    scale_cmd->add_option("--gp-cap", sc.gp_cap, "Largest size the GP is run on")->capture_default_str();
    scale_cmd->add_option("--test-n", sc.test_n, "Test points")->capture_default_str();
    scale_cmd->add_option("--gp-length-scale", sc.gp_length_scale, "RBF length scale")->capture_default_str();

    AlArgs al;
    auto* al_cmd = app.add_subcommand("al", "Run an active-learning campaign");
    al_cmd->add_option("--problem", al.problem, "poisson | heat")
        ->check(CLI::IsMember({"poisson", "heat"}))
        ->capture_default_str();
    al_cmd->add_option("--rounds", al.rounds, "Acquisition rounds")->capture_default_str();
    al_cmd->add_option("--init", al.init, "Initial labeled parameters")->capture_default_str();
    al_cmd->add_option("--validation", al.validation, "Validation parameters")->capture_default_str();
    al_cmd->add_option("--pool-size", al.pool_size, "Candidate p values (poisson)")->capture_default_str();
    al_cmd->add_option("--grid", al.grid, "Spatial points per axis (poisson)")->capture_default_str();
    al_cmd->add_option("--k-count", al.k_count, "Candidate conductivities (heat)")->capture_default_str();
    al_cmd->add_option("--p-count", al.p_count, "Candidate source powers (heat)")->capture_default_str();
    al.heat.nx = al.heat.ny = 21;
    add_heat_options(al_cmd, al.heat);

    CLI11_PARSE(app, argc, argv);

    const std::vector<std::string> args(argv, argv + argc);
    Manifest m;
    try {
        bool out_is_dir = false;
        if (gen_cmd->parsed()) {
            m.command = "gen";
            cmd_gen(g, gen, m);
        } else if (fit_cmd->parsed()) {
            m.command = "fit";
            cmd_fit(g, fit_args, m);
        } else if (pred_cmd->parsed()) {
            m.command = "predict";
            cmd_predict(g, pred, m);
        } else if (eval_cmd->parsed()) {
            m.command = "eval";
            cmd_eval(g, ev, m);
        } else if (cmp_cmd->parsed()) {
            m.command = "compare-gp";
            cmd_compare_gp(g, cmp, m);
        } else if (scale_cmd->parsed()) {
            m.command = "scale";
            cmd_scale(g, sc, m);
        } else if (al_cmd->parsed()) {
            m.command = "al";
            out_is_dir = true;
            cmd_al(g, al, m);
        }
        write_manifest(g, m, manifest_path(g.out, out_is_dir), args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
