#include "finseer/cli.hpp"

#include "finseer/errors.hpp"
#include "finseer/eval.hpp"
#include "finseer/fetch.hpp"
#include "finseer/hurst.hpp"
#include "finseer/model_io.hpp"
#include "finseer/nnet.hpp"
#include "finseer/normalize.hpp"
#include "finseer/ohlcv.hpp"
#include "finseer/trainer.hpp"
#include "finseer/windows.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace finseer {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string input;
    std::string url;
    std::string arch = "mlp";
    bool arch_given = false;
    std::vector<int> hidden = {10};
    int delays = 5;
    int lead = 730;
    double split_ratio = 0.8;
    double eta = 0.25;
    int epochs = 1000;
    int repeats = 2;
    std::uint64_t seed = 1;
    bool seed_given = false;
    double goal_mse = 0;
    bool goal_mse_given = false;
    double range_lo = 0.1;
    double range_hi = 0.9;
    std::string model_path;
    std::string out_dir = ".";
    double timeout = 30.0;

    TrainConfig train_config() const {
        TrainConfig cfg;
        cfg.eta = eta;
        cfg.epochs = epochs;
        cfg.repeats = repeats;
        cfg.seed = seed;
        if (goal_mse_given) cfg.goal_mse = goal_mse;
        return cfg;
    }

    fs::path out_path(const char* name) const { return fs::path(out_dir) / name; }

    fs::path resolved_model_path() const {
        return model_path.empty() ? out_path("model.txt") : fs::path(model_path);
    }
};

// FINSEER_SEED is the fallback when --seed is absent.
void apply_env_seed(RunConfig& rc) {
    if (rc.seed_given) return;
    const char* env = std::getenv("FINSEER_SEED");
    if (!env || !*env) return;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        rc.seed = v;
    } catch (const std::exception&) {
        throw ParameterError(std::string("FINSEER_SEED is not a valid seed: '") + env + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SeriesDataset load_dataset(const RunConfig& rc) {
    if (!rc.url.empty()) {
        return parse_csv(fetch_csv(rc.url, rc.timeout), rc.url);
    }
    if (rc.input.empty()) throw ParameterError("no --input file or --url given");
    return parse_csv(read_file(rc.input), fs::path(rc.input).stem().string());
}

std::vector<double> open_series(const SeriesDataset& dataset) {
    std::vector<double> out;
    out.reserve(dataset.records.size());
    for (const OhlcvRecord& r : dataset.records) out.push_back(r.open);
    return out;
}

// Advisory predictability screen shared by train/compare. Screening never
// blocks a run: short or degenerate series simply skip it.
std::optional<HurstResult> try_screen(const SeriesDataset& dataset) {
    const auto series = open_series(dataset);
    const auto sizes = default_window_sizes(series.size());
    if (sizes.size() < 3) return std::nullopt;
    try {
        return rs_hurst(series, sizes);
    } catch (const Error&) {
        return std::nullopt;
    }
}

void warn_if_unpredictable(const HurstResult& hurst, std::ostream& err) {
    if (!screen_predictability(hurst)) {
        err << "warning: H = " << hurst.h << " <= 0.5 (" << to_string(hurst.classification)
            << "); series shows no persistence, forecasts may be poor\n";
    }
}

std::string curve_csv(const TrainReport& report) {
    std::string out = "epoch,mse\n";
    for (std::size_t i = 0; i < report.mse_curve.size(); ++i) {
        out += std::to_string(i + 1) + ',' + format_double(report.mse_curve[i]) + '\n';
    }
    return out;
}

std::string predictions_csv(const std::vector<PricePair>& pairs) {
    std::string out = "index,target,predicted\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out += std::to_string(i) + ',' + format_double(pairs[i].target) + ',' +
               format_double(pairs[i].predicted) + '\n';
    }
    return out;
}

Model train_model(const RunConfig& rc, const SeriesDataset& dataset, TrainReport& report) {
    const Normalizer normalizer = fit_normalizer(dataset, rc.range_lo, rc.range_hi);
    const SupervisedWindowSet windows = build_windows(dataset, normalizer, rc.lead);
    const SplitViews views = split(windows, rc.split_ratio);
    const TrainConfig cfg = rc.train_config();

    Model model;
    model.normalizer = normalizer;
    if (rc.arch == "tdrnn") {
        // Context width follows the first hidden layer.
        TdrnnNetwork net = TdrnnNetwork::make(rc.delays, rc.hidden.front(), rc.hidden);
        init_weights(net, cfg.seed);
        report = train(net, views.train, cfg);
        model.network = std::move(net);
    } else if (rc.arch == "mlp") {
        std::vector<int> sizes;
        sizes.push_back(static_cast<int>(kFeatureCount));
        for (int h : rc.hidden) sizes.push_back(h);
        sizes.push_back(1);
        MlpNetwork net = MlpNetwork::make(sizes);
        init_weights(net, cfg.seed);
        report = train(net, views.train, cfg);
        model.network = std::move(net);
    } else {
        throw ParameterError("unknown architecture '" + rc.arch + "' (use mlp or tdrnn)");
    }
    return model;
}

std::vector<PricePair> predict_with(Model& model, const WindowView& view) {
    if (model.is_tdrnn()) {
        return predict_series(std::get<TdrnnNetwork>(model.network), view, model.normalizer);
    }
    return predict_series(std::get<MlpNetwork>(model.network), view, model.normalizer);
}

int cmd_hurst(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    const SeriesDataset dataset = load_dataset(rc);
    const auto series = open_series(dataset);
    const HurstResult hurst = rs_hurst(series, default_window_sizes(series.size()));

    std::string csv = "log_n,log_rs\n";
    for (auto [log_n, log_rs] : hurst.points) {
        csv += format_double(log_n) + ',' + format_double(log_rs) + '\n';
    }
    write_file_atomic(rc.out_path("hurst.csv"), csv);

    out << "H=" << format_double(hurst.h) << " class=" << to_string(hurst.classification)
        << '\n';
    warn_if_unpredictable(hurst, err);
    return 0;
}

int cmd_train(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    rc.train_config().validate(); // fail fast, before touching any input
    const SeriesDataset dataset = load_dataset(rc);
    if (const auto hurst = try_screen(dataset)) warn_if_unpredictable(*hurst, err);

    TrainReport report;
    const Model model = train_model(rc, dataset, report);
    save_model(model, rc.resolved_model_path());
    write_file_atomic(rc.out_path("curve.csv"), curve_csv(report));

    out << "arch=" << model.arch() << " epochs=" << report.final_epoch
        << " final_mse=" << format_double(report.mse_curve.back())
        << (report.stopped_early ? " (stopped early)" : "") << '\n';
    out << "model: " << rc.resolved_model_path().string() << '\n';
    return 0;
}

void check_arch_flag(const RunConfig& rc, const Model& model) {
    if (!rc.arch_given) return;
    if (rc.arch != "mlp" && rc.arch != "tdrnn") {
        throw ParameterError("unknown architecture '" + rc.arch + "' (use mlp or tdrnn)");
    }
    if (rc.arch != model.arch()) {
        throw ShapeError(std::string("model file is ") + model.arch() +
                         " but --arch requested " + rc.arch);
    }
}

int cmd_predict(const RunConfig& rc, std::ostream& out, std::ostream&) {
    Model model = load_model(rc.resolved_model_path());
    check_arch_flag(rc, model);
    const SeriesDataset dataset = load_dataset(rc);
    const SupervisedWindowSet windows = build_windows(dataset, model.normalizer, rc.lead);
    const SplitViews views = split(windows, rc.split_ratio);

    const auto pairs = predict_with(model, views.test);
    write_file_atomic(rc.out_path("predictions.csv"), predictions_csv(pairs));
    out << "predicted " << pairs.size() << " test pairs\n";
    return 0;
}

int cmd_evaluate(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    Model model = load_model(rc.resolved_model_path());
    check_arch_flag(rc, model);
    const SeriesDataset dataset = load_dataset(rc);
    const SupervisedWindowSet windows = build_windows(dataset, model.normalizer, rc.lead);
    const SplitViews views = split(windows, rc.split_ratio);

    const EvalReport report = evaluate(predict_with(model, views.test), model.normalizer);
    write_file_atomic(rc.out_path("predictions.csv"), predictions_csv(report.pairs));

    out << "pairs=" << report.pairs.size() << " mse=" << format_double(report.mse)
        << " rmse_pct=" << format_double(report.rmse_pct)
        << " mape=" << (report.mape ? format_double(*report.mape) : "n/a") << '\n';
    out << "slope=" << format_double(report.fit.slope)
        << " intercept=" << format_double(report.fit.intercept)
        << " r=" << format_double(report.fit.r) << '\n';
    if (report.out_of_range > 0) {
        err << "note: " << report.out_of_range
            << " predictions fall outside the fitted open-price range\n";
    }
    return 0;
}

int cmd_compare(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    rc.train_config().validate();
    const SeriesDataset dataset = load_dataset(rc);
    if (const auto hurst = try_screen(dataset)) warn_if_unpredictable(*hurst, err);

    // Both trainings run concurrently on independent state.
    RunConfig mlp_rc = rc;
    mlp_rc.arch = "mlp";
    RunConfig tdrnn_rc = rc;
    tdrnn_rc.arch = "tdrnn";

    Model mlp_model, tdrnn_model;
    TrainReport mlp_report, tdrnn_report;
    std::exception_ptr mlp_error, tdrnn_error;
    std::thread mlp_thread([&] {
        try {
            mlp_model = train_model(mlp_rc, dataset, mlp_report);
        } catch (...) {
            mlp_error = std::current_exception();
        }
    });
    try {
        tdrnn_model = train_model(tdrnn_rc, dataset, tdrnn_report);
    } catch (...) {
        tdrnn_error = std::current_exception();
    }
    mlp_thread.join();
    if (mlp_error) std::rethrow_exception(mlp_error);
    if (tdrnn_error) std::rethrow_exception(tdrnn_error);

    const SupervisedWindowSet windows = build_windows(dataset, mlp_model.normalizer, rc.lead);
    const SplitViews views = split(windows, rc.split_ratio);

    ArchReports mlp_reports{"mlp",
                            evaluate(predict_with(mlp_model, views.train), mlp_model.normalizer),
                            evaluate(predict_with(mlp_model, views.test), mlp_model.normalizer)};
    ArchReports tdrnn_reports{
        "tdrnn", evaluate(predict_with(tdrnn_model, views.train), tdrnn_model.normalizer),
        evaluate(predict_with(tdrnn_model, views.test), tdrnn_model.normalizer)};

    const Comparison cmp = compare(mlp_reports, tdrnn_reports);
    write_file_atomic(rc.out_path("comparison.csv"), cmp.to_csv());
    out << cmp.to_text();
    return 0;
}

int cmd_fetch(const RunConfig& rc, std::ostream& out, std::ostream&) {
    if (rc.url.empty()) throw ParameterError("fetch needs --url");
    const std::string body = fetch_csv(rc.url, rc.timeout);
    write_file_atomic(rc.out_path("fetched.csv"), body);
    out << "fetched " << body.size() << " bytes to " << rc.out_path("fetched.csv").string()
        << '\n';
    return 0;
}

void add_common_flags(CLI::App* cmd, RunConfig& rc, bool with_train_flags) {
    cmd->add_option("--input", rc.input, "input CSV file (date,open,high,low,close,volume)");
    cmd->add_option("--url", rc.url, "fetch the input CSV from this http(s) URL");
    cmd->add_option("--out-dir", rc.out_dir, "directory for output files");
    cmd->add_option("--lead", rc.lead, "days between input day and target day");
    cmd->add_option("--split", rc.split_ratio, "train fraction of the windows");
    cmd->add_option("--model", rc.model_path, "model file path");
    cmd->add_option("--timeout", rc.timeout, "HTTP timeout in seconds");
    if (with_train_flags) {
        cmd->add_option("--arch", rc.arch, "network architecture: mlp or tdrnn")
            ->each([&rc](const std::string&) { rc.arch_given = true; });
        cmd->add_option("--hidden", rc.hidden, "hidden layer sizes");
        cmd->add_option("--delays", rc.delays, "tapped-delay depth (tdrnn)");
        cmd->add_option("--eta", rc.eta, "learning rate");
        cmd->add_option("--epochs", rc.epochs, "epochs per training pass");
        cmd->add_option("--repeats", rc.repeats, "training passes over the epoch schedule");
        cmd->add_option("--seed", rc.seed, "RNG seed")->each([&rc](const std::string&) {
            rc.seed_given = true;
        });
        cmd->add_option("--goal-mse", rc.goal_mse, "stop early once epoch MSE reaches this")
            ->each([&rc](const std::string&) { rc.goal_mse_given = true; });
        cmd->add_option("--range-lo", rc.range_lo, "normalizer output range low end");
        cmd->add_option("--range-hi", rc.range_hi, "normalizer output range high end");
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"finseer: neural time-series forecasting over daily OHLCV data"};
    app.require_subcommand(1);

    RunConfig rc;
    int (*handler)(const RunConfig&, std::ostream&, std::ostream&) = nullptr;

    auto* hurst_cmd = app.add_subcommand("hurst", "R/S predictability analysis");
    add_common_flags(hurst_cmd, rc, false);
    hurst_cmd->callback([&] { handler = cmd_hurst; });

    auto* train_cmd = app.add_subcommand("train", "train a forecaster");
    add_common_flags(train_cmd, rc, true);
    train_cmd->callback([&] { handler = cmd_train; });

    auto* predict_cmd = app.add_subcommand("predict", "predict the test region");
    add_common_flags(predict_cmd, rc, true);
    predict_cmd->callback([&] { handler = cmd_predict; });

    auto* eval_cmd = app.add_subcommand("evaluate", "metrics over the test region");
    add_common_flags(eval_cmd, rc, true);
    eval_cmd->callback([&] { handler = cmd_evaluate; });

    auto* compare_cmd = app.add_subcommand("compare", "train and compare both architectures");
    add_common_flags(compare_cmd, rc, true);
    compare_cmd->callback([&] { handler = cmd_compare; });

    auto* fetch_cmd = app.add_subcommand("fetch", "download a CSV over HTTP");
    add_common_flags(fetch_cmd, rc, false);
    fetch_cmd->callback([&] { handler = cmd_fetch; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        apply_env_seed(rc);
        fs::create_directories(rc.out_dir);
        return handler(rc, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace finseer
