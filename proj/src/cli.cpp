#include "lrens/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lrens/evaluation.hpp"
#include "lrens/io.hpp"

namespace fs = std::filesystem;

namespace lrens {

namespace {

const std::vector<std::string> kMethodNames = {
    "single", "boost", "bagging-modal", "bagging-borda", "rf"};

struct CommonFlags {
    std::string method = "boost";
    int n_models = 50;
    double sample_ratio = 1.0;
    int max_depth = 16;
    int min_leaf = 3;
    uint64_t seed = 0;
    bool identity_sample = false;
};

void add_model_flags(CLI::App* cmd, CommonFlags& flags, bool single_method) {
    if (single_method) {
        cmd->add_option("--method", flags.method, "learning method")
            ->check(CLI::IsMember(kMethodNames))
            ->required();
    }
    cmd->add_option("--n-models", flags.n_models, "ensemble size / boosting T")
        ->check(CLI::PositiveNumber)
        ->default_val(50);
    cmd->add_option("--sample-ratio", flags.sample_ratio,
                    "boosting sample ratio S in (0,1]")
        ->check(CLI::Range(1e-9, 1.0))
        ->default_val(1.0);
    cmd->add_option("--max-depth", flags.max_depth, "maximum tree depth")
        ->check(CLI::PositiveNumber)
        ->default_val(16);
    cmd->add_option("--min-leaf", flags.min_leaf, "minimum instances per leaf")
        ->check(CLI::PositiveNumber)
        ->default_val(3);
    cmd->add_option("--seed", flags.seed, "random seed")->default_val(0);
    cmd->add_flag("--identity-sample", flags.identity_sample)->group("");
}

MethodConfig make_config(const CommonFlags& flags) {
    MethodConfig config;
    config.method = *method_from_name(flags.method);
    config.n_models = flags.n_models;
    config.sample_ratio = flags.sample_ratio;
    config.tree.max_depth = flags.max_depth;
    config.tree.min_leaf = flags.min_leaf;
    config.identity_sample = flags.identity_sample;
    return config;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) items.push_back(item);
    return items;
}

int run_train(const std::string& data_path, const CommonFlags& flags,
              const std::string& out_path) {
    const Dataset data = parse_dataset(data_path);
    const Model model = train_model(data, make_config(flags), flags.seed);
    save_model(model, out_path);
    return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
    const Model model = load_model(model_path);
    const auto [names, rows] = parse_feature_matrix(data_path);
    if (names.size() != model.feature_names.size()) {
        throw DimensionMismatch("model expects " +
                                std::to_string(model.feature_names.size()) +
                                " features, data has " +
                                std::to_string(names.size()));
    }

    const LabelSet& labels = model.label_set();
    std::string out;
    for (int l = 0; l < labels.size(); ++l) {
        if (l > 0) out += ',';
        out += "rank_" + labels.name(l);
    }
    out += '\n';
    for (const std::vector<double>& row : rows) {
        const Ranking predicted = model.predict(row);
        for (int l = 0; l < labels.size(); ++l) {
            if (l > 0) out += ',';
            out += std::to_string(predicted.ranks[static_cast<size_t>(l)]);
        }
        out += '\n';
    }
    write_text_atomic(out_path, out);
    return 0;
}

int run_evaluate(const std::string& data_path, const CommonFlags& flags,
                 int folds) {
    const Dataset data = parse_dataset(data_path);
    CVResult result = cross_validate(data, make_config(flags), folds, flags.seed);
    result.dataset = fs::path(data_path).stem().string();

    std::string header = "method,dataset,mean_kt";
    std::string row = result.method + ',' + result.dataset + ',' +
                      format_g12(result.mean_kt);
    for (size_t f = 0; f < result.fold_scores.size(); ++f) {
        header += ",fold_" + std::to_string(f + 1);
        row += ',' + format_g12(result.fold_scores[f]);
    }
    std::cout << header << '\n' << row << '\n';
    return 0;
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    for (const std::string& item : split_list(text)) {
        try {
            sizes.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--sizes", "not an integer: " + item);
        }
    }
    if (sizes.empty()) throw CLI::ValidationError("--sizes", "empty size list");
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1 || (i > 0 && sizes[i] <= sizes[i - 1])) {
            throw CLI::ValidationError("--sizes",
                                       "sizes must be ascending and >= 1");
        }
    }
    return sizes;
}

int run_benchmark(const std::string& data_dir, const std::string& methods_list,
                  const CommonFlags& flags, int folds,
                  const std::string& sizes_text, const std::string& out_dir) {
    std::vector<MethodConfig> methods;
    for (const std::string& name : split_list(methods_list)) {
        const auto method = method_from_name(name);
        if (!method) throw CLI::ValidationError("--methods", "unknown method: " + name);
        CommonFlags method_flags = flags;
        method_flags.method = name;
        methods.push_back(make_config(method_flags));
    }
    const std::vector<int> sizes = parse_sizes(sizes_text);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(data_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("no .csv datasets in " + data_dir);

    std::vector<NamedDataset> datasets;
    for (const fs::path& file : files) {
        datasets.push_back(NamedDataset{file.stem().string(),
                                        parse_dataset(file.string())});
    }

    const EvalReport report =
        build_report(datasets, methods, sizes, folds, flags.seed);
    fs::create_directories(out_dir);
    const auto out_path = [&](const std::string& name) {
        return (fs::path(out_dir) / name).string();
    };

    std::string results = "method,dataset,fold,kt\n";
    for (const CVResult& cv : report.results) {
        for (size_t f = 0; f < cv.fold_scores.size(); ++f) {
            results += cv.method + ',' + cv.dataset + ',' +
                       std::to_string(f + 1) + ',' +
                       format_g12(cv.fold_scores[f]) + '\n';
        }
    }
    write_text_atomic(out_path("results.csv"), results);

    std::string improvements = "method,dataset,improvement_pct\n";
    for (const ImprovementCell& cell : report.improvements) {
        improvements += cell.method + ',' + cell.dataset + ',' +
                        format_g12(cell.value) + '\n';
    }
    write_text_atomic(out_path("improvements.csv"), improvements);
    for (const ImprovementCell& cell : report.skipped_improvements) {
        std::cerr << "note: improvement for (" << cell.method << ", "
                  << cell.dataset
                  << ") skipped: |single-model kt| < 0.01; absolute delta = "
                  << format_g12(cell.value) << '\n';
    }

    std::string ranks = "dataset,method,rank\n";
    for (const RankCell& cell : report.rank_table) {
        ranks += cell.dataset + ',' + cell.method + ',' +
                 format_g12(cell.rank) + '\n';
    }
    write_text_atomic(out_path("ranks.csv"), ranks);

    std::string curve = "method,n_models,mean_kt\n";
    for (const CurvePoint& point : report.ensemble_size_curve) {
        curve += point.method + ',' + std::to_string(point.size) + ',' +
                 format_g12(point.mean_kt) + '\n';
    }
    write_text_atomic(out_path("size_curve.csv"), curve);

    std::string friedman = "test friedman_aligned_ranks\n";
    friedman += "methods " + std::to_string(methods.size()) + "\n";
    friedman += "datasets " + std::to_string(datasets.size()) + "\n";
    if (report.friedman) {
        friedman += "statistic " + format_g12(report.friedman->statistic) + "\n";
        friedman += "df " + std::to_string(report.friedman->df) + "\n";
        if (const auto critical = chi_square_critical_95(report.friedman->df)) {
            friedman += "chi_square_critical_95 " + format_g12(*critical) + "\n";
            friedman += std::string("reject_null_95 ") +
                        (report.friedman->statistic > *critical ? "yes" : "no") +
                        "\n";
        } else {
            friedman += "chi_square_critical_95 unavailable (df > 10)\n";
        }
    } else {
        friedman +=
            "statistic not_computed (needs >= 2 datasets and a "
            "non-degenerate score table)\n";
    }
    write_text_atomic(out_path("friedman.txt"), friedman);
    return 0;
}

int run_gen_synth(const SynthConfig& config, const std::string& out_path) {
    write_dataset(generate_synthetic(config), out_path);
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"label ranking ensembles: boosting, bagging and random forests "
                 "over ranking targets"};
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "train a model and save it");
    std::string train_data, train_out;
    CommonFlags train_flags;
    train->add_option("--data", train_data, "training dataset CSV")->required();
    add_model_flags(train, train_flags, true);
    train->add_option("--out", train_out, "output model file")->required();

    // predict
    auto* predict = app.add_subcommand("predict", "predict rankings with a model");
    std::string predict_model, predict_data, predict_out;
    predict->add_option("--model", predict_model, "model file")->required();
    predict->add_option("--data", predict_data, "input CSV (features)")->required();
    predict->add_option("--out", predict_out, "output CSV of rank vectors")
        ->required();

    // evaluate
    auto* evaluate = app.add_subcommand(
        "evaluate", "cross-validate one method on one dataset");
    std::string eval_data;
    CommonFlags eval_flags;
    int eval_folds = 10;
    evaluate->add_option("--data", eval_data, "dataset CSV")->required();
    add_model_flags(evaluate, eval_flags, true);
    evaluate->add_option("--folds", eval_folds, "cross-validation folds")
        ->check(CLI::Range(2, 1000))
        ->default_val(10);

    // benchmark
    auto* benchmark = app.add_subcommand(
        "benchmark", "run the full cross-validated comparison");
    std::string bench_dir, bench_methods = "single,boost,bagging-modal,bagging-borda,rf";
    std::string bench_sizes = "1,5,10,25,50", bench_out = ".";
    CommonFlags bench_flags;
    int bench_folds = 10;
    benchmark->add_option("--data-dir", bench_dir, "directory of dataset CSVs")
        ->required();
    benchmark->add_option("--methods", bench_methods,
                          "comma-separated list of methods");
    add_model_flags(benchmark, bench_flags, false);
    benchmark->add_option("--folds", bench_folds, "cross-validation folds")
        ->check(CLI::Range(2, 1000))
        ->default_val(10);
    benchmark->add_option("--sizes", bench_sizes,
                          "ensemble sizes for the size curve");
    benchmark->add_option("--out-dir", bench_out, "report output directory");

    // gen-synth
    auto* gen = app.add_subcommand("gen-synth", "generate a synthetic dataset");
    SynthConfig synth;
    std::string gen_out;
    gen->add_option("--n-instances", synth.n_instances)
        ->check(CLI::PositiveNumber)
        ->default_val(100);
    gen->add_option("--n-features", synth.n_features)
        ->check(CLI::PositiveNumber)
        ->default_val(5);
    gen->add_option("--n-labels", synth.n_labels)
        ->check(CLI::Range(2, 1000))
        ->default_val(3);
    gen->add_option("--noise-sigma", synth.noise_sigma)
        ->check(CLI::NonNegativeNumber)
        ->default_val(0.0);
    gen->add_option("--seed", synth.seed)->default_val(0);
    gen->add_option("--out", gen_out, "output dataset CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (train->parsed()) return run_train(train_data, train_flags, train_out);
        if (predict->parsed()) {
            return run_predict(predict_model, predict_data, predict_out);
        }
        if (evaluate->parsed()) {
            return run_evaluate(eval_data, eval_flags, eval_folds);
        }
        if (benchmark->parsed()) {
            return run_benchmark(bench_dir, bench_methods, bench_flags,
                                 bench_folds, bench_sizes, bench_out);
        }
        if (gen->parsed()) return run_gen_synth(synth, gen_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<std::string> full = args;
    full.insert(full.begin(), "lrens");
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& arg : full) argv.push_back(arg.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lrens
