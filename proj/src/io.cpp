#include "lrens/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lrens/rng.hpp"

namespace lrens {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_number(const std::string& cell, int row, int col) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw ParseError("not a number: '" + cell + "'", row, col);
    }
    return value;
}

constexpr std::string_view kRankPrefix = "rank_";

struct CsvLayout {
    std::vector<std::string> feature_names;
    std::vector<size_t> feature_cols;
    std::vector<std::string> labels;
    std::vector<size_t> rank_cols;
    size_t n_cols = 0;
};

CsvLayout read_layout(const std::vector<std::string>& lines) {
    if (lines.empty()) throw ParseError("empty file");
    CsvLayout layout;
    const std::vector<std::string> header = split_csv(lines.front());
    layout.n_cols = header.size();
    for (size_t c = 0; c < header.size(); ++c) {
        const std::string& name = header[c];
        if (name.rfind(kRankPrefix, 0) == 0) {
            const std::string label = name.substr(kRankPrefix.size());
            if (label.empty()) {
                throw ParseError("empty label in rank column", 1,
                                 static_cast<int>(c) + 1);
            }
            if (std::find(layout.labels.begin(), layout.labels.end(), label) !=
                layout.labels.end()) {
                throw ParseError("duplicate rank column: " + name, 1,
                                 static_cast<int>(c) + 1);
            }
            layout.labels.push_back(label);
            layout.rank_cols.push_back(c);
        } else {
            if (name.empty()) {
                throw ParseError("empty column name", 1, static_cast<int>(c) + 1);
            }
            layout.feature_names.push_back(name);
            layout.feature_cols.push_back(c);
        }
    }
    return layout;
}

std::vector<std::string> row_cells(const std::string& line, size_t n_cols,
                                   int row) {
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() != n_cols) {
        throw ParseError("expected " + std::to_string(n_cols) + " cells, got " +
                             std::to_string(cells.size()),
                         row);
    }
    return cells;
}

}  // namespace

Dataset parse_dataset(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_file(path));
    const CsvLayout layout = read_layout(lines);
    if (layout.labels.size() < 2) {
        throw ParseError("need at least 2 rank_<label> columns, found " +
                             std::to_string(layout.labels.size()),
                         1);
    }

    std::vector<RawRow> rows;
    rows.reserve(lines.size() - 1);
    for (size_t li = 1; li < lines.size(); ++li) {
        const int row = static_cast<int>(li) + 1;
        const std::vector<std::string> cells =
            row_cells(lines[li], layout.n_cols, row);
        RawRow raw;
        for (size_t c : layout.feature_cols) {
            raw.features.push_back(
                parse_number(cells[c], row, static_cast<int>(c) + 1));
        }
        for (size_t c : layout.rank_cols) {
            const double v = parse_number(cells[c], row, static_cast<int>(c) + 1);
            if (v != std::floor(v) || v < -1e9 || v > 1e9) {
                throw ParseError("rank must be an integer, got '" + cells[c] + "'",
                                 row, static_cast<int>(c) + 1);
            }
            raw.ranks.push_back(static_cast<int>(v));
        }
        rows.push_back(std::move(raw));
    }

    return validate_dataset(LabelSet(layout.labels), layout.feature_names, rows,
                            /*row_offset=*/1);
}

std::pair<std::vector<std::string>, std::vector<std::vector<double>>>
parse_feature_matrix(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_file(path));
    const CsvLayout layout = read_layout(lines);
    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size() - 1);
    for (size_t li = 1; li < lines.size(); ++li) {
        const int row = static_cast<int>(li) + 1;
        const std::vector<std::string> cells =
            row_cells(lines[li], layout.n_cols, row);
        std::vector<double> features;
        features.reserve(layout.feature_cols.size());
        for (size_t c : layout.feature_cols) {
            features.push_back(
                parse_number(cells[c], row, static_cast<int>(c) + 1));
        }
        rows.push_back(std::move(features));
    }
    return {layout.feature_names, std::move(rows)};
}

void write_dataset(const Dataset& data, const std::string& path) {
    std::string out;
    for (size_t f = 0; f < data.feature_names.size(); ++f) {
        if (f > 0) out += ',';
        out += data.feature_names[f];
    }
    for (int l = 0; l < data.n_labels(); ++l) {
        if (l > 0 || !data.feature_names.empty()) out += ',';
        out += std::string(kRankPrefix) + data.label_set.name(l);
    }
    out += '\n';
    for (const Instance& inst : data.instances) {
        for (size_t f = 0; f < inst.features.size(); ++f) {
            if (f > 0) out += ',';
            out += format_exact(inst.features[f]);
        }
        for (int l = 0; l < data.n_labels(); ++l) {
            if (l > 0 || !inst.features.empty()) out += ',';
            out += std::to_string(inst.target.ranks[static_cast<size_t>(l)]);
        }
        out += '\n';
    }
    write_text_atomic(path, out);
}

Dataset generate_synthetic(const SynthConfig& config) {
    if (config.n_labels < 2 || config.n_features < 1 || config.n_instances < 1 ||
        config.noise_sigma < 0.0) {
        throw Error("invalid synthetic data config");
    }

    Rng rng(config.seed);
    const int n = config.n_labels;
    const int d = config.n_features;

    std::vector<std::vector<double>> utility(static_cast<size_t>(n),
                                             std::vector<double>(static_cast<size_t>(d)));
    for (auto& row : utility) {
        for (double& v : row) v = rng.uniform(-1.0, 1.0);
    }

    std::vector<std::string> labels, features;
    for (int l = 0; l < n; ++l) labels.push_back("L" + std::to_string(l + 1));
    for (int f = 0; f < d; ++f) features.push_back("f" + std::to_string(f + 1));

    std::vector<Instance> instances;
    instances.reserve(static_cast<size_t>(config.n_instances));
    std::vector<double> x(static_cast<size_t>(d)), scores(static_cast<size_t>(n));
    for (int i = 0; i < config.n_instances; ++i) {
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        for (int l = 0; l < n; ++l) {
            double u = 0.0;
            for (int f = 0; f < d; ++f) {
                u += utility[static_cast<size_t>(l)][static_cast<size_t>(f)] *
                     x[static_cast<size_t>(f)];
            }
            if (config.noise_sigma > 0.0) u += rng.normal(config.noise_sigma);
            scores[static_cast<size_t>(l)] = u;
        }
        instances.push_back(Instance{x, ranking_from_scores(scores)});
    }
    return Dataset{LabelSet(labels), features, std::move(instances)};
}

std::string format_exact(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) throw Error("failed to format number");
    return std::string(buffer, ptr);
}

std::string format_g12(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp);
        out << content;
        if (!out.flush()) throw Error("failed writing file: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

namespace {

constexpr std::string_view kModelMagic = "lrens-model 1";

std::string tree_nodes_text(const RankingTree& tree) {
    std::string out = "nodes " + std::to_string(tree.nodes.size()) + "\n";
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& node = tree.nodes[i];
        out += std::to_string(i);
        if (node.is_leaf()) {
            out += " leaf";
            for (int r : node.consensus.ranks) out += ' ' + std::to_string(r);
        } else {
            out += " split " + std::to_string(node.feature) + ' ' +
                   format_exact(node.threshold) + ' ' + std::to_string(node.left) +
                   ' ' + std::to_string(node.right);
        }
        out += '\n';
    }
    return out;
}

class ModelReader {
public:
    explicit ModelReader(std::vector<std::string> lines)
        : lines_(std::move(lines)) {}

    const std::string& next() {
        if (pos_ >= lines_.size()) throw ParseError("truncated model file");
        return lines_[pos_++];
    }

    int line_number() const { return static_cast<int>(pos_); }

    // "key count" header lines.
    long expect_count(const std::string& key) {
        std::istringstream in(next());
        std::string word;
        long count = -1;
        if (!(in >> word >> count) || word != key || count < 0) {
            throw ParseError("expected '" + key + " <count>'", line_number());
        }
        return count;
    }

    RankingTree read_tree(const LabelSet& labels, int n_features) {
        const long n_nodes = expect_count("nodes");
        if (n_nodes < 1) throw ParseError("tree has no nodes", line_number());
        RankingTree tree{labels, n_features, {}};
        tree.nodes.reserve(static_cast<size_t>(n_nodes));
        for (long i = 0; i < n_nodes; ++i) {
            std::istringstream in(next());
            long id = -1;
            std::string kind;
            if (!(in >> id >> kind) || id != i) {
                throw ParseError("bad node line", line_number());
            }
            TreeNode node;
            if (kind == "split") {
                if (!(in >> node.feature >> node.threshold >> node.left >>
                      node.right) ||
                    node.feature < 0 || node.feature >= n_features ||
                    node.left <= id || node.right <= id || node.left >= n_nodes ||
                    node.right >= n_nodes || !std::isfinite(node.threshold)) {
                    throw ParseError("bad split node", line_number());
                }
            } else if (kind == "leaf") {
                node.consensus.ranks.resize(static_cast<size_t>(labels.size()));
                for (int& r : node.consensus.ranks) {
                    if (!(in >> r)) throw ParseError("bad leaf node", line_number());
                }
                if (!node.consensus.is_complete()) {
                    throw ParseError("leaf consensus is not a permutation",
                                     line_number());
                }
            } else {
                throw ParseError("unknown node kind: " + kind, line_number());
            }
            std::string extra;
            if (in >> extra) throw ParseError("trailing node data", line_number());
            tree.nodes.push_back(std::move(node));
        }
        return tree;
    }

private:
    std::vector<std::string> lines_;
    size_t pos_ = 0;
};

double parse_attr(const std::string& token, const std::string& key, int line) {
    if (token.rfind(key + "=", 0) != 0) {
        throw ParseError("expected " + key + "=<value>", line);
    }
    const std::string value = token.substr(key.size() + 1);
    return parse_number(value, line, 0);
}

}  // namespace

void save_model(const Model& model, const std::string& path) {
    std::string out(kModelMagic);
    out += "\nmethod " + method_name(model.config.method) + "\n";

    const LabelSet& labels = model.label_set();
    out += "labels " + std::to_string(labels.size()) + "\n";
    for (const std::string& name : labels.names()) out += name + "\n";
    out += "features " + std::to_string(model.feature_names.size()) + "\n";
    for (const std::string& name : model.feature_names) out += name + "\n";

    out += "params n_models=" + std::to_string(model.config.n_models) +
           " sample_ratio=" + format_exact(model.config.sample_ratio) +
           " max_depth=" + std::to_string(model.config.tree.max_depth) +
           " min_leaf=" + std::to_string(model.config.tree.min_leaf) +
           " seed=" + std::to_string(model.seed) + "\n";

    if (const auto* tree = std::get_if<RankingTree>(&model.impl)) {
        out += "trees 1\ntree 0\n";
        out += tree_nodes_text(*tree);
    } else if (const auto* boosted = std::get_if<BoostedEnsemble>(&model.impl)) {
        out += "trees " + std::to_string(boosted->records.size()) + "\n";
        for (size_t i = 0; i < boosted->records.size(); ++i) {
            const IterationRecord& record = boosted->records[i];
            out += "tree " + std::to_string(i) +
                   " avg_loss=" + format_exact(record.avg_loss) +
                   " beta=" + format_exact(record.beta) +
                   " alpha=" + format_exact(record.alpha) + "\n";
            out += tree_nodes_text(record.model);
        }
    } else {
        const auto& bagged = std::get<BaggedEnsemble>(model.impl);
        out += "trees " + std::to_string(bagged.trees.size()) + "\n";
        for (size_t i = 0; i < bagged.trees.size(); ++i) {
            out += "tree " + std::to_string(i) + "\n";
            out += tree_nodes_text(bagged.trees[i]);
        }
    }
    out += "end\n";
    write_text_atomic(path, out);
}

Model load_model(const std::string& path) {
    ModelReader reader(split_lines(read_file(path)));
    if (reader.next() != kModelMagic) {
        throw ParseError("not a model file (bad magic line)", 1);
    }

    std::string method_line = reader.next();
    if (method_line.rfind("method ", 0) != 0) {
        throw ParseError("expected method line", reader.line_number());
    }
    const auto method = method_from_name(method_line.substr(7));
    if (!method) {
        throw ParseError("unknown method: " + method_line.substr(7),
                         reader.line_number());
    }

    const long n_labels = reader.expect_count("labels");
    std::vector<std::string> label_names;
    for (long i = 0; i < n_labels; ++i) label_names.push_back(reader.next());
    const LabelSet labels = [&] {
        try {
            return LabelSet(label_names);
        } catch (const Error& e) {
            throw ParseError(std::string("bad label set: ") + e.what(),
                             reader.line_number());
        }
    }();

    const long n_features = reader.expect_count("features");
    std::vector<std::string> feature_names;
    for (long i = 0; i < n_features; ++i) feature_names.push_back(reader.next());

    Model model{MethodConfig{}, 0, feature_names, RankingTree{labels, 0, {}}};
    model.config.method = *method;
    {
        std::istringstream in(reader.next());
        std::string word, token;
        if (!(in >> word) || word != "params") {
            throw ParseError("expected params line", reader.line_number());
        }
        in >> token;
        model.config.n_models = static_cast<int>(
            parse_attr(token, "n_models", reader.line_number()));
        in >> token;
        model.config.sample_ratio =
            parse_attr(token, "sample_ratio", reader.line_number());
        in >> token;
        model.config.tree.max_depth = static_cast<int>(
            parse_attr(token, "max_depth", reader.line_number()));
        in >> token;
        model.config.tree.min_leaf = static_cast<int>(
            parse_attr(token, "min_leaf", reader.line_number()));
        in >> token;
        if (token.rfind("seed=", 0) != 0) {
            throw ParseError("expected seed=<value>", reader.line_number());
        }
        model.seed = std::stoull(token.substr(5));
    }

    const long n_trees = reader.expect_count("trees");
    if (n_trees < 1) throw ParseError("model has no trees", reader.line_number());

    // Returns the attribute tokens following "tree <index>".
    const auto read_tree_header = [&](long index) {
        std::istringstream in(reader.next());
        std::string word;
        long id = -1;
        if (!(in >> word >> id) || word != "tree" || id != index) {
            throw ParseError("expected 'tree " + std::to_string(index) + "'",
                             reader.line_number());
        }
        std::vector<std::string> attrs;
        while (in >> word) attrs.push_back(word);
        return attrs;
    };

    const int d = static_cast<int>(n_features);
    switch (*method) {
        case Method::Single: {
            if (n_trees != 1) {
                throw ParseError("single model must have exactly one tree",
                                 reader.line_number());
            }
            read_tree_header(0);
            model.impl = reader.read_tree(labels, d);
            break;
        }
        case Method::Boost: {
            BoostedEnsemble ensemble{{}, labels};
            for (long i = 0; i < n_trees; ++i) {
                const std::vector<std::string> attrs = read_tree_header(i);
                if (attrs.size() != 3) {
                    throw ParseError("boost tree needs avg_loss/beta/alpha",
                                     reader.line_number());
                }
                IterationRecord record;
                record.avg_loss =
                    parse_attr(attrs[0], "avg_loss", reader.line_number());
                record.beta = parse_attr(attrs[1], "beta", reader.line_number());
                record.alpha = parse_attr(attrs[2], "alpha", reader.line_number());
                record.model = reader.read_tree(labels, d);
                ensemble.records.push_back(std::move(record));
            }
            model.impl = std::move(ensemble);
            break;
        }
        default: {
            BaggedEnsemble ensemble{{},
                                    *method == Method::BaggingModal
                                        ? Aggregator::Modal
                                        : Aggregator::Borda,
                                    labels};
            for (long i = 0; i < n_trees; ++i) {
                read_tree_header(i);
                ensemble.trees.push_back(reader.read_tree(labels, d));
            }
            model.impl = std::move(ensemble);
            break;
        }
    }

    if (reader.next() != "end") {
        throw ParseError("expected end marker", reader.line_number());
    }
    return model;
}

}  // namespace lrens
