#include "qens/bench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qens/ensemble/sampling.hpp"

namespace qens {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string sanitize_field(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return text;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double field_double(const std::string& text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::runtime_error("bad numeric field '" + text + "' in records file");
    return value;
}

std::string tick_label(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.4g", value);
    return buffer;
}

struct Stats {
    double mean = 0.0;
    double std_dev = 0.0;
};

Stats stats_of(const std::vector<double>& values) {
    Stats s;
    if (values.empty()) return s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(acc / static_cast<double>(values.size()));
    return s;
}

constexpr const char* plot_colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                       "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                       "#bcbd22", "#17becf"};

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) return "0";
    return std::string(buffer, ptr);
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    struct Group {
        SummaryRow row;
        std::vector<double> train_values;
        std::vector<double> test_values;
    };
    std::vector<Group> groups;

    auto find_group = [&](const RunRecord& record) -> Group& {
        for (Group& g : groups)
            if (g.row.model == record.model_id && g.row.layers == record.layers) return g;
        Group g;
        g.row.model = record.model_id;
        g.row.layers = record.layers;
        groups.push_back(std::move(g));
        return groups.back();
    };

    for (const RunRecord& record : records) {
        Group& g = find_group(record);
        if (!record.ok) {
            ++g.row.failed;
            continue;
        }
        if (g.row.n_runs == 0) {
            g.row.n_members = record.n_members;
            g.row.member_resources = record.member_resources;
        }
        ++g.row.n_runs;
        g.train_values.push_back(record.train_metric);
        g.test_values.push_back(record.test_metric);
    }

    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (Group& g : groups) {
        const Stats train = stats_of(g.train_values);
        const Stats test = stats_of(g.test_values);
        g.row.train_mean = train.mean;
        g.row.train_std = train.std_dev;
        g.row.test_mean = test.mean;
        g.row.test_std = test.std_dev;
        rows.push_back(std::move(g.row));
    }
    return rows;
}

void write_records_header(std::ostream& out) {
    out << "model,dataset,layers,repeat,seed,train_metric,test_metric,wall_time_s,"
           "members,member_qubits,member_params,member_rotations,member_cnots,status,error\n";
}

void append_record(std::ostream& out, const RunRecord& record) {
    out << sanitize_field(record.model_id) << ',' << sanitize_field(record.dataset) << ','
        << record.layers << ',' << record.repeat << ',' << record.seed << ','
        << format_double(record.train_metric) << ',' << format_double(record.test_metric) << ','
        << format_double(record.wall_time) << ',' << record.n_members << ','
        << record.member_resources.n_qubits << ',' << record.member_resources.trainable_params
        << ',' << record.member_resources.rotation_gates << ','
        << record.member_resources.cnot_gates << ',' << (record.ok ? "ok" : "failed") << ','
        << sanitize_field(record.error) << '\n';
}

std::vector<RunRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open records file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("records file '" + path + "' is empty");

    std::vector<RunRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_line(line);
        if (f.size() != 15)
            throw std::runtime_error("records file '" + path + "' line " +
                                     std::to_string(line_no) + ": expected 15 fields, got " +
                                     std::to_string(f.size()));
        RunRecord r;
        r.model_id = f[0];
        r.dataset = f[1];
        r.layers = static_cast<int>(field_double(f[2]));
        r.repeat = static_cast<int>(field_double(f[3]));
        r.seed = std::stoull(f[4]);
        r.train_metric = field_double(f[5]);
        r.test_metric = field_double(f[6]);
        r.wall_time = field_double(f[7]);
        r.n_members = static_cast<int>(field_double(f[8]));
        r.member_resources.n_qubits = static_cast<int>(field_double(f[9]));
        r.member_resources.trainable_params = static_cast<long long>(field_double(f[10]));
        r.member_resources.rotation_gates = static_cast<long long>(field_double(f[11]));
        r.member_resources.cnot_gates = static_cast<long long>(field_double(f[12]));
        r.member_resources.circuit_depth_gates =
            r.member_resources.rotation_gates + r.member_resources.cnot_gates;
        r.ok = f[13] == "ok";
        r.error = f[14];
        records.push_back(std::move(r));
    }
    return records;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "model,layers,n_runs,failed,train_mean,train_std,test_mean,test_std,"
           "members,member_qubits,member_params,member_rotations,member_cnots\n";
    for (const SummaryRow& row : rows) {
        out << sanitize_field(row.model) << ',' << row.layers << ',' << row.n_runs << ','
            << row.failed << ',' << format_double(row.train_mean) << ','
            << format_double(row.train_std) << ',' << format_double(row.test_mean) << ','
            << format_double(row.test_std) << ',' << row.n_members << ','
            << row.member_resources.n_qubits << ',' << row.member_resources.trainable_params
            << ',' << row.member_resources.rotation_gates << ','
            << row.member_resources.cnot_gates << '\n';
    }
}

void write_summary_json(const std::string& path, const std::string& dataset,
                        const std::vector<SummaryRow>& rows) {
    ordered_json root;
    root["dataset"] = dataset;
    root["groups"] = ordered_json::array();
    for (const SummaryRow& row : rows) {
        ordered_json g;
        g["model"] = row.model;
        g["layers"] = row.layers;
        g["n_runs"] = row.n_runs;
        g["failed"] = row.failed;
        g["train_metric"] = {{"mean", row.train_mean}, {"std", row.train_std}};
        g["test_metric"] = {{"mean", row.test_mean}, {"std", row.test_std}};
        g["resources"] = {{"members", row.n_members},
                          {"qubits", row.member_resources.n_qubits},
                          {"params", row.member_resources.trainable_params},
                          {"rotations", row.member_resources.rotation_gates},
                          {"cnots", row.member_resources.cnot_gates}};
        root["groups"].push_back(std::move(g));
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << root.dump(2) << '\n';
}

void write_resource_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "model,layers,members,member_qubits,member_params,member_rotations,member_cnots,"
           "total_qubits,total_params,total_rotations,total_cnots\n";
    for (const SummaryRow& row : rows) {
        const ResourceReport& r = row.member_resources;
        const long long m = row.n_members;
        out << sanitize_field(row.model) << ',' << row.layers << ',' << row.n_members << ','
            << r.n_qubits << ',' << r.trainable_params << ',' << r.rotation_gates << ','
            << r.cnot_gates << ',' << m * r.n_qubits << ',' << m * r.trainable_params << ','
            << m * r.rotation_gates << ',' << m * r.cnot_gates << '\n';
    }
}

void write_metric_svg(const std::string& path, const std::vector<SummaryRow>& rows,
                      const std::string& metric_label) {
    if (rows.empty()) throw std::invalid_argument("no summary rows to plot");

    std::vector<std::string> models;
    for (const SummaryRow& row : rows)
        if (std::find(models.begin(), models.end(), row.model) == models.end())
            models.push_back(row.model);

    double x_min = rows.front().layers, x_max = rows.front().layers;
    double y_min = rows.front().test_mean, y_max = rows.front().test_mean;
    for (const SummaryRow& row : rows) {
        x_min = std::min(x_min, static_cast<double>(row.layers));
        x_max = std::max(x_max, static_cast<double>(row.layers));
        y_min = std::min(y_min, row.test_mean);
        y_max = std::max(y_max, row.test_mean);
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    const double y_pad = (y_max - y_min) == 0.0 ? 0.5 : 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double width = 760, height = 480;
    const double left = 80, right = width - 170, top = 30, bottom = height - 55;
    auto sx = [&](double layers) {
        return left + (layers - x_min) / (x_max - x_min) * (right - left);
    };
    auto sy = [&](double value) {
        return bottom - (value - y_min) / (y_max - y_min) * (bottom - top);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double value = y_min + (y_max - y_min) * i / 5.0;
        const double y = sy(value);
        svg << "<line x1=\"" << left - 4 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\""
            << y << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">"
            << tick_label(value) << "</text>\n";
    }
    const int x_span = static_cast<int>(x_max - x_min);
    const int x_step = x_span > 12 ? (x_span + 11) / 12 : 1;
    for (int l = static_cast<int>(x_min); l <= static_cast<int>(x_max); l += x_step) {
        const double x = sx(l);
        svg << "<line x1=\"" << x << "\" y1=\"" << bottom << "\" x2=\"" << x << "\" y2=\""
            << bottom + 4 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << bottom + 18
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << l
            << "</text>\n";
    }
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 14
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">layers"
        << "</text>\n";
    svg << "<text x=\"20\" y=\"" << (top + bottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 "
        << (top + bottom) / 2 << ")\">" << metric_label << "</text>\n";

    for (std::size_t m = 0; m < models.size(); ++m) {
        const char* color = plot_colors[m % (sizeof plot_colors / sizeof plot_colors[0])];
        std::vector<std::pair<int, double>> points;
        for (const SummaryRow& row : rows)
            if (row.model == models[m]) points.push_back({row.layers, row.test_mean});
        std::sort(points.begin(), points.end());

        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [layers, value] : points) svg << sx(layers) << ',' << sy(value) << ' ';
        svg << "\"/>\n";
        for (const auto& [layers, value] : points)
            svg << "<circle cx=\"" << sx(layers) << "\" cy=\"" << sy(value)
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";

        const double ly = top + 16.0 * static_cast<double>(m);
        svg << "<line x1=\"" << right + 12 << "\" y1=\"" << ly << "\" x2=\"" << right + 34
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << right + 40 << "\" y=\"" << ly + 4
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << models[m] << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << svg.str();
}

void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir,
                 const std::string& dataset, const std::string& metric_label) {
    if (records.empty()) throw std::invalid_argument("no records to report");
    std::filesystem::create_directories(out_dir);
    const std::vector<SummaryRow> rows = summarize(records);
    const std::filesystem::path dir(out_dir);
    write_summary_csv((dir / "summary.csv").string(), rows);
    write_summary_json((dir / "summary.json").string(), dataset, rows);
    write_resource_csv((dir / "resources.csv").string(), rows);
    write_metric_svg((dir / "metric_vs_layers.svg").string(), rows, metric_label);
}

std::vector<SummaryRow> resource_rows(const ExperimentConfig& config, int n_features) {
    std::vector<SummaryRow> rows;
    for (const ModelSpec& model : config.models) {
        for (int layers : config.layers) {
            SummaryRow row;
            row.model = model.id;
            row.layers = layers;
            int qubits = n_features;
            if (model.kind == ModelSpec::Kind::bagging)
                qubits = subspace_size(n_features, model.feature_ratio, config.subspace_rounding);
            row.n_members = model.kind == ModelSpec::Kind::fm ? 1 : config.n_estimators;
            row.member_resources = resource_report(QnnConfig::regression(qubits, layers));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace qens
