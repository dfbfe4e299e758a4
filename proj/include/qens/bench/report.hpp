#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qens/bench/experiment.hpp"

namespace qens {

// per-(model, layers) aggregate over repeats; stds are population stds
struct SummaryRow {
    std::string model;
    int layers = 0;
    int n_runs = 0;  // successful runs
    int failed = 0;
    double train_mean = 0.0;
    double train_std = 0.0;
    double test_mean = 0.0;
    double test_std = 0.0;
    int n_members = 1;
    ResourceReport member_resources;
};

// groups successful records by (model, layers) in first-appearance order
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

// shortest round-trip decimal form of a double; all CSV output uses this so
// reruns are byte-identical
std::string format_double(double value);

// records.csv streaming: fixed column order, one line per record
void write_records_header(std::ostream& out);
void append_record(std::ostream& out, const RunRecord& record);
std::vector<RunRecord> read_records_csv(const std::string& path);

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
void write_summary_json(const std::string& path, const std::string& dataset,
                        const std::vector<SummaryRow>& rows);

// per-model circuit resource table (qubits / params / rotations / CNOTs per
// member, plus ensemble totals)
void write_resource_csv(const std::string& path, const std::vector<SummaryRow>& rows);

// static line plot of the test metric vs layers, one polyline per model; no
// plotting dependency, plain SVG markup
void write_metric_svg(const std::string& path, const std::vector<SummaryRow>& rows,
                      const std::string& metric_label);

// writes summary.csv / summary.json / resources.csv / metric_vs_layers.svg
// for the given records into out_dir; throws std::invalid_argument when
// records is empty
void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir,
                 const std::string& dataset, const std::string& metric_label);

// resource table computed straight from a config, without training
std::vector<SummaryRow> resource_rows(const ExperimentConfig& config, int n_features);

}  // namespace qens
