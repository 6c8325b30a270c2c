#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbr/graph.hpp"

namespace rbrcli {

// "file", "wc", "cp:<p>" (e.g. cp:0.1).
rbr::WeightingModel parse_model(const std::string& s);

rbr::DegreeKind parse_degree_kind(const std::string& s);

// One label per line, '#' comments and blank lines ignored.
std::vector<rbr::Label> read_label_file(const std::string& path);
void write_label_file(const std::string& path, const std::vector<rbr::Label>& labels);

std::vector<rbr::NodeId> labels_to_nodes(const rbr::Graph& g,
                                         const std::vector<rbr::Label>& labels);
std::vector<rbr::Label> nodes_to_labels(const rbr::Graph& g,
                                        const std::vector<rbr::NodeId>& nodes);

// Rumor seed resolution: either the top-degree rule or an explicit file.
std::vector<rbr::NodeId> resolve_rumor(const rbr::Graph& g, int rumor_top,
                                       const std::string& rumor_file,
                                       rbr::DegreeKind kind);

struct CsvRow {
    std::string dataset, model, algo;
    int k = 0;
    double f_estimate = 0.0, f_stderr = 0.0;
    std::uint64_t tuples_used = 0;
    double wall_ms = 0.0;
    std::uint64_t master_seed = 0;
};

inline constexpr char kCsvHeader[] =
    "dataset,model,algo,k,f_estimate,f_stderr,tuples_used,wall_ms,master_seed";

std::string csv_line(const CsvRow& row);

// Appends a row, writing the header first when the file is new or empty.
void append_csv(const std::string& path, const CsvRow& row);

std::uint64_t scaled_count(std::uint64_t count, double scale);

std::string format_g6(double v);

}  // namespace rbrcli
