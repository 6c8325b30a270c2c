#include "common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "rbr/errors.hpp"

namespace rbrcli {

using rbr::DataError;

rbr::WeightingModel parse_model(const std::string& s) {
    if (s == "file") return rbr::WeightingModel::from_file();
    if (s == "wc") return rbr::WeightingModel::weighted_cascade();
    if (s.rfind("cp:", 0) == 0) {
        char* end = nullptr;
        double p = std::strtod(s.c_str() + 3, &end);
        if (end != s.c_str() + s.size())
            throw std::invalid_argument("bad model probability in '" + s + "'");
        return rbr::WeightingModel::constant(p);
    }
    throw std::invalid_argument("unknown model '" + s + "' (expected file, wc or cp:<p>)");
}

rbr::DegreeKind parse_degree_kind(const std::string& s) {
    if (s == "out") return rbr::DegreeKind::kOut;
    if (s == "in") return rbr::DegreeKind::kIn;
    if (s == "total") return rbr::DegreeKind::kTotal;
    throw std::invalid_argument("unknown degree kind '" + s + "'");
}

std::vector<rbr::Label> read_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open seed file: " + path);
    std::vector<rbr::Label> labels;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        const char* s = line.c_str();
        while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
        if (!*s) continue;
        char* end = nullptr;
        errno = 0;
        long long v = std::strtoll(s, &end, 10);
        while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
        if (errno != 0 || *end || v < 0)
            throw DataError(path + " line " + std::to_string(line_no) + ": bad node label");
        labels.push_back(static_cast<rbr::Label>(v));
    }
    return labels;
}

void write_label_file(const std::string& path, const std::vector<rbr::Label>& labels) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write seed file: " + path);
    for (rbr::Label l : labels) out << l << '\n';
    if (!out) throw DataError("write failed: " + path);
}

std::vector<rbr::NodeId> labels_to_nodes(const rbr::Graph& g,
                                         const std::vector<rbr::Label>& labels) {
    std::vector<rbr::NodeId> nodes;
    nodes.reserve(labels.size());
    for (rbr::Label l : labels) nodes.push_back(g.node_of_label(l));
    return nodes;
}

std::vector<rbr::Label> nodes_to_labels(const rbr::Graph& g,
                                        const std::vector<rbr::NodeId>& nodes) {
    std::vector<rbr::Label> labels;
    labels.reserve(nodes.size());
    for (rbr::NodeId u : nodes) labels.push_back(g.label_of(u));
    return labels;
}

std::vector<rbr::NodeId> resolve_rumor(const rbr::Graph& g, int rumor_top,
                                       const std::string& rumor_file,
                                       rbr::DegreeKind kind) {
    if (!rumor_file.empty() && rumor_top > 0)
        throw std::invalid_argument("give either --rumor-top or --rumor-file, not both");
    if (!rumor_file.empty()) {
        std::vector<rbr::NodeId> rumor = labels_to_nodes(g, read_label_file(rumor_file));
        if (rumor.empty()) throw DataError("rumor seed file is empty: " + rumor_file);
        return rumor;
    }
    if (rumor_top <= 0)
        throw std::invalid_argument("rumor seeds required: --rumor-top or --rumor-file");
    return rbr::degree_top_k(g, rumor_top, kind);
}

std::string format_g6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string csv_line(const CsvRow& row) {
    std::string s;
    s += row.dataset;
    s += ',';
    s += row.model;
    s += ',';
    s += row.algo;
    s += ',';
    s += std::to_string(row.k);
    s += ',';
    s += format_g6(row.f_estimate);
    s += ',';
    s += format_g6(row.f_stderr);
    s += ',';
    s += std::to_string(row.tuples_used);
    s += ',';
    s += format_g6(row.wall_ms);
    s += ',';
    s += std::to_string(row.master_seed);
    return s;
}

void append_csv(const std::string& path, const CsvRow& row) {
    bool need_header = false;
    {
        std::ifstream probe(path, std::ios::binary);
        need_header = !probe || probe.peek() == std::ifstream::traits_type::eof();
    }
    std::ofstream out(path, std::ios::app);
    if (!out) throw DataError("cannot write csv: " + path);
    if (need_header) out << kCsvHeader << '\n';
    out << csv_line(row) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

std::uint64_t scaled_count(std::uint64_t count, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("eval scale must be positive");
    double scaled = static_cast<double>(count) * scale;
    if (scaled < 1.0) return 1;
    return static_cast<std::uint64_t>(std::llround(scaled));
}

}  // namespace rbrcli
