#include "specadapt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace specadapt {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end != s.c_str() && *end == '\0';
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw IoError(IoError::Code::bad_value,
                      context + ": not a number: '" + s + "'");
    return v;
}

long parse_long(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw IoError(IoError::Code::bad_value,
                      context + ": not an integer: '" + s + "'");
    return v;
}

}  // namespace

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

PredictionLog read_prediction_log_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Code::open_failed, "cannot open " + path);
    PredictionLog log;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (line_no == 1 && !fields.empty() && !looks_numeric(fields[0]))
            continue;  // header
        if (fields.size() != 3)
            throw IoError(IoError::Code::bad_value,
                          path + ": line " + std::to_string(line_no) +
                              " needs confidence,predicted,actual");
        const std::string ctx = path + ": line " + std::to_string(line_no);
        log.confidences.push_back(parse_double(fields[0], ctx));
        log.predicted.push_back(static_cast<int>(parse_long(fields[1], ctx)));
        log.actual.push_back(static_cast<int>(parse_long(fields[2], ctx)));
    }
    if (log.size() == 0)
        throw IoError(IoError::Code::bad_value, path + ": empty prediction log");
    log.validate();
    return log;
}

void write_prediction_log_csv(const PredictionLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(IoError::Code::open_failed, "cannot create " + path);
    out << "confidence,predicted,actual\n";
    for (size_t i = 0; i < log.size(); ++i)
        out << csv_double(log.confidences[i]) << "," << log.predicted[i] << ","
            << log.actual[i] << "\n";
}

void write_reliability_csv(const std::vector<ReliabilityBin>& bins, double ece_value,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(IoError::Code::open_failed, "cannot create " + path);
    out << "lower,upper,count,mean_confidence,accuracy\n";
    for (const auto& b : bins)
        out << csv_double(b.lower) << "," << csv_double(b.upper) << "," << b.count
            << "," << csv_double(b.mean_confidence) << "," << csv_double(b.accuracy)
            << "\n";
    out << "ece," << csv_double(ece_value) << ",,,\n";
}

ReliabilityCsv read_reliability_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Code::open_failed, "cannot open " + path);
    ReliabilityCsv result;
    std::string line;
    size_t line_no = 0;
    bool saw_ece = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (line_no == 1 && !looks_numeric(fields[0])) continue;
        const std::string ctx = path + ": line " + std::to_string(line_no);
        if (!fields.empty() && fields[0] == "ece") {
            if (fields.size() < 2)
                throw IoError(IoError::Code::bad_value, ctx + ": malformed ece row");
            result.ece = parse_double(fields[1], ctx);
            saw_ece = true;
            continue;
        }
        if (fields.size() != 5)
            throw IoError(IoError::Code::bad_value, ctx + ": expected 5 fields");
        ReliabilityBin bin;
        bin.lower = parse_double(fields[0], ctx);
        bin.upper = parse_double(fields[1], ctx);
        bin.count = static_cast<size_t>(parse_long(fields[2], ctx));
        bin.mean_confidence = parse_double(fields[3], ctx);
        bin.accuracy = parse_double(fields[4], ctx);
        result.bins.push_back(bin);
    }
    if (!saw_ece)
        throw IoError(IoError::Code::bad_value, path + ": missing ece summary row");
    return result;
}

}  // namespace specadapt
