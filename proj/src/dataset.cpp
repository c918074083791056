#include "gpn/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "gpn/errors.hpp"

namespace gpn {

void Dataset::validate() const {
    if (y.size() == 0) throw DataError("dataset is empty");
    if (z.size() != y.size() || x.rows() != y.size())
        throw DataError("dataset column lengths disagree");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (z[i] != 0 && z[i] != 1)
            throw DataError("treatment must be 0/1 at row " + std::to_string(i + 1));
        if (!std::isfinite(y[i]))
            throw DataError("non-finite outcome at row " + std::to_string(i + 1));
    }
    if (!x.allFinite()) throw DataError("non-finite covariate value");
}

bool Dataset::both_arms() const {
    bool has0 = false, has1 = false;
    for (Eigen::Index i = 0; i < z.size(); ++i) (z[i] == 1 ? has1 : has0) = true;
    return has0 && has1;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, std::size_t row, std::size_t col) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw DataError("could not parse number at row " + std::to_string(row) + ", column " +
                        std::to_string(col));
    return value;
}

}  // namespace

Dataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("dataset file is empty: " + path.string());
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "y" || header[1] != "z")
        throw DataError("dataset header must be y,z,x1..xd");
    const std::size_t d = header.size() - 2;

    std::vector<double> ys;
    std::vector<int> zs;
    std::vector<double> xs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw DataError("row " + std::to_string(row) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
        ys.push_back(parse_number(fields[0], row, 1));
        const double zv = parse_number(fields[1], row, 2);
        if (zv != 0.0 && zv != 1.0)
            throw DataError("treatment must be 0/1 at row " + std::to_string(row));
        zs.push_back(static_cast<int>(zv));
        for (std::size_t j = 0; j < d; ++j) xs.push_back(parse_number(fields[2 + j], row, 3 + j));
    }
    if (ys.empty()) throw DataError("dataset has no data rows: " + path.string());

    Dataset data;
    const Eigen::Index n = static_cast<Eigen::Index>(ys.size());
    data.y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);
    data.z = Eigen::Map<Eigen::VectorXi>(zs.data(), n);
    data.x = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        xs.data(), n, static_cast<Eigen::Index>(d));
    data.validate();
    return data;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write dataset file: " + path.string());
    out << "y,z";
    for (Eigen::Index j = 0; j < data.dims(); ++j) out << ",x" << (j + 1);
    out << "\n";
    char buf[64];
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", data.y[i]);
        out << buf << ',' << data.z[i];
        for (Eigen::Index j = 0; j < data.dims(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data.x(i, j));
            out << ',' << buf;
        }
        out << "\n";
    }
}

Dataset subset(const Dataset& data, std::span<const int> indices) {
    Dataset out;
    const Eigen::Index m = static_cast<Eigen::Index>(indices.size());
    out.x.resize(m, data.dims());
    out.z.resize(m);
    out.y.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const int src = indices[i];
        out.x.row(i) = data.x.row(src);
        out.z[i] = data.z[src];
        out.y[i] = data.y[src];
    }
    return out;
}

}  // namespace gpn
