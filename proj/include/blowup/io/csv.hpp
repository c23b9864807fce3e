#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "blowup/model.hpp"

namespace blowup::io {

// shortest text that reads back to the same double
std::string format_double(double x);
double parse_double(const std::string& text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t column(const std::string& name) const;
};

// RFC 4180 output: CRLF line ends, fields quoted only when needed
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& fields);
    const std::string& text() const { return out_; }
    void save(const std::filesystem::path& path) const;

private:
    std::size_t width_;
    std::string out_;
};

CsvTable read_csv(const std::filesystem::path& path);

// s,value,tail_bound
void write_series(const FunctionalSeries& series, const std::filesystem::path& path);
FunctionalSeries read_series(const std::filesystem::path& path);
// two-column plot file
void write_curve(const std::string& x_name, const std::vector<double>& x, const std::string& y_name,
                 const std::vector<double>& y, const std::filesystem::path& path);

}  // namespace blowup::io
