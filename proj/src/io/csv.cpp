#include "blowup/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup::io {

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw Error("cannot format number");
    return std::string(buf, end);
}

double parse_double(const std::string& text) {
    double x = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last) throw Error(fmt::format("not a number: '{}'", text));
    return x;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw Error(fmt::format("missing CSV column '{}'", name));
}

namespace {

std::string escape(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string out = "\"";
    for (char c : f) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw Error("CSV row width does not match the header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ += ',';
        out_ += escape(fields[i]);
    }
    out_ += "\r\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_) throw Error("CSV row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ += ',';
        out_ += format_double(values[i]);
    }
    out_ += "\r\n";
}

void CsvWriter::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(fmt::format("cannot write {}", path.string()));
    f << out_;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(fmt::format("cannot read {}", path.string()));
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();

    CsvTable t;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, any = false;
    auto end_record = [&] {
        rec.push_back(field);
        field.clear();
        if (t.header.empty())
            t.header = std::move(rec);
        else
            t.rows.push_back(std::move(rec));
        rec.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = any = true;
        } else if (c == ',') {
            rec.push_back(field);
            field.clear();
            any = true;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
        } else {
            field += c;
            any = true;
        }
    }
    if (any || !field.empty()) end_record();
    for (const auto& r : t.rows)
        if (r.size() != t.header.size()) throw Error(fmt::format("ragged CSV in {}", path.string()));
    return t;
}

void write_series(const FunctionalSeries& series, const std::filesystem::path& path) {
    CsvWriter w({"s", "value", "tail_bound"});
    for (std::size_t i = 0; i < series.size(); ++i)
        w.row({series.s[i], series.value[i], series.tail_bound.empty() ? 0.0 : series.tail_bound[i]});
    w.save(path);
}

FunctionalSeries read_series(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const auto is = t.column("s"), iv = t.column("value"), it = t.column("tail_bound");
    FunctionalSeries out;
    out.name = path.stem().string();
    for (const auto& r : t.rows) out.push(parse_double(r[is]), parse_double(r[iv]), parse_double(r[it]));
    return out;
}

void write_curve(const std::string& x_name, const std::vector<double>& x, const std::string& y_name,
                 const std::vector<double>& y, const std::filesystem::path& path) {
    CsvWriter w({x_name, y_name});
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) w.row({x[i], y[i]});
    w.save(path);
}

}  // namespace blowup::io
