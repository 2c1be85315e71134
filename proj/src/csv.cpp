#include "pathvar/csv.hpp"

#include "pathvar/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace pathvar {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

void write_path_csv(std::ostream& out, const Path& path) {
    out << 't';
    for (int k = 1; k <= path.dim(); ++k) out << ",x" << k;
    out << '\n';
    const Grid& g = path.grid();
    for (int i = 0; i <= g.m; ++i) {
        out << format_double(g.node(i));
        for (int k = 0; k < path.dim(); ++k) out << ',' << format_double(path(i, k));
        out << '\n';
    }
}

void write_path_csv_file(const std::string& file, const Path& path) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + file);
    write_path_csv(out, path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

double parse_field(const std::string& s, int line_no) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw CsvError(line_no, "cannot parse number '" + s + "'");
    if (!std::isfinite(v))
        throw CsvError(line_no, "non-finite value '" + s + "'");
    return v;
}

} // namespace

Path read_path_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw CsvError(1, "empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_fields(line);
    if (header.size() < 2 || header[0] != "t")
        throw CsvError(1, "expected header t,x1,...,xN");
    const int dim = static_cast<int>(header.size()) - 1;
    for (int k = 0; k < dim; ++k)
        if (header[k + 1] != "x" + std::to_string(k + 1))
            throw CsvError(1, "expected column x" + std::to_string(k + 1) +
                              ", got '" + header[k + 1] + "'");

    std::vector<double> ts;
    std::vector<double> values;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (static_cast<int>(fields.size()) != dim + 1)
            throw CsvError(line_no, "expected " + std::to_string(dim + 1) + " fields, got " +
                                        std::to_string(fields.size()));
        ts.push_back(parse_field(fields[0], line_no));
        for (int k = 0; k < dim; ++k) values.push_back(parse_field(fields[k + 1], line_no));
    }
    const int m = static_cast<int>(ts.size()) - 1;
    if (m < 8) throw CsvError(line_no, "need at least 9 rows (m >= 8)");
    if (m % 2 != 0) throw CsvError(line_no, "node count must be odd (even interval count)");

    const double a = ts.front();
    const double b = ts.back();
    if (!(a < b)) throw CsvError(line_no, "grid must be uniform ascending");
    const double h = (b - a) / m;
    for (int i = 0; i <= m; ++i) {
        const double expect = a + i * h;
        if (std::fabs(ts[i] - expect) > 1e-9 * std::max(1.0, std::fabs(expect)))
            throw CsvError(i + 2, "grid must be uniform ascending");
    }

    Grid grid = make_grid(a, b, m);
    Path p(grid, dim);
    for (int i = 0; i <= m; ++i)
        for (int k = 0; k < dim; ++k) p(i, k) = values[static_cast<size_t>(i) * dim + k];
    return p;
}

Path read_path_csv_file(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + file);
    return read_path_csv(in);
}

} // namespace pathvar
