#pragma once

#include "pathvar/path.hpp"

#include <iosfwd>
#include <string>

namespace pathvar {

/// Shortest representation of x that round-trips to the same double.
std::string format_double(double x);

/// Path CSV: header "t,x1,...,xN", one row per node, shortest round-trip
/// float formatting, '\n' line endings. Output is byte-deterministic.
void write_path_csv(std::ostream& out, const Path& path);
void write_path_csv_file(const std::string& file, const Path& path);

/// Parse a path CSV. The t column must be uniformly ascending and describe
/// a valid grid (even m >= 8); all values must be finite. Errors cite
/// 1-based line numbers.
Path read_path_csv(std::istream& in);
Path read_path_csv_file(const std::string& file);

} // namespace pathvar
