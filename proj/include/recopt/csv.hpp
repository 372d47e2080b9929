#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "recopt/analysis.hpp"

namespace recopt {

// Shortest decimal string that parses back to exactly x. Infinities print
// as "inf" / "-inf", NaN as "nan".
std::string format_double(double x);

// CSV with '#'-prefixed metadata lines, a header row, then numeric rows.
// NaN cells are written empty.
void write_csv(std::ostream& os, const SweepSeries& series,
               const std::vector<std::string>& metadata);

// Inverse of write_csv: skips '#' lines, reads the header, maps empty cells
// back to NaN. Throws ConfigError on malformed input.
SweepSeries read_csv(std::istream& is);

}  // namespace recopt
