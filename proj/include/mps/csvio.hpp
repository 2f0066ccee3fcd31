#pragma once
// Deterministic text output helpers. All numeric CSV/JSON output goes through
// format_double so identical runs produce byte-identical files.

#include <ostream>
#include <string>
#include <vector>

namespace mps {

// Shortest decimal string that round-trips to the same double (to_chars).
// Infinities and NaN render as "inf", "-inf", "nan".
std::string format_double(double x);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);

}  // namespace mps
