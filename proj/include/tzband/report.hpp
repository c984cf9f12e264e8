#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tzband/experiments.hpp"

namespace tzband {

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);
/// Shortest round-trip decimal form of v; "nan", "inf", "-inf" otherwise.
std::string csv_number(double v);

void write_table_csv(std::ostream& os, const Table& t);
/// File name of a table's CSV inside the report directory.
std::string table_file(const ExperimentResult& r, const Table& t);

/// Standalone Python/matplotlib script that reads only `csv_file`.
std::string plot_script(const Series& s, const std::string& csv_file);

/// Pass/fail lines per criterion; failures name the criterion id.
std::string summary_text(const std::vector<ExperimentResult>& results);

/// Writes every table as CSV, one plot script per series and summary.txt into
/// out_dir (created if needed). Output bytes depend only on the results.
/// Returns 0 iff every criterion passed; throws std::runtime_error on I/O errors.
int emit_report(const std::vector<ExperimentResult>& results, const std::string& out_dir);

}  // namespace tzband
