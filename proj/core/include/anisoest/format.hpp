#ifndef ANISOEST_FORMAT_HPP
#define ANISOEST_FORMAT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "anisoest/experiments.hpp"

namespace anisoest {

/// Three significant digits, compact exponent: 1.01e-1, 2.46e+0.
std::string sci3(double v);

/// Two fixed decimals (effectivity indices and ratios).
std::string fixed2(double v);

/// Shortest exact representation (17 significant digits).
std::string full17(double v);

/// One row per region; fixed column set and order.
void write_reports_csv(std::ostream& os, const std::vector<EstimatorReport>& reports);

/// Full-precision flat CSV, one row per table case.
void write_table_csv(std::ostream& os, const TableReport& table);

/// Reads back what write_table_csv produced; numeric fields round-trip
/// bit-exactly. Strip reports are not part of the format.
TableReport read_table_csv(std::istream& is);

/// Aligned human-readable rendering in the benchmark-table style.
std::string table_markdown(const TableReport& table);

std::string case_markdown(const CaseReport& rep);

}  // namespace anisoest

#endif
