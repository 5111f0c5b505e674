#pragma once

#include "pobs/design.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pobs {

//! Column names of the CSV schema of a design, in output order.
std::vector<std::string> schema_columns(Design design);
std::string schema_line(Design design);

struct RowReject
{
  size_t line; // 1-based, header is line 1
  std::string reason;
};

struct Dataset
{
  Design design;
  RecordSet records;
  std::string source;
  size_t rows_read = 0;
  std::vector<RowReject> rejects;
};

//! Reads a comma-separated table with a header row. Malformed rows, non-finite
//! values and rows violating the design's sampling inequality are rejected and
//! logged; a header that does not match the schema throws ConfigError, and a
//! result without records throws DataError.
Dataset ingest(std::istream& in, Design design, std::string source = "<stream>");
Dataset ingest_file(const std::filesystem::path& path, Design design);

//! Writes records under the design's header, values with 17 significant
//! digits.
void write_records(std::ostream& out, Design design, const RecordSet& records);

//! Shortest-round-trip-safe decimal text: 17 significant digits.
std::string format_double(double v);

//! FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

} // namespace pobs
