#include "pobs/io.hpp"
#include "pobs/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pobs {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> out;
  size_t start = 0;
  for (;;) {
    const size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view field, std::string_view name)
{
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [p, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || p != end)
    throw DataError("column " + std::string(name) + ": '" +
                    std::string(field) + "' is not a number");
  if (!std::isfinite(v))
    throw DataError("column " + std::string(name) + ": non-finite value");
  return v;
}

bool parse_flag(std::string_view field, std::string_view name)
{
  const double v = parse_real(field, name);
  if (v != 0.0 && v != 1.0)
    throw DataError("column " + std::string(name) + ": expected 0 or 1, got '" +
                    std::string(field) + "'");
  return v == 1.0;
}

// Field accessor for one parsed row, by schema column index.
struct Row
{
  const std::vector<std::string_view>& fields;
  const std::vector<size_t>& index;
  const std::vector<std::string>& names;

  double real(size_t k) const { return parse_real(fields[index[k]], names[k]); }
  bool flag(size_t k) const { return parse_flag(fields[index[k]], names[k]); }
};

template<class Record>
Record make_record(Design design, const Row& r);

template<>
BinaryRecord make_record<BinaryRecord>(Design design, const Row& r)
{
  BinaryRecord b{ r.real(0), r.flag(1), true };
  if (design == Design::case_control)
    b.s = r.flag(2);
  return b;
}

template<>
LtRecord make_record<LtRecord>(Design, const Row& r)
{
  return { r.real(0), r.real(1), r.real(2) };
}

template<>
LtrcRecord make_record<LtrcRecord>(Design, const Row& r)
{
  return { r.real(0), r.real(1), r.real(2), r.flag(3) };
}

template<>
RtRecord make_record<RtRecord>(Design, const Row& r)
{
  return { r.real(0), r.real(1), r.real(2) };
}

template<>
DtRecord make_record<DtRecord>(Design, const Row& r)
{
  return { r.real(0), r.real(1), r.real(2), r.real(3) };
}

template<>
CsRecord make_record<CsRecord>(Design, const Row& r)
{
  return { r.real(0), r.real(1), r.flag(2) };
}

template<class Record>
void check_record(const Record& rec)
{
  if constexpr (!std::is_same_v<Record, BinaryRecord>)
    validate_records(std::span<const Record>(&rec, 1));
}

template<class Record>
RecordSet read_rows(std::istream& in,
                    Design design,
                    const std::vector<size_t>& index,
                    const std::vector<std::string>& names,
                    size_t width,
                    Dataset& ds)
{
  std::vector<Record> records;
  std::string line;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    ++ds.rows_read;
    const auto fields = split(line);
    try {
      if (fields.size() != width)
        throw DataError("expected " + std::to_string(width) + " fields, got " +
                        std::to_string(fields.size()));
      const Record rec = make_record<Record>(design, Row{ fields, index, names });
      check_record(rec);
      records.push_back(rec);
    } catch (const DataError& e) {
      ds.rejects.push_back({ lineno, e.what() });
    }
  }
  if (records.empty())
    throw DataError(ds.source + ": no valid records (" +
                    std::to_string(ds.rejects.size()) + " rejected)");
  return records;
}

void put(std::ostream& out, double v) { out << format_double(v); }
void put(std::ostream& out, bool v) { out << (v ? '1' : '0'); }

template<class... Fields>
void put_row(std::ostream& out, const Fields&... f)
{
  bool first = true;
  ((out << (first ? "" : ","), put(out, f), first = false), ...);
  out << '\n';
}

} // namespace

std::vector<std::string> schema_columns(Design design)
{
  switch (design) {
    case Design::plain:
    case Design::x_truncated:
      return { "x", "y" };
    case Design::case_control:
      return { "x", "y", "s" };
    case Design::left_truncated:
      return { "x", "t", "y" };
    case Design::ltrc:
      return { "x", "t", "z", "delta" };
    case Design::right_truncated:
      return { "x", "y", "c" };
    case Design::double_truncated:
      return { "x", "t", "y", "c" };
    case Design::current_status:
      return { "x", "c", "delta" };
  }
  throw ConfigError("unknown design");
}

std::string schema_line(Design design)
{
  std::string s;
  for (const auto& c : schema_columns(design))
    s += (s.empty() ? "" : ",") + c;
  return s;
}

Dataset ingest(std::istream& in, Design design, std::string source)
{
  Dataset ds{ design, {}, std::move(source), 0, {} };
  std::string header;
  if (!std::getline(in, header))
    throw DataError(ds.source + ": empty input");
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0)
    header.erase(0, 3);

  const auto names = schema_columns(design);
  const auto got = split(header);
  std::vector<size_t> index(names.size(), got.size());
  bool ok = got.size() == names.size();
  for (size_t k = 0; ok && k < names.size(); ++k) {
    for (size_t j = 0; j < got.size(); ++j)
      if (got[j] == names[k])
        index[k] = j;
    ok = index[k] < got.size();
  }
  if (!ok)
    throw ConfigError(ds.source + ": header '" + std::string(trim(header)) +
                      "' does not match the " + std::string(to_string(design)) +
                      " schema: " + schema_line(design));

  const size_t width = got.size();
  switch (design) {
    case Design::plain:
    case Design::x_truncated:
    case Design::case_control:
      ds.records = read_rows<BinaryRecord>(in, design, index, names, width, ds);
      break;
    case Design::left_truncated:
      ds.records = read_rows<LtRecord>(in, design, index, names, width, ds);
      break;
    case Design::ltrc:
      ds.records = read_rows<LtrcRecord>(in, design, index, names, width, ds);
      break;
    case Design::right_truncated:
      ds.records = read_rows<RtRecord>(in, design, index, names, width, ds);
      break;
    case Design::double_truncated:
      ds.records = read_rows<DtRecord>(in, design, index, names, width, ds);
      break;
    case Design::current_status:
      ds.records = read_rows<CsRecord>(in, design, index, names, width, ds);
      break;
  }
  return ds;
}

Dataset ingest_file(const std::filesystem::path& path, Design design)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError("cannot open " + path.string());
  return ingest(in, design, path.string());
}

void write_records(std::ostream& out, Design design, const RecordSet& records)
{
  out << schema_line(design) << '\n';
  std::visit(
    [&](const auto& v) {
      using R = typename std::decay_t<decltype(v)>::value_type;
      if constexpr (std::is_same_v<R, BinaryRecord>) {
        for (const auto& r : v) {
          if (design == Design::case_control)
            put_row(out, r.x, r.y, r.s);
          else
            put_row(out, r.x, r.y);
        }
      } else if constexpr (std::is_same_v<R, LtRecord>) {
        for (const auto& r : v)
          put_row(out, r.x, r.t, r.y);
      } else if constexpr (std::is_same_v<R, LtrcRecord>) {
        for (const auto& r : v)
          put_row(out, r.x, r.t, r.z, r.delta);
      } else if constexpr (std::is_same_v<R, RtRecord>) {
        for (const auto& r : v)
          put_row(out, r.x, r.y, r.c);
      } else if constexpr (std::is_same_v<R, DtRecord>) {
        for (const auto& r : v)
          put_row(out, r.x, r.t, r.y, r.c);
      } else {
        for (const auto& r : v)
          put_row(out, r.x, r.c, r.delta);
      }
    },
    records);
}

std::string format_double(double v)
{
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v,
                               std::chars_format::general, 17);
  if (ec != std::errc())
    throw std::runtime_error("format_double: buffer too small");
  return std::string(buf, p);
}

std::uint64_t fnv1a(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v)
{
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4)
    s[size_t(i)] = digits[v & 0xf];
  return s;
}

} // namespace pobs
