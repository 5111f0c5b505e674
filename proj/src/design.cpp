#include "pobs/design.hpp"
#include "pobs/errors.hpp"

#include <string>

namespace pobs {

std::string_view to_string(Design d)
{
  switch (d) {
    case Design::plain:
      return "plain";
    case Design::case_control:
      return "case_control";
    case Design::x_truncated:
      return "x_truncated";
    case Design::left_truncated:
      return "left_truncated";
    case Design::ltrc:
      return "ltrc";
    case Design::right_truncated:
      return "right_truncated";
    case Design::double_truncated:
      return "double_truncated";
    case Design::current_status:
      return "current_status";
  }
  return "unknown";
}

Design design_from_string(std::string_view name)
{
  for (Design d : all_designs)
    if (to_string(d) == name)
      return d;
  throw ConfigError("unknown design '" + std::string(name) + "'");
}

bool is_binary_design(Design d)
{
  return d == Design::plain || d == Design::case_control ||
         d == Design::x_truncated;
}

size_t record_count(const RecordSet& records)
{
  return std::visit([](const auto& v) { return v.size(); }, records);
}

} // namespace pobs
