#pragma once

#include "pobs/bernoulli.hpp"
#include "pobs/censored_truncated.hpp"
#include "pobs/current_status.hpp"
#include "pobs/truncated_regression.hpp"

#include <array>
#include <string_view>
#include <variant>
#include <vector>

namespace pobs {

enum class Design
{
  plain,
  case_control,
  x_truncated,
  left_truncated,
  ltrc,
  right_truncated,
  double_truncated,
  current_status
};

inline constexpr std::array<Design, 8> all_designs{
  Design::plain,          Design::case_control,    Design::x_truncated,
  Design::left_truncated, Design::ltrc,            Design::right_truncated,
  Design::double_truncated, Design::current_status
};

std::string_view to_string(Design d);
//! Throws ConfigError for unknown names.
Design design_from_string(std::string_view name);

bool is_binary_design(Design d);

using RecordSet = std::variant<std::vector<BinaryRecord>,
                               std::vector<LtRecord>,
                               std::vector<LtrcRecord>,
                               std::vector<RtRecord>,
                               std::vector<DtRecord>,
                               std::vector<CsRecord>>;

size_t record_count(const RecordSet& records);

} // namespace pobs
