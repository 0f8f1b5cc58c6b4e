#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace cx {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

Timestamp now_ms();

/// "2015-01-08T12:00:00.000Z"
std::string format_timestamp(Timestamp t);
/// Accepts the format_timestamp form, with or without milliseconds.
std::optional<Timestamp> parse_timestamp(std::string_view s);

}  // namespace cx
