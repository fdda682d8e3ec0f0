#pragma once

#include <functional>
#include <string_view>

namespace stylomech::log {

using Sink = std::function<void(std::string_view)>;

/// Replaces the warning sink (default: "warning: <msg>" on std::clog).
/// Passing an empty function silences warnings. Returns the previous sink.
Sink set_warning_sink(Sink sink);

void warn(std::string_view message);

}  // namespace stylomech::log
