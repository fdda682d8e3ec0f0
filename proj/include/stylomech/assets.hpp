#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stylomech::assets {

/// Contents of a file from data/, compiled into the library.
std::optional<std::string_view> find(std::string_view name);

/// `find` that throws Error(IoError) for unknown names.
std::string_view get(std::string_view name);

/// Non-empty, non-comment (`#`) lines with surrounding whitespace removed.
std::vector<std::string> lines(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace stylomech::assets
