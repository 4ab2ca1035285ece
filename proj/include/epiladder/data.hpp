#pragma once

#include <optional>
#include <string_view>

namespace epiladder {

/// Copies of the files under data/ compiled into the library, keyed by
/// their path relative to data/ (e.g. "templates/settings.json").
std::optional<std::string_view> builtin_data(std::string_view relative_path);

}  // namespace epiladder
