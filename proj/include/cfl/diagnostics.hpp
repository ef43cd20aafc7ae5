#pragma once

#include <functional>
#include <string_view>

namespace cfl {

using WarningHandler = std::function<void(std::string_view)>;

// Installs a process-wide warning sink and returns the previous one. The
// default handler writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace cfl
