#pragma once

#include <functional>
#include <string>

namespace mkdv {

// Non-fatal diagnostics (tail truncation, time step advisories) go through a
// process-wide handler; the default prints to stderr. Tests install a capture.
using WarningHandler = std::function<void(const std::string&)>;

void set_warning_handler(WarningHandler handler);  // empty -> restore default
void warn(const std::string& message);

// Deduplicated variant for warnings raised from hot loops: only the first
// message per key is emitted. reset_warn_once() is test support.
void warn_once(const std::string& key, const std::string& message);
void reset_warn_once();

}  // namespace mkdv
