#include "mkdvlab/warnings.hpp"

#include <cstdio>
#include <mutex>
#include <set>
#include <string>
#include <utility>

namespace mkdv {
namespace {

std::mutex handler_mutex;
WarningHandler handler;

std::mutex once_mutex;
std::set<std::string> seen_keys;

}  // namespace

void set_warning_handler(WarningHandler h) {
    std::lock_guard lock(handler_mutex);
    handler = std::move(h);
}

void warn(const std::string& message) {
    WarningHandler h;
    {
        std::lock_guard lock(handler_mutex);
        h = handler;
    }
    if (h) {
        h(message);
    } else {
        std::fprintf(stderr, "[mkdvlab] warning: %s\n", message.c_str());
    }
}

void warn_once(const std::string& key, const std::string& message) {
    {
        std::lock_guard lock(once_mutex);
        if (!seen_keys.insert(key).second) return;
    }
    warn(message);
}

void reset_warn_once() {
    std::lock_guard lock(once_mutex);
    seen_keys.clear();
}

}  // namespace mkdv
