#include "odris/parallel.hpp"

#include <cstdlib>
#include <string>

namespace odris {

int env_thread_cap() {
    const char* raw = std::getenv("ODRIS_THREADS");
    if (!raw || !*raw) return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 0 || v > 4096) return 0;
    return static_cast<int>(v);
}

}  // namespace odris
