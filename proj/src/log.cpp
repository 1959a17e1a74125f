#include "smf/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace smf::log {
namespace {

Level parse_level() {
    const char* env = std::getenv("SMF_LOG");
    if (!env) return Level::Warn;
    if (std::strcmp(env, "off") == 0 || std::strcmp(env, "0") == 0) return Level::Off;
    if (std::strcmp(env, "error") == 0) return Level::Error;
    if (std::strcmp(env, "warn") == 0) return Level::Warn;
    if (std::strcmp(env, "info") == 0) return Level::Info;
    if (std::strcmp(env, "debug") == 0) return Level::Debug;
    return Level::Warn;
}

const char* tag(Level lvl) {
    switch (lvl) {
        case Level::Error: return "error";
        case Level::Warn: return "warn";
        case Level::Info: return "info";
        case Level::Debug: return "debug";
        default: return "";
    }
}

} // namespace

Level level() {
    static const Level lvl = parse_level();
    return lvl;
}

void write(Level lvl, const std::string& msg) {
    if (lvl > level() || level() == Level::Off) return;
    std::fprintf(stderr, "smf %s: %s\n", tag(lvl), msg.c_str());
}

} // namespace smf::log
