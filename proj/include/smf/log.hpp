#pragma once

#include <string>

namespace smf::log {

/// Verbosity read once from the SMF_LOG environment variable
/// (off | error | warn | info | debug); default warn.
enum class Level { Off = 0, Error, Warn, Info, Debug };

Level level();

void write(Level lvl, const std::string& msg);

inline void error(const std::string& msg) { write(Level::Error, msg); }
inline void warn(const std::string& msg) { write(Level::Warn, msg); }
inline void info(const std::string& msg) { write(Level::Info, msg); }
inline void debug(const std::string& msg) { write(Level::Debug, msg); }

} // namespace smf::log
