#include "coles/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace coles::log {

Level threshold() noexcept
{
    const char* env = std::getenv("COLES_LOG");
    if (env == nullptr)
        return Level::error;
    const std::string_view v(env);
    if (v == "debug")
        return Level::debug;
    if (v == "info")
        return Level::info;
    return Level::error;
}

void write(Level level, std::string_view message)
{
    if (static_cast<int>(level) > static_cast<int>(threshold()))
        return;
    static constexpr const char* names[] = {"error", "info", "debug"};
    std::cerr << "[coles:" << names[static_cast<int>(level)] << "] " << message << '\n';
}

} // namespace coles::log
