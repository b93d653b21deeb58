#pragma once

#include <stdexcept>
#include <string>

namespace wclab {

/// Raised for malformed input, violated preconditions and mismatched groups.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Three-valued answer of every bounded decision procedure.
enum class Verdict { yes, no, unknown };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

/// Exit code convention shared by every decision command.
inline int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::yes: return 0;
    case Verdict::no: return 1;
    case Verdict::unknown: return 2;
    }
    return 2;
}

} // namespace wclab
