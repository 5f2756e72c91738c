#pragma once

#include <stdexcept>
#include <string>

namespace polysemy {

/// The supplied totals admit no model solution (e.g. M <= L).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Root bracketing failed: no sign change, or bracket expansion hit its cap.
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Too few comparison classes survive merging for a chi-square test.
struct InsufficientClassesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A spectrum file could not be parsed. `line` is 1-based, 0 when not tied
/// to a specific line.
struct SpectrumParseError : std::runtime_error {
    SpectrumParseError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")"
                                         : msg),
          line(line_no) {}
    int line;
};

/// The L* search found no finite objective value anywhere.
struct FitFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace polysemy
