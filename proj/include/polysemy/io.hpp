#pragma once

#include <iosfwd>
#include <string>

#include "polysemy/model.hpp"

namespace polysemy {

/// Parses a spectrum file into an empirical spectrum. Two formats:
///   - delimiter-separated rows "k<sep>count" with the separator autodetected
///     among comma, tab and semicolon; one header line is tolerated when its
///     first field is non-numeric;
///   - JSON: { "spectrum": { "1": 100, ... } } (detected by a leading '{').
/// Throws SpectrumParseError on malformed rows (with line number), duplicate
/// degrees, or an empty file.
PolysemySpectrum parse_spectrum_text(const std::string& text);

/// parse_spectrum_text over a file's contents. Throws SpectrumParseError
/// when the file cannot be read.
PolysemySpectrum parse_spectrum_file(const std::string& path);

}  // namespace polysemy
