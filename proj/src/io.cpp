#include "polysemy/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polysemy/errors.hpp"

namespace polysemy {

namespace {

bool looks_numeric(const std::string& field) {
    for (char c : field) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '+' &&
            c != '-' && c != '.' && !std::isspace(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return !field.empty();
}

char detect_delimiter(const std::string& line) {
    for (char candidate : {',', '\t', ';'}) {
        if (line.find(candidate) != std::string::npos) return candidate;
    }
    throw SpectrumParseError("no recognized delimiter (comma, tab, semicolon)", 1);
}

void insert_row(PolysemySpectrum& spectrum, long long degree, long long count,
                int line_no) {
    if (degree < 1) {
        throw SpectrumParseError("polysemy degree must be >= 1", line_no);
    }
    if (count < 0) {
        throw SpectrumParseError("count must be non-negative", line_no);
    }
    const int k = static_cast<int>(degree);
    if (spectrum.counts.count(k)) {
        throw SpectrumParseError(
            "duplicate degree " + std::to_string(k), line_no);
    }
    spectrum.counts[k] = static_cast<double>(count);
}

PolysemySpectrum parse_json_spectrum(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpectrumParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("spectrum") ||
        !doc["spectrum"].is_object()) {
        throw SpectrumParseError("JSON spectrum must be {\"spectrum\": {...}}");
    }
    PolysemySpectrum spectrum;
    spectrum.kind = SpectrumKind::empirical;
    for (const auto& [key, value] : doc["spectrum"].items()) {
        long long degree;
        try {
            size_t used = 0;
            degree = std::stoll(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw SpectrumParseError("non-integer degree key \"" + key + "\"");
        }
        if (!value.is_number_integer() ||
            value.get<long long>() < 0) {
            throw SpectrumParseError("count for degree " + key +
                                     " must be a non-negative integer");
        }
        insert_row(spectrum, degree, value.get<long long>(), 0);
    }
    if (spectrum.counts.empty()) {
        throw SpectrumParseError("spectrum holds no rows");
    }
    return spectrum;
}

}  // namespace

PolysemySpectrum parse_spectrum_text(const std::string& text) {
    // Skip leading whitespace to sniff the format.
    size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) {
        throw SpectrumParseError("empty spectrum file");
    }
    if (text[start] == '{') {
        return parse_json_spectrum(text);
    }

    PolysemySpectrum spectrum;
    spectrum.kind = SpectrumKind::empirical;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    char delimiter = '\0';
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (delimiter == '\0') delimiter = detect_delimiter(line);

        const size_t sep = line.find(delimiter);
        if (sep == std::string::npos) {
            throw SpectrumParseError("expected two delimited fields", line_no);
        }
        const std::string first = line.substr(0, sep);
        const std::string second = line.substr(sep + 1);
        if (line_no == 1 && !looks_numeric(first)) {
            continue;  // header
        }
        long long degree, count;
        try {
            size_t used = 0;
            degree = std::stoll(first, &used);
            if (first.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(first);
            }
            count = std::stoll(second, &used);
            if (second.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(second);
            }
        } catch (const std::exception&) {
            throw SpectrumParseError("malformed row \"" + line + "\"", line_no);
        }
        insert_row(spectrum, degree, count, line_no);
    }
    if (spectrum.counts.empty()) {
        throw SpectrumParseError("spectrum holds no rows");
    }
    return spectrum;
}

PolysemySpectrum parse_spectrum_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SpectrumParseError("cannot open spectrum file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spectrum_text(buffer.str());
}

}  // namespace polysemy
