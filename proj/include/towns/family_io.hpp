#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "towns/error.hpp"
#include "towns/set_family.hpp"

namespace towns {

/// Family file formats. `Structured` is the canonical one used for goldens:
/// a JSON document {"n": ..., "sets": [[1-based elements]...]}. `Bitstrings`
/// is one 0/1 line per set, element 1 first. The reader autodetects by the
/// first non-whitespace byte.
enum class FamilyFormat { Structured, Bitstrings };

inline SetFamily parse_family_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("sets"))
        fail(Errc::ParseError, "expected object with fields 'n' and 'sets'");
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::uint64_t>() == 0)
        fail(Errc::ParseError, "'n' must be a positive integer");
    const std::size_t n = doc["n"].get<std::size_t>();
    if (n > kMaxGroundSet) fail(Errc::ParseError, "'n' exceeds the ground set cap");
    if (!doc["sets"].is_array()) fail(Errc::ParseError, "'sets' must be a list");

    std::vector<Bitset> sets;
    for (const auto& entry : doc["sets"]) {
        if (!entry.is_array()) fail(Errc::ParseError, "each set must be a list of elements");
        Bitset s(n);
        for (const auto& el : entry) {
            if (!el.is_number_unsigned()) fail(Errc::ParseError, "elements must be positive");
            const std::uint64_t e = el.get<std::uint64_t>();
            if (e < 1 || e > n)
                fail(Errc::ParseError, "element " + std::to_string(e) + " outside [1," +
                                           std::to_string(n) + "]");
            if (s.test(e - 1))
                fail(Errc::ParseError, "element " + std::to_string(e) + " repeated in a set");
            s.set(e - 1);
        }
        sets.push_back(std::move(s));
    }
    return SetFamily::from_sets(GroundSet(n), std::move(sets));
}

inline SetFamily parse_family_bitstrings(const std::string& text) {
    std::vector<Bitset> sets;
    std::size_t n = 0;
    std::size_t lineno = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (n == 0) {
            n = line.size();
            if (n > kMaxGroundSet)
                fail(Errc::ParseError, "line 1: bitstring exceeds the ground set cap");
        } else if (line.size() != n) {
            fail(Errc::ParseError, "line " + std::to_string(lineno) + ": length " +
                                       std::to_string(line.size()) + " differs from " +
                                       std::to_string(n));
        }
        Bitset s(n);
        for (std::size_t col = 0; col < n; ++col) {
            if (line[col] == '1')
                s.set(col);
            else if (line[col] != '0')
                fail(Errc::ParseError, "line " + std::to_string(lineno) + ", column " +
                                           std::to_string(col + 1) + ": expected 0 or 1");
        }
        sets.push_back(std::move(s));
    }
    if (n == 0) fail(Errc::ParseError, "no bitstrings found; cannot infer the universe");
    return SetFamily::from_sets(GroundSet(n), std::move(sets));
}

inline SetFamily parse_family(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        if (ch == '{') return parse_family_json(text);
        return parse_family_bitstrings(text);
    }
    fail(Errc::ParseError, "empty input");
}

inline nlohmann::json family_to_json(const SetFamily& family) {
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& s : family.sets()) sets.push_back(s.elements());
    return nlohmann::json{{"n", family.ground().n}, {"sets", sets}};
}

inline std::string serialize_family(const SetFamily& family,
                                    FamilyFormat format = FamilyFormat::Structured) {
    if (format == FamilyFormat::Structured) return family_to_json(family).dump() + "\n";
    std::string out;
    for (const auto& s : family.sets()) {
        out += s.to_string();
        out += '\n';
    }
    return out;
}

inline SetFamily read_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::ParseError, "cannot open " + path + " for writing");
    out << text;
}

} // namespace towns
