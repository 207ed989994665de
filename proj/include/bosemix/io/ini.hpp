// ini.hpp — minimal INI-style key-value reader with line numbers preserved for
// diagnostics. '#' and ';' start comments, '[section]' lines are ignored.

#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <string>
#include <vector>

#include "bosemix/errors.hpp"

namespace bosemix::io {

struct IniEntry {
    std::string key;
    std::string value;
    int line{0};
};

inline std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

inline std::vector<IniEntry> parse_ini(std::istream& in) {
    std::vector<IniEntry> entries;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto comment = raw.find_first_of("#;");
        if (comment != std::string::npos) raw.erase(comment);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        if (text.front() == '[') continue;  // sections carry no meaning here
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError({"line " + std::to_string(line) + ": expected 'key = value'"});
        IniEntry entry;
        entry.key = trim(text.substr(0, eq));
        entry.value = trim(text.substr(eq + 1));
        entry.line = line;
        if (entry.key.empty())
            throw ConfigError({"line " + std::to_string(line) + ": empty key"});
        entries.push_back(std::move(entry));
    }
    return entries;
}

// Edit distance for did-you-mean suggestions on unknown keys.
inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

inline std::string nearest_key(const std::string& key, const std::vector<std::string>& known) {
    std::string best;
    std::size_t best_distance = std::string::npos;
    for (const std::string& candidate : known) {
        const std::size_t d = edit_distance(key, candidate);
        if (d < best_distance) {
            best_distance = d;
            best = candidate;
        }
    }
    return best;
}

}  // namespace bosemix::io
