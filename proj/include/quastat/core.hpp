// Copyright 2026 the quastat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUASTAT_CORE_HPP
#define QUASTAT_CORE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quastat {

inline constexpr const char* kVersion = "0.1.0";

/// Language family of a source corpus. Lexing is heuristic and
/// family-based; JavaLike covers Java, CSharpLike covers C#.
enum class Language { JavaLike, CSharpLike };

inline const char* to_string(Language lang) {
    return lang == Language::JavaLike ? "java" : "csharp";
}

inline Language language_from_string(std::string_view s) {
    if (s == "java" || s == "JavaLike" || s == "javalike") return Language::JavaLike;
    if (s == "csharp" || s == "cs" || s == "CSharpLike" || s == "csharplike")
        return Language::CSharpLike;
    throw std::runtime_error("unknown language: " + std::string(s));
}

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration, model file or CLI input.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Unreadable or unwritable file, directory, etc.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

/// Non-fatal diagnostic attached to a file/line. Analyses collect these
/// instead of aborting.
struct Warning {
    std::string file;
    int line = 0;
    std::string message;
};

using Warnings = std::vector<Warning>;

// -- hashing ----------------------------------------------------------------

/// 64-bit FNV-1a. Used for unit fingerprints and finding fingerprints;
/// stable across runs and platforms.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_mix(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= v & 0xff;
        h *= 0x100000001b3ull;
        v >>= 8;
    }
    return h;
}

inline std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

// -- fixed-precision rounding used by all report emitters --------------------

inline double round_to(double v, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

inline double round1(double v) { return round_to(v, 1); }
inline double round2(double v) { return round_to(v, 2); }
inline double round3(double v) { return round_to(v, 3); }

// -- small string helpers ----------------------------------------------------

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

/// Normalizes a path for fingerprinting: backslashes to slashes, leading
/// "./" stripped.
inline std::string normalize_path(std::string_view path) {
    std::string out(path);
    for (char& c : out)
        if (c == '\\') c = '/';
    while (starts_with(out, "./")) out.erase(0, 2);
    return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

}  // namespace quastat

#endif  // QUASTAT_CORE_HPP
