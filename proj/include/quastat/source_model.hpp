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

#ifndef QUASTAT_SOURCE_MODEL_HPP
#define QUASTAT_SOURCE_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quastat/core.hpp"

namespace quastat {

// ---------------------------------------------------------------------------
// Source files and corpora
// ---------------------------------------------------------------------------

struct SourceFile {
    std::string path;  // relative to the corpus root, '/' separated
    Language language = Language::JavaLike;
    std::string content;  // raw text, UTF-8 with lossy replacement
    std::size_t byte_size = 0;

    std::size_t line_count() const {
        if (content.empty()) return 0;
        std::size_t n = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
        if (content.back() != '\n') ++n;
        return n;
    }
};

/// Path-based exclusion, e.g. for generated code. A file whose corpus-relative
/// path matches any pattern is absent from all downstream analyses.
struct ExclusionFilter {
    std::vector<std::string> patterns;  // ECMAScript regexes, searched (not anchored)
    std::string rationale;

    bool matches(const std::string& path) const {
        for (const auto& p : patterns) {
            std::regex re(p);
            if (std::regex_search(path, re)) return true;
        }
        return false;
    }
};

struct Corpus {
    Language language = Language::JavaLike;
    std::vector<SourceFile> files;
    std::vector<std::string> skipped;  // excluded by filter
    Warnings warnings;                 // undecodable files, replacement chars

    std::size_t total_loc() const {
        std::size_t n = 0;
        for (const auto& f : files) n += f.line_count();
        return n;
    }
};

inline const std::vector<std::string>& source_extensions(Language lang) {
    static const std::vector<std::string> java = {".java"};
    static const std::vector<std::string> cs = {".cs"};
    return lang == Language::JavaLike ? java : cs;
}

/// Replaces invalid UTF-8 bytes with '?' so downstream code can treat the
/// content as plain text. Returns the number of replacements.
inline std::size_t scrub_utf8(std::string& s) {
    std::size_t replaced = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra;
        if (c < 0x80) {
            i += 1;
            continue;
        } else if ((c >> 5) == 0x6) {
            extra = 1;
        } else if ((c >> 4) == 0xe) {
            extra = 2;
        } else if ((c >> 3) == 0x1e) {
            extra = 3;
        } else {
            s[i] = '?';
            ++replaced;
            ++i;
            continue;
        }
        bool ok = i + extra < s.size();
        for (std::size_t k = 1; ok && k <= extra; ++k)
            ok = (static_cast<unsigned char>(s[i + k]) >> 6) == 0x2;
        if (!ok) {
            s[i] = '?';
            ++replaced;
            ++i;
        } else {
            i += extra + 1;
        }
    }
    return replaced;
}

/// Loads every non-excluded file with a language-appropriate extension below
/// `root`. Excluded files land in the skip list; undecodable files produce a
/// per-file warning and are skipped.
inline Corpus load_corpus(const std::filesystem::path& root, const ExclusionFilter& filter,
                          Language language) {
    namespace fs = std::filesystem;
    if (!fs::exists(root) || !fs::is_directory(root))
        throw IoError("corpus root does not exist or is not a directory: " + root.string());

    Corpus corpus;
    corpus.language = language;
    const auto& exts = source_extensions(language);

    std::vector<fs::path> candidates;
    for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator();
         ++it) {
        if (!it->is_regular_file()) continue;
        std::string ext = to_lower(it->path().extension().string());
        if (std::find(exts.begin(), exts.end(), ext) == exts.end()) continue;
        candidates.push_back(it->path());
    }
    std::sort(candidates.begin(), candidates.end());

    for (const auto& p : candidates) {
        std::string rel = normalize_path(fs::relative(p, root).generic_string());
        if (filter.matches(rel)) {
            corpus.skipped.push_back(rel);
            continue;
        }
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            corpus.warnings.push_back({rel, 0, "unreadable file, skipped"});
            continue;
        }
        SourceFile file;
        file.path = rel;
        file.language = language;
        file.content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        file.byte_size = file.content.size();
        if (file.content.find('\0') != std::string::npos) {
            corpus.warnings.push_back({rel, 0, "binary content, skipped"});
            continue;
        }
        std::size_t replaced = scrub_utf8(file.content);
        if (replaced > 0)
            corpus.warnings.push_back(
                {rel, 0, std::to_string(replaced) + " invalid UTF-8 byte(s) replaced"});
        corpus.files.push_back(std::move(file));
    }
    return corpus;
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

enum class TokenKind {
    Identifier,
    Keyword,
    Literal,
    Operator,
    Punctuation,
    CommentBlock,
    CommentLine,
    Whitespace,
    Error,  // unterminated comment/string: covers the rest of the file
};

struct Token {
    TokenKind kind;
    std::string_view text;  // view into SourceFile::content
    int line = 1;           // 1-based position of the first character
    int col = 1;

    bool is_comment() const {
        return kind == TokenKind::CommentBlock || kind == TokenKind::CommentLine;
    }
    bool is_significant() const {
        return !is_comment() && kind != TokenKind::Whitespace && kind != TokenKind::Error;
    }
};

struct TokenStream {
    std::vector<Token> tokens;
    Warnings warnings;
};

namespace detail {

inline const std::set<std::string_view>& keywords(Language lang) {
    static const std::set<std::string_view> java = {
        "abstract", "assert",     "boolean",  "break",   "byte",      "case",    "catch",
        "char",     "class",      "const",    "continue", "default",  "do",      "double",
        "else",     "enum",       "extends",  "final",   "finally",   "float",   "for",
        "goto",     "if",         "implements", "import", "instanceof", "int",   "interface",
        "long",     "native",     "new",      "null",    "package",   "private", "protected",
        "public",   "record",     "return",   "short",   "static",    "strictfp", "super",
        "switch",   "synchronized", "this",   "throw",   "throws",    "transient", "try",
        "var",      "void",       "volatile", "while"};
    static const std::set<std::string_view> cs = {
        "abstract", "as",        "base",     "bool",      "break",    "byte",     "case",
        "catch",    "char",      "checked",  "class",     "const",    "continue", "decimal",
        "default",  "delegate",  "do",       "double",    "else",     "enum",     "event",
        "explicit", "extern",    "finally",  "fixed",     "float",    "for",      "foreach",
        "goto",     "if",        "implicit", "in",        "int",      "interface", "internal",
        "is",       "lock",      "long",     "namespace", "new",      "null",     "object",
        "operator", "out",       "override", "params",    "private",  "protected", "public",
        "readonly", "record",    "ref",      "return",    "sbyte",    "sealed",   "short",
        "sizeof",   "stackalloc", "static",  "string",    "struct",   "switch",   "this",
        "throw",    "try",       "typeof",   "uint",      "ulong",    "unchecked", "unsafe",
        "ushort",   "using",     "var",      "virtual",   "void",     "volatile", "where",
        "while",    "yield"};
    return lang == Language::JavaLike ? java : cs;
}

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80;
}
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Multi-character operators, longest first.
inline const std::vector<std::string_view>& operator_table() {
    static const std::vector<std::string_view> ops = {
        ">>>=", "<<=", ">>=", ">>>", "...", "\?\?=", "\?.", "\?\?", "::",  "->", "=>", "==",
        "!=",   "<=",  ">=",  "&&",  "||",  "++",    "--",  "+=",   "-=",  "*=", "/=", "%=",
        "&=",   "|=",  "^=",  "<<",  ">>",  "+",     "-",   "*",    "/",   "%",  "=",  "<",
        ">",    "!",   "&",   "|",   "^",   "~",     "?",   ":",    "."};
    return ops;
}

}  // namespace detail

/// Splits a file into tokens. Concatenating the token texts in order
/// (whitespace and comments included) reproduces the content byte-for-byte.
/// An unterminated block comment or string yields one Error token covering the
/// rest of the file plus a warning; analysis continues on other files.
inline TokenStream tokenize(const SourceFile& file) {
    TokenStream out;
    const std::string& src = file.content;
    const auto& kw = detail::keywords(file.language);
    std::size_t i = 0;
    int line = 1, col = 1;

    auto advance_pos = [&](std::string_view text) {
        for (char c : text) {
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
        std::string_view text(src.data() + begin, end - begin);
        out.tokens.push_back({kind, text, line, col});
        advance_pos(text);
        i = end;
    };

    while (i < src.size()) {
        char c = src[i];
        // whitespace run
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            std::size_t j = i;
            while (j < src.size() && (src[j] == ' ' || src[j] == '\t' || src[j] == '\r' ||
                                      src[j] == '\n' || src[j] == '\f' || src[j] == '\v'))
                ++j;
            push(TokenKind::Whitespace, i, j);
            continue;
        }
        // comments
        if (c == '/' && i + 1 < src.size()) {
            if (src[i + 1] == '/') {
                std::size_t j = src.find('\n', i);
                if (j == std::string::npos) j = src.size();
                push(TokenKind::CommentLine, i, j);
                continue;
            }
            if (src[i + 1] == '*') {
                std::size_t j = src.find("*/", i + 2);
                if (j == std::string::npos) {
                    out.warnings.push_back({file.path, line, "unterminated block comment"});
                    push(TokenKind::Error, i, src.size());
                    continue;
                }
                push(TokenKind::CommentBlock, i, j + 2);
                continue;
            }
        }
        // C# verbatim/interpolated string prefixes: @" $" @$" $@"
        if (file.language == Language::CSharpLike && (c == '@' || c == '$')) {
            std::size_t j = i;
            bool verbatim = false;
            while (j < src.size() && (src[j] == '@' || src[j] == '$')) {
                if (src[j] == '@') verbatim = true;
                ++j;
            }
            if (j < src.size() && src[j] == '"') {
                std::size_t k = j + 1;
                bool closed = false;
                while (k < src.size()) {
                    if (verbatim) {
                        if (src[k] == '"' && k + 1 < src.size() && src[k + 1] == '"') {
                            k += 2;  // doubled quote escape
                            continue;
                        }
                        if (src[k] == '"') {
                            closed = true;
                            ++k;
                            break;
                        }
                        ++k;
                    } else {
                        if (src[k] == '\\' && k + 1 < src.size()) {
                            k += 2;
                            continue;
                        }
                        if (src[k] == '"') {
                            closed = true;
                            ++k;
                            break;
                        }
                        if (src[k] == '\n') break;
                        ++k;
                    }
                }
                if (!closed) {
                    out.warnings.push_back({file.path, line, "unterminated string literal"});
                    push(TokenKind::Error, i, src.size());
                    continue;
                }
                push(TokenKind::Literal, i, k);
                continue;
            }
        }
        // string literals (incl. Java text blocks)
        if (c == '"') {
            if (i + 2 < src.size() && src[i + 1] == '"' && src[i + 2] == '"') {
                std::size_t j = src.find("\"\"\"", i + 3);
                if (j == std::string::npos) {
                    out.warnings.push_back({file.path, line, "unterminated text block"});
                    push(TokenKind::Error, i, src.size());
                    continue;
                }
                push(TokenKind::Literal, i, j + 3);
                continue;
            }
            std::size_t j = i + 1;
            bool closed = false;
            while (j < src.size()) {
                if (src[j] == '\\' && j + 1 < src.size()) {
                    j += 2;
                    continue;
                }
                if (src[j] == '"') {
                    closed = true;
                    ++j;
                    break;
                }
                if (src[j] == '\n') break;
                ++j;
            }
            if (!closed) {
                out.warnings.push_back({file.path, line, "unterminated string literal"});
                push(TokenKind::Error, i, src.size());
                continue;
            }
            push(TokenKind::Literal, i, j);
            continue;
        }
        // char literals
        if (c == '\'') {
            std::size_t j = i + 1;
            bool closed = false;
            while (j < src.size()) {
                if (src[j] == '\\' && j + 1 < src.size()) {
                    j += 2;
                    continue;
                }
                if (src[j] == '\'') {
                    closed = true;
                    ++j;
                    break;
                }
                if (src[j] == '\n') break;
                ++j;
            }
            if (!closed) {
                out.warnings.push_back({file.path, line, "unterminated char literal"});
                push(TokenKind::Error, i, src.size());
                continue;
            }
            push(TokenKind::Literal, i, j);
            continue;
        }
        // numbers (incl. hex/bin, exponents, suffixes, digit separators)
        if (detail::is_digit(c) ||
            (c == '.' && i + 1 < src.size() && detail::is_digit(src[i + 1]))) {
            std::size_t j = i;
            if (c == '.') ++j;
            while (j < src.size()) {
                char d = src[j];
                if (detail::is_digit(d) || (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') ||
                    d == '_' || d == '.') {
                    ++j;
                } else if ((d == '+' || d == '-') && j > i &&
                           (src[j - 1] == 'e' || src[j - 1] == 'E' || src[j - 1] == 'p' ||
                            src[j - 1] == 'P')) {
                    ++j;
                } else {
                    break;
                }
            }
            // do not swallow a trailing '.' followed by non-digit (method call on int)
            if (src[j - 1] == '.' && (j >= src.size() || !detail::is_digit(src[j]))) --j;
            push(TokenKind::Literal, i, j);
            continue;
        }
        // identifiers / keywords / bool literals (@identifier in C#)
        if (detail::is_ident_start(c) ||
            (file.language == Language::CSharpLike && c == '@' && i + 1 < src.size() &&
             detail::is_ident_start(src[i + 1]))) {
            std::size_t j = i;
            if (src[j] == '@') ++j;
            while (j < src.size() && detail::is_ident_char(src[j])) ++j;
            std::string_view word(src.data() + i, j - i);
            if (word == "true" || word == "false") {
                push(TokenKind::Literal, i, j);
            } else if (kw.count(word) > 0) {
                push(TokenKind::Keyword, i, j);
            } else {
                push(TokenKind::Identifier, i, j);
            }
            continue;
        }
        // punctuation
        if (c == ';' || c == ',' || c == '(' || c == ')' || c == '{' || c == '}' || c == '[' ||
            c == ']' || c == '@' || c == '#') {
            push(TokenKind::Punctuation, i, i + 1);
            continue;
        }
        // operators, longest match
        {
            bool matched = false;
            for (std::string_view op : detail::operator_table()) {
                if (src.compare(i, op.size(), op) == 0) {
                    push(TokenKind::Operator, i, i + op.size());
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
        }
        // anything else: single-char operator-ish token
        push(TokenKind::Operator, i, i + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Units (uncommented, normalized statements)
// ---------------------------------------------------------------------------

struct Unit {
    int start_line = 0;
    int end_line = 0;
    std::uint64_t normalized_hash = 0;
    std::string normalized_text;
    int token_begin = 0;  // [token_begin, token_end) in the file's TokenStream
    int token_end = 0;
};

/// Half-open range of unit indices covering one method body, signature unit
/// included.
struct MethodSpan {
    int begin_unit = 0;
    int end_unit = 0;
    std::string name;
    int signature_line = 0;
};

/// Tokens, units and method spans of one file, computed in a single pass.
struct FileAnalysis {
    TokenStream stream;
    std::vector<Unit> units;
    std::vector<MethodSpan> methods;
    int type_count = 0;  // declared types, anonymous classes excluded
    Warnings warnings;   // brace imbalance etc.
};

namespace detail {

// Normalization fixed points: re-normalizing a normalized text is identity.
inline std::string_view placeholder_for(const Token& t) {
    if (t.kind == TokenKind::Identifier) return "id";
    // literals by kind, inferred from the first character(s)
    char c0 = t.text.empty() ? '\0' : t.text[0];
    if (c0 == '"' || c0 == '@' || c0 == '$') return "\"\"";
    if (c0 == '\'') return "'c'";
    if (c0 == 't' || c0 == 'f') return "true";
    return "0";
}

enum class BlockKind { TypeBody, MethodBody, Other };

struct SigCheck {
    bool is_method = false;
    bool is_type = false;
    bool is_anonymous_type = false;
    std::string name;
};

// Decides whether a boundary unit ending in '{' opens a type body or looks
// like a method signature: identifier + parameter parentheses + '{', no
// assignment or lambda arrow, first token not a control keyword.
inline SigCheck classify_block_opener(const std::vector<Token>& tokens, int begin, int end) {
    static const std::set<std::string_view> type_kw = {"class", "interface", "enum", "struct",
                                                       "record"};
    static const std::set<std::string_view> control_kw = {
        "if",  "for",   "foreach", "while",  "switch", "catch",   "do",   "else",
        "try", "using", "return",  "throw",  "case",   "default", "new",  "finally"};
    SigCheck result;
    std::vector<const Token*> sig;
    for (int k = begin; k < end; ++k)
        if (tokens[static_cast<std::size_t>(k)].is_significant())
            sig.push_back(&tokens[static_cast<std::size_t>(k)]);
    if (sig.empty()) return result;

    bool has_new = false;
    for (const Token* t : sig) {
        if (t->kind == TokenKind::Keyword && type_kw.count(t->text) > 0) {
            result.is_type = true;
            return result;
        }
        if (t->kind == TokenKind::Keyword && t->text == "new") has_new = true;
    }
    if (has_new) {
        result.is_anonymous_type = true;  // new Foo() { ... } / new Foo { ... }
        return result;
    }

    // strip leading annotations (@Name, @Name(...)) and attributes ([...])
    std::size_t start = 0;
    while (start < sig.size()) {
        if (sig[start]->text == "@") {
            ++start;
            if (start < sig.size() && sig[start]->kind == TokenKind::Identifier) ++start;
            if (start < sig.size() && sig[start]->text == "(") {
                int depth = 0;
                while (start < sig.size()) {
                    if (sig[start]->text == "(") ++depth;
                    if (sig[start]->text == ")") --depth;
                    ++start;
                    if (depth == 0) break;
                }
            }
        } else if (sig[start]->text == "[") {
            int depth = 0;
            while (start < sig.size()) {
                if (sig[start]->text == "[") ++depth;
                if (sig[start]->text == "]") --depth;
                ++start;
                if (depth == 0) break;
            }
        } else {
            break;
        }
    }
    if (start > 0) sig.erase(sig.begin(), sig.begin() + static_cast<std::ptrdiff_t>(start));
    if (sig.empty()) return result;

    const Token& first = *sig.front();
    if (first.kind == TokenKind::Keyword && control_kw.count(first.text) > 0) return result;
    if (first.kind == TokenKind::Keyword && first.text == "synchronized" && sig.size() > 1 &&
        sig[1]->text == "(")
        return result;
    int paren = 0;
    for (std::size_t k = 0; k + 1 < sig.size(); ++k) {
        const Token& t = *sig[k];
        if (t.text == "(") ++paren;
        if (t.text == ")") --paren;
        if (paren == 0 && (t.text == "=" || t.text == "->" || t.text == "=>")) return result;
    }
    // find first '(' preceded by an identifier
    for (std::size_t k = 1; k + 1 < sig.size(); ++k) {
        if (sig[k]->text == "(" && sig[k - 1]->kind == TokenKind::Identifier) {
            result.is_method = true;
            result.name = std::string(sig[k - 1]->text);
            return result;
        }
        if (sig[k]->text == "(") break;  // '(' not preceded by an identifier
    }
    return result;
}

}  // namespace detail

/// One pass over a token stream producing units and method spans.
///
/// Statement boundaries are `;`, `{` and `}` outside parentheses/brackets;
/// `for(;;)` headers stay one unit. Braces after `=`, `,`, `(`, `[`, `]`,
/// `return` or `new Name` are array/object initializers and do not split
/// statements. Comments and blank lines produce no units. Identifiers
/// normalize to a single placeholder, literals to per-kind placeholders.
inline FileAnalysis analyze_tokens(TokenStream stream, Language language,
                                   const std::string& path = "") {
    (void)language;
    FileAnalysis fa;
    fa.stream = std::move(stream);
    const std::vector<Token>& tokens = fa.stream.tokens;

    struct OpenMethod {
        int brace_depth;
        MethodSpan span;
    };
    struct Pending {
        std::string text;
        int first_token = -1;
        int start_line = 0;
        int end_line = 0;
        bool empty() const { return first_token < 0; }
    };

    Pending pending;
    int expr_depth = 0;  // parens, brackets and initializer braces
    std::vector<bool> init_brace_stack;
    std::vector<detail::BlockKind> blocks;
    std::optional<OpenMethod> open_method;
    const Token* prev_sig = nullptr;
    const Token* prev_sig2 = nullptr;

    auto flush_unit = [&](int end_token_exclusive) {
        if (pending.empty()) return;
        Unit u;
        u.start_line = pending.start_line;
        u.end_line = pending.end_line;
        u.normalized_text = std::move(pending.text);
        u.normalized_hash = fnv1a64(u.normalized_text);
        u.token_begin = pending.first_token;
        u.token_end = end_token_exclusive;
        fa.units.push_back(std::move(u));
        pending = Pending{};
    };

    for (int idx = 0; idx < static_cast<int>(tokens.size()); ++idx) {
        const Token& t = tokens[static_cast<std::size_t>(idx)];
        if (!t.is_significant()) continue;

        auto append_to_pending = [&](std::string_view text) {
            if (pending.empty()) {
                pending.first_token = idx;
                pending.start_line = t.line;
            } else {
                pending.text += ' ';
            }
            pending.text += text;
            pending.end_line = t.line;
        };

        bool is_boundary = false;
        if (expr_depth == 0 && t.kind == TokenKind::Punctuation &&
            (t.text == ";" || t.text == "{" || t.text == "}")) {
            is_boundary = true;
        }

        if (t.text == "(" || t.text == "[") {
            ++expr_depth;
            append_to_pending(t.text);
        } else if (t.text == ")" || t.text == "]") {
            if (expr_depth > 0) --expr_depth;
            append_to_pending(t.text);
        } else if (t.text == "{") {
            bool initializer = false;
            if (expr_depth > 0) {
                initializer = true;  // brace inside parentheses: expression context
            } else if (prev_sig != nullptr) {
                std::string_view p = prev_sig->text;
                if (p == "=" || p == "," || p == "(" || p == "[" || p == "]" || p == "return")
                    initializer = true;
                // C# object initializer: new Name { ... }
                if (prev_sig->kind == TokenKind::Identifier && prev_sig2 != nullptr &&
                    prev_sig2->text == "new")
                    initializer = true;
                if (p == "{" && !init_brace_stack.empty() && init_brace_stack.back())
                    initializer = true;  // nested initializer
            }
            if (initializer) {
                init_brace_stack.push_back(true);
                ++expr_depth;
                append_to_pending(t.text);
            } else if (pending.empty()) {
                // bare block opener: no unit, plain scope
                init_brace_stack.push_back(false);
                blocks.push_back(detail::BlockKind::Other);
            } else {
                init_brace_stack.push_back(false);
                int begin_tok = pending.first_token;
                append_to_pending(t.text);
                int unit_index = static_cast<int>(fa.units.size());
                flush_unit(idx + 1);
                detail::SigCheck sig = detail::classify_block_opener(tokens, begin_tok, idx);
                detail::BlockKind kind = detail::BlockKind::Other;
                if (sig.is_type || sig.is_anonymous_type) {
                    kind = detail::BlockKind::TypeBody;
                    if (sig.is_type) ++fa.type_count;
                } else if (sig.is_method && !open_method.has_value() && !blocks.empty() &&
                           blocks.back() == detail::BlockKind::TypeBody) {
                    kind = detail::BlockKind::MethodBody;
                    OpenMethod m;
                    m.brace_depth = static_cast<int>(blocks.size());
                    m.span.begin_unit = unit_index;
                    m.span.name = sig.name;
                    m.span.signature_line = tokens[static_cast<std::size_t>(begin_tok)].line;
                    open_method = m;
                }
                blocks.push_back(kind);
            }
        } else if (t.text == "}") {
            if (!init_brace_stack.empty() && init_brace_stack.back()) {
                init_brace_stack.pop_back();
                if (expr_depth > 0) --expr_depth;
                append_to_pending(t.text);
            } else if (!init_brace_stack.empty()) {
                flush_unit(idx);  // dangling statement before '}' (tolerated)
                init_brace_stack.pop_back();
                blocks.pop_back();
                if (open_method.has_value() &&
                    static_cast<int>(blocks.size()) == open_method->brace_depth) {
                    open_method->span.end_unit = static_cast<int>(fa.units.size());
                    fa.methods.push_back(open_method->span);
                    open_method.reset();
                }
            } else {
                flush_unit(idx);
                fa.warnings.push_back({path, t.line, "unbalanced closing brace"});
            }
        } else if (is_boundary) {  // ';' at depth 0
            if (!pending.empty()) {
                append_to_pending(t.text);
                flush_unit(idx + 1);
            }
            // empty statement: no unit
        } else {
            std::string_view text = t.text;
            if (t.kind == TokenKind::Identifier || t.kind == TokenKind::Literal)
                text = detail::placeholder_for(t);
            append_to_pending(text);
        }

        prev_sig2 = prev_sig;
        prev_sig = &t;
    }
    flush_unit(static_cast<int>(tokens.size()));
    if (!init_brace_stack.empty())
        fa.warnings.push_back({path, 0, "unbalanced braces, method spans best-effort"});
    if (open_method.has_value()) {
        open_method->span.end_unit = static_cast<int>(fa.units.size());
        fa.methods.push_back(open_method->span);
    }
    return fa;
}

inline FileAnalysis analyze_file(const SourceFile& file) {
    return analyze_tokens(tokenize(file), file.language, file.path);
}

/// Normalized units of one file (comments and blank lines contribute none).
inline std::vector<Unit> normalize_to_units(const SourceFile& file) {
    return analyze_file(file).units;
}

/// Heuristic method spans: identifier + parameter parentheses + `{` at
/// class-body nesting depth. Nested local functions are not split out.
inline std::vector<MethodSpan> find_method_spans(const SourceFile& file) {
    return analyze_file(file).methods;
}

// ---------------------------------------------------------------------------
// Corpus-wide unit view used by clone detection and metrics
// ---------------------------------------------------------------------------

struct FileUnits {
    std::string path;
    std::vector<Unit> units;
    std::vector<MethodSpan> methods;
    std::size_t loc = 0;
};

struct CorpusUnits {
    std::vector<FileUnits> files;
    Warnings warnings;

    std::size_t total_units() const {
        std::size_t n = 0;
        for (const auto& f : files) n += f.units.size();
        return n;
    }
    std::size_t total_method_units() const {
        std::size_t n = 0;
        for (const auto& f : files)
            for (const auto& m : f.methods)
                n += static_cast<std::size_t>(m.end_unit - m.begin_unit);
        return n;
    }
};

inline CorpusUnits build_units(const Corpus& corpus) {
    CorpusUnits cu;
    cu.files.reserve(corpus.files.size());
    for (const auto& f : corpus.files) {
        FileAnalysis fa = analyze_file(f);
        FileUnits fu;
        fu.path = f.path;
        fu.units = std::move(fa.units);
        fu.methods = std::move(fa.methods);
        fu.loc = f.line_count();
        for (auto& w : fa.stream.warnings) cu.warnings.push_back(std::move(w));
        for (auto& w : fa.warnings) cu.warnings.push_back(std::move(w));
        cu.files.push_back(std::move(fu));
    }
    return cu;
}

}  // namespace quastat

#endif  // QUASTAT_SOURCE_MODEL_HPP
