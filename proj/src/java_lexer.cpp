#include "java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace orbas::detail {

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

constexpr std::string_view kPunct = "(){}[];,.=<>!~?:+-*/&|^%@";

}  // namespace

bool is_keyword(std::string_view word) {
    static constexpr std::array<std::string_view, 50> kKeywords = {
        "abstract", "assert",     "boolean",   "break",     "byte",      "case",       "catch",
        "char",     "class",      "const",     "continue",  "default",   "do",         "double",
        "else",     "enum",       "extends",   "final",     "finally",   "float",      "for",
        "goto",     "if",         "implements", "import",   "instanceof", "int",       "interface",
        "long",     "native",     "new",       "package",   "private",   "protected",  "public",
        "return",   "short",      "static",    "strictfp",  "super",     "switch",     "synchronized",
        "this",     "throw",      "throws",    "transient", "try",       "void",       "volatile",
        "while"};
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexResult lex(std::string_view text) {
    LexResult out;
    std::uint32_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto error = [&](std::uint32_t at) { out.diagnostics.push_back({at, DiagnosticKind::LexError}); };
    auto push = [&](TokenKind kind, std::size_t begin, std::size_t end, std::uint32_t at) {
        out.tokens.push_back({kind, std::string(text.substr(begin, end - begin)), at});
    };

    while (i < n) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(c) || c == '\0') {
            ++i;
        } else if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            while (i < n && text[i] != '\n') ++i;
        } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            const std::uint32_t start = line;
            i += 2;
            while (i < n && !(text[i] == '*' && i + 1 < n && text[i + 1] == '/')) {
                if (text[i] == '\n') ++line;
                ++i;
            }
            if (i >= n) {
                error(start);
            } else {
                i += 2;
            }
        } else if (ident_start(c)) {
            std::size_t b = i;
            while (i < n && ident_part(static_cast<unsigned char>(text[i]))) ++i;
            push(TokenKind::Ident, b, i, line);
        } else if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t b = i;
            while (i < n && (ident_part(static_cast<unsigned char>(text[i])) || text[i] == '.')) ++i;
            push(TokenKind::Number, b, i, line);
        } else if (c == '"' && text.substr(i, 3) == "\"\"\"") {
            const std::uint32_t start = line;
            std::size_t b = i;
            i += 3;
            while (i < n && text.substr(i, 3) != "\"\"\"") {
                if (text[i] == '\\') ++i;
                if (i < n && text[i] == '\n') ++line;
                ++i;
            }
            if (i >= n) {
                error(start);
                i = n;
            } else {
                i += 3;
            }
            push(TokenKind::String, b, std::min(i, n), start);
        } else if (c == '"' || c == '\'') {
            std::size_t b = i++;
            bool closed = false;
            while (i < n && text[i] != '\n') {
                if (text[i] == '\\') {
                    i += (i + 1 < n && text[i + 1] != '\n') ? 2 : 1;
                    continue;
                }
                if (static_cast<unsigned char>(text[i]) == c) {
                    closed = true;
                    ++i;
                    break;
                }
                ++i;
            }
            i = std::min(i, n);
            if (!closed) error(line);
            push(c == '"' ? TokenKind::String : TokenKind::Char, b, i, line);
        } else if (c == '-' && i + 1 < n && text[i + 1] == '>') {
            push(TokenKind::Punct, i, i + 2, line);
            i += 2;
        } else if (c == '.' && text.substr(i, 3) == "...") {
            push(TokenKind::Punct, i, i + 3, line);
            i += 3;
        } else if (kPunct.find(static_cast<char>(c)) != std::string_view::npos) {
            push(TokenKind::Punct, i, i + 1, line);
            ++i;
        } else {
            error(line);
            ++i;
        }
    }
    out.line_count = line;
    out.tokens.push_back({TokenKind::End, "", line});
    return out;
}

}  // namespace orbas::detail
