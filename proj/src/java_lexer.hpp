#pragma once

#include "orbas/api_call.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orbas::detail {

enum class TokenKind { Ident, Number, String, Char, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    std::uint32_t line = 1;

    bool is(std::string_view p) const { return (kind == TokenKind::Punct || kind == TokenKind::Ident) && text == p; }
};

struct LexResult {
    /// Always terminated by one End token.
    std::vector<Token> tokens;
    std::vector<ExtractionDiagnostic> diagnostics;
    std::uint32_t line_count = 1;
};

/// Comments are dropped. Multi-character punctuators are limited to "->"
/// and "..."; every other operator character is its own token. Unterminated
/// literals and comments and stray characters yield lex-error diagnostics.
LexResult lex(std::string_view text);

bool is_keyword(std::string_view word);

}  // namespace orbas::detail
