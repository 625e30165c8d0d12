#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace diarasr {

enum class TokenMode {
    Word, // maximal runs separated by ASCII whitespace
    Char, // one token per UTF-8 codepoint, whitespace dropped
};

struct Tokenizer {
    TokenMode mode = TokenMode::Word;
};

// Char mode applies to all scripts uniformly: mixed Latin text is also
// split per codepoint. Invalid UTF-8 bytes become single-byte tokens
// rather than failing.
std::vector<std::string> tokenize(std::string_view text, const Tokenizer &tok);

// "word" / "char".
std::string to_string(TokenMode mode);

} // namespace diarasr
