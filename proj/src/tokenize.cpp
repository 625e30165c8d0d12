#include "diarasr/tokenize.hpp"

#include <algorithm>

namespace diarasr {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
}

// Length of the UTF-8 sequence starting at the lead byte; 1 for invalid
// leads so bad bytes pass through as their own tokens.
std::size_t sequence_length(unsigned char lead) {
    if (lead < 0x80) {
        return 1;
    }
    if ((lead & 0xE0) == 0xC0) {
        return 2;
    }
    if ((lead & 0xF0) == 0xE0) {
        return 3;
    }
    if ((lead & 0xF8) == 0xF0) {
        return 4;
    }
    return 1;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text, const Tokenizer &tok) {
    std::vector<std::string> out;
    if (tok.mode == TokenMode::Word) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && is_space(text[i])) {
                ++i;
            }
            std::size_t j = i;
            while (j < text.size() && !is_space(text[j])) {
                ++j;
            }
            if (j > i) {
                out.emplace_back(text.substr(i, j - i));
            }
            i = j;
        }
        return out;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            ++i;
            continue;
        }
        std::size_t len = sequence_length(static_cast<unsigned char>(text[i]));
        len = std::min(len, text.size() - i);
        // Truncate at the first byte that is not a continuation byte.
        std::size_t k = 1;
        while (k < len &&
               (static_cast<unsigned char>(text[i + k]) & 0xC0) == 0x80) {
            ++k;
        }
        out.emplace_back(text.substr(i, k));
        i += k;
    }
    return out;
}

std::string to_string(TokenMode mode) {
    return mode == TokenMode::Word ? "word" : "char";
}

} // namespace diarasr
