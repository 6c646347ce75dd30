// Text codec for words.
//
// Alphabets with at most 26 generators name them `a`..`z`; larger alphabets
// use `g1`, `g2`, ... An inverse carries a trailing `'`. The empty word is
// written `ε` (the empty string is also accepted on input). Parsing is strict:
// an unreduced spelling is rejected, so format/parse is a bijection with
// reduced words.

#ifndef PFREE_CODEC_HPP_
#define PFREE_CODEC_HPP_

#include <cctype>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "pfree/error.hpp"
#include "pfree/word.hpp"

namespace pfree {

  inline constexpr std::string_view empty_word_symbol = "\xce\xb5";  // ε

  inline bool uses_letter_names(const Alphabet& alphabet) noexcept {
    return alphabet.size() <= 26;
  }

  inline std::string format_letter(const Alphabet& alphabet, Letter l) {
    alphabet.check(l);
    std::string out;
    if (uses_letter_names(alphabet)) {
      out.push_back(static_cast<char>('a' + l.generator() - 1));
    } else {
      out = "g" + std::to_string(l.generator());
    }
    if (l.is_inverse()) {
      out.push_back('\'');
    }
    return out;
  }

  inline std::string format_word(const Word& w) {
    if (w.empty()) {
      return std::string(empty_word_symbol);
    }
    std::string out;
    for (Letter l : w) {
      out += format_letter(w.alphabet(), l);
    }
    return out;
  }

  namespace detail {
    [[noreturn]] inline void parse_failure(std::string_view text,
                                           const std::string& why) {
      throw Error(ErrorKind::parse,
                  "cannot parse word '" + std::string(text) + "': " + why);
    }

    // Reads one letter starting at `pos`, advancing it.
    inline Letter read_letter(const Alphabet&  alphabet,
                              std::string_view text,
                              std::size_t&     pos) {
      int generator = 0;
      if (uses_letter_names(alphabet)) {
        char c = text[pos];
        if (c < 'a' || c > 'z') {
          parse_failure(text, "unexpected character");
        }
        generator = c - 'a' + 1;
        ++pos;
      } else {
        if (text[pos] != 'g') {
          parse_failure(text, "expected 'g<index>'");
        }
        ++pos;
        std::size_t start = pos;
        while (pos < text.size()
               && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          generator = generator * 10 + (text[pos] - '0');
          if (generator > Alphabet::max_size) {
            parse_failure(text, "generator index too large");
          }
          ++pos;
        }
        if (pos == start || text[start] == '0') {
          parse_failure(text, "malformed generator index");
        }
      }
      int index = generator;
      if (pos < text.size() && text[pos] == '\'') {
        index = -generator;
        ++pos;
      }
      Letter l(index);
      if (!alphabet.contains(l)) {
        parse_failure(text, "letter outside the alphabet");
      }
      return l;
    }
  }  // namespace detail

  inline Letter parse_letter(const Alphabet& alphabet, std::string_view text) {
    if (text.empty()) {
      detail::parse_failure(text, "empty letter");
    }
    std::size_t pos = 0;
    Letter      l   = detail::read_letter(alphabet, text, pos);
    if (pos != text.size()) {
      detail::parse_failure(text, "trailing characters after letter");
    }
    return l;
  }

  inline Word parse_word(const Alphabet& alphabet, std::string_view text) {
    if (text.empty() || text == empty_word_symbol) {
      return Word(alphabet);
    }
    std::vector<Letter> letters;
    std::size_t         pos = 0;
    while (pos < text.size()) {
      Letter l = detail::read_letter(alphabet, text, pos);
      if (!letters.empty() && !alphabet.follows(letters.back(), l)) {
        detail::parse_failure(text, "word is not freely reduced");
      }
      letters.push_back(l);
    }
    return Word(alphabet, letters);
  }

  // One word per line; `#` starts a comment, blank lines are skipped.
  inline std::vector<Word> read_words(const Alphabet& alphabet,
                                      std::istream&   in) {
    std::vector<Word> out;
    std::string       line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) {
        continue;
      }
      auto last = line.find_last_not_of(" \t\r");
      out.push_back(
          parse_word(alphabet, std::string_view(line).substr(first, last - first + 1)));
    }
    return out;
  }

}  // namespace pfree

#endif  // PFREE_CODEC_HPP_
