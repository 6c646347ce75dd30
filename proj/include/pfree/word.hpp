// Reduced words in the free group (or the free semigroup) over a finite
// alphabet.
//
// Letters are signed generator indices: +i is the i-th generator and -i its
// inverse. The letter order used for enumeration and canonical set storage is
// -a < ... < -1 < 1 < ... < a. A Word is always freely reduced; there is no
// public way to build an unreduced one.

#ifndef PFREE_WORD_HPP_
#define PFREE_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfree/error.hpp"

namespace pfree {

  enum class Structure : std::uint8_t { free_group, free_semigroup };

  class Letter {
   public:
    constexpr Letter() noexcept = default;
    constexpr explicit Letter(int index) noexcept
        : index_(static_cast<std::int8_t>(index)) {}

    constexpr int index() const noexcept {
      return index_;
    }
    constexpr int generator() const noexcept {
      return index_ < 0 ? -index_ : index_;
    }
    constexpr bool is_inverse() const noexcept {
      return index_ < 0;
    }
    constexpr Letter inverse() const noexcept {
      return Letter(-index_);
    }

    friend constexpr auto operator<=>(Letter, Letter) noexcept = default;

   private:
    std::int8_t index_ = 0;
  };

  class Alphabet {
   public:
    static constexpr int max_size = 127;

    constexpr explicit Alphabet(int size,
                                Structure structure = Structure::free_group)
        : size_(size), structure_(structure) {
      if (size < 1 || size > max_size) {
        throw Error(ErrorKind::domain,
                    "alphabet size must lie in [1, 127], got "
                        + std::to_string(size));
      }
    }

    static constexpr Alphabet semigroup(int size) {
      return Alphabet(size, Structure::free_semigroup);
    }

    constexpr int size() const noexcept {
      return size_;
    }
    constexpr Structure structure() const noexcept {
      return structure_;
    }
    constexpr bool has_inverses() const noexcept {
      return structure_ == Structure::free_group;
    }
    // Number of distinct letters: 2a for the group, a for the semigroup.
    constexpr int letter_count() const noexcept {
      return has_inverses() ? 2 * size_ : size_;
    }
    // Number of letters that may follow a given letter in a reduced word.
    constexpr int branching() const noexcept {
      return has_inverses() ? 2 * size_ - 1 : size_;
    }

    constexpr bool contains(Letter l) const noexcept {
      int i = l.index();
      if (i == 0 || l.generator() > size_) {
        return false;
      }
      return has_inverses() || i > 0;
    }

    void check(Letter l) const {
      if (!contains(l)) {
        throw Error(ErrorKind::alphabet_mismatch,
                    "letter index " + std::to_string(l.index())
                        + " is not valid for an alphabet of size "
                        + std::to_string(size_)
                        + (has_inverses() ? "" : " (semigroup)"));
      }
    }

    // Position of a letter in the letter order, in [0, letter_count()).
    constexpr int ordinal(Letter l) const noexcept {
      int i = l.index();
      if (!has_inverses()) {
        return i - 1;
      }
      return i < 0 ? i + size_ : i + size_ - 1;
    }

    constexpr Letter letter(int ordinal) const noexcept {
      if (!has_inverses()) {
        return Letter(ordinal + 1);
      }
      return ordinal < size_ ? Letter(ordinal - size_)
                             : Letter(ordinal - size_ + 1);
    }

    // True if `next` may directly follow `prev` in a reduced word.
    constexpr bool follows(Letter prev, Letter next) const noexcept {
      return !has_inverses() || next != prev.inverse();
    }

    // Rank of `next` among the letters allowed after `prev`, in letter order.
    constexpr int digit(Letter prev, Letter next) const noexcept {
      int o = ordinal(next);
      if (has_inverses() && o > ordinal(prev.inverse())) {
        --o;
      }
      return o;
    }

    // Inverse of digit().
    constexpr Letter letter_after(Letter prev, int digit) const noexcept {
      if (has_inverses() && digit >= ordinal(prev.inverse())) {
        ++digit;
      }
      return letter(digit);
    }

    friend constexpr bool operator==(const Alphabet&, const Alphabet&) = default;

   private:
    int       size_;
    Structure structure_;
  };

  inline void check_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) {
      throw Error(ErrorKind::alphabet_mismatch,
                  "operands live over different alphabets");
    }
  }

  class Word {
   public:
    using value_type     = Letter;
    using const_iterator = std::vector<Letter>::const_iterator;

    // The empty word (group identity).
    explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}

    // Validates every letter, then freely reduces the sequence.
    Word(Alphabet alphabet, std::span<const Letter> raw) : alphabet_(alphabet) {
      letters_.reserve(raw.size());
      for (Letter l : raw) {
        alphabet_.check(l);
        if (!letters_.empty() && alphabet_.has_inverses()
            && letters_.back() == l.inverse()) {
          letters_.pop_back();
        } else {
          letters_.push_back(l);
        }
      }
    }

    Word(Alphabet alphabet, std::initializer_list<int> raw)
        : Word(alphabet, to_letters(raw)) {}

    const Alphabet& alphabet() const noexcept {
      return alphabet_;
    }
    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    std::span<const Letter> letters() const noexcept {
      return letters_;
    }
    Letter operator[](std::size_t i) const noexcept {
      return letters_[i];
    }
    Letter front() const noexcept {
      return letters_.front();
    }
    Letter back() const noexcept {
      return letters_.back();
    }
    const_iterator begin() const noexcept {
      return letters_.begin();
    }
    const_iterator end() const noexcept {
      return letters_.end();
    }

    // Sub-word [pos, pos + count); a factor of a reduced word is reduced.
    Word subword(std::size_t pos, std::size_t count) const {
      return Word(alphabet_,
                  std::vector<Letter>(letters_.begin() + pos,
                                      letters_.begin() + pos + count),
                  reduced_tag{});
    }
    Word prefix(std::size_t count) const {
      return subword(0, count);
    }
    Word suffix_from(std::size_t pos) const {
      return subword(pos, letters_.size() - pos);
    }

    friend bool operator==(const Word& u, const Word& v) noexcept {
      return u.alphabet_ == v.alphabet_ && u.letters_ == v.letters_;
    }

    // Shortlex: by length, then lexicographically in letter order.
    friend std::strong_ordering operator<=>(const Word& u,
                                            const Word& v) noexcept {
      if (auto c = u.letters_.size() <=> v.letters_.size(); c != 0) {
        return c;
      }
      return u.letters_ <=> v.letters_;
    }

   private:
    struct reduced_tag {};

    Word(Alphabet alphabet, std::vector<Letter>&& letters, reduced_tag)
        : alphabet_(alphabet), letters_(std::move(letters)) {}

    static std::vector<Letter> to_letters(std::initializer_list<int> raw) {
      std::vector<Letter> out;
      out.reserve(raw.size());
      for (int i : raw) {
        out.emplace_back(i);
      }
      return out;
    }

    friend Word multiply(const Word&, const Word&);
    friend Word inverse(const Word&);
    friend Word concatenate(const Word&, const Word&);

    Alphabet            alphabet_;
    std::vector<Letter> letters_;
  };

  struct WordHash {
    using is_transparent = void;

    std::size_t operator()(std::span<const Letter> letters) const noexcept {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (Letter l : letters) {
        h ^= static_cast<std::uint8_t>(l.index());
        h *= 0x100000001b3ULL;
      }
      h ^= letters.size();
      return static_cast<std::size_t>(h * 0x9e3779b97f4a7c15ULL);
    }
    std::size_t operator()(const Word& w) const noexcept {
      return (*this)(w.letters());
    }
  };

  // Free reduction of an arbitrary letter sequence.
  inline Word reduce(const Alphabet& alphabet, std::span<const Letter> raw) {
    return Word(alphabet, raw);
  }

  // Group product: reduce(u ++ v).
  inline Word multiply(const Word& u, const Word& v) {
    check_same_alphabet(u.alphabet(), v.alphabet());
    std::size_t cancel = 0;
    if (u.alphabet().has_inverses()) {
      while (cancel < u.size() && cancel < v.size()
             && u[u.size() - 1 - cancel] == v[cancel].inverse()) {
        ++cancel;
      }
    }
    std::vector<Letter> out;
    out.reserve(u.size() + v.size() - 2 * cancel);
    out.insert(out.end(), u.begin(), u.end() - cancel);
    out.insert(out.end(), v.begin() + cancel, v.end());
    return Word(u.alphabet(), std::move(out), Word::reduced_tag{});
  }

  // Concatenation of two words known to meet without cancellation.
  inline Word concatenate(const Word& u, const Word& v) {
    check_same_alphabet(u.alphabet(), v.alphabet());
    if (!u.empty() && !v.empty() && !u.alphabet().follows(u.back(), v.front())) {
      throw Error(ErrorKind::ambient_violation,
                  "concatenation cancels at the junction");
    }
    std::vector<Letter> out;
    out.reserve(u.size() + v.size());
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    return Word(u.alphabet(), std::move(out), Word::reduced_tag{});
  }

  inline Word inverse(const Word& w) {
    if (!w.alphabet().has_inverses() && !w.empty()) {
      throw Error(ErrorKind::domain, "the free semigroup has no inverses");
    }
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return Word(w.alphabet(), std::move(out), Word::reduced_tag{});
  }

  // v = conjugator . core . conjugator^-1 with no cancellation at either
  // junction and core cyclically reduced.
  struct CyclicDecomposition {
    Word conjugator;
    Word core;
  };

  inline CyclicDecomposition cyclic_reduce(const Word& v) {
    if (!v.alphabet().has_inverses()) {
      throw Error(ErrorKind::domain,
                  "cyclic reduction needs a free group alphabet");
    }
    std::size_t n = v.size();
    std::size_t i = 0;
    while (n - 2 * i >= 2 && v[i] == v[n - 1 - i].inverse()) {
      ++i;
    }
    return {v.prefix(i), v.subword(i, n - 2 * i)};
  }

  inline Word reconstruct(const CyclicDecomposition& d) {
    return multiply(multiply(d.conjugator, d.core), inverse(d.conjugator));
  }

  inline bool is_cyclically_reduced(const Word& v) {
    return v.empty() || v.size() == 1 || v.front() != v.back().inverse();
  }

  // First and last letters, or nothing for the empty word.
  inline std::optional<std::pair<Letter, Letter>> classify_xy(const Word& v) {
    if (v.empty()) {
      return std::nullopt;
    }
    return std::pair{v.front(), v.back()};
  }

  // Membership of (w, x, y) in the index set: w x y w^-1 admits no
  // cancellation. The empty conjugator is admitted whenever x != y^-1.
  inline bool in_index_set(const Word& w, Letter x, Letter y) {
    const Alphabet& alphabet = w.alphabet();
    alphabet.check(x);
    alphabet.check(y);
    if (x == y.inverse()) {
      return false;
    }
    if (w.empty()) {
      return true;
    }
    return w.back() != x.inverse() && w.back() != y;
  }

}  // namespace pfree

template <>
struct std::hash<pfree::Word> {
  std::size_t operator()(const pfree::Word& w) const noexcept {
    return pfree::WordHash{}(w);
  }
};

#endif  // PFREE_WORD_HPP_
