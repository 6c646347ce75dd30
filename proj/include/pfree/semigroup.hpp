// Cancellation-free ambients: the subsemigroup G = F^{xy} of words that begin
// with x and end with y (x != y^-1, empty word included), the whole free
// semigroup, and right cosets wG = { w.a : a in G } for w in G.

#ifndef PFREE_SEMIGROUP_HPP_
#define PFREE_SEMIGROUP_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "pfree/codec.hpp"
#include "pfree/error.hpp"
#include "pfree/word.hpp"

namespace pfree {

  class Subsemigroup {
   public:
    // Words beginning with x and ending with y, plus the empty word.
    static Subsemigroup xy(const Alphabet& alphabet, Letter x, Letter y) {
      alphabet.check(x);
      alphabet.check(y);
      if (alphabet.has_inverses() && x == y.inverse()) {
        throw Error(ErrorKind::invalid_subsemigroup,
                    "x = y^-1: products in F^{xy} would cancel");
      }
      return Subsemigroup(alphabet, std::pair{x, y});
    }

    // The whole free semigroup (only meaningful without inverses).
    static Subsemigroup whole(const Alphabet& alphabet) {
      if (alphabet.has_inverses()) {
        throw Error(ErrorKind::invalid_subsemigroup,
                    "the whole free group is not cancellation-free");
      }
      return Subsemigroup(alphabet, std::nullopt);
    }

    const Alphabet& alphabet() const noexcept {
      return alphabet_;
    }
    bool is_whole() const noexcept {
      return !ends_.has_value();
    }
    std::optional<Letter> first() const noexcept {
      return ends_ ? std::optional(ends_->first) : std::nullopt;
    }
    std::optional<Letter> last() const noexcept {
      return ends_ ? std::optional(ends_->second) : std::nullopt;
    }

    bool contains(std::span<const Letter> v) const noexcept {
      if (v.empty() || !ends_) {
        return true;
      }
      return v.front() == ends_->first && v.back() == ends_->second;
    }
    bool contains(const Word& v) const noexcept {
      return v.alphabet() == alphabet_ && contains(v.letters());
    }

    // Shortest nonempty member length.
    std::size_t min_length() const noexcept {
      return (!ends_ || ends_->first == ends_->second) ? 1 : 2;
    }

    std::string describe() const {
      if (!ends_) {
        return "S*";
      }
      return "F^{" + format_letter(alphabet_, ends_->first) + ","
             + format_letter(alphabet_, ends_->second) + "}";
    }

    friend bool operator==(const Subsemigroup&, const Subsemigroup&) = default;

   private:
    Subsemigroup(Alphabet alphabet, std::optional<std::pair<Letter, Letter>> ends)
        : alphabet_(alphabet), ends_(ends) {}

    Alphabet                                 alphabet_;
    std::optional<std::pair<Letter, Letter>> ends_;
  };

  class Coset {
   public:
    explicit Coset(Subsemigroup semigroup)
        : semigroup_(std::move(semigroup)), base_(semigroup_.alphabet()) {}

    Coset(Subsemigroup semigroup, Word base)
        : semigroup_(std::move(semigroup)), base_(std::move(base)) {
      check_same_alphabet(semigroup_.alphabet(), base_.alphabet());
      if (!semigroup_.contains(base_)) {
        throw Error(ErrorKind::domain,
                    "coset base " + format_word(base_) + " is not in "
                        + semigroup_.describe());
      }
    }

    const Subsemigroup& semigroup() const noexcept {
      return semigroup_;
    }
    const Word& base() const noexcept {
      return base_;
    }
    const Alphabet& alphabet() const noexcept {
      return semigroup_.alphabet();
    }
    bool contains_empty() const noexcept {
      return base_.empty();
    }

    bool contains(std::span<const Letter> v) const noexcept {
      auto b = base_.letters();
      if (v.size() < b.size() || !std::equal(b.begin(), b.end(), v.begin())) {
        return false;
      }
      return semigroup_.contains(v.subspan(b.size()));
    }
    bool contains(const Word& v) const noexcept {
      return v.alphabet() == alphabet() && contains(v.letters());
    }

    // The coset (base . refinement) G, for refinement in G.
    Coset refine(const Word& refinement) const {
      if (!semigroup_.contains(refinement)) {
        throw Error(ErrorKind::domain,
                    "refinement " + format_word(refinement) + " is not in "
                        + semigroup_.describe());
      }
      return Coset(semigroup_, concatenate(base_, refinement));
    }

    std::string describe() const {
      if (base_.empty()) {
        return semigroup_.describe();
      }
      return format_word(base_) + "." + semigroup_.describe();
    }

    friend bool operator==(const Coset&, const Coset&) = default;

   private:
    Subsemigroup semigroup_;
    Word         base_;
  };

}  // namespace pfree

#endif  // PFREE_SEMIGROUP_HPP_
