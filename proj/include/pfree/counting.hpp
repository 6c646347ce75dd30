// Exact layer counts and deterministic enumerators.
//
// |F(n)| = 2a(2a-1)^(n-1) for the free group and a^n for the free semigroup.
// Counts of words with prescribed first and last letters come from powers of
// the letter-adjacency transfer matrix, computed by repeated squaring with
// big integers.

#ifndef PFREE_COUNTING_HPP_
#define PFREE_COUNTING_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfree/error.hpp"
#include "pfree/semigroup.hpp"
#include "pfree/word.hpp"

namespace pfree {

  // unsigned long is 64 bits on every supported platform.
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));

  inline mpz_class to_mpz(std::uint64_t v) {
    return mpz_class(static_cast<unsigned long>(v));
  }

  struct LayerCount {
    std::size_t length;
    mpz_class   value;
  };

  inline LayerCount count_layer(const Alphabet& alphabet, std::size_t n) {
    mpz_class value = 1;
    if (n == 0) {
      return {n, value};
    }
    if (alphabet.has_inverses()) {
      mpz_ui_pow_ui(value.get_mpz_t(), alphabet.branching(), n - 1);
      value *= alphabet.letter_count();
    } else {
      mpz_ui_pow_ui(value.get_mpz_t(), alphabet.size(), n);
    }
    return {n, value};
  }

  // Square big-integer matrix indexed by letter ordinals.
  class TransferMatrix {
   public:
    explicit TransferMatrix(std::size_t dim) : dim_(dim), cells_(dim * dim, 0) {}

    // Entry (i, j) is 1 when letter j may follow letter i.
    static TransferMatrix adjacency(const Alphabet& alphabet) {
      std::size_t    d = alphabet.letter_count();
      TransferMatrix t(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          t(i, j) = alphabet.follows(alphabet.letter(i), alphabet.letter(j)) ? 1 : 0;
        }
      }
      return t;
    }

    static TransferMatrix identity(std::size_t dim) {
      TransferMatrix t(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        t(i, i) = 1;
      }
      return t;
    }

    std::size_t dim() const noexcept {
      return dim_;
    }
    mpz_class& operator()(std::size_t i, std::size_t j) {
      return cells_[i * dim_ + j];
    }
    const mpz_class& operator()(std::size_t i, std::size_t j) const {
      return cells_[i * dim_ + j];
    }

    friend TransferMatrix operator*(const TransferMatrix& a,
                                    const TransferMatrix& b) {
      TransferMatrix c(a.dim_);
      for (std::size_t i = 0; i < a.dim_; ++i) {
        for (std::size_t k = 0; k < a.dim_; ++k) {
          if (a(i, k) == 0) {
            continue;
          }
          for (std::size_t j = 0; j < a.dim_; ++j) {
            c(i, j) += a(i, k) * b(k, j);
          }
        }
      }
      return c;
    }

    TransferMatrix pow(std::size_t e) const {
      TransferMatrix result = identity(dim_);
      TransferMatrix base   = *this;
      while (e > 0) {
        if (e & 1) {
          result = result * base;
        }
        e >>= 1;
        if (e > 0) {
          base = base * base;
        }
      }
      return result;
    }

   private:
    std::size_t            dim_;
    std::vector<mpz_class> cells_;
  };

  // Reduced words of length n that start with x and end with y.
  inline LayerCount count_xy_layer(const Alphabet& alphabet,
                                   Letter          x,
                                   Letter          y,
                                   std::size_t     n) {
    alphabet.check(x);
    alphabet.check(y);
    if (n == 0) {
      throw Error(ErrorKind::domain, "count_xy_layer needs n >= 1");
    }
    auto power = TransferMatrix::adjacency(alphabet).pow(n - 1);
    return {n, power(alphabet.ordinal(x), alphabet.ordinal(y))};
  }

  // |G(n)|, counting the empty word at n = 0.
  inline mpz_class count_subsemigroup_layer(const Subsemigroup& g, std::size_t n) {
    if (n == 0) {
      return 1;
    }
    if (g.is_whole()) {
      return count_layer(g.alphabet(), n).value;
    }
    return count_xy_layer(g.alphabet(), *g.first(), *g.last(), n).value;
  }

  // |wG(n)|: words base.a with a in G and |base.a| = n.
  inline mpz_class count_coset_layer(const Coset& h, std::size_t n) {
    std::size_t b = h.base().size();
    if (n < b) {
      return 0;
    }
    return count_subsemigroup_layer(h.semigroup(), n - b);
  }

  // ---------------------------------------------------------------------------
  // Ranking: a lexicographic bijection between F(n) and [0, |F(n)|).
  // ---------------------------------------------------------------------------

  // |F(n)| when it fits in 64 bits.
  inline std::optional<std::uint64_t> layer_size_u64(const Alphabet& alphabet,
                                                     std::size_t     n) {
    mpz_class c = count_layer(alphabet, n).value;
    if (!mpz_fits_ulong_p(c.get_mpz_t())) {
      return std::nullopt;
    }
    return static_cast<std::uint64_t>(c.get_ui());
  }

  inline std::uint64_t rank_in_layer(const Alphabet&          alphabet,
                                     std::span<const Letter> v) noexcept {
    if (v.empty()) {
      return 0;
    }
    std::uint64_t r = alphabet.ordinal(v[0]);
    std::uint64_t b = alphabet.branching();
    for (std::size_t i = 1; i < v.size(); ++i) {
      r = r * b + alphabet.digit(v[i - 1], v[i]);
    }
    return r;
  }

  inline void unrank_in_layer(const Alphabet&     alphabet,
                              std::size_t         n,
                              std::uint64_t       rank,
                              std::vector<Letter>& out) {
    out.resize(n);
    if (n == 0) {
      return;
    }
    std::uint64_t    b = alphabet.branching();
    std::vector<int> digits(n);
    for (std::size_t i = n - 1; i > 0; --i) {
      digits[i] = static_cast<int>(rank % b);
      rank /= b;
    }
    digits[0] = static_cast<int>(rank);
    out[0]    = alphabet.letter(digits[0]);
    for (std::size_t i = 1; i < n; ++i) {
      out[i] = alphabet.letter_after(out[i - 1], digits[i]);
    }
  }

  // Dense indexing of the ball F(0) u ... u F(radius), layer by layer.
  class BallIndex {
   public:
    BallIndex(const Alphabet& alphabet, std::size_t radius)
        : alphabet_(alphabet), offsets_(radius + 2, 0) {
      for (std::size_t n = 0; n <= radius; ++n) {
        auto size = layer_size_u64(alphabet, n);
        if (!size || *size > std::numeric_limits<std::uint64_t>::max() / 4
            || offsets_[n] > std::numeric_limits<std::uint64_t>::max() / 4) {
          throw Error(ErrorKind::resource_cap,
                      "ball of radius " + std::to_string(radius)
                          + " is too large to index");
        }
        offsets_[n + 1] = offsets_[n] + *size;
      }
    }

    const Alphabet& alphabet() const noexcept {
      return alphabet_;
    }
    std::size_t radius() const noexcept {
      return offsets_.size() - 2;
    }
    std::uint64_t size() const noexcept {
      return offsets_.back();
    }
    std::uint64_t offset(std::size_t n) const noexcept {
      return offsets_[n];
    }
    std::uint64_t index(std::span<const Letter> v) const noexcept {
      return offsets_[v.size()] + rank_in_layer(alphabet_, v);
    }
    std::size_t length_of(std::uint64_t index) const noexcept {
      std::size_t n = 0;
      while (offsets_[n + 1] <= index) {
        ++n;
      }
      return n;
    }
    void letters(std::uint64_t index, std::vector<Letter>& out) const {
      std::size_t n = length_of(index);
      unrank_in_layer(alphabet_, n, index - offsets_[n], out);
    }
    Word word(std::uint64_t index) const {
      std::vector<Letter> buf;
      letters(index, buf);
      return Word(alphabet_, buf);
    }

   private:
    Alphabet                   alphabet_;
    std::vector<std::uint64_t> offsets_;
  };

  // ---------------------------------------------------------------------------
  // Enumeration
  // ---------------------------------------------------------------------------

  inline constexpr std::uint64_t default_enumeration_budget = 100'000'000;

  namespace detail {
    // Walks, in lexicographic order, the words prefix.a where a is reduced
    // of length m, follows the prefix without cancellation, optionally starts
    // with a fixed letter, and optionally ends with a fixed letter.
    class LetterOdometer {
     public:
      LetterOdometer(const Alphabet&         alphabet,
                     std::span<const Letter> prefix,
                     std::size_t             m,
                     std::optional<Letter>   first,
                     std::optional<Letter>   last)
          : alphabet_(alphabet),
            prefix_len_(prefix.size()),
            m_(m),
            first_(first),
            last_(last),
            digits_(m, 0),
            buf_(prefix.begin(), prefix.end()) {
        buf_.resize(prefix_len_ + m_);
        if (m_ > 0 && first_ && prefix_len_ > 0
            && !alphabet_.follows(buf_[prefix_len_ - 1], *first_)) {
          done_ = true;
        }
      }

      // Moves to the next admissible word; false when exhausted.
      bool advance() {
        if (done_) {
          return false;
        }
        if (!started_) {
          started_ = true;
          if (m_ == 0) {
            return true;
          }
          fill_from(0);
          return admissible() || advance();
        }
        if (m_ == 0) {
          done_ = true;
          return false;
        }
        while (true) {
          std::size_t i = m_;
          while (i > 0) {
            --i;
            if (++digits_[i] < range(i)) {
              break;
            }
            digits_[i] = 0;
            if (i == 0) {
              done_ = true;
              return false;
            }
          }
          fill_from(i);
          if (admissible()) {
            return true;
          }
        }
      }

      std::span<const Letter> current() const noexcept {
        return buf_;
      }

     private:
      int range(std::size_t i) const noexcept {
        if (i == 0) {
          if (first_) {
            return 1;
          }
          return prefix_len_ == 0 ? alphabet_.letter_count()
                                  : alphabet_.branching();
        }
        return alphabet_.branching();
      }

      void fill_from(std::size_t i) {
        for (std::size_t j = i; j < m_; ++j) {
          std::size_t pos = prefix_len_ + j;
          if (j == 0 && first_) {
            buf_[pos] = *first_;
          } else if (pos == 0) {
            buf_[pos] = alphabet_.letter(digits_[j]);
          } else {
            buf_[pos] = alphabet_.letter_after(buf_[pos - 1], digits_[j]);
          }
        }
      }

      bool admissible() const noexcept {
        return !last_ || buf_.back() == *last_;
      }

      Alphabet              alphabet_;
      std::size_t           prefix_len_;
      std::size_t           m_;
      std::optional<Letter> first_;
      std::optional<Letter> last_;
      std::vector<int>      digits_;
      std::vector<Letter>   buf_;
      bool                  started_ = false;
      bool                  done_    = false;
    };

    inline void check_budget(const mpz_class& count, std::uint64_t budget) {
      if (count > to_mpz(budget)) {
        throw Error(ErrorKind::resource_cap,
                    "enumeration of " + count.get_str()
                        + " words exceeds the budget of "
                        + std::to_string(budget));
      }
    }
  }  // namespace detail

  // Lazy single-consumer stream of words in lexicographic order.
  class WordStream {
   public:
    WordStream(const Alphabet&         alphabet,
               std::span<const Letter> prefix,
               std::size_t             m,
               std::optional<Letter>   first,
               std::optional<Letter>   last)
        : alphabet_(alphabet), odometer_(alphabet, prefix, m, first, last) {}

    std::optional<Word> next() {
      if (!odometer_.advance()) {
        return std::nullopt;
      }
      return Word(alphabet_, odometer_.current());
    }

    class iterator {
     public:
      using value_type      = Word;
      using difference_type = std::ptrdiff_t;

      iterator() = default;
      explicit iterator(WordStream* s) : stream_(s) {
        ++*this;
      }
      const Word& operator*() const {
        return *current_;
      }
      const Word* operator->() const {
        return &*current_;
      }
      iterator& operator++() {
        current_ = stream_->next();
        return *this;
      }
      void operator++(int) {
        ++*this;
      }
      friend bool operator==(const iterator& it, std::default_sentinel_t) {
        return !it.current_.has_value();
      }

     private:
      WordStream*         stream_ = nullptr;
      std::optional<Word> current_;
    };

    iterator begin() {
      return iterator(this);
    }
    std::default_sentinel_t end() const noexcept {
      return {};
    }

   private:
    Alphabet               alphabet_;
    detail::LetterOdometer odometer_;
  };

  // Every reduced word of length n, lexicographically.
  inline WordStream enumerate_layer(const Alphabet& alphabet,
                                    std::size_t     n,
                                    std::uint64_t   budget
                                    = default_enumeration_budget) {
    detail::check_budget(count_layer(alphabet, n).value, budget);
    return WordStream(alphabet, {}, n, std::nullopt, std::nullopt);
  }

  // Every word of length n in the coset h = wG, lexicographically.
  inline WordStream enumerate_coset_layer(const Coset&  h,
                                          std::size_t   n,
                                          std::uint64_t budget
                                          = default_enumeration_budget) {
    if (n < h.base().size()) {
      throw Error(ErrorKind::domain,
                  "coset layer length is shorter than the coset base");
    }
    detail::check_budget(count_coset_layer(h, n), budget);
    const Subsemigroup& g = h.semigroup();
    return WordStream(h.alphabet(), h.base().letters(), n - h.base().size(),
                      g.first(), g.last());
  }

  inline WordStream enumerate_coset_layer(const Word&   w,
                                          Letter        x,
                                          Letter        y,
                                          std::size_t   n,
                                          std::uint64_t budget
                                          = default_enumeration_budget) {
    return enumerate_coset_layer(
        Coset(Subsemigroup::xy(w.alphabet(), x, y), w), n, budget);
  }

  // Push-style traversal of F(n) without allocating a Word per item.
  template <typename Fn>
  void for_each_reduced(const Alphabet& alphabet, std::size_t n, Fn&& fn) {
    detail::LetterOdometer odo(alphabet, {}, n, std::nullopt, std::nullopt);
    while (odo.advance()) {
      fn(odo.current());
    }
  }

  template <typename Fn>
  void for_each_in_coset_layer(const Coset& h, std::size_t n, Fn&& fn) {
    if (n < h.base().size()) {
      return;
    }
    const Subsemigroup&    g = h.semigroup();
    detail::LetterOdometer odo(h.alphabet(), h.base().letters(),
                               n - h.base().size(), g.first(), g.last());
    while (odo.advance()) {
      fn(odo.current());
    }
  }

}  // namespace pfree

#endif  // PFREE_COUNTING_HPP_
