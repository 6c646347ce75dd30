// Finite, layer-indexed word sets with a length cap.
//
// Each layer stores the sorted lexicographic ranks of its words (see
// rank_in_layer), so a layer is a sorted vector of 64-bit integers and the
// words sharing a prefix form a contiguous rank range. Small layers also keep
// a dense membership bitset.

#ifndef PFREE_WORDSET_HPP_
#define PFREE_WORDSET_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfree/codec.hpp"
#include "pfree/counting.hpp"
#include "pfree/error.hpp"
#include "pfree/semigroup.hpp"
#include "pfree/word.hpp"

namespace pfree {

  class WordSet {
   public:
    // Layers with at most this many words get a dense bitset.
    static constexpr std::uint64_t bitset_limit = std::uint64_t{1} << 28;

    WordSet(const Alphabet& alphabet, std::size_t cap)
        : WordSet(alphabet, cap, std::nullopt) {}

    WordSet(const Alphabet& alphabet, std::size_t cap, std::optional<Coset> ambient)
        : alphabet_(alphabet), cap_(cap), ambient_(std::move(ambient)) {
      if (ambient_) {
        check_same_alphabet(alphabet_, ambient_->alphabet());
      }
      layer_counts_.reserve(cap + 1);
      for (std::size_t n = 0; n <= cap; ++n) {
        auto c = layer_size_u64(alphabet_, n);
        if (!c) {
          throw Error(ErrorKind::resource_cap,
                      "cap " + std::to_string(cap)
                          + " is too large for this alphabet");
        }
        layer_counts_.push_back(*c);
      }
      layers_.resize(cap + 1);
    }

    static WordSet from_words(const Alphabet&         alphabet,
                              std::size_t             cap,
                              std::span<const Word>   words,
                              std::optional<Coset>    ambient = std::nullopt) {
      WordSet                                 s(alphabet, cap, std::move(ambient));
      std::vector<std::vector<std::uint64_t>> ranks(cap + 1);
      for (const Word& w : words) {
        s.validate(w.alphabet(), w.letters());
        ranks[w.size()].push_back(rank_in_layer(alphabet, w.letters()));
      }
      for (std::size_t n = 0; n <= cap; ++n) {
        s.insert_ranks(n, std::move(ranks[n]));
      }
      return s;
    }

    // Every reduced word of length <= cap accepted by `keep`.
    template <typename Pred>
    static WordSet from_predicate(const Alphabet&      alphabet,
                                  std::size_t          cap,
                                  Pred&&               keep,
                                  std::optional<Coset> ambient = std::nullopt) {
      WordSet s(alphabet, cap, std::move(ambient));
      for (std::size_t n = 0; n <= cap; ++n) {
        std::vector<std::uint64_t> ranks;
        std::uint64_t              r = 0;
        for_each_reduced(alphabet, n, [&](std::span<const Letter> v) {
          if (keep(v)) {
            ranks.push_back(r);
          }
          ++r;
        });
        s.insert_ranks(n, std::move(ranks));
      }
      return s;
    }

    const Alphabet& alphabet() const noexcept {
      return alphabet_;
    }
    std::size_t cap() const noexcept {
      return cap_;
    }
    const std::optional<Coset>& ambient() const noexcept {
      return ambient_;
    }

    std::uint64_t size() const noexcept {
      std::uint64_t total = 0;
      for (const auto& l : layers_) {
        total += l.ranks.size();
      }
      return total;
    }
    bool empty() const noexcept {
      return size() == 0;
    }

    std::span<const std::uint64_t> layer_ranks(std::size_t n) const noexcept {
      if (n > cap_) {
        return {};
      }
      return layers_[n].ranks;
    }
    std::uint64_t layer_size(std::size_t n) const noexcept {
      return layer_ranks(n).size();
    }
    // |F(n)| for n <= cap.
    std::uint64_t full_layer_size(std::size_t n) const noexcept {
      return layer_counts_[n];
    }

    std::optional<std::size_t> min_length() const noexcept {
      for (std::size_t n = 0; n <= cap_; ++n) {
        if (!layers_[n].ranks.empty()) {
          return n;
        }
      }
      return std::nullopt;
    }
    std::optional<std::size_t> max_length() const noexcept {
      for (std::size_t n = cap_ + 1; n-- > 0;) {
        if (!layers_[n].ranks.empty()) {
          return n;
        }
      }
      return std::nullopt;
    }

    bool contains_rank(std::size_t n, std::uint64_t rank) const noexcept {
      if (n > cap_) {
        return false;
      }
      const Layer& l = layers_[n];
      if (!l.bits.empty()) {
        return (l.bits[rank >> 6] >> (rank & 63)) & 1;
      }
      return std::binary_search(l.ranks.begin(), l.ranks.end(), rank);
    }
    bool contains(std::span<const Letter> v) const noexcept {
      return v.size() <= cap_ && contains_rank(v.size(), rank_in_layer(alphabet_, v));
    }
    bool contains(const Word& w) const noexcept {
      return w.alphabet() == alphabet_ && contains(w.letters());
    }

    // Index range [first, last) into layer_ranks(n) of words whose ranks lie
    // in [lo, hi).
    std::pair<std::size_t, std::size_t> rank_range(std::size_t   n,
                                                   std::uint64_t lo,
                                                   std::uint64_t hi) const noexcept {
      auto r     = layer_ranks(n);
      auto first = std::lower_bound(r.begin(), r.end(), lo);
      auto last  = std::lower_bound(first, r.end(), hi);
      return {static_cast<std::size_t>(first - r.begin()),
              static_cast<std::size_t>(last - r.begin())};
    }

    void letters(std::size_t n, std::uint64_t rank, std::vector<Letter>& out) const {
      unrank_in_layer(alphabet_, n, rank, out);
    }
    Word word(std::size_t n, std::uint64_t rank) const {
      std::vector<Letter> buf;
      unrank_in_layer(alphabet_, n, rank, buf);
      return Word(alphabet_, buf);
    }

    std::vector<Word> layer(std::size_t n) const {
      std::vector<Word> out;
      for (std::uint64_t r : layer_ranks(n)) {
        out.push_back(word(n, r));
      }
      return out;
    }

    // All words in shortlex order.
    std::vector<Word> words() const {
      std::vector<Word> out;
      out.reserve(size());
      for (std::size_t n = 0; n <= cap_; ++n) {
        for (std::uint64_t r : layers_[n].ranks) {
          out.push_back(word(n, r));
        }
      }
      return out;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
      std::vector<Letter> buf;
      for (std::size_t n = 0; n <= cap_; ++n) {
        for (std::uint64_t r : layers_[n].ranks) {
          unrank_in_layer(alphabet_, n, r, buf);
          fn(std::span<const Letter>(buf));
        }
      }
    }

    bool insert(const Word& w) {
      validate(w.alphabet(), w.letters());
      std::size_t   n = w.size();
      std::uint64_t r = rank_in_layer(alphabet_, w.letters());
      Layer&        l = layers_[n];
      auto          it = std::lower_bound(l.ranks.begin(), l.ranks.end(), r);
      if (it != l.ranks.end() && *it == r) {
        return false;
      }
      l.ranks.insert(it, r);
      set_bit(n, r);
      return true;
    }

    // Merges ranks (any order, duplicates allowed) into layer n. Ranks are
    // trusted to be valid for the layer; ambient membership is checked.
    void insert_ranks(std::size_t n, std::vector<std::uint64_t> ranks) {
      if (ranks.empty()) {
        return;
      }
      if (n > cap_) {
        throw Error(ErrorKind::domain, "layer " + std::to_string(n)
                                           + " exceeds the set cap "
                                           + std::to_string(cap_));
      }
      if (ambient_) {
        std::vector<Letter> buf;
        for (std::uint64_t r : ranks) {
          unrank_in_layer(alphabet_, n, r, buf);
          check_ambient(buf);
        }
      }
      Layer& l = layers_[n];
      std::sort(ranks.begin(), ranks.end());
      ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
      std::vector<std::uint64_t> merged;
      merged.reserve(l.ranks.size() + ranks.size());
      std::set_union(l.ranks.begin(), l.ranks.end(), ranks.begin(), ranks.end(),
                     std::back_inserter(merged));
      l.ranks = std::move(merged);
      for (std::uint64_t r : ranks) {
        set_bit(n, r);
      }
    }

    WordSet truncated(std::size_t cap) const {
      WordSet out(alphabet_, cap, ambient_);
      for (std::size_t n = 0; n <= std::min(cap, cap_); ++n) {
        out.layers_[n] = layers_[n];
      }
      return out;
    }

    // Members lying in h, tagged with h.
    WordSet restricted(const Coset& h) const {
      check_same_alphabet(alphabet_, h.alphabet());
      WordSet             out(alphabet_, cap_, h);
      std::vector<Letter> buf;
      for (std::size_t n = 0; n <= cap_; ++n) {
        std::vector<std::uint64_t> keep;
        for (std::uint64_t r : layers_[n].ranks) {
          unrank_in_layer(alphabet_, n, r, buf);
          if (h.contains(buf)) {
            keep.push_back(r);
          }
        }
        out.insert_ranks(n, std::move(keep));
      }
      return out;
    }

    // The same words tagged with h; throws if some member lies outside h.
    WordSet with_ambient(const Coset& h) const {
      WordSet out(alphabet_, cap_, h);
      for (std::size_t n = 0; n <= cap_; ++n) {
        out.insert_ranks(n, layers_[n].ranks);
      }
      return out;
    }

    WordSet without_ambient() const {
      WordSet out = *this;
      out.ambient_.reset();
      return out;
    }

    friend bool operator==(const WordSet& s, const WordSet& t) {
      if (!(s.alphabet_ == t.alphabet_)) {
        return false;
      }
      std::size_t top = std::max(s.cap_, t.cap_);
      for (std::size_t n = 0; n <= top; ++n) {
        auto a = s.layer_ranks(n);
        auto b = t.layer_ranks(n);
        if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
          return false;
        }
      }
      return true;
    }

    // Binary set operations keep the left operand's cap and ambient tag.
    friend WordSet set_union(const WordSet& s, const WordSet& t) {
      return combine(s, t, [](auto a0, auto a1, auto b0, auto b1, auto out) {
        std::set_union(a0, a1, b0, b1, out);
      });
    }
    friend WordSet set_intersection(const WordSet& s, const WordSet& t) {
      return combine(s, t, [](auto a0, auto a1, auto b0, auto b1, auto out) {
        std::set_intersection(a0, a1, b0, b1, out);
      });
    }
    friend WordSet set_difference(const WordSet& s, const WordSet& t) {
      return combine(s, t, [](auto a0, auto a1, auto b0, auto b1, auto out) {
        std::set_difference(a0, a1, b0, b1, out);
      });
    }

   private:
    struct Layer {
      std::vector<std::uint64_t> ranks;
      std::vector<std::uint64_t> bits;
    };

    template <typename Op>
    static WordSet combine(const WordSet& s, const WordSet& t, Op op) {
      check_same_alphabet(s.alphabet_, t.alphabet_);
      WordSet out(s.alphabet_, s.cap_, s.ambient_);
      for (std::size_t n = 0; n <= s.cap_; ++n) {
        auto                       a = s.layer_ranks(n);
        auto                       b = t.layer_ranks(n);
        std::vector<std::uint64_t> merged;
        op(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
        out.insert_ranks(n, std::move(merged));
      }
      return out;
    }

    void validate(const Alphabet& alphabet, std::span<const Letter> v) const {
      check_same_alphabet(alphabet_, alphabet);
      if (v.size() > cap_) {
        throw Error(ErrorKind::domain,
                    "word of length " + std::to_string(v.size())
                        + " exceeds the set cap " + std::to_string(cap_));
      }
      check_ambient(v);
    }

    void check_ambient(std::span<const Letter> v) const {
      if (ambient_ && !ambient_->contains(v)) {
        throw Error(ErrorKind::containment,
                    "word " + format_word(Word(alphabet_, v)) + " is not in "
                        + ambient_->describe());
      }
    }

    void set_bit(std::size_t n, std::uint64_t r) {
      Layer& l = layers_[n];
      if (layer_counts_[n] > bitset_limit) {
        return;
      }
      if (l.bits.empty()) {
        l.bits.assign((layer_counts_[n] + 63) / 64, 0);
      }
      l.bits[r >> 6] |= std::uint64_t{1} << (r & 63);
    }

    Alphabet                   alphabet_;
    std::size_t                cap_;
    std::optional<Coset>       ambient_;
    std::vector<std::uint64_t> layer_counts_;
    std::vector<Layer>         layers_;
  };

}  // namespace pfree

#endif  // PFREE_WORDSET_HPP_
