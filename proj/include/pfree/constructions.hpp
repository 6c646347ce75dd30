// Named sets and maps: the mod-k exponent-sum construction, subsemigroup
// slices, the partition of a set by conjugator, and rho(k).

#ifndef PFREE_CONSTRUCTIONS_HPP_
#define PFREE_CONSTRUCTIONS_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfree/counting.hpp"
#include "pfree/error.hpp"
#include "pfree/measure.hpp"
#include "pfree/semigroup.hpp"
#include "pfree/word.hpp"
#include "pfree/wordset.hpp"

namespace pfree {

  struct ExtremalSpec {
    Alphabet    alphabet{2};
    Letter      marked{1};
    int         k       = 2;
    int         residue = 1;
    std::size_t cap     = 10;
  };

  // #marked - #marked^-1; invariant under free reduction.
  inline int exponent_sum(std::span<const Letter> v, Letter marked) noexcept {
    int sum = 0;
    for (Letter l : v) {
      if (l == marked) {
        ++sum;
      } else if (l == marked.inverse()) {
        --sum;
      }
    }
    return sum;
  }

  inline int exponent_sum(const Word& w, Letter marked) noexcept {
    return exponent_sum(w.letters(), marked);
  }

  inline int mod_floor(int v, int k) noexcept {
    int r = v % k;
    return r < 0 ? r + k : r;
  }

  // Words of length <= cap whose marked exponent sum is residue mod k.
  inline WordSet extremal_mod_k(const ExtremalSpec& spec) {
    spec.alphabet.check(spec.marked);
    if (spec.marked.is_inverse()) {
      throw Error(ErrorKind::domain, "the marked letter must be a generator");
    }
    if (spec.k < 2) {
      throw Error(ErrorKind::domain, "k must be at least 2");
    }
    if (spec.cap < 1) {
      throw Error(ErrorKind::domain, "cap must be at least 1");
    }
    int residue = mod_floor(spec.residue, spec.k);
    return WordSet::from_predicate(spec.alphabet, spec.cap,
                                   [&](std::span<const Letter> v) {
                                     return mod_floor(exponent_sum(v, spec.marked), spec.k)
                                            == residue;
                                   });
  }

  inline Subsemigroup subsemigroup_xy(const Alphabet& alphabet, Letter x, Letter y) {
    return Subsemigroup::xy(alphabet, x, y);
  }

  // Every member of h up to cap, tagged with h.
  inline WordSet coset_set(const Coset& h, std::size_t cap, bool include_empty = false) {
    WordSet s(h.alphabet(), cap, h);
    for (std::size_t n = include_empty ? 0 : 1; n <= cap; ++n) {
      std::vector<std::uint64_t> ranks;
      for_each_in_coset_layer(h, n, [&](std::span<const Letter> v) {
        ranks.push_back(rank_in_layer(h.alphabet(), v));
      });
      s.insert_ranks(n, std::move(ranks));
    }
    return s;
  }

  struct PartitionKey {
    Word   w;
    Letter x;
    Letter y;

    friend bool operator==(const PartitionKey&, const PartitionKey&) = default;
    friend std::strong_ordering operator<=>(const PartitionKey& a,
                                            const PartitionKey& b) {
      if (auto c = a.w <=> b.w; c != 0) {
        return c;
      }
      if (auto c = a.x <=> b.x; c != 0) {
        return c;
      }
      return a.y <=> b.y;
    }
  };

  struct PartitionEntry {
    PartitionKey key;
    // Cyclically reduced cores pi(v) of the members with this key.
    WordSet      members;
  };

  // Groups members v = w.core.w^-1 by (w, first(core), last(core)).
  inline std::vector<PartitionEntry> partition_by_conjugator(const WordSet& s) {
    const Alphabet& alph = s.alphabet();
    if (!alph.has_inverses()) {
      throw Error(ErrorKind::domain, "conjugator partition needs a free group");
    }
    if (s.layer_size(0) > 0) {
      throw Error(ErrorKind::domain, "the empty word has no cyclic core");
    }
    std::map<PartitionKey, std::vector<std::vector<std::uint64_t>>> groups;
    std::vector<Letter>                                             buf;
    for (std::size_t n = 1; n <= s.cap(); ++n) {
      for (std::uint64_t r : s.layer_ranks(n)) {
        s.letters(n, r, buf);
        // A nonempty reduced word always has a nonempty core.
        auto         d = cyclic_reduce(Word(alph, buf));
        PartitionKey key{d.conjugator, d.core.front(), d.core.back()};
        auto&        layers = groups[key];
        if (layers.empty()) {
          layers.resize(s.cap() + 1);
        }
        layers[d.core.size()].push_back(rank_in_layer(alph, d.core.letters()));
      }
    }
    std::vector<PartitionEntry> out;
    for (auto& [key, layers] : groups) {
      WordSet members(alph, s.cap());
      for (std::size_t n = 0; n < layers.size(); ++n) {
        members.insert_ranks(n, std::move(layers[n]));
      }
      out.push_back({key, std::move(members)});
    }
    return out;
  }

  // Sum over keys of mu(pi(S^{w,x,y})_{<= n - 2|w|}) / (2a-1)^{2|w|}; equals
  // mu(S_{<=n}) exactly.
  inline Rational partition_measure(const std::vector<PartitionEntry>& entries,
                                    std::size_t                        n) {
    Rational total = 0;
    for (const auto& e : entries) {
      std::size_t shift = 2 * e.key.w.size();
      if (shift >= n) {
        continue;
      }
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), e.members.alphabet().branching(), shift);
      total += mu_set(e.members, std::min(n - shift, e.members.cap())) / scale;
    }
    return total;
  }

  // Least l >= 2 with l not dividing k - 1.
  inline int rho(int k) {
    if (k < 2) {
      throw Error(ErrorKind::domain, "rho needs k >= 2");
    }
    int l = 2;
    while ((k - 1) % l == 0) {
      ++l;
    }
    return l;
  }

}  // namespace pfree

#endif  // PFREE_CONSTRUCTIONS_HPP_
