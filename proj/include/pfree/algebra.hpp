// Products of word sets and the predicates built on them: divisor-freeness,
// unique products, and (strong) k-product-freeness with witnesses.

#ifndef PFREE_ALGEBRA_HPP_
#define PFREE_ALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
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
#include "pfree/wordset.hpp"

namespace pfree {

  struct ProductWitness {
    std::vector<Word> factors;
    Word              product;
  };

  // v = u.t with t a nonempty member of the ambient.
  struct DivisorWitness {
    Word u;
    Word t;
    Word v;
  };

  // product = first.first_h = second.second_h with first != second.
  struct CollisionWitness {
    Word product;
    Word first;
    Word first_h;
    Word second;
    Word second_h;
  };

  namespace detail {
    inline std::vector<std::uint64_t> powers(std::uint64_t b, std::size_t top) {
      std::vector<std::uint64_t> p(top + 1, 1);
      for (std::size_t i = 1; i <= top; ++i) {
        p[i] = p[i - 1] * b;
      }
      return p;
    }

  }  // namespace detail

  // { w.a : w in W, a in A, |w| + |a| <= cap }, rejecting any cancelling
  // junction. Tagged with W's coset when A lives in the same subsemigroup.
  inline WordSet product_set(const WordSet& w, const WordSet& a, std::size_t cap) {
    check_same_alphabet(w.alphabet(), a.alphabet());
    const Alphabet&      alph = w.alphabet();
    std::optional<Coset> tag;
    if (w.ambient() && a.ambient()
        && w.ambient()->semigroup() == a.ambient()->semigroup()) {
      tag = w.ambient();
    }
    WordSet out(alph, cap, tag);
    auto    pw = detail::powers(static_cast<std::uint64_t>(alph.branching()), cap);
    std::vector<std::vector<std::uint64_t>> ranks(cap + 1);
    std::vector<Letter>                     ubuf;
    std::vector<Letter>                     abuf;
    for (std::size_t i = 0; i <= std::min(cap, w.cap()); ++i) {
      for (std::uint64_t ru : w.layer_ranks(i)) {
        w.letters(i, ru, ubuf);
        for (std::size_t j = 0; i + j <= cap && j <= a.cap(); ++j) {
          for (std::uint64_t ra : a.layer_ranks(j)) {
            if (i == 0) {
              ranks[j].push_back(ra);
              continue;
            }
            if (j == 0) {
              ranks[i].push_back(ru);
              continue;
            }
            Letter a0 = alph.letter(static_cast<int>(ra / pw[j - 1]));
            if (!alph.follows(ubuf.back(), a0)) {
              a.letters(j, ra, abuf);
              throw Error(ErrorKind::ambient_violation,
                          "product " + format_word(Word(alph, ubuf)) + " . "
                              + format_word(Word(alph, abuf)) + " cancels");
            }
            std::uint64_t r = ru * pw[j]
                              + static_cast<std::uint64_t>(alph.digit(ubuf.back(), a0))
                                    * pw[j - 1]
                              + ra % pw[j - 1];
            ranks[i + j].push_back(r);
          }
        }
      }
    }
    for (std::size_t n = 0; n <= cap; ++n) {
      out.insert_ranks(n, std::move(ranks[n]));
    }
    return out;
  }

  // First divisor pair in shortlex order of v, then shortest u.
  inline std::optional<DivisorWitness> find_divisor_pair(const WordSet& w,
                                                         const Coset&   h) {
    const Alphabet&     alph = w.alphabet();
    std::vector<Letter> v;
    for (std::size_t n = 1; n <= w.cap(); ++n) {
      for (std::uint64_t rv : w.layer_ranks(n)) {
        w.letters(n, rv, v);
        std::span<const Letter> vs(v);
        std::uint64_t           ru = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i > 0) {
            ru = i == 1 ? static_cast<std::uint64_t>(alph.ordinal(v[0]))
                        : ru * alph.branching() + alph.digit(v[i - 2], v[i - 1]);
          }
          if (w.contains_rank(i, ru) && h.contains(vs.subspan(i))) {
            Word vw(alph, vs);
            return DivisorWitness{vw.prefix(i), vw.suffix_from(i), vw};
          }
        }
      }
    }
    return std::nullopt;
  }

  inline bool is_divisor_free(const WordSet& w, const Coset& h) {
    return !find_divisor_pair(w, h).has_value();
  }

  // Injectivity of (u, g) -> u.g on W x h_{<= cap - min|W|}. A collision
  // u.g = u'.g' with |u| < |u'| forces u' = u.t, and then g' = base(h) is
  // always a valid choice, so it suffices to scan prefix pairs of W.
  inline std::optional<CollisionWitness> find_product_collision(const WordSet& w,
                                                                const Coset&   h,
                                                                std::size_t    cap) {
    const Alphabet& alph = w.alphabet();
    auto            lo   = w.min_length();
    if (!lo || cap < *lo) {
      return std::nullopt;
    }
    std::size_t reach = cap - *lo;
    auto        base  = h.base().letters();
    if (base.size() > reach) {
      return std::nullopt;
    }
    std::vector<Letter> v;
    std::vector<Letter> tb;
    for (std::size_t n = 1; n <= w.cap(); ++n) {
      for (std::uint64_t rv : w.layer_ranks(n)) {
        w.letters(n, rv, v);
        std::uint64_t ru = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i > 0) {
            ru = i == 1 ? static_cast<std::uint64_t>(alph.ordinal(v[0]))
                        : ru * alph.branching() + alph.digit(v[i - 2], v[i - 1]);
          }
          if (n - i + base.size() > reach || !w.contains_rank(i, ru)) {
            continue;
          }
          tb.assign(v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
          if (!base.empty() && !alph.follows(tb.back(), base.front())) {
            continue;
          }
          tb.insert(tb.end(), base.begin(), base.end());
          if (!h.contains(tb)) {
            continue;
          }
          Word vw(alph, v);
          return CollisionWitness{concatenate(vw, h.base()), vw.prefix(i),
                                  Word(alph, tb), vw, h.base()};
        }
      }
    }
    return std::nullopt;
  }

  inline bool has_unique_products(const WordSet& w, const Coset& h, std::size_t cap) {
    return !find_product_collision(w, h, cap).has_value();
  }

  // ---------------------------------------------------------------------------
  // k-product search
  // ---------------------------------------------------------------------------

  enum class SearchMode {
    automatic,
    // Reduced products with cancellation, prefix products kept in a ball.
    general,
    // Lengths add: valid inside a subsemigroup tag or without inverses.
    additive,
  };

  struct SearchOptions {
    SearchMode                 mode = SearchMode::automatic;
    // Radius bounding intermediate prefix products in general mode; the
    // product cap when unset.
    std::optional<std::size_t> intermediate_bound;
    // Largest ball the general search may index.
    std::uint64_t              ball_budget = std::uint64_t{1} << 26;
  };

  namespace detail {
    inline std::optional<ProductWitness> additive_violation(const WordSet& s,
                                                            std::size_t    ell,
                                                            std::size_t    cap) {
      const Alphabet& alph = s.alphabet();
      if (s.layer_size(0) > 0) {
        Word e(alph);
        return ProductWitness{std::vector<Word>(ell, e), e};
      }
      auto lo = s.min_length();
      if (!lo) {
        return std::nullopt;
      }
      std::size_t top = std::min(cap, s.cap());
      std::vector<Letter>                   y;
      std::vector<std::vector<char>>        member;
      std::vector<std::vector<std::size_t>> from;
      for (std::size_t n = ell * *lo; n <= top; ++n) {
        for (std::uint64_t ry : s.layer_ranks(n)) {
          s.letters(n, ry, y);
          member.assign(n + 1, std::vector<char>(n + 1, 0));
          for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t r = 0;
            for (std::size_t j = i + 1; j <= n; ++j) {
              r = j == i + 1 ? static_cast<std::uint64_t>(alph.ordinal(y[i]))
                             : r * alph.branching() + alph.digit(y[j - 2], y[j - 1]);
              member[i][j] = s.contains_rank(j - i, r) ? 1 : 0;
            }
          }
          constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
          from.assign(ell + 1, std::vector<std::size_t>(n + 1, none));
          from[0][0] = 0;
          for (std::size_t t = 1; t <= ell; ++t) {
            for (std::size_t i = 0; i < n; ++i) {
              if (from[t - 1][i] == none) {
                continue;
              }
              for (std::size_t j = i + 1; j <= n; ++j) {
                if (member[i][j] && from[t][j] == none) {
                  from[t][j] = i;
                }
              }
            }
          }
          if (from[ell][n] == none) {
            continue;
          }
          Word              yw(alph, y);
          std::vector<Word> factors(ell, Word(alph));
          std::size_t       end = n;
          for (std::size_t t = ell; t > 0; --t) {
            std::size_t start = from[t][end];
            factors[t - 1]    = yw.subword(start, end - start);
            end               = start;
          }
          return ProductWitness{std::move(factors), yw};
        }
      }
      return std::nullopt;
    }

    inline std::optional<ProductWitness> general_violation(const WordSet&       s,
                                                           std::size_t          ell,
                                                           std::size_t          cap,
                                                           const SearchOptions& opt) {
      const Alphabet& alph  = s.alphabet();
      std::size_t     bound = opt.intermediate_bound.value_or(cap);
      BallIndex       ball(alph, bound);
      if (ball.size() > opt.ball_budget) {
        throw Error(ErrorKind::resource_cap,
                    "ball of radius " + std::to_string(bound)
                        + " exceeds the search budget");
      }
      const std::uint64_t b  = static_cast<std::uint64_t>(alph.branching());
      auto                pw = powers(b, std::max(bound, s.cap()) + 1);

      struct Parent {
        std::uint64_t prev;
        std::uint64_t rank;
        std::uint32_t len;
      };
      constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
      std::size_t             slots = static_cast<std::size_t>(ball.size());
      std::vector<std::vector<Parent>> parent(ell + 1);
      parent[1].assign(slots, Parent{none, 0, 0});
      std::vector<std::vector<char>> seen(ell + 1);
      seen[1].assign(slots, 0);
      for (std::size_t n = 0; n <= std::min(bound, s.cap()); ++n) {
        for (std::uint64_t r : s.layer_ranks(n)) {
          std::uint64_t g = ball.offset(n) + r;
          seen[1][g]      = 1;
          parent[1][g]    = Parent{none, r, static_cast<std::uint32_t>(n)};
        }
      }

      std::vector<Letter>        p;
      std::vector<std::uint64_t> pr;
      for (std::size_t t = 1; t < ell; ++t) {
        seen[t + 1].assign(slots, 0);
        parent[t + 1].assign(slots, Parent{none, 0, 0});
        auto& next_seen   = seen[t + 1];
        auto& next_parent = parent[t + 1];
        for (std::uint64_t g = 0; g < ball.size(); ++g) {
          if (!seen[t][g]) {
            continue;
          }
          ball.letters(g, p);
          std::size_t m = p.size();
          pr.assign(m + 1, 0);
          for (std::size_t i = 1; i <= m; ++i) {
            pr[i] = i == 1 ? static_cast<std::uint64_t>(alph.ordinal(p[0]))
                           : pr[i - 1] * b + alph.digit(p[i - 2], p[i - 1]);
          }
          std::uint64_t rc = 0;  // rank of c^-1 for the trailing factor c
          for (std::size_t j = 0; j <= m; ++j) {
            if (j == 1) {
              rc = alph.ordinal(p[m - 1].inverse());
            } else if (j > 1) {
              rc = rc * b + alph.digit(p[m - j + 1].inverse(), p[m - j].inverse());
            }
            std::size_t keep = m - j;
            std::size_t top  = std::min(s.cap(), bound - keep + j);
            for (std::size_t len = j; len <= top; ++len) {
              std::size_t   qlen = len - j;
              std::uint64_t lo   = j == 0 ? 0 : rc * pw[qlen];
              std::uint64_t hi   = j == 0 ? s.full_layer_size(len) : lo + pw[qlen];
              auto [first, last] = s.rank_range(len, lo, hi);
              auto ranks          = s.layer_ranks(len);
              for (std::size_t k = first; k < last; ++k) {
                std::uint64_t rs = ranks[k];
                std::uint64_t idx;
                if (qlen == 0) {
                  idx = ball.offset(keep) + pr[keep];
                } else {
                  std::uint64_t low = rs % pw[qlen - 1];
                  Letter        q0;
                  if (j == 0) {
                    q0 = alph.letter(static_cast<int>(rs / pw[len - 1]));
                  } else {
                    q0 = alph.letter_after(
                        p[m - j].inverse(),
                        static_cast<int>((rs / pw[qlen - 1]) % b));
                  }
                  if (keep > 0 && !alph.follows(p[keep - 1], q0)) {
                    continue;  // longer cancellation, handled at a larger j
                  }
                  std::uint64_t rg =
                      keep == 0
                          ? static_cast<std::uint64_t>(alph.ordinal(q0)) * pw[qlen - 1]
                                + low
                          : pr[keep] * pw[qlen]
                                + static_cast<std::uint64_t>(alph.digit(p[keep - 1], q0))
                                      * pw[qlen - 1]
                                + low;
                  idx = ball.offset(keep + qlen) + rg;
                }
                if (!next_seen[idx]) {
                  next_seen[idx]   = 1;
                  next_parent[idx] = Parent{g, rs, static_cast<std::uint32_t>(len)};
                }
              }
            }
          }
        }
      }

      std::size_t top = std::min({cap, bound, s.cap()});
      for (std::size_t n = 0; n <= top; ++n) {
        for (std::uint64_t r : s.layer_ranks(n)) {
          std::uint64_t g = ball.offset(n) + r;
          if (!seen[ell][g]) {
            continue;
          }
          std::vector<Word> factors(ell, Word(alph));
          std::uint64_t     cur = g;
          for (std::size_t t = ell; t > 0; --t) {
            const Parent& pa = parent[t][cur];
            factors[t - 1]   = s.word(pa.len, pa.rank);
            cur              = pa.prev;
          }
          return ProductWitness{std::move(factors), ball.word(g)};
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  inline SearchMode resolve_mode(const WordSet& s, SearchMode mode) {
    bool additive_ok = !s.alphabet().has_inverses() || s.ambient().has_value();
    if (mode == SearchMode::automatic) {
      return additive_ok ? SearchMode::additive : SearchMode::general;
    }
    if (mode == SearchMode::additive && !additive_ok) {
      throw Error(ErrorKind::domain,
                  "additive search needs a subsemigroup-tagged set or a "
                  "semigroup alphabet");
    }
    if (mode == SearchMode::general && !s.alphabet().has_inverses()) {
      return SearchMode::additive;
    }
    return mode;
  }

  // ell factors of S whose product lies in S with length <= cap. The product
  // reported is the shortlex-least one.
  inline std::optional<ProductWitness> find_product_violation(
      const WordSet& s, std::size_t ell, std::size_t cap, const SearchOptions& opt = {}) {
    if (ell < 2) {
      throw Error(ErrorKind::domain, "factor count must be at least 2");
    }
    if (cap > s.cap()) {
      throw Error(ErrorKind::incomplete_data,
                  "search cap " + std::to_string(cap) + " exceeds the set cap "
                      + std::to_string(s.cap()));
    }
    if (resolve_mode(s, opt.mode) == SearchMode::additive) {
      return detail::additive_violation(s, ell, cap);
    }
    return detail::general_violation(s, ell, cap, opt);
  }

  // First violation over ell = 2..k.
  inline std::optional<ProductWitness> find_k_product_violation(
      const WordSet& s, std::size_t k, std::size_t cap, const SearchOptions& opt = {}) {
    if (k < 2) {
      throw Error(ErrorKind::domain, "k must be at least 2");
    }
    for (std::size_t ell = 2; ell <= k; ++ell) {
      if (auto w = find_product_violation(s, ell, cap, opt)) {
        return w;
      }
    }
    return std::nullopt;
  }

  inline bool is_strongly_k_product_free(const WordSet&       s,
                                         std::size_t          k,
                                         std::size_t          cap,
                                         const SearchOptions& opt = {}) {
    return !find_k_product_violation(s, k, cap, opt).has_value();
  }

  // W^i . S truncated to cap for i = 0..k-1.
  inline std::vector<WordSet> product_ladder(const WordSet& w,
                                             const WordSet& s,
                                             std::size_t    k,
                                             std::size_t    cap) {
    std::vector<WordSet> out;
    out.push_back(s.truncated(cap));
    for (std::size_t i = 1; i < k; ++i) {
      out.push_back(product_set(w, out.back(), cap));
    }
    return out;
  }

  struct LadderOverlap {
    std::size_t i;
    std::size_t j;
    Word        word;
  };

  inline std::optional<LadderOverlap> find_ladder_overlap(
      const std::vector<WordSet>& ladder) {
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      for (std::size_t j = i + 1; j < ladder.size(); ++j) {
        WordSet common = set_intersection(ladder[i], ladder[j]);
        if (!common.empty()) {
          return LadderOverlap{i, j, common.words().front()};
        }
      }
    }
    return std::nullopt;
  }

}  // namespace pfree

#endif  // PFREE_ALGEBRA_HPP_
