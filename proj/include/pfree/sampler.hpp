// The sampling model alpha: a length l uniform on [1, n], then a word
// uniform on F(l), so Pr(alpha = w) = mu({w}) / n. Includes a Monte Carlo
// front end and the exact product-probability identity.
//
// Trials are grouped in blocks of block_size. Block i draws from a
// std::mt19937_64 seeded with splitmix64(seed, i), so the estimate depends
// only on (seed, trials) and not on the thread count.

#ifndef PFREE_SAMPLER_HPP_
#define PFREE_SAMPLER_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <thread>
#include <unordered_map>
#include <vector>

#include "pfree/algebra.hpp"
#include "pfree/codec.hpp"
#include "pfree/error.hpp"
#include "pfree/measure.hpp"
#include "pfree/wordset.hpp"

namespace pfree {

  using Rng = std::mt19937_64;

  struct SampleModel {
    Alphabet      alphabet{2};
    std::size_t   horizon = 10;
    std::uint64_t seed    = 1;
  };

  inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept {
    return splitmix64(seed ^ splitmix64(block));
  }

  inline void sample_uniform_letters(const Alphabet&      alphabet,
                                     std::size_t          length,
                                     Rng&                 rng,
                                     std::vector<Letter>& out) {
    out.resize(length);
    if (length == 0) {
      return;
    }
    std::uniform_int_distribution<int> first(0, alphabet.letter_count() - 1);
    std::uniform_int_distribution<int> next(0, alphabet.branching() - 1);
    out[0] = alphabet.letter(first(rng));
    for (std::size_t i = 1; i < length; ++i) {
      out[i] = alphabet.letter_after(out[i - 1], next(rng));
    }
  }

  inline Word sample_uniform_word(const Alphabet& alphabet, std::size_t length, Rng& rng) {
    if (length == 0) {
      throw Error(ErrorKind::domain, "sampled length must be at least 1");
    }
    std::vector<Letter> buf;
    sample_uniform_letters(alphabet, length, rng, buf);
    return Word(alphabet, buf);
  }

  inline std::size_t sample_length(const SampleModel& model, Rng& rng) {
    if (model.horizon == 0) {
      throw Error(ErrorKind::domain, "horizon must be at least 1");
    }
    std::uniform_int_distribution<std::size_t> len(1, model.horizon);
    return len(rng);
  }

  inline Word sample_alpha(const SampleModel& model, Rng& rng) {
    return sample_uniform_word(model.alphabet, sample_length(model, rng), rng);
  }

  struct Estimate {
    double        point = 0;
    std::uint64_t hits  = 0;
    std::uint64_t trials = 0;
    // 95% normal interval using p(1-p) <= 1/4.
    double        lo = 0;
    double        hi = 0;
    std::uint64_t seed = 0;

    // Half-width z sqrt(p(1-p)/N) at a given p.
    double half_width(double z, double p) const {
      return z * std::sqrt(p * (1 - p) / static_cast<double>(trials));
    }
  };

  inline constexpr std::uint64_t block_size = 65536;

  // Monte Carlo frequency of pred(alpha); pred receives the letters.
  template <typename Pred>
  Estimate estimate_event(const SampleModel& model,
                          Pred&&             pred,
                          std::uint64_t      trials,
                          unsigned           threads = 1) {
    if (trials == 0) {
      throw Error(ErrorKind::domain, "trials must be at least 1");
    }
    if (model.horizon == 0) {
      throw Error(ErrorKind::domain, "horizon must be at least 1");
    }
    std::uint64_t              blocks = (trials + block_size - 1) / block_size;
    std::vector<std::uint64_t> hits(blocks, 0);
    std::atomic<std::uint64_t> next{0};
    auto                       work = [&] {
      std::vector<Letter> buf;
      for (std::uint64_t blk = next++; blk < blocks; blk = next++) {
        Rng           rng(block_seed(model.seed, blk));
        std::uint64_t n     = std::min(block_size, trials - blk * block_size);
        std::uint64_t count = 0;
        for (std::uint64_t t = 0; t < n; ++t) {
          std::size_t len = sample_length(model, rng);
          sample_uniform_letters(model.alphabet, len, rng, buf);
          if (pred(std::span<const Letter>(buf))) {
            ++count;
          }
        }
        hits[blk] = count;
      }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) {
        pool.emplace_back(work);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    Estimate e;
    e.trials = trials;
    e.seed   = model.seed;
    for (std::uint64_t h : hits) {
      e.hits += h;
    }
    e.point   = static_cast<double>(e.hits) / static_cast<double>(trials);
    double hw = 1.959963984540054 * 0.5 / std::sqrt(static_cast<double>(trials));
    e.lo      = std::max(0.0, e.point - hw);
    e.hi      = std::min(1.0, e.point + hw);
    return e;
  }

  // Pr(alpha in A) = mu(A_{<=n}) / n.
  inline Rational probability_of(const WordSet& a, std::size_t n) {
    return mu_set(a, n) / static_cast<long>(n);
  }

  struct ProductProbability {
    // (1/n) sum_l mu((W.A)(l)) from the materialized product set.
    Rational exact;
    // kappa (1/n) sum_{i>=1} mu(W(i)) mu(A_{[1, n-i]}) plus identity terms.
    Rational closed_form;
    // The same with 1/kappa in place of kappa.
    Rational inverse_convention;
  };

  inline ProductProbability exact_product_probability(const WordSet& w,
                                                      const WordSet& a,
                                                      std::size_t    n) {
    check_same_alphabet(w.alphabet(), a.alphabet());
    if (n == 0) {
      throw Error(ErrorKind::domain, "horizon must be at least 1");
    }
    if (n > w.cap() || n > a.cap()) {
      throw Error(ErrorKind::incomplete_data, "horizon exceeds a set cap");
    }
    const Alphabet& alph = w.alphabet();

    // Unique products on W x A: count pairs against the product set, and on
    // a mismatch find two factorizations of one word.
    WordSet       prod  = product_set(w, a, n);
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; i + j <= n; ++j) {
        pairs += w.layer_size(i) * a.layer_size(j);
      }
    }
    if (pairs != prod.size()) {
      std::unordered_map<Word, std::pair<Word, Word>> seen;
      for (const Word& u : w.words()) {
        for (const Word& v : a.words()) {
          if (u.size() + v.size() > n) {
            continue;
          }
          Word z = concatenate(u, v);
          auto [it, fresh] = seen.emplace(z, std::pair{u, v});
          if (!fresh) {
            throw Error(ErrorKind::unique_products_violation,
                        format_word(z) + " = " + format_word(it->second.first) + "."
                            + format_word(it->second.second) + " = " + format_word(u)
                            + "." + format_word(v));
          }
        }
      }
    }

    ProductProbability out;
    Rational           nn   = static_cast<long>(n);
    out.exact               = mu_set(prod, n) / nn;
    Rational kap            = kappa(alph);
    Rational cross          = 0;
    for (std::size_t i = 1; i < n; ++i) {
      cross += mu_layer(w, i) * mu_set(a, n - i);
    }
    Rational identity = 0;
    if (a.layer_size(0) > 0) {
      identity += mu_set(w, n);
    }
    if (w.layer_size(0) > 0) {
      identity += mu_set(a, n);
    }
    out.closed_form        = (kap * cross + identity) / nn;
    out.inverse_convention = (cross / kap + identity) / nn;
    return out;
  }

}  // namespace pfree

#endif  // PFREE_SAMPLER_HPP_
