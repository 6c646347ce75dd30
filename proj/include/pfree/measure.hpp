// The layer measure mu({w}) = 1/|F(|w|)|, finite-horizon densities and the
// splitting constant. Everything here is exact.

#ifndef PFREE_MEASURE_HPP_
#define PFREE_MEASURE_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfree/codec.hpp"
#include "pfree/counting.hpp"
#include "pfree/error.hpp"
#include "pfree/semigroup.hpp"
#include "pfree/wordset.hpp"

namespace pfree {

  using Rational = mpq_class;

  // Always "p/q", including q = 1.
  inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }

  inline Rational parse_rational(const std::string& text) {
    Rational q;
    auto     slash = text.find('/');
    auto     dot   = text.find('.');
    try {
      if (dot != std::string::npos && slash == std::string::npos) {
        // Decimal literal, read exactly.
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t places = text.size() - dot - 1;
        if (digits.empty() || digits == "-") {
          throw Error(ErrorKind::parse, "malformed number '" + text + "'");
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
        q = Rational(mpz_class(digits, 10), scale);
      } else {
        q = Rational(text, 10);
      }
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::parse, "malformed number '" + text + "'");
    }
    if (q.get_den() == 0) {
      throw Error(ErrorKind::parse, "zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
  }

  inline Rational mu_word(const Word& w) {
    return Rational(1, count_layer(w.alphabet(), w.size()).value);
  }

  // count / |F(n)|
  inline Rational layer_fraction(const Alphabet& alphabet,
                                 std::size_t     n,
                                 const mpz_class& count) {
    Rational q(count, count_layer(alphabet, n).value);
    q.canonicalize();
    return q;
  }

  inline Rational mu_layer(const WordSet& a, std::size_t n) {
    return layer_fraction(a.alphabet(), n, to_mpz(a.layer_size(n)));
  }

  // mu(A_{<=n}); the empty word does not contribute.
  inline Rational mu_set(const WordSet& a, std::size_t n) {
    if (n > a.cap()) {
      throw Error(ErrorKind::incomplete_data,
                  "horizon " + std::to_string(n) + " exceeds the set cap "
                      + std::to_string(a.cap()));
    }
    Rational total = 0;
    for (std::size_t l = 1; l <= n; ++l) {
      total += mu_layer(a, l);
    }
    return total;
  }

  // The splitting constant |F(i)||F(j)| / |F(i+j)|.
  inline Rational kappa(const Alphabet& alphabet) {
    if (!alphabet.has_inverses()) {
      return 1;
    }
    return Rational(alphabet.letter_count(), alphabet.branching());
  }

  inline Rational kappa(int a) {
    return kappa(Alphabet(a));
  }

  // An ambient family for relative densities: the whole of F, a coset wG,
  // or an explicit word set.
  class Family {
   public:
    static Family whole(const Alphabet& alphabet) {
      return Family(alphabet, std::nullopt, nullptr);
    }
    explicit Family(const Coset& h) : Family(h.alphabet(), h, nullptr) {}
    // Keeps a reference; `s` must outlive the family.
    explicit Family(const WordSet& s) : Family(s.alphabet(), std::nullopt, &s) {}

    const Alphabet& alphabet() const noexcept {
      return alphabet_;
    }

    std::string describe() const {
      if (set_) {
        return "set";
      }
      if (coset_) {
        return coset_->describe();
      }
      return "F";
    }

    Rational layer_measure(std::size_t n) const {
      if (n == 0) {
        return 0;
      }
      if (set_) {
        return mu_layer(*set_, n);
      }
      if (coset_) {
        return layer_fraction(alphabet_, n, count_coset_layer(*coset_, n));
      }
      return 1;
    }

    bool contains(std::span<const Letter> v) const {
      if (set_) {
        return set_->contains(v);
      }
      if (coset_) {
        return coset_->contains(v);
      }
      return true;
    }

    std::optional<std::size_t> cap() const noexcept {
      return set_ ? std::optional(set_->cap()) : std::nullopt;
    }

   private:
    Family(const Alphabet& alphabet, std::optional<Coset> coset, const WordSet* set)
        : alphabet_(alphabet), coset_(std::move(coset)), set_(set) {}

    Alphabet             alphabet_;
    std::optional<Coset> coset_;
    const WordSet*       set_;
  };

  inline Rational mu_family(const Family& h, std::size_t n) {
    Rational total = 0;
    for (std::size_t l = 1; l <= n; ++l) {
      total += h.layer_measure(l);
    }
    return total;
  }

  struct DensityPoint {
    std::size_t n;
    Rational    value;
  };

  struct DensityReport {
    std::string               ambient;
    std::vector<DensityPoint> values;
    std::size_t               n_max = 0;
    // Maximum over n in [n_max/2, n_max]: the finite stand-in for limsup.
    Rational                  tail_max;
    std::size_t               tail_from = 0;

    std::optional<Rational> at(std::size_t n) const {
      for (const auto& p : values) {
        if (p.n == n) {
          return p.value;
        }
      }
      return std::nullopt;
    }
  };

  inline DensityReport density_sequence(const WordSet& a,
                                        const Family&  h,
                                        std::size_t    n_max) {
    check_same_alphabet(a.alphabet(), h.alphabet());
    if (n_max > a.cap() || (h.cap() && n_max > *h.cap())) {
      throw Error(ErrorKind::incomplete_data,
                  "horizon " + std::to_string(n_max) + " exceeds a set cap");
    }
    std::vector<Letter> buf;
    for (std::size_t n = 1; n <= n_max; ++n) {
      for (std::uint64_t r : a.layer_ranks(n)) {
        a.letters(n, r, buf);
        if (!h.contains(buf)) {
          throw Error(ErrorKind::containment,
                      "word " + format_word(Word(a.alphabet(), buf))
                          + " lies outside the ambient " + h.describe());
        }
      }
    }

    DensityReport report;
    report.ambient   = h.describe();
    report.n_max     = n_max;
    report.tail_from = n_max / 2;
    Rational num = 0;
    Rational den = 0;
    bool     any_tail = false;
    for (std::size_t n = 1; n <= n_max; ++n) {
      num += mu_layer(a, n);
      den += h.layer_measure(n);
      if (den > 0) {
        Rational d = num / den;
        report.values.push_back({n, d});
        if (n >= report.tail_from && (!any_tail || d > report.tail_max)) {
          report.tail_max = d;
          any_tail        = true;
        }
      }
    }
    return report;
  }

  inline DensityReport density_sequence(const WordSet& a,
                                        const WordSet& h,
                                        std::size_t    n_max) {
    return density_sequence(a, Family(h), n_max);
  }

  inline DensityReport density_sequence(const WordSet& a,
                                        const Coset&   h,
                                        std::size_t    n_max) {
    return density_sequence(a, Family(h), n_max);
  }

  // d_n of A relative to h at a single horizon, or nothing if mu(h_{<=n}) = 0.
  // Members of A outside h are ignored.
  inline std::optional<Rational> relative_density(const WordSet& a,
                                                  const Coset&   h,
                                                  std::size_t    n) {
    Rational            num = 0;
    Rational            den = 0;
    std::vector<Letter> buf;
    for (std::size_t l = 1; l <= n; ++l) {
      den += layer_fraction(a.alphabet(), l, count_coset_layer(h, l));
      std::uint64_t inside = 0;
      if (l >= h.base().size()) {
        auto b = h.base().letters();
        // Words with prefix b form a rank range of layer l.
        std::uint64_t lo = 0;
        std::uint64_t hi = a.full_layer_size(l);
        if (!b.empty()) {
          std::uint64_t scale = 1;
          for (std::size_t i = b.size(); i < l; ++i) {
            scale *= static_cast<std::uint64_t>(a.alphabet().branching());
          }
          lo = rank_in_layer(a.alphabet(), b) * scale;
          hi = lo + scale;
        }
        auto [first, last] = a.rank_range(l, lo, hi);
        auto ranks          = a.layer_ranks(l);
        for (std::size_t i = first; i < last; ++i) {
          a.letters(l, ranks[i], buf);
          if (h.contains(buf)) {
            ++inside;
          }
        }
      }
      num += layer_fraction(a.alphabet(), l, to_mpz(inside));
    }
    if (den == 0) {
      return std::nullopt;
    }
    return Rational(num / den);
  }

}  // namespace pfree

#endif  // PFREE_MEASURE_HPP_
