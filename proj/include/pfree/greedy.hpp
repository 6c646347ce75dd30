// Greedy construction of large subsets W of S with unique products, the
// fixed-point polynomial behind it, the finite-horizon regularity probe and
// the density-increment descent.

#ifndef PFREE_GREEDY_HPP_
#define PFREE_GREEDY_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfree/algebra.hpp"
#include "pfree/codec.hpp"
#include "pfree/counting.hpp"
#include "pfree/error.hpp"
#include "pfree/measure.hpp"
#include "pfree/polynomial.hpp"
#include "pfree/semigroup.hpp"
#include "pfree/wordset.hpp"

namespace pfree {

  // ---------------------------------------------------------------------------
  // Bounds
  // ---------------------------------------------------------------------------

  struct LemmaBound {
    Rational value;
    Rational q;
    bool     clamped = false;
  };

  // 1 / (1 + q + ... + q^(k-1)), with q clamped to 1 from above.
  inline LemmaBound lemma_bound_q(Rational q, int k) {
    if (k < 2) {
      throw Error(ErrorKind::domain, "k must be at least 2");
    }
    if (q < 0) {
      throw Error(ErrorKind::domain, "q must be nonnegative");
    }
    bool clamped = q > 1;
    if (clamped) {
      q = 1;
    }
    Rational sum  = 0;
    Rational term = 1;
    for (int j = 0; j < k; ++j) {
      sum += term;
      term *= q;
    }
    return {Rational(1 / sum), q, clamped};
  }

  // q = kappa * mu(W).
  inline LemmaBound lemma_bound(const Rational& mu_w, int k, const Alphabet& alphabet) {
    return lemma_bound_q(kappa(alphabet) * mu_w, k);
  }

  // (1/k) sum_{j<k} q^j - q as a polynomial in q.
  inline Polynomial increment_polynomial_q(int k) {
    if (k < 2) {
      throw Error(ErrorKind::domain, "k must be at least 2");
    }
    std::vector<Rational> c(static_cast<std::size_t>(k), Rational(1, k));
    c[1] -= 1;
    return Polynomial(std::move(c));
  }

  // f(x) = PrG ((1/k) sum_{j<k} (kappa x)^j - kappa x) as a polynomial in x.
  inline Polynomial poly_f_polynomial(int k, const Rational& pr_g, const Rational& kap) {
    auto                  base = increment_polynomial_q(k).coefficients();
    std::vector<Rational> c(base.size());
    Rational              scale = pr_g;
    for (std::size_t j = 0; j < base.size(); ++j) {
      c[j] = base[j] * scale;
      scale *= kap;
    }
    return Polynomial(std::move(c));
  }

  inline Rational poly_f(const Rational& x, int k, const Rational& pr_g, const Alphabet& alphabet) {
    if (pr_g < 0 || pr_g > 1) {
      throw Error(ErrorKind::domain, "Pr(alpha in G) must lie in [0, 1]");
    }
    return poly_f_polynomial(k, pr_g, kappa(alphabet))(x);
  }

  // First root of f in the open interval (0, 1/kappa), if any.
  inline std::optional<RootBracket> poly_f_root(int              k,
                                                const Alphabet&  alphabet,
                                                const Rational&  width = Rational(1, 1000000)) {
    Rational kap = kappa(alphabet);
    return first_root(poly_f_polynomial(k, 1, kap), 0, Rational(1 / kap), width);
  }

  struct PseudorandomCheck {
    Rational lhs;
    bool     holds;
  };

  // d (1 + r + ... + r^(k-1)) with r = d / (d + 2 eps), against 1.
  inline PseudorandomCheck kprod_pseudorandom_check(const Rational& d,
                                                    const Rational& eps,
                                                    int             k) {
    if (k < 2) {
      throw Error(ErrorKind::domain, "k must be at least 2");
    }
    if (d < 0 || eps < 0) {
      throw Error(ErrorKind::domain, "d and epsilon must be nonnegative");
    }
    if (d == 0 && eps == 0) {
      throw Error(ErrorKind::domain, "d = epsilon = 0 is degenerate");
    }
    Rational r    = d / (d + 2 * eps);
    Rational sum  = 0;
    Rational term = 1;
    for (int j = 0; j < k; ++j) {
      sum += term;
      term *= r;
    }
    Rational lhs = d * sum;
    return {lhs, lhs <= 1};
  }

  // Pr(alpha in h) = (1/n) sum_{l=1..n} mu(h(l)).
  inline Rational probability_in(const Coset& h, std::size_t n) {
    if (n == 0) {
      throw Error(ErrorKind::domain, "horizon must be at least 1");
    }
    return mu_family(Family(h), n) / static_cast<long>(n);
  }

  // ---------------------------------------------------------------------------
  // Greedy traces
  // ---------------------------------------------------------------------------

  enum class StopReason {
    floor_reached,
    layers_exhausted,
    certificate_exhausted,
    step_limit,
  };

  constexpr std::string_view to_string(StopReason r) noexcept {
    switch (r) {
      case StopReason::floor_reached:
        return "floor-reached";
      case StopReason::layers_exhausted:
        return "layers-exhausted";
      case StopReason::certificate_exhausted:
        return "certificate-exhausted";
      case StopReason::step_limit:
        return "step-limit";
    }
    return "unknown";
  }

  struct GreedyStep {
    std::size_t   layer;
    std::uint64_t added;
    // mu(W_i) after the step.
    Rational      measure;
    Rational      increment;
    // Guaranteed increment at the state before the step.
    Rational      certified;
  };

  struct GreedyTrace {
    std::vector<GreedyStep> steps;
    WordSet                 final_set;
    // Fixed point for mu(W).
    Rational                target;
    StopReason              stop = StopReason::layers_exhausted;
    std::size_t             horizon = 0;
    Coset                   ambient;
    // Pr(alpha in ambient) at the horizon.
    Rational                pr_ambient;
    // Base density used by the regular builder.
    std::optional<Rational> density;
    // Maximum allowed layer gap parameter |w| (0 for the simple builder).
    std::size_t             spacing = 0;
  };

  struct GreedyOptions {
    Rational      floor = Rational(1, 1000000);
    // Stop once the certified increment is no longer positive.
    bool          stop_when_uncertified = true;
    std::size_t   max_steps             = 100000;
    bool          verify_product_free   = true;
    SearchOptions search;
  };

  namespace detail {
    struct GreedyPlan {
      const WordSet&                             s;
      Coset                                      h;
      std::size_t                                cap;
      std::size_t                                spacing;
      bool                                       check_unique;
      std::function<Rational(const Rational&)>   certificate;
      const GreedyOptions&                       opt;
    };

    inline void assert_invariants(const GreedyPlan& plan, const WordSet& w) {
      if (auto d = find_divisor_pair(w, plan.h)) {
        throw std::logic_error("greedy step broke divisor-freeness at "
                               + format_word(d->v));
      }
      if (plan.check_unique) {
        if (auto c = find_product_collision(w, plan.h, plan.cap)) {
          throw Error(ErrorKind::unique_products_violation,
                      "W lost unique products: " + format_word(c->product) + " = "
                          + format_word(c->first) + "." + format_word(c->first_h)
                          + " = " + format_word(c->second) + "."
                          + format_word(c->second_h));
        }
      }
    }

    // W_{i+1} = W_i + (S(l) \ (W_i h u Div(W_i))) for the best admissible l.
    // Div(W) holds proper prefixes u of members v = u.t with t in h, so that
    // adding a shorter layer never creates a divisor pair.
    inline GreedyTrace run_greedy(const GreedyPlan& plan) {
      const WordSet&  s    = plan.s;
      const Alphabet& alph = s.alphabet();
      const Coset&    h    = plan.h;
      std::size_t     cap  = plan.cap;
      std::uint64_t   b    = static_cast<std::uint64_t>(alph.branching());
      auto            pw   = powers(b, cap);

      std::vector<std::vector<std::uint64_t>> open(cap + 1);
      for (std::size_t l = 1; l <= cap; ++l) {
        auto r  = s.layer_ranks(l);
        open[l] = std::vector<std::uint64_t>(r.begin(), r.end());
      }

      GreedyTrace trace{{}, WordSet(alph, cap, h), 0, StopReason::layers_exhausted,
                        cap, h, 0, std::nullopt, plan.spacing};
      WordSet&              w  = trace.final_set;
      Rational              mu = 0;
      std::set<std::size_t> chosen;
      std::vector<Letter>   buf;

      while (true) {
        if (trace.steps.size() >= plan.opt.max_steps) {
          trace.stop = StopReason::step_limit;
          break;
        }
        Rational cert = plan.certificate(mu);
        if (plan.opt.stop_when_uncertified && !trace.steps.empty() && cert <= 0) {
          trace.stop = StopReason::certificate_exhausted;
          break;
        }
        std::size_t best = 0;
        Rational    best_inc = 0;
        for (std::size_t l = 1; l <= cap; ++l) {
          if (open[l].empty()) {
            continue;
          }
          bool spaced = true;
          for (std::size_t c : chosen) {
            std::size_t gap = c > l ? c - l : l - c;
            if (gap != 0 && gap <= plan.spacing) {
              spaced = false;
              break;
            }
          }
          if (!spaced) {
            continue;
          }
          Rational inc = layer_fraction(alph, l, to_mpz(open[l].size()));
          if (inc > best_inc) {
            best_inc = inc;
            best     = l;
          }
        }
        if (best == 0) {
          trace.stop = StopReason::layers_exhausted;
          break;
        }
        if (best_inc < plan.opt.floor) {
          trace.stop = StopReason::floor_reached;
          break;
        }

        std::vector<std::uint64_t> added = std::move(open[best]);
        open[best].clear();
        w.insert_ranks(best, added);
        chosen.insert(best);
        mu += best_inc;
        trace.steps.push_back({best, added.size(), mu, best_inc, cert});

        // Longer candidates v with a new prefix u and v = u.t, t in h.
        for (std::size_t l = best + 1; l <= cap; ++l) {
          std::vector<std::uint64_t> keep;
          for (std::uint64_t r : open[l]) {
            if (w.contains_rank(best, r / pw[l - best])) {
              s.letters(l, r, buf);
              if (h.contains(std::span<const Letter>(buf).subspan(best))) {
                continue;
              }
            }
            keep.push_back(r);
          }
          open[l] = std::move(keep);
        }
        // Shorter candidates that would divide a new member.
        for (std::size_t l = 1; l < best; ++l) {
          if (open[l].empty()) {
            continue;
          }
          std::vector<std::uint64_t> drop;
          for (std::uint64_t r : added) {
            s.letters(best, r, buf);
            if (h.contains(std::span<const Letter>(buf).subspan(l))) {
              drop.push_back(r / pw[best - l]);
            }
          }
          std::sort(drop.begin(), drop.end());
          std::vector<std::uint64_t> keep;
          std::set_difference(open[l].begin(), open[l].end(), drop.begin(), drop.end(),
                              std::back_inserter(keep));
          open[l] = std::move(keep);
        }
        assert_invariants(plan, w);
      }
      return trace;
    }

    inline WordSet tagged_within(const WordSet& s, const Coset& h) {
      try {
        return s.with_ambient(h);
      } catch (const Error& e) {
        throw Error(ErrorKind::containment, std::string("S is not inside ")
                                                + h.describe() + ": " + e.what());
      }
    }
  }  // namespace detail

  // Greedy W for strongly k-product-free S inside G (k = 2, 3 in the
  // argument it serves; any k >= 2 runs).
  inline GreedyTrace build_W_simple(const WordSet&       s,
                                    int                  k,
                                    const Subsemigroup&  g,
                                    std::size_t          cap,
                                    const GreedyOptions& opt = {}) {
    if (k < 2) {
      throw Error(ErrorKind::domain, "k must be at least 2");
    }
    if (cap > s.cap()) {
      throw Error(ErrorKind::incomplete_data, "cap exceeds the set cap");
    }
    Coset   h(g);
    WordSet tagged = detail::tagged_within(s.truncated(cap), h);
    if (opt.verify_product_free) {
      if (auto v = find_k_product_violation(tagged, static_cast<std::size_t>(k), cap,
                                            opt.search)) {
        throw Error(ErrorKind::domain,
                    "S is not strongly " + std::to_string(k)
                        + "-product-free: product " + format_word(v->product));
      }
    }
    Rational kap  = kappa(s.alphabet());
    Rational pr_g = probability_in(h, cap);
    Polynomial f  = poly_f_polynomial(k, pr_g, kap);
    detail::GreedyPlan plan{tagged, h, cap, 0, false,
                            [f](const Rational& x) { return f(x); }, opt};
    GreedyTrace trace = detail::run_greedy(plan);
    trace.target      = 1 / kap;
    trace.pr_ambient  = pr_g;
    return trace;
  }

  // ---------------------------------------------------------------------------
  // Regularity
  // ---------------------------------------------------------------------------

  struct RegularityVerdict {
    bool                    regular = true;
    Rational                epsilon;
    Coset                   coset;
    // d_n of S relative to the base coset.
    Rational                base_density;
    std::optional<Word>     witness;
    std::optional<Rational> witness_density;
    // Largest refined density seen (up to the first violation).
    Rational                max_refined;
    std::size_t             horizon = 0;
    std::size_t             depth   = 0;
    std::uint64_t           probed  = 0;
  };

  // Compares d_n over (w w')G with d_n over wG + eps for every w' in G with
  // 1 <= |w'| <= depth, in shortlex order.
  inline RegularityVerdict regularity_probe(const WordSet&      s,
                                            const Subsemigroup& g,
                                            const Word&         w,
                                            const Rational&     eps,
                                            std::size_t         depth,
                                            std::size_t         horizon) {
    if (eps < 0) {
      throw Error(ErrorKind::domain, "epsilon must be nonnegative");
    }
    if (horizon > s.cap()) {
      throw Error(ErrorKind::incomplete_data, "horizon exceeds the set cap");
    }
    Coset base(g, w);
    detail::tagged_within(s.truncated(horizon), base);
    auto d = relative_density(s, base, horizon);
    if (!d) {
      throw Error(ErrorKind::inconclusive,
                  "horizon " + std::to_string(horizon) + " holds no member of "
                      + base.describe());
    }
    RegularityVerdict verdict{true, eps, base, *d, std::nullopt, std::nullopt, 0,
                              horizon, depth, 0};
    Coset whole(g);
    for (std::size_t len = 1; len <= depth; ++len) {
      std::vector<Word> refinements;
      for_each_in_coset_layer(whole, len, [&](std::span<const Letter> v) {
        refinements.emplace_back(s.alphabet(), v);
      });
      for (const Word& wp : refinements) {
        Coset refined = base.refine(wp);
        auto  dr      = relative_density(s, refined, horizon);
        if (!dr) {
          throw Error(ErrorKind::inconclusive,
                      "horizon " + std::to_string(horizon) + " holds no member of "
                          + refined.describe());
        }
        ++verdict.probed;
        if (*dr > verdict.max_refined) {
          verdict.max_refined = *dr;
        }
        if (*dr > *d + eps) {
          verdict.regular         = false;
          verdict.witness         = wp;
          verdict.witness_density = *dr;
          return verdict;
        }
      }
    }
    return verdict;
  }

  struct RegularOptions {
    std::size_t   depth   = 3;
    // Probe horizon; the cap when unset.
    std::optional<std::size_t> horizon;
    GreedyOptions greedy;
  };

  // Greedy W inside wG with chosen layers equal or more than |w| apart;
  // unique products in wG are checked after every step.
  inline GreedyTrace build_W_regular(const WordSet&        s,
                                     const Word&           w,
                                     const Rational&       eps,
                                     const Subsemigroup&   g,
                                     std::size_t           cap,
                                     const RegularOptions& opt = {}) {
    if (cap > s.cap()) {
      throw Error(ErrorKind::incomplete_data, "cap exceeds the set cap");
    }
    Coset       h(g, w);
    WordSet     tagged  = detail::tagged_within(s.truncated(cap), h);
    std::size_t horizon = opt.horizon.value_or(cap);
    RegularityVerdict v = regularity_probe(tagged, g, w, eps, opt.depth, horizon);
    if (!v.regular) {
      throw Error(ErrorKind::regularity_unverified,
                  "S is not " + to_string(eps) + "-regular in " + h.describe()
                      + " (witness " + format_word(*v.witness)
                      + "); see regularity_probe");
    }
    Rational kap  = kappa(s.alphabet());
    Rational pr_h = probability_in(h, cap);
    Rational d    = density_sequence(tagged, h, horizon).tail_max;
    detail::GreedyPlan plan{
        tagged, h, cap, w.size(), true,
        [=](const Rational& x) { return Rational(pr_h * (d - kap * x * (d + 2 * eps))); },
        opt.greedy};
    GreedyTrace trace = detail::run_greedy(plan);
    trace.target      = (d + 2 * eps) == 0 ? Rational(0) : Rational(d / (kap * (d + 2 * eps)));
    trace.pr_ambient  = pr_h;
    trace.density     = d;
    return trace;
  }

  struct ChainLink {
    Word     base;
    Rational density;
  };

  struct IncrementResult {
    Word                             base;
    std::optional<RegularityVerdict> verdict;
    std::vector<ChainLink>           chain;
    // False when the horizon ran out before a regular slice was found.
    bool                             conclusive = true;
    std::string                      note;
  };

  // Descends into witness cosets until the slice of S is eps-regular.
  inline IncrementResult density_increment_search(const WordSet&      s,
                                                  const Subsemigroup& g,
                                                  const Rational&     eps,
                                                  std::size_t         depth,
                                                  std::size_t         horizon) {
    if (eps <= 0) {
      throw Error(ErrorKind::domain, "epsilon must be positive");
    }
    IncrementResult out{Word(s.alphabet()), std::nullopt, {}, true, {}};
    WordSet         slice = detail::tagged_within(s.truncated(horizon), Coset(g));
    Word            w(s.alphabet());
    // Densities rise by more than eps per step and stay <= 1.
    Rational        inv   = 1 / eps;
    mpz_class       limit = inv.get_num() / inv.get_den() + 2;
    for (mpz_class step = 0; step < limit; ++step) {
      std::optional<RegularityVerdict> probe;
      try {
        probe = regularity_probe(slice, g, w, eps, depth, horizon);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::inconclusive) {
          throw;
        }
        out.conclusive = false;
        out.note       = e.what();
        return out;
      }
      const RegularityVerdict& v = *probe;
      if (out.chain.empty()) {
        out.chain.push_back({w, v.base_density});
      }
      out.base    = w;
      out.verdict = v;
      if (v.regular) {
        return out;
      }
      w = concatenate(w, *v.witness);
      out.chain.push_back({w, *v.witness_density});
      slice = slice.restricted(Coset(g, w));
    }
    out.conclusive = false;
    out.note       = "step limit reached";
    return out;
  }

}  // namespace pfree

#endif  // PFREE_GREEDY_HPP_
