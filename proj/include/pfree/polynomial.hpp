// Exact univariate polynomials over the rationals and real-root isolation
// with Sturm sequences.

#ifndef PFREE_POLYNOMIAL_HPP_
#define PFREE_POLYNOMIAL_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pfree/error.hpp"

namespace pfree {

  class Polynomial {
   public:
    Polynomial() = default;
    // coefficients[i] multiplies x^i.
    explicit Polynomial(std::vector<mpq_class> coefficients)
        : c_(std::move(coefficients)) {
      trim();
    }

    static Polynomial constant(const mpq_class& v) {
      return Polynomial({v});
    }
    static Polynomial x() {
      return Polynomial({0, 1});
    }

    bool is_zero() const noexcept {
      return c_.empty();
    }
    // -1 for the zero polynomial.
    int degree() const noexcept {
      return static_cast<int>(c_.size()) - 1;
    }
    const std::vector<mpq_class>& coefficients() const noexcept {
      return c_;
    }
    mpq_class leading() const {
      return c_.empty() ? mpq_class(0) : c_.back();
    }

    mpq_class operator()(const mpq_class& x) const {
      mpq_class acc = 0;
      for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * x + c_[i];
      }
      return acc;
    }

    Polynomial derivative() const {
      std::vector<mpq_class> d;
      for (std::size_t i = 1; i < c_.size(); ++i) {
        d.push_back(c_[i] * static_cast<long>(i));
      }
      return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
      std::vector<mpq_class> r(std::max(a.c_.size(), b.c_.size()), 0);
      for (std::size_t i = 0; i < a.c_.size(); ++i) {
        r[i] += a.c_[i];
      }
      for (std::size_t i = 0; i < b.c_.size(); ++i) {
        r[i] += b.c_[i];
      }
      return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a) {
      std::vector<mpq_class> r = a.c_;
      for (auto& v : r) {
        v = -v;
      }
      return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
      return a + (-b);
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
      if (a.is_zero() || b.is_zero()) {
        return {};
      }
      std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, 0);
      for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
          r[i + j] += a.c_[i] * b.c_[j];
        }
      }
      return Polynomial(std::move(r));
    }

    // Euclidean division: a = q b + r with deg r < deg b.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                    const Polynomial& b) {
      if (b.is_zero()) {
        throw Error(ErrorKind::domain, "polynomial division by zero");
      }
      std::vector<mpq_class> rem = a.c_;
      std::vector<mpq_class> quo(
          a.degree() >= b.degree() ? a.c_.size() - b.c_.size() + 1 : 0, 0);
      for (int d = a.degree(); d >= b.degree(); --d) {
        mpq_class f = rem[d] / b.leading();
        if (f == 0) {
          continue;
        }
        std::size_t shift = static_cast<std::size_t>(d - b.degree());
        quo[shift]        = f;
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
          rem[shift + i] -= f * b.c_[i];
        }
      }
      return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
      return a.c_ == b.c_;
    }

   private:
    void trim() {
      while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
      }
    }

    std::vector<mpq_class> c_;
  };

  // p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
  inline std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain{p};
    if (p.degree() < 1) {
      return chain;
    }
    chain.push_back(p.derivative());
    while (!chain.back().is_zero()) {
      auto r = divmod(chain[chain.size() - 2], chain.back()).second;
      if (r.is_zero()) {
        break;
      }
      chain.push_back(-r);
    }
    return chain;
  }

  inline int sign_changes(const std::vector<Polynomial>& chain, const mpq_class& x) {
    int changes = 0;
    int last    = 0;
    for (const auto& p : chain) {
      int s = sgn(p(x));
      if (s == 0) {
        continue;
      }
      if (last != 0 && s != last) {
        ++changes;
      }
      last = s;
    }
    return changes;
  }

  // p with every factor (x - r) removed.
  inline Polynomial deflate(Polynomial p, const mpq_class& r) {
    Polynomial lin({-r, 1});
    while (!p.is_zero() && p(r) == 0) {
      p = divmod(p, lin).first;
    }
    return p;
  }

  // Distinct real roots in the open interval (lo, hi).
  inline int count_roots(Polynomial p, const mpq_class& lo, const mpq_class& hi) {
    if (p.is_zero()) {
      throw Error(ErrorKind::domain, "the zero polynomial has every root");
    }
    if (!(lo < hi)) {
      return 0;
    }
    p         = deflate(deflate(std::move(p), lo), hi);
    auto ch   = sturm_chain(p);
    return sign_changes(ch, lo) - sign_changes(ch, hi);
  }

  struct RootBracket {
    mpq_class lo;
    mpq_class hi;
    // lo == hi and the root is exactly lo.
    bool      exact = false;
  };

  // Smallest root in the open interval (lo, hi), bracketed to width <= width.
  inline std::optional<RootBracket> first_root(Polynomial        p,
                                               mpq_class         lo,
                                               mpq_class         hi,
                                               const mpq_class&  width) {
    if (p.is_zero()) {
      throw Error(ErrorKind::domain, "the zero polynomial has every root");
    }
    if (width <= 0) {
      throw Error(ErrorKind::domain, "bracket width must be positive");
    }
    p = deflate(deflate(std::move(p), lo), hi);
    if (count_roots(p, lo, hi) == 0) {
      return std::nullopt;
    }
    while (hi - lo > width) {
      mpq_class mid = (lo + hi) / 2;
      if (p(mid) == 0) {
        Polynomial q = deflate(p, mid);
        if (count_roots(q, lo, mid) == 0) {
          return RootBracket{mid, mid, true};
        }
        p  = std::move(q);
        hi = mid;
        continue;
      }
      if (count_roots(p, lo, mid) > 0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return RootBracket{lo, hi, false};
  }

}  // namespace pfree

#endif  // PFREE_POLYNOMIAL_HPP_
