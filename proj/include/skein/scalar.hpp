#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "skein/common.hpp"

namespace skein {

// Ground field for the loop parameter delta.
//
//   Rational      delta = 1
//   Root2         delta^2 = 2
//   Golden        delta^2 = delta + 1
//   Root3         delta^2 = 3
//   GenericDelta  delta transcendental; scalars are reduced rational
//                 functions in delta over Q
enum class FieldKind { Rational, Root2, Golden, Root3, GenericDelta };

inline std::string field_kind_str(FieldKind k) {
  switch (k) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Root2: return "root2";
    case FieldKind::Golden: return "golden";
    case FieldKind::Root3: return "root3";
    case FieldKind::GenericDelta: return "generic-delta";
  }
  return "?";
}

namespace detail {

// delta^2 = D + E*delta for the quadratic kinds.
inline void quad_params(FieldKind k, long& D, long& E) {
  switch (k) {
    case FieldKind::Root2: D = 2; E = 0; return;
    case FieldKind::Golden: D = 1; E = 1; return;
    case FieldKind::Root3: D = 3; E = 0; return;
    default: SKEIN_CHECK_MSG(false, "not a quadratic field");
  }
}

using Poly = std::vector<mpq_class>;  // coefficients, ascending degree

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

inline Poly poly_neg(Poly a) {
  for (auto& c : a) c = -c;
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

// Remainder of a by b (b nonzero), over Q.
inline Poly poly_rem(Poly a, const Poly& b) {
  SKEIN_CHECK(!b.empty());
  while (a.size() >= b.size()) {
    mpq_class q = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
    poly_trim(a);
    if (a.empty()) break;
    if (a.size() >= b.size() && a.back() == 0) poly_trim(a);
  }
  return a;
}

inline Poly poly_monic(Poly a) {
  if (a.empty()) return a;
  mpq_class lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

// Exact quotient; requires b | a.
inline Poly poly_div_exact(Poly a, const Poly& b) {
  SKEIN_CHECK(!b.empty());
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (a.size() >= b.size()) {
    mpq_class c = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    poly_trim(a);
  }
  SKEIN_CHECK_MSG(a.empty(), "non-exact polynomial division");
  poly_trim(q);
  return q;
}

inline std::string mpq_str(const mpq_class& q) { return q.get_str(); }

inline std::string poly_str(const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (size_t d = p.size(); d-- > 0;) {
    if (p[d] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string c = mpq_str(p[d]);
    if (d == 0) {
      out += c;
    } else {
      std::string pw = (d == 1) ? "delta" : ("delta^" + std::to_string(d));
      out += (c == "1") ? pw : (c == "-1" ? "-" + pw : c + "*" + pw);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

// Exact scalar over one of the delta fields.  Quadratic kinds store a + b*delta
// with rational a, b; GenericDelta stores a reduced fraction of polynomials
// with monic denominator, so equal values have equal representations.
class Scalar {
 public:
  Scalar() : kind_(FieldKind::Rational), a_(0), b_(0) {}

  static Scalar zero(FieldKind k) { return from_rational(k, mpq_class(0)); }
  static Scalar one(FieldKind k) { return from_rational(k, mpq_class(1)); }

  static Scalar from_int(FieldKind k, long v) {
    return from_rational(k, mpq_class(v));
  }

  static Scalar from_rational(FieldKind k, const mpq_class& q) {
    Scalar s;
    s.kind_ = k;
    if (k == FieldKind::GenericDelta) {
      if (q != 0) s.num_ = {q};
      s.den_ = {mpq_class(1)};
    } else {
      s.a_ = q;
    }
    return s;
  }

  static Scalar delta(FieldKind k) {
    Scalar s;
    s.kind_ = k;
    switch (k) {
      case FieldKind::Rational: s.a_ = 1; break;
      case FieldKind::GenericDelta:
        s.num_ = {mpq_class(0), mpq_class(1)};
        s.den_ = {mpq_class(1)};
        break;
      default: s.b_ = 1; break;
    }
    return s;
  }

  FieldKind kind() const { return kind_; }

  bool is_zero() const {
    if (kind_ == FieldKind::GenericDelta) return num_.empty();
    return a_ == 0 && b_ == 0;
  }

  bool is_one() const { return *this == one(kind_); }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    SKEIN_CHECK(x.kind_ == y.kind_);
    if (x.kind_ == FieldKind::GenericDelta)
      return x.num_ == y.num_ && x.den_ == y.den_;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  Scalar operator-() const {
    Scalar r = *this;
    if (kind_ == FieldKind::GenericDelta) {
      r.num_ = detail::poly_neg(r.num_);
    } else {
      r.a_ = -r.a_;
      r.b_ = -r.b_;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    SKEIN_CHECK(x.kind_ == y.kind_);
    Scalar r;
    r.kind_ = x.kind_;
    if (x.kind_ == FieldKind::GenericDelta) {
      // x.n/x.d + y.n/y.d
      detail::Poly n = detail::poly_add(detail::poly_mul(x.num_, y.den_),
                                        detail::poly_mul(y.num_, x.den_));
      detail::Poly d = detail::poly_mul(x.den_, y.den_);
      r.set_fraction(std::move(n), std::move(d));
    } else {
      r.a_ = x.a_ + y.a_;
      r.b_ = x.b_ + y.b_;
    }
    return r;
  }

  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    SKEIN_CHECK(x.kind_ == y.kind_);
    Scalar r;
    r.kind_ = x.kind_;
    switch (x.kind_) {
      case FieldKind::Rational:
        r.a_ = x.a_ * y.a_;
        break;
      case FieldKind::GenericDelta:
        r.set_fraction(detail::poly_mul(x.num_, y.num_),
                       detail::poly_mul(x.den_, y.den_));
        break;
      default: {
        long D, E;
        detail::quad_params(x.kind_, D, E);
        // (a1 + b1 d)(a2 + b2 d), d^2 = D + E d
        mpq_class bb = x.b_ * y.b_;
        r.a_ = x.a_ * y.a_ + bb * D;
        r.b_ = x.a_ * y.b_ + x.b_ * y.a_ + bb * E;
        break;
      }
    }
    return r;
  }

  Scalar inverse() const {
    SKEIN_CHECK_MSG(!is_zero(), "inverse of zero");
    Scalar r;
    r.kind_ = kind_;
    switch (kind_) {
      case FieldKind::Rational:
        r.a_ = 1 / a_;
        break;
      case FieldKind::GenericDelta:
        r.set_fraction(den_, num_);
        break;
      default: {
        long D, E;
        detail::quad_params(kind_, D, E);
        // Solve (a + b d)(x + y d) = 1: conjugate trick with
        // N = a^2 + a b E - b^2 D (field norm up to sign), nonzero since
        // delta is irrational.
        mpq_class N = a_ * a_ + a_ * b_ * E - b_ * b_ * D;
        SKEIN_CHECK(N != 0);
        r.a_ = (a_ + b_ * E) / N;
        r.b_ = -b_ / N;
        break;
      }
    }
    return r;
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    return x * y.inverse();
  }

  Scalar pow(long e) const {
    SKEIN_CHECK(e >= 0);
    Scalar r = one(kind_);
    for (long i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // Exact sign of the real value (delta = 1, sqrt2, golden ratio, sqrt3);
  // for GenericDelta the sign for all sufficiently large real delta.
  int sign() const {
    if (is_zero()) return 0;
    switch (kind_) {
      case FieldKind::Rational: return sgn(a_);
      case FieldKind::GenericDelta: {
        int s = sgn(num_.back()) * sgn(den_.back());
        return s;
      }
      default: {
        // Express as (u + v sqrt(Dr)) / w with w > 0.
        mpq_class u, v;
        long Dr;
        if (kind_ == FieldKind::Golden) {
          u = 2 * a_ + b_;
          v = b_;
          Dr = 5;
        } else {
          u = a_;
          v = b_;
          Dr = (kind_ == FieldKind::Root2) ? 2 : 3;
        }
        if (v == 0) return sgn(u);
        if (u == 0) return sgn(v);
        if (sgn(u) == sgn(v)) return sgn(u);
        mpq_class lhs = u * u, rhs = v * v * Dr;
        if (lhs == rhs) return 0;  // cannot happen: sqrt(Dr) irrational
        return (lhs > rhs) ? sgn(u) : sgn(v);
      }
    }
  }

  std::string str() const {
    if (kind_ == FieldKind::GenericDelta) {
      std::string n = detail::poly_str(num_);
      if (den_.size() == 1 && den_[0] == 1) return n;
      return "(" + n + ")/(" + detail::poly_str(den_) + ")";
    }
    if (b_ == 0) return detail::mpq_str(a_);
    std::string bs = detail::mpq_str(b_);
    std::string tail = (bs == "1") ? "delta"
                       : (bs == "-1") ? "-delta"
                                      : bs + "*delta";
    if (a_ == 0) return tail;
    return detail::mpq_str(a_) + " + " + tail;
  }

  // Accessors used by the mod-p evaluation layer.
  const mpq_class& qa() const { return a_; }
  const mpq_class& qb() const { return b_; }
  const detail::Poly& gnum() const { return num_; }
  const detail::Poly& gden() const { return den_; }

 private:
  void set_fraction(detail::Poly n, detail::Poly d) {
    detail::poly_trim(n);
    detail::poly_trim(d);
    SKEIN_CHECK(!d.empty());
    if (n.empty()) {
      num_.clear();
      den_ = {mpq_class(1)};
      return;
    }
    detail::Poly g = detail::poly_gcd(n, d);
    if (g.size() > 1 || g[0] != 1) {
      n = detail::poly_div_exact(std::move(n), g);
      d = detail::poly_div_exact(std::move(d), g);
    }
    mpq_class lead = d.back();
    for (auto& c : d) c /= lead;
    for (auto& c : n) c /= lead;
    num_ = std::move(n);
    den_ = std::move(d);
  }

  FieldKind kind_;
  mpq_class a_, b_;    // quadratic kinds: a + b*delta
  detail::Poly num_;   // GenericDelta numerator (empty = 0)
  detail::Poly den_;   // GenericDelta denominator, monic
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

// ---------------------------------------------------------------------------
// Mod-p evaluation.  Used only for rank certificates: a successful full-rank
// elimination mod p lower-bounds the exact rank; it never replaces an exact
// equality check in the other direction.

namespace fp {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t p) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e,
                            std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  SKEIN_CHECK(a % p != 0);
  return powmod(a, p - 2, p);
}

// Tonelli-Shanks; returns nullopt when a is a non-residue.
inline std::optional<std::uint64_t> sqrtmod(std::uint64_t a,
                                            std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(a, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
      SKEIN_CHECK(i < m);
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

inline std::optional<std::uint64_t> mpz_mod(const mpz_class& z,
                                            std::uint64_t p) {
  mpz_class m = z % mpz_class(static_cast<unsigned long>(p));
  long v = m.get_si();
  if (v < 0) v += static_cast<long>(p);
  return static_cast<std::uint64_t>(v);
}

inline std::optional<std::uint64_t> mpq_mod(const mpq_class& q,
                                            std::uint64_t p) {
  auto num = mpz_mod(q.get_num(), p);
  auto den = mpz_mod(q.get_den(), p);
  if (!num || !den) return std::nullopt;
  if (*den == 0) return std::nullopt;
  return mulmod(*num, invmod(*den, p), p);
}

}  // namespace fp

// One prime together with a consistent image of delta.
struct FpContext {
  std::uint64_t p = 0;
  std::uint64_t delta_image = 0;
  FieldKind kind = FieldKind::Rational;

  // generic_point: image of delta for GenericDelta (evaluation point).
  static std::optional<FpContext> make(FieldKind kind, std::uint64_t p,
                                       std::uint64_t generic_point = 7) {
    FpContext ctx;
    ctx.p = p;
    ctx.kind = kind;
    switch (kind) {
      case FieldKind::Rational: ctx.delta_image = 1; break;
      case FieldKind::GenericDelta: ctx.delta_image = generic_point % p; break;
      case FieldKind::Root2:
      case FieldKind::Root3: {
        auto r = fp::sqrtmod(kind == FieldKind::Root2 ? 2 : 3, p);
        if (!r) return std::nullopt;
        ctx.delta_image = *r;
        break;
      }
      case FieldKind::Golden: {
        auto r = fp::sqrtmod(5, p);
        if (!r) return std::nullopt;
        ctx.delta_image = fp::mulmod((1 + *r) % p, fp::invmod(2, p), p);
        break;
      }
    }
    return ctx;
  }

  // nullopt when a denominator vanishes mod p.
  std::optional<std::uint64_t> eval(const Scalar& s) const {
    SKEIN_CHECK(s.kind() == kind);
    if (kind == FieldKind::GenericDelta) {
      auto evalp = [&](const detail::Poly& poly) -> std::optional<std::uint64_t> {
        std::uint64_t acc = 0;
        for (size_t i = poly.size(); i-- > 0;) {
          acc = fp::mulmod(acc, delta_image, p);
          auto c = fp::mpq_mod(poly[i], p);
          if (!c) return std::nullopt;
          acc = (acc + *c) % p;
        }
        return acc;
      };
      auto n = evalp(s.gnum());
      auto d = evalp(s.gden());
      if (!n || !d || *d == 0) return std::nullopt;
      return fp::mulmod(*n, fp::invmod(*d, p), p);
    }
    auto a = fp::mpq_mod(s.qa(), p);
    auto b = fp::mpq_mod(s.qb(), p);
    if (!a || !b) return std::nullopt;
    return (*a + fp::mulmod(*b, delta_image, p)) % p;
  }
};

// Primes large enough to dodge accidental vanishing; tried in order.
inline const std::vector<std::uint64_t>& certificate_primes() {
  static const std::vector<std::uint64_t> ps = {
      1000000007ULL, 1000000009ULL, 998244353ULL, 754974721ULL, 167772161ULL};
  return ps;
}

}  // namespace skein
