#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skein/matrix.hpp"
#include "skein/scalar.hpp"
#include "skein/zoo.hpp"

namespace skein {

// ---------------------------------------------------------------------------
// Temperley-Lieb diagrams: boxless loop-free tangles.  The basis at a
// numeric colour n is the set of non-crossing perfect matchings of the 2n
// boundary points, in lexicographic order of the partner array; at colour
// 0± it is the single empty diagram of that shade.

namespace detail {

inline void nc_rec(int N, int lo, std::vector<int>& partner,
                   std::vector<std::vector<int>>& out) {
  int p = lo;
  while (p <= N && partner[p] != 0) ++p;
  if (p > N) {
    out.push_back(partner);
    return;
  }
  // every matched point beyond p belongs to a pair spanning p, so a
  // partner at or past the first such point would cross it
  int lim = p + 1;
  while (lim <= N && partner[lim] == 0) ++lim;
  for (int q = p + 1; q < lim; q += 2) {
    partner[p] = q;
    partner[q] = p;
    nc_rec(N, p + 1, partner, out);
    partner[p] = 0;
    partner[q] = 0;
  }
}

}  // namespace detail

inline std::vector<std::vector<int>> noncrossing_pairings(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> partner(2 * n + 1, 0);
  detail::nc_rec(2 * n, 1, partner, out);
  return out;
}

inline PlanarTangle diagram_from_pairing(Colour c,
                                         const std::vector<int>& partner) {
  TangleBuilder b(c);
  for (int i = 1; i <= c.points(); ++i) {
    int j = partner[i];
    if (j > i) b.strand(0, i, 0, j);
  }
  return b.build();
}

inline const std::vector<PlanarTangle>& tl_basis(Colour c) {
  static std::map<Colour, std::vector<PlanarTangle>> cache;
  auto it = cache.find(c);
  if (it != cache.end()) return it->second;
  std::vector<PlanarTangle> out;
  if (c.is_zero()) {
    out.push_back(TangleBuilder(c).build());
  } else {
    for (const auto& partner : noncrossing_pairings(c.n()))
      out.push_back(diagram_from_pairing(c, partner));
  }
  return cache.emplace(c, std::move(out)).first->second;
}

// Delete every free loop, counting deletions.
inline std::pair<int, PlanarTangle> strip_loops(PlanarTangle t) {
  int n = 0;
  while (t.has_removable_loop()) {
    t = t.remove_contractible_loop();
    ++n;
  }
  return {n, t};
}

// ---------------------------------------------------------------------------
// TLElement: an exact linear combination of loop-free diagrams of one
// colour.  Terms are keyed by canonical code, so equality is structural.

class TLElement {
 public:
  TLElement(FieldKind kind, Colour colour) : kind_(kind), colour_(colour) {}

  static TLElement from_diagram(FieldKind kind, const PlanarTangle& d,
                                Scalar coef) {
    TLElement x(kind, d.external());
    x.add_term(d, coef);
    return x;
  }
  static TLElement from_diagram(FieldKind kind, const PlanarTangle& d) {
    return from_diagram(kind, d, Scalar::one(kind));
  }
  static TLElement unit_element(FieldKind kind, Colour c) {
    return from_diagram(kind, zoo::unit(c));
  }

  FieldKind kind() const { return kind_; }
  Colour colour() const { return colour_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  const std::map<std::string, std::pair<PlanarTangle, Scalar>>& terms() const {
    return terms_;
  }

  void add_term(const PlanarTangle& d, const Scalar& coef) {
    SKEIN_CHECK_MSG(d.external() == colour_, "term colour mismatch");
    SKEIN_CHECK_MSG(d.boxless() && d.circle_count() == 0,
                    "TL terms must be bare loop-free diagrams");
    if (coef.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(d.canonical_form(), d, coef);
    if (!fresh) {
      it->second.second = it->second.second + coef;
      if (it->second.second.is_zero()) terms_.erase(it);
    }
  }

  friend TLElement operator+(const TLElement& a, const TLElement& b) {
    SKEIN_CHECK(a.kind_ == b.kind_ && a.colour_ == b.colour_);
    TLElement r = a;
    for (const auto& [k, tv] : b.terms_) r.add_term(tv.first, tv.second);
    return r;
  }
  friend TLElement operator-(const TLElement& a, const TLElement& b) {
    return a + (-Scalar::one(b.kind_)) * b;
  }
  friend TLElement operator*(const Scalar& s, const TLElement& x) {
    TLElement r(x.kind_, x.colour_);
    for (const auto& [k, tv] : x.terms_) r.add_term(tv.first, s * tv.second);
    return r;
  }
  friend bool operator==(const TLElement& a, const TLElement& b) {
    if (a.kind_ != b.kind_ || a.colour_ != b.colour_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin();
         ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return false;
      if (ia->second.second != ib->second.second) return false;
    }
    return true;
  }

  TLElement adjoint() const {
    TLElement r(kind_, colour_);
    for (const auto& [k, tv] : terms_) r.add_term(tv.first.adjoint(), tv.second);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, tv] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + tv.second.str() + ")*" + k;
    }
    return out;
  }

 private:
  FieldKind kind_;
  Colour colour_;
  std::map<std::string, std::pair<PlanarTangle, Scalar>> terms_;
};

// Stack b on top of a through the multiplication tangle, deleting loops
// with a delta factor each.
inline TLElement multiply(const TLElement& a, const TLElement& b) {
  SKEIN_CHECK_MSG(a.colour() == b.colour(), "colour mismatch");
  SKEIN_CHECK(a.kind() == b.kind());
  Colour c = a.colour();
  PlanarTangle m = zoo::mult(c, c, c);
  Scalar delta = Scalar::delta(a.kind());
  TLElement r(a.kind(), c);
  for (const auto& [ka, ta] : a.terms())
    for (const auto& [kb, tb] : b.terms()) {
      PlanarTangle stacked =
          PlanarTangle::compose(m, {{1, ta.first}, {2, tb.first}});
      auto [loops, bare] = strip_loops(std::move(stacked));
      r.add_term(bare, ta.second * tb.second * delta.pow(loops));
    }
  return r;
}

// Z of the right closure: delta^{#loops}, summed over terms.  tau is the
// normalised trace delta^{-n} trace.
inline Scalar trace(const TLElement& x) {
  Scalar delta = Scalar::delta(x.kind());
  Scalar acc = Scalar::zero(x.kind());
  for (const auto& [k, tv] : x.terms()) {
    if (x.colour().is_zero()) {
      acc = acc + tv.second;
      continue;
    }
    PlanarTangle closed = PlanarTangle::compose(
        zoo::er(Colour::zero_plus(), x.colour().n()), {{1, tv.first}});
    acc = acc + tv.second * delta.pow(closed.circle_count());
  }
  return acc;
}

// Same partition function through the left closure; sphericality says the
// two agree, and the acceptance suite checks that they do.
inline Scalar trace_left(const TLElement& x) {
  Scalar delta = Scalar::delta(x.kind());
  Scalar acc = Scalar::zero(x.kind());
  for (const auto& [k, tv] : x.terms()) {
    if (x.colour().is_zero()) {
      acc = acc + tv.second;
      continue;
    }
    PlanarTangle closed = PlanarTangle::compose(
        zoo::er(Colour::zero_minus(), x.colour().n()), {{1, tv.first}});
    acc = acc + tv.second * delta.pow(closed.circle_count());
  }
  return acc;
}

inline Scalar tau(const TLElement& x) {
  Scalar t = trace(x);
  if (x.colour().is_zero()) return t;
  return t * Scalar::delta(x.kind()).pow(x.colour().n()).inverse();
}

inline TLElement jones_E(FieldKind kind, int n) {
  SKEIN_CHECK_MSG(n >= 2, "E_n needs n >= 2");
  return TLElement::from_diagram(kind, zoo::jones_e(n));
}

inline TLElement jones_projection(FieldKind kind, int n) {
  return Scalar::delta(kind).inverse() * jones_E(kind, n);
}

// The padded generator E_i inside colour n.
inline TLElement jones_E_at(FieldKind kind, int n, int i) {
  return TLElement::from_diagram(kind, zoo::e_gen(n, i));
}

// Gram matrix of the normalised trace form over tl_basis(n).
inline Matrix gram_matrix(FieldKind kind, Colour n) {
  const auto& basis = tl_basis(n);
  Matrix g(kind, basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    TLElement bi = TLElement::from_diagram(kind, basis[i]).adjoint();
    for (std::size_t j = 0; j < basis.size(); ++j)
      g.at(i, j) =
          tau(multiply(bi, TLElement::from_diagram(kind, basis[j])));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Labelled tangles: a tangle plus basis-element references in its boxes.
// FormalSum is a scalar combination of labelled tangles of one colour.

struct Label {
  Colour colour;
  int index = 0;  // position in the instance basis at that colour

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct LabelledTangle {
  PlanarTangle tangle;
  std::map<int, Label> labels;  // box id -> label
};

struct FormalSum {
  Colour colour;
  std::vector<std::pair<Scalar, LabelledTangle>> terms;
};

}  // namespace skein
