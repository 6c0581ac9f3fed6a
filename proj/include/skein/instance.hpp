#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skein/tl.hpp"

namespace skein {

// ---------------------------------------------------------------------------
// Concrete planar algebras backed by Temperley-Lieb diagrams.
//
//   GenericTL      delta an indeterminate; the full diagram span at every
//                  colour.  Not finite depth; serves as a negative control.
//   QuotientTL(m)  delta = 2cos(pi/m) for m in {3,4,5,6}; the quotient by
//                  the radical of the trace form.  The per-colour basis is
//                  the lexicographically first family of diagrams whose
//                  images stay independent, and the trace form on it is
//                  checked positive definite at build time.
//
// Exact per-colour data is built on demand and capped at colour 6, which
// covers every verification in this artifact.

enum class Model { GenericTL, QuotientTL };

class ConcreteInstance {
 public:
  static constexpr int kMaxColour = 6;

  static ConcreteInstance generic_tl() {
    return ConcreteInstance(Model::GenericTL, 0, FieldKind::GenericDelta);
  }
  static ConcreteInstance quotient_tl(int m) {
    SKEIN_CHECK_MSG(m >= 3 && m <= 6, "only m in {3,4,5,6} shipped");
    FieldKind k = m == 3   ? FieldKind::Rational
                  : m == 4 ? FieldKind::Root2
                  : m == 5 ? FieldKind::Golden
                           : FieldKind::Root3;
    return ConcreteInstance(Model::QuotientTL, m, k);
  }

  Model model() const { return model_; }
  int quotient_m() const { return m_; }
  bool finite_depth() const { return model_ == Model::QuotientTL; }
  FieldKind field() const { return kind_; }
  Scalar delta() const { return Scalar::delta(kind_); }

  std::string name() const {
    if (model_ == Model::GenericTL) return "generic-tl";
    return "quotient-tl(m=" + std::to_string(m_) + ")";
  }

  const std::vector<PlanarTangle>& diagrams(Colour c) const {
    return tl_basis(c);
  }

  std::size_t dim(Colour c) const { return data(c).basis.size(); }

  const std::vector<std::size_t>& basis_indices(Colour c) const {
    return data(c).basis;
  }
  const PlanarTangle& basis_diagram(Colour c, std::size_t i) const {
    const ColourData& d = data(c);
    SKEIN_CHECK_MSG(i < d.basis.size(), "basis index out of range");
    return tl_basis(c)[d.basis[i]];
  }
  TLElement basis_element(Colour c, std::size_t i) const {
    return TLElement::from_diagram(kind_, basis_diagram(c, i));
  }
  TLElement unit(Colour c) const {
    return TLElement::unit_element(kind_, c);
  }

  // Full diagram Gram matrix of the tau form, and its restriction to the
  // chosen basis.
  const Matrix& gram(Colour c) const { return data(c).gram; }
  const Matrix& basis_gram(Colour c) const { return data(c).basis_gram; }

  // dim x #diagrams matrix expressing each diagram in the basis modulo the
  // radical.
  const Matrix& projection(Colour c) const { return data(c).proj; }

  // Coordinates of an element in the instance basis.
  std::vector<Scalar> coords(const TLElement& x) const {
    const ColourData& d = data(x.colour());
    const auto& ds = tl_basis(x.colour());
    std::vector<Scalar> full(ds.size(), Scalar::zero(kind_));
    for (const auto& [key, tv] : x.terms()) {
      auto it = d.index.find(key);
      SKEIN_CHECK_MSG(it != d.index.end(), "unknown diagram term");
      full[it->second] = tv.second;
    }
    std::vector<Scalar> out(d.basis.size(), Scalar::zero(kind_));
    for (std::size_t i = 0; i < d.basis.size(); ++i)
      for (std::size_t j = 0; j < ds.size(); ++j) {
        if (full[j].is_zero()) continue;
        out[i] = out[i] + d.proj.at(i, j) * full[j];
      }
    return out;
  }

  // The image of x in the quotient, written in the chosen basis.
  TLElement reduce(const TLElement& x) const {
    std::vector<Scalar> c = coords(x);
    TLElement r(kind_, x.colour());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) r.add_term(basis_diagram(x.colour(), i), c[i]);
    return r;
  }

  bool equivalent(const TLElement& a, const TLElement& b) const {
    SKEIN_CHECK(a.colour() == b.colour());
    return coords(a) == coords(b);
  }

  Scalar inner(const TLElement& a, const TLElement& b) const {
    return tau(multiply(a.adjoint(), b));
  }

  // Partition function of a fully labelled tangle: substitute the label
  // diagrams, delete loops against delta, reduce.
  TLElement evaluate(const LabelledTangle& lt) const {
    std::map<int, PlanarTangle> fills;
    for (std::size_t b = 1; b <= lt.tangle.boxes().size(); ++b) {
      auto it = lt.labels.find(static_cast<int>(b));
      SKEIN_CHECK_MSG(it != lt.labels.end(), "unlabelled box");
      SKEIN_CHECK_MSG(it->second.colour == lt.tangle.boxes()[b - 1],
                      "label colour mismatch");
      fills.emplace(static_cast<int>(b),
                    basis_diagram(it->second.colour, it->second.index));
    }
    TLElement r(kind_, lt.tangle.external());
    PlanarTangle glued = PlanarTangle::compose(lt.tangle, fills);
    auto [loops, bare] = strip_loops(std::move(glued));
    r.add_term(bare, delta().pow(loops));
    return reduce(r);
  }

  TLElement evaluate(const FormalSum& fs) const {
    TLElement acc(kind_, fs.colour);
    for (const auto& [coef, lt] : fs.terms) {
      SKEIN_CHECK(lt.tangle.external() == fs.colour);
      acc = acc + coef * evaluate(lt);
    }
    return reduce(acc);
  }

  // Multilinear evaluation with arbitrary element fills.
  TLElement evaluate_elements(const PlanarTangle& t,
                              const std::map<int, TLElement>& fills) const {
    std::size_t nb = t.boxes().size();
    std::vector<const TLElement*> elems;
    for (std::size_t b = 1; b <= nb; ++b) {
      auto it = fills.find(static_cast<int>(b));
      SKEIN_CHECK_MSG(it != fills.end(), "unlabelled box");
      SKEIN_CHECK_MSG(it->second.colour() == t.boxes()[b - 1],
                      "fill colour mismatch");
      elems.push_back(&it->second);
    }
    TLElement acc(kind_, t.external());
    std::map<int, PlanarTangle> assign;
    expand(t, elems, 0, Scalar::one(kind_), assign, acc);
    return reduce(acc);
  }

 private:
  struct ColourData {
    Matrix gram;
    std::vector<std::size_t> basis;
    Matrix basis_gram;
    Matrix proj;
    std::map<std::string, std::size_t> index;

    ColourData(FieldKind k)
        : gram(k, 0, 0), basis_gram(k, 0, 0), proj(k, 0, 0) {}
  };

  ConcreteInstance(Model model, int m, FieldKind k)
      : model_(model), m_(m), kind_(k) {}

  void expand(const PlanarTangle& t,
              const std::vector<const TLElement*>& elems, std::size_t b,
              const Scalar& coef, std::map<int, PlanarTangle>& assign,
              TLElement& acc) const {
    if (b == elems.size()) {
      PlanarTangle glued = PlanarTangle::compose(t, assign);
      auto [loops, bare] = strip_loops(std::move(glued));
      acc.add_term(bare, coef * delta().pow(loops));
      return;
    }
    for (const auto& [key, tv] : elems[b]->terms()) {
      assign.insert_or_assign(static_cast<int>(b) + 1, tv.first);
      expand(t, elems, b + 1, coef * tv.second, assign, acc);
      assign.erase(static_cast<int>(b) + 1);
    }
  }

  const ColourData& data(Colour c) const {
    auto it = cache_.find(c);
    if (it != cache_.end()) return it->second;
    SKEIN_CHECK_MSG(c.is_zero() || c.n() <= kMaxColour,
                    "exact instance data capped at colour 6");
    ColourData d(kind_);
    const auto& ds = tl_basis(c);
    for (std::size_t i = 0; i < ds.size(); ++i)
      d.index.emplace(ds[i].canonical_form(), i);
    d.gram = gram_matrix(kind_, c);
    if (model_ == Model::GenericTL) {
      d.basis.resize(ds.size());
      for (std::size_t i = 0; i < ds.size(); ++i) d.basis[i] = i;
      d.basis_gram = d.gram;
      d.proj = Matrix::identity(kind_, ds.size());
    } else {
      // lexicographically first family of diagrams independent modulo the
      // radical: greedy row reduction of the Gram matrix
      std::vector<std::vector<Scalar>> reduced;
      std::vector<std::size_t> pivcol;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        std::vector<Scalar> row(ds.size());
        for (std::size_t j = 0; j < ds.size(); ++j) row[j] = d.gram.at(i, j);
        for (std::size_t r = 0; r < reduced.size(); ++r) {
          Scalar f = row[pivcol[r]];
          if (f.is_zero()) continue;
          for (std::size_t j = 0; j < ds.size(); ++j)
            row[j] = row[j] - f * reduced[r][j];
        }
        std::size_t p = 0;
        while (p < ds.size() && row[p].is_zero()) ++p;
        if (p == ds.size()) continue;
        Scalar inv = row[p].inverse();
        for (std::size_t j = 0; j < ds.size(); ++j) row[j] = inv * row[j];
        reduced.push_back(std::move(row));
        pivcol.push_back(p);
        d.basis.push_back(i);
      }
      std::size_t dim = d.basis.size();
      Matrix bg(kind_, dim, dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          bg.at(i, j) = d.gram.at(d.basis[i], d.basis[j]);
      SKEIN_CHECK_MSG(positive_definite(bg),
                      "quotient trace form must be positive definite");
      d.basis_gram = bg;
      Matrix rhs(kind_, dim, ds.size());
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < ds.size(); ++j)
          rhs.at(i, j) = d.gram.at(d.basis[i], j);
      auto sol = bg.solve_matrix(rhs);
      SKEIN_CHECK(sol.has_value());
      d.proj = *sol;
    }
    return cache_.emplace(c, std::move(d)).first->second;
  }

  Model model_;
  int m_;
  FieldKind kind_;
  mutable std::map<Colour, ColourData> cache_;
};

}  // namespace skein
