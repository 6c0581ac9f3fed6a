#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skein/instance.hpp"
#include "skein/tl.hpp"

namespace skein {

// ---------------------------------------------------------------------------
// A template is an ordered pair of tangles of one colour; a derivation is a
// checkable script over the closure rules.

struct Template {
  std::string name;
  PlanarTangle lhs;
  PlanarTangle rhs;

  Template(std::string n, PlanarTangle l, PlanarTangle r)
      : name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {
    SKEIN_CHECK_MSG(lhs.external() == rhs.external(),
                    "template sides must share a colour");
  }

  Colour colour() const { return lhs.external(); }

  friend bool operator==(const Template& a, const Template& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

struct TemplateSet {
  int k = 0;
  std::vector<Template> templates;

  const Template* find(const std::string& name) const {
    for (const auto& t : templates)
      if (t.name == name) return &t;
    return nullptr;
  }
};

// The basic template set at depth parameter k.
inline TemplateSet basic_templates(int k) {
  SKEIN_CHECK(k >= 1);
  using namespace zoo;
  Colour ck = Colour::num(k);
  Colour zp = Colour::zero_plus();
  Colour zm = Colour::zero_minus();
  TemplateSet s;
  s.k = k;
  s.templates.emplace_back("modulus-0+-remove", circle_disc(zp), unit(zp));
  s.templates.emplace_back("modulus-0+-insert", unit(zp), circle_disc(zp));
  s.templates.emplace_back("modulus-0--remove", circle_disc(zm), unit(zm));
  s.templates.emplace_back("modulus-0--insert", unit(zm), circle_disc(zm));
  s.templates.emplace_back("identity", unit(ck), inc(ck, 0));
  s.templates.emplace_back("inclusion", inc(ck, 1),
                           tangle_T(Colour::num(k + 1), k));
  for (int n = 2; n <= k; ++n)
    s.templates.emplace_back("jones-" + std::to_string(n),
                             e_gen(k, n - 1), inc(ck, 0));
  s.templates.emplace_back("multiplication", mult(ck, ck, ck), inc(ck, 0));
  s.templates.emplace_back("cond-exp", cond_exp(k), inc(ck, 0));
  s.templates.emplace_back("depth", unit(Colour::num(k + 1)),
                           tangle_T(Colour::num(k + 1), k));
  s.templates.emplace_back("shift", shift(k), tangle_T(Colour::num(k + 2), k));
  return s;
}

// ---------------------------------------------------------------------------
// Derivation steps.

struct Step {
  enum class Kind {
    Axiom,
    Reflexivity,
    Transitivity,
    ComposeOutside,
    RemoveLoop,
    RewriteEqual
  };
  enum class Side { Lhs, Rhs };

  Kind kind;
  std::string axiom;                      // Axiom
  std::optional<PlanarTangle> tangle;     // Reflexivity
  int i = -1;                             // first premise
  int j = -1;                             // second premise (Transitivity)
  std::optional<PlanarTangle> host;       // ComposeOutside
  std::map<int, int> slots;               // host box -> premise index
  Side side = Side::Lhs;                  // RewriteEqual
  std::optional<PlanarTangle> replacement;
  std::string note;

  static Step make_axiom(std::string name) {
    Step s;
    s.kind = Kind::Axiom;
    s.axiom = std::move(name);
    return s;
  }
  static Step make_reflexivity(PlanarTangle t) {
    Step s;
    s.kind = Kind::Reflexivity;
    s.tangle = std::move(t);
    return s;
  }
  static Step make_transitivity(int i, int j) {
    Step s;
    s.kind = Kind::Transitivity;
    s.i = i;
    s.j = j;
    return s;
  }
  static Step make_compose(PlanarTangle host, std::map<int, int> slots) {
    Step s;
    s.kind = Kind::ComposeOutside;
    s.host = std::move(host);
    s.slots = std::move(slots);
    return s;
  }
  static Step make_remove_loop(int i) {
    Step s;
    s.kind = Kind::RemoveLoop;
    s.i = i;
    return s;
  }
  static Step make_rewrite(int i, Side side, PlanarTangle replacement,
                           std::string note = "") {
    Step s;
    s.kind = Kind::RewriteEqual;
    s.i = i;
    s.side = side;
    s.replacement = std::move(replacement);
    s.note = std::move(note);
    return s;
  }

  std::string kind_str() const {
    switch (kind) {
      case Kind::Axiom: return "Axiom";
      case Kind::Reflexivity: return "Reflexivity";
      case Kind::Transitivity: return "Transitivity";
      case Kind::ComposeOutside: return "ComposeOutside";
      case Kind::RemoveLoop: return "RemoveLoop";
      case Kind::RewriteEqual: return "RewriteEqual";
    }
    return "?";
  }
};

struct Derivation {
  std::string name;
  std::vector<Step> steps;
};

struct StepReport {
  bool ok = false;
  std::string message;
};

struct CheckResult {
  bool ok = false;
  std::vector<StepReport> reports;
  std::vector<std::optional<Template>> produced;

  const Template& conclusion() const {
    SKEIN_CHECK_MSG(ok && !produced.empty() && produced.back().has_value(),
                    "no conclusion on a failed derivation");
    return *produced.back();
  }
};

struct CheckOptions {
  // Expand every RemoveLoop into its mechanical three-step justification
  // (modulus insertion composed outside, then transitivity) and verify it.
  bool audit_remove_loop = false;
};

namespace detail {

struct LoopHost {
  PlanarTangle host;
  int slot;
  Colour shade;
};

// Rebuild the loop-insertion host: the reduced tangle plus one floating
// zero-coloured slot placed so that filling it with a circle reproduces
// the original and filling it with the empty tangle gives the reduction.
inline std::optional<LoopHost> find_loop_host(const PlanarTangle& before,
                                              const PlanarTangle& after) {
  std::vector<Anchor> spots;
  for (int node = 0; node <= static_cast<int>(after.boxes().size()); ++node) {
    int arcs = std::max(
        node == 0 ? after.external().points() : after.boxes()[node - 1].points(),
        2);
    for (int arc = 0; arc < arcs; ++arc) spots.push_back(Anchor{node, arc});
  }
  for (int c = 1; c <= after.circle_count(); ++c)
    spots.push_back(Anchor{-c, 1});

  std::vector<Colour> boxes = after.boxes();
  boxes.push_back(Colour::zero_plus());  // shade fixed up per attempt
  int slot = static_cast<int>(boxes.size());
  std::set<std::pair<int, int>> seen_faces;
  for (const Anchor& at : spots) {
    try {
      if (!seen_faces.insert(after.face_at(at)).second) continue;
    } catch (const check_error&) {
      continue;
    }
    for (Colour shade : {Colour::zero_plus(), Colour::zero_minus()}) {
      boxes[slot - 1] = shade;
      auto pls = after.placements();
      pls[slot] = PlanarTangle::Placement{at, Anchor{slot, 0}};
      try {
        PlanarTangle host = PlanarTangle::from_raw(
            after.external(), boxes, after.strands(), after.circle_count(),
            std::move(pls));
        if (!(PlanarTangle::compose(host, {{slot, zoo::unit(shade)}}) ==
              after))
          continue;
        if (PlanarTangle::compose(host, {{slot, zoo::circle_disc(shade)}}) ==
            before)
          return LoopHost{std::move(host), slot, shade};
      } catch (const check_error&) {
        continue;
      }
    }
  }
  return std::nullopt;
}

inline bool audit_loop_removal(const PlanarTangle& before,
                               const PlanarTangle& after,
                               std::string& why) {
  if (find_loop_host(before, after)) return true;
  why = "no loop-insertion host reproduces the premise";
  return false;
}

}  // namespace detail

inline CheckResult check_derivation(const TemplateSet& axioms,
                                    const Derivation& d,
                                    const CheckOptions& opt = {}) {
  CheckResult res;
  res.ok = true;
  auto fail = [&](std::string msg) {
    res.reports.push_back({false, std::move(msg)});
    res.produced.emplace_back(std::nullopt);
    res.ok = false;
  };
  auto pass = [&](Template t, std::string msg = "") {
    res.reports.push_back({true, std::move(msg)});
    res.produced.emplace_back(std::move(t));
  };
  auto premise = [&](int idx) -> const Template* {
    if (idx < 0 || idx >= static_cast<int>(res.produced.size())) return nullptr;
    if (!res.produced[idx].has_value()) return nullptr;
    return &*res.produced[idx];
  };

  for (std::size_t si = 0; si < d.steps.size(); ++si) {
    const Step& s = d.steps[si];
    if (!res.ok) {
      fail("skipped: earlier step failed");
      continue;
    }
    std::string label = "step " + std::to_string(si) + " " + s.kind_str();
    try {
      switch (s.kind) {
        case Step::Kind::Axiom: {
          const Template* t = axioms.find(s.axiom);
          if (!t) {
            fail(label + ": unknown axiom '" + s.axiom + "'");
            break;
          }
          pass(*t);
          break;
        }
        case Step::Kind::Reflexivity: {
          pass(Template("refl", *s.tangle, *s.tangle));
          break;
        }
        case Step::Kind::Transitivity: {
          const Template *a = premise(s.i), *b = premise(s.j);
          if (!a || !b) {
            fail(label + ": bad premise index");
            break;
          }
          if (!(a->rhs == b->lhs)) {
            fail(label + ": middle tangles differ\n  rhs of " +
                 std::to_string(s.i) + ": " + a->rhs.canonical_form() +
                 "\n  lhs of " + std::to_string(s.j) + ": " +
                 b->lhs.canonical_form());
            break;
          }
          pass(Template("trans", a->lhs, b->rhs));
          break;
        }
        case Step::Kind::ComposeOutside: {
          std::map<int, PlanarTangle> lf, rf;
          bool bad = false;
          for (const auto& [slot, pidx] : s.slots) {
            const Template* p = premise(pidx);
            if (!p) {
              fail(label + ": bad premise index " + std::to_string(pidx));
              bad = true;
              break;
            }
            lf.emplace(slot, p->lhs);
            rf.emplace(slot, p->rhs);
          }
          if (bad) break;
          PlanarTangle lhs = PlanarTangle::compose(*s.host, lf);
          PlanarTangle rhs = PlanarTangle::compose(*s.host, rf);
          pass(Template("compose", std::move(lhs), std::move(rhs)));
          break;
        }
        case Step::Kind::RemoveLoop: {
          const Template* p = premise(s.i);
          if (!p) {
            fail(label + ": bad premise index");
            break;
          }
          if (!p->lhs.has_removable_loop()) {
            fail(label + ": premise lhs has no removable loop: " +
                 p->lhs.canonical_form());
            break;
          }
          PlanarTangle reduced = p->lhs.remove_contractible_loop();
          if (opt.audit_remove_loop) {
            std::string why;
            if (!detail::audit_loop_removal(p->lhs, reduced, why)) {
              fail(label + ": audit expansion failed: " + why);
              break;
            }
          }
          pass(Template("deloop", std::move(reduced), p->rhs));
          break;
        }
        case Step::Kind::RewriteEqual: {
          const Template* p = premise(s.i);
          if (!p) {
            fail(label + ": bad premise index");
            break;
          }
          const PlanarTangle& cur =
              (s.side == Step::Side::Lhs) ? p->lhs : p->rhs;
          if (!(cur == *s.replacement)) {
            fail(label + ": tangles are not isotopic\n  current:     " +
                 cur.canonical_form() + "\n  replacement: " +
                 s.replacement->canonical_form() +
                 (s.note.empty() ? "" : "\n  note: " + s.note));
            break;
          }
          if (s.side == Step::Side::Lhs)
            pass(Template("rewrite", *s.replacement, p->rhs), s.note);
          else
            pass(Template("rewrite", p->lhs, *s.replacement), s.note);
          break;
        }
      }
    } catch (const check_error& e) {
      fail(label + ": " + e.what());
    }
  }
  if (d.steps.empty()) res.ok = false;
  return res;
}

// ---------------------------------------------------------------------------
// "Holds for (P, B)": the subspace R_{(P,B)}(T) spanned by all basis
// labellings of T, and row-space containment between the two sides.

inline Matrix rpb_span(const ConcreteInstance& P,
                       const std::vector<TLElement>& B,
                       const PlanarTangle& T) {
  SKEIN_CHECK_MSG(!B.empty(), "empty basis");
  Colour bc = B.front().colour();
  for (const auto& x : B) SKEIN_CHECK(x.colour() == bc);
  std::size_t nb = T.boxes().size();
  for (const auto& col : T.boxes())
    SKEIN_CHECK_MSG(col == bc, "template box colour differs from basis");
  std::size_t dim = P.dim(T.external());
  std::size_t rows = 1;
  for (std::size_t b = 0; b < nb; ++b) rows *= B.size();
  Matrix m(P.field(), rows, dim);
  std::vector<std::size_t> tuple(nb, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::map<int, TLElement> fills;
    for (std::size_t b = 0; b < nb; ++b)
      fills.emplace(static_cast<int>(b) + 1, B[tuple[b]]);
    std::vector<Scalar> coords = P.coords(P.evaluate_elements(T, fills));
    for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = coords[c];
    // advance the tuple with the first box most significant
    for (std::size_t b = nb; b-- > 0;) {
      if (++tuple[b] < B.size()) break;
      tuple[b] = 0;
    }
  }
  return m;
}

namespace detail {

// Distinct rows only; the row space is unchanged and elimination gets cheap.
inline Matrix dedupe_rows(const Matrix& m) {
  std::set<std::string> seen;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string key;
    for (std::size_t c = 0; c < m.cols(); ++c) key += m.at(r, c).str() + "|";
    if (seen.insert(std::move(key)).second) keep.push_back(r);
  }
  Matrix out(m.kind(), keep.size(), m.cols());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out.at(i, c) = m.at(keep[i], c);
  return out;
}

}  // namespace detail

inline bool holds_for(const ConcreteInstance& P,
                      const std::vector<TLElement>& B, const Template& t) {
  Matrix lhs = detail::dedupe_rows(rpb_span(P, B, t.lhs));
  Matrix rhs = detail::dedupe_rows(rpb_span(P, B, t.rhs));
  return rhs.row_space_contains_all(lhs);
}

}  // namespace skein
