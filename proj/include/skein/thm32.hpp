#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skein/templates.hpp"

namespace skein {

// One row of the omnibus absorption theorem: a colour-indexed statement
// together with a machine-checkable derivation script concluding it.  The
// scripts below are emitted constructively; every geometric identity they
// lean on is re-verified during emission, and the checker re-validates the
// finished scripts from scratch.
struct Thm32Entry {
  int item = 0;
  std::string name;
  Colour colour;
  Derivation script;
  Template statement;
};

namespace detail {

inline PlanarTangle with_outer_loop(const PlanarTangle& t) {
  auto pls = t.placements();
  int c = t.circle_count() + 1;
  pls[-c] = PlanarTangle::Placement{Anchor{0, 0}, Anchor{}};
  return PlanarTangle::from_raw(t.external(), t.boxes(), t.strands(), c,
                                std::move(pls));
}

// Open the adjacent pair (i, i+1) of T into a single hole whose boundary
// matches the two-box fill S, so that compose(result, {i: S}) == T.  Strands
// internal to the pair are dropped; strands crossing the pair boundary are
// rerouted through the matching hole point.  If the pair is a closed
// component its placement transfers to the hole.
inline PlanarTangle unfuse(const PlanarTangle& T, int i,
                           const PlanarTangle& S) {
  Colour ch = S.external();
  std::vector<Colour> boxes;
  for (int b = 1; b <= static_cast<int>(T.boxes().size()); ++b) {
    if (b == i) boxes.push_back(ch);
    else if (b != i + 1) boxes.push_back(T.boxes()[b - 1]);
  }
  auto mapnode = [&](int n) { return n > i + 1 ? n - 1 : n; };
  std::map<std::pair<int, int>, int> portal;  // (fill box, point) -> hole point
  for (const Strand& st : S.strands()) {
    for (int side = 0; side < 2; ++side) {
      End a = side ? st.b : st.a;
      End b = side ? st.a : st.b;
      if (a.node == 0) {
        SKEIN_CHECK_MSG(b.node != 0, "fill has a boundary-to-boundary strand");
        portal[{b.node, b.point}] = a.point;
      }
    }
  }
  std::vector<Strand> strands;
  for (const Strand& st : T.strands()) {
    bool in1 = st.a.node == i || st.a.node == i + 1;
    bool in2 = st.b.node == i || st.b.node == i + 1;
    if (in1 && in2) continue;
    if (!in1 && !in2) {
      strands.push_back(Strand{End{mapnode(st.a.node), st.a.point},
                               End{mapnode(st.b.node), st.b.point}});
      continue;
    }
    End in = in1 ? st.a : st.b;
    End out = in1 ? st.b : st.a;
    auto it = portal.find({in.node - i + 1, in.point});
    SKEIN_CHECK_MSG(it != portal.end(), "pair boundary does not match fill");
    strands.push_back(
        Strand{End{i, it->second}, End{mapnode(out.node), out.point}});
  }
  std::map<int, PlanarTangle::Placement> pls;
  for (const auto& [key, pl] : T.placements()) {
    if (key == i) continue;
    int nk = key > i + 1 ? key - 1 : key;
    PlanarTangle::Placement np = pl;
    if (np.parent.node > 0) np.parent.node = mapnode(np.parent.node);
    if (np.outer.node > 0) np.outer.node = mapnode(np.outer.node);
    pls[nk] = np;
  }
  if (auto it = T.placements().find(i); it != T.placements().end()) {
    PlanarTangle::Placement np = it->second;
    if (np.parent.node > 0) np.parent.node = mapnode(np.parent.node);
    np.outer = Anchor{i, 0};
    pls[i] = np;
  }
  PlanarTangle H = PlanarTangle::from_raw(T.external(), boxes, strands,
                                          T.circle_count(), std::move(pls));
  SKEIN_CHECK_MSG(PlanarTangle::compose(H, {{i, S}}) == T,
                  "unfuse does not recompose");
  return H;
}

// Emits, memoizes and verifies the per-item scripts.  All searches run over
// fixed enumerations in a fixed order, so re-emission is reproducible.
class Thm32Emitter {
 public:
  explicit Thm32Emitter(int k)
      : k_(k), ck_(Colour::num(k)), ax_(basic_templates(k)) {}

  const TemplateSet& axioms() const { return ax_; }

  PlanarTangle bigT(Colour c) const { return zoo::tangle_T(c, k_); }

  Colour succ(Colour c) const {
    return c.is_numeric() ? Colour::num(c.n() + 1) : Colour::num(1);
  }

  Template statement(int which, Colour n) const {
    using namespace zoo;
    using PT = PlanarTangle;
    switch (which) {
      case 1:
        return Template("item1", unit(ck_), bigT(ck_));
      case 2:
        return Template("item2", inc(ck_, 1), bigT(Colour::num(k_ + 1)));
      case 3:
        return Template("item3", PT::compose(er(n, 1), {{1, bigT(succ(n))}}),
                        bigT(n));
      case 4:
      case 11:
        return Template(which == 4 ? "item4" : "item11",
                        PT::compose(inc(n, 1), {{1, bigT(n)}}), bigT(succ(n)));
      case 6:
      case 12:
        return Template(which == 6 ? "item6" : "item12",
                        PT::compose(mult(n, n, n), {{1, bigT(n)}, {2, bigT(n)}}),
                        bigT(n));
      case 7:
        return Template("item7", n.is_zero() ? unit(n) : jones_e(n.n()),
                        bigT(n));
      case 9:
        return Template("item9", PT::compose(shift(n.n()), {{1, bigT(n)}}),
                        bigT(Colour::num(n.n() + 2)));
      case 10:
        return Template("item10",
                        PT::compose(left_closure(n.n()), {{1, bigT(n)}}),
                        bigT(n));
      default:
        SKEIN_CHECK_MSG(false, "no statement for item " << which);
    }
    return Template("", unit(n), unit(n));  // unreachable
  }

  Template statement5a(int n) const {
    PlanarTangle lhs = n == k_ ? zoo::inc(ck_, 0) : zoo::inc(ck_, n - k_);
    return Template("item5", std::move(lhs), bigT(Colour::num(n)));
  }
  Template statement5b(int n) const {
    return Template("item5", zoo::unit(Colour::num(n)), bigT(Colour::num(n)));
  }
  Template statement8(const PlanarTangle& q) const {
    return Template("item8", q, bigT(q.external()));
  }

  Derivation item(int which, Colour n) {
    std::string key = std::to_string(which) + ":" + n.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Derivation d;
    switch (which) {
      case 1: d = emit_item1(); break;
      case 2: d = emit_item2(); break;
      case 3: d = emit_item3(n); break;
      case 4: d = emit_item4(n.n()); break;
      case 6: d = emit_item6(n.n()); break;
      case 7: d = emit_item7(n); break;
      case 9: d = emit_item9(n.n()); break;
      case 10: d = emit_item10(n); break;
      case 11: d = emit_item11(n); break;
      case 12: d = emit_item12(n); break;
      default: SKEIN_CHECK_MSG(false, "item " << which << " is not indexed here");
    }
    return memoize(std::move(key), std::move(d));
  }

  Derivation item5a(int n) {
    std::string key = "5a:" + std::to_string(n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SKEIN_CHECK(n >= k_);
    Emit e = start();
    if (n == k_) {
      e.refl(zoo::inc(ck_, 0));
    } else {
      int s = e.splice(item5a(n - 1));
      int c = e.co(zoo::inc(Colour::num(n - 1), 1), {{1, s}});
      int s4 = e.splice(item(4, Colour::num(n - 1)));
      e.trans(c, s4);
    }
    return memoize(std::move(key), finish(e, statement5a(n), "item5a"));
  }

  Derivation item5b(int n) {
    std::string key = "5b:" + std::to_string(n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SKEIN_CHECK(n >= k_);
    Emit e = start();
    if (n == k_) {
      e.splice(item(1, ck_));
    } else {
      int s = e.splice(item5b(n - 1));
      int c = e.co(zoo::inc(Colour::num(n - 1), 1), {{1, s}});
      int s4 = e.splice(item(4, Colour::num(n - 1)));
      e.trans(c, s4);
    }
    return memoize(std::move(key), finish(e, statement5b(n), "item5b"));
  }

  // Any boxless tangle of colour n >= k absorbs into the chain: peel its
  // free loops, express the core as a product of jones generators, collapse
  // the product stack, then re-insert the loops through modulus hosts.
  Derivation item8(const PlanarTangle& q) {
    std::string key = "8:" + q.canonical_form();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SKEIN_CHECK_MSG(q.boxes().empty(), "item 8 wants a boxless tangle");
    Colour cn = q.external();
    SKEIN_CHECK_MSG(cn.is_numeric() && cn.n() >= k_,
                    "item 8 wants colour at least k");
    int n = cn.n();
    std::vector<PlanarTangle> stages{q};
    while (stages.back().has_removable_loop())
      stages.push_back(stages.back().remove_contractible_loop());
    const PlanarTangle& q0 = stages.back();

    Emit e = start();
    int base;
    if (q0 == zoo::unit(cn)) {
      base = e.splice(item5b(n));
    } else {
      const auto& w = words(n);
      auto wit = w.find(q0.canonical_form());
      SKEIN_CHECK_MSG(wit != w.end(),
                      "diagram not generated by the jones elements");
      const std::vector<int>& word = wit->second;
      int r = static_cast<int>(word.size());
      if (r == 1) {
        base = e.splice(factor_e(n, word[0]));
      } else {
        std::map<int, int> slots;
        std::map<int, int> by_letter;
        for (int pos = 0; pos < r; ++pos) {
          auto it = by_letter.find(word[pos]);
          if (it == by_letter.end())
            it = by_letter.emplace(word[pos], e.splice(factor_e(n, word[pos])))
                     .first;
          slots[pos + 1] = it->second;
        }
        int c = e.co(zoo::mult_chain(n, r), std::move(slots));
        int cl = e.splice(collapse(n, r));
        base = e.trans(c, cl);
      }
      SKEIN_CHECK_MSG(e.prod[base].lhs == q0,
                      "generator word does not rebuild the diagram");
    }
    for (int s = static_cast<int>(stages.size()) - 2; s >= 0; --s) {
      auto lh = find_loop_host(stages[s], stages[s + 1]);
      SKEIN_CHECK_MSG(lh.has_value(), "no host re-inserts the removed loop");
      int ax = e.axiom(lh->shade.is_zero_plus() ? "modulus-0+-remove"
                                                : "modulus-0--remove");
      int c = e.co(lh->host, {{lh->slot, ax}});
      base = e.trans(c, base);
    }
    return memoize(std::move(key), finish(e, statement8(q), "item8"));
  }

 private:
  int k_;
  Colour ck_;
  TemplateSet ax_;
  std::map<std::string, Derivation> memo_;
  std::map<int, std::map<std::string, std::vector<int>>> words_;

  // Builds a script step by step, mirroring the checker's semantics so the
  // produced templates are available while emitting.
  struct Emit {
    const TemplateSet* ax;
    Derivation d;
    std::vector<Template> prod;

    int push(Step s) {
      prod.push_back(apply(s));
      d.steps.push_back(std::move(s));
      return static_cast<int>(prod.size()) - 1;
    }
    Template apply(const Step& s) const {
      switch (s.kind) {
        case Step::Kind::Axiom: {
          const Template* t = ax->find(s.axiom);
          SKEIN_CHECK_MSG(t, "unknown axiom '" << s.axiom << "'");
          return *t;
        }
        case Step::Kind::Reflexivity:
          return Template("refl", *s.tangle, *s.tangle);
        case Step::Kind::Transitivity: {
          const Template& a = at(s.i);
          const Template& b = at(s.j);
          SKEIN_CHECK_MSG(a.rhs == b.lhs, "emitted transitivity mismatch");
          return Template("trans", a.lhs, b.rhs);
        }
        case Step::Kind::ComposeOutside: {
          std::map<int, PlanarTangle> lf, rf;
          for (const auto& [slot, pidx] : s.slots) {
            lf.emplace(slot, at(pidx).lhs);
            rf.emplace(slot, at(pidx).rhs);
          }
          return Template("compose", PlanarTangle::compose(*s.host, lf),
                          PlanarTangle::compose(*s.host, rf));
        }
        case Step::Kind::RemoveLoop: {
          const Template& p = at(s.i);
          SKEIN_CHECK_MSG(p.lhs.has_removable_loop(),
                          "emitted deloop without a loop");
          return Template("deloop", p.lhs.remove_contractible_loop(), p.rhs);
        }
        case Step::Kind::RewriteEqual: {
          const Template& p = at(s.i);
          const PlanarTangle& cur =
              s.side == Step::Side::Lhs ? p.lhs : p.rhs;
          SKEIN_CHECK_MSG(cur == *s.replacement, "emitted rewrite mismatch");
          return s.side == Step::Side::Lhs
                     ? Template("rewrite", *s.replacement, p.rhs)
                     : Template("rewrite", p.lhs, *s.replacement);
        }
      }
      SKEIN_CHECK_MSG(false, "bad step kind");
      return prod.front();  // unreachable
    }
    const Template& at(int i) const {
      SKEIN_CHECK_MSG(i >= 0 && i < static_cast<int>(prod.size()),
                      "premise index out of range");
      return prod[i];
    }

    int axiom(const std::string& name) { return push(Step::make_axiom(name)); }
    int refl(PlanarTangle t) {
      return push(Step::make_reflexivity(std::move(t)));
    }
    int trans(int i, int j) { return push(Step::make_transitivity(i, j)); }
    int co(PlanarTangle host, std::map<int, int> slots) {
      return push(Step::make_compose(std::move(host), std::move(slots)));
    }
    int deloop(int i) { return push(Step::make_remove_loop(i)); }
    int splice(const Derivation& sub) {
      int off = static_cast<int>(d.steps.size());
      for (const Step& s0 : sub.steps) {
        Step s = s0;
        if (s.i >= 0) s.i += off;
        if (s.j >= 0) s.j += off;
        for (auto& [slot, p] : s.slots) p += off;
        push(std::move(s));
      }
      return static_cast<int>(prod.size()) - 1;
    }
  };

  Emit start() { return Emit{&ax_, {}, {}}; }

  Derivation finish(Emit& e, const Template& st, const std::string& what) {
    SKEIN_CHECK_MSG(!e.prod.empty(), what << ": empty script");
    SKEIN_CHECK_MSG(e.prod.back() == st,
                    what << ": conclusion does not match the statement");
    return std::move(e.d);
  }

  const Derivation& memoize(std::string key, Derivation d) {
    return memo_.emplace(std::move(key), std::move(d)).first->second;
  }

  // Words in the jones generators for every loop-free diagram of colour n,
  // found by breadth-first products e_{i1} ... e_{ir} from the unit.
  const std::map<std::string, std::vector<int>>& words(int n) {
    if (auto it = words_.find(n); it != words_.end()) return it->second;
    Colour cn = Colour::num(n);
    std::map<std::string, std::vector<int>> w;
    w[zoo::unit(cn).canonical_form()] = {};
    std::vector<PlanarTangle> frontier{zoo::unit(cn)};
    while (!frontier.empty()) {
      std::vector<PlanarTangle> next;
      for (const PlanarTangle& cur : frontier)
        for (int i = 1; i + 1 <= n; ++i) {
          PlanarTangle prod = PlanarTangle::compose(
              zoo::mult(cn, cn, cn), {{1, cur}, {2, zoo::e_gen(n, i)}});
          if (prod.has_removable_loop()) continue;
          std::string key = prod.canonical_form();
          if (w.count(key)) continue;
          std::vector<int> word = w.at(cur.canonical_form());
          word.push_back(i);
          w.emplace(std::move(key), std::move(word));
          next.push_back(std::move(prod));
        }
      frontier = std::move(next);
    }
    SKEIN_CHECK_MSG(w.size() == tl_basis(cn).size(),
                    "generator words miss part of the diagram basis");
    return words_.emplace(n, std::move(w)).first->second;
  }

  // (E_i at colour n) => T^n, padding the generator up from the first
  // colour where it is available.
  Derivation factor_e(int n, int i) {
    std::string key = "e:" + std::to_string(n) + ":" + std::to_string(i);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SKEIN_CHECK(1 <= i && i < n && n >= k_);
    int n0 = std::max(k_, i + 1);
    Emit e = start();
    int base = i + 1 <= k_ ? e.axiom("jones-" + std::to_string(i + 1))
                           : e.splice(item(7, Colour::num(i + 1)));
    for (int m = n0; m < n; ++m) {
      int c = e.co(zoo::inc(Colour::num(m), 1), {{1, base}});
      SKEIN_CHECK_MSG(e.prod[c].lhs == zoo::e_gen(m + 1, i),
                      "padded generator mismatch");
      int s4 = e.splice(item(4, Colour::num(m)));
      base = e.trans(c, s4);
    }
    return memoize(std::move(key),
                   finish(e,
                          Template("factor", zoo::e_gen(n, i),
                                   bigT(Colour::num(n))),
                          key));
  }

  // mult_chain(n, r) with every slot filled by T^n collapses to T^n.
  Derivation collapse(int n, int r) {
    std::string key = "coll:" + std::to_string(n) + ":" + std::to_string(r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SKEIN_CHECK(r >= 1 && n >= k_);
    Colour cn = Colour::num(n);
    Emit e = start();
    if (r == 1) {
      e.refl(bigT(cn));
    } else {
      int prev = e.splice(collapse(n, r - 1));
      int rf = e.refl(bigT(cn));
      int c = e.co(zoo::mult(cn, cn, cn), {{1, prev}, {2, rf}});
      int s6 = e.splice(item(6, cn));
      e.trans(c, s6);
    }
    std::map<int, PlanarTangle> fills;
    for (int s = 1; s <= r; ++s) fills.emplace(s, bigT(cn));
    return memoize(
        std::move(key),
        finish(e,
               Template("collapse",
                        PlanarTangle::compose(zoo::mult_chain(n, r), fills),
                        bigT(cn)),
               key));
  }

  // The cap stack from colour chi down to lo, absorbed one cap at a time.
  Derivation cascade(int chi, Colour lo) {
    int lo_i = lo.is_numeric() ? lo.n() : 0;
    SKEIN_CHECK(chi > lo_i);
    if (chi == lo_i + 1) return item(3, lo);
    std::string key = "casc:" + lo.str() + ":" + std::to_string(chi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Emit e = start();
    int prev = e.splice(cascade(chi, succ(lo)));
    int c = e.co(zoo::er(lo, 1), {{1, prev}});
    int s3 = e.splice(item(3, lo));
    e.trans(c, s3);
    Template st("cascade",
                PlanarTangle::compose(zoo::er(lo, chi - lo_i),
                                      {{1, bigT(Colour::num(chi))}}),
                bigT(lo));
    return memoize(std::move(key), finish(e, st, key));
  }

  // Candidate one-slot fills for a chain position: the multiplication
  // tangle or a conditional expectation stacked against the identity.
  PlanarTangle slot_f(int kind) const {
    using namespace zoo;
    if (kind == 0) return mult(ck_, ck_, ck_);
    PlanarTangle ce = cond_exp(k_);
    PlanarTangle id = inc(ck_, 0);
    return kind == 1
               ? PlanarTangle::compose(mult(ck_, ck_, ck_), {{1, ce}, {2, id}})
               : PlanarTangle::compose(mult(ck_, ck_, ck_), {{1, id}, {2, ce}});
  }

  std::pair<int, int> find_slot_f(const PlanarTangle& host,
                                  const PlanarTangle& target, int maxj) const {
    for (int j = 1; j <= maxj; ++j)
      for (int kind = 0; kind < 3; ++kind) {
        try {
          if (PlanarTangle::compose(host, {{j, slot_f(kind)}}) == target)
            return {j, kind};
        } catch (const check_error&) {
        }
      }
    SKEIN_CHECK_MSG(false, "no chain slot reproduces the capped tangle");
    return {0, 0};  // unreachable
  }

  // Conclude (slot_f(kind) => T^k).
  int premise_for_f(Emit& e, int kind) {
    if (kind == 0) return e.axiom("multiplication");
    int ce = e.axiom("cond-exp");
    int id = e.refl(zoo::inc(ck_, 0));
    int c = kind == 1 ? e.co(zoo::mult(ck_, ck_, ck_), {{1, ce}, {2, id}})
                      : e.co(zoo::mult(ck_, ck_, ck_), {{1, id}, {2, ce}});
    int m = e.axiom("multiplication");
    return e.trans(c, m);
  }

  Derivation emit_item1() {
    Emit e = start();
    int d = e.axiom("depth");
    int c = e.co(zoo::er(ck_, 1), {{1, d}});
    int r = e.deloop(c);
    int m = e.axiom("multiplication");
    e.trans(r, m);
    return finish(e, statement(1, ck_), "item1");
  }

  Derivation emit_item2() {
    Colour c1 = Colour::num(k_ + 1);
    Emit e = start();
    int d = e.axiom("depth");
    int r = e.refl(zoo::inc(ck_, 1));
    int c = e.co(zoo::mult(c1, c1, c1), {{1, d}, {2, r}});
    int m = e.axiom("multiplication");
    int c2 = e.co(bigT(c1), {{2, m}});
    e.trans(c, c2);
    return finish(e, statement(2, c1), "item2");
  }

  Derivation emit_item3(Colour n) {
    Emit e = start();
    if (!n.is_numeric() || n.n() < k_) {
      e.refl(bigT(n));
    } else {
      PlanarTangle capped =
          PlanarTangle::compose(zoo::er(n, 1), {{1, bigT(succ(n))}});
      auto [j, kind] = find_slot_f(bigT(n), capped, n.n() - k_ + 1);
      int p = premise_for_f(e, kind);
      e.co(bigT(n), {{j, p}});
    }
    return finish(e, statement(3, n), "item3");
  }

  Derivation emit_item4(int n) {
    SKEIN_CHECK(n >= k_);
    Colour cn = Colour::num(n);
    Template st = statement(4, cn);
    Emit e = start();
    if (n == k_) {
      e.axiom("inclusion");
      return finish(e, st, "item4");
    }
    PlanarTangle chain = bigT(Colour::num(n + 1));
    if ((n - k_) % 2 == 1) {
      int j0 = 0;
      for (int j = 1; j <= n + 2 - k_ && j0 == 0; ++j)
        if (PlanarTangle::compose(chain, {{j, zoo::unit(ck_)}}) == st.lhs)
          j0 = j;
      SKEIN_CHECK_MSG(j0 > 0, "no unit slot reproduces the padded chain");
      int p = e.axiom("identity");
      e.co(chain, {{j0, p}});
    } else {
      int j0 = 0;
      std::optional<PlanarTangle> H;
      for (int j = 1; j <= n + 1 - k_ && j0 == 0; ++j) {
        try {
          PlanarTangle cand = unfuse(chain, j, bigT(Colour::num(k_ + 1)));
          if (PlanarTangle::compose(cand, {{j, zoo::inc(ck_, 1)}}) == st.lhs) {
            j0 = j;
            H = std::move(cand);
          }
        } catch (const check_error&) {
        }
      }
      SKEIN_CHECK_MSG(j0 > 0, "no opened chain pair absorbs the inclusion");
      int p = e.axiom("inclusion");
      e.co(*H, {{j0, p}});
    }
    return finish(e, st, "item4");
  }

  Derivation emit_item6(int n) {
    SKEIN_CHECK(n >= k_);
    Emit e = start();
    e.splice(cascade(2 * n - k_ + 1, Colour::num(n)));
    return finish(e, statement(6, Colour::num(n)), "item6");
  }

  Derivation emit_item7(Colour n) {
    Emit e = start();
    if (n.is_zero()) {
      int id = e.axiom("identity");
      int c = e.co(zoo::er(n, k_), {{1, id}});
      for (int r = 0; r < k_; ++r) c = e.deloop(c);
    } else if (n.n() < k_) {
      int jn = e.axiom("jones-" + std::to_string(n.n()));
      int c = e.co(zoo::er(n, k_ - n.n()), {{1, jn}});
      for (int r = 0; r < k_ - n.n(); ++r) c = e.deloop(c);
    } else if (n.n() == k_) {
      e.axiom("jones-" + std::to_string(k_));
    } else {
      int nn = n.n();
      int sA = e.splice(item5b(nn - 1));
      Colour cm = Colour::num(nn - 1);
      int sB = e.co(zoo::mult(cm, cm, Colour::num(2 * nn - k_ - 1)),
                    {{1, sA}, {2, sA}});
      int cur = sB;
      for (int j = 2 * nn - k_ - 2; j >= nn; --j) {
        int c = e.co(zoo::er(Colour::num(j), 1), {{1, cur}});
        int s3 = e.splice(item(3, Colour::num(j)));
        cur = e.trans(c, s3);
      }
    }
    return finish(e, statement(7, n), "item7");
  }

  Derivation emit_item9(int n) {
    SKEIN_CHECK(n >= k_);
    Colour cn = Colour::num(n);
    Template st = statement(9, cn);
    Emit e = start();
    if (n == k_) {
      e.axiom("shift");
      return finish(e, st, "item9");
    }
    int s1 = e.splice(item(9, Colour::num(n - 1)));
    int s2 = e.axiom("shift");
    int s3 = e.co(zoo::mult(Colour::num(n + 1), Colour::num(k_ + 2),
                            Colour::num(n + 2)),
                  {{1, s1}, {2, s2}});
    SKEIN_CHECK_MSG(e.prod[s3].lhs == st.lhs, "shift recursion mismatch");
    Colour km = k_ == 1 ? Colour::zero_plus() : Colour::num(k_ - 1);
    int t0 = e.axiom("multiplication");
    int t1 = e.co(zoo::er(km, 1), {{1, t0}});
    int pairat = n + 2 - k_;
    PlanarTangle H = unfuse(e.prod[s3].rhs, pairat, e.prod[t1].lhs);
    int t2 = e.co(H, {{pairat, t1}});
    int t3 = e.trans(s3, t2);
    Colour c2 = Colour::num(n + 2);
    auto [j1, kind] = find_slot_f(bigT(c2), e.prod[t3].rhs, n + 3 - k_);
    int u = premise_for_f(e, kind);
    int u5 = e.co(bigT(c2), {{j1, u}});
    e.trans(t3, u5);
    return finish(e, st, "item9");
  }

  Derivation emit_item10(Colour n) {
    Template st = statement(10, n);
    Emit e = start();
    if (n.n() < k_) {
      int s = e.splice(item(10, ck_));
      e.co(zoo::er(n, k_ - n.n()), {{1, s}});
      return finish(e, st, "item10");
    }
    int nn = n.n();
    Colour c2 = Colour::num(nn + 2);
    PlanarTangle mid = PlanarTangle::compose(zoo::shift(nn), {{1, bigT(n)}});
    const PlanarTangle* Q = nullptr;
    for (const PlanarTangle& cand : tl_basis(c2)) {
      try {
        PlanarTangle sand = PlanarTangle::compose(
            zoo::mult_chain(nn + 2, 3),
            {{1, cand}, {2, mid}, {3, cand.adjoint()}});
        PlanarTangle outer = PlanarTangle::compose(zoo::er(n, 2), {{1, sand}});
        if (outer.removable_loop_total() == 1 &&
            outer.remove_contractible_loop() == st.lhs) {
          Q = &cand;
          break;
        }
      } catch (const check_error&) {
      }
    }
    SKEIN_CHECK_MSG(Q, "no sandwich element closes the shift");
    int sQ = e.splice(item8(*Q));
    int s9 = e.splice(item(9, n));
    int sQ2 = e.splice(item8(Q->adjoint()));
    int c = e.co(zoo::mult_chain(nn + 2, 3), {{1, sQ}, {2, s9}, {3, sQ2}});
    int cl = e.splice(collapse(nn + 2, 3));
    int t = e.trans(c, cl);
    int cx = e.co(zoo::er(n, 2), {{1, t}});
    int casc = e.splice(cascade(nn + 2, n));
    int t2 = e.trans(cx, casc);
    e.deloop(t2);
    return finish(e, st, "item10");
  }

  Derivation emit_item11(Colour n) {
    Template st = statement(11, n);
    Emit e = start();
    if (n.is_numeric() && n.n() >= k_) {
      e.splice(item(4, n));
      return finish(e, st, "item11");
    }
    if (n.is_zero_minus()) {
      e.splice(item(10, Colour::num(1)));
      return finish(e, st, "item11");
    }
    int ni = n.is_numeric() ? n.n() : 0;
    if (ni == k_ - 1) {
      e.axiom("cond-exp");
      return finish(e, st, "item11");
    }
    int t = 2 * k_ - ni + 1;
    Colour ct = Colour::num(t);
    PlanarTangle mid = zoo::inc(ck_, t - k_);
    const PlanarTangle* K = nullptr;
    for (const PlanarTangle& cand : tl_basis(ct)) {
      try {
        PlanarTangle S = PlanarTangle::compose(
            zoo::mult_chain(t, 3), {{1, cand}, {2, mid}, {3, cand.adjoint()}});
        PlanarTangle X = PlanarTangle::compose(
            zoo::er(Colour::num(ni + 1), t - ni - 1), {{1, S}});
        if (strip_loops(X).second == st.lhs) {
          K = &cand;
          break;
        }
      } catch (const check_error&) {
      }
    }
    SKEIN_CHECK_MSG(K, "no sandwich element closes the inclusion");
    int sK = e.splice(item8(*K));
    int sI = e.splice(item5a(t));
    int sK2 = e.splice(item8(K->adjoint()));
    int c = e.co(zoo::mult_chain(t, 3), {{1, sK}, {2, sI}, {3, sK2}});
    int cl = e.splice(collapse(t, 3));
    int tr = e.trans(c, cl);
    int cx = e.co(zoo::er(Colour::num(ni + 1), t - ni - 1), {{1, tr}});
    int casc = e.splice(cascade(t, Colour::num(ni + 1)));
    int t2 = e.trans(cx, casc);
    while (e.prod.back().lhs.has_removable_loop()) t2 = e.deloop(t2);
    return finish(e, st, "item11");
  }

  Derivation emit_item12(Colour n) {
    Template st = statement(12, n);
    Emit e = start();
    if (n.is_numeric() && n.n() >= k_) {
      e.splice(item(6, n));
      return finish(e, st, "item12");
    }
    if (n.is_zero_minus()) {
      Colour c1 = Colour::num(1);
      int d1 = e.splice(item(11, Colour::zero_minus()));
      int d2 = e.co(zoo::mult(c1, c1, c1), {{1, d1}, {2, d1}});
      int d3 = e.splice(item(12, c1));
      int t = e.trans(d2, d3);
      int c = e.co(zoo::er(Colour::zero_minus(), 1), {{1, t}});
      int s3 = e.splice(item(3, Colour::zero_minus()));
      int t2 = e.trans(c, s3);
      e.deloop(t2);
      return finish(e, st, "item12");
    }
    int ni = n.is_numeric() ? n.n() : 0;
    int u = 2 * k_ - ni;
    Colour cu = Colour::num(u);
    PlanarTangle mid = zoo::inc(ck_, u - k_);
    const PlanarTangle* L = nullptr;
    for (const PlanarTangle& cand : tl_basis(cu)) {
      try {
        PlanarTangle S = PlanarTangle::compose(
            zoo::mult_chain(u, 5),
            {{1, cand}, {2, mid}, {3, cand}, {4, mid}, {5, cand}});
        PlanarTangle X =
            PlanarTangle::compose(zoo::er(n, 2 * (k_ - ni)), {{1, S}});
        if (strip_loops(X).second == st.lhs) {
          L = &cand;
          break;
        }
      } catch (const check_error&) {
      }
    }
    SKEIN_CHECK_MSG(L, "no sandwich element closes the multiplication");
    int sL = e.splice(item8(*L));
    int sI = e.splice(item5a(u));
    int c = e.co(zoo::mult_chain(u, 5),
                 {{1, sL}, {2, sI}, {3, sL}, {4, sI}, {5, sL}});
    int cl = e.splice(collapse(u, 5));
    int tr = e.trans(c, cl);
    int cx = e.co(zoo::er(n, 2 * (k_ - ni)), {{1, tr}});
    int casc = e.splice(cascade(u, n));
    int t2 = e.trans(cx, casc);
    while (e.prod.back().lhs.has_removable_loop()) t2 = e.deloop(t2);
    return finish(e, st, "item12");
  }
};

}  // namespace detail

// Script for a single boxless tangle (the universal form of item 8).
inline Derivation item8_script(int k, const PlanarTangle& q) {
  detail::Thm32Emitter em(k);
  return em.item8(q);
}

inline Template item8_statement(int k, const PlanarTangle& q) {
  return detail::Thm32Emitter(k).statement8(q);
}

// Emit every row of the theorem up to colour nmax, in statement order.
inline std::vector<Thm32Entry> thm32_scripts(int k, int nmax) {
  SKEIN_CHECK_MSG(k >= 1, "depth parameter must be positive");
  SKEIN_CHECK_MSG(nmax >= k + 2, "need colours above the shift target");
  detail::Thm32Emitter em(k);
  Colour zp = Colour::zero_plus();
  Colour zm = Colour::zero_minus();
  std::vector<Thm32Entry> out;
  auto add = [&](int item, Colour c, Derivation d, Template st,
                 const std::string& suffix = "") {
    std::string name =
        "item" + std::to_string(item) + "/n=" + c.str() + suffix;
    d.name = name;
    out.push_back(Thm32Entry{item, std::move(name), c, std::move(d),
                             std::move(st)});
  };
  auto N = [](int n) { return Colour::num(n); };

  add(1, Colour::num(k), em.item(1, N(k)), em.statement(1, N(k)));
  add(2, N(k + 1), em.item(2, N(k + 1)), em.statement(2, N(k + 1)));
  for (int n = 1; n < nmax; ++n)
    add(3, N(n), em.item(3, N(n)), em.statement(3, N(n)));
  for (Colour z : {zp, zm}) add(3, z, em.item(3, z), em.statement(3, z));
  for (int n = k; n < nmax; ++n)
    add(4, N(n), em.item(4, N(n)), em.statement(4, N(n)));
  for (int n = k; n <= nmax; ++n)
    add(5, N(n), em.item5a(n), em.statement5a(n), "/inclusion");
  for (int n = k; n <= nmax; ++n)
    add(5, N(n), em.item5b(n), em.statement5b(n), "/unit");
  for (int n = k; n <= nmax; ++n)
    add(6, N(n), em.item(6, N(n)), em.statement(6, N(n)));
  for (int n = 2; n <= nmax; ++n)
    add(7, N(n), em.item(7, N(n)), em.statement(7, N(n)));
  for (Colour z : {zp, zm}) add(7, z, em.item(7, z), em.statement(7, z));
  for (int n = k; n <= nmax; ++n) {
    Colour cn = N(n);
    std::vector<std::pair<std::string, PlanarTangle>> reps;
    reps.emplace_back("unit", zoo::unit(cn));
    for (int i = 1; i < n; ++i)
      reps.emplace_back("e" + std::to_string(i), zoo::e_gen(n, i));
    for (const PlanarTangle& d : tl_basis(cn)) {
      bool gen = d == zoo::unit(cn);
      for (int i = 1; i < n && !gen; ++i) gen = d == zoo::e_gen(n, i);
      if (!gen) {
        reps.emplace_back("word", d);
        break;
      }
    }
    reps.emplace_back("loop", detail::with_outer_loop(
                                  n >= 2 ? zoo::jones_e(n) : zoo::unit(cn)));
    for (auto& [label, rep] : reps)
      add(8, cn, em.item8(rep), em.statement8(rep), "/" + label);
  }
  for (int n = k; n + 2 <= nmax; ++n)
    add(9, N(n), em.item(9, N(n)), em.statement(9, N(n)));
  for (int n = 1; n <= nmax; ++n)
    add(10, N(n), em.item(10, N(n)), em.statement(10, N(n)));
  for (int n = 1; n < nmax; ++n)
    add(11, N(n), em.item(11, N(n)), em.statement(11, N(n)));
  for (Colour z : {zp, zm}) add(11, z, em.item(11, z), em.statement(11, z));
  for (int n = 1; n <= nmax; ++n)
    add(12, N(n), em.item(12, N(n)), em.statement(12, N(n)));
  for (Colour z : {zp, zm}) add(12, z, em.item(12, z), em.statement(12, z));
  return out;
}

}  // namespace skein
