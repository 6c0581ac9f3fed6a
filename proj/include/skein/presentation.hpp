// Finite presentations of the shipped instances: relation generation from the
// basic template set, spanning/depth/closure certificates, bimodule tensor
// checks with partition-of-unity and kernel decompositions, and label
// morphisms with change-of-generators and telescoping support.
#pragma once

#include <skein/instance.hpp>
#include <skein/templates.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace skein {

namespace detail {

// Apply a tangle to TL elements without reducing into an instance; the
// result can live at colours the instance has no data for.
inline TLElement tl_apply(FieldKind kind, const PlanarTangle& t,
                          const std::map<int, TLElement>& fills) {
  SKEIN_CHECK_MSG(fills.size() == t.boxes().size(),
                  "tl_apply needs every box filled");
  std::vector<std::pair<std::map<int, PlanarTangle>, Scalar>> combos;
  combos.push_back({{}, Scalar::one(kind)});
  for (const auto& [slot, elem] : fills) {
    std::vector<std::pair<std::map<int, PlanarTangle>, Scalar>> next;
    for (const auto& [m, c] : combos)
      for (const auto& [key, tv] : elem.terms()) {
        auto m2 = m;
        m2.emplace(slot, tv.first);
        next.emplace_back(std::move(m2), c * tv.second);
      }
    combos = std::move(next);
  }
  Scalar delta = Scalar::delta(kind);
  TLElement acc(kind, t.external());
  for (auto& [m, c] : combos) {
    auto [loops, bare] = strip_loops(PlanarTangle::compose(t, m));
    acc.add_term(bare, c * delta.pow(loops));
  }
  return acc;
}

inline Colour down_colour(int k) {
  return k == 1 ? Colour::zero_plus() : Colour::num(k - 1);
}

// E from colour n down to colour k-1 and back up to colour m.
inline PlanarTangle expectation_tangle(int k, int n, int m) {
  SKEIN_CHECK(n >= k && m >= k);
  Colour km = down_colour(k);
  return PlanarTangle::compose(zoo::inc(km, m - k + 1),
                               {{1, zoo::er(km, n - k + 1)}});
}

inline std::size_t catalan(int n) {
  std::vector<std::size_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
  return c[n];
}

// Closed walks of length 2n at an end vertex of the path graph A_{m-1}.
inline std::size_t walk_dim(int m, int n) {
  int v = m - 1;
  SKEIN_CHECK(v >= 1);
  std::vector<unsigned long long> cur(v, 0);
  cur[0] = 1;
  for (int s = 0; s < 2 * n; ++s) {
    std::vector<unsigned long long> nxt(v, 0);
    for (int i = 0; i < v; ++i) {
      if (cur[i] == 0) continue;
      if (i > 0) nxt[i - 1] += cur[i];
      if (i + 1 < v) nxt[i + 1] += cur[i];
    }
    cur = std::move(nxt);
  }
  return cur[0];
}

inline std::size_t dim_oracle(const ConcreteInstance& inst, int p) {
  if (p <= 6) return inst.dim(Colour::num(p));
  SKEIN_CHECK_MSG(inst.model() == Model::QuotientTL,
                  "no dimension oracle beyond colour 6 for generic TL");
  return walk_dim(inst.quotient_m(), p);
}

// Partner array of a bare diagram over boundary points 1..2n.
inline std::vector<int> pairing_of(const PlanarTangle& d) {
  int n = d.external().n();
  std::vector<int> partner(2 * n + 1, 0);
  for (const Strand& s : d.strands()) {
    SKEIN_CHECK(s.a.node == 0 && s.b.node == 0);
    partner[s.a.point] = s.b.point;
    partner[s.b.point] = s.a.point;
  }
  return partner;
}

// Loop count of the closed diagram tr(a* b): each alternating cycle of the
// two pairings closes into one loop; the reflection in * and the rainbow
// closure cancel pointwise.
inline int glue_loops(const std::vector<int>& a, const std::vector<int>& b) {
  int n2 = static_cast<int>(a.size()) - 1;
  std::vector<char> seen(a.size(), 0);
  int loops = 0;
  for (int s = 1; s <= n2; ++s) {
    if (seen[s]) continue;
    ++loops;
    int p = s;
    while (!seen[p]) {
      seen[p] = 1;
      seen[a[p]] = 1;
      p = b[a[p]];
    }
  }
  return loops;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// configuration

struct PresentationConfig {
  ConcreteInstance instance;
  int k = 1;
  std::vector<PlanarTangle> basis;
  TemplateSet templates;

  static PresentationConfig make(ConcreteInstance inst, int k) {
    SKEIN_CHECK(k >= 1);
    Colour ck = Colour::num(k);
    std::vector<PlanarTangle> basis;
    for (std::size_t i = 0; i < inst.dim(ck); ++i)
      basis.push_back(inst.basis_diagram(ck, i));
    TemplateSet ts = basic_templates(k);
    return PresentationConfig{std::move(inst), k, std::move(basis),
                              std::move(ts)};
  }

  std::vector<TLElement> basis_elements() const {
    std::vector<TLElement> out;
    for (const auto& d : basis)
      out.push_back(TLElement::from_diagram(instance.field(), d));
    return out;
  }

  std::string fingerprint() const {
    std::ostringstream os;
    os << instance.name() << ";k=" << k << ";B=";
    for (std::size_t i = 0; i < basis.size(); ++i)
      os << (i ? "," : "") << basis[i].canonical_form();
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// depth

struct DepthReport {
  bool ok = false;
  std::size_t rank = 0;
  std::size_t dim = 0;
};

inline DepthReport depth_check(const ConcreteInstance& inst, int k) {
  SKEIN_CHECK(k >= 1);
  Colour ck = Colour::num(k), ck1 = Colour::num(k + 1);
  FieldKind F = inst.field();
  auto up = zoo::inc(ck, 1);
  TLElement E = TLElement::from_diagram(F, zoo::jones_e(k + 1));
  std::size_t d = inst.dim(ck), dim = inst.dim(ck1);
  Matrix rows(F, d * d, dim);
  for (std::size_t i = 0; i < d; ++i) {
    TLElement xi =
        inst.evaluate_elements(up, {{1, inst.basis_element(ck, i)}});
    TLElement xe = inst.reduce(multiply(xi, E));
    for (std::size_t j = 0; j < d; ++j) {
      TLElement yj =
          inst.evaluate_elements(up, {{1, inst.basis_element(ck, j)}});
      auto co = inst.coords(multiply(xe, yj));
      for (std::size_t c = 0; c < dim; ++c) rows.at(i * d + j, c) = co[c];
    }
  }
  std::size_t rank = rows.rank();
  return DepthReport{rank == dim, rank, dim};
}

// ---------------------------------------------------------------------------
// relations

struct Relation {
  std::string template_id;
  LabelledTangle lhs;
  std::vector<std::pair<Scalar, LabelledTangle>> rhs;
};

struct RelationSet {
  std::string fingerprint;
  std::vector<Relation> relations;
};

inline RelationSet generate_relations(const PresentationConfig& cfg) {
  const ConcreteInstance& inst = cfg.instance;
  DepthReport dr = depth_check(inst, cfg.k);
  SKEIN_CHECK_MSG(dr.ok, "config invalid: depth hypothesis fails at k="
                             << cfg.k << " (rank " << dr.rank << " of "
                             << dr.dim << ")");
  Colour ck = Colour::num(cfg.k);
  std::vector<TLElement> B = cfg.basis_elements();
  std::size_t nb = B.size();
  RelationSet out;
  out.fingerprint = cfg.fingerprint();
  for (const Template& t : cfg.templates.templates) {
    std::size_t bl = t.lhs.boxes().size(), cr = t.rhs.boxes().size();
    Matrix lhs_rows = rpb_span(inst, B, t.lhs);
    Matrix rhs_rows = rpb_span(inst, B, t.rhs);
    auto sol = rhs_rows.transpose().solve_matrix(lhs_rows.transpose());
    SKEIN_CHECK_MSG(sol, "holds_for violation while generating relations for "
                             << t.name);
    std::size_t lt = lhs_rows.rows(), rt = rhs_rows.rows();
    for (std::size_t r = 0; r < lt; ++r) {
      std::map<int, Label> ll;
      std::size_t rem = r;
      for (std::size_t b = bl; b-- > 0;) {
        ll[static_cast<int>(b) + 1] =
            Label{ck, static_cast<int>(rem % nb)};
        rem /= nb;
      }
      Relation rel{t.name, LabelledTangle{t.lhs, std::move(ll)}, {}};
      for (std::size_t y = 0; y < rt; ++y) {
        const Scalar& lam = sol->at(y, r);
        if (lam.is_zero()) continue;
        std::map<int, Label> rl;
        std::size_t yr = y;
        for (std::size_t b = cr; b-- > 0;) {
          rl[static_cast<int>(b) + 1] =
              Label{ck, static_cast<int>(yr % nb)};
          yr /= nb;
        }
        rel.rhs.emplace_back(lam, LabelledTangle{t.rhs, std::move(rl)});
      }
      out.relations.push_back(std::move(rel));
    }
  }
  return out;
}

struct VanishReport {
  bool ok = true;
  std::vector<std::size_t> failing;
};

inline VanishReport verify_relations_vanish(const PresentationConfig& cfg,
                                            const RelationSet& rs) {
  const ConcreteInstance& inst = cfg.instance;
  VanishReport rep;
  for (std::size_t i = 0; i < rs.relations.size(); ++i) {
    const Relation& rel = rs.relations[i];
    TLElement acc = inst.evaluate(rel.lhs);
    for (const auto& [lam, term] : rel.rhs)
      acc = acc - lam * inst.evaluate(term);
    if (!inst.reduce(acc).is_zero()) {
      rep.ok = false;
      rep.failing.push_back(i);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// spanning and closure

struct SpanRow {
  Colour colour;
  std::size_t rank = 0;
  std::size_t dim = 0;
  bool ok = false;
};

struct SpanReport {
  bool ok = true;
  std::vector<SpanRow> rows;
};

inline SpanReport spanning_report(const PresentationConfig& cfg, int n_max) {
  SKEIN_CHECK(n_max >= cfg.k);
  std::vector<TLElement> B = cfg.basis_elements();
  std::vector<Colour> cols = {Colour::zero_plus(), Colour::zero_minus()};
  for (int n = 1; n <= n_max; ++n) cols.push_back(Colour::num(n));
  SpanReport rep;
  for (Colour c : cols) {
    Matrix m = detail::dedupe_rows(
        rpb_span(cfg.instance, B, zoo::tangle_T(c, cfg.k)));
    SpanRow row{c, m.rank(), cfg.instance.dim(c), false};
    row.ok = row.rank == row.dim;
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

struct ClosureItem {
  std::string name;
  bool ok = false;
};

struct ClosureReport {
  bool ok = true;
  std::vector<ClosureItem> items;
};

inline ClosureReport generating_closure_check(const PresentationConfig& cfg,
                                              int n_max) {
  SKEIN_CHECK(n_max >= cfg.k + 2);
  const ConcreteInstance& inst = cfg.instance;
  std::vector<TLElement> B = cfg.basis_elements();
  int k = cfg.k;
  auto T = [&](Colour c) { return zoo::tangle_T(c, k); };
  ClosureReport rep;
  auto add = [&](const std::string& name, const Template& t) {
    bool ok = holds_for(inst, B, t);
    rep.ok = rep.ok && ok;
    rep.items.push_back({name, ok});
  };
  std::vector<Colour> zeros = {Colour::zero_plus(), Colour::zero_minus()};
  std::vector<Colour> all = zeros;
  for (int n = 1; n <= n_max; ++n) all.push_back(Colour::num(n));
  for (Colour z : zeros)
    add("one(" + z.str() + ")", Template("one", zoo::unit(z), T(z)));
  for (int n = 2; n <= n_max; ++n)
    add("jones(" + std::to_string(n) + ")",
        Template("jones", zoo::jones_e(n), T(Colour::num(n))));
  for (Colour c : all) {
    if (!c.is_zero() && c.n() >= n_max) continue;
    Colour up = c.is_zero() ? Colour::num(1) : Colour::num(c.n() + 1);
    add("er(" + c.str() + ")",
        Template("er", PlanarTangle::compose(zoo::er(c, 1), {{1, T(up)}}),
                 T(c)));
  }
  for (Colour c : all)
    add("mult(" + c.str() + ")",
        Template("mult",
                 PlanarTangle::compose(zoo::mult(c, c, c),
                                       {{1, T(c)}, {2, T(c)}}),
                 T(c)));
  for (Colour c : all) {
    if (!c.is_zero() && c.n() >= n_max) continue;
    Colour up = c.is_zero() ? Colour::num(1) : Colour::num(c.n() + 1);
    add("inc(" + c.str() + ")",
        Template("inc", PlanarTangle::compose(zoo::inc(c, 1), {{1, T(c)}}),
                 T(up)));
  }
  for (int n = 1; n <= n_max; ++n)
    add("el(" + std::to_string(n) + ")",
        Template("el",
                 PlanarTangle::compose(zoo::left_closure(n),
                                       {{1, T(Colour::num(n))}}),
                 T(Colour::num(n))));
  return rep;
}

// ---------------------------------------------------------------------------
// partition of unity

struct PartitionPair {
  TLElement x, y;
};

struct Partition {
  int n = 0, p = 0;
  bool found = false;
  bool exact_tier = true;
  std::vector<PartitionPair> pairs;
  bool reproducing_ok = false;
  bool ok() const { return found && reproducing_ok; }
};

inline bool partition_reproduces(const PresentationConfig& cfg, int n,
                                 const std::vector<PartitionPair>& pairs) {
  const ConcreteInstance& inst = cfg.instance;
  Colour cn = Colour::num(n);
  PlanarTangle CE = detail::expectation_tangle(cfg.k, n, n);
  for (std::size_t i = 0; i < inst.dim(cn); ++i) {
    TLElement v = inst.basis_element(cn, i);
    TLElement acc(inst.field(), cn);
    for (const auto& pr : pairs)
      acc = acc + multiply(inst.evaluate_elements(
                               CE, {{1, multiply(v, pr.x)}}),
                           pr.y);
    if (!inst.equivalent(acc, v)) return false;
  }
  return true;
}

namespace detail {

inline Partition partition_exact(const PresentationConfig& cfg, int n, int p) {
  const ConcreteInstance& inst = cfg.instance;
  FieldKind F = inst.field();
  Colour cn = Colour::num(n), cp = Colour::num(p);
  auto M = zoo::mult(cn, cn, cp);
  std::size_t dn = inst.dim(cn), dp = inst.dim(cp);
  Matrix A(F, dp, dn * dn);
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dn; ++j) {
      auto img = inst.coords(inst.evaluate_elements(
          M,
          {{1, inst.basis_element(cn, i)}, {2, inst.basis_element(cn, j)}}));
      for (std::size_t r = 0; r < dp; ++r) A.at(r, i * dn + j) = img[r];
    }
  auto c = A.solve(inst.coords(TLElement::unit_element(F, cp)));
  Partition out;
  out.n = n;
  out.p = p;
  if (!c) return out;
  out.found = true;
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dn; ++j) {
      const Scalar& s = (*c)[i * dn + j];
      if (s.is_zero()) continue;
      out.pairs.push_back({s * inst.basis_element(cn, i),
                           inst.basis_element(cn, j)});
    }
  return out;
}

// Colour p has no instance data; solve through the exact trace form on the
// deduped product diagrams instead.
inline Partition partition_gram(const PresentationConfig& cfg, int n, int p) {
  const ConcreteInstance& inst = cfg.instance;
  FieldKind F = inst.field();
  Colour cn = Colour::num(n), cp = Colour::num(p);
  auto M = zoo::mult(cn, cn, cp);
  std::size_t dn = inst.dim(cn);
  struct Rep {
    std::size_t i, j;
    int exp;
    PlanarTangle d;
  };
  std::vector<Rep> reps;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dn; ++j) {
      auto [loops, bare] = strip_loops(PlanarTangle::compose(
          M, {{1, inst.basis_diagram(cn, i)}, {2, inst.basis_diagram(cn, j)}}));
      if (seen.emplace(bare.canonical_form(), reps.size()).second)
        reps.push_back({i, j, loops, bare});
    }
  std::size_t D = reps.size();
  std::vector<std::vector<int>> pr(D);
  for (std::size_t r = 0; r < D; ++r) pr[r] = pairing_of(reps[r].d);
  std::vector<int> unit_pr = pairing_of(zoo::unit(cp));
  Scalar delta = Scalar::delta(F);
  // scaled system G' c = b' with G'_{rs} = delta^{e_r+e_s+loops(r,s)} and
  // b'_r = delta^{e_r+loops(r,unit)}; the delta^{-p} trace normalisation
  // cancels on both sides.
  Matrix G(F, D, D);
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t s = r; s < D; ++s) {
      Scalar v = delta.pow(reps[r].exp + reps[s].exp +
                           glue_loops(pr[r], pr[s]));
      G.at(r, s) = v;
      G.at(s, r) = v;
    }
  std::vector<Scalar> b;
  for (std::size_t r = 0; r < D; ++r)
    b.push_back(delta.pow(reps[r].exp + glue_loops(pr[r], unit_pr)));
  auto c = G.solve(b);
  Partition out;
  out.n = n;
  out.p = p;
  out.exact_tier = false;
  if (!c) return out;
  // residual <sum c v - 1, sum c v - 1> = (c^T G' c - 2 c^T b' + delta^p)/delta^p
  Scalar resid = delta.pow(p);
  for (std::size_t r = 0; r < D; ++r) {
    if ((*c)[r].is_zero()) continue;
    Scalar row = Scalar::zero(F);
    for (std::size_t s = 0; s < D; ++s)
      row = row + G.at(r, s) * (*c)[s];
    resid = resid + (*c)[r] * (row - b[r] - b[r]);
  }
  if (!resid.is_zero()) return out;
  out.found = true;
  for (std::size_t r = 0; r < D; ++r) {
    if ((*c)[r].is_zero()) continue;
    out.pairs.push_back(
        {(*c)[r] * inst.basis_element(cn, reps[r].i),
         inst.basis_element(cn, reps[r].j)});
  }
  return out;
}

inline const Partition& partition_memo(const PresentationConfig& cfg, int n) {
  static std::mutex mu;
  static std::map<std::string, Partition> memo;
  std::lock_guard<std::mutex> lock(mu);
  std::string key = cfg.fingerprint() + ";pu:" + std::to_string(n);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  SKEIN_CHECK(n >= cfg.k);
  int p = 2 * n - cfg.k + 1;
  SKEIN_CHECK_MSG(p <= 7, "partition of unity out of colour range (target "
                              << p << ")");
  Partition out = p <= 6 ? partition_exact(cfg, n, p)
                         : partition_gram(cfg, n, p);
  if (out.found) out.reproducing_ok = partition_reproduces(cfg, n, out.pairs);
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace detail

inline Partition partition_of_unity(const PresentationConfig& cfg, int n) {
  return detail::partition_memo(cfg, n);
}

// ---------------------------------------------------------------------------
// bimodule tensor checks

struct TensorReport {
  int m = 0, n = 0, p = 0;
  std::size_t rows = 0, distinct = 0;
  std::size_t rank = 0, dim = 0;
  bool exact_tier = true;
  bool rank_ok = false;
  bool relators_in_kernel = false;
  std::optional<bool> kernel_in_relators;
  std::size_t kernel_dim = 0, relator_count = 0;
  bool ok = false;
};

namespace detail {

// Both sliding identities are isotopies of the bare frames, so one canonical
// comparison certifies them for every filling.
inline bool relator_slide_identity(int k, int mc, int nc) {
  Colour cm = Colour::num(mc), cn = Colour::num(nc),
         cp = Colour::num(mc + nc - k + 1);
  Colour km = down_colour(k);
  auto fus = zoo::mult(cm, cn, cp);
  auto xa = PlanarTangle::compose(zoo::mult(cm, cm, cm),
                                  {{2, zoo::inc(km, mc - k + 1)}});
  auto ay = PlanarTangle::compose(zoo::mult(cn, cn, cn),
                                  {{1, zoo::inc(km, nc - k + 1)}});
  return PlanarTangle::compose(fus, {{1, xa}}) ==
         PlanarTangle::compose(fus, {{2, ay}});
}

inline bool wstar_identity(int k, int mc, int nc) {
  Colour cm = Colour::num(mc), cn = Colour::num(nc),
         cp = Colour::num(mc + nc - k + 1);
  auto included = PlanarTangle::compose(
      expectation_tangle(k, nc, mc), {{1, zoo::mult(cn, cn, cn)}});
  auto lhs = PlanarTangle::compose(zoo::mult(cm, cm, cm), {{2, included}});
  auto rhs = PlanarTangle::compose(zoo::mult(cp, cn, cm),
                                   {{1, zoo::mult(cm, cn, cp)}});
  return lhs == rhs;
}

}  // namespace detail

inline TensorReport tensor_dim_check(const PresentationConfig& cfg, int mc,
                                     int nc) {
  const ConcreteInstance& inst = cfg.instance;
  FieldKind F = inst.field();
  int k = cfg.k;
  SKEIN_CHECK(mc >= k && nc >= k);
  SKEIN_CHECK(mc <= 6 && nc <= 6);
  TensorReport rep;
  rep.m = mc;
  rep.n = nc;
  rep.p = mc + nc - k + 1;
  Colour cm = Colour::num(mc), cn = Colour::num(nc), cp = Colour::num(rep.p);
  auto fus = zoo::mult(cm, cn, cp);
  std::size_t dm = inst.dim(cm), dn = inst.dim(cn);
  rep.rows = dm * dn;
  rep.dim = detail::dim_oracle(inst, rep.p);

  std::vector<PlanarTangle> distinct;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < dn; ++j) {
      auto [loops, bare] = strip_loops(PlanarTangle::compose(
          fus, {{1, inst.basis_diagram(cm, i)}, {2, inst.basis_diagram(cn, j)}}));
      if (seen.emplace(bare.canonical_form(), distinct.size()).second)
        distinct.push_back(bare);
    }
  rep.distinct = distinct.size();

  if (rep.p <= 6) {
    Matrix rows(F, rep.distinct, rep.dim);
    for (std::size_t r = 0; r < rep.distinct; ++r) {
      auto co = inst.coords(TLElement::from_diagram(F, distinct[r]));
      for (std::size_t c = 0; c < rep.dim; ++c) rows.at(r, c) = co[c];
    }
    rep.rank = rows.rank();
  } else {
    SKEIN_CHECK_MSG(inst.model() == Model::QuotientTL,
                    "tensor targets beyond colour 6 need a finite-depth "
                    "quotient");
    rep.exact_tier = false;
    std::vector<std::vector<int>> pr(rep.distinct);
    for (std::size_t r = 0; r < rep.distinct; ++r)
      pr[r] = detail::pairing_of(distinct[r]);
    std::vector<std::uint8_t> loops(rep.distinct * rep.distinct);
    for (std::size_t r = 0; r < rep.distinct; ++r)
      for (std::size_t s = r; s < rep.distinct; ++s) {
        auto l = static_cast<std::uint8_t>(detail::glue_loops(pr[r], pr[s]));
        loops[r * rep.distinct + s] = l;
        loops[s * rep.distinct + r] = l;
      }
    // spot-check the loop count against the slow trace
    Scalar delta = Scalar::delta(F);
    for (std::size_t r = 0; r < std::min<std::size_t>(rep.distinct, 4); ++r)
      for (std::size_t s = r; s < std::min<std::size_t>(rep.distinct, 4);
           ++s) {
        Scalar lhs = delta.pow(loops[r * rep.distinct + s]);
        Scalar rhs =
            delta.pow(rep.p) *
            tau(multiply(TLElement::from_diagram(F, distinct[r]).adjoint(),
                         TLElement::from_diagram(F, distinct[s])));
        SKEIN_CHECK_MSG(lhs == rhs, "trace-form pairing mismatch");
      }
    // rank_p(Gram) <= rank(Gram) = dim of the span inside the quotient,
    // which is at most the walk-count dimension; equality certifies both.
    for (std::uint64_t prime : certificate_primes()) {
      auto ctx = FpContext::make(F, prime);
      if (!ctx) continue;
      FpMatrix g(prime, rep.distinct, rep.distinct);
      for (std::size_t r = 0; r < rep.distinct; ++r)
        for (std::size_t s = 0; s < rep.distinct; ++s)
          g.at(r, s) = fp::powmod(ctx->delta_image,
                                  loops[r * rep.distinct + s], prime);
      rep.rank = std::max(rep.rank, g.rank());
      if (rep.rank == rep.dim) break;
    }
  }
  rep.rank_ok = rep.rank == rep.dim;
  rep.kernel_dim = rep.rank_ok ? rep.rows - rep.dim
                               : (rep.exact_tier ? rep.rows - rep.rank : 0);

  Colour km = detail::down_colour(k);
  rep.relator_count = dm * dn * inst.dim(km);
  rep.relators_in_kernel = detail::relator_slide_identity(k, mc, nc);

  int pn = 2 * nc - k + 1;
  if (inst.model() == Model::GenericTL || pn <= 7) {
    Partition pu = partition_of_unity(cfg, nc);
    rep.kernel_in_relators =
        pu.ok() && detail::wstar_identity(k, mc, nc);
  }
  rep.ok = rep.rank_ok && rep.relators_in_kernel &&
           rep.kernel_in_relators.value_or(true);
  return rep;
}

struct TripleReport {
  int target = 0;
  std::size_t rows = 0, rank = 0, dim = 0;
  bool ok = false;
};

// Iterated two-step fusion of three k-boxes onto colour k+2.
inline TripleReport tensor_triple_check(const PresentationConfig& cfg) {
  int k = cfg.k;
  Colour ck = Colour::num(k), c1 = Colour::num(k + 1), c2 = Colour::num(k + 2);
  auto frame = PlanarTangle::compose(zoo::mult(c1, ck, c2),
                                     {{1, zoo::mult(ck, ck, c1)}});
  Matrix rows = detail::dedupe_rows(
      rpb_span(cfg.instance, cfg.basis_elements(), frame));
  TripleReport rep;
  rep.target = k + 2;
  rep.rows = cfg.basis.size() * cfg.basis.size() * cfg.basis.size();
  rep.rank = rows.rank();
  rep.dim = cfg.instance.dim(c2);
  rep.ok = rep.rank == rep.dim;
  return rep;
}

// ---------------------------------------------------------------------------
// kernel decomposition

struct KernelReport {
  int m = 0, n = 0, p = 0;
  std::size_t kernel_dim = 0, checked = 0;
  bool identities_ok = false;
  bool second_terms_zero = true;
  bool in_relator_span = true;
  bool ok = false;
};

inline KernelReport kernel_decomposition_check(const PresentationConfig& cfg,
                                               int mc, int nc,
                                               std::size_t samples) {
  const ConcreteInstance& inst = cfg.instance;
  FieldKind F = inst.field();
  int k = cfg.k;
  SKEIN_CHECK(mc >= k && nc >= k);
  KernelReport rep;
  rep.m = mc;
  rep.n = nc;
  rep.p = mc + nc - k + 1;
  SKEIN_CHECK_MSG(rep.p <= 6, "kernel vectors need instance data at colour "
                                  << rep.p);
  Colour cm = Colour::num(mc), cn = Colour::num(nc), cp = Colour::num(rep.p);
  Colour km = detail::down_colour(k);
  auto fus = zoo::mult(cm, cn, cp);
  std::size_t dm = inst.dim(cm), dn = inst.dim(cn), dp = inst.dim(cp);

  Partition pu = partition_of_unity(cfg, nc);
  rep.identities_ok = pu.ok() && detail::wstar_identity(k, mc, nc);

  Matrix A(F, dp, dm * dn);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < dn; ++j) {
      auto co = inst.coords(inst.evaluate_elements(
          fus,
          {{1, inst.basis_element(cm, i)}, {2, inst.basis_element(cn, j)}}));
      for (std::size_t r = 0; r < dp; ++r) A.at(r, i * dn + j) = co[r];
    }
  Matrix kern = A.nullspace();
  rep.kernel_dim = kern.rows();

  // middle relators as tuple-coordinate vectors
  std::size_t da = inst.dim(km);
  auto up_m = zoo::inc(km, mc - k + 1);
  auto up_n = zoo::inc(km, nc - k + 1);
  std::vector<std::vector<Scalar>> relators;
  for (std::size_t xi = 0; xi < dm; ++xi)
    for (std::size_t ai = 0; ai < da; ++ai)
      for (std::size_t yi = 0; yi < dn; ++yi) {
        TLElement a = inst.basis_element(km, ai);
        TLElement xa = inst.reduce(
            multiply(inst.basis_element(cm, xi),
                     inst.evaluate_elements(up_m, {{1, a}})));
        TLElement ay = inst.reduce(
            multiply(inst.evaluate_elements(up_n, {{1, a}}),
                     inst.basis_element(cn, yi)));
        std::vector<Scalar> v(dm * dn, Scalar::zero(F));
        auto cxa = inst.coords(xa);
        for (std::size_t t = 0; t < dm; ++t)
          v[t * dn + yi] = v[t * dn + yi] + cxa[t];
        auto cay = inst.coords(ay);
        for (std::size_t t = 0; t < dn; ++t)
          v[xi * dn + t] = v[xi * dn + t] - cay[t];
        bool nz = false;
        for (const Scalar& s : v) nz = nz || !s.is_zero();
        if (nz) relators.push_back(std::move(v));
      }
  Matrix R(F, relators.size(), dm * dn);
  for (std::size_t r = 0; r < relators.size(); ++r)
    for (std::size_t c = 0; c < dm * dn; ++c) R.at(r, c) = relators[r][c];

  PlanarTangle CE = detail::expectation_tangle(k, nc, mc);
  rep.checked = std::min<std::size_t>(samples, kern.rows());
  Matrix sampled(F, rep.checked, dm * dn);
  for (std::size_t s = 0; s < rep.checked; ++s) {
    // second term: sum over pairs of (sum_t xi_t u_t incl E(v_t x_i)) (x) y_i
    for (const auto& pr : pu.pairs) {
      TLElement w(F, cm);
      for (std::size_t t = 0; t < dm * dn; ++t) {
        if (kern.at(s, t).is_zero()) continue;
        TLElement u = inst.basis_element(cm, t / dn);
        TLElement v = inst.basis_element(cn, t % dn);
        w = w + kern.at(s, t) *
                    multiply(u, inst.evaluate_elements(
                                    CE, {{1, multiply(v, pr.x)}}));
      }
      if (!inst.reduce(w).is_zero()) rep.second_terms_zero = false;
    }
    for (std::size_t t = 0; t < dm * dn; ++t) sampled.at(s, t) = kern.at(s, t);
  }
  // first terms: every sampled vector certified inside the relator span
  rep.in_relator_span = R.row_space_contains_all(sampled);
  rep.ok = rep.identities_ok && rep.second_terms_zero && rep.in_relator_span;
  return rep;
}

// ---------------------------------------------------------------------------
// label sets and morphisms

struct LabelSet {
  std::string name;
  std::map<Colour, std::vector<TLElement>> values;

  const TLElement& value(const Label& l) const {
    auto it = values.find(l.colour);
    SKEIN_CHECK_MSG(it != values.end(),
                    "label set has no colour " << l.colour.str());
    SKEIN_CHECK_MSG(l.index >= 0 &&
                        l.index < static_cast<int>(it->second.size()),
                    "label index out of range");
    return it->second[l.index];
  }

  friend bool operator==(const LabelSet& a, const LabelSet& b) {
    return a.values == b.values;
  }
};

namespace detail {

inline std::string label_sig(const std::map<int, Label>& labels) {
  std::string out;
  for (const auto& [b, l] : labels)
    out += std::to_string(b) + "=" + l.colour.str() + "." +
           std::to_string(l.index) + ";";
  return out;
}

// Fill boxes one at a time from the highest id down, merging isotopic
// partial composites; lower box ids are stable under splicing.
inline TLElement fill_merged(FieldKind F, const PlanarTangle& t,
                             const std::map<int, TLElement>& fills) {
  SKEIN_CHECK_MSG(fills.size() == t.boxes().size(), "unlabelled box");
  Scalar delta = Scalar::delta(F);
  std::map<std::string, std::pair<PlanarTangle, Scalar>> parts;
  {
    auto [loops, bare] = strip_loops(t);
    parts.emplace(bare.canonical_form(),
                  std::make_pair(bare, delta.pow(loops)));
  }
  for (auto it = fills.rbegin(); it != fills.rend(); ++it) {
    std::map<std::string, std::pair<PlanarTangle, Scalar>> next;
    for (const auto& [key, pc] : parts)
      for (const auto& [dk, dv] : it->second.terms()) {
        auto [loops, bare] = strip_loops(
            PlanarTangle::compose(pc.first, {{it->first, dv.first}}));
        Scalar coef = pc.second * dv.second * delta.pow(loops);
        auto [slot, fresh] = next.try_emplace(bare.canonical_form(), bare,
                                              coef);
        if (!fresh) slot->second.second = slot->second.second + coef;
      }
    parts = std::move(next);
  }
  TLElement acc(F, t.external());
  for (const auto& [key, pc] : parts) acc.add_term(pc.first, pc.second);
  return acc;
}

}  // namespace detail

inline TLElement evaluate_against(const ConcreteInstance& inst,
                                  const LabelSet& set,
                                  const LabelledTangle& lt) {
  std::map<int, TLElement> fills;
  for (const auto& [b, lab] : lt.labels) fills.emplace(b, set.value(lab));
  return inst.reduce(detail::fill_merged(inst.field(), lt.tangle, fills));
}

inline TLElement evaluate_against(const ConcreteInstance& inst,
                                  const LabelSet& set, const FormalSum& fs) {
  TLElement acc(inst.field(), fs.colour);
  for (const auto& [coef, lt] : fs.terms)
    acc = acc + coef * evaluate_against(inst, set, lt);
  return inst.reduce(acc);
}

struct LabelMorphism {
  LabelSet source, target;
  std::map<Label, FormalSum> image;
};

// Splice fills into boxes, renumbering labels the way compose renumbers
// boxes; boxes without a fill keep their labels.
inline LabelledTangle substitute_boxes(
    const LabelledTangle& host, const std::map<int, LabelledTangle>& fills) {
  std::map<int, PlanarTangle> slots;
  for (const auto& [i, f] : fills) slots.emplace(i, f.tangle);
  PlanarTangle out = PlanarTangle::compose(host.tangle, slots);
  std::map<int, Label> labels;
  int nb = static_cast<int>(host.tangle.boxes().size());
  int next = 0;
  for (int i = 1; i <= nb; ++i) {
    auto it = fills.find(i);
    if (it == fills.end()) {
      ++next;
      auto hl = host.labels.find(i);
      if (hl != host.labels.end()) labels.emplace(next, hl->second);
    } else {
      int fb = static_cast<int>(it->second.tangle.boxes().size());
      for (int j = 1; j <= fb; ++j) {
        ++next;
        auto fl = it->second.labels.find(j);
        if (fl != it->second.labels.end()) labels.emplace(next, fl->second);
      }
    }
  }
  SKEIN_CHECK(next == static_cast<int>(out.boxes().size()));
  return LabelledTangle{out, std::move(labels)};
}

inline FormalSum apply(const LabelMorphism& phi, const LabelledTangle& lt) {
  SKEIN_CHECK_MSG(lt.labels.size() == lt.tangle.boxes().size(),
                  "unlabelled box");
  FieldKind F = [&] {
    for (const auto& [c, v] : phi.source.values)
      if (!v.empty()) return v.front().kind();
    SKEIN_CHECK_MSG(false, "empty label set");
    return FieldKind::Rational;
  }();
  std::vector<std::pair<Scalar, std::map<int, LabelledTangle>>> combos;
  combos.push_back({Scalar::one(F), {}});
  for (const auto& [b, lab] : lt.labels) {
    auto it = phi.image.find(lab);
    SKEIN_CHECK_MSG(it != phi.image.end(), "morphism misses a label");
    std::vector<std::pair<Scalar, std::map<int, LabelledTangle>>> next;
    for (const auto& [coef, fills] : combos)
      for (const auto& [tc, tlt] : it->second.terms) {
        auto f2 = fills;
        f2.emplace(b, tlt);
        next.emplace_back(coef * tc, std::move(f2));
      }
    combos = std::move(next);
  }
  FormalSum out{lt.tangle.external(), {}};
  for (auto& [coef, fills] : combos)
    out.terms.emplace_back(coef, substitute_boxes(lt, fills));
  return out;
}

inline FormalSum apply(const LabelMorphism& phi, const FormalSum& fs) {
  FormalSum out{fs.colour, {}};
  for (const auto& [coef, lt] : fs.terms) {
    FormalSum part = apply(phi, lt);
    for (auto& [c2, t2] : part.terms)
      out.terms.emplace_back(coef * c2, std::move(t2));
  }
  return out;
}

// Normal form: merge terms whose tangles are isotopic with equal labels,
// drop zeros, order by canonical key.
inline FormalSum combine_terms(const FormalSum& fs) {
  std::map<std::string, std::pair<Scalar, LabelledTangle>> acc;
  for (const auto& [coef, lt] : fs.terms) {
    std::string key =
        lt.tangle.canonical_form() + "#" + detail::label_sig(lt.labels);
    auto [it, fresh] = acc.try_emplace(key, coef, lt);
    if (!fresh) it->second.first = it->second.first + coef;
  }
  FormalSum out{fs.colour, {}};
  for (auto& [key, cv] : acc)
    if (!cv.first.is_zero()) out.terms.emplace_back(cv.first, cv.second);
  return out;
}

inline bool morphism_consistent(const ConcreteInstance& inst,
                                const LabelMorphism& phi) {
  for (const auto& [lab, img] : phi.image) {
    TLElement lhs = inst.reduce(phi.source.value(lab));
    if (!inst.equivalent(lhs, evaluate_against(inst, phi.target, img)))
      return false;
  }
  return true;
}

namespace detail {

inline TLElement eval_cached(
    const ConcreteInstance& inst, const LabelSet& set,
    const LabelledTangle& lt,
    std::map<std::string, TLElement>& cache) {
  std::string key = lt.tangle.canonical_form() + "#" + label_sig(lt.labels);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  TLElement v = evaluate_against(inst, set, lt);
  return cache.emplace(std::move(key), std::move(v)).first->second;
}

}  // namespace detail

// R = phitilde(Rt) together with {x - phitilde(phi(x)) : x in L}; every
// member is verified to evaluate to zero against the L-values.
inline RelationSet change_of_generators(const ConcreteInstance& inst,
                                        const LabelMorphism& phi,
                                        const LabelMorphism& phitilde,
                                        const RelationSet& rt) {
  SKEIN_CHECK_MSG(phi.source == phitilde.target &&
                      phi.target == phitilde.source,
                  "morphisms are not a source/target pair");
  SKEIN_CHECK_MSG(morphism_consistent(inst, phi),
                  "evaluation mismatch under phi");
  SKEIN_CHECK_MSG(morphism_consistent(inst, phitilde),
                  "evaluation mismatch under phitilde");
  RelationSet out;
  out.fingerprint = rt.fingerprint + ";cog:" + phi.source.name + "<-" +
                    phi.target.name;
  std::map<std::string, TLElement> cache;
  auto verify = [&](const Relation& rel) {
    TLElement acc =
        detail::eval_cached(inst, phitilde.target, rel.lhs, cache);
    for (const auto& [lam, term] : rel.rhs)
      acc = acc - lam * detail::eval_cached(inst, phitilde.target, term,
                                            cache);
    SKEIN_CHECK_MSG(inst.reduce(acc).is_zero(),
                    "change of generators produced a non-vanishing member "
                        << rel.template_id);
  };
  for (std::size_t i = 0; i < rt.relations.size(); ++i) {
    const Relation& rel = rt.relations[i];
    FormalSum lhs = combine_terms(apply(phitilde, rel.lhs));
    SKEIN_CHECK_MSG(!lhs.terms.empty(), "headless mapped relation");
    Scalar head = lhs.terms.front().first;
    Relation mapped{"map:" + rel.template_id, lhs.terms.front().second, {}};
    for (std::size_t t = 1; t < lhs.terms.size(); ++t)
      mapped.rhs.emplace_back((-lhs.terms[t].first) / head,
                              lhs.terms[t].second);
    for (const auto& [lam, term] : rel.rhs) {
      FormalSum img = combine_terms(apply(phitilde, term));
      for (const auto& [c2, t2] : img.terms)
        mapped.rhs.emplace_back(lam * c2 / head, t2);
    }
    FormalSum rhsum{mapped.lhs.tangle.external(), std::move(mapped.rhs)};
    mapped.rhs = combine_terms(rhsum).terms;
    verify(mapped);
    out.relations.push_back(std::move(mapped));
  }
  for (const auto& [lab, img] : phi.image) {
    Relation rel{"slide:" + lab.colour.str(),
                 LabelledTangle{zoo::inc(lab.colour, 0), {{1, lab}}},
                 {}};
    FormalSum round = combine_terms(apply(phitilde, img));
    for (const auto& [coef, term] : round.terms)
      rel.rhs.emplace_back(coef, term);
    verify(rel);
    out.relations.push_back(std::move(rel));
  }
  return out;
}

struct Telescoping {
  std::vector<FormalSum> terms;
  bool symbolic_ok = false;
  bool numeric_ok = false;
  bool ok = false;
};

namespace detail {

inline bool formal_sums_equal(const FormalSum& a, const FormalSum& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!(a.terms[i].first == b.terms[i].first)) return false;
    if (!(a.terms[i].second.tangle == b.terms[i].second.tangle)) return false;
    if (a.terms[i].second.labels != b.terms[i].second.labels) return false;
  }
  return true;
}

}  // namespace detail

// T - phitilde(phi(T)) written as b terms, the r-th replacing labels before
// box r by their round trips and differing from the next in box r only.
inline Telescoping telescoping_decomposition(const ConcreteInstance& inst,
                                             const LabelledTangle& T,
                                             const LabelMorphism& phi,
                                             const LabelMorphism& phitilde) {
  SKEIN_CHECK_MSG(!T.labels.empty(), "telescoping needs at least one box");
  SKEIN_CHECK(T.labels.size() == T.tangle.boxes().size());
  FieldKind F = inst.field();
  std::map<Label, FormalSum> round;
  for (const auto& [b, lab] : T.labels)
    if (!round.count(lab))
      round.emplace(lab, combine_terms(apply(phitilde, phi.image.at(lab))));
  std::vector<int> order;
  for (const auto& [b, lab] : T.labels) order.push_back(b);
  std::size_t nb = order.size();

  // prefix(r): boxes order[0..r) substituted by their round trips
  auto prefix = [&](std::size_t r) {
    FormalSum out{T.tangle.external(), {}};
    std::vector<std::pair<Scalar, std::map<int, LabelledTangle>>> combos;
    combos.push_back({Scalar::one(F), {}});
    for (std::size_t q = 0; q < r; ++q) {
      int b = order[q];
      const FormalSum& img = round.at(T.labels.at(b));
      std::vector<std::pair<Scalar, std::map<int, LabelledTangle>>> next;
      for (const auto& [coef, fills] : combos)
        for (const auto& [tc, tlt] : img.terms) {
          auto f2 = fills;
          f2.emplace(b, tlt);
          next.emplace_back(coef * tc, std::move(f2));
        }
      combos = std::move(next);
    }
    for (auto& [coef, fills] : combos)
      out.terms.emplace_back(coef, substitute_boxes(T, fills));
    return combine_terms(out);
  };
  std::vector<FormalSum> pre;
  for (std::size_t r = 0; r <= nb; ++r) pre.push_back(prefix(r));

  Telescoping out;
  FormalSum whole{T.tangle.external(), {}};
  for (std::size_t r = 1; r <= nb; ++r) {
    FormalSum term{T.tangle.external(), {}};
    for (const auto& [c, t] : pre[r - 1].terms) term.terms.emplace_back(c, t);
    for (const auto& [c, t] : pre[r].terms) term.terms.emplace_back(-c, t);
    term = combine_terms(term);
    for (const auto& [c, t] : term.terms) whole.terms.emplace_back(c, t);
    out.terms.push_back(std::move(term));
  }
  FormalSum target{T.tangle.external(), {}};
  target.terms.emplace_back(Scalar::one(F), T);
  for (const auto& [c, t] : pre[nb].terms) target.terms.emplace_back(-c, t);
  out.symbolic_ok =
      detail::formal_sums_equal(combine_terms(whole), combine_terms(target));

  // Numeric side: evaluate the prefixes multilinearly, with the box values
  // swapped to round-trip values one at a time; every step must agree, so
  // every telescoping term evaluates to zero.
  std::map<Label, TLElement> zval, wval;
  for (const auto& [b, lab] : T.labels) {
    if (zval.count(lab)) continue;
    zval.emplace(lab, inst.reduce(phi.source.value(lab)));
    wval.emplace(lab, evaluate_against(inst, phi.source, round.at(lab)));
  }
  auto value_at = [&](std::size_t r) {
    std::map<int, TLElement> fills;
    for (std::size_t q = 0; q < nb; ++q) {
      const Label& lab = T.labels.at(order[q]);
      fills.emplace(order[q], q < r ? wval.at(lab) : zval.at(lab));
    }
    return inst.reduce(detail::fill_merged(F, T.tangle, fills));
  };
  out.numeric_ok = true;
  TLElement v0 = value_at(0);
  std::vector<TLElement> values = {v0};
  for (std::size_t r = 1; r <= nb; ++r) {
    values.push_back(value_at(r));
    if (!inst.equivalent(values[r - 1], values[r])) out.numeric_ok = false;
  }
  // spot-check the multilinear route against a full formal evaluation
  {
    std::map<std::string, TLElement> cache;
    TLElement direct(F, T.tangle.external());
    for (const auto& [c, t] : out.terms.front().terms)
      direct = direct + c * detail::eval_cached(inst, phi.source, t, cache);
    TLElement diff = v0 - values[1];
    if (!inst.equivalent(inst.reduce(direct), inst.reduce(diff)))
      out.numeric_ok = false;
  }
  out.ok = out.symbolic_ok && out.numeric_ok;
  return out;
}

}  // namespace skein
