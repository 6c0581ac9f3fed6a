#pragma once

#include "skein/tangle.hpp"

// Constructors for the standard annular and multiplication tangles.  All
// point conventions follow tangle.hpp: 1..c across the top left-to-right,
// c+1..2c across the bottom right-to-left, star arc between 2c and 1.
namespace skein::zoo {

// 1^c: no boxes, vertical strands (bare disc for the zero colours)
inline PlanarTangle unit(Colour c) {
  TangleBuilder b(c);
  int n = c.is_zero() ? 0 : c.n();
  for (int i = 1; i <= n; ++i) b.strand(0, i, 0, 2 * n + 1 - i);
  return b.build();
}

// ER^n_{n+j}: one box of colour n+j, the rightmost j through-cables bent
// into nested caps on the right.  For the zero colours this is the fully
// closed box: positively shaded ambient keeps the star face out, negatively
// shaded ambient routes the outermost cap to the left instead.
inline PlanarTangle er(Colour n, int j) {
  SKEIN_CHECK(j >= 1);
  if (n.is_zero()) {
    TangleBuilder b(n);
    int x = b.add_box(Colour::num(j));
    for (int i = 1; i <= j; ++i) b.strand(x, i, x, 2 * j + 1 - i);
    int outer_arc = n.is_zero_plus() ? 0 : 1;
    b.place_component(x, Anchor{0, 0}, Anchor{x, outer_arc});
    return b.build();
  }
  int nn = n.n(), N = nn + j;
  TangleBuilder b(n);
  int x = b.add_box(Colour::num(N));
  for (int i = 1; i <= j; ++i) b.strand(x, N - i + 1, x, N + i);
  for (int i = 1; i <= nn; ++i) b.strand(x, i, 0, i);
  for (int t = 1; t <= nn; ++t) b.strand(x, N + j + t, 0, nn + t);
  return b.build();
}

// I^{n+j}_n: one box of colour n, j nested vertical strands added on the
// right.  For the zero colours the box floats beside 1^j, in the leftmost
// face of its shade.
inline PlanarTangle inc(Colour n, int j) {
  SKEIN_CHECK(j >= 0);
  if (n.is_zero()) {
    if (j == 0) {
      TangleBuilder bb(n);
      int x = bb.add_box(n);
      bb.place_component(x, Anchor{0, 0}, Anchor{x, 0});
      return bb.build();
    }
    TangleBuilder bb(Colour::num(j));
    int x = bb.add_box(n);
    for (int i = 1; i <= j; ++i) bb.strand(0, i, 0, 2 * j + 1 - i);
    int arc = n.is_zero_plus() ? 0 : 1;
    bb.place_component(x, Anchor{0, arc}, Anchor{x, 0});
    return bb.build();
  }
  int nn = n.n();
  TangleBuilder b(Colour::num(nn + j));
  int x = b.add_box(n);
  for (int i = 1; i <= nn; ++i) b.strand(x, i, 0, i);
  for (int t = 1; t <= nn; ++t) b.strand(x, nn + t, 0, nn + 2 * j + t);
  for (int i = 1; i <= j; ++i) b.strand(0, nn + i, 0, nn + 2 * j + 1 - i);
  return b.build();
}

// E^n: cap joining points n-1,n and cup joining n+1,n+2, nested strands
// around them (the rightmost Jones generator diagram), n >= 2
inline PlanarTangle jones_e(int n) {
  SKEIN_CHECK(n >= 2);
  TangleBuilder b(Colour::num(n));
  b.strand(0, n - 1, 0, n);
  b.strand(0, n + 1, 0, n + 2);
  for (int i = 1; i <= n - 2; ++i) b.strand(0, i, 0, 2 * n + 1 - i);
  return b.build();
}

// E_i^n: the i-th Jones generator diagram, realised by padding E^{i+1}
inline PlanarTangle e_gen(int n, int i) {
  SKEIN_CHECK(1 <= i && i <= n - 1);
  return PlanarTangle::compose(inc(Colour::num(i + 1), n - i - 1),
                               {{1, jones_e(i + 1)}});
}

// M^p_{m,n}: two boxes joined by t = m+n-p cables, left-aligned: the last t
// points of D1's bottom row meet the first t of D2's top row.  A zero
// coloured factor floats in the leftmost face of its shade.
inline PlanarTangle mult(Colour m, Colour n, Colour p) {
  auto pts = [](Colour c) { return c.is_zero() ? 0 : c.n(); };
  int mm = pts(m), nn = pts(n), pp = pts(p);
  int t = mm + nn - pp;
  SKEIN_CHECK_MSG(t >= 0 && t <= std::min(2 * mm, 2 * nn),
                  "multiplication tangle needs |m-n| <= p <= m+n");
  if (m.is_zero() || n.is_zero()) {
    SKEIN_CHECK_MSG(t == 0, "zero-coloured factor cannot share cables");
  }
  if (m.is_zero() && n.is_zero()) {
    SKEIN_CHECK(p == m && p == n);
    TangleBuilder b(p);
    int d1 = b.add_box(m);
    int d2 = b.add_box(n);
    b.place_component(d1, Anchor{0, 0}, Anchor{d1, 0});
    b.place_component(d2, Anchor{0, 0}, Anchor{d2, 0});
    return b.build();
  }
  TangleBuilder b(p);
  int d1 = b.add_box(m);
  int d2 = b.add_box(n);
  for (int j = 1; j <= t; ++j) b.strand(d1, 2 * mm + 1 - j, d2, j);
  for (int j = 1; j <= 2 * mm - t; ++j) b.strand(0, j, d1, j);
  for (int j = 1; j <= 2 * nn - t; ++j)
    b.strand(0, 2 * mm - t + j, d2, t + j);
  if (m.is_zero()) {
    SKEIN_CHECK(n == p);
    b.place_component(d1, Anchor{0, m.is_zero_plus() ? 0 : 1}, Anchor{d1, 0});
  }
  if (n.is_zero()) {
    SKEIN_CHECK(m == p);
    b.place_component(d2, Anchor{0, n.is_zero_plus() ? 0 : 1}, Anchor{d2, 0});
  }
  return b.build();
}

// left-nested multiplication chain with q colour-c slots, top to bottom
inline PlanarTangle mult_chain(int c, int q) {
  SKEIN_CHECK(q >= 1);
  Colour cc = Colour::num(c);
  if (q == 1) return inc(cc, 0);
  PlanarTangle t = mult(cc, cc, cc);
  for (int i = 3; i <= q; ++i)
    t = PlanarTangle::compose(mult(cc, cc, cc), {{1, t}});
  return t;
}

// EL^n_n: closes the box around the left: int 1 joins int 2n, the external
// strand 1-2n runs outside it, middles straight
inline PlanarTangle left_closure(int n) {
  SKEIN_CHECK(n >= 1);
  TangleBuilder b(Colour::num(n));
  int x = b.add_box(Colour::num(n));
  b.strand(x, 1, x, 2 * n);
  b.strand(0, 1, 0, 2 * n);
  for (int t = 2; t <= 2 * n - 1; ++t) b.strand(x, t, 0, t);
  // at colour one the closure swallows the box whole; it floats right of
  // the surviving strand, showing its black face
  if (n == 1) b.place_component(x, Anchor{0, 1}, Anchor{x, 1});
  return b.build();
}

// SH_n^{n+j} for even j: the box pushed j/2 strands to the right, j nested
// verticals on the left
inline PlanarTangle shift_gen(int n, int j) {
  SKEIN_CHECK(n >= 1 && j >= 2 && j % 2 == 0);
  TangleBuilder b(Colour::num(n + j));
  int x = b.add_box(Colour::num(n));
  int P = 2 * (n + j);
  for (int i = 1; i <= j; ++i) b.strand(0, i, 0, P + 1 - i);
  for (int i = 1; i <= n; ++i) b.strand(x, i, 0, j + i);
  for (int t = 1; t <= n; ++t) b.strand(x, n + t, 0, n + j + t);
  return b.build();
}

// SH_n^{n+2}
inline PlanarTangle shift(int n) { return shift_gen(n, 2); }

// rotation by one shaded unit at colour c; composing it c times over itself
// gives the identity
inline PlanarTangle rotation(int c) {
  SKEIN_CHECK(c >= 1);
  TangleBuilder b(Colour::num(c));
  int x = b.add_box(Colour::num(c));
  for (int i = 1; i <= 2 * c - 2; ++i) b.strand(x, i + 2, 0, i);
  b.strand(x, 1, 0, 2 * c - 1);
  b.strand(x, 2, 0, 2 * c);
  return b.build();
}

// conditional-expectation composite: include to colour k-1 then cap back up
inline PlanarTangle cond_exp(int k) {
  SKEIN_CHECK(k >= 1);
  Colour km = k == 1 ? Colour::zero_plus() : Colour::num(k - 1);
  return PlanarTangle::compose(inc(km, 1), {{1, er(km, 1)}});
}

// C^{0+-}: one free loop in an empty zero-coloured disc
inline PlanarTangle circle_disc(Colour z) {
  SKEIN_CHECK(z.is_zero());
  TangleBuilder b(z);
  b.circle(Anchor{0, 0});
  return b.build();
}

// T^c relative to depth k: the chain of c-k+1 colour-k boxes for c >= k,
// the capped single box ER^c_k below, with T^k the bare k-box
inline PlanarTangle tangle_T(Colour c, int k) {
  SKEIN_CHECK(k >= 1);
  if (c.is_zero()) return er(c, k);
  int n = c.n();
  if (n < k) return er(c, k - n);
  int q = n - k + 1;
  if (q == 1) return inc(Colour::num(k), 0);
  TangleBuilder b(c);
  std::vector<int> box(q + 1);
  for (int i = 1; i <= q; ++i) box[i] = b.add_box(Colour::num(k));
  int e = 0;
  for (int p = 1; p <= k + 1; ++p) b.strand(0, ++e, box[1], p);
  for (int i = 2; i <= q - 1; ++i) {
    b.strand(0, ++e, box[i], k);
    b.strand(0, ++e, box[i], k + 1);
  }
  for (int p = k; p <= 2 * k; ++p) b.strand(0, ++e, box[q], p);
  for (int i = 1; i < q; ++i)
    for (int j = 1; j <= k - 1; ++j)
      b.strand(box[i], 2 * k + 1 - j, box[i + 1], j);
  return b.build();
}

// the T^{n+1} chain with its last joining cable opened into a second hole:
// filling D2 with 1^{2n-k+1} restores the identity on D1
inline PlanarTangle cut_chain(int n, int k) {
  SKEIN_CHECK(n >= k && k >= 1);
  TangleBuilder b(Colour::num(n));
  int d1 = b.add_box(Colour::num(n));
  int d2 = b.add_box(Colour::num(2 * n - k + 1));
  for (int i = 1; i <= k - 1; ++i) b.strand(0, i, d1, i);
  for (int i = 1; i <= n - k + 1; ++i) b.strand(d1, n - i + 1, d2, n + i);
  for (int j = 1; j <= n; ++j) b.strand(d1, 2 * n + 1 - j, d2, j);
  for (int j = 1; j <= 2 * n - k + 1; ++j)
    b.strand(d2, 2 * n - k + 1 + j, 0, k - 1 + j);
  return b.build();
}

// annular right cap: straight on the first 2(n-j) points, j nested caps
// closing the rest of the box
inline PlanarTangle annular_cap(int n, int j) {
  SKEIN_CHECK(n >= 1 && j >= 0 && j < n);
  TangleBuilder b(Colour::num(n - j));
  int x = b.add_box(Colour::num(n));
  for (int i = 1; i <= 2 * (n - j); ++i) b.strand(x, i, 0, i);
  for (int i = 1; i <= j; ++i)
    b.strand(x, 2 * (n - j) + i, x, 2 * n + 1 - i);
  return b.build();
}

// pairing tangle z = x (x)* : the two boxes side by side
inline PlanarTangle zgen(int k) {
  return mult(Colour::num(k), Colour::num(k), Colour::num(2 * k));
}

}  // namespace skein::zoo
