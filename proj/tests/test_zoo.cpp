#include <catch2/catch_amalgamated.hpp>

#include "skein/zoo.hpp"

using namespace skein;
using PT = PlanarTangle;

namespace {
Colour num(int n) { return Colour::num(n); }
PT fill(const PT& host, std::initializer_list<PT> subs) {
  std::map<int, PT> m;
  int i = 0;
  for (const PT& s : subs) m.emplace(++i, s);
  return PT::compose(host, m);
}
}  // namespace

TEST_CASE("T at the base colour is the bare box, below it the closures") {
  for (int k = 1; k <= 3; ++k) {
    REQUIRE(zoo::tangle_T(num(k), k) == zoo::inc(num(k), 0));
    REQUIRE(zoo::tangle_T(Colour::zero_plus(), k) ==
            zoo::er(Colour::zero_plus(), k));
    REQUIRE(zoo::tangle_T(Colour::zero_minus(), k) ==
            zoo::er(Colour::zero_minus(), k));
    for (int n = 1; n < k; ++n)
      REQUIRE(zoo::tangle_T(num(n), k) == zoo::er(num(n), k - n));
    for (int c = k; c <= k + 3; ++c) {
      PT t = zoo::tangle_T(num(c), k);
      REQUIRE(static_cast<int>(t.boxes().size()) == c - k + 1);
      for (const Colour& b : t.boxes()) REQUIRE(b == num(k));
    }
  }
}

TEST_CASE("multiplication fuses T chains") {
  for (int k = 1; k <= 3; ++k)
    for (int m = k; m <= k + 2; ++m)
      for (int n = k; n <= k + 2; ++n) {
        int p = m + n - k + 1;
        PT fused = fill(zoo::mult(num(m), num(n), num(p)),
                        {zoo::tangle_T(num(m), k), zoo::tangle_T(num(n), k)});
        REQUIRE(fused == zoo::tangle_T(num(p), k));
      }
}

TEST_CASE("vertical stacking against the unit is the identity") {
  for (int c = 1; c <= 5; ++c) {
    PT m = zoo::mult(num(c), num(c), num(c));
    REQUIRE(PT::compose(m, {{1, zoo::unit(num(c))}}) == zoo::inc(num(c), 0));
    REQUIRE(PT::compose(m, {{2, zoo::unit(num(c))}}) == zoo::inc(num(c), 0));
    REQUIRE(fill(m, {zoo::unit(num(c)), zoo::unit(num(c))}) ==
            zoo::unit(num(c)));
  }
}

TEST_CASE("stacking is associative with stable box order") {
  for (int c = 1; c <= 4; ++c) {
    PT m = zoo::mult(num(c), num(c), num(c));
    REQUIRE(PT::compose(m, {{1, m}}) == PT::compose(m, {{2, m}}));
    REQUIRE(zoo::mult_chain(c, 3) == PT::compose(m, {{2, m}}));
    REQUIRE(zoo::mult_chain(c, 1) == zoo::inc(num(c), 0));
  }
}

TEST_CASE("capping one cable of a chain of two gives the multiplication") {
  for (int k = 1; k <= 3; ++k) {
    PT lhs = PT::compose(zoo::er(num(k), 1),
                         {{1, zoo::tangle_T(num(k + 1), k)}});
    REQUIRE(lhs == zoo::mult(num(k), num(k), num(k)));
  }
}

TEST_CASE("capping the unit drops a free loop") {
  for (int k = 1; k <= 3; ++k) {
    PT t = PT::compose(zoo::er(num(k), 1), {{1, zoo::unit(num(k + 1))}});
    REQUIRE(t.circle_count() == 1);
    REQUIRE(t.remove_contractible_loop() == zoo::unit(num(k)));
  }
}

TEST_CASE("right caps step T down through every colour below k") {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n < k; ++n) {
      Colour cn = n == 0 ? Colour::zero_plus() : num(n);
      PT lhs = PT::compose(zoo::er(cn, 1),
                           {{1, zoo::tangle_T(num(n + 1), k)}});
      REQUIRE(lhs == zoo::tangle_T(cn, k));
    }
    // the negatively shaded closure steps down from colour 1 as well
    PT lhs = PT::compose(zoo::er(Colour::zero_minus(), 1),
                         {{1, zoo::tangle_T(num(1), k)}});
    REQUIRE(lhs == zoo::tangle_T(Colour::zero_minus(), k));
  }
}

TEST_CASE("a right cap over a multiplication adds one joining cable") {
  for (int a = 2; a <= 4; ++a)
    for (int p = a + 1; p <= 2 * a - 1; ++p) {
      PT lhs = PT::compose(zoo::er(num(p - 1), 1), {{1, zoo::mult(num(a),
                                                                  num(a),
                                                                  num(p))}});
      REQUIRE(lhs == zoo::mult(num(a), num(a), num(p - 1)));
    }
}

TEST_CASE("the Jones diagram factors through units and one multiplication") {
  for (int n = 2; n <= 5; ++n) {
    PT rhs = fill(zoo::mult(num(n - 1), num(n - 1), num(n)),
                  {zoo::unit(num(n - 1)), zoo::unit(num(n - 1))});
    REQUIRE(rhs == zoo::jones_e(n));
  }
}

TEST_CASE("padded Jones generators match their direct diagrams") {
  for (int n = 2; n <= 5; ++n) {
    REQUIRE(zoo::e_gen(n, n - 1) == zoo::jones_e(n));
    for (int i = 1; i <= n - 1; ++i) {
      TangleBuilder b(num(n));
      b.strand(0, i, 0, i + 1);
      b.strand(0, 2 * n - i, 0, 2 * n + 1 - i);
      for (int t = 1; t <= n; ++t) {
        if (t == i || t == i + 1) continue;
        b.strand(0, t, 0, 2 * n + 1 - t);
      }
      REQUIRE(zoo::e_gen(n, i) == b.build());
    }
  }
}

TEST_CASE("shifts compose additively") {
  for (int n = 1; n <= 3; ++n) {
    REQUIRE(zoo::shift_gen(n, 2) == zoo::shift(n));
    for (int j = 2; j <= 4; j += 2) {
      PT two_step = PT::compose(zoo::shift(n + j), {{1, zoo::shift_gen(n, j)}});
      REQUIRE(two_step == zoo::shift_gen(n, j + 2));
    }
  }
}

TEST_CASE("rotation has full period") {
  for (int c = 1; c <= 5; ++c) {
    PT r = zoo::rotation(c);
    PT acc = r;
    for (int step = 2; step <= c; ++step) {
      REQUIRE_FALSE(acc == zoo::inc(num(c), 0));
      acc = PT::compose(r, {{1, acc}});
    }
    REQUIRE(acc == zoo::inc(num(c), 0));
  }
}

TEST_CASE("rotation reflects to its inverse") {
  REQUIRE(zoo::rotation(1).adjoint() == zoo::rotation(1));
  for (int c = 2; c <= 4; ++c) {
    PT inv = zoo::rotation(c);
    for (int step = 2; step <= c - 1; ++step)
      inv = PT::compose(zoo::rotation(c), {{1, inv}});
    REQUIRE(zoo::rotation(c).adjoint() == inv);
  }
}

TEST_CASE("cutting the chain open is undone by the unit") {
  for (int k = 1; k <= 3; ++k)
    for (int n = k; n <= k + 2; ++n) {
      PT w = zoo::cut_chain(n, k);
      REQUIRE(PT::compose(w, {{2, zoo::unit(num(2 * n - k + 1))}}) ==
              zoo::inc(num(n), 0));
    }
}

TEST_CASE("self-adjoint generators") {
  for (int k = 1; k <= 3; ++k) {
    REQUIRE(zoo::unit(num(k)).adjoint() == zoo::unit(num(k)));
    REQUIRE(zoo::inc(num(k), 2).adjoint() == zoo::inc(num(k), 2));
    REQUIRE(zoo::er(num(k), 2).adjoint() == zoo::er(num(k), 2));
    REQUIRE(zoo::er(Colour::zero_plus(), k).adjoint() ==
            zoo::er(Colour::zero_plus(), k));
    REQUIRE(zoo::er(Colour::zero_minus(), k).adjoint() ==
            zoo::er(Colour::zero_minus(), k));
    REQUIRE(zoo::left_closure(k).adjoint() == zoo::left_closure(k));
  }
  for (int n = 2; n <= 4; ++n) {
    REQUIRE(zoo::jones_e(n).adjoint() == zoo::jones_e(n));
    for (int i = 1; i < n; ++i)
      REQUIRE(zoo::e_gen(n, i).adjoint() == zoo::e_gen(n, i));
  }
}

TEST_CASE("reflection swaps the factors of a pairing") {
  for (int k = 1; k <= 3; ++k) {
    PT x = k == 1 ? zoo::unit(num(1)) : zoo::jones_e(k);
    PT y = k == 1 ? PT::compose(zoo::er(num(1), 1),
                                {{1, zoo::unit(num(2))}})
                        .remove_contractible_loop()
                  : zoo::e_gen(k, 1);
    PT lhs = fill(zoo::zgen(k), {x, y}).adjoint();
    PT rhs = fill(zoo::zgen(k), {y.adjoint(), x.adjoint()});
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("annular cap with no turnbacks is the identity") {
  for (int n = 1; n <= 4; ++n)
    REQUIRE(zoo::annular_cap(n, 0) == zoo::inc(num(n), 0));
}

TEST_CASE("reflection reverses the chain") {
  for (int k = 1; k <= 3; ++k)
    for (int c = k + 1; c <= k + 3; ++c) {
      PT t = zoo::tangle_T(num(c), k);
      int q = static_cast<int>(t.boxes().size());
      std::vector<Strand> rev;
      auto flip = [&](End e) {
        return e.node == 0 ? e : End{q + 1 - e.node, e.point};
      };
      for (const Strand& s : t.strands())
        rev.push_back(Strand{flip(s.a), flip(s.b)});
      PT expected = PT::from_raw(t.external(), t.boxes(), rev, 0, {});
      REQUIRE(t.adjoint() == expected);
    }
}

TEST_CASE("the annular fold collapses a doubled unit") {
  for (int k = 1; k <= 3; ++k) {
    PT folded = PT::compose(zoo::annular_cap(2 * k, k),
                            {{1, zoo::unit(num(2 * k))}});
    REQUIRE(folded == zoo::unit(num(k)));
  }
  // one fold of the unit at colour three: cap left, cup right of centre
  PT one = PT::compose(zoo::annular_cap(3, 1), {{1, zoo::unit(num(3))}});
  TangleBuilder b(num(2));
  b.strand(0, 1, 0, 2);
  b.strand(0, 3, 0, 4);
  REQUIRE(one == b.build());
}

TEST_CASE("left closure of T at colour one floats the closed box left") {
  for (int k = 1; k <= 3; ++k) {
    PT lhs = PT::compose(zoo::left_closure(1), {{1, zoo::tangle_T(num(1), k)}});
    // expected: one vertical strand with the fully closed box floating in
    // the black face, outermost cap routed left
    TangleBuilder b(num(1));
    b.strand(0, 1, 0, 2);
    int x = b.add_box(num(k));
    for (int i = 1; i <= k; ++i) b.strand(x, i, x, 2 * k + 1 - i);
    b.place_component(x, Anchor{0, 1}, Anchor{x, 1});
    PT rhs = b.build();
    REQUIRE(lhs == rhs);
    // and the negatively shaded inclusion of T^{0-} gives the same picture
    PT other = PT::compose(zoo::inc(Colour::zero_minus(), 1),
                           {{1, zoo::tangle_T(Colour::zero_minus(), k)}});
    REQUIRE(other == rhs);
  }
}

TEST_CASE("conditional expectation composite has a single box of colour k") {
  for (int k = 1; k <= 4; ++k) {
    PT ce = zoo::cond_exp(k);
    REQUIRE(ce.external() == num(k));
    REQUIRE(ce.boxes().size() == 1);
    REQUIRE(ce.boxes()[0] == num(k));
    REQUIRE(ce.circle_count() == 0);
    // filling with the unit leaves one loop over the unit at colour k
    PT t = PT::compose(ce, {{1, zoo::unit(num(k))}});
    REQUIRE(t.circle_count() == 1);
    REQUIRE(t.remove_contractible_loop() == zoo::unit(num(k)));
  }
}

TEST_CASE("circle discs carry exactly one loop of each shade") {
  PT cp = zoo::circle_disc(Colour::zero_plus());
  PT cm = zoo::circle_disc(Colour::zero_minus());
  REQUIRE(cp.circle_count() == 1);
  REQUIRE(cm.circle_count() == 1);
  REQUIRE(cp.remove_contractible_loop() == zoo::unit(Colour::zero_plus()));
  REQUIRE(cm.remove_contractible_loop() == zoo::unit(Colour::zero_minus()));
  REQUIRE_FALSE(cp.canonical_form() == cm.canonical_form());
}

TEST_CASE("zero-coloured multiplications float both factors") {
  for (Colour z : {Colour::zero_plus(), Colour::zero_minus()}) {
    PT m = zoo::mult(z, z, z);
    REQUIRE(m.boxes().size() == 2);
    PT filled = fill(m, {zoo::unit(z), zoo::unit(z)});
    REQUIRE(filled == zoo::unit(z));
    // one circle in each factor: both survive side by side
    PT two = fill(m, {zoo::circle_disc(z), zoo::circle_disc(z)});
    REQUIRE(two.circle_count() == 2);
  }
}

TEST_CASE("mixed zero multiplication floats the closed factor beside") {
  for (int n = 1; n <= 3; ++n) {
    for (Colour z : {Colour::zero_plus(), Colour::zero_minus()}) {
      PT m = zoo::mult(z, num(n), num(n));
      PT filled = fill(m, {zoo::unit(z), zoo::unit(num(n))});
      REQUIRE(filled == zoo::unit(num(n)));
      PT mr = zoo::mult(num(n), z, num(n));
      PT filled2 = fill(mr, {zoo::unit(num(n)), zoo::unit(z)});
      REQUIRE(filled2 == zoo::unit(num(n)));
    }
  }
}

TEST_CASE("inclusion chains compose") {
  for (int k = 1; k <= 3; ++k)
    for (int j = 1; j <= 2; ++j) {
      PT step = PT::compose(zoo::inc(num(k + j), 1),
                            {{1, zoo::inc(num(k), j)}});
      REQUIRE(step == zoo::inc(num(k), j + 1));
    }
  for (Colour z : {Colour::zero_plus(), Colour::zero_minus()})
    for (int j = 1; j <= 2; ++j) {
      PT step = PT::compose(zoo::inc(num(j), 1), {{1, zoo::inc(z, j)}});
      REQUIRE(step == zoo::inc(z, j + 1));
    }
}

TEST_CASE("inclusion then unit filling pads the unit") {
  for (int k = 1; k <= 3; ++k)
    for (int j = 0; j <= 2; ++j)
      REQUIRE(PT::compose(zoo::inc(num(k), j), {{1, zoo::unit(num(k))}}) ==
              zoo::unit(num(k + j)));
}
