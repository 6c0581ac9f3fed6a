#include <catch2/catch_amalgamated.hpp>

#include "skein/tangle.hpp"

using namespace skein;

namespace {

PlanarTangle identity1() {
  TangleBuilder b(Colour::num(1));
  int x = b.add_box(Colour::num(1));
  b.strand(0, 1, x, 1);
  b.strand(0, 2, x, 2);
  return b.build();
}

// closed k-box with the nested pairing (i, 2k+1-i), floating via `outer_arc`
PlanarTangle closed_box(Colour ambient, int k, int outer_arc) {
  TangleBuilder b(ambient);
  int x = b.add_box(Colour::num(k));
  for (int i = 1; i <= k; ++i) b.strand(x, i, x, 2 * k + 1 - i);
  b.place_component(x, Anchor{0, 0}, Anchor{x, outer_arc});
  return b.build();
}

}  // namespace

TEST_CASE("identity tangle at colour 1 traces two faces") {
  PlanarTangle t = identity1();
  REQUIRE(t.face_count(0) == 2);
  auto [c0, f0] = t.face_at(Anchor{0, 0});
  auto [c1, f1] = t.face_at(Anchor{0, 1});
  REQUIRE(c0 == 0);
  REQUIRE(c1 == 0);
  REQUIRE(f0 != f1);
  REQUIRE(t.face_white(0, f0));
  REQUIRE_FALSE(t.face_white(0, f1));
  // the box corners land in the same two faces
  REQUIRE(t.face_at(Anchor{1, 0}) == t.face_at(Anchor{0, 0}));
  REQUIRE(t.face_at(Anchor{1, 1}) == t.face_at(Anchor{0, 1}));
  t.validate();
}

TEST_CASE("non-planar and unshadeable matchings are rejected") {
  SECTION("crossing strands fail the face count") {
    TangleBuilder b(Colour::num(2));
    b.strand(0, 1, 0, 3);
    b.strand(0, 2, 0, 4);
    REQUIRE_THROWS_AS(b.build(), check_error);
  }
  SECTION("parity-violating wiring fails the shading") {
    TangleBuilder b(Colour::num(1));
    int x = b.add_box(Colour::num(1));
    b.strand(0, 1, x, 2);
    b.strand(0, 2, x, 1);
    REQUIRE_THROWS_AS(b.build(), check_error);
  }
  SECTION("unmatched points are rejected") {
    TangleBuilder b(Colour::num(1));
    b.add_box(Colour::num(1));
    b.strand(0, 1, 1, 1);
    REQUIRE_THROWS_AS(b.build(), check_error);
  }
  SECTION("a point cannot carry two strands") {
    TangleBuilder b(Colour::num(2));
    b.strand(0, 1, 0, 2);
    b.strand(0, 1, 0, 4);
    b.strand(0, 3, 0, 4);
    REQUIRE_THROWS_AS(b.build(), check_error);
  }
}

TEST_CASE("free loops: nesting is part of the isotopy class") {
  TangleBuilder side(Colour::zero_plus());
  side.circle(Anchor{0, 0});
  side.circle(Anchor{0, 0});
  PlanarTangle two_side = side.build();

  TangleBuilder nest(Colour::zero_plus());
  int outer = nest.circle(Anchor{0, 0});
  nest.circle(Anchor{-outer, 1});
  PlanarTangle nested = nest.build();

  REQUIRE(two_side.circle_count() == 2);
  REQUIRE(nested.circle_count() == 2);
  REQUIRE(two_side.canonical_form() != nested.canonical_form());

  // only the inner loop of the nest is removable in the first step
  REQUIRE(two_side.has_removable_loop());
  REQUIRE(nested.has_removable_loop());
  REQUIRE(two_side.removable_loop_total() == 2);
  REQUIRE(nested.removable_loop_total() == 2);

  PlanarTangle bare = two_side.remove_contractible_loop()
                          .remove_contractible_loop();
  REQUIRE(bare.circle_count() == 0);
  REQUIRE(bare == TangleBuilder(Colour::zero_plus()).build());
}

TEST_CASE("a closed box presented through different faces is different") {
  // colour-2 box with caps (1,4),(2,3): the arc-0 and arc-2 faces are both
  // white, so both embeddings live in a positive zero-coloured disc, yet
  // they are not isotopic.
  PlanarTangle right = closed_box(Colour::zero_plus(), 2, 0);
  PlanarTangle pocket = closed_box(Colour::zero_plus(), 2, 2);
  REQUIRE(right.canonical_form() != pocket.canonical_form());

  // the black-face presentation needs a negative ambient shade
  PlanarTangle left = closed_box(Colour::zero_minus(), 2, 1);
  REQUIRE_THROWS_AS(closed_box(Colour::zero_plus(), 2, 1), check_error);
  REQUIRE_THROWS_AS(closed_box(Colour::zero_minus(), 2, 0), check_error);
  REQUIRE(left.canonical_form() != right.canonical_form());
}

TEST_CASE("single-strand closures of a 1-box distinguish the two shades") {
  PlanarTangle right = closed_box(Colour::zero_plus(), 1, 0);
  PlanarTangle left = closed_box(Colour::zero_minus(), 1, 1);
  right.validate();
  left.validate();
  REQUIRE(right.canonical_form() != left.canonical_form());
}

TEST_CASE("anchors naming the same region give the same code") {
  auto make = [](bool via_box_corner) {
    TangleBuilder b(Colour::zero_plus());
    int x = b.add_box(Colour::num(1));
    int y = b.add_box(Colour::num(1));
    b.strand(x, 1, x, 2);
    b.strand(y, 1, y, 2);
    b.place_component(x, Anchor{0, 0}, Anchor{x, 0});
    // box y floats in the same outer region, anchored two different ways
    Anchor parent = via_box_corner ? Anchor{x, 0} : Anchor{0, 0};
    b.place_component(y, parent, Anchor{y, 0});
    return b.build();
  };
  REQUIRE(make(true).canonical_form() == make(false).canonical_form());
}

TEST_CASE("composition: identity acts as a unit") {
  PlanarTangle id = identity1();
  PlanarTangle t = PlanarTangle::compose(id, {{1, id}});
  REQUIRE(t == id);
  PlanarTangle t2 = PlanarTangle::compose(t, {{1, t}});
  REQUIRE(t2 == id);
}

TEST_CASE("composition closes chains into free loops") {
  // host: closed 1-box in positive disc; filling the box with a cup leaves
  // one free loop
  TangleBuilder hb(Colour::zero_plus());
  int x = hb.add_box(Colour::num(1));
  hb.strand(x, 1, x, 2);
  hb.place_component(x, Anchor{0, 0}, Anchor{x, 0});
  PlanarTangle host = hb.build();

  TangleBuilder cb(Colour::num(1));
  cb.strand(0, 1, 0, 2);
  PlanarTangle cup = cb.build();

  PlanarTangle r = PlanarTangle::compose(host, {{1, cup}});
  REQUIRE(r.boxless());
  REQUIRE(r.circle_count() == 1);
  REQUIRE(r.has_removable_loop());
  PlanarTangle bare = r.remove_contractible_loop();
  REQUIRE(bare == TangleBuilder(Colour::zero_plus()).build());
}

TEST_CASE("composition splices box numbers in place") {
  // host: two colour-1 boxes chained between the external points
  TangleBuilder hb(Colour::num(1));
  int u = hb.add_box(Colour::num(1));
  int v = hb.add_box(Colour::num(1));
  hb.strand(0, 1, u, 1);
  hb.strand(u, 2, v, 1);
  hb.strand(v, 2, 0, 2);
  PlanarTangle host = hb.build();

  // fill the first box with a two-box chain of the same shape
  PlanarTangle r = PlanarTangle::compose(host, {{1, host}});
  REQUIRE(r.boxes().size() == 3);
  // full chain of three boxes
  TangleBuilder eb(Colour::num(1));
  int a = eb.add_box(Colour::num(1));
  int b2 = eb.add_box(Colour::num(1));
  int c = eb.add_box(Colour::num(1));
  eb.strand(0, 1, a, 1);
  eb.strand(a, 2, b2, 1);
  eb.strand(b2, 2, c, 1);
  eb.strand(c, 2, 0, 2);
  REQUIRE(r == eb.build());

  // filling the second box instead renumbers the tail
  PlanarTangle r2 = PlanarTangle::compose(host, {{2, host}});
  REQUIRE(r2 == r);
}

TEST_CASE("partial composition keeps unfilled holes") {
  TangleBuilder hb(Colour::num(1));
  int u = hb.add_box(Colour::num(1));
  int v = hb.add_box(Colour::num(1));
  hb.strand(0, 1, u, 1);
  hb.strand(u, 2, v, 1);
  hb.strand(v, 2, 0, 2);
  PlanarTangle host = hb.build();

  PlanarTangle r = PlanarTangle::compose(host, {{1, identity1()}});
  REQUIRE(r == host);
}

TEST_CASE("composition is associative on a handmade nest") {
  TangleBuilder hb(Colour::num(2));
  int u = hb.add_box(Colour::num(2));
  hb.strand(0, 1, u, 1);
  hb.strand(0, 2, u, 2);
  hb.strand(0, 3, u, 3);
  hb.strand(0, 4, u, 4);
  PlanarTangle id2 = hb.build();

  TangleBuilder cb(Colour::num(2));
  int w = cb.add_box(Colour::num(2));
  cb.strand(0, 1, 0, 4);
  cb.strand(0, 2, 0, 3);
  cb.strand(w, 1, w, 4);
  cb.strand(w, 2, w, 3);
  cb.place_component(w, Anchor{0, 1}, Anchor{w, 1});
  PlanarTangle pocket = cb.build();

  PlanarTangle ab = PlanarTangle::compose(id2, {{1, pocket}});
  PlanarTangle abc1 = PlanarTangle::compose(ab, {{1, pocket}});
  PlanarTangle bc = PlanarTangle::compose(pocket, {{1, pocket}});
  PlanarTangle abc2 = PlanarTangle::compose(id2, {{1, bc}});
  REQUIRE(abc1 == abc2);
  REQUIRE(abc1.boxes().size() == 1);
  // each nesting closes the meeting caps into two loops
  REQUIRE(abc1.circle_count() == 2);
  REQUIRE_FALSE(abc1 == pocket);
}

TEST_CASE("adjoint is an involution and fixes symmetric tangles") {
  PlanarTangle id = identity1();
  REQUIRE(id.adjoint() == id);

  TangleBuilder cb(Colour::num(2));
  cb.strand(0, 1, 0, 2);
  cb.strand(0, 3, 0, 4);
  PlanarTangle capcup = cb.build();
  REQUIRE(capcup.adjoint().adjoint() == capcup);
  // reflecting swaps the two nested matchings
  TangleBuilder nb(Colour::num(2));
  nb.strand(0, 1, 0, 4);
  nb.strand(0, 2, 0, 3);
  PlanarTangle nested = nb.build();
  REQUIRE(nested.adjoint() == nested);
  REQUIRE(capcup.adjoint() == capcup);
  REQUIRE_FALSE(capcup == nested);

  PlanarTangle right = closed_box(Colour::zero_plus(), 2, 0);
  REQUIRE(right.adjoint() == right);
  PlanarTangle pocket = closed_box(Colour::zero_plus(), 2, 2);
  REQUIRE(pocket.adjoint() == pocket);

  TangleBuilder lb(Colour::zero_plus());
  int l1 = lb.circle(Anchor{0, 0});
  lb.circle(Anchor{-l1, 1});
  PlanarTangle loops = lb.build();
  REQUIRE(loops.adjoint() == loops);
}

TEST_CASE("composition carries floating parts into the right faces") {
  // host: identity with a free loop in the black face
  TangleBuilder hb(Colour::num(1));
  int x = hb.add_box(Colour::num(1));
  hb.strand(0, 1, x, 1);
  hb.strand(0, 2, x, 2);
  hb.circle(Anchor{0, 1});
  PlanarTangle host = hb.build();

  // slot content: identity with a loop in the white face
  TangleBuilder sb(Colour::num(1));
  int y = sb.add_box(Colour::num(1));
  sb.strand(0, 1, y, 1);
  sb.strand(0, 2, y, 2);
  sb.circle(Anchor{0, 0});
  PlanarTangle sub = sb.build();

  PlanarTangle r = PlanarTangle::compose(host, {{1, sub}});
  REQUIRE(r.circle_count() == 2);
  // expected: identity with one loop on each side
  TangleBuilder eb(Colour::num(1));
  int z = eb.add_box(Colour::num(1));
  eb.strand(0, 1, z, 1);
  eb.strand(0, 2, z, 2);
  eb.circle(Anchor{0, 1});
  eb.circle(Anchor{0, 0});
  REQUIRE(r == eb.build());
}

TEST_CASE("colour mismatch in composition is rejected") {
  PlanarTangle id = identity1();
  TangleBuilder cb(Colour::num(2));
  cb.strand(0, 1, 0, 2);
  cb.strand(0, 3, 0, 4);
  PlanarTangle capcup = cb.build();
  REQUIRE_THROWS_AS(PlanarTangle::compose(id, {{1, capcup}}), check_error);
  REQUIRE_THROWS_AS(PlanarTangle::compose(id, {{2, id}}), check_error);
}

TEST_CASE("zero-coloured slots glue by face identification") {
  // host: positive zero-coloured box floating in the white face of the
  // identity; filling it with a bare positive disc erases it
  TangleBuilder hb(Colour::num(1));
  int x = hb.add_box(Colour::num(1));
  int z = hb.add_box(Colour::zero_plus());
  hb.strand(0, 1, x, 1);
  hb.strand(0, 2, x, 2);
  hb.place_component(z, Anchor{0, 0}, Anchor{z, 0});
  PlanarTangle host = hb.build();

  PlanarTangle bare = TangleBuilder(Colour::zero_plus()).build();
  PlanarTangle r = PlanarTangle::compose(host, {{2, bare}});
  REQUIRE(r == identity1());

  // filling it with one loop instead drops the loop into the white face
  TangleBuilder lb(Colour::zero_plus());
  lb.circle(Anchor{0, 0});
  PlanarTangle r2 = PlanarTangle::compose(host, {{2, lb.build()}});
  TangleBuilder eb(Colour::num(1));
  int y = eb.add_box(Colour::num(1));
  eb.strand(0, 1, y, 1);
  eb.strand(0, 2, y, 2);
  eb.circle(Anchor{0, 0});
  REQUIRE(r2 == eb.build());
}
