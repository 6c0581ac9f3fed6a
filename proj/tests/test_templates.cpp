#include <catch2/catch_amalgamated.hpp>

#include "skein/templates.hpp"

using namespace skein;
using zoo::circle_disc;
using zoo::cond_exp;
using zoo::e_gen;
using zoo::er;
using zoo::inc;
using zoo::mult;
using zoo::tangle_T;
using zoo::unit;

namespace {

// The standard proof of "1^k derives T^k": cap the depth axiom on the
// right, recognise the multiplication tangle, drop the loop, chain with
// the multiplication axiom.
Derivation item_one_script(int k) {
  Colour ck = Colour::num(k);
  Derivation d;
  d.name = "unit-derives-T" + std::to_string(k);
  d.steps.push_back(Step::make_axiom("depth"));
  d.steps.push_back(Step::make_compose(er(ck, 1), {{1, 0}}));
  d.steps.push_back(
      Step::make_rewrite(1, Step::Side::Rhs, mult(ck, ck, ck),
                         "capped chain is the multiplication tangle"));
  d.steps.push_back(Step::make_remove_loop(2));
  d.steps.push_back(Step::make_axiom("multiplication"));
  d.steps.push_back(Step::make_transitivity(3, 4));
  return d;
}

std::vector<TLElement> full_basis(const ConcreteInstance& P, Colour c) {
  std::vector<TLElement> b;
  for (std::size_t i = 0; i < P.dim(c); ++i) b.push_back(P.basis_element(c, i));
  return b;
}

}  // namespace

TEST_CASE("basic template set shape") {
  for (int k = 1; k <= 4; ++k) {
    TemplateSet s = basic_templates(k);
    REQUIRE(s.k == k);
    REQUIRE(s.templates.size() == static_cast<std::size_t>(k + 9));
    Colour ck = Colour::num(k);
    for (const auto& t : s.templates)
      REQUIRE(t.lhs.external() == t.rhs.external());

    REQUIRE(s.find("identity") != nullptr);
    CHECK(s.find("identity")->lhs == unit(ck));
    CHECK(s.find("identity")->rhs == inc(ck, 0));
    CHECK(s.find("inclusion")->lhs == inc(ck, 1));
    CHECK(s.find("inclusion")->rhs == tangle_T(Colour::num(k + 1), k));
    CHECK(s.find("depth")->rhs == s.find("inclusion")->rhs);
    CHECK(s.find("multiplication")->lhs == mult(ck, ck, ck));
    CHECK(s.find("cond-exp")->lhs == cond_exp(k));
    CHECK(s.find("shift")->rhs == tangle_T(Colour::num(k + 2), k));
    CHECK(s.find("modulus-0+-remove")->lhs ==
          circle_disc(Colour::zero_plus()));
    CHECK(s.find("modulus-0--insert")->rhs ==
          circle_disc(Colour::zero_minus()));
    CHECK(s.find("jones-1") == nullptr);
    for (int n = 2; n <= k; ++n) {
      const Template* j = s.find("jones-" + std::to_string(n));
      REQUIRE(j != nullptr);
      CHECK(j->lhs.boxless());
      CHECK(j->lhs == e_gen(k, n - 1));
      CHECK(j->rhs == inc(ck, 0));
    }
    CHECK(s.find("jones-" + std::to_string(k + 1)) == nullptr);
  }
}

TEST_CASE("reflexivity script is valid") {
  TemplateSet ax = basic_templates(2);
  Derivation d;
  d.name = "refl";
  d.steps.push_back(Step::make_reflexivity(inc(Colour::num(2), 0)));
  CheckResult r = check_derivation(ax, d);
  REQUIRE(r.ok);
  CHECK(r.conclusion().lhs == inc(Colour::num(2), 0));
  CHECK(r.conclusion().rhs == inc(Colour::num(2), 0));
}

TEST_CASE("empty script is not a derivation") {
  CheckResult r = check_derivation(basic_templates(1), Derivation{});
  CHECK_FALSE(r.ok);
}

TEST_CASE("unit derives the one-box template") {
  CheckOptions audit;
  audit.audit_remove_loop = true;
  for (int k = 1; k <= 3; ++k) {
    Colour ck = Colour::num(k);
    CheckResult r = check_derivation(basic_templates(k), item_one_script(k),
                                     audit);
    for (const auto& rep : r.reports) INFO(rep.message);
    REQUIRE(r.ok);
    CHECK(r.conclusion().lhs == unit(ck));
    CHECK(r.conclusion().rhs == inc(ck, 0));

    // the capped depth axiom really is the unit next to a free loop
    REQUIRE(r.produced[1].has_value());
    CHECK(r.produced[1]->lhs.circle_count() == 1);
    CHECK(r.produced[1]->lhs.has_removable_loop());
    CHECK(r.produced[1]->lhs.remove_contractible_loop() == unit(ck));
  }
}

TEST_CASE("transitivity rejects mismatched middles") {
  TemplateSet ax = basic_templates(2);
  Derivation d;
  d.steps.push_back(Step::make_axiom("identity"));
  d.steps.push_back(Step::make_axiom("depth"));
  d.steps.push_back(Step::make_transitivity(0, 1));
  d.steps.push_back(Step::make_axiom("identity"));
  CheckResult r = check_derivation(ax, d);
  REQUIRE_FALSE(r.ok);
  CHECK(r.reports[0].ok);
  CHECK(r.reports[1].ok);
  REQUIRE_FALSE(r.reports[2].ok);
  CHECK(r.reports[2].message.find("middle tangles differ") !=
        std::string::npos);
  // both offending canonical codes are quoted
  CHECK(r.reports[2].message.find(ax.find("identity")->rhs.canonical_form()) !=
        std::string::npos);
  CHECK(r.reports[2].message.find(ax.find("depth")->lhs.canonical_form()) !=
        std::string::npos);
  CHECK_FALSE(r.produced[2].has_value());
  CHECK(r.reports[3].message.find("skipped") != std::string::npos);
}

TEST_CASE("compose colour mismatch is a step failure") {
  TemplateSet ax = basic_templates(2);
  Derivation d;
  d.steps.push_back(Step::make_axiom("identity"));  // colour 2 sides
  d.steps.push_back(Step::make_compose(er(Colour::num(2), 1), {{1, 0}}));
  CheckResult r = check_derivation(ax, d);
  REQUIRE_FALSE(r.ok);
  CHECK(r.reports[0].ok);
  CHECK_FALSE(r.reports[1].ok);
}

TEST_CASE("remove loop requires a removable loop") {
  TemplateSet ax = basic_templates(2);
  Derivation d;
  d.steps.push_back(Step::make_axiom("identity"));
  d.steps.push_back(Step::make_remove_loop(0));
  CheckResult r = check_derivation(ax, d);
  REQUIRE_FALSE(r.ok);
  CHECK(r.reports[1].message.find("no removable loop") != std::string::npos);
}

TEST_CASE("rewrite rejects non-isotopic replacements") {
  TemplateSet ax = basic_templates(2);
  Derivation d;
  d.steps.push_back(Step::make_axiom("identity"));
  d.steps.push_back(Step::make_rewrite(0, Step::Side::Rhs,
                                       mult(Colour::num(2), Colour::num(2),
                                            Colour::num(2))));
  CheckResult r = check_derivation(ax, d);
  REQUIRE_FALSE(r.ok);
  CHECK(r.reports[1].message.find("not isotopic") != std::string::npos);
  CHECK(r.reports[1].message.find(ax.find("identity")->rhs.canonical_form()) !=
        std::string::npos);
}

TEST_CASE("unknown axiom and bad indices fail cleanly") {
  TemplateSet ax = basic_templates(1);
  {
    Derivation d;
    d.steps.push_back(Step::make_axiom("nonsense"));
    CheckResult r = check_derivation(ax, d);
    REQUIRE_FALSE(r.ok);
    CHECK(r.reports[0].message.find("unknown axiom") != std::string::npos);
  }
  {
    Derivation d;
    d.steps.push_back(Step::make_axiom("identity"));
    d.steps.push_back(Step::make_transitivity(0, 5));
    CheckResult r = check_derivation(ax, d);
    REQUIRE_FALSE(r.ok);
    CHECK(r.reports[1].message.find("bad premise") != std::string::npos);
  }
}

TEST_CASE("nested loops unwind one at a time under audit") {
  Colour zp = Colour::zero_plus();
  TangleBuilder b(zp);
  b.circle(Anchor{0, 0});
  b.circle(Anchor{-1, 1});
  PlanarTangle nested = b.build();

  CheckOptions audit;
  audit.audit_remove_loop = true;
  Derivation d;
  d.steps.push_back(Step::make_reflexivity(nested));
  d.steps.push_back(Step::make_remove_loop(0));
  d.steps.push_back(Step::make_remove_loop(1));
  CheckResult r = check_derivation(basic_templates(2), d, audit);
  for (const auto& rep : r.reports) INFO(rep.message);
  REQUIRE(r.ok);
  CHECK(r.produced[1]->lhs.circle_count() == 1);
  CHECK(r.conclusion().lhs == unit(zp));
  CHECK(r.conclusion().rhs == nested);
}

TEST_CASE("rpb span has one row per labelling tuple") {
  ConcreteInstance P = ConcreteInstance::generic_tl();
  Colour c2 = Colour::num(2);
  auto B = full_basis(P, c2);
  REQUIRE(B.size() == 2);

  Matrix m0 = rpb_span(P, B, unit(c2));
  CHECK(m0.rows() == 1);
  CHECK(m0.cols() == P.dim(c2));

  Matrix m1 = rpb_span(P, B, inc(c2, 0));
  CHECK(m1.rows() == 2);
  CHECK(m1.rank() == P.dim(c2));  // one free box spans everything

  Matrix m2 = rpb_span(P, B, mult(c2, c2, c2));
  CHECK(m2.rows() == 4);
  // row 1 is the labelling (B0, B1), first box most significant
  std::vector<Scalar> want =
      P.coords(P.evaluate_elements(mult(c2, c2, c2), {{1, B[0]}, {2, B[1]}}));
  for (std::size_t c = 0; c < m2.cols(); ++c) CHECK(m2.at(1, c) == want[c]);
}

TEST_CASE("basic templates hold on finite-depth quotients") {
  for (int m : {3, 4, 5}) {
    int k = m - 2;
    ConcreteInstance P = ConcreteInstance::quotient_tl(m);
    auto B = full_basis(P, Colour::num(k));
    for (const Template& t : basic_templates(k).templates) {
      INFO(P.name() << " k=" << k << " template " << t.name);
      CHECK(holds_for(P, B, t));
    }
  }
}

TEST_CASE("depth template fails on the generic instance") {
  ConcreteInstance P = ConcreteInstance::generic_tl();
  for (int k : {1, 2}) {
    auto B = full_basis(P, Colour::num(k));
    TemplateSet s = basic_templates(k);
    CHECK_FALSE(holds_for(P, B, *s.find("depth")));
    CHECK(holds_for(P, B, *s.find("identity")));
    CHECK(holds_for(P, B, *s.find("multiplication")));
    CHECK(holds_for(P, B, *s.find("cond-exp")));
  }
}

TEST_CASE("every step of a valid script is sound on quotients") {
  for (int m : {3, 4}) {
    int k = m - 2;
    ConcreteInstance P = ConcreteInstance::quotient_tl(m);
    auto B = full_basis(P, Colour::num(k));
    CheckResult r = check_derivation(basic_templates(k), item_one_script(k));
    REQUIRE(r.ok);
    for (std::size_t i = 0; i < r.produced.size(); ++i) {
      INFO("m=" << m << " step " << i);
      CHECK(holds_for(P, B, *r.produced[i]));
    }
  }
}
