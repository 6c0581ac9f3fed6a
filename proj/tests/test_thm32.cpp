#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skein/thm32.hpp"

using namespace skein;

namespace {

std::vector<TLElement> full_basis(const ConcreteInstance& P, Colour c) {
  std::vector<TLElement> b;
  for (std::size_t i = 0; i < P.dim(c); ++i) b.push_back(P.basis_element(c, i));
  return b;
}

// Structural fingerprint of a step, for determinism comparisons.
std::string step_sig(const Step& s) {
  std::ostringstream os;
  os << s.kind_str() << "|" << s.axiom << "|" << s.i << "," << s.j;
  if (s.tangle) os << "|t=" << s.tangle->canonical_form();
  if (s.host) os << "|h=" << s.host->canonical_form();
  for (const auto& [slot, p] : s.slots) os << "|" << slot << ":" << p;
  if (s.replacement) os << "|r=" << s.replacement->canonical_form();
  return os.str();
}

PlanarTangle add_loop(const PlanarTangle& t) {
  Colour c = t.external();
  PlanarTangle padded = PlanarTangle::compose(zoo::inc(c, 1), {{1, t}});
  return PlanarTangle::compose(zoo::er(c, 1), {{1, padded}});
}

bool proves(const TemplateSet& ax, const Derivation& d, const Template& st) {
  CheckResult res = check_derivation(ax, d);
  return res.ok && res.conclusion() == st;
}

}  // namespace

TEST_CASE("thm32 scripts validate and conclude their statements") {
  CheckOptions audit;
  audit.audit_remove_loop = true;
  for (int k : {1, 2, 3}) {
    int nmax = k + 4;
    std::vector<Thm32Entry> rows = thm32_scripts(k, nmax);
    TemplateSet ax = basic_templates(k);

    std::set<std::string> names;
    std::map<int, int> per_item;
    for (const Thm32Entry& row : rows) {
      INFO("k=" << k << " row " << row.name);
      REQUIRE(names.insert(row.name).second);
      ++per_item[row.item];
      REQUIRE(row.script.name == row.name);
      REQUIRE_FALSE(row.script.steps.empty());

      CheckResult res = check_derivation(ax, row.script, audit);
      for (const auto& rep : res.reports)
        if (!rep.ok) INFO(rep.message);
      REQUIRE(res.ok);
      CHECK(res.conclusion() == row.statement);
      CHECK(res.conclusion().lhs.canonical_form() ==
            row.statement.lhs.canonical_form());
      CHECK(res.conclusion().rhs.canonical_form() ==
            row.statement.rhs.canonical_form());
    }

    for (int item = 1; item <= 12; ++item) {
      INFO("k=" << k << " item " << item);
      CHECK(per_item[item] > 0);
    }
    // One row per admissible colour, two statements for item (5), four
    // diagram shapes for item (8), shaded rows where the statement admits
    // them.
    CHECK(per_item[1] == 1);
    CHECK(per_item[2] == 1);
    CHECK(per_item[3] == nmax + 1);
    CHECK(per_item[4] == nmax - k);
    CHECK(per_item[5] == 2 * (nmax - k + 1));
    CHECK(per_item[6] == nmax - k + 1);
    CHECK(per_item[7] == nmax + 1);
    CHECK(per_item[9] == nmax - k - 1);
    CHECK(per_item[10] == nmax);
    CHECK(per_item[11] == nmax + 1);
    CHECK(per_item[12] == nmax + 2);
    int reps8 = 0;  // unit + jones generators + a longer word (n >= 3) + loop
    for (int n = k; n <= nmax; ++n) reps8 += n + 1 + (n >= 3 ? 1 : 0);
    CHECK(per_item[8] == reps8);
  }
}

TEST_CASE("thm32 row inventory is frozen per depth") {
  CHECK(thm32_scripts(1, 5).size() == 77);
  CHECK(thm32_scripts(2, 6).size() == 88);
  CHECK(thm32_scripts(3, 7).size() == 99);
}

TEST_CASE("thm32 emission is deterministic") {
  std::vector<Thm32Entry> a = thm32_scripts(2, 6);
  std::vector<Thm32Entry> b = thm32_scripts(2, 6);
  REQUIRE(a.size() == b.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    INFO("row " << a[r].name);
    REQUIRE(a[r].name == b[r].name);
    REQUIRE(a[r].script.steps.size() == b[r].script.steps.size());
    for (std::size_t s = 0; s < a[r].script.steps.size(); ++s)
      CHECK(step_sig(a[r].script.steps[s]) == step_sig(b[r].script.steps[s]));
  }
}

TEST_CASE("thm32 rejects out-of-range parameters") {
  CHECK_THROWS_AS(thm32_scripts(0, 5), check_error);
  CHECK_THROWS_AS(thm32_scripts(2, 3), check_error);
}

TEST_CASE("tampered thm32 scripts are rejected") {
  TemplateSet ax = basic_templates(1);
  std::vector<Thm32Entry> rows = thm32_scripts(1, 5);

  SECTION("transitivity premise redirected") {
    for (Thm32Entry& row : rows) {
      bool done = false;
      for (Step& s : row.script.steps) {
        if (s.kind == Step::Kind::Transitivity && s.j > 0) {
          s.j = 0;
          done = true;
          break;
        }
      }
      if (!done) continue;
      CHECK_FALSE(proves(ax, row.script, row.statement));
      return;
    }
    FAIL("no transitivity step found to tamper with");
  }

  SECTION("axiom swapped for a different template") {
    Thm32Entry row = rows.front();
    for (Step& s : row.script.steps)
      if (s.kind == Step::Kind::Axiom && s.axiom == "depth")
        s.axiom = "identity";
    CHECK_FALSE(proves(ax, row.script, row.statement));
  }

  SECTION("truncated script misses the conclusion") {
    Thm32Entry row = rows.front();
    REQUIRE(row.script.steps.size() > 1);
    row.script.steps.pop_back();
    CHECK_FALSE(proves(ax, row.script, row.statement));
  }
}

TEST_CASE("item8 scripts absorb arbitrary boxless diagrams") {
  for (int k : {1, 2}) {
    TemplateSet ax = basic_templates(k);
    int n = k + 2;
    Colour cn = Colour::num(n);

    std::vector<PlanarTangle> qs;
    for (const PlanarTangle& d : tl_basis(cn)) qs.push_back(d);
    qs.push_back(add_loop(add_loop(zoo::jones_e(n))));
    qs.push_back(add_loop(zoo::unit(cn)));

    for (const PlanarTangle& q : qs) {
      INFO("k=" << k << " q=" << q.canonical_form());
      Derivation d = item8_script(k, q);
      CheckResult res = check_derivation(ax, d);
      REQUIRE(res.ok);
      CHECK(res.conclusion() == item8_statement(k, q));
      CHECK(res.conclusion().lhs == q);
      CHECK(res.conclusion().rhs == zoo::tangle_T(cn, k));
    }
  }
}

TEST_CASE("item8 rejects unusable diagrams") {
  CHECK_THROWS_AS(item8_script(2, zoo::inc(Colour::num(2), 0)), check_error);
  CHECK_THROWS_AS(item8_script(2, zoo::unit(Colour::num(1))), check_error);
  CHECK_THROWS_AS(item8_script(2, zoo::unit(Colour::zero_plus())), check_error);
}

// Empirical consequence soundness: wherever the quotient instance can
// afford the labelling sweep (external colours within its table, at most
// a few thousand rows a side), every concluded statement holds for (P, B).
TEST_CASE("thm32 conclusions hold on finite-depth quotients") {
  for (int m : {3, 4, 5}) {
    int k = m - 2;
    ConcreteInstance P = ConcreteInstance::quotient_tl(m);
    auto B = full_basis(P, Colour::num(k));
    std::size_t cap = m == 5 ? 700 : 1100;

    auto affordable = [&](const PlanarTangle& t) {
      Colour c = t.external();
      if (c.is_numeric() && c.n() > 6) return false;
      std::size_t rows = 1;
      for (std::size_t b = 0; b < t.boxes().size(); ++b) {
        rows *= B.size();
        if (rows > cap) return false;
      }
      return true;
    };

    int swept = 0;
    for (const Thm32Entry& row : thm32_scripts(k, k + 4)) {
      if (!affordable(row.statement.lhs) || !affordable(row.statement.rhs))
        continue;
      INFO(P.name() << " row " << row.name);
      CHECK(holds_for(P, B, row.statement));
      ++swept;
    }
    INFO("m=" << m);
    CHECK(swept >= 40);
  }
}
