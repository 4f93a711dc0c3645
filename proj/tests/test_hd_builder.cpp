#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "hopfforge/errors.hpp"
#include "hopfforge/hd_builder.hpp"

using namespace hopfforge;

namespace {

Datum sweedler_datum(long m = 1) {
  Datum d;
  d.group = FiniteAbelianGroup{{2}};
  d.form = SkewForm{d.group, 2, {{1}}};
  if (m > 0) d.n[GroupElement{{1}}] = m;
  return d;
}

Datum z22_datum() {
  Datum d;
  d.group = FiniteAbelianGroup{{2, 2}};
  d.form = SkewForm{d.group, 2, {{1, 1}, {1, 0}}};
  d.n[GroupElement{{1, 0}}] = 1;
  d.n[GroupElement{{1, 1}}] = 1;
  return d;
}

Datum z44_datum(bool paired) {
  Datum d;
  d.group = FiniteAbelianGroup{{4, 4}};
  d.form = SkewForm{d.group, 4, {{2, 1}, {3, 2}}};
  d.n[GroupElement{{1, 0}}] = 1;
  if (paired) d.n[GroupElement{{3, 0}}] = 1;
  return d;
}

// Random-order rewriter, independent of normalize_word. Applies one local
// rule at a time, picked uniformly among all applicable positions:
//   a b        -> (ab)                 adjacent group letters merge
//   x a        -> F(a, g) a x          symbol moves right past a group letter
//   x x        -> 0                    equal symbols annihilate
//   x y (y<x)  -> F(h, g) y x          out-of-order symbols swap
// Terminates because every rule lowers (group letters to the right of a
// symbol, symbol inversions, length).
struct OracleResult {
  CycloNumber coeff;
  GroupElement group_part;
  std::vector<long> wedge;
};

OracleResult oracle_normalize(const Datum& d, std::vector<WordLetter> word,
                              std::mt19937_64& rng) {
  auto symbols = datum_symbols(d);
  auto sym_id = [&](const GeneratorSymbol& s) {
    for (size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i] == s) return static_cast<long>(i);
    REQUIRE(false);
    return -1L;
  };
  CycloNumber coeff(1);
  for (int guard = 0; guard < 100000; ++guard) {
    std::vector<size_t> sites;
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      const WordLetter &l = word[i], &r = word[i + 1];
      if (std::holds_alternative<GroupElement>(l) &&
          std::holds_alternative<GroupElement>(r)) {
        sites.push_back(i);
      } else if (std::holds_alternative<GeneratorSymbol>(l) &&
                 std::holds_alternative<GroupElement>(r)) {
        sites.push_back(i);
      } else if (std::holds_alternative<GeneratorSymbol>(l) &&
                 std::holds_alternative<GeneratorSymbol>(r)) {
        if (sym_id(std::get<GeneratorSymbol>(l)) >=
            sym_id(std::get<GeneratorSymbol>(r)))
          sites.push_back(i);
      }
    }
    if (sites.empty()) break;
    size_t i = sites[rng() % sites.size()];
    WordLetter l = word[i], r = word[i + 1];
    if (std::holds_alternative<GroupElement>(l)) {
      GroupElement merged =
          d.group.mul(std::get<GroupElement>(l), std::get<GroupElement>(r));
      word.erase(word.begin() + i, word.begin() + i + 2);
      word.insert(word.begin() + i, merged);
      continue;
    }
    GeneratorSymbol x = std::get<GeneratorSymbol>(l);
    if (std::holds_alternative<GroupElement>(r)) {
      GroupElement a = std::get<GroupElement>(r);
      coeff *= d.form.eval(a, x.grade);
      word[i] = a;
      word[i + 1] = x;
      continue;
    }
    GeneratorSymbol y = std::get<GeneratorSymbol>(r);
    if (sym_id(x) == sym_id(y))
      return {CycloNumber(), d.group.identity(), {}};
    coeff *= d.form.eval(y.grade, x.grade);
    word[i] = y;
    word[i + 1] = x;
  }
  OracleResult out{coeff, d.group.identity(), {}};
  for (const auto& letter : word) {
    if (std::holds_alternative<GroupElement>(letter))
      out.group_part =
          d.group.mul(out.group_part, std::get<GroupElement>(letter));
    else
      out.wedge.push_back(sym_id(std::get<GeneratorSymbol>(letter)));
  }
  return out;
}

// Hand tables for H of the Sweedler datum in the order {1, g, x, gx}, the
// same fixture test_hopf.cpp uses. perm maps builder index -> hand index.
HopfStructure hand_sweedler() {
  HopfStructure h;
  h.dim = 4;
  auto b = [](long i, long c = 1) {
    SparseVec v;
    v.add_term(i, CycloNumber(c));
    return v;
  };
  h.basis_labels = {"1", "g", "x", "gx"};
  h.mult.assign(4, std::vector<SparseVec>(4));
  for (long j = 0; j < 4; ++j) h.mult[0][j] = b(j);
  for (long i = 1; i < 4; ++i) h.mult[i][0] = b(i);
  h.mult[1][1] = b(0);
  h.mult[1][2] = b(3);
  h.mult[1][3] = b(2);
  h.mult[2][1] = b(3, -1);
  h.mult[3][1] = b(2, -1);
  h.unit = b(0);
  auto t = [](std::initializer_list<std::pair<long, long>> terms) {
    TensorElement r;
    r.dim = 4;
    for (auto [i, c] : terms) r.v.add_term(i, CycloNumber(c));
    return r;
  };
  h.comult = {t({{0, 1}}), t({{5, 1}}), t({{8, 1}, {6, 1}}),
              t({{13, 1}, {3, 1}})};
  h.counit = {CycloNumber(1), CycloNumber(1), CycloNumber(), CycloNumber()};
  h.antipode = {b(0), b(1), b(3, -1), b(2)};
  return h;
}

SparseVec relabel(const SparseVec& v, const std::vector<long>& p) {
  SparseVec out;
  for (const auto& [i, c] : v.terms) out.add_term(p[i], c);
  return out;
}

TensorElement relabel2(const TensorElement& t, const std::vector<long>& p) {
  TensorElement out;
  out.dim = t.dim;
  for (const auto& [ij, c] : t.v.terms)
    out.v.add_term(p[ij / t.dim] * t.dim + p[ij % t.dim], c);
  return out;
}

}  // namespace

TEST_CASE("datum validation computes dimension and feasibility") {
  DatumReport r = validate_datum(sweedler_datum());
  CHECK(r.valid());
  CHECK(r.dimension == 4);
  CHECK(r.feasible);

  CHECK(validate_datum(sweedler_datum(0)).dimension == 2);
  CHECK(validate_datum(sweedler_datum(2)).dimension == 8);
  CHECK(validate_datum(sweedler_datum(3)).dimension == 16);
  CHECK(validate_datum(z22_datum()).dimension == 16);
  CHECK(validate_datum(z22_datum()).feasible);

  DatumReport half = validate_datum(z44_datum(false));
  CHECK(half.valid());
  CHECK(half.dimension == 32);
  CHECK(!half.feasible);  // n_g != n_{g^{-1}} at g = (1,0)

  DatumReport full = validate_datum(z44_datum(true));
  CHECK(full.valid());
  CHECK(full.dimension == 64);
  CHECK(full.feasible);
}

TEST_CASE("datum validation rejects bad multiplicities") {
  Datum d = sweedler_datum();
  d.n[GroupElement{{0}}] = 1;  // F(1,1) = 1, so the identity is outside I_F
  CHECK(!validate_datum(d).valid());

  Datum neg = sweedler_datum();
  neg.n[GroupElement{{1}}] = -1;
  CHECK(!validate_datum(neg).valid());

  Datum zero = sweedler_datum(0);
  zero.n[GroupElement{{1}}] = 0;  // explicit zero is allowed and dropped
  DatumReport r = validate_datum(zero);
  CHECK(r.valid());
  CHECK(r.dimension == 2);

  Datum badform = sweedler_datum();
  badform.form.e = {{0}};  // degenerate form invalidates the datum
  CHECK(!validate_datum(badform).valid());
}

TEST_CASE("normalize_word handles the canonical rewrites") {
  Datum d2 = sweedler_datum(2);
  GroupElement e{{0}}, g{{1}};
  GeneratorSymbol x1{g, 1}, x2{g, 2};

  NormalTerm t = normalize_word(d2, {x1, g});
  CHECK(t.coeff == CycloNumber(-1));
  CHECK(t.label == HDBasisLabel{g, {0}});

  CHECK(normalize_word(d2, {x1, x1}).coeff.is_zero());
  CHECK(normalize_word(d2, {x2, x1, x2}).coeff.is_zero());

  t = normalize_word(d2, {x2, x1});
  CHECK(t.coeff == CycloNumber(-1));
  CHECK(t.label == HDBasisLabel{e, {0, 1}});

  t = normalize_word(d2, {g, g});
  CHECK(t.coeff == CycloNumber(1));
  CHECK(t.label == HDBasisLabel{e, {}});

  t = normalize_word(d2, {});
  CHECK(t.coeff == CycloNumber(1));
  CHECK(t.label == HDBasisLabel{e, {}});

  t = normalize_word(d2, {g, x1, g});
  CHECK(t.coeff == CycloNumber(-1));
  CHECK(t.label == HDBasisLabel{e, {0}});

  // Scalar carried through.
  t = normalize_word(d2, {x1, g}, CycloNumber(3));
  CHECK(t.coeff == CycloNumber(-3));
}

TEST_CASE("normal forms agree with a random-order rewriter") {
  std::mt19937_64 rng(20260819);
  std::vector<Datum> data = {sweedler_datum(), sweedler_datum(2), z22_datum(),
                             z44_datum(true)};
  long zero_seen = 0, nonzero_seen = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Datum& d = data[trial % data.size()];
    auto symbols = datum_symbols(d);
    std::vector<WordLetter> word;
    size_t len = rng() % 7;
    for (size_t i = 0; i < len; ++i) {
      if (rng() % 5 < 2 || symbols.empty())
        word.push_back(d.group.element_at(rng() % d.group.order()));
      else
        word.push_back(symbols[rng() % symbols.size()]);
    }
    OracleResult expect = oracle_normalize(d, word, rng);
    NormalTerm got = normalize_word(d, word);
    if (expect.coeff.is_zero()) {
      ++zero_seen;
      CHECK(got.coeff.is_zero());
    } else {
      ++nonzero_seen;
      REQUIRE(got.coeff == expect.coeff);
      REQUIRE(got.label.group_part == expect.group_part);
      REQUIRE(got.label.wedge == expect.wedge);
    }
  }
  // The fuzz actually exercised both outcomes.
  CHECK(zero_seen > 500);
  CHECK(nonzero_seen > 3000);
}

TEST_CASE("building with empty multiplicities gives the group algebra") {
  HDAlgebra hd = build_hd(sweedler_datum(0));
  HopfStructure kg = group_algebra(FiniteAbelianGroup{{2}});
  CHECK(hd.hopf.dim == 2);
  CHECK(hd.hopf.mult == kg.mult);
  CHECK(hd.hopf.unit == kg.unit);
  for (long i = 0; i < 2; ++i) CHECK(hd.hopf.comult[i] == kg.comult[i]);
  CHECK(hd.hopf.counit == kg.counit);
  CHECK(hd.hopf.antipode == kg.antipode);
  CHECK(verify_hopf_axioms(kg).all_pass());
}

TEST_CASE("the built Sweedler algebra matches the hand tables") {
  HDAlgebra hd = build_hd(sweedler_datum());
  REQUIRE(hd.hopf.dim == 4);
  // Builder order: (1,{}), (1,{x}), (g,{}), (g,{x}); hand order 1,g,x,gx.
  std::vector<long> p = {0, 2, 1, 3};
  REQUIRE(hd.labels[0] == HDBasisLabel{GroupElement{{0}}, {}});
  REQUIRE(hd.labels[1] == HDBasisLabel{GroupElement{{0}}, {0}});
  REQUIRE(hd.labels[2] == HDBasisLabel{GroupElement{{1}}, {}});
  REQUIRE(hd.labels[3] == HDBasisLabel{GroupElement{{1}}, {0}});

  HopfStructure hand = hand_sweedler();
  for (long i = 0; i < 4; ++i) {
    for (long j = 0; j < 4; ++j)
      CHECK(relabel(hd.hopf.mult[i][j], p) == hand.mult[p[i]][p[j]]);
    CHECK(relabel2(hd.hopf.comult[i], p) == hand.comult[p[i]]);
    CHECK(hd.hopf.counit[i] == hand.counit[p[i]]);
    CHECK(relabel(hd.hopf.antipode[i], p) == hand.antipode[p[i]]);
  }
  CHECK(relabel(hd.hopf.unit, p) == hand.unit);

  CHECK(hd.label_index(HDBasisLabel{GroupElement{{1}}, {0}}) == 3);
  CHECK(hd.group_label(GroupElement{{1}}) == 2);
  CHECK(hd.symbol_label(0) == 1);
}

TEST_CASE("larger builds are Hopf and have the right coradical") {
  HDAlgebra h2 = build_hd(sweedler_datum(2));
  CHECK(h2.hopf.dim == 8);
  CHECK(h2.symbols.size() == 2);
  CHECK(verify_hopf_axioms(h2.hopf).all_pass());
  // x2 x1 = -x1 x2 in the algebra itself.
  long ix1 = h2.symbol_label(0), ix2 = h2.symbol_label(1);
  SparseVec prod = h2.hopf.mul(SparseVec::basis(ix2), SparseVec::basis(ix1));
  long ix12 = h2.label_index(HDBasisLabel{GroupElement{{0}}, {0, 1}});
  CHECK(prod == SparseVec::basis(ix12, CycloNumber(-1)));

  CoradicalReport cor =
      coradical_level1(h2.hopf, h2.grouplike_elements());
  CHECK(cor.checks.all_pass());
  CHECK(cor.dim == 6);
  CHECK(cor.expected_dim == 6);

  HDAlgebra z22 = build_hd(z22_datum());
  CHECK(z22.hopf.dim == 16);
  CHECK(verify_hopf_axioms(z22.hopf).all_pass());
}

TEST_CASE("dimension law holds across data") {
  struct Case {
    Datum d;
    long dim;
  };
  std::vector<Case> cases;
  for (long m = 0; m <= 3; ++m)
    cases.push_back({sweedler_datum(m), 2L << m});
  cases.push_back({z22_datum(), 16});
  Datum z22one = z22_datum();
  z22one.n.erase(GroupElement{{1, 1}});
  cases.push_back({z22one, 8});
  Datum z22diag;
  z22diag.group = FiniteAbelianGroup{{2, 2}};
  z22diag.form = SkewForm{z22diag.group, 2, {{1, 0}, {0, 1}}};
  z22diag.n[GroupElement{{0, 1}}] = 2;
  cases.push_back({z22diag, 16});
  cases.push_back({z44_datum(false), 32});
  cases.push_back({z44_datum(true), 64});
  Datum z22deep;
  z22deep.group = FiniteAbelianGroup{{2, 2}};
  z22deep.form = SkewForm{z22deep.group, 2, {{0, 1}, {1, 1}}};
  z22deep.n[GroupElement{{1, 1}}] = 3;  // F((1,1),(1,1)) = -1
  cases.push_back({z22deep, 32});
  cases.push_back({sweedler_datum(4), 32});
  CHECK(cases.size() >= 10);
  for (const auto& c : cases) {
    DatumReport r = validate_datum(c.d);
    CHECK(r.valid());
    CHECK(r.dimension == c.dim);
    if (c.dim <= 32) {
      HDAlgebra hd = build_hd(c.d, 64);
      CHECK(hd.hopf.dim == c.dim);
      CHECK(static_cast<long>(hd.labels.size()) == c.dim);
    }
  }
}

TEST_CASE("builder rejects bad input and oversized output") {
  Datum bad = sweedler_datum();
  bad.n[GroupElement{{0}}] = 1;
  CHECK_THROWS_AS(build_hd(bad), InputError);
  CHECK_THROWS_AS(build_hd(sweedler_datum(2), 4), BoundExceeded);
}

TEST_CASE("grouplikes of a build are exactly the group labels") {
  HDAlgebra hd = build_hd(sweedler_datum(2));
  auto idx = hd.grouplike_indices();
  REQUIRE(idx.size() == 2);
  for (long i : idx) CHECK(is_grouplike(hd.hopf, SparseVec::basis(i)));
  CHECK(!is_grouplike(hd.hopf, SparseVec::basis(hd.symbol_label(0))));
  // A sum of two distinct grouplikes is not grouplike.
  SparseVec s = SparseVec::basis(idx[0]) + SparseVec::basis(idx[1]);
  CHECK(!is_grouplike(hd.hopf, s));
}

TEST_CASE("biproduct splits each build") {
  struct Case {
    Datum d;
    long bdim;
  };
  for (const auto& c : {Case{sweedler_datum(0), 1}, Case{sweedler_datum(), 2},
                        Case{sweedler_datum(2), 4}, Case{z22_datum(), 4}}) {
    HDAlgebra hd = build_hd(c.d);
    BiproductResult bp = projection_and_biproduct(hd);
    INFO(bp.checks.first_failure());
    CHECK(bp.checks.all_pass());
    CHECK(static_cast<long>(bp.b_basis.size()) == c.bdim);
    Subspace span(hd.hopf.dim);
    for (const auto& v : bp.b_basis) span.insert(v.dense(hd.hopf.dim));
    // B always contains the unit and every symbol generator x (the wedge
    // labels with trivial group part are invariant under id (x) pi Delta).
    CHECK(span.contains(hd.hopf.unit.dense(hd.hopf.dim)));
    for (size_t s = 0; s < hd.symbols.size(); ++s)
      CHECK(span.contains(
          SparseVec::basis(hd.symbol_label(static_cast<long>(s)))
              .dense(hd.hopf.dim)));
  }
}
