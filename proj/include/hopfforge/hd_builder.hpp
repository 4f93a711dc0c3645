#pragma once

#include <map>
#include <variant>

#include "hopfforge/abgroup.hpp"
#include "hopfforge/hopf.hpp"

namespace hopfforge {

/**
 * Input datum: a finite abelian group, a valid skew form on it, and
 * multiplicities n_g for g in I_F = {g : F(g,g) = -1}. Missing keys mean 0;
 * explicit zero values are dropped on validation.
 */
struct Datum {
  FiniteAbelianGroup group;
  SkewForm form;
  std::map<GroupElement, long> n;

  long n_of(const GroupElement& g) const {
    auto it = n.find(g);
    return it == n.end() ? 0 : it->second;
  }
};

struct DatumReport {
  Report checks;
  long dimension = 0;   // |G| * 2^(sum n_g), saturating
  bool feasible = true; // n_g = n_{g^{-1}} for all g
  bool valid() const { return checks.all_pass(); }
};

DatumReport validate_datum(const Datum& d);

/** One generating symbol x_{g,index}, graded by g, index in [1, n_g]. */
struct GeneratorSymbol {
  GroupElement grade;
  long index = 1;
  bool operator==(const GeneratorSymbol& o) const {
    return grade == o.grade && index == o.index;
  }
  bool operator<(const GeneratorSymbol& o) const {
    return grade != o.grade ? grade < o.grade : index < o.index;
  }
};

/** Basis label: group element times a strictly increasing symbol wedge. */
struct HDBasisLabel {
  GroupElement group_part;
  std::vector<long> wedge;  // global symbol ids, strictly increasing
  bool operator==(const HDBasisLabel& o) const {
    return group_part == o.group_part && wedge == o.wedge;
  }
  bool operator<(const HDBasisLabel& o) const {
    return group_part != o.group_part ? group_part < o.group_part
                                      : wedge < o.wedge;
  }
};

using WordLetter = std::variant<GroupElement, GeneratorSymbol>;

/** Scalar multiple of a single basis label; coeff 0 encodes the zero word. */
struct NormalTerm {
  CycloNumber coeff;
  HDBasisLabel label;
};

// Global symbol order: by (grade in enumeration order, index).
std::vector<GeneratorSymbol> datum_symbols(const Datum& d);

// Rewrites an arbitrary word of group elements and symbols into coeff *
// (group element, increasing wedge) using xa = F(a,g) ax, xy = F(h,g) yx and
// x^2 = 0. The rewriting system is confluent, so the result is independent
// of rewrite order; tests check this against a randomized rewriter.
NormalTerm normalize_word(const Datum& d, const std::vector<WordLetter>& word,
                          const CycloNumber& coeff = CycloNumber(1));

/** H(D) together with its construction metadata. */
struct HDAlgebra {
  Datum datum;
  HopfStructure hopf;
  std::vector<GeneratorSymbol> symbols;  // global order; id = position
  std::vector<HDBasisLabel> labels;      // per basis index

  long label_index(const HDBasisLabel& l) const;
  long group_label(const GroupElement& a) const;  // index of (a, empty)
  long symbol_label(long sym_id) const;           // index of (1, {x_sym})
  std::vector<long> grouplike_indices() const;
  std::vector<SparseVec> grouplike_elements() const;

 private:
  friend HDAlgebra build_hd(const Datum&, long);
  std::map<HDBasisLabel, long> index_;
};

// Builds H(D) as structure-constant tables and verifies every Hopf axiom on
// the result. Throws InputError on invalid datum, BoundExceeded when the
// dimension exceeds max_dim.
HDAlgebra build_hd(const Datum& d, long max_dim = 64);

// Group algebra k[G]: basis = group elements in enumeration order.
HopfStructure group_algebra(const FiniteAbelianGroup& g);

struct BiproductResult {
  HopfStructure group_hopf;       // k[G]
  CycloMat pi;                    // |G| x dim, the Hopf projection
  std::vector<SparseVec> b_basis; // invariants B, canonical RREF basis
  Report checks;
};

// pi(a w) = a when the wedge is empty, else 0; B = {x : (id (x) pi)Delta(x)
// = x (x) 1}. Checks: pi is a Hopf map splitting the inclusion, dim B =
// 2^(sum n_g), B meets k[G] in scalars, and mult: B (x) k[G] -> H(D) is a
// linear isomorphism.
BiproductResult projection_and_biproduct(const HDAlgebra& hd);

}  // namespace hopfforge
