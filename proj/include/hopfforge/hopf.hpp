#pragma once

#include <string>
#include <vector>

#include "hopfforge/matrix.hpp"

namespace hopfforge {

/** Sparse vector over the basis, terms sorted by index, no explicit zeros. */
struct SparseVec {
  std::vector<std::pair<long, CycloNumber>> terms;

  static SparseVec basis(long i, CycloNumber c = CycloNumber(1));
  void add_term(long i, const CycloNumber& c);
  SparseVec& axpy(const CycloNumber& c, const SparseVec& o);
  SparseVec scaled(const CycloNumber& c) const;
  CycloNumber coeff(long i) const;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const SparseVec& o) const { return terms == o.terms; }
  bool operator!=(const SparseVec& o) const { return !(*this == o); }
  std::vector<CycloNumber> dense(long dim) const;
  static SparseVec from_dense(const std::vector<CycloNumber>& v);
};

SparseVec operator+(const SparseVec& a, const SparseVec& b);
SparseVec operator-(const SparseVec& a, const SparseVec& b);

/** Element of A tensor A; index of b_i (x) b_j is i*dim + j. */
struct TensorElement {
  long dim = 0;
  SparseVec v;
  bool operator==(const TensorElement& o) const {
    return dim == o.dim && v == o.v;
  }
  bool operator!=(const TensorElement& o) const { return !(*this == o); }
};

/** Element of A tensor A tensor A; index is (i*dim + j)*dim + k. */
struct TensorCube {
  long dim = 0;
  SparseVec v;
  bool operator==(const TensorCube& o) const {
    return dim == o.dim && v == o.v;
  }
};

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct Report {
  std::vector<Check> checks;
  bool all_pass() const;
  std::string first_failure() const;
  void add(const std::string& name, bool pass, const std::string& witness);
};

/**
 * Finite-dimensional Hopf algebra as exact structure-constant tables over
 * the cyclotomic field. mult[i][j] is b_i * b_j; comult[i] is Delta(b_i);
 * antipode[j] is S(b_j). Nothing is assumed about the tables until
 * verify_hopf_axioms has passed.
 */
struct HopfStructure {
  long dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<std::vector<SparseVec>> mult;
  SparseVec unit;
  std::vector<TensorElement> comult;
  std::vector<CycloNumber> counit;
  std::vector<SparseVec> antipode;

  SparseVec mul(const SparseVec& a, const SparseVec& b) const;
  TensorElement delta(const SparseVec& a) const;
  CycloNumber eps(const SparseVec& a) const;
  SparseVec apply_antipode(const SparseVec& a) const;

  TensorElement tensor_of(const SparseVec& a, const SparseVec& b) const;
  TensorElement tmul(const TensorElement& a, const TensorElement& b) const;
  TensorCube cmul(const TensorCube& a, const TensorCube& b) const;
  TensorCube r12(const TensorElement& r) const;
  TensorCube r13(const TensorElement& r) const;
  TensorCube r23(const TensorElement& r) const;
  static TensorElement flip(const TensorElement& r);
  // (Delta (x) id) and (id (x) Delta) applied to a two-leg tensor.
  TensorCube delta_left(const TensorElement& r) const;
  TensorCube delta_right(const TensorElement& r) const;

  std::string describe(const SparseVec& v) const;
  std::string describe_tensor(const TensorElement& t) const;
};

// Exhaustive basis-level verification of all Hopf axioms: associativity,
// unit, coassociativity, counit, Delta and eps are algebra maps, and both
// antipode identities. Witnesses name the first failing basis indices.
Report verify_hopf_axioms(const HopfStructure& h);

// Dual Hopf algebra on the dual basis (structure tensors transposed).
HopfStructure dual_hopf(const HopfStructure& h);
// Same algebra with reversed comultiplication; antipode becomes S^{-1}.
HopfStructure cop_flip(const HopfStructure& h);

bool is_grouplike(const HopfStructure& h, const SparseVec& x);

// Basis of P_{g,h} = {x : Delta(x) = x (x) g + h (x) x} in canonical RREF.
// g and h must be grouplike.
std::vector<SparseVec> skew_primitive_space(const HopfStructure& h,
                                            const SparseVec& g,
                                            const SparseVec& hh);

struct CoradicalReport {
  std::vector<SparseVec> basis;  // of A_1 = Delta^{-1}(A (x) A_0 + A_0 (x) A)
  long dim = 0;
  long expected_dim = 0;  // |G(A)| + sum of dim P'_{g,h} over ordered pairs
  std::vector<std::vector<long>> pair_dims;  // dim P_{g,h} per grouplike pair
  Report checks;
};

// First coradical filtration level relative to the span of the supplied
// grouplikes, with the multiplicity decomposition check.
CoradicalReport coradical_level1(const HopfStructure& h,
                                 const std::vector<SparseVec>& grouplikes);

}  // namespace hopfforge
