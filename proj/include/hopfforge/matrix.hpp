#pragma once

#include <optional>
#include <vector>

#include "hopfforge/cyclo.hpp"

namespace hopfforge {

/**
 * Dense matrix over the cyclotomic field with exact elimination.
 *
 * Pivot policy is fixed for determinism: columns are scanned left to right
 * and the first row with a nonzero entry is the pivot. Kernel bases use the
 * standard free-column pattern, so equal subspaces yield equal output.
 */
class CycloMat {
 public:
  CycloMat() = default;
  CycloMat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static CycloMat identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  CycloNumber& at(long i, long j) { return a_[i * cols_ + j]; }
  const CycloNumber& at(long i, long j) const { return a_[i * cols_ + j]; }

  CycloMat operator*(const CycloMat& o) const;
  CycloMat transpose() const;
  bool operator==(const CycloMat& o) const;

  std::vector<CycloNumber> apply(const std::vector<CycloNumber>& v) const;

  struct Echelon;
  Echelon rref() const;
  long rank() const;
  CycloNumber det() const;  // square only
  // Basis of the right kernel, one vector per free column, ascending.
  std::vector<std::vector<CycloNumber>> kernel_basis() const;
  std::optional<CycloMat> inverse() const;  // square only
  // One solution of A*x = b, if consistent.
  std::optional<std::vector<CycloNumber>> solve(
      const std::vector<CycloNumber>& b) const;

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<CycloNumber> a_;
};

struct CycloMat::Echelon {
  CycloMat m;
  std::vector<long> pivot_cols;
  long rank = 0;
};

inline long CycloMat::rank() const { return rref().rank; }

/**
 * Subspace of k^dim kept in reduced row echelon form. RREF of a subspace is
 * unique, so two Subspaces are equal iff their basis rows are equal,
 * independent of insertion order.
 */
class Subspace {
 public:
  explicit Subspace(long dim) : dim_(dim) {}

  long dim() const { return static_cast<long>(rows_.size()); }
  long ambient_dim() const { return dim_; }
  const std::vector<std::vector<CycloNumber>>& basis() const { return rows_; }

  // Inserts v; returns true if the dimension grew.
  bool insert(std::vector<CycloNumber> v);
  bool contains(const std::vector<CycloNumber>& v) const;
  // Residual of v after reduction by the basis.
  std::vector<CycloNumber> reduce(std::vector<CycloNumber> v) const;
  bool operator==(const Subspace& o) const;

  static Subspace intersection(const Subspace& a, const Subspace& b);

 private:
  long dim_;
  std::vector<std::vector<CycloNumber>> rows_;  // RREF, sorted by pivot
  std::vector<long> pivots_;
};

}  // namespace hopfforge
