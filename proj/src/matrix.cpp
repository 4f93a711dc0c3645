#include "hopfforge/matrix.hpp"

#include <algorithm>

namespace hopfforge {

CycloMat CycloMat::identity(long n) {
  CycloMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = CycloNumber(1);
  return m;
}

CycloMat CycloMat::operator*(const CycloMat& o) const {
  CycloMat r(rows_, o.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      const CycloNumber& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (long j = 0; j < o.cols_; ++j) {
        const CycloNumber& bkj = o.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

CycloMat CycloMat::transpose() const {
  CycloMat r(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool CycloMat::operator==(const CycloMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::vector<CycloNumber> CycloMat::apply(
    const std::vector<CycloNumber>& v) const {
  std::vector<CycloNumber> out(rows_);
  for (long j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (long i = 0; i < rows_; ++i) {
      const CycloNumber& aij = at(i, j);
      if (!aij.is_zero()) out[i] += aij * v[j];
    }
  }
  return out;
}

CycloMat::Echelon CycloMat::rref() const {
  Echelon e;
  e.m = *this;
  long r = 0;
  for (long c = 0; c < cols_ && r < rows_; ++c) {
    long piv = -1;
    for (long i = r; i < rows_; ++i)
      if (!e.m.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = 0; j < cols_; ++j) std::swap(e.m.at(r, j), e.m.at(piv, j));
    CycloNumber inv = e.m.at(r, c).inverse();
    for (long j = c; j < cols_; ++j) e.m.at(r, j) *= inv;
    for (long i = 0; i < rows_; ++i) {
      if (i == r || e.m.at(i, c).is_zero()) continue;
      CycloNumber f = e.m.at(i, c);
      for (long j = c; j < cols_; ++j) e.m.at(i, j) -= f * e.m.at(r, j);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

CycloNumber CycloMat::det() const {
  if (rows_ != cols_) throw std::logic_error("det: square matrices only");
  CycloMat m = *this;
  CycloNumber d(1);
  for (long c = 0; c < cols_; ++c) {
    long piv = -1;
    for (long i = c; i < rows_; ++i)
      if (!m.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return CycloNumber(0);
    if (piv != c) {
      for (long j = 0; j < cols_; ++j) std::swap(m.at(c, j), m.at(piv, j));
      d = -d;
    }
    d *= m.at(c, c);
    CycloNumber inv = m.at(c, c).inverse();
    for (long i = c + 1; i < rows_; ++i) {
      if (m.at(i, c).is_zero()) continue;
      CycloNumber f = m.at(i, c) * inv;
      for (long j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

std::vector<std::vector<CycloNumber>> CycloMat::kernel_basis() const {
  Echelon e = rref();
  std::vector<bool> is_pivot(cols_, false);
  for (long c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<CycloNumber>> basis;
  for (long f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<CycloNumber> v(cols_);
    v[f] = CycloNumber(1);
    for (long i = 0; i < e.rank; ++i)
      v[e.pivot_cols[i]] = -e.m.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<CycloMat> CycloMat::inverse() const {
  if (rows_ != cols_) throw std::logic_error("inverse: square matrices only");
  CycloMat aug(rows_, 2 * cols_);
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = CycloNumber(1);
  }
  Echelon e = aug.rref();
  if (e.rank != rows_) return std::nullopt;
  for (long i = 0; i < rows_; ++i)
    if (e.pivot_cols[i] != i) return std::nullopt;
  CycloMat inv(rows_, cols_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) inv.at(i, j) = e.m.at(i, cols_ + j);
  return inv;
}

std::optional<std::vector<CycloNumber>> CycloMat::solve(
    const std::vector<CycloNumber>& b) const {
  CycloMat aug(rows_, cols_ + 1);
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  Echelon e = aug.rref();
  for (long c : e.pivot_cols)
    if (c == cols_) return std::nullopt;  // inconsistent
  std::vector<CycloNumber> x(cols_);
  for (long i = 0; i < e.rank; ++i) x[e.pivot_cols[i]] = e.m.at(i, cols_);
  return x;
}

bool Subspace::insert(std::vector<CycloNumber> v) {
  v = reduce(std::move(v));
  long p = -1;
  for (long i = 0; i < dim_; ++i)
    if (!v[i].is_zero()) {
      p = i;
      break;
    }
  if (p < 0) return false;
  CycloNumber inv = v[p].inverse();
  for (long i = p; i < dim_; ++i) v[i] *= inv;
  // Keep full RREF: clear column p in existing rows.
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r][p].is_zero()) continue;
    CycloNumber f = rows_[r][p];
    for (long i = p; i < dim_; ++i) rows_[r][i] -= f * v[i];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  size_t idx = static_cast<size_t>(pos - pivots_.begin());
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

std::vector<CycloNumber> Subspace::reduce(std::vector<CycloNumber> v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    long p = pivots_[r];
    if (v[p].is_zero()) continue;
    CycloNumber f = v[p];
    for (long i = p; i < dim_; ++i) v[i] -= f * rows_[r][i];
  }
  return v;
}

bool Subspace::contains(const std::vector<CycloNumber>& v) const {
  std::vector<CycloNumber> r = reduce(v);
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return dim_ == o.dim_ && rows_ == o.rows_;
}

Subspace Subspace::intersection(const Subspace& a, const Subspace& b) {
  // Columns: basis of a, then negated basis of b; kernel combinations give
  // the intersection vectors.
  long ka = a.dim(), kb = b.dim();
  Subspace out(a.dim_);
  if (ka == 0 || kb == 0) return out;
  CycloMat m(a.dim_, ka + kb);
  for (long j = 0; j < ka; ++j)
    for (long i = 0; i < a.dim_; ++i) m.at(i, j) = a.rows_[j][i];
  for (long j = 0; j < kb; ++j)
    for (long i = 0; i < a.dim_; ++i) m.at(i, ka + j) = -b.rows_[j][i];
  for (const auto& k : m.kernel_basis()) {
    std::vector<CycloNumber> v(a.dim_);
    for (long j = 0; j < ka; ++j)
      if (!k[j].is_zero())
        for (long i = 0; i < a.dim_; ++i) v[i] += k[j] * a.rows_[j][i];
    out.insert(std::move(v));
  }
  return out;
}

}  // namespace hopfforge
