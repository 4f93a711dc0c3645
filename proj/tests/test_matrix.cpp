#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hopfforge/matrix.hpp"

using namespace hopfforge;

namespace {

CycloNumber rnd_entry(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0: return CycloNumber();
    case 1: return CycloNumber(static_cast<long>(rng() % 7) - 3);
    case 2: return CycloNumber::root_of_unity(4, rng() % 4);
    case 3: return CycloNumber::root_of_unity(3, rng() % 3);
    default: {
      Rational r(static_cast<long>(rng() % 5) - 2, 1 + rng() % 3);
      r.canonicalize();
      return CycloNumber(r);
    }
  }
}

CycloMat rnd_mat(std::mt19937_64& rng, long rows, long cols) {
  CycloMat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m.at(i, j) = rnd_entry(rng);
  return m;
}

// Determinant by Leibniz permutation expansion. Independent of elimination.
CycloNumber det_oracle(const CycloMat& m) {
  long n = m.rows();
  std::vector<long> perm(n);
  for (long i = 0; i < n; ++i) perm[i] = i;
  CycloNumber total;
  do {
    long inv = 0;
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    CycloNumber term(inv % 2 ? -1 : 1);
    for (long i = 0; i < n; ++i) term *= m.at(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

bool is_zero_vec(const std::vector<CycloNumber>& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("determinant matches permutation expansion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    long n = 1 + static_cast<long>(rng() % 4);
    CycloMat m = rnd_mat(rng, n, n);
    CHECK(m.det() == det_oracle(m));
  }
  CHECK(CycloMat::identity(5).det() == CycloNumber(1));
}

TEST_CASE("rref yields pivots in strictly increasing columns") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    long rows = 1 + static_cast<long>(rng() % 5);
    long cols = 1 + static_cast<long>(rng() % 5);
    CycloMat m = rnd_mat(rng, rows, cols);
    auto e = m.rref();
    CHECK(e.rank == static_cast<long>(e.pivot_cols.size()));
    CHECK(e.rank <= std::min(rows, cols));
    for (size_t k = 0; k < e.pivot_cols.size(); ++k) {
      if (k) CHECK(e.pivot_cols[k - 1] < e.pivot_cols[k]);
      long pc = e.pivot_cols[k];
      // Pivot entry is 1 and is alone in its column.
      CHECK(e.m.at(static_cast<long>(k), pc).is_one());
      for (long i = 0; i < rows; ++i)
        if (i != static_cast<long>(k)) CHECK(e.m.at(i, pc).is_zero());
    }
    // Rows past the rank are zero.
    for (long i = e.rank; i < rows; ++i)
      for (long j = 0; j < cols; ++j) CHECK(e.m.at(i, j).is_zero());
  }
}

TEST_CASE("rank agrees with determinant and transpose") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    long n = 1 + static_cast<long>(rng() % 4);
    CycloMat m = rnd_mat(rng, n, n);
    CHECK((m.rank() == n) == !m.det().is_zero());
    CHECK(m.rank() == m.transpose().rank());
  }
}

TEST_CASE("kernel basis spans the null space exactly") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    long rows = 1 + static_cast<long>(rng() % 4);
    long cols = 1 + static_cast<long>(rng() % 4);
    CycloMat m = rnd_mat(rng, rows, cols);
    auto ker = m.kernel_basis();
    CHECK(static_cast<long>(ker.size()) == cols - m.rank());
    Subspace span(cols);
    for (const auto& v : ker) {
      CHECK(is_zero_vec(m.apply(v)));
      CHECK(span.insert(v));  // basis vectors are independent
    }
    // A random combination of kernel vectors is still in the kernel.
    if (!ker.empty()) {
      std::vector<CycloNumber> comb(cols);
      for (const auto& v : ker) {
        CycloNumber c = rnd_entry(rng);
        for (long j = 0; j < cols; ++j) comb[j] += c * v[j];
      }
      CHECK(is_zero_vec(m.apply(comb)));
    }
  }
}

TEST_CASE("inverse and solve are exact") {
  std::mt19937_64 rng(11);
  int invertible_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    long n = 1 + static_cast<long>(rng() % 4);
    CycloMat m = rnd_mat(rng, n, n);
    auto inv = m.inverse();
    CHECK(inv.has_value() == !m.det().is_zero());
    if (inv) {
      ++invertible_seen;
      CHECK(*inv * m == CycloMat::identity(n));
      CHECK(m * *inv == CycloMat::identity(n));
    }
    std::vector<CycloNumber> x0(n);
    for (auto& c : x0) c = rnd_entry(rng);
    std::vector<CycloNumber> b = m.apply(x0);
    auto x = m.solve(b);
    REQUIRE(x.has_value());  // constructed to be consistent
    CHECK(is_zero_vec([&] {
      auto r = m.apply(*x);
      for (long i = 0; i < n; ++i) r[i] -= b[i];
      return r;
    }()));
  }
  CHECK(invertible_seen > 10);

  // Inconsistent system: x + y = 0 and x + y = 1.
  CycloMat bad(2, 2);
  bad.at(0, 0) = bad.at(0, 1) = bad.at(1, 0) = bad.at(1, 1) = CycloNumber(1);
  CHECK(!bad.solve({CycloNumber(), CycloNumber(1)}).has_value());
}

TEST_CASE("subspaces are canonical and support intersection") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    long dim = 2 + static_cast<long>(rng() % 4);
    std::vector<std::vector<CycloNumber>> gens;
    for (int k = 0; k < 3; ++k) {
      std::vector<CycloNumber> v(dim);
      for (auto& c : v) c = rnd_entry(rng);
      gens.push_back(v);
    }
    Subspace a(dim);
    for (const auto& v : gens) a.insert(v);
    // Insertion order cannot change the subspace.
    Subspace b(dim);
    b.insert(gens[2]);
    b.insert(gens[0]);
    b.insert(gens[1]);
    CHECK(a == b);
    for (const auto& v : gens) {
      CHECK(a.contains(v));
      CHECK(is_zero_vec(a.reduce(v)));
      CHECK(!a.insert(v));  // re-inserting a member never grows
    }
  }

  // span{e0, e1} meet span{e1, e2} = span{e1} in dimension 3.
  auto e = [](long dim, long k) {
    std::vector<CycloNumber> v(dim);
    v[k] = CycloNumber(1);
    return v;
  };
  Subspace u(3), w(3);
  u.insert(e(3, 0));
  u.insert(e(3, 1));
  w.insert(e(3, 1));
  w.insert(e(3, 2));
  Subspace meet = Subspace::intersection(u, w);
  CHECK(meet.dim() == 1);
  CHECK(meet.contains(e(3, 1)));
  CHECK(!meet.contains(e(3, 0)));
}

TEST_CASE("matrix product respects apply") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    long a = 1 + static_cast<long>(rng() % 3);
    long b = 1 + static_cast<long>(rng() % 3);
    long c = 1 + static_cast<long>(rng() % 3);
    CycloMat m = rnd_mat(rng, a, b), n = rnd_mat(rng, b, c);
    std::vector<CycloNumber> v(c);
    for (auto& x : v) x = rnd_entry(rng);
    auto lhs = (m * n).apply(v);
    auto rhs = m.apply(n.apply(v));
    CHECK(lhs == rhs);
  }
}
