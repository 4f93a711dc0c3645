#include "hopfforge/hopf.hpp"

#include <algorithm>
#include <sstream>

#include "hopfforge/errors.hpp"

namespace hopfforge {

SparseVec SparseVec::basis(long i, CycloNumber c) {
  SparseVec v;
  if (!c.is_zero()) v.terms.emplace_back(i, std::move(c));
  return v;
}

void SparseVec::add_term(long i, const CycloNumber& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(
      terms.begin(), terms.end(), i,
      [](const auto& t, long idx) { return t.first < idx; });
  if (it != terms.end() && it->first == i) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  } else {
    terms.insert(it, {i, c});
  }
}

SparseVec& SparseVec::axpy(const CycloNumber& c, const SparseVec& o) {
  if (c.is_zero()) return *this;
  for (const auto& [i, x] : o.terms) add_term(i, c * x);
  return *this;
}

SparseVec SparseVec::scaled(const CycloNumber& c) const {
  SparseVec r;
  if (c.is_zero()) return r;
  for (const auto& [i, x] : terms) {
    CycloNumber y = x * c;
    if (!y.is_zero()) r.terms.emplace_back(i, std::move(y));
  }
  return r;
}

CycloNumber SparseVec::coeff(long i) const {
  auto it = std::lower_bound(
      terms.begin(), terms.end(), i,
      [](const auto& t, long idx) { return t.first < idx; });
  if (it != terms.end() && it->first == i) return it->second;
  return CycloNumber(0);
}

std::vector<CycloNumber> SparseVec::dense(long dim) const {
  std::vector<CycloNumber> v(dim);
  for (const auto& [i, x] : terms) v[i] = x;
  return v;
}

SparseVec SparseVec::from_dense(const std::vector<CycloNumber>& v) {
  SparseVec r;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.terms.emplace_back(static_cast<long>(i), v[i]);
  return r;
}

SparseVec operator+(const SparseVec& a, const SparseVec& b) {
  SparseVec r = a;
  r.axpy(CycloNumber(1), b);
  return r;
}

SparseVec operator-(const SparseVec& a, const SparseVec& b) {
  SparseVec r = a;
  r.axpy(CycloNumber(-1), b);
  return r;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name + ": " + c.witness;
  return "";
}

void Report::add(const std::string& name, bool pass,
                 const std::string& witness) {
  checks.push_back(Check{name, pass, pass ? "" : witness});
}

SparseVec HopfStructure::mul(const SparseVec& a, const SparseVec& b) const {
  SparseVec r;
  for (const auto& [i, ca] : a.terms)
    for (const auto& [j, cb] : b.terms) r.axpy(ca * cb, mult[i][j]);
  return r;
}

TensorElement HopfStructure::delta(const SparseVec& a) const {
  TensorElement r;
  r.dim = dim;
  for (const auto& [i, c] : a.terms) r.v.axpy(c, comult[i].v);
  return r;
}

CycloNumber HopfStructure::eps(const SparseVec& a) const {
  CycloNumber r(0);
  for (const auto& [i, c] : a.terms) r += c * counit[i];
  return r;
}

SparseVec HopfStructure::apply_antipode(const SparseVec& a) const {
  SparseVec r;
  for (const auto& [i, c] : a.terms) r.axpy(c, antipode[i]);
  return r;
}

TensorElement HopfStructure::tensor_of(const SparseVec& a,
                                       const SparseVec& b) const {
  TensorElement r;
  r.dim = dim;
  for (const auto& [i, ca] : a.terms)
    for (const auto& [j, cb] : b.terms) r.v.add_term(i * dim + j, ca * cb);
  return r;
}

TensorElement HopfStructure::tmul(const TensorElement& a,
                                  const TensorElement& b) const {
  TensorElement r;
  r.dim = dim;
  for (const auto& [ia, ca] : a.v.terms) {
    long a1 = ia / dim, a2 = ia % dim;
    for (const auto& [ib, cb] : b.v.terms) {
      long b1 = ib / dim, b2 = ib % dim;
      CycloNumber c = ca * cb;
      for (const auto& [k1, c1] : mult[a1][b1].terms)
        for (const auto& [k2, c2] : mult[a2][b2].terms)
          r.v.add_term(k1 * dim + k2, c * c1 * c2);
    }
  }
  return r;
}

TensorCube HopfStructure::cmul(const TensorCube& a, const TensorCube& b) const {
  TensorCube r;
  r.dim = dim;
  long d2 = dim * dim;
  for (const auto& [ia, ca] : a.v.terms) {
    long a1 = ia / d2, a2 = ia / dim % dim, a3 = ia % dim;
    for (const auto& [ib, cb] : b.v.terms) {
      long b1 = ib / d2, b2 = ib / dim % dim, b3 = ib % dim;
      CycloNumber c = ca * cb;
      for (const auto& [k1, c1] : mult[a1][b1].terms)
        for (const auto& [k2, c2] : mult[a2][b2].terms)
          for (const auto& [k3, c3] : mult[a3][b3].terms)
            r.v.add_term((k1 * dim + k2) * dim + k3, c * c1 * c2 * c3);
    }
  }
  return r;
}

TensorCube HopfStructure::r12(const TensorElement& r) const {
  TensorCube c;
  c.dim = dim;
  for (const auto& [ir, cr] : r.v.terms) {
    long i = ir / dim, j = ir % dim;
    for (const auto& [u, cu] : unit.terms)
      c.v.add_term((i * dim + j) * dim + u, cr * cu);
  }
  return c;
}

TensorCube HopfStructure::r13(const TensorElement& r) const {
  TensorCube c;
  c.dim = dim;
  for (const auto& [ir, cr] : r.v.terms) {
    long i = ir / dim, j = ir % dim;
    for (const auto& [u, cu] : unit.terms)
      c.v.add_term((i * dim + u) * dim + j, cr * cu);
  }
  return c;
}

TensorCube HopfStructure::r23(const TensorElement& r) const {
  TensorCube c;
  c.dim = dim;
  for (const auto& [ir, cr] : r.v.terms) {
    long i = ir / dim, j = ir % dim;
    for (const auto& [u, cu] : unit.terms)
      c.v.add_term((u * dim + i) * dim + j, cr * cu);
  }
  return c;
}

TensorElement HopfStructure::flip(const TensorElement& r) {
  TensorElement f;
  f.dim = r.dim;
  for (const auto& [ir, c] : r.v.terms)
    f.v.add_term(ir % r.dim * r.dim + ir / r.dim, c);
  return f;
}

TensorCube HopfStructure::delta_left(const TensorElement& r) const {
  TensorCube c;
  c.dim = dim;
  for (const auto& [ir, cr] : r.v.terms) {
    long i = ir / dim, j = ir % dim;
    for (const auto& [iab, cd] : comult[i].v.terms)
      c.v.add_term(iab * dim + j, cr * cd);
  }
  return c;
}

TensorCube HopfStructure::delta_right(const TensorElement& r) const {
  TensorCube c;
  c.dim = dim;
  for (const auto& [ir, cr] : r.v.terms) {
    long i = ir / dim, j = ir % dim;
    for (const auto& [jab, cd] : comult[j].v.terms)
      c.v.add_term((i * dim + jab / dim) * dim + jab % dim, cr * cd);
  }
  return c;
}

std::string HopfStructure::describe(const SparseVec& v) const {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << basis_labels[i];
  }
  return os.str();
}

std::string HopfStructure::describe_tensor(const TensorElement& t) const {
  if (t.v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ij, c] : t.v.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << basis_labels[ij / dim] << "(x)"
       << basis_labels[ij % dim];
  }
  return os.str();
}

namespace {

std::string idx_witness(const HopfStructure& h, std::initializer_list<long> is) {
  std::ostringstream os;
  os << "basis";
  for (long i : is) os << " " << h.basis_labels[i];
  return os.str();
}

}  // namespace

Report verify_hopf_axioms(const HopfStructure& h) {
  Report rep;
  long d = h.dim;

  Check assoc{"associativity", true, ""};
  for (long i = 0; i < d && assoc.pass; ++i)
    for (long j = 0; j < d && assoc.pass; ++j)
      for (long k = 0; k < d; ++k) {
        SparseVec lhs = h.mul(h.mult[i][j], SparseVec::basis(k));
        SparseVec rhs = h.mul(SparseVec::basis(i), h.mult[j][k]);
        if (lhs != rhs) {
          assoc.pass = false;
          assoc.witness = idx_witness(h, {i, j, k});
          break;
        }
      }
  rep.checks.push_back(assoc);

  Check unit{"unit", true, ""};
  for (long i = 0; i < d; ++i) {
    SparseVec b = SparseVec::basis(i);
    if (h.mul(h.unit, b) != b || h.mul(b, h.unit) != b) {
      unit.pass = false;
      unit.witness = idx_witness(h, {i});
      break;
    }
  }
  rep.checks.push_back(unit);

  Check coassoc{"coassociativity", true, ""};
  for (long i = 0; i < d; ++i) {
    if (h.delta_left(h.comult[i]) == h.delta_right(h.comult[i])) continue;
    coassoc.pass = false;
    coassoc.witness = idx_witness(h, {i});
    break;
  }
  rep.checks.push_back(coassoc);

  Check counit{"counit", true, ""};
  for (long i = 0; i < d; ++i) {
    SparseVec left, right;
    for (const auto& [ab, c] : h.comult[i].v.terms) {
      long a = ab / d, b = ab % d;
      left.add_term(b, c * h.counit[a]);
      right.add_term(a, c * h.counit[b]);
    }
    SparseVec self = SparseVec::basis(i);
    if (left != self || right != self) {
      counit.pass = false;
      counit.witness = idx_witness(h, {i});
      break;
    }
  }
  rep.checks.push_back(counit);

  Check dhom{"comult_is_algebra_map", true, ""};
  if (h.delta(h.unit) != h.tensor_of(h.unit, h.unit)) {
    dhom.pass = false;
    dhom.witness = "Delta(1) != 1(x)1";
  }
  for (long i = 0; i < d && dhom.pass; ++i)
    for (long j = 0; j < d; ++j) {
      if (h.delta(h.mult[i][j]) == h.tmul(h.comult[i], h.comult[j])) continue;
      dhom.pass = false;
      dhom.witness = idx_witness(h, {i, j});
      break;
    }
  rep.checks.push_back(dhom);

  Check ehom{"counit_is_algebra_map", true, ""};
  {
    CycloNumber e1 = h.eps(h.unit);
    if (!e1.is_one()) {
      ehom.pass = false;
      ehom.witness = "eps(1) != 1";
    }
  }
  for (long i = 0; i < d && ehom.pass; ++i)
    for (long j = 0; j < d; ++j) {
      CycloNumber lhs = h.eps(h.mult[i][j]);
      CycloNumber rhs = h.counit[i] * h.counit[j];
      if (lhs != rhs) {
        ehom.pass = false;
        ehom.witness = idx_witness(h, {i, j});
        break;
      }
    }
  rep.checks.push_back(ehom);

  Check sl{"antipode_left", true, ""};
  Check sr{"antipode_right", true, ""};
  for (long i = 0; i < d; ++i) {
    SparseVec left, right;
    for (const auto& [ab, c] : h.comult[i].v.terms) {
      long a = ab / d, b = ab % d;
      left.axpy(c, h.mul(h.antipode[a], SparseVec::basis(b)));
      right.axpy(c, h.mul(SparseVec::basis(a), h.antipode[b]));
    }
    SparseVec want = h.unit.scaled(h.counit[i]);
    if (sl.pass && left != want) {
      sl.pass = false;
      sl.witness = idx_witness(h, {i});
    }
    if (sr.pass && right != want) {
      sr.pass = false;
      sr.witness = idx_witness(h, {i});
    }
    if (!sl.pass && !sr.pass) break;
  }
  rep.checks.push_back(sl);
  rep.checks.push_back(sr);
  return rep;
}

HopfStructure dual_hopf(const HopfStructure& h) {
  long d = h.dim;
  HopfStructure k;
  k.dim = d;
  k.basis_labels.resize(d);
  for (long i = 0; i < d; ++i) k.basis_labels[i] = h.basis_labels[i] + "*";
  k.mult.assign(d, std::vector<SparseVec>(d));
  for (long l = 0; l < d; ++l)
    for (const auto& [ij, c] : h.comult[l].v.terms)
      k.mult[ij / d][ij % d].add_term(l, c);
  for (long l = 0; l < d; ++l)
    if (!h.counit[l].is_zero()) k.unit.add_term(l, h.counit[l]);
  k.comult.resize(d);
  for (long l = 0; l < d; ++l) k.comult[l].dim = d;
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      for (const auto& [l, c] : h.mult[i][j].terms)
        k.comult[l].v.add_term(i * d + j, c);
  k.counit.resize(d);
  for (long l = 0; l < d; ++l) k.counit[l] = h.unit.coeff(l);
  k.antipode.resize(d);
  for (long j = 0; j < d; ++j)
    for (const auto& [l, c] : h.antipode[j].terms)
      k.antipode[l].add_term(j, c);
  return k;
}

HopfStructure cop_flip(const HopfStructure& h) {
  HopfStructure k = h;
  for (long i = 0; i < h.dim; ++i) k.comult[i] = HopfStructure::flip(h.comult[i]);
  // The antipode of the co-opposite is S^{-1}.
  CycloMat s(h.dim, h.dim);
  for (long j = 0; j < h.dim; ++j)
    for (const auto& [i, c] : h.antipode[j].terms) s.at(i, j) = c;
  auto inv = s.inverse();
  if (!inv)
    throw InputError("cop_flip: antipode is not invertible");
  for (long j = 0; j < h.dim; ++j) {
    SparseVec col;
    for (long i = 0; i < h.dim; ++i)
      if (!inv->at(i, j).is_zero()) col.terms.emplace_back(i, inv->at(i, j));
    k.antipode[j] = std::move(col);
  }
  return k;
}

bool is_grouplike(const HopfStructure& h, const SparseVec& x) {
  if (!h.eps(x).is_one()) return false;
  return h.delta(x) == h.tensor_of(x, x);
}

std::vector<SparseVec> skew_primitive_space(const HopfStructure& h,
                                            const SparseVec& g,
                                            const SparseVec& hh) {
  if (!is_grouplike(h, g) || !is_grouplike(h, hh))
    throw std::invalid_argument("skew_primitive_space: not grouplike");
  long d = h.dim;
  CycloMat m(d * d, d);
  for (long j = 0; j < d; ++j) {
    TensorElement t = h.comult[j];
    TensorElement xg = h.tensor_of(SparseVec::basis(j), g);
    TensorElement hx = h.tensor_of(hh, SparseVec::basis(j));
    SparseVec col = t.v;
    col.axpy(CycloNumber(-1), xg.v);
    col.axpy(CycloNumber(-1), hx.v);
    for (const auto& [i, c] : col.terms) m.at(i, j) = c;
  }
  Subspace sp(d);
  for (auto& v : m.kernel_basis()) sp.insert(std::move(v));
  std::vector<SparseVec> out;
  for (const auto& row : sp.basis()) out.push_back(SparseVec::from_dense(row));
  return out;
}

CoradicalReport coradical_level1(const HopfStructure& h,
                                 const std::vector<SparseVec>& grouplikes) {
  CoradicalReport rep;
  long d = h.dim;
  long m = static_cast<long>(grouplikes.size());

  bool gl_ok = true;
  std::string gl_witness;
  Subspace gspan(d);
  for (long i = 0; i < m; ++i) {
    if (!is_grouplike(h, grouplikes[i])) {
      gl_ok = false;
      gl_witness = "element " + std::to_string(i) + " is not grouplike";
      break;
    }
    if (!gspan.insert(grouplikes[i].dense(d))) {
      gl_ok = false;
      gl_witness = "grouplikes not linearly independent";
      break;
    }
  }
  rep.checks.add("grouplikes_independent", gl_ok, gl_witness);
  if (!gl_ok) return rep;

  // W = A (x) A_0 + A_0 (x) A inside A (x) A.
  Subspace w(d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < m; ++j) {
      w.insert(h.tensor_of(SparseVec::basis(i), grouplikes[j]).v.dense(d * d));
      w.insert(h.tensor_of(grouplikes[j], SparseVec::basis(i)).v.dense(d * d));
    }

  // A_1 = preimage of W under Delta: kernel of (reduce o Delta).
  CycloMat resid(d * d, d);
  for (long j = 0; j < d; ++j) {
    auto r = w.reduce(h.comult[j].v.dense(d * d));
    for (long i = 0; i < d * d; ++i)
      if (!r[i].is_zero()) resid.at(i, j) = r[i];
  }
  Subspace a1(d);
  for (auto& v : resid.kernel_basis()) a1.insert(std::move(v));
  rep.dim = a1.dim();
  for (const auto& row : a1.basis()) rep.basis.push_back(SparseVec::from_dense(row));

  bool a0_in = true;
  for (long j = 0; j < m && a0_in; ++j)
    a0_in = a1.contains(grouplikes[j].dense(d));
  rep.checks.add("contains_coradical", a0_in, "some grouplike not in level 1");

  // Multiplicity decomposition: expected dim = m + sum over ordered pairs of
  // dim P'_{g,h}, where dim P' = dim P - 1 when g != h and dim P otherwise.
  rep.expected_dim = m;
  rep.pair_dims.assign(m, std::vector<long>(m, 0));
  bool pairs_in = true;
  std::string pair_witness;
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b) {
      auto p = skew_primitive_space(h, grouplikes[a], grouplikes[b]);
      rep.pair_dims[a][b] = static_cast<long>(p.size());
      rep.expected_dim += static_cast<long>(p.size()) - (a != b ? 1 : 0);
      for (const auto& x : p)
        if (!a1.contains(x.dense(d))) {
          pairs_in = false;
          pair_witness = "P_{g,h} not inside level 1 at pair (" +
                         std::to_string(a) + "," + std::to_string(b) + ")";
        }
    }
  rep.checks.add("skew_primitives_inside", pairs_in, pair_witness);
  rep.checks.add("multiplicity_decomposition", rep.dim == rep.expected_dim,
                 "dim A_1 = " + std::to_string(rep.dim) + " but decomposition gives " +
                     std::to_string(rep.expected_dim));
  return rep;
}

}  // namespace hopfforge
