#include "hopfforge/triangular.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "hopfforge/errors.hpp"

namespace hopfforge {

std::vector<CycloNumber> default_sample_pool() {
  CycloNumber i = CycloNumber::root_of_unity(4, 1);
  return {CycloNumber(1),          CycloNumber(-1),
          i,                       -i,
          CycloNumber(2),          CycloNumber(-2),
          CycloNumber(Rational(1, 2)), CycloNumber(Rational(-1, 2))};
}

std::optional<std::map<GroupElement, CycloMat>> sample_sk(
    const Datum& d, std::uint64_t seed, const std::vector<CycloNumber>& pool) {
  if (pool.empty()) throw InputError("sample_sk: empty pool");
  std::vector<GroupElement> supp;
  for (long i = 0; i < d.group.order(); ++i) {
    GroupElement g = d.group.element_at(i);
    if (d.n_of(g) > 0) supp.push_back(g);
  }
  for (const auto& g : supp)
    if (d.n_of(d.group.inverse(g)) != d.n_of(g)) return std::nullopt;

  std::mt19937_64 rng(seed);
  auto draw = [&]() { return pool[rng() % pool.size()]; };
  std::map<GroupElement, CycloMat> out;
  for (const auto& g : supp) {
    if (out.count(g)) continue;  // already fixed as a transpose
    GroupElement ginv = d.group.inverse(g);
    long n = d.n_of(g);
    bool symmetric = ginv == g;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 256)
        throw SamplingError("sample_sk: no invertible draw for grade " +
                            g.str());
      CycloMat m(n, n);
      if (symmetric) {
        for (long i = 0; i < n; ++i)
          for (long j = i; j < n; ++j) {
            CycloNumber c = draw();
            m.at(i, j) = c;
            m.at(j, i) = c;
          }
      } else {
        for (long i = 0; i < n; ++i)
          for (long j = 0; j < n; ++j) m.at(i, j) = draw();
      }
      if (!m.det().is_zero()) {
        if (!symmetric) out[ginv] = m.transpose();
        out[g] = std::move(m);
        break;
      }
    }
  }
  return out;
}

long sk_parameter_count(const Datum& d) {
  long total = 0;
  std::set<std::vector<long>> seen;
  for (long i = 0; i < d.group.order(); ++i) {
    GroupElement g = d.group.element_at(i);
    long n = d.n_of(g);
    if (n == 0 || seen.count(g.e)) continue;
    GroupElement ginv = d.group.inverse(g);
    if (d.n_of(ginv) != n) return 0;  // the set is empty
    if (ginv == g) {
      total += n * (n + 1) / 2;
    } else {
      total += n * n;
      seen.insert(ginv.e);
    }
    seen.insert(g.e);
  }
  return total;
}

namespace {

// Convolution product of functionals given as value rows on the basis.
std::vector<CycloNumber> convolve(const HopfStructure& h,
                                  const std::vector<CycloNumber>& p,
                                  const std::vector<CycloNumber>& q) {
  std::vector<CycloNumber> r(h.dim);
  for (long l = 0; l < h.dim; ++l)
    for (const auto& [ab, c] : h.comult[l].v.terms) {
      const CycloNumber& pa = p[ab / h.dim];
      if (pa.is_zero()) continue;
      const CycloNumber& qb = q[ab % h.dim];
      if (qb.is_zero()) continue;
      r[l] += c * pa * qb;
    }
  return r;
}

std::vector<SparseVec> columns_of(const CycloMat& m) {
  std::vector<SparseVec> cols(m.cols());
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i)
      if (!m.at(i, j).is_zero()) cols[j].terms.emplace_back(i, m.at(i, j));
  return cols;
}

}  // namespace

CycloMat build_f_T(const HDAlgebra& hd, const StructureChoice& t) {
  const HopfStructure& h = hd.hopf;
  const FiniteAbelianGroup& g = hd.datum.group;
  long d = h.dim;
  long s = static_cast<long>(hd.symbols.size());
  long m = g.order();

  for (long i = 0; i < m; ++i) {
    GroupElement a = g.element_at(i);
    long n = hd.datum.n_of(a);
    if (n == 0) continue;
    auto it = t.m_maps.find(a);
    if (it == t.m_maps.end())
      throw InvalidStructureChoice("missing M map for grade " + a.str());
    GroupElement ainv = g.inverse(a);
    long ninv = hd.datum.n_of(ainv);
    if (it->second.rows() != ninv || it->second.cols() != n)
      throw InvalidStructureChoice(
          "M map for grade " + a.str() + " must be " + std::to_string(ninv) +
          "x" + std::to_string(n));
    auto jt = t.m_maps.find(ainv);
    if (jt == t.m_maps.end() || !(jt->second == it->second.transpose()))
      throw InvalidStructureChoice("M map for grade " + a.str() +
                                   " is not the transpose of its inverse grade");
    if (n == ninv && it->second.det().is_zero())
      throw InvalidStructureChoice("M map for grade " + a.str() +
                                   " is singular");
  }
  if (static_cast<long>(t.phi.images.size()) != g.rank())
    throw InvalidStructureChoice("phi must give one image per dual generator");

  std::vector<long> sym_base(m, 0), sym_count(m, 0);
  {
    long off = 0;
    for (long i = 0; i < m; ++i) {
      sym_base[i] = off;
      sym_count[i] = hd.datum.n_of(g.element_at(i));
      off += sym_count[i];
    }
  }

  // Grouplike functionals of the dual: characters on the group part.
  std::vector<std::vector<CycloNumber>> charfun(m,
                                                std::vector<CycloNumber>(d));
  for (long c = 0; c < m; ++c) {
    Character chi = g.character_at(c);
    for (long l = 0; l < d; ++l)
      if (hd.labels[l].wedge.empty())
        charfun[c][l] = g.pair(chi, hd.labels[l].group_part);
  }
  // Skew-primitive functionals of the dual: one per symbol.
  std::vector<std::vector<CycloNumber>> pfun(s, std::vector<CycloNumber>(d));
  for (long ss = 0; ss < s; ++ss)
    for (long l = 0; l < d; ++l)
      if (hd.labels[l].wedge.size() == 1 && hd.labels[l].wedge[0] == ss)
        pfun[ss][l] = CycloNumber(1);

  // Dual PBW evaluation matrix: row (c, mask) = alpha_c * prod P_s.
  CycloMat eval(d, d);
  for (long c = 0; c < m; ++c)
    for (long mask = 0; mask < (1L << s); ++mask) {
      std::vector<CycloNumber> row = charfun[c];
      for (long b = 0; b < s; ++b)
        if (mask & (1L << b)) row = convolve(h, row, pfun[b]);
      long rix = c * (1L << s) + mask;
      for (long l = 0; l < d; ++l) eval.at(rix, l) = row[l];
    }
  auto eval_inv = eval.inverse();
  if (!eval_inv)
    throw InvalidStructureChoice("dual PBW evaluation matrix is singular");

  // Images: phi(alpha) * prod M(x) for the same monomial order.
  CycloMat images(d, d);
  for (long c = 0; c < m; ++c) {
    GroupElement target = t.phi.apply(g, g.character_at(c));
    SparseVec base = SparseVec::basis(hd.group_label(target));
    for (long mask = 0; mask < (1L << s); ++mask) {
      SparseVec e = base;
      for (long b = 0; b < s && !e.is_zero(); ++b) {
        if (!(mask & (1L << b))) continue;
        long gi = g.index_of(hd.symbols[b].grade);
        long tgt = g.index_of(g.inverse(hd.symbols[b].grade));
        const CycloMat& mm = t.m_maps.at(hd.symbols[b].grade);
        SparseVec mx;
        long colv = b - sym_base[gi];
        for (long rr = 0; rr < mm.rows(); ++rr)
          if (!mm.at(rr, colv).is_zero())
            mx.add_term(hd.symbol_label(sym_base[tgt] + rr), mm.at(rr, colv));
        e = h.mul(e, mx);
      }
      long cix = c * (1L << s) + mask;
      for (const auto& [l, cv] : e.terms) images.at(l, cix) = cv;
    }
  }

  CycloMat f = images * eval_inv->transpose();

  // Machine verification: f is a unital bialgebra isomorphism from the
  // co-opposite dual onto H.
  HopfStructure k = cop_flip(dual_hopf(h));
  std::vector<SparseVec> fcol = columns_of(f);
  auto fvec = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& [j, c] : v.terms) out.axpy(c, fcol[j]);
    return out;
  };
  if (CycloMat(f).rank() != d)
    throw InvalidStructureChoice("f_T is singular");
  if (fvec(k.unit) != h.unit)
    throw InvalidStructureChoice("f_T does not map unit to unit");
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      SparseVec lhs = fvec(k.mult[i][j]);
      SparseVec rhs = h.mul(fcol[i], fcol[j]);
      if (lhs != rhs)
        throw InvalidStructureChoice(
            "f_T is not an algebra map at dual basis pair (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (long i = 0; i < d; ++i) {
    TensorElement lhs = h.delta(fcol[i]);
    TensorElement rhs;
    rhs.dim = d;
    for (const auto& [ab, c] : k.comult[i].v.terms) {
      const SparseVec& fa = fcol[ab / d];
      const SparseVec& fb = fcol[ab % d];
      for (const auto& [x, cx] : fa.terms)
        for (const auto& [y, cy] : fb.terms)
          rhs.v.add_term(x * d + y, c * cx * cy);
    }
    if (lhs != rhs)
      throw InvalidStructureChoice("f_T is not a coalgebra map at dual basis " +
                                   std::to_string(i));
    if (h.eps(fcol[i]) != k.counit[i])
      throw InvalidStructureChoice("f_T does not preserve the counit at " +
                                   std::to_string(i));
  }
  return f;
}

TensorElement rmatrix_from_f(const HopfStructure& h, const CycloMat& f) {
  TensorElement r;
  r.dim = h.dim;
  for (long i = 0; i < h.dim; ++i)
    for (long j = 0; j < h.dim; ++j)
      if (!f.at(j, i).is_zero()) r.v.add_term(i * h.dim + j, f.at(j, i));
  return r;
}

Report verify_triangular(const HopfStructure& h, const TensorElement& r,
                         long max_dim) {
  if (h.dim > max_dim) {
    std::ostringstream os;
    os << "verify_triangular: dimension " << h.dim << " exceeds bound "
       << max_dim;
    throw BoundExceeded(os.str());
  }
  Report rep;
  long d = h.dim;

  SparseVec left, right;
  for (const auto& [ij, c] : r.v.terms) {
    left.add_term(ij % d, c * h.counit[ij / d]);
    right.add_term(ij / d, c * h.counit[ij % d]);
  }
  bool cl = left == h.unit, cr = right == h.unit;
  rep.add("counit_legs", cl && cr,
          !cl ? "(eps (x) id)R != 1" : "(id (x) eps)R != 1");

  TensorCube r12c = h.r12(r), r13c = h.r13(r), r23c = h.r23(r);
  rep.add("hexagon_left", h.delta_left(r) == h.cmul(r13c, r23c),
          "(Delta (x) id)R != R13 R23");
  rep.add("hexagon_right", h.delta_right(r) == h.cmul(r13c, r12c),
          "(id (x) Delta)R != R13 R12");

  Check inter{"intertwiner", true, ""};
  for (long i = 0; i < d; ++i) {
    TensorElement lhs = h.tmul(HopfStructure::flip(h.comult[i]), r);
    TensorElement rhs = h.tmul(r, h.comult[i]);
    if (!(lhs == rhs)) {
      inter.pass = false;
      inter.witness = "Delta_cop(b) R != R Delta(b) at basis " +
                      h.basis_labels[i];
      break;
    }
  }
  rep.checks.push_back(inter);

  rep.add("unitarity",
          h.tmul(r, HopfStructure::flip(r)) == h.tensor_of(h.unit, h.unit),
          "R R21 != 1 (x) 1");
  return rep;
}

std::pair<long, bool> minimality_rank(const HopfStructure& h,
                                      const TensorElement& r) {
  CycloMat c(h.dim, h.dim);
  for (const auto& [ij, cv] : r.v.terms) c.at(ij / h.dim, ij % h.dim) = cv;
  long rank = c.rank();
  return {rank, rank == h.dim};
}

RMatrixAnalysis drinfeld_analysis(const HopfStructure& h,
                                  const TensorElement& r) {
  RMatrixAnalysis an;
  long d = h.dim;
  for (const auto& [ij, c] : r.v.terms)
    an.u.axpy(c, h.mul(h.antipode[ij % d], SparseVec::basis(ij / d)));
  auto [rank, minimal] = minimality_rank(h, r);
  an.rank = rank;
  an.minimal = minimal;

  an.checks.add("u_grouplike", is_grouplike(h, an.u),
                "Drinfeld element " + h.describe(an.u) + " is not grouplike");
  an.checks.add("u_squared_one", h.mul(an.u, an.u) == h.unit, "u^2 != 1");
  an.checks.add("u_antipode_fixed", h.apply_antipode(an.u) == an.u,
                "S(u) != u");

  Check conj{"s2_inner_by_u", true, ""};
  bool s2_trivial = true;
  for (long i = 0; i < d; ++i) {
    SparseVec s2 = h.apply_antipode(h.antipode[i]);
    if (s2 != SparseVec::basis(i)) s2_trivial = false;
    if (conj.pass && h.mul(s2, an.u) != h.mul(an.u, SparseVec::basis(i))) {
      conj.pass = false;
      conj.witness = "S^2(b) u != u b at basis " + h.basis_labels[i];
    }
  }
  an.checks.checks.push_back(conj);

  Check s4{"s4_identity", true, ""};
  for (long i = 0; i < d; ++i) {
    SparseVec v = h.apply_antipode(h.apply_antipode(
        h.apply_antipode(h.antipode[i])));
    if (v != SparseVec::basis(i)) {
      s4.pass = false;
      s4.witness = "S^4 != id at basis " + h.basis_labels[i];
      break;
    }
  }
  an.checks.checks.push_back(s4);

  an.checks.add("dim_divisible_by_4_when_s2_nontrivial",
                s2_trivial || !an.minimal || d % 4 == 0,
                "S^2 != id and R minimal but dim = " + std::to_string(d));
  return an;
}

namespace {

struct GroupRecon {
  FiniteAbelianGroup group;
  // index in enumeration order of `group` -> element of the input algebra
  std::vector<SparseVec> elemv;
};

[[noreturn]] void violate(Report& rep, const std::string& name,
                          const std::string& witness) {
  rep.add(name, false, witness);
  throw HypothesisViolation(name + ": " + witness);
}

GroupRecon reconstruct_group(const HopfStructure& h,
                             const std::vector<SparseVec>& gl, Report& rep) {
  long m = static_cast<long>(gl.size());
  if (m == 0) violate(rep, "grouplikes_present", "no grouplikes supplied");
  for (long i = 0; i < m; ++i)
    if (!is_grouplike(h, gl[i]))
      violate(rep, "grouplikes_valid",
              "element " + std::to_string(i) + " is not grouplike");
  long unit_at = -1;
  for (long i = 0; i < m; ++i) {
    if (gl[i] == h.unit) unit_at = i;
    for (long j = i + 1; j < m; ++j)
      if (gl[i] == gl[j])
        violate(rep, "grouplikes_distinct",
                "entries " + std::to_string(i) + " and " + std::to_string(j) +
                    " coincide");
  }
  if (unit_at < 0)
    violate(rep, "grouplikes_contain_unit", "the unit is not in the list");

  std::vector<std::vector<long>> tab(m, std::vector<long>(m, -1));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      SparseVec p = h.mul(gl[i], gl[j]);
      for (long k = 0; k < m; ++k)
        if (p == gl[k]) {
          tab[i][j] = k;
          break;
        }
      if (tab[i][j] < 0)
        violate(rep, "grouplikes_closed",
                "product of entries " + std::to_string(i) + " and " +
                    std::to_string(j) + " is not in the list");
    }
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      if (tab[i][j] != tab[j][i])
        violate(rep, "grouplikes_commute",
                "entries " + std::to_string(i) + " and " + std::to_string(j) +
                    " do not commute");
  for (long i = 0; i < m; ++i) {
    std::vector<bool> seen(m, false);
    for (long j = 0; j < m; ++j) {
      if (seen[tab[i][j]])
        violate(rep, "grouplikes_cancellative",
                "row " + std::to_string(i) + " is not a permutation");
      seen[tab[i][j]] = true;
    }
  }
  rep.add("grouplikes_form_a_group", true, "");

  // Greedy small generating set: highest order first, lowest index breaks
  // ties; then BFS representatives and fundamental relations.
  auto order_of = [&](long x) {
    long o = 1, y = x;
    while (y != unit_at) {
      y = tab[y][x];
      ++o;
    }
    return o;
  };
  auto closure = [&](const std::vector<long>& gens) {
    std::set<long> seen{unit_at};
    std::vector<long> queue{unit_at};
    while (!queue.empty()) {
      long x = queue.back();
      queue.pop_back();
      for (long g : gens) {
        long y = tab[x][g];
        if (seen.insert(y).second) queue.push_back(y);
      }
    }
    return seen;
  };
  std::vector<long> gens;
  std::set<long> span{unit_at};
  while (static_cast<long>(span.size()) < m) {
    long best = -1, best_order = 0;
    for (long x = 0; x < m; ++x) {
      if (span.count(x)) continue;
      long o = order_of(x);
      if (o > best_order) {
        best_order = o;
        best = x;
      }
    }
    gens.push_back(best);
    span = closure(gens);
  }
  long k = static_cast<long>(gens.size());

  // BFS representatives rep[x] in Z^k over the generators.
  std::vector<std::vector<long>> repx(m);
  std::vector<bool> seen(m, false);
  std::vector<long> queue{unit_at};
  repx[unit_at].assign(k, 0);
  seen[unit_at] = true;
  size_t head = 0;
  while (head < queue.size()) {
    long x = queue[head++];
    for (long gi = 0; gi < k; ++gi) {
      long y = tab[x][gens[gi]];
      if (!seen[y]) {
        seen[y] = true;
        repx[y] = repx[x];
        repx[y][gi] += 1;
        queue.push_back(y);
      }
    }
  }

  std::vector<std::vector<mpz_class>> rel;
  for (long x = 0; x < m; ++x)
    for (long gi = 0; gi < k; ++gi) {
      long y = tab[x][gens[gi]];
      std::vector<mpz_class> row(k, 0);
      bool nonzero = false;
      for (long t = 0; t < k; ++t) {
        long v = repx[x][t] + (t == gi ? 1 : 0) - repx[y][t];
        row[t] = v;
        if (v != 0) nonzero = true;
      }
      if (nonzero) rel.push_back(std::move(row));
    }
  if (rel.empty()) rel.push_back(std::vector<mpz_class>(k, 0));
  SmithResult snf = smith_normal_form(rel);

  std::vector<long> factors(k, 0);
  for (long t = 0; t < k; ++t) {
    mpz_class s = t < static_cast<long>(snf.d.size()) &&
                          t < static_cast<long>(snf.d[t].size())
                      ? snf.d[t][t]
                      : 0;
    if (s == 0)
      violate(rep, "group_reconstruction_finite",
              "relation lattice does not have full rank");
    factors[t] = s.get_si();
  }

  // New coordinates: y = rep[x] * V, reduced modulo the factors; keep the
  // coordinates with factor > 1.
  std::vector<long> keep;
  for (long t = 0; t < k; ++t)
    if (factors[t] > 1) keep.push_back(t);
  GroupRecon out;
  for (long t : keep) out.group.cyclic_factors.push_back(factors[t]);
  if (out.group.order() != m)
    violate(rep, "group_reconstruction_order",
            "reconstructed order " + std::to_string(out.group.order()) +
                " != " + std::to_string(m));
  out.elemv.resize(m);
  std::vector<bool> hit(m, false);
  std::vector<long> gl_of_index(m, -1);
  for (long x = 0; x < m; ++x) {
    GroupElement coords{std::vector<long>(keep.size(), 0)};
    for (size_t ct = 0; ct < keep.size(); ++ct) {
      long t = keep[ct];
      mpz_class acc = 0;
      for (long i = 0; i < k; ++i) acc += mpz_class(repx[x][i]) * snf.v[i][t];
      mpz_class md = acc % factors[t];
      if (md < 0) md += factors[t];
      coords.e[ct] = md.get_si();
    }
    long idx = out.group.index_of(coords);
    if (hit[idx])
      violate(rep, "group_reconstruction_bijective",
              "two grouplikes map to the same coordinates");
    hit[idx] = true;
    gl_of_index[idx] = x;
    out.elemv[idx] = gl[x];
  }
  // Coordinates must be a homomorphism of the multiplication table.
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      GroupElement a = out.group.element_at(i), b = out.group.element_at(j);
      long prod = out.group.index_of(out.group.mul(a, b));
      if (h.mul(out.elemv[i], out.elemv[j]) != out.elemv[prod])
        violate(rep, "group_reconstruction_consistent",
                "coordinates do not respect the multiplication table");
    }
  rep.add("group_reconstruction_consistent", true, "");
  return out;
}

}  // namespace

ExtractionResult extract_datum(const HopfStructure& h, const TensorElement& r,
                               const Generators& gens, long max_dim) {
  ExtractionResult res;
  Report& rep = res.checks;
  long d = h.dim;
  auto require = [&](const std::string& name, bool ok,
                     const std::string& wit) {
    if (!ok) violate(rep, name, wit);
    rep.add(name, true, "");
  };

  Report tri = verify_triangular(h, r, max_dim);
  require("triangularity", tri.all_pass(), tri.first_failure());
  auto [rank, minimal] = minimality_rank(h, r);
  require("minimality", minimal,
          "R coefficient rank " + std::to_string(rank) + " < dim " +
              std::to_string(d));

  GroupRecon grec = reconstruct_group(h, gens.grouplikes, rep);
  const FiniteAbelianGroup& g = grec.group;
  long m = g.order();

  // Pointedness certificate: the supplied generators generate H.
  {
    Subspace span(d);
    for (const auto& v : gens.grouplikes) span.insert(v.dense(d));
    for (const auto& v : gens.skew_primitives) span.insert(v.dense(d));
    bool grew = true;
    while (grew && span.dim() < d) {
      grew = false;
      std::vector<std::vector<CycloNumber>> rows = span.basis();
      for (const auto& row : rows) {
        SparseVec a = SparseVec::from_dense(row);
        for (const auto& v : gens.grouplikes)
          if (span.insert(h.mul(a, v).dense(d))) grew = true;
        for (const auto& v : gens.skew_primitives)
          if (span.insert(h.mul(a, v).dense(d))) grew = true;
      }
    }
    require("generators_generate", span.dim() == d,
            "generated subalgebra has dimension " +
                std::to_string(span.dim()) + " < " + std::to_string(d));
  }

  // f_R and its inverse.
  CycloMat fr(d, d);
  for (const auto& [ij, c] : r.v.terms) fr.at(ij % d, ij / d) = c;
  auto frinv = fr.inverse();
  require("f_R_invertible", bool(frinv), "R coefficient matrix not invertible");

  // Form recovery: F(a, b) = <f_R^{-1}(a), b>.
  long ex = g.exponent();
  auto pairing_value = [&](long gi, long gj) {
    std::vector<CycloNumber> p = frinv->apply(grec.elemv[gi].dense(d));
    CycloNumber val(0);
    for (const auto& [l, c] : grec.elemv[gj].terms) val += p[l] * c;
    return val;
  };
  auto as_root = [&](const CycloNumber& v) -> long {
    for (long e = 0; e < ex; ++e)
      if (v == CycloNumber::root_of_unity(ex, e)) return e;
    return -1;
  };
  SkewForm form;
  form.group = g;
  form.conductor = ex;
  form.e.assign(g.rank(), std::vector<long>(g.rank(), 0));
  for (long i = 0; i < g.rank(); ++i)
    for (long j = 0; j < g.rank(); ++j) {
      GroupElement gi = g.identity(), gj = g.identity();
      gi.e[i] = 1;
      gj.e[j] = 1;
      CycloNumber v = pairing_value(g.index_of(gi), g.index_of(gj));
      long e = as_root(v);
      require("form_values_roots_of_unity", e >= 0,
              "F(gen_" + std::to_string(i) + ", gen_" + std::to_string(j) +
                  ") = " + v.str() + " is not a root of unity of order " +
                  std::to_string(ex));
      form.e[i][j] = e;
    }
  {
    FormReport fr2 = validate_form(form);
    require("recovered_form_valid", fr2.valid(), fr2.first_failure());
  }
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      CycloNumber want = form.eval(g.element_at(i), g.element_at(j));
      require("form_matches_pairing", pairing_value(i, j) == want,
              "bicharacter mismatch at (" + g.element_at(i).str() + ", " +
                  g.element_at(j).str() + ")");
    }
  // De-duplicate the two loop checks above into single entries.
  {
    std::vector<Check> dedup;
    std::set<std::string> names;
    for (auto& c : rep.checks)
      if (names.insert(c.name).second) dedup.push_back(c);
    rep.checks = std::move(dedup);
  }

  UfIf uf = u_f_and_i_f(form);

  // V_g = the -1 eigenspace of conjugation on P_{1,g}.
  std::map<GroupElement, std::vector<SparseVec>> v_basis;
  std::map<GroupElement, long> n_rec;
  long total_n = 0;
  for (long gi = 0; gi < m; ++gi) {
    GroupElement ge = g.element_at(gi);
    std::vector<SparseVec> p = skew_primitive_space(h, h.unit, grec.elemv[gi]);
    long pd = static_cast<long>(p.size());
    if (ge == g.identity()) {
      require("no_primitives", pd == 0,
              "P_{1,1} has dimension " + std::to_string(pd));
      continue;
    }
    bool in_if = uf.u[gi] == -1;
    if (!in_if) {
      require("skew_primitives_only_in_i_f", pd == 1,
              "dim P_{1," + ge.str() + "} = " + std::to_string(pd) +
                  " but F(g,g) = 1");
      continue;
    }
    // Conjugation action on P coordinates.
    CycloMat pc(d, pd);
    for (long j = 0; j < pd; ++j)
      for (const auto& [i, c] : p[j].terms) pc.at(i, j) = c;
    long ginv = g.index_of(g.inverse(ge));
    CycloMat conj(pd, pd);
    for (long j = 0; j < pd; ++j) {
      SparseVec w = h.mul(h.mul(grec.elemv[gi], p[j]), grec.elemv[ginv]);
      auto coords = pc.solve(w.dense(d));
      require("conjugation_preserves_p", bool(coords),
              "conjugation does not preserve P_{1," + ge.str() + "}");
      for (long i = 0; i < pd; ++i) conj.at(i, j) = (*coords)[i];
    }
    CycloMat cplus(pd, pd);
    for (long i = 0; i < pd; ++i)
      for (long j = 0; j < pd; ++j)
        cplus.at(i, j) = conj.at(i, j) + CycloNumber(i == j ? 1 : 0);
    std::vector<SparseVec> vg;
    Subspace vspan(d);
    for (const auto& kvec : cplus.kernel_basis()) {
      SparseVec x;
      for (long j = 0; j < pd; ++j)
        if (!kvec[j].is_zero()) x.axpy(kvec[j], p[j]);
      vspan.insert(x.dense(d));
    }
    for (const auto& row : vspan.basis()) vg.push_back(SparseVec::from_dense(row));
    long nv = static_cast<long>(vg.size());
    // P_{1,g} must split as span{1-g} (+) V_g.
    Subspace split(d);
    split.insert((h.unit - grec.elemv[gi]).dense(d));
    for (const auto& x : vg) split.insert(x.dense(d));
    require("p_splits_along_conjugation",
            split.dim() == 1 + nv && pd == 1 + nv,
            "P_{1," + ge.str() + "}: dim " + std::to_string(pd) +
                ", eigenspace split gives " + std::to_string(split.dim()));
    if (nv > 0) {
      v_basis[ge] = std::move(vg);
      n_rec[ge] = nv;
      total_n += nv;
    }
  }
  {
    std::vector<Check> dedup;
    std::set<std::string> names;
    for (auto& c : rep.checks)
      if (names.insert(c.name).second) dedup.push_back(c);
    rep.checks = std::move(dedup);
  }
  for (const auto& [ge, nv] : n_rec) {
    GroupElement ginv = g.inverse(ge);
    auto it = n_rec.find(ginv);
    require("feasible_multiplicities", it != n_rec.end() && it->second == nv,
            "n_" + ge.str() + " = " + std::to_string(nv) +
                " but n_" + ginv.str() + " differs");
  }

  res.datum.group = g;
  res.datum.form = form;
  res.datum.n = n_rec;
  {
    DatumReport dr = validate_datum(res.datum);
    require("recovered_datum_valid", dr.valid(), dr.checks.first_failure());
  }

  // Global symbol order: (grade enumeration order, basis position).
  std::vector<std::pair<GroupElement, long>> symbols;
  for (long gi = 0; gi < m; ++gi) {
    GroupElement ge = g.element_at(gi);
    auto it = v_basis.find(ge);
    if (it == v_basis.end()) continue;
    for (long i = 0; i < static_cast<long>(it->second.size()); ++i)
      symbols.emplace_back(ge, i);
  }
  long s = total_n;
  require("pbw_dimension", (m << s) == d,
          "|G| * 2^(sum n) = " + std::to_string(m << s) + " != dim " +
              std::to_string(d));

  // PBW monomial matrix psi: column (a, mask) = a * prod x.
  CycloMat psi(d, d);
  for (long gi = 0; gi < m; ++gi)
    for (long mask = 0; mask < (1L << s); ++mask) {
      SparseVec e = grec.elemv[gi];
      for (long b = 0; b < s && !e.is_zero(); ++b)
        if (mask & (1L << b))
          e = h.mul(e, v_basis[symbols[b].first][symbols[b].second]);
      long cix = gi * (1L << s) + mask;
      for (const auto& [l, c] : e.terms) psi.at(l, cix) = c;
    }
  auto psi_inv = psi.inverse();
  require("pbw_monomials_span", bool(psi_inv),
          "group and skew-primitive monomials do not form a basis");

  // Functional with value row w on the monomial basis -> f_R image in H.
  auto f_r_of = [&](const std::vector<CycloNumber>& w) {
    std::vector<CycloNumber> p(d);
    for (long l = 0; l < d; ++l)
      for (long mm = 0; mm < d; ++mm)
        if (!w[mm].is_zero() && !psi_inv->at(mm, l).is_zero())
          p[l] += w[mm] * psi_inv->at(mm, l);
    return SparseVec::from_dense(fr.apply(p));
  };

  // phi: characters go to grouplikes under f_R.
  std::vector<long> phi_img(m, -1);
  for (long c = 0; c < m; ++c) {
    Character chi = g.character_at(c);
    std::vector<CycloNumber> w(d);
    for (long gi = 0; gi < m; ++gi)
      w[gi << s] = g.pair(chi, g.element_at(gi));
    SparseVec img = f_r_of(w);
    for (long gi = 0; gi < m; ++gi)
      if (img == grec.elemv[gi]) {
        phi_img[c] = gi;
        break;
      }
    require("phi_lands_in_group", phi_img[c] >= 0,
            "f_R image of character " + std::to_string(c) +
                " is not a grouplike");
  }
  {
    std::vector<Check> dedup;
    std::set<std::string> names;
    for (auto& c : rep.checks)
      if (names.insert(c.name).second) dedup.push_back(c);
    rep.checks = std::move(dedup);
  }
  DualIso phi;
  for (long i = 0; i < g.rank(); ++i) {
    GroupElement delta = g.identity();
    delta.e[i] = 1;  // dual basis character has the same mixed-radix index
    phi.images.push_back(g.element_at(phi_img[g.index_of(delta)]));
  }
  {
    bool hom = true;
    std::vector<bool> seen(m, false);
    for (long c = 0; c < m && hom; ++c) {
      long want = g.index_of(phi.apply(g, g.character_at(c)));
      if (want != phi_img[c]) hom = false;
      if (seen[phi_img[c]]) hom = false;
      seen[phi_img[c]] = true;
    }
    require("phi_group_isomorphism", hom,
            "f_R on characters is not a group isomorphism");
  }
  {
    // Admissibility of phi.
    bool ok = true;
    std::string wit;
    for (long a = 0; a < m && ok; ++a)
      for (long b = 0; b < m; ++b) {
        CycloNumber prod =
            g.pair(g.character_at(a), g.element_at(phi_img[b])) *
            g.pair(g.character_at(b), g.element_at(phi_img[a]));
        if (!prod.is_one()) {
          ok = false;
          wit = "pairing condition fails at characters " + std::to_string(a) +
                ", " + std::to_string(b);
          break;
        }
      }
    if (ok)
      for (const auto& [ge, nv] : n_rec)
        if (phi.apply(g, form.f_map(ge)) != ge) {
          ok = false;
          wit = "phi(f(g)) != g at " + ge.str();
          break;
        }
    require("phi_admissible", ok, wit);
  }

  // M maps from f_R on the skew-primitive functionals.
  std::map<GroupElement, CycloMat> m_maps;
  for (const auto& [ge, nv] : n_rec) {
    GroupElement ginv = g.inverse(ge);
    m_maps[ge] = CycloMat(n_rec.at(ginv), nv);
  }
  for (long b = 0; b < s; ++b) {
    const GroupElement& ge = symbols[b].first;
    GroupElement ginv = g.inverse(ge);
    std::vector<CycloNumber> w(d);
    for (long gi = 0; gi < m; ++gi)
      w[(gi << s) | (1L << b)] = CycloNumber(1);
    SparseVec img = f_r_of(w);
    const auto& target = v_basis[ginv];
    CycloMat tc(d, static_cast<long>(target.size()));
    for (long j = 0; j < static_cast<long>(target.size()); ++j)
      for (const auto& [i, c] : target[j].terms) tc.at(i, j) = c;
    auto coords = tc.solve(img.dense(d));
    require("m_map_into_opposite_grade", bool(coords),
            "f_R image of P_{x} for grade " + ge.str() +
                " is outside V_{g^{-1}}");
    for (long i = 0; i < static_cast<long>(target.size()); ++i)
      m_maps[ge].at(i, symbols[b].second) = (*coords)[i];
  }
  {
    std::vector<Check> dedup;
    std::set<std::string> names;
    for (auto& c : rep.checks)
      if (names.insert(c.name).second) dedup.push_back(c);
    rep.checks = std::move(dedup);
  }
  for (const auto& [ge, mmat] : m_maps) {
    GroupElement ginv = g.inverse(ge);
    require("m_maps_transpose_compatible",
            m_maps.at(ginv) == mmat.transpose(),
            "M_{g^{-1}} != M_g^T at grade " + ge.str());
    if (mmat.rows() == mmat.cols())
      require("m_maps_invertible", !mmat.det().is_zero(),
              "M map at grade " + ge.str() + " is singular");
  }
  {
    std::vector<Check> dedup;
    std::set<std::string> names;
    for (auto& c : rep.checks)
      if (names.insert(c.name).second) dedup.push_back(c);
    rep.checks = std::move(dedup);
  }

  // Relation laws on the recovered spaces.
  {
    bool ok = true;
    std::string wit;
    for (long b = 0; b < s && ok; ++b) {
      const GroupElement& ge = symbols[b].first;
      const SparseVec& x = v_basis[ge][symbols[b].second];
      if (!h.mul(x, x).is_zero()) {
        ok = false;
        wit = "x^2 != 0 for a recovered skew primitive of grade " + ge.str();
        break;
      }
      SparseVec gx = h.mul(grec.elemv[g.index_of(ge)], x);
      SparseVec xg = h.mul(x, grec.elemv[g.index_of(ge)]);
      if (gx != xg.scaled(CycloNumber(-1))) {
        ok = false;
        wit = "gx != -xg at grade " + ge.str();
        break;
      }
      for (long c = 0; c < s && ok; ++c) {
        const GroupElement& gh = symbols[c].first;
        const SparseVec& y = v_basis[gh][symbols[c].second];
        CycloNumber fv = form.eval(gh, ge);
        if (h.mul(x, y) != h.mul(y, x).scaled(fv)) {
          ok = false;
          wit = "xy != F(h,g) yx at grades " + ge.str() + ", " + gh.str();
        }
      }
      for (long a = 0; a < m && ok; ++a) {
        CycloNumber fv = form.eval(g.element_at(a), ge);
        if (h.mul(x, grec.elemv[a]) != h.mul(grec.elemv[a], x).scaled(fv)) {
          ok = false;
          wit = "xa != F(a,g) ax at grade " + ge.str() + ", a = " +
                g.element_at(a).str();
        }
      }
    }
    require("relation_laws", ok, wit);
  }

  // Rebuild H(D) with the recovered T and certify the isomorphism.
  HDAlgebra hd2 = build_hd(res.datum, max_dim);
  res.t.phi = phi;
  res.t.m_maps = m_maps;
  CycloMat f2;
  try {
    f2 = build_f_T(hd2, res.t);
  } catch (const InvalidStructureChoice& e) {
    violate(rep, "recovered_structure_choice", e.what());
  }
  TensorElement r2 = rmatrix_from_f(hd2.hopf, f2);

  std::vector<SparseVec> psi_col = columns_of(psi);
  auto psi_of = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& [j, c] : v.terms) out.axpy(c, psi_col[j]);
    return out;
  };
  {
    bool ok = psi_of(hd2.hopf.unit) == h.unit;
    std::string wit = ok ? "" : "unit not preserved";
    for (long i = 0; i < d && ok; ++i) {
      if (h.eps(psi_col[i]) != hd2.hopf.counit[i]) {
        ok = false;
        wit = "counit mismatch at label " + hd2.hopf.basis_labels[i];
        break;
      }
      SparseVec sl = psi_of(hd2.hopf.antipode[i]);
      if (sl != h.apply_antipode(psi_col[i])) {
        ok = false;
        wit = "antipode mismatch at label " + hd2.hopf.basis_labels[i];
        break;
      }
      TensorElement lhs = h.delta(psi_col[i]);
      TensorElement rhs;
      rhs.dim = d;
      for (const auto& [ab, c] : hd2.hopf.comult[i].v.terms) {
        const SparseVec& fa = psi_col[ab / d];
        const SparseVec& fb = psi_col[ab % d];
        for (const auto& [x, cx] : fa.terms)
          for (const auto& [y, cy] : fb.terms)
            rhs.v.add_term(x * d + y, c * cx * cy);
      }
      if (lhs != rhs) {
        ok = false;
        wit = "comultiplication mismatch at label " + hd2.hopf.basis_labels[i];
        break;
      }
      for (long j = 0; j < d; ++j)
        if (psi_of(hd2.hopf.mult[i][j]) != h.mul(psi_col[i], psi_col[j])) {
          ok = false;
          wit = "multiplication mismatch at labels " +
                hd2.hopf.basis_labels[i] + ", " + hd2.hopf.basis_labels[j];
          break;
        }
    }
    require("reconstruction_isomorphism", ok, wit);
  }
  {
    TensorElement moved;
    moved.dim = d;
    for (const auto& [ij, c] : r2.v.terms) {
      const SparseVec& fa = psi_col[ij / d];
      const SparseVec& fb = psi_col[ij % d];
      for (const auto& [x, cx] : fa.terms)
        for (const auto& [y, cy] : fb.terms)
          moved.v.add_term(x * d + y, c * cx * cy);
    }
    require("r_matrix_matches", moved == r,
            "(psi (x) psi) R_T != R");
  }
  res.psi = psi;
  return res;
}

bool datum_equivalent(const Datum& a, const Datum& b) {
  if (a.group.order() != b.group.order()) return false;
  auto canon = [](const FiniteAbelianGroup& g) {
    long r = g.rank();
    std::vector<std::vector<mpz_class>> diag(r, std::vector<mpz_class>(r, 0));
    for (long i = 0; i < r; ++i) diag[i][i] = g.cyclic_factors[i];
    SmithResult s = smith_normal_form(diag);
    std::vector<long> out;
    for (long i = 0; i < r; ++i) {
      long v = s.d[i][i].get_si();
      if (v > 1) out.push_back(v);
    }
    return out;
  };
  if (canon(a.group) != canon(b.group)) return false;
  long ra = a.group.rank();
  long mb = b.group.order();
  if (ra == 0) return a.n.empty() && b.n.empty();

  std::vector<GroupElement> img(ra, b.group.identity());
  auto full_check = [&]() {
    // Build the full map and test bijectivity, form and multiplicities.
    long ma = a.group.order();
    std::vector<long> image_of(ma);
    std::set<long> distinct;
    for (long i = 0; i < ma; ++i) {
      GroupElement x = a.group.element_at(i);
      GroupElement y = b.group.identity();
      for (long t = 0; t < ra; ++t)
        y = b.group.mul(y, b.group.pow(img[t], x.e[t]));
      image_of[i] = b.group.index_of(y);
      distinct.insert(image_of[i]);
    }
    if (static_cast<long>(distinct.size()) != ma) return false;
    for (long i = 0; i < ma; ++i) {
      GroupElement x = a.group.element_at(i);
      GroupElement y = b.group.element_at(image_of[i]);
      if (a.n_of(x) != b.n_of(y)) return false;
      for (long j = 0; j < ma; ++j) {
        GroupElement x2 = a.group.element_at(j);
        GroupElement y2 = b.group.element_at(image_of[j]);
        if (a.form.eval(x, x2) != b.form.eval(y, y2)) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, long t) -> bool {
    if (t == ra) return full_check();
    long dt = a.group.cyclic_factors[t];
    GroupElement gen = a.group.identity();
    gen.e[t] = 1;
    for (long c = 0; c < mb; ++c) {
      GroupElement cand = b.group.element_at(c);
      if (dt % b.group.element_order(cand) != 0) continue;
      // Prune on form values within the chosen prefix.
      bool ok = b.form.eval(cand, cand) == a.form.eval(gen, gen);
      for (long u = 0; u < t && ok; ++u) {
        GroupElement gu = a.group.identity();
        gu.e[u] = 1;
        ok = b.form.eval(cand, img[u]) == a.form.eval(gen, gu) &&
             b.form.eval(img[u], cand) == a.form.eval(gu, gen);
      }
      if (!ok) continue;
      img[t] = cand;
      if (self(self, t + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace hopfforge
