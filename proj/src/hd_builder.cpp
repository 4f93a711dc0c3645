#include "hopfforge/hd_builder.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "hopfforge/errors.hpp"

namespace hopfforge {

DatumReport validate_datum(const Datum& d) {
  DatumReport rep;
  FormReport fr = validate_form(d.form);
  for (const auto& c : fr.checks)
    rep.checks.add("form_" + c.name, c.pass, c.witness);
  bool group_match = d.form.group == d.group;
  rep.checks.add("form_group_match", group_match,
                 "form is defined on a different group");
  if (!fr.valid() || !group_match) return rep;

  UfIf uf = u_f_and_i_f(d.form);
  bool keys_ok = true;
  std::string key_witness;
  long total = 0;
  for (const auto& [g, ng] : d.n) {
    if (ng < 0) {
      keys_ok = false;
      key_witness = "negative multiplicity at " + g.str();
      break;
    }
    if (ng == 0) continue;
    if (static_cast<long>(g.e.size()) != d.group.rank() ||
        uf.u[d.group.index_of(g)] != -1) {
      keys_ok = false;
      key_witness = "key " + g.str() + " is not in I_F";
      break;
    }
    total += ng;
  }
  rep.checks.add("n_supported_on_i_f", keys_ok, key_witness);
  if (!keys_ok) return rep;

  rep.dimension = d.group.order();
  for (long i = 0; i < total; ++i) {
    if (rep.dimension > std::numeric_limits<long>::max() / 2) {
      rep.dimension = std::numeric_limits<long>::max();
      break;
    }
    rep.dimension *= 2;
  }

  for (const auto& [g, ng] : d.n) {
    if (ng == 0) continue;
    if (d.n_of(d.group.inverse(g)) != ng) {
      rep.feasible = false;
      break;
    }
  }
  return rep;
}

std::vector<GeneratorSymbol> datum_symbols(const Datum& d) {
  std::vector<GeneratorSymbol> out;
  for (long idx = 0; idx < d.group.order(); ++idx) {
    GroupElement g = d.group.element_at(idx);
    long ng = d.n_of(g);
    for (long i = 1; i <= ng; ++i) out.push_back(GeneratorSymbol{g, i});
  }
  return out;
}

namespace {

struct SymbolTable {
  std::vector<GeneratorSymbol> symbols;
  std::map<std::pair<std::vector<long>, long>, long> id;

  explicit SymbolTable(const Datum& d) : symbols(datum_symbols(d)) {
    for (size_t s = 0; s < symbols.size(); ++s)
      id[{symbols[s].grade.e, symbols[s].index}] = static_cast<long>(s);
  }
};

NormalTerm normalize_core(const Datum& d, const SymbolTable& tab,
                          const std::vector<WordLetter>& word,
                          CycloNumber coeff) {
  NormalTerm zero{CycloNumber(0),
                  HDBasisLabel{d.group.identity(), {}}};
  if (coeff.is_zero()) return zero;
  GroupElement acc = d.group.identity();
  std::vector<long> seen;
  for (const auto& letter : word) {
    if (std::holds_alternative<GroupElement>(letter)) {
      GroupElement a = d.group.reduce(std::get<GroupElement>(letter));
      if (static_cast<long>(a.e.size()) != d.group.rank())
        throw InputError("normalize_word: element rank mismatch");
      for (long s : seen) coeff *= d.form.eval(a, tab.symbols[s].grade);
      acc = d.group.mul(acc, a);
    } else {
      const GeneratorSymbol& gs = std::get<GeneratorSymbol>(letter);
      auto it = tab.id.find({d.group.reduce(gs.grade).e, gs.index});
      if (it == tab.id.end())
        throw InputError("normalize_word: unknown symbol x_" +
                         gs.grade.str() + "," + std::to_string(gs.index));
      seen.push_back(it->second);
    }
  }
  // Sort the symbols with anticommutation factors; equal symbols kill the
  // word. Moving s left past t contributes F(grade s, grade t).
  std::vector<long> sorted;
  for (long s : seen) {
    size_t pos = sorted.size();
    while (pos > 0 && sorted[pos - 1] > s) {
      coeff *= d.form.eval(tab.symbols[s].grade, tab.symbols[sorted[pos - 1]].grade);
      --pos;
    }
    if (pos > 0 && sorted[pos - 1] == s) return zero;
    sorted.insert(sorted.begin() + pos, s);
  }
  if (coeff.is_zero()) return zero;
  return NormalTerm{std::move(coeff), HDBasisLabel{acc, std::move(sorted)}};
}

}  // namespace

NormalTerm normalize_word(const Datum& d, const std::vector<WordLetter>& word,
                          const CycloNumber& coeff) {
  return normalize_core(d, SymbolTable(d), word, coeff);
}

long HDAlgebra::label_index(const HDBasisLabel& l) const {
  auto it = index_.find(l);
  if (it == index_.end()) throw InputError("unknown basis label");
  return it->second;
}

long HDAlgebra::group_label(const GroupElement& a) const {
  long s = static_cast<long>(symbols.size());
  return datum.group.index_of(a) << s;
}

long HDAlgebra::symbol_label(long sym_id) const { return 1L << sym_id; }

std::vector<long> HDAlgebra::grouplike_indices() const {
  std::vector<long> out;
  for (long i = 0; i < datum.group.order(); ++i)
    out.push_back(i << symbols.size());
  return out;
}

std::vector<SparseVec> HDAlgebra::grouplike_elements() const {
  std::vector<SparseVec> out;
  for (long i : grouplike_indices()) out.push_back(SparseVec::basis(i));
  return out;
}

namespace {

std::string label_string(const FiniteAbelianGroup& g, const HDBasisLabel& l) {
  std::ostringstream os;
  bool trivial_group = l.group_part == g.identity();
  if (trivial_group && l.wedge.empty()) return "1";
  if (!trivial_group) os << "g" << l.group_part.str();
  for (size_t i = 0; i < l.wedge.size(); ++i) {
    if (!trivial_group || i > 0) os << "*";
    os << "x" << l.wedge[i] + 1;
  }
  return os.str();
}

std::vector<WordLetter> label_word(const HDAlgebra& hd, const HDBasisLabel& l) {
  std::vector<WordLetter> w;
  w.emplace_back(l.group_part);
  for (long s : l.wedge) w.emplace_back(hd.symbols[s]);
  return w;
}

}  // namespace

HDAlgebra build_hd(const Datum& d_in, long max_dim) {
  Datum d = d_in;
  for (auto it = d.n.begin(); it != d.n.end();)
    it = it->second == 0 ? d.n.erase(it) : std::next(it);
  DatumReport rep = validate_datum(d);
  if (!rep.valid())
    throw InputError("invalid datum: " + rep.checks.first_failure());
  if (rep.dimension > max_dim) {
    std::ostringstream os;
    os << "dimension " << rep.dimension << " exceeds bound " << max_dim;
    throw BoundExceeded(os.str());
  }

  HDAlgebra hd;
  hd.datum = d;
  hd.symbols = datum_symbols(d);
  SymbolTable tab(d);
  long s = static_cast<long>(hd.symbols.size());
  long m = d.group.order();
  long dim = m << s;

  for (long gi = 0; gi < m; ++gi)
    for (long mask = 0; mask < (1L << s); ++mask) {
      HDBasisLabel l{d.group.element_at(gi), {}};
      for (long b = 0; b < s; ++b)
        if (mask & (1L << b)) l.wedge.push_back(b);
      hd.index_[l] = static_cast<long>(hd.labels.size());
      hd.labels.push_back(std::move(l));
    }

  HopfStructure& h = hd.hopf;
  h.dim = dim;
  h.basis_labels.resize(dim);
  for (long i = 0; i < dim; ++i)
    h.basis_labels[i] = label_string(d.group, hd.labels[i]);
  h.unit = SparseVec::basis(hd.group_label(d.group.identity()));

  h.mult.assign(dim, std::vector<SparseVec>(dim));
  for (long i = 0; i < dim; ++i) {
    std::vector<WordLetter> wi = label_word(hd, hd.labels[i]);
    for (long j = 0; j < dim; ++j) {
      std::vector<WordLetter> w = wi;
      for (const auto& letter : label_word(hd, hd.labels[j]))
        w.push_back(letter);
      NormalTerm t = normalize_core(d, tab, w, CycloNumber(1));
      if (!t.coeff.is_zero())
        h.mult[i][j] = SparseVec::basis(hd.label_index(t.label), t.coeff);
    }
  }

  h.comult.resize(dim);
  for (long i = 0; i < dim; ++i) {
    h.comult[i].dim = dim;
    const HDBasisLabel& l = hd.labels[i];
    long k = static_cast<long>(l.wedge.size());
    for (long mask = 0; mask < (1L << k); ++mask) {
      // Bit p set: position p goes to the right leg as grade (x) symbol.
      std::vector<WordLetter> left{WordLetter(l.group_part)};
      std::vector<WordLetter> right{WordLetter(l.group_part)};
      for (long p = 0; p < k; ++p) {
        const GeneratorSymbol& sym = hd.symbols[l.wedge[p]];
        if (mask & (1L << p)) {
          left.emplace_back(sym.grade);
          right.emplace_back(sym);
        } else {
          left.emplace_back(sym);
        }
      }
      NormalTerm tl = normalize_core(d, tab, left, CycloNumber(1));
      NormalTerm tr = normalize_core(d, tab, right, CycloNumber(1));
      CycloNumber c = tl.coeff * tr.coeff;
      if (!c.is_zero())
        h.comult[i].v.add_term(
            hd.label_index(tl.label) * dim + hd.label_index(tr.label), c);
    }
  }

  h.counit.resize(dim);
  for (long i = 0; i < dim; ++i)
    h.counit[i] = CycloNumber(hd.labels[i].wedge.empty() ? 1 : 0);

  h.antipode.resize(dim);
  for (long i = 0; i < dim; ++i) {
    const HDBasisLabel& l = hd.labels[i];
    std::vector<WordLetter> w;
    for (auto it = l.wedge.rbegin(); it != l.wedge.rend(); ++it) {
      const GeneratorSymbol& sym = hd.symbols[*it];
      w.emplace_back(d.group.inverse(sym.grade));
      w.emplace_back(sym);
    }
    w.emplace_back(d.group.inverse(l.group_part));
    CycloNumber sign(l.wedge.size() % 2 == 0 ? 1 : -1);
    NormalTerm t = normalize_core(d, tab, w, sign);
    if (!t.coeff.is_zero())
      h.antipode[i] = SparseVec::basis(hd.label_index(t.label), t.coeff);
  }

  Report axioms = verify_hopf_axioms(h);
  if (!axioms.all_pass())
    throw std::logic_error("construction failed Hopf verification: " +
                           axioms.first_failure());
  return hd;
}

HopfStructure group_algebra(const FiniteAbelianGroup& g) {
  long m = g.order();
  HopfStructure h;
  h.dim = m;
  h.basis_labels.resize(m);
  h.mult.assign(m, std::vector<SparseVec>(m));
  h.comult.resize(m);
  h.counit.assign(m, CycloNumber(1));
  h.antipode.resize(m);
  for (long i = 0; i < m; ++i) {
    GroupElement a = g.element_at(i);
    h.basis_labels[i] = "g" + a.str();
    for (long j = 0; j < m; ++j)
      h.mult[i][j] = SparseVec::basis(g.index_of(g.mul(a, g.element_at(j))));
    h.comult[i].dim = m;
    h.comult[i].v.add_term(i * m + i, CycloNumber(1));
    h.antipode[i] = SparseVec::basis(g.index_of(g.inverse(a)));
  }
  h.unit = SparseVec::basis(g.index_of(g.identity()));
  return h;
}

BiproductResult projection_and_biproduct(const HDAlgebra& hd) {
  const HopfStructure& h = hd.hopf;
  const FiniteAbelianGroup& g = hd.datum.group;
  long d = h.dim;
  long m = g.order();
  BiproductResult res;
  res.group_hopf = group_algebra(g);
  const HopfStructure& k = res.group_hopf;

  res.pi = CycloMat(m, d);
  for (long i = 0; i < d; ++i)
    if (hd.labels[i].wedge.empty())
      res.pi.at(g.index_of(hd.labels[i].group_part), i) = CycloNumber(1);

  auto project = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& [i, c] : v.terms)
      if (hd.labels[i].wedge.empty())
        out.add_term(g.index_of(hd.labels[i].group_part), c);
    return out;
  };

  bool alg = true;
  std::string alg_w;
  for (long i = 0; i < d && alg; ++i)
    for (long j = 0; j < d; ++j) {
      SparseVec lhs = project(h.mult[i][j]);
      SparseVec rhs = k.mul(project(SparseVec::basis(i)),
                            project(SparseVec::basis(j)));
      if (lhs != rhs) {
        alg = false;
        alg_w = "pi not multiplicative at " + h.basis_labels[i] + ", " +
                h.basis_labels[j];
        break;
      }
    }
  if (alg && project(h.unit) != k.unit) {
    alg = false;
    alg_w = "pi(1) != 1";
  }
  res.checks.add("pi_algebra_map", alg, alg_w);

  bool coalg = true;
  std::string coalg_w;
  for (long i = 0; i < d && coalg; ++i) {
    TensorElement want;
    want.dim = m;
    for (const auto& [ab, c] : h.comult[i].v.terms) {
      SparseVec pa = project(SparseVec::basis(ab / d));
      SparseVec pb = project(SparseVec::basis(ab % d));
      for (const auto& [x, cx] : pa.terms)
        for (const auto& [y, cy] : pb.terms)
          want.v.add_term(x * m + y, c * cx * cy);
    }
    TensorElement got = k.delta(project(SparseVec::basis(i)));
    if (got != want) {
      coalg = false;
      coalg_w = "pi not comultiplicative at " + h.basis_labels[i];
    }
    if (coalg) {
      CycloNumber ek = k.eps(project(SparseVec::basis(i)));
      if (ek != h.counit[i]) {
        coalg = false;
        coalg_w = "counit mismatch at " + h.basis_labels[i];
      }
    }
  }
  res.checks.add("pi_coalgebra_map", coalg, coalg_w);

  bool anti = true;
  std::string anti_w;
  for (long i = 0; i < d; ++i) {
    SparseVec lhs = project(h.antipode[i]);
    SparseVec rhs = k.apply_antipode(project(SparseVec::basis(i)));
    if (lhs != rhs) {
      anti = false;
      anti_w = "antipode mismatch at " + h.basis_labels[i];
      break;
    }
  }
  res.checks.add("pi_antipode_map", anti, anti_w);

  bool section = true;
  std::string section_w;
  for (long a = 0; a < m; ++a) {
    SparseVec image = project(SparseVec::basis(hd.grouplike_indices()[a]));
    if (image != SparseVec::basis(a)) {
      section = false;
      section_w = "pi o iota != id at " + k.basis_labels[a];
      break;
    }
  }
  res.checks.add("pi_splits_inclusion", section, section_w);

  // B = {x : (id (x) pi) Delta(x) = x (x) 1}.
  CycloMat bmat(d * m, d);
  for (long j = 0; j < d; ++j) {
    SparseVec col;
    for (const auto& [ab, c] : h.comult[j].v.terms) {
      long a = ab / d, b = ab % d;
      if (hd.labels[b].wedge.empty())
        col.add_term(a * m + g.index_of(hd.labels[b].group_part), c);
    }
    col.add_term(j * m + g.index_of(g.identity()), CycloNumber(-1));
    for (const auto& [i, c] : col.terms) bmat.at(i, j) = c;
  }
  Subspace bspan(d);
  for (auto& v : bmat.kernel_basis()) bspan.insert(std::move(v));
  for (const auto& row : bspan.basis())
    res.b_basis.push_back(SparseVec::from_dense(row));

  long total = 0;
  for (const auto& [ge, ng] : hd.datum.n) total += ng;
  res.checks.add("b_dimension",
                 bspan.dim() == (1L << total),
                 "dim B = " + std::to_string(bspan.dim()) + ", expected " +
                     std::to_string(1L << total));

  Subspace gspan(d);
  for (long i : hd.grouplike_indices())
    gspan.insert(SparseVec::basis(i).dense(d));
  Subspace meet = Subspace::intersection(bspan, gspan);
  bool meet_ok = meet.dim() == 1 && meet.contains(h.unit.dense(d));
  res.checks.add("b_meets_group_in_scalars", meet_ok,
                 "B intersect k[G] has dimension " + std::to_string(meet.dim()));

  bool iso_ok = static_cast<long>(res.b_basis.size()) * m == d;
  long iso_rank = 0;
  if (iso_ok) {
    CycloMat iso(d, d);
    long c = 0;
    for (const auto& b : res.b_basis)
      for (long a = 0; a < m; ++a, ++c) {
        SparseVec prod = h.mul(b, SparseVec::basis(hd.grouplike_indices()[a]));
        for (const auto& [i, cv] : prod.terms) iso.at(i, c) = cv;
      }
    iso_rank = iso.rank();
    iso_ok = iso_rank == d;
  }
  res.checks.add("b_times_group_spans", iso_ok,
                 "mult: B (x) k[G] -> H has rank " + std::to_string(iso_rank) +
                     " of " + std::to_string(d));
  return res;
}

}  // namespace hopfforge
