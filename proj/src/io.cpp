#include "hopfforge/io.hpp"

#include <fstream>
#include <sstream>

#include "hopfforge/errors.hpp"

namespace hopfforge {

namespace {

long get_long(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string(what) + " must be an integer");
  return j.get<long>();
}

const Json& get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<long> long_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<long> out;
  for (const auto& v : j) out.push_back(get_long(v, what));
  return out;
}

}  // namespace

std::string canonical(const Json& j) { return j.dump(); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
  if (!out) throw InputError("write failed: " + path);
}

Json cyclo_to_json(const CycloNumber& c) {
  Json coeffs = Json::array();
  for (const Rational& r : c.coeffs()) coeffs.push_back(rat_str(r));
  return Json{{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

CycloNumber cyclo_from_json(const Json& j) {
  long n = get_long(get_field(j, "conductor"), "conductor");
  if (n < 1) throw InputError("conductor must be >= 1");
  const Json& cs = get_field(j, "coeffs");
  if (!cs.is_array() || cs.empty())
    throw InputError("coeffs must be a nonempty array");
  CycloNumber zeta = CycloNumber::root_of_unity(n, 1);
  CycloNumber out;
  std::vector<std::string> raw;
  for (const auto& e : cs) {
    if (!e.is_string())
      throw InputError("cyclotomic coefficients must be rational strings");
    raw.push_back(e.get<std::string>());
    Rational r = rat_parse(raw.back());
    if (rat_str(r) != raw.back())
      throw InputError("rational literal not in lowest terms: " + raw.back());
    out += CycloNumber(r) * zeta.pow(static_cast<long>(raw.size()) - 1);
  }
  if (out.conductor() != n ||
      static_cast<long>(raw.size()) != static_cast<long>(out.coeffs().size()) ||
      canonical(cyclo_to_json(out)) != canonical(j))
    throw InputError("cyclotomic literal is not in canonical form");
  return out;
}

Json group_to_json(const FiniteAbelianGroup& g) {
  return Json{{"cyclic_factors", g.cyclic_factors}};
}

FiniteAbelianGroup group_from_json(const Json& j) {
  FiniteAbelianGroup g;
  g.cyclic_factors = long_vector(get_field(j, "cyclic_factors"), "cyclic factor");
  for (long d : g.cyclic_factors)
    if (d < 2) throw InputError("cyclic factors must be >= 2");
  return g;
}

Json form_to_json(const SkewForm& f) {
  return Json{{"cyclic_factors", f.group.cyclic_factors},
              {"conductor", f.conductor},
              {"exponent_matrix", f.e}};
}

SkewForm form_from_json(const Json& j) {
  SkewForm f;
  f.group.cyclic_factors =
      long_vector(get_field(j, "cyclic_factors"), "cyclic factor");
  for (long d : f.group.cyclic_factors)
    if (d < 2) throw InputError("cyclic factors must be >= 2");
  f.conductor = get_long(get_field(j, "conductor"), "conductor");
  if (f.conductor < 1) throw InputError("form conductor must be >= 1");
  const Json& em = get_field(j, "exponent_matrix");
  long r = f.group.rank();
  if (!em.is_array() || static_cast<long>(em.size()) != r)
    throw InputError("exponent_matrix must have one row per cyclic factor");
  for (const auto& row : em) {
    std::vector<long> rv = long_vector(row, "exponent");
    if (static_cast<long>(rv.size()) != r)
      throw InputError("exponent_matrix must be square");
    for (long v : rv)
      if (v < 0 || v >= f.conductor)
        throw InputError("exponent entries must lie in [0, conductor)");
    f.e.push_back(std::move(rv));
  }
  return f;
}

Json datum_to_json(const Datum& d) {
  Json n = Json::array();
  for (const auto& [g, v] : d.n)
    n.push_back(Json{{"element", g.e}, {"value", v}});
  return Json{{"group", group_to_json(d.group)},
              {"form", form_to_json(d.form)},
              {"n", n}};
}

Datum datum_from_json(const Json& j) {
  Datum d;
  d.group = group_from_json(get_field(j, "group"));
  d.form = form_from_json(get_field(j, "form"));
  if (!(d.form.group == d.group))
    throw InputError("form cyclic_factors disagree with the group");
  const Json& n = get_field(j, "n");
  if (!n.is_array()) throw InputError("n must be an array");
  GroupElement prev;
  bool first = true;
  for (const auto& entry : n) {
    GroupElement g{long_vector(get_field(entry, "element"), "element exponent")};
    if (static_cast<long>(g.e.size()) != d.group.rank())
      throw InputError("element exponent vector has the wrong length");
    for (long i = 0; i < d.group.rank(); ++i)
      if (g.e[i] < 0 || g.e[i] >= d.group.cyclic_factors[i])
        throw InputError("element exponents must be reduced");
    if (!first && !(prev < g))
      throw InputError("n entries must be sorted by element, without repeats");
    prev = g;
    first = false;
    long v = get_long(get_field(entry, "value"), "multiplicity");
    if (v < 0) throw InputError("multiplicities must be non-negative");
    d.n[g] = v;
  }
  return d;
}

Json structure_to_json(const HopfStructure& h) {
  Json out;
  out["dimension"] = h.dim;
  out["basis_labels"] = h.basis_labels;
  Json mult = Json::array();
  for (long i = 0; i < h.dim; ++i)
    for (long j = 0; j < h.dim; ++j)
      for (const auto& [k, c] : h.mult[i][j].terms)
        mult.push_back(Json::array({i, j, k, cyclo_to_json(c)}));
  out["mult"] = std::move(mult);
  Json comult = Json::array();
  for (long i = 0; i < h.dim; ++i)
    for (const auto& [ab, c] : h.comult[i].v.terms)
      comult.push_back(
          Json::array({i, ab / h.dim, ab % h.dim, cyclo_to_json(c)}));
  out["comult"] = std::move(comult);
  Json counit = Json::array();
  for (const auto& c : h.counit) counit.push_back(cyclo_to_json(c));
  out["counit"] = std::move(counit);
  Json anti = Json::array();
  for (long i = 0; i < h.dim; ++i) {
    Json row = Json::array();
    for (long j = 0; j < h.dim; ++j)
      row.push_back(cyclo_to_json(h.antipode[j].coeff(i)));
    anti.push_back(std::move(row));
  }
  out["antipode"] = std::move(anti);
  return out;
}

HopfStructure structure_from_json(const Json& j) {
  HopfStructure h;
  h.dim = get_long(get_field(j, "dimension"), "dimension");
  if (h.dim < 1) throw InputError("dimension must be >= 1");
  const Json& labels = get_field(j, "basis_labels");
  if (!labels.is_array() || static_cast<long>(labels.size()) != h.dim)
    throw InputError("basis_labels must list one label per basis element");
  for (const auto& l : labels) {
    if (!l.is_string()) throw InputError("basis labels must be strings");
    h.basis_labels.push_back(l.get<std::string>());
  }

  auto in_range = [&](long v, const char* what) {
    if (v < 0 || v >= h.dim)
      throw InputError(std::string(what) + " index out of range");
    return v;
  };

  h.mult.assign(h.dim, std::vector<SparseVec>(h.dim));
  const Json& mult = get_field(j, "mult");
  if (!mult.is_array()) throw InputError("mult must be an array");
  long prev_key = -1;
  for (const auto& q : mult) {
    if (!q.is_array() || q.size() != 4)
      throw InputError("mult entries are [i, j, k, c] quadruples");
    long i = in_range(get_long(q[0], "mult"), "mult");
    long jj = in_range(get_long(q[1], "mult"), "mult");
    long k = in_range(get_long(q[2], "mult"), "mult");
    long key = (i * h.dim + jj) * h.dim + k;
    if (key <= prev_key)
      throw InputError("mult entries must be strictly sorted by (i, j, k)");
    prev_key = key;
    CycloNumber c = cyclo_from_json(q[3]);
    if (c.is_zero()) throw InputError("mult entries must be nonzero");
    h.mult[i][jj].add_term(k, c);
  }

  h.comult.assign(h.dim, TensorElement{});
  for (auto& t : h.comult) t.dim = h.dim;
  const Json& comult = get_field(j, "comult");
  if (!comult.is_array()) throw InputError("comult must be an array");
  prev_key = -1;
  for (const auto& q : comult) {
    if (!q.is_array() || q.size() != 4)
      throw InputError("comult entries are [i, j, k, c] quadruples");
    long i = in_range(get_long(q[0], "comult"), "comult");
    long a = in_range(get_long(q[1], "comult"), "comult");
    long b = in_range(get_long(q[2], "comult"), "comult");
    long key = (i * h.dim + a) * h.dim + b;
    if (key <= prev_key)
      throw InputError("comult entries must be strictly sorted by (i, j, k)");
    prev_key = key;
    CycloNumber c = cyclo_from_json(q[3]);
    if (c.is_zero()) throw InputError("comult entries must be nonzero");
    h.comult[i].v.add_term(a * h.dim + b, c);
  }

  const Json& counit = get_field(j, "counit");
  if (!counit.is_array() || static_cast<long>(counit.size()) != h.dim)
    throw InputError("counit must list one value per basis element");
  for (const auto& c : counit) h.counit.push_back(cyclo_from_json(c));

  const Json& anti = get_field(j, "antipode");
  if (!anti.is_array() || static_cast<long>(anti.size()) != h.dim)
    throw InputError("antipode must be a dense dimension x dimension matrix");
  h.antipode.assign(h.dim, SparseVec{});
  for (long i = 0; i < h.dim; ++i) {
    const Json& row = anti[i];
    if (!row.is_array() || static_cast<long>(row.size()) != h.dim)
      throw InputError("antipode must be a dense dimension x dimension matrix");
    for (long jj = 0; jj < h.dim; ++jj) {
      CycloNumber c = cyclo_from_json(row[jj]);
      if (!c.is_zero()) h.antipode[jj].add_term(i, c);
    }
  }

  // Unit recovery: m(S (x) id)Delta(b) = eps(b) 1 for any b with eps(b) != 0.
  long src = -1;
  for (long i = 0; i < h.dim; ++i)
    if (!h.counit[i].is_zero()) {
      src = i;
      break;
    }
  if (src < 0) throw InputError("counit is identically zero");
  SparseVec cand;
  for (const auto& [ab, c] : h.comult[src].v.terms)
    cand.axpy(c, h.mul(h.antipode[ab / h.dim], SparseVec::basis(ab % h.dim)));
  cand = cand.scaled(h.counit[src].inverse());
  for (long i = 0; i < h.dim; ++i) {
    SparseVec b = SparseVec::basis(i);
    if (h.mul(cand, b) != b || h.mul(b, cand) != b)
      throw InputError(
          "structure constants admit no unit consistent with the antipode");
  }
  h.unit = std::move(cand);
  return h;
}

Json labels_to_json(const HDAlgebra& hd) {
  Json labels = Json::array();
  for (long i = 0; i < static_cast<long>(hd.labels.size()); ++i) {
    Json wedge = Json::array();
    for (long sid : hd.labels[i].wedge)
      wedge.push_back(Json::array(
          {hd.symbols[sid].grade.e, hd.symbols[sid].index}));
    labels.push_back(Json{{"index", i},
                          {"group_part", hd.labels[i].group_part.e},
                          {"wedge_part", wedge}});
  }
  return Json{{"group", Json{{"cyclic_factors", hd.datum.group.cyclic_factors}}},
              {"labels", labels}};
}

Json labels_to_json(const LabelMap& m) {
  Json labels = Json::array();
  for (const auto& l : m.labels) {
    Json wedge = Json::array();
    for (const auto& [grade, idx] : l.wedge)
      wedge.push_back(Json::array({grade, idx}));
    labels.push_back(Json{{"index", l.index},
                          {"group_part", l.group_part},
                          {"wedge_part", wedge}});
  }
  return Json{{"group", Json{{"cyclic_factors", m.cyclic_factors}}},
              {"labels", labels}};
}

LabelMap labels_from_json(const Json& j) {
  LabelMap m;
  m.cyclic_factors = long_vector(
      get_field(get_field(j, "group"), "cyclic_factors"), "cyclic factor");
  const Json& labels = get_field(j, "labels");
  if (!labels.is_array()) throw InputError("labels must be an array");
  for (const auto& l : labels) {
    LabelEntry e;
    e.index = get_long(get_field(l, "index"), "label index");
    e.group_part = long_vector(get_field(l, "group_part"), "group exponent");
    const Json& wedge = get_field(l, "wedge_part");
    if (!wedge.is_array()) throw InputError("wedge_part must be an array");
    for (const auto& w : wedge) {
      if (!w.is_array() || w.size() != 2)
        throw InputError("wedge entries are [grade, index] pairs");
      e.wedge.emplace_back(long_vector(w[0], "grade exponent"),
                           get_long(w[1], "symbol index"));
    }
    m.labels.push_back(std::move(e));
  }
  return m;
}

Json sparse_vec_to_json(const SparseVec& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v.terms)
    out.push_back(Json::array({i, cyclo_to_json(c)}));
  return out;
}

SparseVec sparse_vec_from_json(const Json& j, long dim) {
  if (!j.is_array()) throw InputError("sparse vector must be an array");
  SparseVec v;
  long prev = -1;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2)
      throw InputError("sparse vector entries are [index, c] pairs");
    long i = get_long(t[0], "vector");
    if (i < 0 || i >= dim) throw InputError("vector index out of range");
    if (i <= prev) throw InputError("vector entries must be strictly sorted");
    prev = i;
    CycloNumber c = cyclo_from_json(t[1]);
    if (c.is_zero()) throw InputError("vector entries must be nonzero");
    v.add_term(i, c);
  }
  return v;
}

Json rmatrix_to_json(const TensorElement& r) {
  Json out = Json::array();
  for (const auto& [ij, c] : r.v.terms)
    out.push_back(Json::array({ij / r.dim, ij % r.dim, cyclo_to_json(c)}));
  return out;
}

TensorElement rmatrix_from_json(const Json& j, long dim) {
  if (!j.is_array()) throw InputError("R-matrix file must be an array");
  TensorElement r;
  r.dim = dim;
  long prev = -1;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3)
      throw InputError("R-matrix entries are [i, j, c] triples");
    long a = get_long(t[0], "R");
    long b = get_long(t[1], "R");
    if (a < 0 || a >= dim || b < 0 || b >= dim)
      throw InputError("R-matrix index out of range");
    long key = a * dim + b;
    if (key <= prev)
      throw InputError("R-matrix entries must be strictly sorted");
    prev = key;
    CycloNumber c = cyclo_from_json(t[2]);
    if (c.is_zero()) throw InputError("R-matrix entries must be nonzero");
    r.v.add_term(key, c);
  }
  return r;
}

Json generators_to_json(const Generators& g) {
  Json gl = Json::array(), sp = Json::array();
  for (const auto& v : g.grouplikes) gl.push_back(sparse_vec_to_json(v));
  for (const auto& v : g.skew_primitives) sp.push_back(sparse_vec_to_json(v));
  return Json{{"grouplikes", gl}, {"skew_primitives", sp}};
}

Generators generators_from_json(const Json& j, long dim) {
  Generators g;
  const Json& gl = get_field(j, "grouplikes");
  if (!gl.is_array()) throw InputError("grouplikes must be an array");
  for (const auto& v : gl) g.grouplikes.push_back(sparse_vec_from_json(v, dim));
  const Json& sp = get_field(j, "skew_primitives");
  if (!sp.is_array()) throw InputError("skew_primitives must be an array");
  for (const auto& v : sp)
    g.skew_primitives.push_back(sparse_vec_from_json(v, dim));
  return g;
}

Json structure_choice_to_json(const StructureChoice& t) {
  Json phi = Json::array();
  for (const auto& g : t.phi.images) phi.push_back(g.e);
  Json mm = Json::array();
  for (const auto& [g, mat] : t.m_maps) {
    Json rows = Json::array();
    for (long i = 0; i < mat.rows(); ++i) {
      Json row = Json::array();
      for (long jj = 0; jj < mat.cols(); ++jj)
        row.push_back(cyclo_to_json(mat.at(i, jj)));
      rows.push_back(std::move(row));
    }
    mm.push_back(Json{{"grade", g.e}, {"matrix", rows}});
  }
  return Json{{"phi", phi}, {"m_maps", mm}};
}

StructureChoice structure_choice_from_json(const Json& j) {
  StructureChoice t;
  const Json& phi = get_field(j, "phi");
  if (!phi.is_array()) throw InputError("phi must be an array");
  for (const auto& img : phi)
    t.phi.images.push_back(GroupElement{long_vector(img, "phi image")});
  const Json& mm = get_field(j, "m_maps");
  if (!mm.is_array()) throw InputError("m_maps must be an array");
  for (const auto& entry : mm) {
    GroupElement g{long_vector(get_field(entry, "grade"), "grade exponent")};
    const Json& rows = get_field(entry, "matrix");
    if (!rows.is_array() || rows.empty())
      throw InputError("M map matrix must be a nonempty array of rows");
    long cols = -1;
    CycloMat mat;
    long r = static_cast<long>(rows.size());
    for (long i = 0; i < r; ++i) {
      if (!rows[i].is_array())
        throw InputError("M map matrix rows must be arrays");
      if (cols < 0) {
        cols = static_cast<long>(rows[i].size());
        if (cols == 0) throw InputError("M map matrix rows must be nonempty");
        mat = CycloMat(r, cols);
      } else if (static_cast<long>(rows[i].size()) != cols) {
        throw InputError("M map matrix must be rectangular");
      }
      for (long jj = 0; jj < cols; ++jj)
        mat.at(i, jj) = cyclo_from_json(rows[i][jj]);
    }
    if (t.m_maps.count(g)) throw InputError("duplicate M map grade");
    t.m_maps[g] = std::move(mat);
  }
  return t;
}

Json report_to_json(const Report& r) {
  Json out = Json::object();
  for (const auto& c : r.checks)
    out[c.name] = Json{{"pass", c.pass}, {"witness", c.witness}};
  return out;
}

}  // namespace hopfforge
