// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Each criterion is self-contained and reports the first failing condition.

#include <sys/wait.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hopfforge/errors.hpp"
#include "hopfforge/triangular.hpp"

using namespace hopfforge;

namespace {

struct Fail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool cond, const std::string& why) {
  if (!cond) throw Fail(why);
}

const Check* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

void need_check(const Report& r, const std::string& name,
                const std::string& where) {
  const Check* c = find_check(r, name);
  need(c != nullptr, where + ": check " + name + " missing");
  need(c->pass, where + ": " + name + ": " + c->witness);
}

// Fixture data, keyed by short names used in the report lines.
Datum fixture_datum(const std::string& key) {
  Datum d;
  if (key.rfind("sw", 0) == 0) {
    long m = key[2] - '0';
    d.group = FiniteAbelianGroup{{2}};
    d.form = SkewForm{d.group, 2, {{1}}};
    if (m > 0) d.n[GroupElement{{1}}] = m;
    return d;
  }
  if (key.rfind("z22", 0) == 0) {
    d.group = FiniteAbelianGroup{{2, 2}};
    if (key == "z22") {
      d.form = SkewForm{d.group, 2, {{1, 1}, {1, 0}}};
      d.n[GroupElement{{1, 0}}] = 1;
      d.n[GroupElement{{1, 1}}] = 1;
    } else if (key == "z22one") {
      d.form = SkewForm{d.group, 2, {{1, 1}, {1, 0}}};
      d.n[GroupElement{{1, 0}}] = 1;
    } else if (key == "z22diag") {
      d.form = SkewForm{d.group, 2, {{1, 0}, {0, 1}}};
      d.n[GroupElement{{0, 1}}] = 2;
    } else {  // z22deep
      d.form = SkewForm{d.group, 2, {{0, 1}, {1, 1}}};
      d.n[GroupElement{{1, 1}}] = 3;
    }
    return d;
  }
  // z44h (unpaired, empty structure space) and z44p (paired)
  d.group = FiniteAbelianGroup{{4, 4}};
  d.form = SkewForm{d.group, 4, {{2, 1}, {3, 2}}};
  d.n[GroupElement{{1, 0}}] = 1;
  if (key == "z44p") d.n[GroupElement{{3, 0}}] = 1;
  return d;
}

long total_multiplicity(const Datum& d) {
  long t = 0;
  for (const auto& [g, m] : d.n) t += m;
  return t;
}

long expected_dimension(const Datum& d) {
  return d.group.order() * (1L << total_multiplicity(d));
}

std::vector<GroupElement> n_support(const Datum& d) {
  std::vector<GroupElement> s;
  for (const auto& [g, m] : d.n)
    if (m > 0) s.push_back(g);
  return s;
}

bool s2_is_identity(const HopfStructure& h) {
  for (long i = 0; i < h.dim; ++i)
    if (h.apply_antipode(h.antipode[i]) != SparseVec::basis(i)) return false;
  return true;
}

CycloNumber trace_of_s2(const HopfStructure& h) {
  CycloNumber tr;
  for (long i = 0; i < h.dim; ++i)
    tr += h.apply_antipode(h.antipode[i]).coeff(i);
  return tr;
}

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string("'") + HOPFFORGE_CLI_PATH + "' " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  need(p != nullptr, "popen failed");
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// ---- independent oracles for criterion 11 ----------------------------------

// Random-order local rewriter: applies one applicable rule at a time at a
// uniformly chosen site. Confluence means any order reaches the same normal
// form as the engine's normalize_word.
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
    throw Fail("rewriter oracle: unknown symbol");
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
    if (sym_id(x) == sym_id(y)) return {CycloNumber(), d.group.identity(), {}};
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

// Exhaustive brute-force filter over candidate exponent matrices. Works
// entirely in integer exponents mod N, so it shares no code with the field
// layer: a candidate is kept when its value table is a skew-symmetric
// bicharacter with square-one diagonal and pairwise distinct rows.
std::set<std::vector<std::vector<long>>> brute_force_form_tables(
    const FiniteAbelianGroup& g) {
  long n = std::max(1L, g.exponent());
  long k = g.rank();
  long total = 1;
  for (long i = 0; i < k * k; ++i) total *= n;
  auto els = g.elements();
  long m = g.order();
  std::set<std::vector<std::vector<long>>> tables;
  for (long code = 0; code < total; ++code) {
    std::vector<std::vector<long>> e(k, std::vector<long>(k));
    long c = code;
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) {
        e[i][j] = c % n;
        c /= n;
      }
    std::vector<std::vector<long>> t(m, std::vector<long>(m, 0));
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        long s = 0;
        for (long i = 0; i < k; ++i)
          for (long j = 0; j < k; ++j)
            s += els[a].e[i] * e[i][j] * els[b].e[j];
        t[a][b] = ((s % n) + n) % n;
      }
    bool ok = true;
    // bicharacter in both arguments, including wraparound products
    for (long a = 0; a < m && ok; ++a)
      for (long b = 0; b < m && ok; ++b) {
        for (long x = 0; x < m && ok; ++x) {
          long ab = g.index_of(g.mul(els[a], els[b]));
          if (t[ab][x] != (t[a][x] + t[b][x]) % n) ok = false;
          if (t[x][ab] != (t[x][a] + t[x][b]) % n) ok = false;
        }
        if ((t[a][b] + t[b][a]) % n != 0) ok = false;
      }
    for (long a = 0; a < m && ok; ++a)
      if ((2 * t[a][a]) % n != 0) ok = false;
    // non-degeneracy: g -> F(g,-) injective
    if (ok) {
      std::set<std::vector<long>> rows;
      for (long a = 0; a < m; ++a) rows.insert(t[a]);
      if (static_cast<long>(rows.size()) != m) ok = false;
    }
    if (ok) tables.insert(t);
  }
  return tables;
}

CycloNumber random_cyclo(std::mt19937_64& rng) {
  static const long conductors[] = {1, 2, 3, 4, 6, 8, 12};
  long n = conductors[rng() % 7];
  CycloNumber v;
  int parts = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < parts; ++i) {
    Rational q(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    q.canonicalize();
    v += CycloNumber(q) *
         CycloNumber::root_of_unity(n, static_cast<long>(rng() % static_cast<std::uint64_t>(n)));
  }
  return v;
}

struct Sample {
  std::string key;
  std::uint64_t seed;
  TensorElement r;
};

}  // namespace

int main() {
  int failures = 0;
  auto criterion = [&](int num, const std::string& name,
                       const std::function<void()>& body) {
    try {
      body();
      std::printf("[PASS] criterion %d: %s\n", num, name.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%s)\n", num, name.c_str(), e.what());
    }
    std::fflush(stdout);
  };

  std::map<std::string, HDAlgebra> built;
  auto algebra = [&](const std::string& key) -> HDAlgebra& {
    auto it = built.find(key);
    if (it == built.end())
      it = built.emplace(key, build_hd(fixture_datum(key), 64)).first;
    return it->second;
  };
  std::vector<Sample> samples;

  criterion(1, "Sweedler algebra dimension, axioms and relations", [&] {
    HDAlgebra& hd = algebra("sw1");
    need(hd.hopf.dim == 4, "dimension is not 4");
    Report ax = verify_hopf_axioms(hd.hopf);
    need(ax.all_pass(), "axioms: " + ax.first_failure());
    long ie = hd.group_label(GroupElement{{0}});
    long ig = hd.group_label(GroupElement{{1}});
    long ix = hd.symbol_label(0);
    need(hd.hopf.mult[ig][ig] == SparseVec::basis(ie), "g*g != 1");
    need(hd.hopf.mult[ix][ix].is_zero(), "x*x != 0");
    need(!hd.hopf.mult[ig][ix].is_zero() &&
             hd.hopf.mult[ig][ix] == (SparseVec() - hd.hopf.mult[ix][ig]),
         "g*x != -x*g");
    need(hd.hopf.unit == SparseVec::basis(ie), "unit is not the identity label");
  });

  criterion(2, "rank-two fixture and group algebra degeneration", [&] {
    HDAlgebra& h2 = algebra("sw2");
    need(h2.hopf.dim == 8, "dimension is not 8");
    Report ax = verify_hopf_axioms(h2.hopf);
    need(ax.all_pass(), "axioms: " + ax.first_failure());
    HDAlgebra& h0 = algebra("sw0");
    HopfStructure kg = group_algebra(FiniteAbelianGroup{{2}});
    need(h0.hopf.dim == kg.dim, "degenerate build has wrong dimension");
    need(h0.hopf.mult == kg.mult, "multiplication differs from k[Z_2]");
    need(h0.hopf.unit == kg.unit, "unit differs from k[Z_2]");
    need(h0.hopf.comult == kg.comult, "comultiplication differs from k[Z_2]");
    need(h0.hopf.counit == kg.counit, "counit differs from k[Z_2]");
    need(h0.hopf.antipode == kg.antipode, "antipode differs from k[Z_2]");
  });

  criterion(3, "dimension law |G| * 2^(sum n_g)", [&] {
    const char* keys[] = {"sw0",     "sw1",     "sw2",  "sw3",
                          "sw4",     "z22one",  "z22",  "z22diag",
                          "z22deep", "z44h",    "z44p"};
    long count = 0;
    std::set<std::vector<long>> groups_seen;
    for (const char* key : keys) {
      Datum d = fixture_datum(key);
      DatumReport rep = validate_datum(d);
      need(rep.valid(), std::string(key) + ": " + rep.checks.first_failure());
      long expect = expected_dimension(d);
      need(rep.dimension == expect,
           std::string(key) + ": reported dimension is wrong");
      HDAlgebra& hd = algebra(key);
      need(hd.hopf.dim == expect,
           std::string(key) + ": built dimension " +
               std::to_string(hd.hopf.dim) + " != " + std::to_string(expect));
      groups_seen.insert(d.group.cyclic_factors);
      ++count;
    }
    need(count >= 10, "fewer than ten data");
    need(groups_seen.size() == 3, "fewer than three distinct groups");
  });

  criterion(4, "triangularity identities on sampled structures", [&] {
    const std::vector<std::pair<std::string, std::vector<std::uint64_t>>> plan =
        {{"sw1", {0, 1, 2, 3, 4, 5, 6, 7}},
         {"sw2", {0, 1, 2, 3, 4, 5}},
         {"z22", {0, 1, 2, 3}},
         {"sw0", {0, 1}}};
    for (const auto& [key, seeds] : plan) {
      Datum d = fixture_datum(key);
      HDAlgebra& hd = algebra(key);
      auto phis = enumerate_phi(d.form, n_support(d));
      need(!phis.empty(), key + ": no admissible dual isomorphism");
      for (std::uint64_t seed : seeds) {
        auto maps = sample_sk(d, seed);
        need(maps.has_value(), key + ": structure space unexpectedly empty");
        StructureChoice t{phis[seed % phis.size()], *maps};
        CycloMat f = build_f_T(hd, t);
        TensorElement r = rmatrix_from_f(hd.hopf, f);
        Report tri = verify_triangular(hd.hopf, r, 64);
        std::string where = key + " seed " + std::to_string(seed);
        for (const char* nm : {"counit_legs", "hexagon_left", "hexagon_right",
                               "intertwiner", "unitarity"})
          need_check(tri, nm, where);
        need(tri.all_pass(), where + ": " + tri.first_failure());
        samples.push_back({key, seed, r});
      }
    }
    need(samples.size() >= 20, "fewer than twenty sampled structures");
  });

  criterion(5, "Drinfeld element laws", [&] {
    need(!samples.empty(), "no sampled structures available");
    bool sweedler_seen = false;
    for (const Sample& s : samples) {
      HDAlgebra& hd = algebra(s.key);
      RMatrixAnalysis an = drinfeld_analysis(hd.hopf, s.r);
      std::string where = s.key + " seed " + std::to_string(s.seed);
      for (const char* nm : {"u_grouplike", "u_squared_one", "u_antipode_fixed",
                             "s2_inner_by_u", "s4_identity"})
        need_check(an.checks, nm, where);
      need(an.checks.all_pass(), where + ": " + an.checks.first_failure());
      if (s.key == "sw1") {
        sweedler_seen = true;
        long ig = hd.group_label(GroupElement{{1}});
        need(an.u == SparseVec::basis(ig), where + ": Drinfeld element is not g");
        need(!s2_is_identity(hd.hopf), "S^2 is the identity on the Sweedler algebra");
      }
    }
    need(sweedler_seen, "no Sweedler structure was sampled");
  });

  criterion(6, "minimality ranks and group R-matrix control", [&] {
    need(!samples.empty(), "no sampled structures available");
    for (const Sample& s : samples) {
      HDAlgebra& hd = algebra(s.key);
      auto [rank, minimal] = minimality_rank(hd.hopf, s.r);
      need(minimal && rank == hd.hopf.dim,
           s.key + " seed " + std::to_string(s.seed) + ": rank " +
               std::to_string(rank) + " != dim " + std::to_string(hd.hopf.dim));
    }
    // The R-matrix of k[Z_2] embedded into the Sweedler algebra is triangular
    // but supported on the group algebra alone, so its rank stays at 2.
    HDAlgebra& sw = algebra("sw1");
    long ie = sw.group_label(GroupElement{{0}});
    long ig = sw.group_label(GroupElement{{1}});
    CycloNumber half{Rational(1, 2)};
    TensorElement rg;
    rg.dim = 4;
    rg.v.add_term(ie * 4 + ie, half);
    rg.v.add_term(ie * 4 + ig, half);
    rg.v.add_term(ig * 4 + ie, half);
    rg.v.add_term(ig * 4 + ig, -half);
    need(verify_triangular(sw.hopf, rg, 64).all_pass(),
         "embedded group R-matrix is not triangular");
    auto [rank, minimal] = minimality_rank(sw.hopf, rg);
    need(rank == 2, "embedded group R-matrix rank is not 2");
    need(!minimal, "embedded group R-matrix reported as minimal");
  });

  criterion(7, "divisibility by four and trace of S^2", [&] {
    const char* keys[] = {"sw1",     "sw2",     "sw3",     "sw4", "z22",
                          "z22one",  "z22diag", "z22deep", "z44p"};
    long covered = 0;
    bool big_seen = false;
    for (const char* key : keys) {
      Datum d = fixture_datum(key);
      if (total_multiplicity(d) == 0) continue;
      if (!validate_datum(d).feasible) continue;
      if (enumerate_phi(d.form, n_support(d)).empty()) continue;
      if (!sample_sk(d, 0).has_value()) continue;
      HDAlgebra& hd = algebra(key);
      need(!s2_is_identity(hd.hopf), std::string(key) + ": S^2 is the identity");
      need(hd.hopf.dim % 4 == 0,
           std::string(key) + ": dimension " + std::to_string(hd.hopf.dim) +
               " is not divisible by 4");
      CycloNumber tr = trace_of_s2(hd.hopf);
      need(tr.is_zero(), std::string(key) + ": trace of S^2 is " + tr.str());
      ++covered;
      if (hd.hopf.dim == 64) big_seen = true;
    }
    need(covered >= 6, "fewer than six fixtures exercised");
    need(big_seen, "no dimension-64 fixture exercised");
  });

  criterion(8, "biproduct, skew primitives and coradical", [&] {
    for (const char* key : {"sw1", "sw2", "z22"}) {
      Datum d = fixture_datum(key);
      HDAlgebra& hd = algebra(key);
      BiproductResult bp = projection_and_biproduct(hd);
      need_check(bp.checks, "b_dimension", key);
      need_check(bp.checks, "b_meets_group_in_scalars", key);
      need(bp.checks.all_pass(), std::string(key) + ": " + bp.checks.first_failure());
      need(static_cast<long>(bp.b_basis.size()) ==
               (1L << total_multiplicity(d)),
           std::string(key) + ": invariant subalgebra has wrong dimension");

      auto elements = d.group.elements();
      for (const GroupElement& a : elements)
        for (const GroupElement& b : elements) {
          SparseVec va = SparseVec::basis(hd.group_label(a));
          SparseVec vb = SparseVec::basis(hd.group_label(b));
          auto space = skew_primitive_space(hd.hopf, va, vb);
          long expect =
              a == b ? 0 : 1 + d.n_of(d.group.mul(d.group.inverse(a), b));
          need(static_cast<long>(space.size()) == expect,
               std::string(key) + ": dim P_{" + a.str() + "," + b.str() +
                   "} = " + std::to_string(space.size()) + " != " +
                   std::to_string(expect));
        }

      CoradicalReport cr = coradical_level1(hd.hopf, hd.grouplike_elements());
      need(cr.checks.all_pass(), std::string(key) + ": " + cr.checks.first_failure());
      long ng = d.group.order();
      long law = ng * (1 + total_multiplicity(d));
      need(cr.dim == law && cr.expected_dim == law,
           std::string(key) + ": coradical level-1 dimension " +
               std::to_string(cr.dim) + " != " + std::to_string(law));
      long decomposition = ng;
      for (size_t i = 0; i < cr.pair_dims.size(); ++i)
        for (size_t j = 0; j < cr.pair_dims[i].size(); ++j)
          if (i != j) decomposition += cr.pair_dims[i][j] - 1;
      need(decomposition == cr.dim,
           std::string(key) + ": decomposition count mismatch");
    }
    // On the Sweedler algebra the invariants are exactly span{1, x}.
    BiproductResult bp = projection_and_biproduct(algebra("sw1"));
    std::vector<SparseVec> expect = {SparseVec::basis(0), SparseVec::basis(1)};
    need(bp.b_basis == expect, "Sweedler invariants are not span{1, x}");
  });

  criterion(9, "odd groups and empty structure spaces", [&] {
    for (std::vector<long> f : {std::vector<long>{3}, {5}, {9}}) {
      auto forms = enumerate_forms(FiniteAbelianGroup{f});
      need(forms.empty(), "odd cyclic group admits a form");
    }
    // Odd non-cyclic groups may carry symplectic forms, but never with
    // F(g,g) = -1 anywhere: I_F != {} forces even order.
    bool nonempty_i_f_seen = false;
    for (std::vector<long> f :
         {std::vector<long>{2}, {2, 2}, {4, 4}, {2, 4}, {6}, {3, 3}}) {
      FiniteAbelianGroup g{f};
      for (const SkewForm& form : enumerate_forms(g)) {
        need(validate_form(form).valid(), "enumerated form fails validation");
        UfIf ui = u_f_and_i_f(form);
        if (!ui.i_f.empty()) {
          nonempty_i_f_seen = true;
          need(g.order() % 2 == 0, "odd-order group with nonempty I_F");
        }
      }
    }
    need(nonempty_i_f_seen, "no form with nonempty I_F was enumerated");

    Datum d = fixture_datum("z44h");
    DatumReport rep = validate_datum(d);
    need(rep.valid(), "unpaired datum should be valid");
    need(!rep.feasible, "unpaired datum reported feasible");
    need(sk_parameter_count(d) == 0, "unpaired datum has structure parameters");
    for (std::uint64_t seed : {0, 1, 2, 7})
      need(!sample_sk(d, seed).has_value(),
           "unpaired datum yielded a structure sample");

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hopfforge_acceptance";
    fs::create_directories(dir);
    fs::path file = dir / "z44_unpaired.json";
    std::ofstream(file)
        << R"({"form":{"conductor":4,"cyclic_factors":[4,4],)"
        << R"("exponent_matrix":[[2,1],[3,2]]},"group":{"cyclic_factors":[4,4]},)"
        << R"("n":[{"element":[1,0],"value":1}]})";
    CliResult res = run_cli("classify " + file.string());
    need(res.exit_code == 0, "classify exited with " + std::to_string(res.exit_code));
    need(res.output.find("S(k) is empty") != std::string::npos,
         "classify does not report the empty structure space");
  });

  criterion(10, "datum recovery round trips", [&] {
    const std::vector<std::pair<std::string, std::vector<std::uint64_t>>> plan =
        {{"sw0", {0, 1}},
         {"sw1", {0, 1, 7}},
         {"sw2", {0, 1}},
         {"z22", {0, 3}},
         {"z44p", {0}}};
    long trips = 0;
    for (const auto& [key, seeds] : plan) {
      Datum d = fixture_datum(key);
      HDAlgebra& hd = algebra(key);
      auto phis = enumerate_phi(d.form, n_support(d));
      need(!phis.empty(), key + ": no admissible dual isomorphism");
      for (std::uint64_t seed : seeds) {
        auto maps = sample_sk(d, seed);
        need(maps.has_value(), key + ": structure space unexpectedly empty");
        StructureChoice t{phis[seed % phis.size()], *maps};
        CycloMat f = build_f_T(hd, t);
        TensorElement r = rmatrix_from_f(hd.hopf, f);
        Generators gens;
        gens.grouplikes = hd.grouplike_elements();
        for (size_t i = 0; i < hd.symbols.size(); ++i)
          gens.skew_primitives.push_back(
              SparseVec::basis(hd.symbol_label(static_cast<long>(i))));
        ExtractionResult ex = extract_datum(hd.hopf, r, gens, 64);
        std::string where = key + " seed " + std::to_string(seed);
        need_check(ex.checks, "relation_laws", where);
        need(ex.checks.all_pass(), where + ": " + ex.checks.first_failure());
        if (d.group.rank() <= 1) {
          need(ex.datum.group == d.group && ex.datum.form == d.form &&
                   ex.datum.n == d.n,
               where + ": extracted datum is not the original");
        } else {
          need(datum_equivalent(ex.datum, d),
               where + ": extracted datum is not equivalent to the original");
        }
        ++trips;
      }
    }
    need(trips >= 10, "fewer than ten recovery round trips");
  });

  criterion(11, "independent oracle agreement", [&] {
    // 1. Confluence: the engine's normal form equals a randomized rewriter's.
    std::mt19937_64 rng(20260819);
    std::vector<Datum> data = {fixture_datum("sw1"), fixture_datum("sw2"),
                               fixture_datum("z22"), fixture_datum("z44p")};
    long zero_seen = 0, nonzero_seen = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const Datum& d = data[trial % data.size()];
      auto symbols = datum_symbols(d);
      std::vector<WordLetter> word;
      size_t len = rng() % 7;
      for (size_t i = 0; i < len; ++i) {
        if (rng() % 5 < 2 || symbols.empty())
          word.push_back(d.group.element_at(
              static_cast<long>(rng() % static_cast<std::uint64_t>(d.group.order()))));
        else
          word.push_back(symbols[rng() % symbols.size()]);
      }
      OracleResult expect = oracle_normalize(d, word, rng);
      NormalTerm got = normalize_word(d, word);
      if (expect.coeff.is_zero()) {
        ++zero_seen;
        need(got.coeff.is_zero(), "rewriter oracle disagrees on a zero word");
      } else {
        ++nonzero_seen;
        need(got.coeff == expect.coeff && got.label.group_part == expect.group_part &&
                 got.label.wedge == expect.wedge,
             "rewriter oracle disagrees at trial " + std::to_string(trial));
      }
    }
    need(zero_seen > 500 && nonzero_seen > 3000,
         "rewriter fuzz did not exercise both outcomes");

    // 2. Field axioms on random cyclotomic numbers.
    for (int trial = 0; trial < 150; ++trial) {
      CycloNumber a = random_cyclo(rng), b = random_cyclo(rng),
                  c = random_cyclo(rng);
      need((a + b) + c == a + (b + c), "addition is not associative");
      need((a * b) * c == a * (b * c), "multiplication is not associative");
      need(a + b == b + a && a * b == b * a, "field operations not commutative");
      need(a * (b + c) == a * b + a * c, "multiplication does not distribute");
      need(a + CycloNumber() == a && a * CycloNumber(1) == a,
           "identity laws fail");
      need((a - a).is_zero(), "additive inverse fails");
      if (!a.is_zero())
        need((a * a.inverse()).is_one(), "multiplicative inverse fails");
      need((a * b).conjugate() == a.conjugate() * b.conjugate(),
           "conjugation is not multiplicative");
      need(a.pow(3) == a * a * a, "integer power disagrees with products");
    }

    // 3. Form counts against the exhaustive integer-table filter.
    const std::pair<std::vector<long>, long> cases[] = {
        {{2}, 1}, {{2, 2}, 4}, {{4}, 0}};
    for (const auto& [factors, want] : cases) {
      FiniteAbelianGroup g{factors};
      auto tables = brute_force_form_tables(g);
      need(static_cast<long>(tables.size()) == want,
           "brute-force count is " + std::to_string(tables.size()) + ", want " +
               std::to_string(want));
      auto engine = enumerate_forms(g);
      need(static_cast<long>(engine.size()) == want,
           "engine form count differs from brute force");
      long n = std::max(1L, g.exponent());
      auto els = g.elements();
      for (const SkewForm& f : engine) {
        need(f.conductor == n, "enumerated form has non-minimal conductor");
        std::vector<std::vector<long>> t(g.order(),
                                         std::vector<long>(g.order(), 0));
        for (long a = 0; a < g.order(); ++a)
          for (long b = 0; b < g.order(); ++b) {
            long s = 0;
            for (long i = 0; i < g.rank(); ++i)
              for (long j = 0; j < g.rank(); ++j)
                s += els[a].e[i] * f.e[i][j] * els[b].e[j];
            t[a][b] = ((s % n) + n) % n;
          }
        need(tables.count(t) == 1, "engine form missing from brute-force set");
      }
    }
  });

  if (failures == 0) {
    std::printf("all 11 criteria passed\n");
    return 0;
  }
  std::printf("%d of 11 criteria failed\n", failures);
  return 1;
}
