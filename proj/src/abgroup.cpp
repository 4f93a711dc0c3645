#include "hopfforge/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "hopfforge/errors.hpp"

namespace hopfforge {

std::string GroupElement::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) os << ",";
    os << e[i];
  }
  os << ")";
  return os.str();
}

long FiniteAbelianGroup::order() const {
  long n = 1;
  for (long d : cyclic_factors) n *= d;
  return n;
}

long FiniteAbelianGroup::exponent() const {
  long e = 1;
  for (long d : cyclic_factors) e = std::lcm(e, d);
  return e;
}

GroupElement FiniteAbelianGroup::identity() const {
  return GroupElement{std::vector<long>(cyclic_factors.size(), 0)};
}

GroupElement FiniteAbelianGroup::reduce(GroupElement a) const {
  for (size_t i = 0; i < cyclic_factors.size(); ++i) {
    a.e[i] %= cyclic_factors[i];
    if (a.e[i] < 0) a.e[i] += cyclic_factors[i];
  }
  return a;
}

GroupElement FiniteAbelianGroup::mul(const GroupElement& a,
                                     const GroupElement& b) const {
  GroupElement r = a;
  for (size_t i = 0; i < cyclic_factors.size(); ++i) r.e[i] += b.e[i];
  return reduce(std::move(r));
}

GroupElement FiniteAbelianGroup::inverse(const GroupElement& a) const {
  GroupElement r = a;
  for (auto& x : r.e) x = -x;
  return reduce(std::move(r));
}

GroupElement FiniteAbelianGroup::pow(const GroupElement& a, long k) const {
  GroupElement r = a;
  for (size_t i = 0; i < cyclic_factors.size(); ++i) {
    long m = cyclic_factors[i];
    long e = (a.e[i] % m) * (k % m) % m;
    r.e[i] = e;
  }
  return reduce(std::move(r));
}

long FiniteAbelianGroup::element_order(const GroupElement& a) const {
  long o = 1;
  for (size_t i = 0; i < cyclic_factors.size(); ++i) {
    long d = cyclic_factors[i];
    long oi = d / std::gcd(d, a.e[i] == 0 ? d : a.e[i]);
    o = std::lcm(o, oi);
  }
  return o;
}

long FiniteAbelianGroup::index_of(const GroupElement& a) const {
  long idx = 0;
  for (size_t i = 0; i < cyclic_factors.size(); ++i)
    idx = idx * cyclic_factors[i] + a.e[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(long idx) const {
  GroupElement a{std::vector<long>(cyclic_factors.size(), 0)};
  for (long i = rank() - 1; i >= 0; --i) {
    a.e[i] = idx % cyclic_factors[i];
    idx /= cyclic_factors[i];
  }
  return a;
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order());
  for (long i = 0; i < order(); ++i) out.push_back(element_at(i));
  return out;
}

CycloNumber FiniteAbelianGroup::pair(const Character& chi,
                                     const GroupElement& g) const {
  long ex = exponent();
  long acc = 0;
  for (size_t i = 0; i < cyclic_factors.size(); ++i) {
    long d = cyclic_factors[i];
    acc = (acc + chi.c[i] % d * (g.e[i] % d) % d * (ex / d)) % ex;
  }
  return CycloNumber::root_of_unity(ex, acc);
}

Character FiniteAbelianGroup::character_at(long idx) const {
  return Character{element_at(idx).e};
}

CycloNumber SkewForm::eval(const GroupElement& a, const GroupElement& b) const {
  long n = conductor;
  long acc = 0;
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = 0; j < e.size(); ++j)
      acc = (acc + a.e[i] % n * (e[i][j] % n) % n * (b.e[j] % n)) % n;
  return CycloNumber::root_of_unity(n, acc);
}

Character SkewForm::f_map(const GroupElement& g) const {
  long n = conductor;
  Character chi{std::vector<long>(group.rank(), 0)};
  for (long j = 0; j < group.rank(); ++j) {
    long m = 0;
    for (long i = 0; i < group.rank(); ++i)
      m = (m + g.e[i] % n * (e[i][j] % n)) % n;
    long dj = group.cyclic_factors[j];
    long step = n / dj;
    if (m % step != 0)
      throw std::logic_error("f_map: form not a bicharacter");
    chi.c[j] = (m / step) % dj;
  }
  return chi;
}

bool FormReport::valid() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string FormReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name + ": " + c.witness;
  return "";
}

namespace {

// |image| of the map Z^r -> (Z/N)^r given by E, from elementary divisors.
// Used for the non-degeneracy count above the brute-force threshold:
// |ker f| = |G| / |image|.
long image_size_mod(const std::vector<std::vector<long>>& e, long n) {
  long r = static_cast<long>(e.size());
  std::vector<std::vector<mpz_class>> a(r, std::vector<mpz_class>(r));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) a[i][j] = e[i][j];
  SmithResult s = smith_normal_form(std::move(a));
  long img = 1;
  for (long i = 0; i < r; ++i) {
    mpz_class si = i < static_cast<long>(s.d.size()) ? s.d[i][i] : 0;
    mpz_class g = gcd(si, mpz_class(n));
    img *= n / g.get_si();
  }
  return img;
}

constexpr long kBruteForceOrderLimit = 4096;

}  // namespace

FormReport validate_form(const SkewForm& f) {
  FormReport rep;
  const auto& g = f.group;
  long r = g.rank();
  long n = f.conductor;

  FormCheck shape{"shape", true, ""};
  if (n < 1) {
    shape.pass = false;
    shape.witness = "conductor must be >= 1";
  } else if (static_cast<long>(f.e.size()) != r) {
    shape.pass = false;
    shape.witness = "matrix must be rank x rank";
  } else {
    for (long i = 0; i < r && shape.pass; ++i) {
      if (static_cast<long>(f.e[i].size()) != r) {
        shape.pass = false;
        shape.witness = "matrix must be rank x rank";
      } else {
        for (long j = 0; j < r; ++j)
          if (f.e[i][j] < 0 || f.e[i][j] >= n) {
            shape.pass = false;
            shape.witness = "entries must lie in [0, conductor)";
            break;
          }
      }
    }
  }
  if (shape.pass && n % g.exponent() != 0) {
    shape.pass = false;
    shape.witness = "conductor must be a multiple of the group exponent";
  }
  rep.checks.push_back(shape);
  if (!shape.pass) return rep;

  FormCheck bichar{"bicharacter", true, ""};
  for (long i = 0; i < r && bichar.pass; ++i)
    for (long j = 0; j < r; ++j) {
      long step = n / std::gcd(g.cyclic_factors[i], g.cyclic_factors[j]);
      if (f.e[i][j] % step != 0) {
        bichar.pass = false;
        std::ostringstream os;
        os << "E[" << i << "][" << j << "]=" << f.e[i][j]
           << " not a multiple of " << step;
        bichar.witness = os.str();
        break;
      }
    }
  rep.checks.push_back(bichar);

  FormCheck skew{"skew_symmetry", true, ""};
  for (long i = 0; i < r && skew.pass; ++i)
    for (long j = 0; j < r; ++j)
      if ((f.e[i][j] + f.e[j][i]) % n != 0) {
        skew.pass = false;
        std::ostringstream os;
        os << "E[" << i << "][" << j << "] + E[" << j << "][" << i
           << "] = " << f.e[i][j] + f.e[j][i] << " mod " << n;
        skew.witness = os.str();
        break;
      }
  rep.checks.push_back(skew);
  if (!bichar.pass || !skew.pass) return rep;

  FormCheck nondeg{"non_degenerate", true, ""};
  if (g.order() <= kBruteForceOrderLimit) {
    // Injectivity of g -> F(g,-): the kernel is {g : g.E = 0 mod N}.
    for (long idx = 1; idx < g.order(); ++idx) {
      GroupElement a = g.element_at(idx);
      bool in_kernel = true;
      for (long j = 0; j < r && in_kernel; ++j) {
        long m = 0;
        for (long i = 0; i < r; ++i)
          m = (m + a.e[i] % n * (f.e[i][j] % n)) % n;
        if (m != 0) in_kernel = false;
      }
      if (in_kernel) {
        nondeg.pass = false;
        nondeg.witness = "kernel contains " + a.str();
        break;
      }
    }
  } else {
    long ker = g.order() / image_size_mod(f.e, n);
    if (ker != 1) {
      nondeg.pass = false;
      std::ostringstream os;
      os << "kernel of g -> F(g,-) has order " << ker
         << " (no witness computed at this scale)";
      nondeg.witness = os.str();
    }
  }
  rep.checks.push_back(nondeg);
  return rep;
}

UfIf u_f_and_i_f(const SkewForm& f) {
  const auto& g = f.group;
  UfIf out;
  out.u.resize(g.order());
  long n = f.conductor;
  for (long idx = 0; idx < g.order(); ++idx) {
    GroupElement a = g.element_at(idx);
    long acc = 0;
    for (long i = 0; i < g.rank(); ++i)
      for (long j = 0; j < g.rank(); ++j)
        acc = (acc + a.e[i] % n * (f.e[i][j] % n) % n * (a.e[j] % n)) % n;
    // F(g,g) is +-1; acc is 0 or N/2 mod N.
    if (acc == 0) {
      out.u[idx] = 1;
    } else if (2 * acc % n == 0) {
      out.u[idx] = -1;
      out.i_f.push_back(a);
    } else {
      throw std::logic_error("u_f_and_i_f: F(g,g) not a sign");
    }
  }
  // U_F must be a homomorphism; a valid skew form guarantees it.
  for (long i = 0; i < g.order(); ++i)
    for (long j = 0; j < g.order(); ++j) {
      long k = g.index_of(g.mul(g.element_at(i), g.element_at(j)));
      if (out.u[k] != out.u[i] * out.u[j])
        throw std::logic_error("u_f_and_i_f: U_F not a homomorphism");
    }
  return out;
}

std::vector<SkewForm> enumerate_forms(const FiniteAbelianGroup& g,
                                      long max_order) {
  if (g.order() > max_order) {
    std::ostringstream os;
    os << "enumerate_forms: group order " << g.order() << " exceeds bound "
       << max_order;
    throw BoundExceeded(os.str());
  }
  long r = g.rank();
  long n = g.exponent();
  std::vector<SkewForm> out;

  // Free slots: diagonal entries (0 or N/2 when allowed), then the strict
  // upper triangle in row-major order; lower triangle is determined.
  struct Slot {
    long i, j;
    std::vector<long> choices;
  };
  std::vector<Slot> slots;
  for (long i = 0; i < r; ++i) {
    Slot s{i, i, {0}};
    long step = n / g.cyclic_factors[i];  // gcd(d_i, d_i) = d_i
    if (n % 2 == 0 && (n / 2) % step == 0) s.choices.push_back(n / 2);
    slots.push_back(std::move(s));
  }
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      Slot s{i, j, {}};
      long step = n / std::gcd(g.cyclic_factors[i], g.cyclic_factors[j]);
      for (long v = 0; v < n; v += step) s.choices.push_back(v);
      slots.push_back(std::move(s));
    }

  std::vector<size_t> pick(slots.size(), 0);
  while (true) {
    SkewForm f;
    f.group = g;
    f.conductor = n;
    f.e.assign(r, std::vector<long>(r, 0));
    for (size_t s = 0; s < slots.size(); ++s) {
      long v = slots[s].choices[pick[s]];
      f.e[slots[s].i][slots[s].j] = v;
      if (slots[s].i != slots[s].j) f.e[slots[s].j][slots[s].i] = (n - v) % n;
    }
    if (validate_form(f).valid()) out.push_back(std::move(f));
    // Mixed-radix increment, last slot fastest.
    long s = static_cast<long>(slots.size()) - 1;
    while (s >= 0) {
      if (++pick[s] < slots[s].choices.size()) break;
      pick[s] = 0;
      --s;
    }
    if (s < 0) break;  // covers the rank-0 case after its single iteration
  }
  return out;
}

GroupElement DualIso::apply(const FiniteAbelianGroup& g,
                            const Character& chi) const {
  GroupElement out = g.identity();
  for (size_t i = 0; i < images.size(); ++i)
    out = g.mul(out, g.pow(images[i], chi.c[i]));
  return out;
}

namespace {

long subgroup_size(const FiniteAbelianGroup& g,
                   const std::vector<GroupElement>& gens) {
  std::set<std::vector<long>> seen;
  std::vector<GroupElement> queue{g.identity()};
  seen.insert(g.identity().e);
  while (!queue.empty()) {
    GroupElement x = queue.back();
    queue.pop_back();
    for (const auto& t : gens) {
      GroupElement y = g.mul(x, t);
      if (seen.insert(y.e).second) queue.push_back(y);
    }
  }
  return static_cast<long>(seen.size());
}

}  // namespace

std::vector<DualIso> enumerate_phi(const SkewForm& f,
                                   const std::vector<GroupElement>& i_f_prime,
                                   long max_order) {
  const auto& g = f.group;
  if (g.order() > max_order) {
    std::ostringstream os;
    os << "enumerate_phi: group order " << g.order() << " exceeds bound "
       << max_order;
    throw BoundExceeded(os.str());
  }
  long r = g.rank();
  long m = g.order();
  long ex = g.exponent();
  std::vector<DualIso> out;
  if (r == 0) {
    out.push_back(DualIso{});
    return out;
  }

  // Integer pairing exponent: <chi, h> = zeta_ex^pairing_exp(chi, h).
  auto pairing_exp = [&](const Character& chi, const GroupElement& h) {
    long acc = 0;
    for (long i = 0; i < r; ++i) {
      long d = g.cyclic_factors[i];
      acc = (acc + chi.c[i] % d * (h.e[i] % d) % d * (ex / d)) % ex;
    }
    return acc;
  };

  std::vector<GroupElement> images(r, g.identity());
  std::vector<GroupElement> partial;
  auto rec = [&](auto&& self, long i) -> void {
    if (i == r) {
      DualIso phi{images};
      // (i) <alpha, phi(beta)> <beta, phi(alpha)> = 1 over all pairs.
      std::vector<GroupElement> phi_of(m, g.identity());
      for (long c = 0; c < m; ++c) phi_of[c] = phi.apply(g, g.character_at(c));
      for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) {
          long s = (pairing_exp(g.character_at(a), phi_of[b]) +
                    pairing_exp(g.character_at(b), phi_of[a])) %
                   ex;
          if (s != 0) return;
        }
      // (ii) phi(f(h)) = h on the designated elements.
      for (const auto& h : i_f_prime)
        if (phi.apply(g, f.f_map(h)) != h) return;
      out.push_back(std::move(phi));
      return;
    }
    long di = g.cyclic_factors[i];
    for (long idx = 0; idx < m; ++idx) {
      GroupElement t = g.element_at(idx);
      if (g.element_order(t) > di) continue;  // must extend to a homomorphism
      partial.push_back(t);
      long span = subgroup_size(g, partial);
      long rest = 1;
      for (long j = i + 1; j < r; ++j) rest *= g.cyclic_factors[j];
      if (span * rest >= m) {
        images[i] = t;
        if (i + 1 < r || span == m) self(self, i + 1);
      }
      partial.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

SmithResult smith_normal_form(std::vector<std::vector<mpz_class>> a) {
  long rows = static_cast<long>(a.size());
  long cols = rows ? static_cast<long>(a[0].size()) : 0;
  SmithResult res;
  res.v.assign(cols, std::vector<mpz_class>(cols, 0));
  res.v_inv.assign(cols, std::vector<mpz_class>(cols, 0));
  for (long i = 0; i < cols; ++i) res.v[i][i] = res.v_inv[i][i] = 1;

  auto swap_cols = [&](long c1, long c2) {
    for (long i = 0; i < rows; ++i) std::swap(a[i][c1], a[i][c2]);
    for (long i = 0; i < cols; ++i) std::swap(res.v[i][c1], res.v[i][c2]);
    std::swap(res.v_inv[c1], res.v_inv[c2]);
  };
  auto add_col = [&](long dst, long src, const mpz_class& q) {
    // col_dst += q * col_src; v tracks the same op, v_inv the inverse row op.
    for (long i = 0; i < rows; ++i) a[i][dst] += q * a[i][src];
    for (long i = 0; i < cols; ++i) res.v[i][dst] += q * res.v[i][src];
    for (long j = 0; j < cols; ++j) res.v_inv[src][j] -= q * res.v_inv[dst][j];
  };
  auto swap_rows = [&](long r1, long r2) { std::swap(a[r1], a[r2]); };
  auto add_row = [&](long dst, long src, const mpz_class& q) {
    for (long j = 0; j < cols; ++j) a[dst][j] += q * a[src][j];
  };

  long t = 0;
  long lim = std::min(rows, cols);
  while (t < lim) {
    // Find pivot: smallest nonzero absolute value in the trailing block.
    long pi = -1, pj = -1;
    mpz_class best;
    for (long i = t; i < rows; ++i)
      for (long j = t; j < cols; ++j)
        if (a[i][j] != 0) {
          mpz_class v = abs(a[i][j]);
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (long i = t + 1; i < rows; ++i)
        if (a[i][t] != 0) {
          mpz_class q = a[i][t] / a[t][t];  // C++ truncates toward zero
          add_row(i, t, -q);
          if (a[i][t] != 0) {
            swap_rows(t, i);
            clean = false;
          }
        }
      for (long j = t + 1; j < cols; ++j)
        if (a[t][j] != 0) {
          mpz_class q = a[t][j] / a[t][t];
          add_col(j, t, -q);
          if (a[t][j] != 0) {
            swap_cols(t, j);
            clean = false;
          }
        }
    }
    // Divisibility: pivot must divide every remaining entry.
    bool redo = false;
    for (long i = t + 1; i < rows && !redo; ++i)
      for (long j = t + 1; j < cols; ++j)
        if (a[i][j] % a[t][t] != 0) {
          add_row(t, i, 1);
          redo = true;
          break;
        }
    if (redo) continue;
    if (a[t][t] < 0) {
      for (long i = 0; i < rows; ++i) a[i][t] = -a[i][t];
      for (long i = 0; i < cols; ++i) res.v[i][t] = -res.v[i][t];
      for (long j = 0; j < cols; ++j) res.v_inv[t][j] = -res.v_inv[t][j];
    }
    ++t;
  }
  res.d = std::move(a);
  return res;
}

}  // namespace hopfforge
