#include "hopfforge/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "hopfforge/errors.hpp"

namespace hopfforge {

Rational rat_parse(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  // Reject whitespace and anything but an optional sign, digits, one '/'.
  bool seen_slash = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '-' && (i == 0 || s[i - 1] == '/')) continue;
    if (ch == '/' && !seen_slash && i > 0) {
      seen_slash = true;
      continue;
    }
    if (ch < '0' || ch > '9') throw InputError("bad rational literal: " + s);
  }
  if (s.back() == '/' || s.back() == '-')
    throw InputError("bad rational literal: " + s);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: " + s);
  if (q.get_den() == 0) throw InputError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

namespace {

long totient(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<long> divisors_of(long n) {
  std::vector<long> d;
  for (long i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

using ZPoly = std::vector<mpz_class>;  // coefficient vector, index = degree

// Exact division p / q for monic q; p must be a multiple of q.
ZPoly zpoly_div_exact(const ZPoly& p, const ZPoly& q) {
  ZPoly rem = p;
  long dq = static_cast<long>(q.size()) - 1;
  long dp = static_cast<long>(rem.size()) - 1;
  ZPoly quot(std::max<long>(dp - dq + 1, 1), 0);
  for (long k = dp - dq; k >= 0; --k) {
    mpz_class c = rem[k + dq];
    quot[k] = c;
    if (c != 0)
      for (long i = 0; i <= dq; ++i) rem[k + i] -= c * q[i];
  }
  for (const auto& c : rem)
    if (c != 0) throw std::logic_error("inexact cyclotomic division");
  return quot;
}

const ZPoly& cyclotomic_poly(long n);

ZPoly compute_cyclotomic(long n) {
  if (n == 1) return ZPoly{-1, 1};
  ZPoly p(n + 1, 0);  // x^n - 1
  p[0] = -1;
  p[n] = 1;
  for (long d : divisors_of(n))
    if (d < n) p = zpoly_div_exact(p, cyclotomic_poly(d));
  return p;
}

std::mutex g_cyclo_mutex;

const ZPoly& cyclotomic_poly(long n) {
  static std::map<long, ZPoly> memo;  // guarded by g_cyclo_mutex via tables()
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  ZPoly p = compute_cyclotomic(n);
  return memo.emplace(n, std::move(p)).first->second;
}

// Gauss-Jordan; returns rank. Rows of `a` are reduced in place. Pivot policy:
// scan columns left to right, take the first row with a nonzero entry.
int rref_rows(std::vector<std::vector<Rational>>& a,
              std::vector<int>* pivot_cols = nullptr) {
  if (a.empty()) return 0;
  int rows = static_cast<int>(a.size());
  int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    Rational inv = 1 / a[r][c];
    for (int j = 0; j < cols; ++j) {
      Rational t = a[r][j] * inv;
      a[r][j] = t;
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      if (a[i][c] != 0) {
        Rational f = a[i][c];
        for (int j = 0; j < cols; ++j) {
          Rational t = a[i][j] - f * a[r][j];
          a[i][j] = t;
        }
      }
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

struct Descent {
  long m = 1;
  long phim = 1;
  // U is phi(n) x phi(n) with U*T in reduced form [I; 0] for the embedding
  // matrix T of Q(zeta_m) into Q(zeta_n). Membership and coordinates of a
  // vector v come from w = U*v: in the subfield iff w[phim..] == 0, and then
  // the subfield coordinates are w[0..phim).
  std::vector<std::vector<Rational>> u;
};

struct Tables {
  long n = 1;
  long phi = 1;
  ZPoly minpoly;
  // pow[j] = zeta_n^j in the power basis, integer coordinates,
  // j in [0, max(n, 2*phi-1)).
  std::vector<std::vector<mpz_class>> pow;
  std::vector<Descent> descents;  // proper divisors of n, ascending
};

const Tables& tables(long n);

std::unique_ptr<Tables> build_tables(long n) {
  auto t = std::make_unique<Tables>();
  t->n = n;
  t->phi = totient(n);
  t->minpoly = cyclotomic_poly(n);
  long limit = std::max(n, 2 * t->phi - 1);
  t->pow.resize(limit);
  for (long j = 0; j < t->phi; ++j) {
    t->pow[j].assign(t->phi, 0);
    t->pow[j][j] = 1;
  }
  for (long j = t->phi; j < limit; ++j) {
    // pow[j] = x * pow[j-1] reduced mod Phi_n.
    const auto& prev = t->pow[j - 1];
    std::vector<mpz_class> cur(t->phi, 0);
    for (long i = 0; i + 1 < t->phi; ++i) cur[i + 1] = prev[i];
    const mpz_class& lead = prev[t->phi - 1];
    if (lead != 0)
      for (long i = 0; i < t->phi; ++i) cur[i] -= lead * t->minpoly[i];
    t->pow[j] = std::move(cur);
  }
  for (long m : divisors_of(n)) {
    if (m == n) continue;
    Descent d;
    d.m = m;
    d.phim = totient(m);
    // Embedding matrix T: column i is zeta_n^{i*(n/m)}, i < phi(m).
    long stride = n / m;
    std::vector<std::vector<Rational>> aug(
        t->phi, std::vector<Rational>(d.phim + t->phi, 0));
    for (long i = 0; i < d.phim; ++i) {
      const auto& col = t->pow[i * stride];
      for (long r = 0; r < t->phi; ++r) aug[r][i] = Rational(col[r]);
    }
    for (long r = 0; r < t->phi; ++r) aug[r][d.phim + r] = 1;
    std::vector<int> pivots;
    rref_rows(aug, &pivots);
    // T must have full column rank phi(m): every T column carries a pivot.
    long rank_t = 0;
    for (int c : pivots)
      if (c < d.phim) ++rank_t;
    if (rank_t != d.phim) throw std::logic_error("embedding not injective");
    d.u.assign(t->phi, std::vector<Rational>(t->phi));
    for (long r = 0; r < t->phi; ++r)
      for (long c = 0; c < t->phi; ++c) d.u[r][c] = aug[r][d.phim + c];
    t->descents.push_back(std::move(d));
  }
  return t;
}

const Tables& tables(long n) {
  static std::map<long, std::unique_ptr<Tables>> memo;
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  auto it = memo.find(n);
  if (it != memo.end()) return *it->second;
  return *memo.emplace(n, build_tables(n)).first->second;
}

// Solves the square system A*y = b over Q. Returns false if singular.
bool solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                  std::vector<Rational>& out) {
  int nn = static_cast<int>(a.size());
  for (int i = 0; i < nn; ++i) a[i].push_back(b[i]);
  int rank = rref_rows(a);
  if (rank != nn) return false;
  out.assign(nn, 0);
  for (int i = 0; i < nn; ++i) out[i] = a[i][nn];
  return true;
}

}  // namespace

CycloNumber::CycloNumber() : n_(1), c_{Rational(0)} {}

CycloNumber::CycloNumber(long v) : n_(1), c_{Rational(v)} {}

CycloNumber::CycloNumber(const Rational& v) : n_(1), c_{v} {
  c_[0].canonicalize();
}

CycloNumber CycloNumber::raw(long n, std::vector<Rational> c) {
  CycloNumber x;
  x.n_ = n;
  x.c_ = std::move(c);
  x.canonicalize();
  return x;
}

void CycloNumber::canonicalize() {
  if (n_ == 1) {
    if (c_.empty()) c_.assign(1, Rational(0));
    return;
  }
  const Tables& t = tables(n_);
  for (const Descent& d : t.descents) {
    // w = U * c_; membership in Q(zeta_m) iff tail of w vanishes.
    std::vector<Rational> w(t.phi, 0);
    bool member = true;
    for (long r = t.phi - 1; r >= 0; --r) {
      Rational acc = 0;
      for (long c = 0; c < t.phi; ++c)
        if (c_[c] != 0 && d.u[r][c] != 0) {
          Rational term = d.u[r][c] * c_[c];
          acc += term;
        }
      w[r] = acc;
      if (r >= d.phim && acc != 0) {
        member = false;
        break;
      }
    }
    if (member) {
      n_ = d.m;
      c_.assign(w.begin(), w.begin() + d.phim);
      return;  // divisors ascend, so the first hit is the minimal conductor
    }
  }
}

CycloNumber CycloNumber::root_of_unity(long n, long k) {
  if (n < 1) throw InputError("root_of_unity: order must be positive");
  k %= n;
  if (k < 0) k += n;
  const Tables& t = tables(n);
  std::vector<Rational> c(t.phi);
  for (long i = 0; i < t.phi; ++i) c[i] = Rational(t.pow[k][i]);
  return raw(n, std::move(c));
}

bool CycloNumber::is_zero() const { return n_ == 1 && c_[0] == 0; }

bool CycloNumber::is_one() const { return n_ == 1 && c_[0] == 1; }

const Rational& CycloNumber::rational_value() const {
  if (n_ != 1) throw std::logic_error("not a rational value");
  return c_[0];
}

namespace {

// Lifts coordinates from conductor n to conductor l (n | l).
std::vector<Rational> embed(long n, const std::vector<Rational>& c, long l) {
  const Tables& t = tables(l);
  if (n == l) return c;
  long stride = l / n;
  std::vector<Rational> out(t.phi, 0);
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const auto& row = t.pow[static_cast<long>(i) * stride];
    for (long r = 0; r < t.phi; ++r)
      if (row[r] != 0) {
        Rational term = c[i] * Rational(row[r]);
        out[r] += term;
      }
  }
  return out;
}

}  // namespace

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
  if (n_ == 1 && o.n_ == 1) {
    Rational s = c_[0] + o.c_[0];
    return CycloNumber(s);
  }
  long l = std::lcm(n_, o.n_);
  std::vector<Rational> a = embed(n_, c_, l);
  std::vector<Rational> b = embed(o.n_, o.c_, l);
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return raw(l, std::move(a));
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& x : r.c_) {
    Rational t = -x;
    x = t;
  }
  return r;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const {
  return *this + (-o);
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
  if (n_ == 1 && o.n_ == 1) {
    Rational p = c_[0] * o.c_[0];
    return CycloNumber(p);
  }
  if (n_ == 1) {
    if (c_[0] == 0) return CycloNumber();
    CycloNumber r = o;
    for (auto& x : r.c_) {
      Rational t = x * c_[0];
      x = t;
    }
    r.canonicalize();  // scaling cannot raise the conductor, may not lower it
    return r;
  }
  if (o.n_ == 1) return o * *this;
  long l = std::lcm(n_, o.n_);
  const Tables& t = tables(l);
  std::vector<Rational> a = embed(n_, c_, l);
  std::vector<Rational> b = embed(o.n_, o.c_, l);
  std::vector<Rational> conv(2 * t.phi - 1, 0);
  for (long i = 0; i < t.phi; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < t.phi; ++j)
      if (b[j] != 0) {
        Rational term = a[i] * b[j];
        conv[i + j] += term;
      }
  }
  std::vector<Rational> out(conv.begin(), conv.begin() + t.phi);
  for (long j = t.phi; j < 2 * t.phi - 1; ++j) {
    if (conv[j] == 0) continue;
    const auto& row = t.pow[j];
    for (long r = 0; r < t.phi; ++r)
      if (row[r] != 0) {
        Rational term = conv[j] * Rational(row[r]);
        out[r] += term;
      }
  }
  return raw(l, std::move(out));
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (n_ == 1) {
    Rational inv = 1 / c_[0];
    return CycloNumber(inv);
  }
  const Tables& t = tables(n_);
  // Columns of M are x^j * v reduced; solve M*y = e_0.
  std::vector<std::vector<Rational>> m(t.phi, std::vector<Rational>(t.phi, 0));
  std::vector<Rational> col = c_;
  for (long j = 0; j < t.phi; ++j) {
    for (long r = 0; r < t.phi; ++r) m[r][j] = col[r];
    if (j + 1 < t.phi) {
      // col = x * col mod Phi_n
      std::vector<Rational> next(t.phi, 0);
      for (long i = 0; i + 1 < t.phi; ++i) next[i + 1] = col[i];
      const Rational& lead = col[t.phi - 1];
      if (lead != 0)
        for (long i = 0; i < t.phi; ++i) {
          Rational term = lead * Rational(t.minpoly[i]);
          next[i] -= term;
        }
      col = std::move(next);
    }
  }
  std::vector<Rational> rhs(t.phi, 0);
  rhs[0] = 1;
  std::vector<Rational> y;
  if (!solve_square(std::move(m), std::move(rhs), y))
    throw std::logic_error("inverse: singular multiplication matrix");
  return raw(n_, std::move(y));
}

CycloNumber CycloNumber::pow(long e) const {
  if (e == 0) return CycloNumber(1);
  CycloNumber base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1
                          : static_cast<unsigned long>(e);
  CycloNumber acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

CycloNumber CycloNumber::conjugate() const {
  if (n_ == 1) return *this;
  const Tables& t = tables(n_);
  std::vector<Rational> out(t.phi, 0);
  for (long i = 0; i < t.phi; ++i) {
    if (c_[i] == 0) continue;
    const auto& row = t.pow[(n_ - i) % n_];
    for (long r = 0; r < t.phi; ++r)
      if (row[r] != 0) {
        Rational term = c_[i] * Rational(row[r]);
        out[r] += term;
      }
  }
  return raw(n_, std::move(out));
}

bool CycloNumber::operator==(const CycloNumber& o) const {
  return n_ == o.n_ && c_ == o.c_;  // canonical form makes this sound
}

bool CycloNumber::operator<(const CycloNumber& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (size_t i = 0; i < c_.size(); ++i) {
    int s = cmp(c_[i], o.c_[i]);
    if (s != 0) return s < 0;
  }
  return false;
}

std::string CycloNumber::str() const {
  if (n_ == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational v = c_[i];
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) {
        Rational t = -v;
        v = t;
      }
    }
    first = false;
    if (i == 0) {
      os << v.get_str();
      continue;
    }
    if (v != 1) os << v.get_str() << "*";
    os << "z" << n_;
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace hopfforge
