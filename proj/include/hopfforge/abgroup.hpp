#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopfforge/cyclo.hpp"

namespace hopfforge {

/** Element of a finite abelian group, as exponents of the cyclic factors. */
struct GroupElement {
  std::vector<long> e;
  bool operator==(const GroupElement& o) const { return e == o.e; }
  bool operator!=(const GroupElement& o) const { return e != o.e; }
  bool operator<(const GroupElement& o) const { return e < o.e; }
  std::string str() const;
};

/** Character of a finite abelian group, as exponents of the dual basis. */
struct Character {
  std::vector<long> c;
  bool operator==(const Character& o) const { return c == o.c; }
  bool operator<(const Character& o) const { return c < o.c; }
};

/**
 * Finite abelian group presented as a product of cyclic factors Z_{d_i},
 * d_i >= 2. The empty factor list is the trivial group. Elements are
 * enumerated in mixed-radix order with the last factor varying fastest;
 * this order is the canonical one everywhere in the engine.
 */
struct FiniteAbelianGroup {
  std::vector<long> cyclic_factors;

  long rank() const { return static_cast<long>(cyclic_factors.size()); }
  long order() const;
  long exponent() const;  // lcm of the factors; 1 for the trivial group

  GroupElement identity() const;
  GroupElement reduce(GroupElement a) const;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement pow(const GroupElement& a, long k) const;
  long element_order(const GroupElement& a) const;

  long index_of(const GroupElement& a) const;
  GroupElement element_at(long idx) const;
  std::vector<GroupElement> elements() const;

  // <chi, g> = prod_i zeta_{d_i}^{c_i e_i}, a root of unity of order
  // dividing the exponent.
  CycloNumber pair(const Character& chi, const GroupElement& g) const;
  Character character_at(long idx) const;  // same mixed-radix order

  bool operator==(const FiniteAbelianGroup& o) const {
    return cyclic_factors == o.cyclic_factors;
  }
};

/**
 * Skew-symmetric bicharacter F on G, stored as the exponent matrix E mod N:
 * F(g, h) = zeta_N^{g . E . h}, so F(gen_i, gen_j) = zeta_N^{E_ij}.
 * Well-definedness forces E_ij to be a multiple of N / gcd(d_i, d_j), and
 * N must be a multiple of the group exponent.
 */
struct SkewForm {
  FiniteAbelianGroup group;
  long conductor = 1;                // N
  std::vector<std::vector<long>> e;  // rank x rank, entries mod N

  CycloNumber eval(const GroupElement& a, const GroupElement& b) const;
  // g -> F(g, -) as a character; requires bicharacter consistency.
  Character f_map(const GroupElement& g) const;
  bool operator==(const SkewForm& o) const {
    return group == o.group && conductor == o.conductor && e == o.e;
  }
};

struct FormCheck {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct FormReport {
  std::vector<FormCheck> checks;
  bool valid() const;
  std::string first_failure() const;
};

// Checks shape, bicharacter consistency (E_ij multiple of N/gcd(d_i,d_j)),
// skew-symmetry (E_ij + E_ji = 0 mod N, diagonal square condition
// F(g,g)^2 = 1), and non-degeneracy of g -> F(g,-). Non-degeneracy is
// brute-forced at desk scale and decided through the elementary divisors of
// E above the threshold.
FormReport validate_form(const SkewForm& f);

struct UfIf {
  std::vector<int> u;                 // U_F(g) in {+1,-1}, indexed like G
  std::vector<GroupElement> i_f;      // {g : F(g,g) = -1}, enumeration order
};

// U_F(g) = F(g,g); verifies U_F is a homomorphism into {±1}.
UfIf u_f_and_i_f(const SkewForm& f);

// All valid skew forms on G, deterministic order. Throws BoundExceeded when
// |G| > max_order.
std::vector<SkewForm> enumerate_forms(const FiniteAbelianGroup& g,
                                      long max_order = 64);

/** Isomorphism G* -> G given by images of the dual basis characters. */
struct DualIso {
  std::vector<GroupElement> images;
  GroupElement apply(const FiniteAbelianGroup& g, const Character& chi) const;
  bool operator==(const DualIso& o) const { return images == o.images; }
};

// All isomorphisms phi: G* -> G with <alpha, phi(beta)> <beta, phi(alpha)> = 1
// for all characters alpha, beta, and phi(f(g)) = g for every g in i_f_prime.
std::vector<DualIso> enumerate_phi(const SkewForm& f,
                                   const std::vector<GroupElement>& i_f_prime,
                                   long max_order = 64);

/**
 * Smith normal form of an integer matrix: D = U*A*V with U, V unimodular and
 * D diagonal with d_1 | d_2 | ... Only D, V and V^{-1} are returned; entries
 * are exact integers.
 */
struct SmithResult {
  std::vector<std::vector<mpz_class>> d;
  std::vector<std::vector<mpz_class>> v;
  std::vector<std::vector<mpz_class>> v_inv;
};
SmithResult smith_normal_form(std::vector<std::vector<mpz_class>> a);

}  // namespace hopfforge
