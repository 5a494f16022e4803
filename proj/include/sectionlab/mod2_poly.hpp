#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sectionlab {

/// Polynomial over the two-element field in n <= 4 variables, stored as a sorted set of packed
/// exponent vectors (16 bits per variable, variable k at bit 16k). Every stored monomial has
/// coefficient 1.
class Mod2SymPoly {
 public:
  static constexpr int kMaxVars = 4;
  static constexpr int kMaxExponent = 0xffff;

  explicit Mod2SymPoly(int n = 1);
  static Mod2SymPoly one(int n);
  static Mod2SymPoly variable(int n, int i);
  /// sum_k c_k x_k with coefficients reduced mod 2.
  static Mod2SymPoly linear(const std::vector<int>& coeffs);
  /// Elementary symmetric polynomial sigma_j(x_1..x_n).
  static Mod2SymPoly elementary(int n, int j);
  static Mod2SymPoly from_monomials(int n, const std::vector<std::vector<int>>& exps);

  static std::uint64_t pack(const std::vector<int>& e);
  std::vector<int> unpack(std::uint64_t key) const;

  int nvars() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<std::uint64_t>& terms() const { return terms_; }
  std::vector<std::vector<int>> monomials() const;
  int degree() const;

  /// Value at x = (1,...,1): the parity of the monomial count.
  int eval_all_ones() const { return static_cast<int>(terms_.size() % 2); }

  /// Orbit closure of the monomial set under variable permutations.
  bool is_symmetric() const;

  Mod2SymPoly operator+(const Mod2SymPoly& o) const;
  Mod2SymPoly operator*(const Mod2SymPoly& o) const;
  bool operator==(const Mod2SymPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  Mod2SymPoly shifted(std::uint64_t key) const;

  int n_;
  std::vector<std::uint64_t> terms_;
};

/// Multi-indices j in N^n with |j| = d, lexicographically descending.
std::vector<std::vector<int>> multi_indices(int n, int d);

/// binom(d + n - 1, n - 1).
std::int64_t multi_index_count(int n, int d);

struct ExpansionResult {
  Mod2SymPoly poly;
  std::int64_t factor_count = 0;
  std::int64_t factors_applied = 0;
  bool truncated = false;
  std::string message;
  int ones_eval = 0;
  bool nonzero = false;
};

struct Mod2Options {
  /// Reject even d unless set.
  bool allow_even = false;
  std::size_t monomial_budget = 4'000'000;
};

/// P_d = prod over |j| = d of (sum_k j_k x_k) reduced mod 2. Requires 1 <= n <= 4 and 1 <= d <= 7.
/// Throws InvalidArgument for even d unless opts.allow_even.
ExpansionResult stiefel_whitney_top(int n, int d, const Mod2Options& opts = {});

/// P_1 P_3 ... P_dmax. On budget overflow the product so far is returned with truncated = true.
ExpansionResult sw_product_chain(int n, int d_max, const Mod2Options& opts = {});

struct ElementaryForm {
  /// Exponent vectors over (sigma_1, ..., sigma_n).
  std::vector<std::vector<int>> terms;
  bool complete = false;
};

/// Re-expresses a symmetric polynomial in the elementary symmetric generators (leading-term
/// reduction). Gives up after max_steps reductions (complete = false).
ElementaryForm to_elementary(const Mod2SymPoly& p, int max_steps = 10000);

/// Expands an elementary form back into monomials.
Mod2SymPoly from_elementary(int n, const ElementaryForm& f);

/// Coefficient d! of e^d in the top class of the d-fold sum; exact for d <= 20.
std::uint64_t euler_top_class_coefficient(int d);

/// d! mod p.
std::uint64_t factorial_mod(int d, std::uint64_t p);

}  // namespace sectionlab
