#include "sectionlab/mod2_poly.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <numeric>
#include <sstream>

#include "sectionlab/errors.hpp"

namespace sectionlab {

namespace {

constexpr int kBits = 16;

std::vector<std::uint64_t> sym_diff(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_vars(int n) {
  if (n < 1 || n > Mod2SymPoly::kMaxVars) throw InvalidArgument("mod-2 polynomials support 1..4 variables");
}

}  // namespace

Mod2SymPoly::Mod2SymPoly(int n) : n_(n) { check_vars(n); }

Mod2SymPoly Mod2SymPoly::one(int n) {
  Mod2SymPoly p(n);
  p.terms_.push_back(0);
  return p;
}

Mod2SymPoly Mod2SymPoly::variable(int n, int i) {
  Mod2SymPoly p(n);
  if (i < 0 || i >= n) throw InvalidArgument("Mod2SymPoly::variable: index out of range");
  p.terms_.push_back(std::uint64_t{1} << (kBits * i));
  return p;
}

Mod2SymPoly Mod2SymPoly::linear(const std::vector<int>& coeffs) {
  Mod2SymPoly p(static_cast<int>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] % 2 != 0) p.terms_.push_back(std::uint64_t{1} << (kBits * k));
  std::sort(p.terms_.begin(), p.terms_.end());
  return p;
}

Mod2SymPoly Mod2SymPoly::elementary(int n, int j) {
  check_vars(n);
  Mod2SymPoly p(n);
  if (j < 0 || j > n) return p;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != j) continue;
    std::uint64_t key = 0;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) key += std::uint64_t{1} << (kBits * k);
    p.terms_.push_back(key);
  }
  std::sort(p.terms_.begin(), p.terms_.end());
  return p;
}

Mod2SymPoly Mod2SymPoly::from_monomials(int n, const std::vector<std::vector<int>>& exps) {
  Mod2SymPoly p(n);
  std::vector<std::uint64_t> keys;
  for (const auto& e : exps) {
    if (static_cast<int>(e.size()) != n) throw SizeMismatch("from_monomials: exponent length differs from n");
    keys.push_back(pack(e));
  }
  std::sort(keys.begin(), keys.end());
  // Pairs cancel.
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    if ((j - i) % 2 == 1) p.terms_.push_back(keys[i]);
    i = j;
  }
  return p;
}

std::uint64_t Mod2SymPoly::pack(const std::vector<int>& e) {
  if (e.size() > static_cast<std::size_t>(kMaxVars)) throw InvalidArgument("pack: too many variables");
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] < 0 || e[k] > kMaxExponent) throw InvalidArgument("pack: exponent out of range");
    key |= static_cast<std::uint64_t>(e[k]) << (kBits * k);
  }
  return key;
}

std::vector<int> Mod2SymPoly::unpack(std::uint64_t key) const {
  std::vector<int> e(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) e[static_cast<std::size_t>(k)] = static_cast<int>((key >> (kBits * k)) & 0xffff);
  return e;
}

std::vector<std::vector<int>> Mod2SymPoly::monomials() const {
  std::vector<std::vector<int>> out;
  out.reserve(terms_.size());
  for (auto t : terms_) out.push_back(unpack(t));
  return out;
}

int Mod2SymPoly::degree() const {
  int d = -1;
  for (auto t : terms_) {
    const auto e = unpack(t);
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  }
  return d;
}

bool Mod2SymPoly::is_symmetric() const {
  for (auto t : terms_) {
    auto e = unpack(t);
    std::sort(e.begin(), e.end());
    do {
      if (!std::binary_search(terms_.begin(), terms_.end(), pack(e))) return false;
    } while (std::next_permutation(e.begin(), e.end()));
  }
  return true;
}

Mod2SymPoly Mod2SymPoly::operator+(const Mod2SymPoly& o) const {
  if (o.n_ != n_) throw SizeMismatch("Mod2SymPoly: variable count mismatch");
  Mod2SymPoly r(n_);
  r.terms_ = sym_diff(terms_, o.terms_);
  return r;
}

Mod2SymPoly Mod2SymPoly::shifted(std::uint64_t key) const {
  // Adding a fixed exponent preserves the packed order as long as no field overflows.
  const auto add = unpack(key);
  const int dmax = degree();
  for (int k = 0; k < n_; ++k)
    if (dmax + add[static_cast<std::size_t>(k)] > kMaxExponent) throw InvalidArgument("Mod2SymPoly: exponent overflow");
  Mod2SymPoly r(n_);
  r.terms_.resize(terms_.size());
  std::transform(terms_.begin(), terms_.end(), r.terms_.begin(), [key](std::uint64_t t) { return t + key; });
  return r;
}

Mod2SymPoly Mod2SymPoly::operator*(const Mod2SymPoly& o) const {
  if (o.n_ != n_) throw SizeMismatch("Mod2SymPoly: variable count mismatch");
  const Mod2SymPoly& small = terms_.size() <= o.terms_.size() ? *this : o;
  const Mod2SymPoly& big = terms_.size() <= o.terms_.size() ? o : *this;
  Mod2SymPoly r(n_);
  for (auto t : small.terms_) r.terms_ = sym_diff(r.terms_, big.shifted(t).terms_);
  return r;
}

std::string Mod2SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const auto e = unpack(*it);
    bool any = false;
    for (int k = 0; k < n_; ++k) {
      const int p = e[static_cast<std::size_t>(k)];
      if (p == 0) continue;
      if (any) os << "*";
      os << "x" << (k + 1);
      if (p > 1) os << "^" << p;
      any = true;
    }
    if (!any) os << "1";
  }
  return os.str();
}

std::vector<std::vector<int>> multi_indices(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == n - 1) {
      cur[static_cast<std::size_t>(k)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(k)] = v;
      self(self, k + 1, left - v);
    }
  };
  if (n >= 1 && d >= 0) rec(rec, 0, d);
  return out;
}

std::int64_t multi_index_count(int n, int d) {
  std::int64_t r = 1;
  for (int i = 1; i <= n - 1; ++i) r = r * (d + i) / i;
  return r;
}

namespace {

void check_sw_args(int n, int d, const Mod2Options& opts) {
  check_vars(n);
  if (d < 1 || d > 7) throw InvalidArgument("stiefel_whitney_top: need 1 <= d <= 7");
  if (d % 2 == 0 && !opts.allow_even) throw InvalidArgument("stiefel_whitney_top: d must be odd (set allow_even to explore)");
}

// Multiplies acc by each linear factor in turn; stops once the budget is exceeded.
void apply_factors(ExpansionResult& res, int n, int d, const Mod2Options& opts) {
  for (const auto& j : multi_indices(n, d)) {
    ++res.factor_count;
    if (res.truncated) continue;
    Mod2SymPoly next = res.poly * Mod2SymPoly::linear(j);
    if (next.size() > opts.monomial_budget) {
      res.truncated = true;
      std::ostringstream msg;
      msg << "monomial budget " << opts.monomial_budget << " exceeded at factor " << res.factors_applied + 1
          << " of P_" << d << " (" << next.size() << " monomials)";
      res.message = msg.str();
      continue;
    }
    res.poly = std::move(next);
    ++res.factors_applied;
  }
}

void finish(ExpansionResult& res) {
  res.ones_eval = res.poly.eval_all_ones();
  res.nonzero = !res.poly.is_zero();
}

}  // namespace

ExpansionResult stiefel_whitney_top(int n, int d, const Mod2Options& opts) {
  check_sw_args(n, d, opts);
  ExpansionResult res;
  res.poly = Mod2SymPoly::one(n);
  apply_factors(res, n, d, opts);
  finish(res);
  return res;
}

ExpansionResult sw_product_chain(int n, int d_max, const Mod2Options& opts) {
  if (d_max < 1 || d_max % 2 == 0) throw InvalidArgument("sw_product_chain: d_max must be odd and positive");
  ExpansionResult res;
  res.poly = Mod2SymPoly::one(n);
  for (int d = 1; d <= d_max; d += 2) {
    check_sw_args(n, d, opts);
    apply_factors(res, n, d, opts);
  }
  finish(res);
  return res;
}

ElementaryForm to_elementary(const Mod2SymPoly& p, int max_steps) {
  const int n = p.nvars();
  ElementaryForm out;
  std::vector<Mod2SymPoly> sigma;
  for (int j = 1; j <= n; ++j) sigma.push_back(Mod2SymPoly::elementary(n, j));
  Mod2SymPoly rest = p;
  for (int step = 0; step < max_steps; ++step) {
    if (rest.is_zero()) {
      out.complete = true;
      return out;
    }
    // Leading monomial in lex order with x1 most significant.
    std::vector<int> lead;
    for (auto t : rest.terms()) {
      const auto e = rest.unpack(t);
      if (lead.empty() || std::lexicographical_compare(lead.begin(), lead.end(), e.begin(), e.end())) lead = e;
    }
    if (!std::is_sorted(lead.rbegin(), lead.rend())) return out;  // not symmetric
    std::vector<int> powers(static_cast<std::size_t>(n));
    Mod2SymPoly term = Mod2SymPoly::one(n);
    for (int j = 0; j < n; ++j) {
      const int k = lead[static_cast<std::size_t>(j)] - (j + 1 < n ? lead[static_cast<std::size_t>(j + 1)] : 0);
      powers[static_cast<std::size_t>(j)] = k;
      for (int r = 0; r < k; ++r) term = term * sigma[static_cast<std::size_t>(j)];
    }
    out.terms.push_back(powers);
    rest = rest + term;
  }
  return out;
}

Mod2SymPoly from_elementary(int n, const ElementaryForm& f) {
  Mod2SymPoly acc(n);
  for (const auto& powers : f.terms) {
    Mod2SymPoly term = Mod2SymPoly::one(n);
    for (int j = 0; j < n && j < static_cast<int>(powers.size()); ++j)
      for (int r = 0; r < powers[static_cast<std::size_t>(j)]; ++r) term = term * Mod2SymPoly::elementary(n, j + 1);
    acc = acc + term;
  }
  return acc;
}

std::uint64_t euler_top_class_coefficient(int d) {
  if (d < 0 || d > 20) throw InvalidArgument("euler_top_class_coefficient: 0 <= d <= 20");
  std::uint64_t r = 1;
  for (int i = 2; i <= d; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t factorial_mod(int d, std::uint64_t p) {
  if (p == 0) throw InvalidArgument("factorial_mod: modulus must be positive");
  std::uint64_t r = 1 % p;
  for (int i = 2; i <= d; ++i) r = (r * (static_cast<std::uint64_t>(i) % p)) % p;
  return r;
}

}  // namespace sectionlab
