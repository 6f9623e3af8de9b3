#include "magnetic/qexp.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"

namespace magnetic {

ExactSeries::ExactSeries(std::int64_t leading, std::vector<mpq_class> coeffs, std::int64_t truncation,
                         std::int64_t scale)
    : leading_(leading), coeffs_(std::move(coeffs)), truncation_(truncation), scale_(scale) {
  if (scale < 1) throw InvalidArgument("ExactSeries: scale must be positive");
  normalize();
}

void ExactSeries::normalize() {
  const std::int64_t keep = std::max<std::int64_t>(0, truncation_ - leading_);
  if (static_cast<std::int64_t>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
  // Leading zeros move into the exponent; a zero series is O(q^truncation).
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    leading_ = std::max(leading_, truncation_);
    return;
  }
  if (first > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    leading_ += static_cast<std::int64_t>(first);
  }
}

ExactSeries ExactSeries::constant(const mpq_class& c, std::int64_t truncation, std::int64_t scale) {
  return ExactSeries(0, {c}, truncation, scale);
}

ExactSeries ExactSeries::monomial(const mpq_class& c, std::int64_t exponent, std::int64_t truncation,
                                  std::int64_t scale) {
  return ExactSeries(exponent, {c}, truncation, scale);
}

mpq_class ExactSeries::coefficient(std::int64_t exponent) const {
  if (exponent >= truncation_) {
    throw TruncationError("ExactSeries: coefficient " + std::to_string(exponent) + " requested but series is valid below " +
                          std::to_string(truncation_));
  }
  const std::int64_t i = exponent - leading_;
  if (i < 0 || i >= static_cast<std::int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

mpz_class ExactSeries::integer_coefficient(std::int64_t exponent) const {
  const mpq_class c = coefficient(exponent);
  if (c.get_den() != 1) throw InternalError("ExactSeries: non-integral coefficient at " + std::to_string(exponent));
  return c.get_num();
}

namespace {

void require_same_scale(const ExactSeries& a, const ExactSeries& b) {
  if (a.scale() != b.scale()) throw InvalidArgument("ExactSeries: scale mismatch");
}

}  // namespace

ExactSeries ExactSeries::operator+(const ExactSeries& o) const {
  require_same_scale(*this, o);
  const std::int64_t lead = std::min(leading_, o.leading_);
  const std::int64_t trunc = std::min(truncation_, o.truncation_);
  std::vector<mpq_class> c(static_cast<std::size_t>(std::max<std::int64_t>(0, trunc - lead)));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t e = lead + static_cast<std::int64_t>(i);
    const std::int64_t i1 = e - leading_;
    const std::int64_t i2 = e - o.leading_;
    if (i1 >= 0 && i1 < static_cast<std::int64_t>(coeffs_.size())) c[i] += coeffs_[static_cast<std::size_t>(i1)];
    if (i2 >= 0 && i2 < static_cast<std::int64_t>(o.coeffs_.size())) c[i] += o.coeffs_[static_cast<std::size_t>(i2)];
  }
  return ExactSeries(lead, std::move(c), trunc, scale_);
}

ExactSeries ExactSeries::operator-() const { return scaled(-1); }

ExactSeries ExactSeries::operator-(const ExactSeries& o) const { return *this + (-o); }

ExactSeries ExactSeries::scaled(const mpq_class& c) const {
  ExactSeries out(*this);
  for (auto& x : out.coeffs_) x *= c;
  return out;
}

ExactSeries ExactSeries::operator*(const ExactSeries& o) const {
  require_same_scale(*this, o);
  const std::int64_t lead = leading_ + o.leading_;
  const std::int64_t trunc = std::min(truncation_ + o.leading_, o.truncation_ + leading_);
  const std::int64_t len = std::max<std::int64_t>(0, trunc - lead);
  std::vector<mpq_class> c(static_cast<std::size_t>(len));
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
    if (o.coeffs_[j] != 0) nz.push_back(j);
  }
  mpq_class t;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (const auto j : nz) {
      if (static_cast<std::int64_t>(i + j) >= len) break;
      mpq_mul(t.get_mpq_t(), coeffs_[i].get_mpq_t(), o.coeffs_[j].get_mpq_t());
      c[i + j] += t;
    }
  }
  return ExactSeries(lead, std::move(c), trunc, scale_);
}

ExactSeries ExactSeries::inverse() const {
  if (coeffs_.empty() || coeffs_[0] == 0) {
    throw InvalidArgument("ExactSeries: inverse needs a nonzero leading coefficient");
  }
  const std::int64_t len = truncation_ - leading_;
  std::vector<mpq_class> c(static_cast<std::size_t>(len));
  const mpq_class inv0 = 1 / coeffs_[0];
  c[0] = inv0;
  for (std::int64_t i = 1; i < len; ++i) {
    mpq_class s = 0;
    for (std::int64_t j = 1; j <= i && j < static_cast<std::int64_t>(coeffs_.size()); ++j) {
      if (coeffs_[static_cast<std::size_t>(j)] == 0) continue;
      s += coeffs_[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i - j)];
    }
    c[static_cast<std::size_t>(i)] = -s * inv0;
  }
  return ExactSeries(-leading_, std::move(c), -leading_ + len, scale_);
}

ExactSeries ExactSeries::operator/(const ExactSeries& o) const { return *this * o.inverse(); }

ExactSeries ExactSeries::pow(unsigned e) const {
  if (e == 0) return constant(1, truncation_ - leading_, scale_);
  ExactSeries result = *this;
  ExactSeries base = *this;
  --e;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

ExactSeries ExactSeries::truncated(std::int64_t truncation) const {
  if (truncation > truncation_) throw TruncationError("ExactSeries: cannot extend a truncated series");
  return ExactSeries(leading_, coeffs_, truncation, scale_);
}

bool ExactSeries::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

mpq_class bernoulli(int n) {
  static std::mutex mutex;
  static std::vector<mpq_class> table{1};
  if (n < 0) throw InvalidArgument("bernoulli: index must be nonnegative");
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<int>(table.size()) <= n) {
    const int m = static_cast<int>(table.size());
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    mpq_class s = 0;
    mpz_class binom = 1;
    for (int j = 0; j < m; ++j) {
      s += binom * table[static_cast<std::size_t>(j)];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    table.push_back(-s / (m + 1));
  }
  return table[static_cast<std::size_t>(n)];
}

ExactSeries eisenstein(int weight, std::int64_t order) {
  if (weight < 4 || weight % 2 != 0) throw InvalidArgument("eisenstein: weight must be even and >= 4");
  if (order < 1) throw InvalidArgument("eisenstein: order must be positive");
  const mpq_class factor = -mpq_class(2 * weight) / bernoulli(weight);
  std::vector<mpq_class> c(static_cast<std::size_t>(order));
  c[0] = 1;
  for (std::int64_t n = 1; n < order; ++n) {
    mpz_class sigma = 0, t;
    for (const auto d : divisors(n)) {
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(weight - 1));
      sigma += t;
    }
    c[static_cast<std::size_t>(n)] = factor * sigma;
  }
  return ExactSeries(0, std::move(c), order);
}

ExactSeries delta(std::int64_t order) {
  const ExactSeries e4 = eisenstein(4, order);
  const ExactSeries e6 = eisenstein(6, order);
  return (e4.pow(3) - e6 * e6).scaled(mpq_class(1, 1728));
}

ExactSeries j_invariant(std::int64_t order) {
  const std::int64_t inner = order + 2;
  return (eisenstein(4, inner).pow(3) / delta(inner)).truncated(order);
}

ExactSeries j_prime(std::int64_t order) {
  const ExactSeries j = j_invariant(order);
  std::vector<mpq_class> c;
  for (std::int64_t n = -1; n < order; ++n) c.push_back(j.coefficient(n) * n);
  return ExactSeries(-1, std::move(c), order);
}

ExactSeries eta(std::int64_t order) {
  if (order < 1) throw InvalidArgument("eta: order must be positive");
  const std::int64_t trunc = 24 * order;
  std::vector<mpq_class> c(static_cast<std::size_t>(trunc));
  for (std::int64_t n = 1; n * n < trunc; ++n) c[static_cast<std::size_t>(n * n)] = kronecker(12, n);
  return ExactSeries(0, std::move(c), trunc, 24);
}

ExactSeries eta_inverse(std::int64_t order) {
  if (order < 1) throw InvalidArgument("eta_inverse: order must be positive");
  const std::int64_t trunc = 24 * order;
  std::vector<mpq_class> c(static_cast<std::size_t>(trunc + 1));  // exponents -1 .. trunc-1
  for (std::int64_t n = 0; 24 * n - 1 < trunc; ++n) {
    c[static_cast<std::size_t>(24 * n)] = partition(n);
  }
  return ExactSeries(-1, std::move(c), trunc, 24);
}

mpz_class partition(std::int64_t n) {
  static std::mutex mutex;
  static std::vector<mpz_class> table{1};
  if (n < 0) throw InvalidArgument("partition: n must be nonnegative");
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<std::int64_t>(table.size()) <= n) {
    const auto m = static_cast<std::int64_t>(table.size());
    mpz_class s = 0;
    for (std::int64_t k = 1;; ++k) {
      const std::int64_t g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      const bool plus = k % 2 == 1;
      const mpz_class& t1 = table[static_cast<std::size_t>(m - g1)];
      if (plus) s += t1; else s -= t1;
      const std::int64_t g2 = k * (3 * k + 1) / 2;
      if (g2 <= m) {
        const mpz_class& t2 = table[static_cast<std::size_t>(m - g2)];
        if (plus) s += t2; else s -= t2;
      }
    }
    table.push_back(s);
  }
  return table[static_cast<std::size_t>(n)];
}

int cusp_form_dimension(int weight) {
  if (weight < 0 || weight % 2 != 0) throw InvalidArgument("cusp_form_dimension: weight must be even and nonnegative");
  if (weight == 2) return 0;
  const int modular = weight % 12 == 2 ? weight / 12 : weight / 12 + 1;
  return weight == 0 ? 0 : modular - 1;
}

std::vector<ExactSeries> miller_basis(int weight, std::int64_t order) {
  const int dim = cusp_form_dimension(weight);
  if (dim == 0) throw InvalidArgument("miller_basis: S_" + std::to_string(weight) + " is zero");
  const std::int64_t inner = std::max<std::int64_t>(order, dim + 2);
  const ExactSeries e4 = eisenstein(4, inner);
  const ExactSeries e6 = eisenstein(6, inner);
  const ExactSeries d = delta(inner);
  std::vector<ExactSeries> basis;
  for (int j = 1; j <= dim; ++j) {
    const int rest = weight - 12 * j;
    const int b = rest % 4 == 0 ? 0 : 1;
    const int a = (rest - 6 * b) / 4;
    ExactSeries f = d.pow(static_cast<unsigned>(j)) * e4.pow(static_cast<unsigned>(a));
    if (b == 1) f = f * e6;
    basis.push_back(f.truncated(inner));
  }
  // Clear coefficients j+1..dim of form j using the later forms.
  for (int j = dim; j >= 1; --j) {
    for (int i = j + 1; i <= dim; ++i) {
      const mpq_class c = basis[static_cast<std::size_t>(j - 1)].coefficient(i);
      if (c != 0) basis[static_cast<std::size_t>(j - 1)] = basis[static_cast<std::size_t>(j - 1)] - basis[static_cast<std::size_t>(i - 1)].scaled(c);
    }
  }
  for (auto& f : basis) f = f.truncated(order);
  return basis;
}

Relation find_relation(int weight) {
  if (weight < 4 || weight % 2 != 0) throw InvalidArgument("find_relation: weight must be even and >= 4");
  Relation r{weight, {}};
  const int dim = cusp_form_dimension(weight);
  if (dim == 0) {
    r.lambda = {1};
    return r;
  }
  const auto basis = miller_basis(weight, dim + 2);
  for (int j = 1; j <= dim; ++j) r.lambda.push_back(-basis[static_cast<std::size_t>(j - 1)].integer_coefficient(dim + 1));
  r.lambda.push_back(1);
  return r;
}

int relation_violation(const Relation& relation) {
  const int dim = cusp_form_dimension(relation.weight);
  if (dim == 0) return 0;
  const auto len = static_cast<std::int64_t>(relation.lambda.size());
  const auto basis = miller_basis(relation.weight, std::max<std::int64_t>(len + 1, dim + 2));
  for (int i = 0; i < dim; ++i) {
    mpq_class s = 0;
    for (std::int64_t m = 1; m <= len; ++m) s += relation.lambda[static_cast<std::size_t>(m - 1)] * basis[static_cast<std::size_t>(i)].coefficient(m);
    if (s != 0) return i + 1;
  }
  return 0;
}

ExactSeries hecke_integral(const ExactSeries& f, std::int64_t m, int weight) {
  if (m < 1) throw InvalidArgument("hecke_integral: m must be positive");
  if (f.scale() != 1 || f.leading_exponent() < 0) {
    throw InvalidArgument("hecke_integral: needs an integral-exponent series starting at q^0 or later");
  }
  const std::int64_t t = f.truncation_order();
  if (t < 1) throw TruncationError("hecke_integral: empty input");
  const std::int64_t out_trunc = (t - 1) / m + 1;
  std::vector<mpq_class> c(static_cast<std::size_t>(out_trunc));
  auto get = [&](std::int64_t e) { return f.coefficient(e); };
  auto scale = [](const mpq_class& x, const mpz_class& w) { return mpq_class(x * w); };
  for (std::int64_t n = 1; n < out_trunc; ++n) {
    c[static_cast<std::size_t>(n)] = hecke_coefficient<mpq_class>(get, m, n, weight, scale);
  }
  mpz_class sigma = 0, pw;
  for (const auto d : divisors(m)) {
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(weight - 1));
    sigma += pw;
  }
  c[0] = f.coefficient(0) * sigma;
  // T_m of a cusp form at n = 0 is sigma_{w-1}(m) c(0), covered above.
  return ExactSeries(0, std::move(c), out_trunc);
}

ExactSeries hecke_by_recursion(const ExactSeries& f, std::int64_t m, int weight) {
  if (m == 1) return f;
  ExactSeries g = f;
  for (const auto& pp : factorize(m)) {
    const std::int64_t p = pp.prime;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(weight - 1));
    ExactSeries prev = g;                           // T_{p^0} g
    ExactSeries cur = hecke_integral(g, p, weight);  // T_{p^1} g
    for (int e = 1; e < pp.exponent; ++e) {
      ExactSeries next = hecke_integral(cur, p, weight) - prev.scaled(pw);
      prev = cur;
      cur = next;
    }
    g = cur;
  }
  return g;
}

}  // namespace magnetic
