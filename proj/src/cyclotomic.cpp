#include "magnetic/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"

namespace magnetic {

namespace {

// Exact division of polynomials with integer coefficients by a monic divisor.
std::vector<mpz_class> divide_monic(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<mpz_class> quot(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const mpz_class q = num[i];
    quot[i - dn] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= q * den[j];
  }
  return quot;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(std::int64_t m) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::vector<mpz_class>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  if (m < 1) throw InvalidArgument("cyclotomic_polynomial: order must be positive");
  std::vector<mpz_class> poly(static_cast<std::size_t>(m) + 1);
  poly[0] = -1;
  poly[static_cast<std::size_t>(m)] = 1;
  for (const auto d : divisors(m)) {
    if (d == m) continue;
    poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(m, poly);
  return poly;
}

Cyclotomic::Cyclotomic(std::int64_t order) : order_(order), coeffs_(static_cast<std::size_t>(order)) {
  if (order < 1) throw InvalidArgument("Cyclotomic: order must be positive");
}

void Cyclotomic::add_root(const mpq_class& coef, std::int64_t exponent) {
  coeffs_[static_cast<std::size_t>(mod_floor(exponent, order_))] += coef;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  if (other.order_ != order_) throw InvalidArgument("Cyclotomic: order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) {
  if (other.order_ != order_) throw InvalidArgument("Cyclotomic: order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& other) const {
  if (other.order_ != order_) throw InvalidArgument("Cyclotomic: order mismatch");
  Cyclotomic out(order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (other.coeffs_[j] == 0) continue;
      out.coeffs_[(i + j) % coeffs_.size()] += coeffs_[i] * other.coeffs_[j];
    }
  }
  return out;
}

Cyclotomic Cyclotomic::scaled(const mpq_class& factor) const {
  Cyclotomic out(*this);
  for (auto& c : out.coeffs_) c *= factor;
  return out;
}

std::vector<mpq_class> Cyclotomic::reduced() const {
  const auto phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  std::vector<mpq_class> r = coeffs_;
  for (std::size_t i = r.size(); i-- > deg;) {
    const mpq_class q = r[i];
    if (q == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= q * phi[j];
  }
  r.resize(deg);
  return r;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : reduced()) {
    if (c != 0) return false;
  }
  return true;
}

bool Cyclotomic::operator==(const Cyclotomic& other) const {
  Cyclotomic diff(*this);
  diff -= other;
  return diff.is_zero();
}

Cyclotomic Cyclotomic::lifted(std::int64_t factor) const {
  Cyclotomic out(order_ * factor);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out.coeffs_[i * static_cast<std::size_t>(factor)] = coeffs_[i];
  }
  return out;
}

double Cyclotomic::real_approx() const {
  double s = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    s += coeffs_[i].get_d() * std::cos(2 * M_PI * static_cast<double>(i) / static_cast<double>(order_));
  }
  return s;
}

double Cyclotomic::imag_approx() const {
  double s = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    s += coeffs_[i].get_d() * std::sin(2 * M_PI * static_cast<double>(i) / static_cast<double>(order_));
  }
  return s;
}

}  // namespace magnetic
