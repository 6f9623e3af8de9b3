// Cusp corrections, Hecke translates, case changes and divisibility checks.

#include <algorithm>
#include <sstream>

#include "engine_detail.hpp"
#include "magnetic/arith.hpp"
#include "magnetic/engine.hpp"
#include "magnetic/error.hpp"

namespace magnetic {

namespace {

mpz_class mpz_pow(std::int64_t base, unsigned long e) {
  mpz_class b(static_cast<long>(base)), out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

void prune(FamilyCombination& f) {
  for (auto it = f.begin(); it != f.end();) {
    it = it->second == 0 ? f.erase(it) : std::next(it);
  }
}

void add_into(FamilyCombination& out, const FamilyCombination& f, const mpz_class& scale) {
  for (const auto& [delta, c] : f) out[delta] += scale * c;
}

// f_{k,delta} | T_p = f_{k,p^2 delta} + (delta/p) p^(k-1) f_{k,delta} + p^(2k-1) f_{k,delta/p^2}
FamilyCombination apply_tp(const FamilyCombination& f, std::int64_t p, int k) {
  FamilyCombination out;
  const mpz_class pk1 = mpz_pow(p, static_cast<unsigned long>(k - 1));
  const mpz_class p2k1 = mpz_pow(p, static_cast<unsigned long>(2 * k - 1));
  for (const auto& [delta, c] : f) {
    std::int64_t up = 0;
    if (__builtin_mul_overflow(delta, p * p, &up)) throw InvalidArgument("hecke_family: discriminant overflow");
    out[up] += c;
    const int sym = kronecker(delta, p);
    if (sym != 0) out[delta] += c * sym * pk1;
    if (delta % (p * p) == 0 && is_discriminant(delta / (p * p))) out[delta / (p * p)] += c * p2k1;
  }
  prune(out);
  return out;
}

FamilyCombination apply_tm(const FamilyCombination& f, std::int64_t m, int k) {
  FamilyCombination cur = f;
  for (const auto& pp : factorize(m)) {
    const mpz_class p2k1 = mpz_pow(pp.prime, static_cast<unsigned long>(2 * k - 1));
    FamilyCombination prev = cur;                      // T_{p^0}
    FamilyCombination here = apply_tp(cur, pp.prime, k);  // T_{p^1}
    for (int e = 1; e < pp.exponent; ++e) {
      FamilyCombination next = apply_tp(here, pp.prime, k);
      add_into(next, prev, -p2k1);
      prune(next);
      prev = std::move(here);
      here = std::move(next);
    }
    cur = std::move(here);
  }
  return cur;
}

void check_relation(const FormSpec& base, const Relation& relation) {
  if (base.level != 1) throw InvalidArgument("hecke_translate: base form must have level 1");
  if (relation.weight != 2 * base.k) {
    throw InvalidArgument("hecke_translate: relation has weight " + std::to_string(relation.weight) +
                          ", expected " + std::to_string(2 * base.k));
  }
  if (relation.lambda.empty()) throw InvalidArgument("hecke_translate: relation is empty");
  const int bad = relation_violation(relation);
  if (bad != 0) {
    throw InvalidArgument("hecke_translate: relation does not annihilate cusp form " + std::to_string(bad) +
                          " of the Miller basis");
  }
}

mpz_class abs_sum(const FamilyCombination& f) {
  mpz_class s = 0;
  for (const auto& [delta, c] : f) s += abs(c);
  return s;
}

std::string integer_string(const CoefficientValue& v) {
  return v.imag == 0 ? v.real.get_str() : v.value_string();
}

}  // namespace

FamilyCombination hecke_family(int k, std::int64_t d, std::int64_t D, const Relation& relation) {
  FormSpec::level_one(k, d, D);
  FamilyCombination total;
  const FamilyCombination start{{d, mpz_class(1)}};
  for (std::size_t i = 0; i < relation.lambda.size(); ++i) {
    if (relation.lambda[i] == 0) continue;
    add_into(total, apply_tm(start, static_cast<std::int64_t>(i + 1), k), relation.lambda[i]);
  }
  prune(total);
  return total;
}

HeckeResult hecke_translate(const FormSpec& base, const Relation& relation, std::int64_t n_max,
                            const EngineOptions& options) {
  base.validate();
  check_relation(base, relation);
  HeckeResult result;
  result.family = hecke_family(base.k, base.d, base.D, relation);
  if (n_max <= 0) return result;

  EngineOptions raw = options;
  raw.test_perturbation = 0;

  // family route: sum of certified-precision balls of the individual f_{k,delta,D}
  const double family_target = 0.4 / abs_sum(result.family).get_d();
  std::vector<ComplexBall> family_sum;
  Certificate worst;
  for (const auto& [delta, mu] : result.family) {
    const FormSpec spec = FormSpec::level_one(base.k, delta, base.D);
    const auto balls = coefficient_balls(spec, n_max, std::vector<double>(n_max, family_target), raw);
    for (std::int64_t n = 0; n < n_max; ++n) {
      const ComplexBall term = detail::scale_mpz(balls[n].ball, mu);
      if (family_sum.size() <= static_cast<std::size_t>(n)) {
        family_sum.push_back(term);
      } else {
        family_sum[n] += term;
      }
      const auto& c = balls[n].certificate;
      worst.cutoff = std::max(worst.cutoff, c.cutoff);
      worst.precision_bits = std::max(worst.precision_bits, c.precision_bits);
      worst.rounds = std::max(worst.rounds, c.rounds);
    }
  }
  for (std::int64_t n = 1; n <= n_max; ++n) {
    CoefficientValue v;
    v.n = n;
    v.ball = family_sum[n - 1];
    v.certificate = worst;
    v.certificate.radius = std::max(v.ball.re.rad_upper_double(), v.ball.im.rad_upper_double());
    if (!detail::certify_integer(v, options)) {
      throw CertificationFailure("hecke_translate: family route coefficient n = " + std::to_string(n) +
                                 " not certified (radius " + std::to_string(v.certificate.radius) + ")");
    }
    result.coefficients.push_back(v);
  }

  // series route: base coefficients to order len(lambda) n_max, then the divisor-sum formula
  const auto m_max = static_cast<std::int64_t>(relation.lambda.size());
  mpz_class spread = 0;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    mpz_class sigma = 0;
    for (const auto dd : divisors(m)) sigma += mpz_pow(dd, static_cast<unsigned long>(2 * base.k - 1));
    spread += abs(relation.lambda[m - 1]) * sigma;
  }
  const double series_target = 0.4 / spread.get_d();
  const auto base_balls = coefficient_balls(base, m_max * n_max, std::vector<double>(m_max * n_max, series_target), raw);
  auto getter = [&](std::int64_t idx) -> const ComplexBall& { return base_balls.at(idx - 1).ball; };
  auto scale = [](const ComplexBall& z, const mpz_class& w) { return detail::scale_mpz(z, w); };
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const mpfr_prec_t prec = base_balls.front().ball.re.precision();
    ComplexBall total(Ball::from_int(0, prec), Ball::from_int(0, prec));
    for (std::int64_t m = 1; m <= m_max; ++m) {
      if (relation.lambda[m - 1] == 0) continue;
      total += detail::scale_mpz(hecke_coefficient<ComplexBall>(getter, m, n, 2 * base.k, scale),
                                 relation.lambda[m - 1]);
    }
    CoefficientValue v;
    v.n = n;
    v.ball = total;
    EngineOptions plain = options;
    plain.test_perturbation = 0;
    if (!detail::certify_integer(v, plain)) {
      throw CertificationFailure("hecke_translate: series route coefficient n = " + std::to_string(n) +
                                 " not certified");
    }
    const auto& fam = result.coefficients[n - 1];
    if (v.real != fam.real - options.test_perturbation || v.imag != fam.imag) {
      throw InternalError("hecke_translate: routes disagree at n = " + std::to_string(n) + ": family " +
                          integer_string(fam) + ", series " + integer_string(v));
    }
    result.series_route.push_back(v.real);
  }
  return result;
}

CuspCorrection cusp_correction(const FormSpec& spec, std::int64_t n_max, const EngineOptions& options) {
  spec.validate();
  if (spec.level != 1) throw InvalidArgument("cusp_correction: level 1 forms only");
  CuspCorrection out;
  const int weight = 2 * spec.k;
  const int dim = cusp_form_dimension(weight);
  std::ostringstream desc;
  if (n_max <= 0) {
    out.description = dim == 0 ? "g = 0" : "g not computed (empty range)";
    return out;
  }
  if (dim == 0) {
    out.corrected = coefficient_block(spec, n_max, options);
    out.description = "g = 0 (S_" + std::to_string(weight) + " = {0})";
    return out;
  }
  const std::int64_t top = std::max<std::int64_t>(n_max, dim);
  const auto basis = miller_basis(weight, top + 1);
  // radius budget: 0.2 for c(n) itself, 0.2 shared by the dim basis terms
  std::vector<double> targets(static_cast<std::size_t>(top), 0.2);
  for (int m = 1; m <= dim; ++m) {
    mpz_class biggest = 1;
    for (std::int64_t n = 1; n <= top; ++n) {
      const mpz_class c = abs(basis[m - 1].integer_coefficient(n));
      if (c > biggest) biggest = c;
    }
    targets[m - 1] = 0.2 / (dim * biggest.get_d());
  }
  EngineOptions raw = options;
  raw.test_perturbation = 0;
  const auto balls = coefficient_balls(spec, top, targets, raw);
  desc << "g =";
  for (int m = 1; m <= dim; ++m) {
    out.weights.push_back(balls[m - 1].ball.re);
    desc << (m == 1 ? " " : " + ") << "(" << balls[m - 1].ball.re.to_string(15) << ") M_" << m;
  }
  desc << " (Miller basis of S_" << weight << ")";
  out.description = desc.str();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    CoefficientValue v;
    v.n = n;
    v.certificate = balls[n - 1].certificate;
    if (n <= dim) {
      // the correction matches these coefficients exactly
      v.ball = ComplexBall(Ball::from_int(0, 64), Ball::from_int(0, 64));
    } else {
      ComplexBall c = balls[n - 1].ball;
      for (int m = 1; m <= dim; ++m) {
        c -= detail::scale_mpz(balls[m - 1].ball, basis[m - 1].integer_coefficient(n));
        v.certificate.cutoff = std::max(v.certificate.cutoff, balls[m - 1].certificate.cutoff);
        v.certificate.precision_bits =
            std::max(v.certificate.precision_bits, balls[m - 1].certificate.precision_bits);
      }
      v.ball = c;
    }
    v.certificate.radius = std::max(v.ball.re.rad_upper_double(), v.ball.im.rad_upper_double());
    if (!detail::certify_integer(v, options)) {
      throw CertificationFailure(spec.describe() + ": corrected coefficient n = " + std::to_string(n) +
                                 " not certified (radius " + std::to_string(v.certificate.radius) + ")");
    }
    out.corrected.push_back(v);
  }
  return out;
}

std::vector<WeightedSpec> case_change_expand(int k, std::int64_t l, std::int64_t d0, std::int64_t D) {
  if (l < 1) throw InvalidArgument("case_change_expand: l must be positive");
  if (!is_fundamental_discriminant(d0) || !is_fundamental_discriminant(D)) {
    throw InvalidArgument("case_change_expand: d0 and D must be fundamental discriminants");
  }
  if (d0 * D >= 0) throw InvalidArgument("case_change_expand: d0 D must be negative");
  std::map<std::int64_t, mpz_class> acc;
  for (const auto a : divisors(l)) {
    const int da = kronecker(D, a);
    if (da == 0) continue;
    for (const auto b : divisors(l / a)) {
      const int mu = moebius(b);
      const int db = kronecker(d0, b);
      if (mu == 0 || db == 0) continue;
      const std::int64_t q = l / (a * b);
      acc[q * q * D] += mpz_class(da * mu * db) * mpz_pow(a * b, static_cast<unsigned long>(k - 1));
    }
  }
  std::vector<WeightedSpec> out;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
    if (it->second == 0) continue;
    out.push_back({FormSpec::level_one(k, it->first, d0), it->second});
  }
  std::sort(out.begin(), out.end(),
            [](const WeightedSpec& x, const WeightedSpec& y) { return std::llabs(x.spec.d) > std::llabs(y.spec.d); });
  return out;
}

std::string divisor_sum_crosscheck(int k, std::int64_t d, std::int64_t D, std::int64_t n, const mpz_class& c) {
  if (n < 1) throw InvalidArgument("divisor_sum_crosscheck: n must be positive");
  const mpz_class nk = mpz_pow(n, static_cast<unsigned long>(k - 1));
  if (!mpz_divisible_p(c.get_mpz_t(), nk.get_mpz_t())) {
    return "n^(k-1) = " + nk.get_str() + " does not divide c(" + std::to_string(n) + ") = " + c.get_str();
  }
  const bool plus = (k % 2 == 0 ? d : -d) > 0;
  const std::int64_t ref = plus ? D : split_discriminant(d).fundamental_part;
  std::int64_t n1 = 1;
  for (const auto& pp : factorize(n)) {
    if (ref % pp.prime == 0) n1 *= ipow(pp.prime, pp.exponent);
  }
  const mpz_class refined = mpz_pow(n1, static_cast<unsigned long>(2 * k - 1)) *
                            mpz_pow(n / n1, static_cast<unsigned long>(k - 1));
  if (!mpz_divisible_p(c.get_mpz_t(), refined.get_mpz_t())) {
    return "n1^(2k-1) n2^(k-1) = " + refined.get_str() + " (n1 = " + std::to_string(n1) + ") does not divide c(" +
           std::to_string(n) + ") = " + c.get_str();
  }
  return {};
}

}  // namespace magnetic
