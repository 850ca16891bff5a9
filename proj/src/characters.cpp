#include "burgess/characters.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace burgess::chars {
namespace {

constexpr std::uint32_t kNoDlog = std::numeric_limits<std::uint32_t>::max();

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quot = old_r / r;
    __int128 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("mod_inverse: not invertible");
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t smallest_primitive_root(std::uint64_t p, std::uint64_t pe,
                                      std::uint64_t phi) {
  const auto phi_factors = arith::factorize(phi).factors;
  for (std::uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool generates = true;
    for (const auto& [r, e] : phi_factors) {
      if (arith::pow_mod(g, phi / r, pe) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw std::logic_error("no primitive root mod " + std::to_string(pe));
}

// Lift a residue mod pe to mod q, equal to 1 at the other prime powers.
std::uint64_t crt_lift(std::uint64_t local, std::uint64_t pe, std::uint64_t q) {
  const std::uint64_t cofactor = q / pe;
  if (cofactor == 1) return local % q;
  const std::uint64_t t = arith::mul_mod((local + pe - 1) % pe,
                                         mod_inverse(cofactor % pe, pe), pe);
  return (1 + static_cast<unsigned __int128>(cofactor) * t) % q;
}

std::uint64_t compute_conductor(const DirichletCharacter& chi) {
  const auto& group = chi.group();
  const std::uint64_t q = group.modulus();
  if (chi.principal()) return 1;
  for (std::uint64_t d : arith::divisors(group.factorization())) {
    bool trivial_on_kernel = true;
    for (std::uint64_t a = 1 + d; a < q; a += d) {
      const std::int64_t ph = chi.phase(a);
      if (ph > 0) {
        trivial_on_kernel = false;
        break;
      }
    }
    if (trivial_on_kernel) return d;
  }
  return q;
}

}  // namespace

UnitRootValue UnitRootValue::zero_value() {
  UnitRootValue v;
  v.zero_ = true;
  return v;
}

UnitRootValue UnitRootValue::turn(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("turn fraction with zero denominator");
  num %= den;
  const std::uint64_t g = arith::gcd(num, den);
  UnitRootValue v;
  v.num_ = num / g;
  v.den_ = den / g;
  return v;
}

UnitRootValue operator*(const UnitRootValue& a, const UnitRootValue& b) {
  if (a.zero_ || b.zero_) return UnitRootValue::zero_value();
  const std::uint64_t l = arith::lcm(a.den_, b.den_);
  return UnitRootValue::turn(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

UnitRootValue UnitRootValue::conj() const {
  if (zero_) return *this;
  return turn(den_ - num_, den_);
}

std::complex<double> UnitRootValue::to_complex() const {
  if (zero_) return {0.0, 0.0};
  return root_of_unity(num_, den_);
}

std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t m) {
  k %= m;
  const std::uint64_t g = arith::gcd(k, m);
  k /= g;
  m /= g;
  switch (m) {
    case 1:
      return {1.0, 0.0};
    case 2:
      return {-1.0, 0.0};
    case 4:
      return k == 1 ? std::complex<double>{0.0, 1.0}
                    : std::complex<double>{0.0, -1.0};
    default:
      break;
  }
  const long double angle = 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>(k) /
                            static_cast<long double>(m);
  return {static_cast<double>(std::cos(angle)),
          static_cast<double>(std::sin(angle))};
}

bool CharacterGroup::is_unit(std::uint64_t a) const {
  a %= q_;
  for (const auto& pp : factorization_.factors)
    if (a % pp.prime == 0) return false;
  return true;
}

std::vector<std::uint64_t> CharacterGroup::dlog(std::uint64_t a) const {
  a %= q_;
  if (!is_unit(a))
    throw std::domain_error("dlog: " + std::to_string(a) +
                            " is not a unit mod " + std::to_string(q_));
  std::vector<std::uint64_t> out(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i)
    out[i] = dlog_component(i, a);
  return out;
}

std::uint64_t CharacterGroup::element(
    const std::vector<std::uint64_t>& exponents) const {
  if (exponents.size() != components_.size())
    throw std::invalid_argument("element: exponent vector has wrong length");
  std::uint64_t x = 1 % q_;
  for (std::size_t i = 0; i < components_.size(); ++i)
    x = arith::mul_mod(x, arith::pow_mod(components_[i].generator, exponents[i], q_), q_);
  return x;
}

GroupPtr build_group(std::uint64_t q) {
  if (q == 0) throw std::domain_error("build_group: q must be positive");
  if (q > kMaxModulus)
    throw capacity_error("build_group: q = " + std::to_string(q) +
                         " exceeds table bound " + std::to_string(kMaxModulus));

  auto group = std::shared_ptr<CharacterGroup>(new CharacterGroup());
  group->q_ = q;
  group->factorization_ = arith::factorize(q);

  for (const auto& [p, e] : group->factorization_.factors) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;

    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        std::vector<std::uint32_t> table(4, kNoDlog);
        table[1] = 0;
        table[3] = 1;
        group->components_.push_back({crt_lift(3, 4, q), 2, 2, 4});
        group->local_dlog_.push_back(std::move(table));
        continue;
      }
      // Every unit mod 2^e is (-1)^s * 5^t uniquely, t < 2^(e-2).
      const std::uint64_t half_order = pe / 4;
      std::vector<std::uint32_t> sign(pe, kNoDlog), power(pe, kNoDlog);
      std::uint64_t x = 1;
      for (std::uint64_t t = 0; t < half_order; ++t) {
        sign[x] = 0;
        power[x] = static_cast<std::uint32_t>(t);
        sign[pe - x] = 1;
        power[pe - x] = static_cast<std::uint32_t>(t);
        x = x * 5 % pe;
      }
      group->components_.push_back({crt_lift(pe - 1, pe, q), 2, 2, pe});
      group->local_dlog_.push_back(std::move(sign));
      group->components_.push_back({crt_lift(5, pe, q), half_order, 2, pe});
      group->local_dlog_.push_back(std::move(power));
      continue;
    }

    const std::uint64_t phi = pe / p * (p - 1);
    const std::uint64_t g = smallest_primitive_root(p, pe, phi);
    std::vector<std::uint32_t> table(pe, kNoDlog);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < phi; ++k) {
      table[x] = static_cast<std::uint32_t>(k);
      x = x * g % pe;
    }
    group->components_.push_back({crt_lift(g, pe, q), phi, p, pe});
    group->local_dlog_.push_back(std::move(table));
  }

  for (const auto& c : group->components_) {
    group->phi_ *= c.order;
    group->exponent_ = arith::lcm(group->exponent_, c.order);
  }
  return group;
}

DirichletCharacter::DirichletCharacter(GroupPtr group,
                                       std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  if (!group_) throw std::invalid_argument("DirichletCharacter: null group");
  const auto& comps = group_->components();
  if (exponents_.size() != comps.size())
    throw std::invalid_argument(
        "DirichletCharacter: expected " + std::to_string(comps.size()) +
        " exponents, got " + std::to_string(exponents_.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (exponents_[i] >= comps[i].order)
      throw std::invalid_argument("DirichletCharacter: exponent " +
                                  std::to_string(exponents_[i]) +
                                  " not below component order " +
                                  std::to_string(comps[i].order));
    const std::uint64_t g = arith::gcd(comps[i].order, exponents_[i]);
    order_ = arith::lcm(order_, comps[i].order / g);
  }
  coefficients_.resize(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    // e_i / ord_i == coefficients_[i] / order_
    const std::uint64_t g = arith::gcd(comps[i].order, exponents_[i]);
    const std::uint64_t reduced_order = comps[i].order / g;
    coefficients_[i] = (exponents_[i] / g) * (order_ / reduced_order) % order_;
  }
  conductor_ = compute_conductor(*this);
}

std::int64_t DirichletCharacter::phase(std::uint64_t residue) const {
  if (!group_->is_unit(residue)) return -1;
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == 0) continue;
    k = (k + coefficients_[i] * group_->dlog_component(i, residue)) % order_;
  }
  return static_cast<std::int64_t>(k);
}

UnitRootValue DirichletCharacter::operator()(std::int64_t n) const {
  const auto q = static_cast<std::int64_t>(modulus());
  std::int64_t r = n % q;
  if (r < 0) r += q;
  const std::int64_t ph = phase(static_cast<std::uint64_t>(r));
  if (ph < 0) return UnitRootValue::zero_value();
  return UnitRootValue::turn(static_cast<std::uint64_t>(ph), order_);
}

UnitRootValue evaluate(const DirichletCharacter& chi, std::int64_t n) {
  return chi(n);
}

std::uint64_t conductor(const DirichletCharacter& chi) {
  return chi.conductor();
}

DirichletCharacter induce(const DirichletCharacter& chi_d, GroupPtr target) {
  const std::uint64_t d = chi_d.modulus();
  const std::uint64_t q = target->modulus();
  if (q % d != 0)
    throw std::domain_error("induce: modulus " + std::to_string(d) +
                            " does not divide " + std::to_string(q));
  const auto& comps = target->components();
  std::vector<std::uint64_t> exps(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::int64_t ph = chi_d.phase(comps[i].generator % d);
    const unsigned __int128 scaled =
        static_cast<unsigned __int128>(ph) * comps[i].order;
    if (ph < 0 || scaled % chi_d.order() != 0)
      throw std::logic_error("induce: generator value is not a root of its order");
    exps[i] = static_cast<std::uint64_t>(scaled / chi_d.order());
  }
  return DirichletCharacter(std::move(target), std::move(exps));
}

DirichletCharacter induce(const DirichletCharacter& chi_d, std::uint64_t q) {
  if (q == 0 || q % chi_d.modulus() != 0)
    throw std::domain_error("induce: modulus " +
                            std::to_string(chi_d.modulus()) +
                            " does not divide " + std::to_string(q));
  return induce(chi_d, build_group(q));
}

DirichletCharacter character_at(const GroupPtr& group, std::uint64_t index) {
  if (index >= group->phi())
    throw std::out_of_range("character_at: index beyond phi(q)");
  const auto& comps = group->components();
  std::vector<std::uint64_t> exps(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    exps[i] = index % comps[i].order;
    index /= comps[i].order;
  }
  return DirichletCharacter(group, std::move(exps));
}

std::vector<DirichletCharacter> enumerate_characters(const GroupPtr& group) {
  std::vector<DirichletCharacter> out;
  out.reserve(group->phi());
  for (std::uint64_t i = 0; i < group->phi(); ++i)
    out.push_back(character_at(group, i));
  return out;
}

PhaseTable::PhaseTable(const DirichletCharacter& chi)
    : q_(chi.modulus()),
      order_(chi.order()),
      phases_(q_),
      values_(q_),
      roots_(order_) {
  for (std::uint64_t k = 0; k < order_; ++k)
    roots_[k] = root_of_unity(k, order_);
  for (std::uint64_t r = 0; r < q_; ++r) {
    const std::int64_t ph = chi.phase(r);
    phases_[r] = static_cast<std::int32_t>(ph);
    values_[r] = ph < 0 ? std::complex<double>{0.0, 0.0}
                        : roots_[static_cast<std::size_t>(ph)];
  }
}

}  // namespace burgess::chars
