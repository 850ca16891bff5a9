#pragma once

// Dirichlet characters modulo q.
//
// (Z/q)* is split by CRT into cyclic components: one per odd prime power
// (generated by its smallest primitive root), none for 2, one of order 2
// for 4, and two (generated by -1 and 5) for 2^e with e >= 3. Generators
// are lifted to residues mod q that are 1 at every other prime power.
// A character is an exponent vector on these generators; its values are
// exact roots of unity stored as reduced fractions of a full turn.

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "burgess/arith.hpp"

namespace burgess::chars {

inline constexpr std::uint64_t kMaxModulus = 10'000'000;

class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Zero, or exp(2*pi*i * num/den) with num/den reduced and 0 <= num < den.
class UnitRootValue {
 public:
  UnitRootValue() = default;

  static UnitRootValue zero_value();
  static UnitRootValue turn(std::uint64_t num, std::uint64_t den);

  bool is_zero() const { return zero_; }
  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }

  std::complex<double> to_complex() const;
  UnitRootValue conj() const;

  friend UnitRootValue operator*(const UnitRootValue& a,
                                 const UnitRootValue& b);
  friend bool operator==(const UnitRootValue&, const UnitRootValue&) = default;

 private:
  bool zero_ = false;
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// exp(2*pi*i * k/m), exact on the axes.
std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t m);

struct CyclicComponent {
  std::uint64_t generator;    // residue mod q
  std::uint64_t order;
  std::uint64_t prime;
  std::uint64_t prime_power;  // CRT factor of q carrying this component
};

class CharacterGroup {
 public:
  std::uint64_t modulus() const { return q_; }
  std::uint64_t phi() const { return phi_; }
  /// lcm of the component orders.
  std::uint64_t exponent() const { return exponent_; }
  const arith::Factorization& factorization() const { return factorization_; }
  const std::vector<CyclicComponent>& components() const { return components_; }

  bool is_unit(std::uint64_t a) const;

  /// Exponent of a (reduced mod q) on component i. a must be a unit.
  std::uint64_t dlog_component(std::size_t i, std::uint64_t a) const {
    return local_dlog_[i][a % components_[i].prime_power];
  }

  /// Full exponent vector; throws std::domain_error for non-units.
  std::vector<std::uint64_t> dlog(std::uint64_t a) const;

  /// Product of generator_i^exponents_i mod q.
  std::uint64_t element(const std::vector<std::uint64_t>& exponents) const;

 private:
  friend std::shared_ptr<const CharacterGroup> build_group(std::uint64_t q);

  std::uint64_t q_ = 1;
  std::uint64_t phi_ = 1;
  std::uint64_t exponent_ = 1;
  arith::Factorization factorization_;
  std::vector<CyclicComponent> components_;
  std::vector<std::vector<std::uint32_t>> local_dlog_;
};

using GroupPtr = std::shared_ptr<const CharacterGroup>;

/// Throws capacity_error for q > kMaxModulus, std::domain_error for q == 0.
GroupPtr build_group(std::uint64_t q);

class DirichletCharacter {
 public:
  /// Validates exponents (one per component, each below its order) and
  /// computes order and conductor. Throws std::invalid_argument.
  DirichletCharacter(GroupPtr group, std::vector<std::uint64_t> exponents);

  const CharacterGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::uint64_t modulus() const { return group_->modulus(); }
  const std::vector<std::uint64_t>& exponents() const { return exponents_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t conductor() const { return conductor_; }
  bool primitive() const { return conductor_ == modulus(); }
  bool principal() const { return order_ == 1; }

  /// -1 for non-units, else k with chi(residue) = exp(2*pi*i*k/order).
  /// residue must already be reduced mod q.
  std::int64_t phase(std::uint64_t residue) const;

  UnitRootValue operator()(std::int64_t n) const;

 private:
  GroupPtr group_;
  std::vector<std::uint64_t> exponents_;
  std::vector<std::uint64_t> coefficients_;  // per-component phase weights
  std::uint64_t order_ = 1;
  std::uint64_t conductor_ = 1;
};

UnitRootValue evaluate(const DirichletCharacter& chi, std::int64_t n);

/// Smallest d | q with chi trivial on units congruent to 1 mod d.
std::uint64_t conductor(const DirichletCharacter& chi);

/// The character mod q agreeing with chi_d on units mod q.
/// Throws std::domain_error if chi_d's modulus does not divide q.
DirichletCharacter induce(const DirichletCharacter& chi_d, std::uint64_t q);
DirichletCharacter induce(const DirichletCharacter& chi_d, GroupPtr target);

/// All phi(q) characters; index i has component-0-least-significant
/// mixed-radix exponents, so the principal character comes first.
std::vector<DirichletCharacter> enumerate_characters(const GroupPtr& group);
DirichletCharacter character_at(const GroupPtr& group, std::uint64_t index);

/// Values of one character over a full period, for summation loops.
class PhaseTable {
 public:
  explicit PhaseTable(const DirichletCharacter& chi);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t order() const { return order_; }
  /// Indexed by residue in [0, q); -1 marks non-units.
  const std::vector<std::int32_t>& phases() const { return phases_; }
  const std::vector<std::complex<double>>& values() const { return values_; }
  /// exp(2*pi*i*k/order) for k in [0, order).
  const std::vector<std::complex<double>>& roots() const { return roots_; }

  std::complex<double> value(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(q_);
    if (r < 0) r += static_cast<std::int64_t>(q_);
    return values_[static_cast<std::size_t>(r)];
  }

 private:
  std::uint64_t q_;
  std::uint64_t order_;
  std::vector<std::int32_t> phases_;
  std::vector<std::complex<double>> values_;
  std::vector<std::complex<double>> roots_;
};

}  // namespace burgess::chars
