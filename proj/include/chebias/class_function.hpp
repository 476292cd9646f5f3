#pragma once

#include "chebias/group.hpp"

#include <random>

namespace chebias {

// Complex values on the conjugacy classes of a group.
class ClassFunction {
 public:
  ClassFunction(GroupPtr group, Eigen::VectorXcd values);

  static ClassFunction zero(GroupPtr group);
  static ClassFunction constant(GroupPtr group, cplx c);
  static ClassFunction indicator(GroupPtr group, std::size_t cls);

  const GroupPtr& group() const { return group_; }
  const Eigen::VectorXcd& values() const { return values_; }
  cplx operator[](std::size_t cls) const { return values_[static_cast<Eigen::Index>(cls)]; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction operator-() const { return {group_, -values_}; }
  ClassFunction operator*(cplx c) const { return {group_, values_ * c}; }

  bool is_real(double tol = 1e-12) const { return values_.imag().cwiseAbs().maxCoeff() <= tol; }

 private:
  GroupPtr group_;
  Eigen::VectorXcd values_;
};

// <a, b> = (1/|G|) sum_g a(g) conj(b(g))
cplx inner(const ClassFunction& a, const ClassFunction& b);

// t^(chi) = <chi, t> = (1/|G|) sum_g chi(g) conj(t(g)), one entry per table row.
Eigen::VectorXcd fourier_transform(const ClassFunction& t);
// t = sum_chi conj(t^(chi)) chi
ClassFunction inverse_fourier(const GroupPtr& g, const Eigen::VectorXcd& coeffs);

struct Norms {
  double norm1 = 0;       // (1/|G|) sum |t(g)|
  double norm2 = 0;       // <t, t>^{1/2}
  double littlewood = 0;  // sum chi(1) |t^(chi)|
};
Norms norms(const ClassFunction& t);

// eps_k(chi) = (1/|G|) sum_g chi(g^k)
cplx epsilon_k(const FiniteGroupModel& g, std::size_t chi, long k);
Eigen::VectorXcd epsilon_vector(const FiniteGroupModel& g, long k);

enum class FSType { Orthogonal, Unitary, Symplectic };
std::string fs_name(FSType t);
// Throws InvariantError when eps_2 is not within 1e-8 of -1, 0 or 1.
FSType fs_classify(const FiniteGroupModel& g, std::size_t chi);

// r_k(h) = #{g : g^k = h}, computed from the power map on classes.
ClassFunction root_count(const GroupPtr& g, long k);
// sum_chi conj(eps_k(chi)) chi, the character-side expression of r_k.
ClassFunction root_count_from_characters(const GroupPtr& g, long k);

// g -> t(g^l)
ClassFunction power_compose(const ClassFunction& t, long l);

// |G|/|C1| 1_{C1} - |G|/|C2| 1_{C2}; c2 = npos means the second term is omitted.
inline constexpr std::size_t kNoClass = static_cast<std::size_t>(-1);
ClassFunction race_function(const GroupPtr& g, std::size_t c1, std::size_t c2 = kNoClass);
// 1 - r_2
ClassFunction one_minus_r(const GroupPtr& g);
// "one-minus-r" or "race:C1,C2" (C2 may be "0"); also accepts "C1,C2".
ClassFunction race_function(const GroupPtr& g, const std::string& spec);

// Uniform real and imaginary parts in [-1, 1] per class.
ClassFunction random_class_function(const GroupPtr& g, std::mt19937_64& rng, bool real_valued = false);

}  // namespace chebias
