#include "chebias/class_function.hpp"

#include <cmath>

namespace chebias {

ClassFunction::ClassFunction(GroupPtr group, Eigen::VectorXcd values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (!group_) throw ConfigError("class function without group");
  if (static_cast<std::size_t>(values_.size()) != group_->num_classes())
    throw ConfigError("class function needs one value per class");
  if (!values_.allFinite()) throw ConfigError("class function has non-finite values");
}

ClassFunction ClassFunction::zero(GroupPtr group) {
  const auto n = static_cast<Eigen::Index>(group->num_classes());
  return {std::move(group), Eigen::VectorXcd::Zero(n)};
}

ClassFunction ClassFunction::constant(GroupPtr group, cplx c) {
  const auto n = static_cast<Eigen::Index>(group->num_classes());
  return {std::move(group), Eigen::VectorXcd::Constant(n, c)};
}

ClassFunction ClassFunction::indicator(GroupPtr group, std::size_t cls) {
  if (cls >= group->num_classes()) throw ConfigError("class index out of range");
  auto t = zero(std::move(group));
  t.values_[static_cast<Eigen::Index>(cls)] = 1.0;
  return t;
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  if (o.group_ != group_) throw ConfigError("class functions on different groups");
  return {group_, values_ + o.values_};
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
  if (o.group_ != group_) throw ConfigError("class functions on different groups");
  return {group_, values_ - o.values_};
}

cplx inner(const ClassFunction& a, const ClassFunction& b) {
  if (a.group() != b.group()) throw ConfigError("inner product across different groups");
  const auto& g = *a.group();
  Eigen::VectorXd w = g.class_sizes() / static_cast<double>(g.order);
  return (a.values().array() * b.values().conjugate().array() * w.array()).sum();
}

Eigen::VectorXcd fourier_transform(const ClassFunction& t) {
  const auto& g = *t.group();
  Eigen::VectorXd w = g.class_sizes() / static_cast<double>(g.order);
  Eigen::VectorXcd weighted = t.values().conjugate().cwiseProduct(w.cast<cplx>());
  return g.table * weighted;
}

ClassFunction inverse_fourier(const GroupPtr& g, const Eigen::VectorXcd& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != static_cast<std::size_t>(g->table.rows()))
    throw ConfigError("inverse_fourier: one coefficient per irreducible character required");
  return {g, g->table.transpose() * coeffs.conjugate()};
}

Norms norms(const ClassFunction& t) {
  const auto& g = *t.group();
  Eigen::VectorXd w = g.class_sizes() / static_cast<double>(g.order);
  Norms n;
  n.norm1 = t.values().cwiseAbs().dot(w);
  n.norm2 = std::sqrt(t.values().cwiseAbs2().dot(w));
  n.littlewood = g.degrees().dot(fourier_transform(t).cwiseAbs());
  return n;
}

cplx epsilon_k(const FiniteGroupModel& g, std::size_t chi, long k) {
  cplx s = 0;
  for (std::size_t c = 0; c < g.num_classes(); ++c)
    s += double(g.classes[c].size) * g.table(static_cast<Eigen::Index>(chi), g.power_class(c, k));
  return s / static_cast<double>(g.order);
}

Eigen::VectorXcd epsilon_vector(const FiniteGroupModel& g, long k) {
  Eigen::VectorXcd e(g.table.rows());
  for (Eigen::Index chi = 0; chi < e.size(); ++chi) e[chi] = epsilon_k(g, static_cast<std::size_t>(chi), k);
  return e;
}

std::string fs_name(FSType t) {
  switch (t) {
    case FSType::Orthogonal: return "orthogonal";
    case FSType::Unitary: return "unitary";
    case FSType::Symplectic: return "symplectic";
  }
  return "unknown";
}

FSType fs_classify(const FiniteGroupModel& g, std::size_t chi) {
  const cplx e = epsilon_k(g, chi, 2);
  if (std::abs(e - 1.0) < 1e-8) return FSType::Orthogonal;
  if (std::abs(e) < 1e-8) return FSType::Unitary;
  if (std::abs(e + 1.0) < 1e-8) return FSType::Symplectic;
  throw InvariantError("Frobenius-Schur indicator outside {-1,0,1}: corrupted table");
}

ClassFunction root_count(const GroupPtr& g, long k) {
  if (k < 1) throw ConfigError("root_count: k must be positive");
  // r_k(C) |C| = sum over classes D with D^k = C of |D|
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g->num_classes()));
  for (std::size_t d = 0; d < g->num_classes(); ++d)
    v[static_cast<Eigen::Index>(g->power_class(d, k))] += double(g->classes[d].size);
  for (std::size_t c = 0; c < g->num_classes(); ++c) v[static_cast<Eigen::Index>(c)] /= double(g->classes[c].size);
  return {g, v};
}

ClassFunction root_count_from_characters(const GroupPtr& g, long k) {
  return inverse_fourier(g, epsilon_vector(*g, k));
}

ClassFunction power_compose(const ClassFunction& t, long l) {
  const auto& g = t.group();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g->num_classes()));
  for (std::size_t c = 0; c < g->num_classes(); ++c) v[static_cast<Eigen::Index>(c)] = t[g->power_class(c, l)];
  return {g, v};
}

ClassFunction race_function(const GroupPtr& g, std::size_t c1, std::size_t c2) {
  if (c1 == c2) throw ConfigError("race_function: C1 and C2 must differ");
  const double order = static_cast<double>(g->order);
  auto t = ClassFunction::indicator(g, c1) * (order / double(g->classes.at(c1).size));
  if (c2 != kNoClass) t = t - ClassFunction::indicator(g, c2) * (order / double(g->classes.at(c2).size));
  return t;
}

ClassFunction one_minus_r(const GroupPtr& g) { return ClassFunction::constant(g, 1.0) - root_count(g, 2); }

ClassFunction race_function(const GroupPtr& g, const std::string& spec) {
  if (spec == "one-minus-r") return one_minus_r(g);
  std::string body = spec.rfind("race:", 0) == 0 ? spec.substr(5) : spec;
  auto comma = body.find(',');
  if (comma == std::string::npos) throw ConfigError("race spec must be 'one-minus-r' or 'race:C1,C2'");
  std::string a = body.substr(0, comma), b = body.substr(comma + 1);
  std::size_t c1 = g->find_class(a);
  std::size_t c2 = b == "0" ? kNoClass : g->find_class(b);
  return race_function(g, c1, c2);
}

ClassFunction random_class_function(const GroupPtr& g, std::mt19937_64& rng, bool real_valued) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g->num_classes()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double re = u(rng);
    double im = real_valued ? 0.0 : u(rng);
    v[i] = {re, im};
  }
  return {g, v};
}

}  // namespace chebias
