#include "chebias/embedding.hpp"

namespace chebias {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);
}

SubgroupEmbedding::SubgroupEmbedding(GroupPtr sub, GroupPtr super, std::vector<std::size_t> injection)
    : sub_(std::move(sub)), super_(std::move(super)), injection_(std::move(injection)) {
  if (!sub_->elements || !super_->elements) throw ConfigError("embedding needs element-level groups");
  const auto& G = *sub_->elements;
  const auto& H = *super_->elements;
  if (injection_.size() != G.size()) throw ConfigError("injection must map every subgroup element");
  if (H.size() % G.size() != 0) throw InvariantError("subgroup order does not divide group order");
  preimage_.assign(H.size(), npos);
  for (std::size_t a = 0; a < G.size(); ++a) {
    if (injection_[a] >= H.size()) throw ConfigError("injection image out of range");
    if (preimage_[injection_[a]] != npos) throw InvariantError("injection is not injective");
    preimage_[injection_[a]] = a;
  }
  for (std::size_t a = 0; a < G.size(); ++a)
    for (std::size_t b = 0; b < G.size(); ++b)
      if (H.mul(injection_[a], injection_[b]) != injection_[G.mul(a, b)])
        throw InvariantError("injection is not a homomorphism");
  // left cosets aG, representatives chosen as the smallest element index
  std::vector<char> covered(H.size(), 0);
  for (std::size_t x = 0; x < H.size(); ++x) {
    if (covered[x]) continue;
    coset_reps_.push_back(x);
    for (std::size_t h : injection_) covered[H.mul(x, h)] = 1;
  }
  if (coset_reps_.size() * G.size() != H.size()) throw InvariantError("coset enumeration failed");
}

std::size_t SubgroupEmbedding::image_class(std::size_t sub_class) const {
  return super_->class_of[injection_[sub_->classes.at(sub_class).rep]];
}

SubgroupEmbedding make_embedding(GroupPtr sub, GroupPtr super, const std::function<std::size_t(std::size_t)>& f) {
  if (!sub->elements) throw ConfigError("embedding needs element-level groups");
  std::vector<std::size_t> inj(sub->elements->size());
  for (std::size_t a = 0; a < inj.size(); ++a) inj[a] = f(a);
  return {std::move(sub), std::move(super), std::move(inj)};
}

SubgroupEmbedding cyclic_in_dihedral(long n) {
  // rotation r^j has index j in both encodings
  return make_embedding(make_cyclic(n), make_dihedral(n), [](std::size_t a) { return a; });
}

SubgroupEmbedding unipotent_in_affine(long p) {
  // x -> x + d is (1, d), index d
  return make_embedding(make_cyclic(p), make_affine(p), [](std::size_t a) { return a; });
}

SubgroupEmbedding identity_embedding(GroupPtr g) {
  auto h = g;
  return make_embedding(std::move(g), std::move(h), [](std::size_t a) { return a; });
}

Eigen::MatrixXcd induction_matrix(const SubgroupEmbedding& emb) {
  const auto& sup = *emb.super();
  const auto& sub = *emb.sub();
  const auto& H = *sup.elements;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sup.num_classes()),
                                              static_cast<Eigen::Index>(sub.num_classes()));
  for (std::size_t c = 0; c < sup.num_classes(); ++c) {
    const std::size_t g = sup.classes[c].rep;
    for (std::size_t a : emb.coset_reps()) {
      const std::size_t y = emb.preimage(H.conj(g, a));
      if (y != npos) m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(sub.class_of[y])) += 1.0;
    }
  }
  return m;
}

ClassFunction induce(const ClassFunction& t, const SubgroupEmbedding& emb) {
  if (t.group() != emb.sub()) throw ConfigError("induce: class function lives on another group");
  return {emb.super(), induction_matrix(emb) * t.values()};
}

cplx induced_fourier(const ClassFunction& t, const SubgroupEmbedding& emb, std::size_t chi) {
  if (t.group() != emb.sub()) throw ConfigError("induced_fourier: class function lives on another group");
  const auto& sub = *emb.sub();
  const auto& sup = *emb.super();
  cplx s = 0;
  for (std::size_t c = 0; c < sub.num_classes(); ++c) {
    const cplx restricted = sup.table(static_cast<Eigen::Index>(chi), static_cast<Eigen::Index>(emb.image_class(c)));
    s += double(sub.classes[c].size) * restricted * std::conj(t[c]);
  }
  return s / static_cast<double>(sub.order);
}

Eigen::VectorXcd induced_fourier(const ClassFunction& t, const SubgroupEmbedding& emb) {
  Eigen::VectorXcd v(emb.super()->table.rows());
  for (Eigen::Index chi = 0; chi < v.size(); ++chi) v[chi] = induced_fourier(t, emb, static_cast<std::size_t>(chi));
  return v;
}

std::size_t induce_conjugacy_class(std::size_t sub_class, const SubgroupEmbedding& emb) {
  const auto& sub = *emb.sub();
  const auto& sup = *emb.super();
  const auto& H = *sup.elements;
  const std::size_t target = emb.image_class(sub_class);
  for (std::size_t x = 0; x < sub.elements->size(); ++x) {
    if (sub.class_of[x] != sub_class) continue;
    for (std::size_t a : emb.coset_reps())
      if (sup.class_of[H.conj(emb.injection()[x], H.inv(a))] != target)
        throw InvariantError("induced class is not a single conjugacy class");
  }
  return target;
}

}  // namespace chebias
