#pragma once

#include "chebias/class_function.hpp"

#include <functional>

namespace chebias {

// An injective homomorphism G -> G+ of element groups, with left coset
// representatives of the image.
class SubgroupEmbedding {
 public:
  SubgroupEmbedding(GroupPtr sub, GroupPtr super, std::vector<std::size_t> injection);

  const GroupPtr& sub() const { return sub_; }
  const GroupPtr& super() const { return super_; }
  const std::vector<std::size_t>& injection() const { return injection_; }
  const std::vector<std::size_t>& coset_reps() const { return coset_reps_; }
  std::size_t index() const { return coset_reps_.size(); }
  // G+ element -> G element, or npos when outside the image
  std::size_t preimage(std::size_t x) const { return preimage_[x]; }
  // class of G+ containing the image of a G-class
  std::size_t image_class(std::size_t sub_class) const;

 private:
  GroupPtr sub_, super_;
  std::vector<std::size_t> injection_;
  std::vector<std::size_t> coset_reps_;
  std::vector<std::size_t> preimage_;
};

// Embedding given by a map on element indices.
SubgroupEmbedding make_embedding(GroupPtr sub, GroupPtr super, const std::function<std::size_t(std::size_t)>& f);
// Rotations Z/n inside dihedral(n).
SubgroupEmbedding cyclic_in_dihedral(long n);
// Unipotent subgroup Z/p = {x -> x + d} inside affine(p).
SubgroupEmbedding unipotent_in_affine(long p);
// G inside G (identity map).
SubgroupEmbedding identity_embedding(GroupPtr g);

// t+(g) = sum over left cosets aG with a^{-1} g a in G of t(a^{-1} g a)
ClassFunction induce(const ClassFunction& t, const SubgroupEmbedding& emb);
// Linear map of induction on class values (rows: G+ classes, columns: G classes).
Eigen::MatrixXcd induction_matrix(const SubgroupEmbedding& emb);

// <chi|_G, t>_G for a G+ character chi; equals fourier_transform(induce(t))(chi).
cplx induced_fourier(const ClassFunction& t, const SubgroupEmbedding& emb, std::size_t chi);
Eigen::VectorXcd induced_fourier(const ClassFunction& t, const SubgroupEmbedding& emb);

// C+ as a class of G+; throws InvariantError if the union is not a single class.
std::size_t induce_conjugacy_class(std::size_t sub_class, const SubgroupEmbedding& emb);

}  // namespace chebias
