#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebias {

using cplx = std::complex<double>;

// Thrown when a constructed object violates a structural invariant.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for invalid user-supplied parameters.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class GroupKind { ExplicitTable, AbelianProduct, Dihedral, Affine, Symmetric };

std::string kind_name(GroupKind k);

// Element-level view of a finite group. Elements are 0..size()-1 and 0 is the
// identity. Small groups cache a full multiplication table.
class ElementGroup {
 public:
  using MulFn = std::function<std::size_t(std::size_t, std::size_t)>;

  ElementGroup(std::size_t n, MulFn mul, std::vector<std::string> labels = {});
  ElementGroup(std::vector<std::vector<std::size_t>> table, std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  std::size_t mul(std::size_t a, std::size_t b) const {
    return table_.empty() ? mul_(a, b) : table_[a * n_ + b];
  }
  std::size_t inv(std::size_t a) const { return inv_[a]; }
  std::size_t pow(std::size_t a, std::int64_t k) const;
  std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(inv(x), g), x); }
  std::string label(std::size_t a) const;

 private:
  void finish();
  std::size_t n_;
  MulFn mul_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> inv_;
  std::vector<std::string> labels_;
};

using ElementGroupPtr = std::shared_ptr<const ElementGroup>;

struct ConjugacyClass {
  std::uint64_t size = 0;
  std::string label;
  std::size_t rep = static_cast<std::size_t>(-1);  // element index when elements exist
};

// A finite group at the level of conjugacy classes with a complete complex
// character table (rows: irreducible characters, columns: classes). Class 0 is
// always the identity class.
class FiniteGroupModel {
 public:
  GroupKind kind = GroupKind::ExplicitTable;
  std::vector<long> params;
  std::uint64_t order = 0;
  std::vector<ConjugacyClass> classes;
  Eigen::MatrixXcd table;
  std::vector<std::string> char_labels;
  // class of g^k for g in class c
  std::function<std::size_t(std::size_t, std::int64_t)> power_fn;
  ElementGroupPtr elements;            // may be null (large symmetric groups)
  std::vector<std::size_t> class_of;   // element -> class, when elements exist

  std::size_t num_classes() const { return classes.size(); }
  Eigen::VectorXd class_sizes() const;
  Eigen::VectorXd degrees() const { return table.col(0).real(); }
  std::size_t power_class(std::size_t c, std::int64_t k) const { return power_fn(c, k); }
  std::size_t find_class(const std::string& label) const;
  std::size_t trivial_character() const;
  std::string name() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroupModel>;

GroupPtr make_cyclic(long n);
GroupPtr make_abelian(const std::vector<long>& orders);
GroupPtr make_dihedral(long n);
GroupPtr make_affine(long p);
GroupPtr make_symmetric(long n);
// Generic construction: classes by conjugation orbits, table by Burnside's algorithm.
GroupPtr make_from_elements(ElementGroupPtr g, GroupKind kind = GroupKind::ExplicitTable,
                            std::vector<long> params = {});
GroupPtr make_quaternion8();
// (Z/qZ)^*, elements labelled by residues
GroupPtr make_units_mod(long q);

// Dispatch on a kind name: cyclic, abelian, dihedral, affine, symmetric, quaternion, units.
GroupPtr build_group(const std::string& kind, const std::vector<long>& params);

// Conjugacy classes of an element group: classes[0] is the identity class.
void compute_classes(const ElementGroup& g, std::vector<ConjugacyClass>& classes,
                     std::vector<std::size_t>& class_of);

// Character table by Burnside's eigenvector method on class structure constants.
Eigen::MatrixXcd burnside_table(const ElementGroup& g, const std::vector<ConjugacyClass>& classes,
                                const std::vector<std::size_t>& class_of);

struct OrthogonalityReport {
  double row_error = 0;
  double column_error = 0;
  double degree_error = 0;  // |sum chi(1)^2 - |G||
};

OrthogonalityReport orthogonality(const FiniteGroupModel& g);
// Throws InvariantError when any relation fails beyond tol.
void verify_group(const FiniteGroupModel& g, double tol = 1e-10);

// Line-oriented text format: `kind <name> <params...>` then optional `table` rows.
GroupPtr load_group(std::istream& in);
void write_character_table_csv(std::ostream& out, const FiniteGroupModel& g);

long gcd_long(long a, long b);
long mod_pow(long base, long exp, long mod);
long primitive_root(long p);
bool is_prime(long n);

}  // namespace chebias
