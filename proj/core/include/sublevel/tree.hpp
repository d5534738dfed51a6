#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sublevel {

/// A d-tree on m indices: either a leaf naming one of the functions pi_1..pi_m,
/// or an internal node with exactly d ordered children.
///
/// The arity d and index count m are not stored; they are checked by `validate`
/// and `stats`.
class DTree {
 public:
  static DTree leaf(int index);
  static DTree node(std::vector<DTree> children);

  bool is_leaf() const noexcept { return children_.empty(); }
  int index() const;  // leaf only
  const std::vector<DTree>& children() const noexcept { return children_; }

  /// Throws DomainError unless every node has d children and every leaf lies in 1..m.
  void validate(int d, int m) const;

  friend bool operator==(const DTree&, const DTree&) = default;

 private:
  int index_ = 0;
  std::vector<DTree> children_;
};

/// Total order used for canonical child sorting: leaves before nodes, leaves by
/// index, nodes lexicographically by children.
int compare(const DTree& a, const DTree& b);
inline bool operator<(const DTree& a, const DTree& b) { return compare(a, b) < 0; }

struct TreeStats {
  int order = 0;                 // #G, the number of internal nodes
  std::vector<int> leaf_counts;  // G^(1)..G^(m)
  int depth = 0;                 // least K with G in G_K
  int vertex_count = 0;
  int leaf_count = 0;
};

TreeStats stats(const DTree& g, int d, int m);

/// Exponents and multiindex of an admissible operator of type (alpha, beta).
struct OperatorType {
  int alpha = 1;
  std::vector<int> beta;

  int beta_norm() const;
  /// |beta| + 1 - alpha, the order of any realizing tree.
  int order() const { return beta_norm() + 1 - alpha; }

  friend bool operator==(const OperatorType&, const OperatorType&) = default;
};

/// Tree on m = d + 1 indices realizing d^beta F when pi = (x_1, ..., x_d, F).
/// Derivatives are nested in increasing coordinate order, innermost first.
DTree mixed_derivative_tree(const std::vector<int>& beta, int d);

/// Tree whose value is det(Hess F) when pi = (x_1, ..., x_d, F): child j is the
/// leaf tuple (1, ..., j-1, d+1, j+1, ..., d).
DTree hessian_tree(int d);

/// Sorts children at every node by `compare`. `sign`, when given, receives the
/// parity (+1/-1) of all child permutations applied, so that
/// apply_tree(g) == sign * apply_tree(canonical(g)).
DTree canonicalize(const DTree& g, int* sign = nullptr);

struct TreeEnumeration {
  std::vector<DTree> trees;
  bool truncated = false;
};

/// Every tree of G_maxK \ G_0 up to permutation of children, each once, in
/// canonical form; ordered by depth, then by `compare`.
TreeEnumeration enumerate_canonical(int d, int m, int max_depth, std::size_t max_count);

/// Bracketed text form: a leaf is its index, a node is "(c1,...,cd)".
std::string to_string(const DTree& g);
DTree parse_tree(std::string_view text);

/// Shape graph in Graphviz DOT; leaves labelled by index, internal vertices unlabelled.
std::string to_dot(const DTree& g, int d, int m);

}  // namespace sublevel
