#include "sublevel/tree.hpp"

#include "sublevel/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace sublevel {

DTree DTree::leaf(int index) {
  if (index < 1) throw DomainError("leaf indices start at 1");
  DTree t;
  t.index_ = index;
  return t;
}

DTree DTree::node(std::vector<DTree> children) {
  if (children.empty()) throw DomainError("an internal node needs at least one child");
  DTree t;
  t.children_ = std::move(children);
  return t;
}

int DTree::index() const {
  if (!is_leaf()) throw DomainError("index() on an internal node");
  return index_;
}

void DTree::validate(int d, int m) const {
  if (is_leaf()) {
    if (index_ < 1 || index_ > m) {
      throw DomainError("leaf index " + std::to_string(index_) + " outside 1.." + std::to_string(m));
    }
    return;
  }
  if (static_cast<int>(children_.size()) != d) {
    throw DomainError("internal node with " + std::to_string(children_.size()) + " children, expected d = " +
                      std::to_string(d));
  }
  for (const auto& c : children_) c.validate(d, m);
}

int compare(const DTree& a, const DTree& b) {
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? -1 : 1;
  if (a.is_leaf()) return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
  const auto& xs = a.children();
  const auto& ys = b.children();
  const std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(xs[i], ys[i])) return c;
  }
  if (xs.size() == ys.size()) return 0;
  return xs.size() < ys.size() ? -1 : 1;
}

int OperatorType::beta_norm() const { return std::accumulate(beta.begin(), beta.end(), 0); }

namespace {

void accumulate_stats(const DTree& g, TreeStats& s) {
  ++s.vertex_count;
  if (g.is_leaf()) {
    ++s.leaf_count;
    ++s.leaf_counts[static_cast<std::size_t>(g.index() - 1)];
    return;
  }
  ++s.order;
  for (const auto& c : g.children()) accumulate_stats(c, s);
}

int depth_of(const DTree& g) {
  if (g.is_leaf()) return 0;
  int best = 0;
  for (const auto& c : g.children()) best = std::max(best, depth_of(c));
  return best + 1;
}

}  // namespace

TreeStats stats(const DTree& g, int d, int m) {
  if (d < 1 || m < 1) throw DomainError("stats needs d >= 1 and m >= 1");
  g.validate(d, m);
  TreeStats s;
  s.leaf_counts.assign(static_cast<std::size_t>(m), 0);
  accumulate_stats(g, s);
  s.depth = depth_of(g);
  return s;
}

DTree mixed_derivative_tree(const std::vector<int>& beta, int d) {
  if (d < 1 || static_cast<int>(beta.size()) != d) throw DomainError("multiindex length must equal d");
  if (std::any_of(beta.begin(), beta.end(), [](int b) { return b < 0; })) {
    throw DomainError("multiindex entries must be nonnegative");
  }
  if (std::accumulate(beta.begin(), beta.end(), 0) == 0) {
    throw DomainError("zero multiindex: the trivial tree d+1 realizes F itself");
  }
  DTree g = DTree::leaf(d + 1);
  for (int i = 1; i <= d; ++i) {
    for (int k = 0; k < beta[static_cast<std::size_t>(i - 1)]; ++k) {
      std::vector<DTree> slots;
      slots.reserve(static_cast<std::size_t>(d));
      for (int j = 1; j <= d; ++j) slots.push_back(j == i ? g : DTree::leaf(j));
      g = DTree::node(std::move(slots));
    }
  }
  return g;
}

DTree hessian_tree(int d) {
  if (d < 1) throw DomainError("hessian_tree needs d >= 1");
  std::vector<DTree> rows;
  for (int j = 1; j <= d; ++j) {
    std::vector<DTree> slots;
    for (int k = 1; k <= d; ++k) slots.push_back(DTree::leaf(k == j ? d + 1 : k));
    rows.push_back(DTree::node(std::move(slots)));
  }
  return DTree::node(std::move(rows));
}

DTree canonicalize(const DTree& g, int* sign) {
  int s = 1;
  if (g.is_leaf()) {
    if (sign) *sign = 1;
    return g;
  }
  std::vector<DTree> children;
  children.reserve(g.children().size());
  for (const auto& c : g.children()) {
    int cs = 1;
    children.push_back(canonicalize(c, &cs));
    s *= cs;
  }
  // Insertion sort, counting transpositions for the permutation parity.
  for (std::size_t i = 1; i < children.size(); ++i) {
    for (std::size_t j = i; j > 0 && compare(children[j], children[j - 1]) < 0; --j) {
      std::swap(children[j], children[j - 1]);
      s = -s;
    }
  }
  if (sign) *sign = s;
  return DTree::node(std::move(children));
}

TreeEnumeration enumerate_canonical(int d, int m, int max_depth, std::size_t max_count) {
  if (max_depth < 1) throw DomainError("enumerate_canonical needs maxK >= 1");
  if (d < 1 || m < 1) throw DomainError("enumerate_canonical needs d >= 1 and m >= 1");
  TreeEnumeration out;

  // All canonical trees of depth < k with their depths, kept sorted by `compare`
  // so that nondecreasing index tuples are exactly the sorted child lists.
  std::vector<std::pair<DTree, int>> pool;
  for (int i = 1; i <= m; ++i) pool.emplace_back(DTree::leaf(i), 0);

  for (int k = 1; k <= max_depth; ++k) {
    std::vector<DTree> level;
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    const std::size_t n = pool.size();
    for (;;) {
      const bool reaches_depth = std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return pool[i].second == k - 1; });
      if (reaches_depth) {
        std::vector<DTree> children;
        children.reserve(idx.size());
        for (auto i : idx) children.push_back(pool[i].first);
        level.push_back(DTree::node(std::move(children)));
        if (out.trees.size() + level.size() >= max_count) {
          std::sort(level.begin(), level.end());
          out.trees.insert(out.trees.end(), level.begin(), level.end());
          out.truncated = true;
          return out;
        }
      }
      // Next multiset in lexicographic order.
      std::size_t pos = idx.size();
      while (pos > 0 && idx[pos - 1] == n - 1) --pos;
      if (pos == 0) break;
      const std::size_t v = idx[pos - 1] + 1;
      for (std::size_t j = pos - 1; j < idx.size(); ++j) idx[j] = v;
    }
    std::sort(level.begin(), level.end());
    out.trees.insert(out.trees.end(), level.begin(), level.end());
    for (auto& t : level) pool.emplace_back(std::move(t), k);
    std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return out;
}

std::string to_string(const DTree& g) {
  if (g.is_leaf()) return std::to_string(g.index());
  std::string out = "(";
  for (std::size_t i = 0; i < g.children().size(); ++i) {
    if (i) out += ',';
    out += to_string(g.children()[i]);
  }
  out += ')';
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  DTree run() {
    DTree t = tree();
    skip();
    if (pos_ != text_.size()) throw ParseError("trailing characters in tree", pos_);
    return t;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  DTree tree() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of tree", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      std::vector<DTree> children{tree()};
      skip();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        children.push_back(tree());
        skip();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')' in tree", pos_);
      ++pos_;
      return DTree::node(std::move(children));
    }
    if (!std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected a leaf index or '('", pos_);
    }
    const std::size_t start = pos_;
    int v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000) throw ParseError("leaf index too large", start);
    }
    if (v < 1) throw ParseError("leaf indices start at 1", start);
    return DTree::leaf(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void emit_dot(const DTree& g, int& next_id, std::ostringstream& vertices, std::ostringstream& edges) {
  const int id = next_id++;
  if (g.is_leaf()) {
    vertices << "  n" << id << " [label=\"" << g.index() << "\"];\n";
    return;
  }
  vertices << "  n" << id << " [label=\"\", shape=point];\n";
  for (const auto& c : g.children()) {
    edges << "  n" << id << " -> n" << next_id << ";\n";
    emit_dot(c, next_id, vertices, edges);
  }
}

}  // namespace

DTree parse_tree(std::string_view text) { return TreeParser(text).run(); }

std::string to_dot(const DTree& g, int d, int m) {
  const TreeStats s = stats(g, d, m);
  std::ostringstream vertices, edges, out;
  int next_id = 0;
  emit_dot(g, next_id, vertices, edges);
  out << "// d-tree " << to_string(g) << "\n";
  out << "// vertices: " << s.vertex_count << ", leaves: " << s.leaf_count << ", order: " << s.order << "\n";
  out << "digraph dtree {\n" << vertices.str() << edges.str() << "}\n";
  return out.str();
}

}  // namespace sublevel
