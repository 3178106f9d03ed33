#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace anyonqi {

/// Full binary coupling tree over N ordered leaves.
///
/// Nodes are stored in preorder (parent, left subtree, right subtree), so the
/// root is node 0. Internal nodes are additionally numbered 0..N-2 in the same
/// preorder; that numbering fixes the meaning of FusionTree::internal.
///
/// Canonical text form: nested parentheses over leaf positions, e.g.
/// `((0 1)((2 3)(4 5)))`, and `0` for a single leaf.
class TreeShape {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    int leaf = -1;      // leaf position, -1 for internal nodes
    int internal = -1;  // preorder rank among internal nodes, -1 for leaves
    bool is_leaf() const { return leaf >= 0; }
    friend bool operator==(const Node& a, const Node& b) {
      return a.left == b.left && a.right == b.right && a.leaf == b.leaf;
    }
  };

  static TreeShape single();
  static TreeShape left_comb(int n);
  static TreeShape right_comb(int n);
  // Root joining `left` and `right`; leaves of `right` are shifted past those of `left`.
  static TreeShape join(const TreeShape& left, const TreeShape& right);
  // join(left_comb(n_left), left_comb(n_right)).
  static TreeShape grouped(int n_left, int n_right);
  // Throws ShapeError on malformed input or leaves out of order.
  static TreeShape parse(std::string_view text);
  // Every distinct shape on n leaves (Catalan many).
  static std::vector<TreeShape> all_shapes(int n);

  // Builds the preorder form of an arbitrary linked tree. `links[i]` holds
  // {left, right, leaf} for node i; `root` indexes into it. `order`, when
  // given, receives for every linked node its position in the result.
  struct Link {
    int left = -1;
    int right = -1;
    int leaf = -1;
  };
  static TreeShape from_links(std::span<const Link> links, int root, std::vector<int>* order = nullptr);
  std::vector<Link> links() const;

  int num_leaves() const { return num_leaves_; }
  int num_internal() const { return num_leaves_ - 1; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  std::span<const Node> nodes() const { return nodes_; }
  int leaf_node(int leaf) const { return leaf_nodes_.at(static_cast<std::size_t>(leaf)); }
  int internal_node(int internal) const { return internal_nodes_.at(static_cast<std::size_t>(internal)); }

  // Number of leaves below node i (1 for a leaf).
  int leaf_count(int i) const;
  // Shape rooted at node i with leaves renumbered from 0.
  TreeShape subtree(int i) const;
  bool is_left_comb() const;

  std::string to_string() const;

  friend bool operator==(const TreeShape& a, const TreeShape& b) { return a.nodes_ == b.nodes_; }

 private:
  void index();

  std::vector<Node> nodes_;
  std::vector<int> leaf_nodes_;
  std::vector<int> internal_nodes_;
  int num_leaves_ = 0;
};

}  // namespace anyonqi
