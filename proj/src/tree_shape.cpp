#include "anyonqi/tree_shape.hpp"

#include "anyonqi/errors.hpp"

#include <cctype>
#include <functional>

namespace anyonqi {

namespace {

// Recursive-descent parser for `(x y)` / leaf-number syntax.
class ShapeParser {
 public:
  explicit ShapeParser(std::string_view text) : text_(text) {}

  TreeShape parse() {
    std::vector<TreeShape::Link> links;
    const int root = node(links);
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
    int expected = 0;
    // Leaves must appear in physical order 0..N-1.
    std::function<void(int)> walk = [&](int i) {
      const auto& l = links[static_cast<std::size_t>(i)];
      if (l.leaf >= 0) {
        if (l.leaf != expected) fail("leaves must be numbered 0..N-1 left to right");
        ++expected;
        return;
      }
      walk(l.left);
      walk(l.right);
    };
    walk(root);
    return TreeShape::from_links(links, root);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ShapeError("bad tree shape '" + std::string(text_) + "': " + why);
  }

  void skip() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ',')) {
      ++pos_;
    }
  }

  int node(std::vector<TreeShape::Link>& links) {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '(') {
      ++pos_;
      const int l = node(links);
      const int r = node(links);
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      links.push_back({l, r, -1});
      return static_cast<int>(links.size()) - 1;
    }
    if (!std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected leaf number or '('");
    int value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    links.push_back({-1, -1, value});
    return static_cast<int>(links.size()) - 1;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TreeShape TreeShape::from_links(std::span<const Link> links, int root, std::vector<int>* order) {
  TreeShape shape;
  if (order) order->assign(links.size(), -1);
  std::function<int(int)> emit = [&](int i) -> int {
    const Link& l = links[static_cast<std::size_t>(i)];
    const int me = static_cast<int>(shape.nodes_.size());
    if (order) (*order)[static_cast<std::size_t>(i)] = me;
    shape.nodes_.push_back(Node{-1, -1, l.leaf, -1});
    if (l.leaf < 0) {
      const int left = emit(l.left);
      const int right = emit(l.right);
      shape.nodes_[static_cast<std::size_t>(me)].left = left;
      shape.nodes_[static_cast<std::size_t>(me)].right = right;
    }
    return me;
  };
  emit(root);
  shape.index();
  return shape;
}

std::vector<TreeShape::Link> TreeShape::links() const {
  std::vector<Link> out;
  out.reserve(nodes_.size());
  for (const Node& n : nodes_) out.push_back({n.left, n.right, n.leaf});
  return out;
}

void TreeShape::index() {
  leaf_nodes_.clear();
  internal_nodes_.clear();
  num_leaves_ = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) ++num_leaves_;
  }
  leaf_nodes_.assign(static_cast<std::size_t>(num_leaves_), -1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Node& n = nodes_[i];
    if (n.is_leaf()) {
      if (n.leaf >= num_leaves_ || leaf_nodes_[static_cast<std::size_t>(n.leaf)] != -1) {
        throw ShapeError("tree shape has duplicate or out-of-range leaf " + std::to_string(n.leaf));
      }
      leaf_nodes_[static_cast<std::size_t>(n.leaf)] = static_cast<int>(i);
    } else {
      n.internal = static_cast<int>(internal_nodes_.size());
      internal_nodes_.push_back(static_cast<int>(i));
    }
  }
}

TreeShape TreeShape::single() {
  const Link leaf{-1, -1, 0};
  return from_links(std::span<const Link>(&leaf, 1), 0);
}

TreeShape TreeShape::left_comb(int n) {
  if (n < 1) throw ShapeError("tree shape needs at least one leaf");
  std::vector<Link> links;
  links.push_back({-1, -1, 0});
  int top = 0;
  for (int leaf = 1; leaf < n; ++leaf) {
    links.push_back({-1, -1, leaf});
    links.push_back({top, static_cast<int>(links.size()) - 1, -1});
    top = static_cast<int>(links.size()) - 1;
  }
  return from_links(links, top);
}

TreeShape TreeShape::right_comb(int n) {
  if (n < 1) throw ShapeError("tree shape needs at least one leaf");
  std::vector<Link> links;
  links.push_back({-1, -1, n - 1});
  int top = 0;
  for (int leaf = n - 2; leaf >= 0; --leaf) {
    links.push_back({-1, -1, leaf});
    links.push_back({static_cast<int>(links.size()) - 1, top, -1});
    top = static_cast<int>(links.size()) - 1;
  }
  return from_links(links, top);
}

TreeShape TreeShape::join(const TreeShape& left, const TreeShape& right) {
  std::vector<Link> links = left.links();
  const int shift = static_cast<int>(links.size());
  for (Link l : right.links()) {
    if (l.leaf >= 0) {
      l.leaf += left.num_leaves();
    } else {
      l.left += shift;
      l.right += shift;
    }
    links.push_back(l);
  }
  links.push_back({0, shift, -1});
  return from_links(links, static_cast<int>(links.size()) - 1);
}

TreeShape TreeShape::grouped(int n_left, int n_right) {
  return join(left_comb(n_left), left_comb(n_right));
}

TreeShape TreeShape::parse(std::string_view text) { return ShapeParser(text).parse(); }

std::vector<TreeShape> TreeShape::all_shapes(int n) {
  if (n < 1) throw ShapeError("tree shape needs at least one leaf");
  if (n == 1) return {single()};
  std::vector<TreeShape> out;
  for (int k = 1; k < n; ++k) {
    for (const TreeShape& l : all_shapes(k)) {
      for (const TreeShape& r : all_shapes(n - k)) out.push_back(join(l, r));
    }
  }
  return out;
}

int TreeShape::leaf_count(int i) const {
  const Node& n = node(i);
  if (n.is_leaf()) return 1;
  return leaf_count(n.left) + leaf_count(n.right);
}

TreeShape TreeShape::subtree(int i) const {
  std::vector<Link> links = this->links();
  int first_leaf = -1;
  std::function<void(int)> first = [&](int k) {
    const Node& n = node(k);
    if (n.is_leaf()) {
      first_leaf = n.leaf;
      return;
    }
    first(n.left);
  };
  first(i);
  for (Link& l : links) {
    if (l.leaf >= 0) l.leaf -= first_leaf;
  }
  return from_links(links, i);
}

bool TreeShape::is_left_comb() const {
  for (const Node& n : nodes_) {
    if (!n.is_leaf() && !node(n.right).is_leaf()) return false;
  }
  return true;
}

std::string TreeShape::to_string() const {
  std::function<std::string(int)> render = [&](int i) -> std::string {
    const Node& n = node(i);
    if (n.is_leaf()) return std::to_string(n.leaf);
    const std::string l = render(n.left);
    const std::string r = render(n.right);
    const bool space = node(n.left).is_leaf() || node(n.right).is_leaf();
    return "(" + l + (space ? " " : "") + r + ")";
  };
  return render(0);
}

}  // namespace anyonqi
