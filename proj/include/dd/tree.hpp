#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "dd/core.hpp"

namespace dd {

enum class TreeMode {
  delimiters,     // nest by balanced ()/{}/[], top level split at newlines
  external_json,  // caller-provided parse tree
  flat_line,      // one leaf per line
  flat_token,     // one leaf per whitespace token
};

struct TreeNode {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::string kind;
  std::string text;  // payload, meaningful iff is_leaf
  std::string lead;  // original bytes preceding the payload (source modes)
  std::vector<std::size_t> kids;
  std::size_t parent = npos;
  std::size_t own_tokens = 0;  // leaf token contribution
  bool is_leaf = false;
  bool alive = true;
};

// Reduction-oriented parse tree. Deletion marks whole subtrees dead; node
// ids stay stable so level views can be rebuilt cheaply between passes.
class TreeDoc {
 public:
  // delimiters, flat_line or flat_token; external_json is rejected here.
  static TreeDoc from_source(std::string_view source, TreeMode mode);

  // One root object; every node carries "kind" plus exactly one of "text"
  // (leaf) or "children". Violations raise std::runtime_error naming the
  // offending node's path.
  static TreeDoc from_json(std::string_view json_text);

  std::size_t root() const { return root_; }
  const TreeNode& node(std::size_t id) const { return nodes_[id]; }
  std::size_t live_nodes() const;
  bool pristine() const { return pristine_; }
  TreeMode mode() const { return mode_; }

  // Depth of the deepest live node; root is 0.
  std::size_t height() const;

  // Token count of the live subtree rooted at `id`.
  std::size_t subtree_tokens(std::size_t id) const;
  std::size_t token_count() const { return subtree_tokens(root_); }

  void delete_subtree(std::size_t id);

  // Live nodes at exactly `depth`, document order. Element ids are ordinals
  // within the view, payloads are node ids, weights are subtree token
  // counts. Depths beyond the height yield an empty view.
  WeightedList level_elements(std::size_t depth) const;

  // Full document text. A tree that never lost a node reproduces the
  // original source bytes exactly; after any deletion the text is the
  // normalized join of surviving leaves.
  std::string render() const;

  // Candidate text with only `keep` retained among the live nodes at
  // `depth`. Always the normalized join so candidate content is a pure
  // function of the surviving leaves.
  std::string render_candidate(std::size_t depth,
                               const std::vector<std::size_t>& keep_node_ids) const;

 private:
  TreeDoc() = default;

  std::size_t add_node(TreeNode n);
  std::size_t depth_of(std::size_t id) const;
  void render_leaves(std::size_t id, std::vector<std::size_t>& out) const;

  std::vector<TreeNode> nodes_;
  std::size_t root_ = 0;
  std::string tail_;      // bytes after the last lexeme (source modes)
  std::string sep_ = " ";  // normalized join separator
  bool pristine_ = true;
  bool exact_capable_ = false;  // lead/tail captured from a source
  TreeMode mode_ = TreeMode::flat_token;
};

}  // namespace dd
