#include "dd/tree.hpp"

#include <json.hpp>

#include <stdexcept>
#include <utility>

#include "dd/tokenize.hpp"

namespace dd {

namespace {

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

char open_of(char c) {
  switch (c) {
    case ')': return '(';
    case ']': return '[';
    case '}': return '{';
    default: return 0;
  }
}

bool is_open(char c) { return c == '(' || c == '[' || c == '{'; }
bool is_close(char c) { return c == ')' || c == ']' || c == '}'; }

struct Lexeme {
  std::string lead;  // whitespace since the previous lexeme
  std::string text;  // token run or a single delimiter char
  bool delim = false;
};

std::vector<Lexeme> lex_delimiters(std::string_view source) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < source.size()) {
    std::size_t ws_start = i;
    while (i < source.size() && is_ws(source[i])) ++i;
    if (i >= source.size()) break;
    Lexeme lx;
    lx.lead = std::string(source.substr(ws_start, i - ws_start));
    char c = source[i];
    if (is_open(c) || is_close(c)) {
      lx.text = std::string(1, c);
      lx.delim = true;
      ++i;
    } else {
      std::size_t start = i;
      while (i < source.size() && !is_ws(source[i]) && !is_open(source[i]) &&
             !is_close(source[i]))
        ++i;
      lx.text = std::string(source.substr(start, i - start));
    }
    out.push_back(std::move(lx));
  }
  return out;
}

}  // namespace

std::size_t TreeDoc::add_node(TreeNode n) {
  nodes_.push_back(std::move(n));
  return nodes_.size() - 1;
}

TreeDoc TreeDoc::from_source(std::string_view source, TreeMode mode) {
  if (mode == TreeMode::external_json)
    throw std::invalid_argument("from_source: use from_json for external trees");

  TreeDoc doc;
  doc.mode_ = mode;
  doc.exact_capable_ = true;
  doc.sep_ = mode == TreeMode::flat_line ? "\n" : " ";

  TreeNode root;
  root.kind = "root";
  doc.root_ = doc.add_node(std::move(root));

  auto add_leaf = [&doc](std::size_t parent, std::string kind, std::string text,
                         std::string lead, std::size_t own) {
    TreeNode n;
    n.kind = std::move(kind);
    n.text = std::move(text);
    n.lead = std::move(lead);
    n.parent = parent;
    n.own_tokens = own;
    n.is_leaf = true;
    std::size_t id = doc.add_node(std::move(n));
    doc.nodes_[parent].kids.push_back(id);
    return id;
  };

  if (mode == TreeMode::flat_token || mode == TreeMode::flat_line) {
    TokenMode tm = mode == TreeMode::flat_token ? TokenMode::whitespace
                                                : TokenMode::line;
    auto spans = tokenize(source, tm);
    std::size_t prev_end = 0;
    for (const TokenSpan& s : spans) {
      std::string text(source.substr(s.begin, s.end - s.begin));
      std::size_t own = mode == TreeMode::flat_token ? 1 : count_tokens(text);
      add_leaf(doc.root_, mode == TreeMode::flat_token ? "token" : "line",
               std::move(text),
               std::string(source.substr(prev_end, s.begin - prev_end)), own);
      prev_end = s.end;
    }
    doc.tail_ = std::string(source.substr(prev_end));
    return doc;
  }

  // delimiters: lex once, then nest. Any imbalance throws the structure away
  // and degrades to the flat one-level token tree.
  auto lexemes = lex_delimiters(source);
  bool balanced = true;
  {
    std::vector<char> stack;
    for (const Lexeme& lx : lexemes) {
      if (!lx.delim) continue;
      char c = lx.text[0];
      if (is_open(c)) {
        stack.push_back(c);
      } else if (stack.empty() || stack.back() != open_of(c)) {
        balanced = false;
        break;
      } else {
        stack.pop_back();
      }
    }
    if (!stack.empty()) balanced = false;
  }

  if (!balanced) {
    auto spans = tokenize(source, TokenMode::whitespace);
    std::size_t prev_end = 0;
    for (const TokenSpan& s : spans) {
      add_leaf(doc.root_, "token",
               std::string(source.substr(s.begin, s.end - s.begin)),
               std::string(source.substr(prev_end, s.begin - prev_end)), 1);
      prev_end = s.end;
    }
    doc.tail_ = std::string(source.substr(prev_end));
    return doc;
  }

  auto add_group = [&doc](std::size_t parent, std::string kind) {
    TreeNode n;
    n.kind = std::move(kind);
    n.parent = parent;
    std::size_t id = doc.add_node(std::move(n));
    doc.nodes_[parent].kids.push_back(id);
    return id;
  };

  std::vector<std::size_t> stack;  // open delimiter groups
  std::size_t line = TreeNode::npos;
  std::size_t consumed = 0;
  for (const Lexeme& lx : lexemes) {
    // A newline outside every group closes the current line.
    if (stack.empty() &&
        (line == TreeNode::npos || lx.lead.find('\n') != std::string::npos))
      line = add_group(doc.root_, "line");
    std::size_t parent = stack.empty() ? line : stack.back();
    if (lx.delim && is_open(lx.text[0])) {
      std::size_t g = add_group(parent, "group");
      add_leaf(g, "delim", lx.text, lx.lead, 1);
      stack.push_back(g);
    } else if (lx.delim) {
      add_leaf(stack.back(), "delim", lx.text, lx.lead, 1);
      stack.pop_back();
    } else {
      add_leaf(parent, "token", lx.text, lx.lead, 1);
    }
    consumed += lx.lead.size() + lx.text.size();
  }
  doc.tail_ = std::string(source.substr(consumed));
  return doc;
}

TreeDoc TreeDoc::from_json(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("tree-json parse error: ") + e.what());
  }

  TreeDoc doc;
  doc.mode_ = TreeMode::external_json;
  doc.exact_capable_ = false;
  doc.sep_ = " ";

  // Recursive lambda over the json shape; paths like $.children[2] name the
  // offending node in diagnostics.
  auto build = [&doc](auto&& self, const json& node,
                      const std::string& path) -> std::size_t {
    if (!node.is_object())
      throw std::runtime_error(path + ": expected an object");
    if (!node.contains("kind") || !node["kind"].is_string())
      throw std::runtime_error(path + ": missing string \"kind\"");
    bool has_text = node.contains("text");
    bool has_children = node.contains("children");
    if (has_text && has_children)
      throw std::runtime_error(path +
                               ": node has both \"text\" and \"children\"");
    if (!has_text && !has_children)
      throw std::runtime_error(path +
                               ": node needs \"text\" or \"children\"");

    TreeNode n;
    n.kind = node["kind"].get<std::string>();
    if (has_text) {
      if (!node["text"].is_string())
        throw std::runtime_error(path + ": \"text\" must be a string");
      n.text = node["text"].get<std::string>();
      n.own_tokens = count_tokens(n.text);
      n.is_leaf = true;
      return doc.add_node(std::move(n));
    }
    if (!node["children"].is_array())
      throw std::runtime_error(path + ": \"children\" must be an array");
    std::size_t id = doc.add_node(std::move(n));
    for (std::size_t i = 0; i < node["children"].size(); ++i) {
      std::size_t kid =
          self(self, node["children"][i],
               path + ".children[" + std::to_string(i) + "]");
      doc.nodes_[id].kids.push_back(kid);
      doc.nodes_[kid].parent = id;
    }
    return id;
  };

  doc.root_ = build(build, j, "$");
  return doc;
}

std::size_t TreeDoc::live_nodes() const {
  std::size_t n = 0;
  for (const TreeNode& node : nodes_)
    if (node.alive) ++n;
  return n;
}

std::size_t TreeDoc::depth_of(std::size_t id) const {
  std::size_t d = 0;
  while (nodes_[id].parent != TreeNode::npos) {
    id = nodes_[id].parent;
    ++d;
  }
  return d;
}

std::size_t TreeDoc::height() const {
  // Depth-first over live nodes only; dead subtrees do not count.
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    if (!nodes_[id].alive) continue;
    best = std::max(best, d);
    for (std::size_t kid : nodes_[id].kids) stack.push_back({kid, d + 1});
  }
  return best;
}

std::size_t TreeDoc::subtree_tokens(std::size_t id) const {
  if (!nodes_[id].alive) return 0;
  std::size_t sum = nodes_[id].own_tokens;
  for (std::size_t kid : nodes_[id].kids)
    if (nodes_[kid].alive) sum += subtree_tokens(kid);
  return sum;
}

void TreeDoc::delete_subtree(std::size_t id) {
  if (id == root_)
    throw std::invalid_argument("delete_subtree: the root is not deletable");
  pristine_ = false;
  std::vector<std::size_t> stack{id};
  while (!stack.empty()) {
    std::size_t cur = stack.back();
    stack.pop_back();
    nodes_[cur].alive = false;
    for (std::size_t kid : nodes_[cur].kids) stack.push_back(kid);
  }
}

WeightedList TreeDoc::level_elements(std::size_t depth) const {
  WeightedList out;
  // Pre-order walk keeps document order.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
  std::vector<std::size_t> found;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    if (!nodes_[id].alive) continue;
    if (d == depth) {
      found.push_back(id);
      continue;  // children are below the level of interest
    }
    const auto& kids = nodes_[id].kids;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      stack.push_back({*it, d + 1});
  }
  out.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i)
    out.push_back({i, subtree_tokens(found[i]), found[i]});
  return out;
}

void TreeDoc::render_leaves(std::size_t id, std::vector<std::size_t>& out) const {
  if (!nodes_[id].alive) return;
  if (nodes_[id].is_leaf) {
    out.push_back(id);
    return;
  }
  for (std::size_t kid : nodes_[id].kids) render_leaves(kid, out);
}

std::string TreeDoc::render() const {
  std::vector<std::size_t> leaves;
  render_leaves(root_, leaves);
  if (pristine_ && exact_capable_) {
    std::string out;
    for (std::size_t id : leaves) {
      out += nodes_[id].lead;
      out += nodes_[id].text;
    }
    out += tail_;
    return out;
  }
  std::string out;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (i) out += sep_;
    out += nodes_[leaves[i]].text;
  }
  return out;
}

std::string TreeDoc::render_candidate(
    std::size_t depth, const std::vector<std::size_t>& keep_node_ids) const {
  std::vector<char> keep_mask(nodes_.size(), 0);
  for (std::size_t id : keep_node_ids) keep_mask[id] = 1;

  std::string out;
  bool first = true;
  // Iterative pre-order with the candidate's level nodes masked in or out.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    if (!nodes_[id].alive) continue;
    if (d == depth && !keep_mask[id]) continue;
    if (nodes_[id].is_leaf) {
      if (!first) out += sep_;
      out += nodes_[id].text;
      first = false;
      continue;
    }
    const auto& kids = nodes_[id].kids;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      stack.push_back({*it, d + 1});
  }
  return out;
}

}  // namespace dd
