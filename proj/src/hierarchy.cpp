#include "aoi/hierarchy.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "aoi/error.hpp"
#include "aoi/relation.hpp"

namespace aoi {

namespace {

std::string at_line(std::size_t line) {
  return line ? "line " + std::to_string(line) + ": " : std::string();
}

[[noreturn]] void fail(const std::string& attribute, std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Parse, at_line(line) + "tree " + attribute + ": " + msg);
}

}  // namespace

ConceptTree::ConceptTree(std::string attribute, TreeKind kind, std::vector<HierarchyEntry> edges,
                         std::vector<NumericRange> ranges, std::vector<std::string> level_names,
                         std::map<std::string, std::string> aliases, bool explicit_any)
    : attribute_(std::move(attribute)),
      kind_(kind),
      level_names_(std::move(level_names)),
      ranges_(std::move(ranges)),
      aliases_(std::move(aliases)),
      explicit_any_(explicit_any) {
  build(std::move(edges));
}

void ConceptTree::build(std::vector<HierarchyEntry> edges) {
  if (kind_ == TreeKind::Categorical && !ranges_.empty())
    fail(attribute_, 0, "numeric ranges in a categorical tree");
  if (edges.empty() && ranges_.empty()) fail(attribute_, 0, "declares no concepts");

  // Node inventory in first-mention order.
  std::vector<std::string> mention_order;
  std::set<std::string> known;
  std::set<std::string> parents;
  auto mention = [&](const std::string& label) {
    if (known.insert(label).second) mention_order.push_back(label);
  };

  for (const auto& r : ranges_) {
    if (r.fin < r.start) fail(attribute_, 0, "range '" + r.label + "' has start > fin");
    if (known.count(r.label)) fail(attribute_, 0, "duplicate range label '" + r.label + "'");
    mention(r.label);
  }

  std::map<std::string, std::size_t> edge_line;
  for (const auto& e : edges) {
    if (e.child == kAnyLabel) fail(attribute_, e.line, "ANY may only appear as a parent");
    if (e.child == e.parent) fail(attribute_, e.line, "cycle at '" + e.child + "'");
    auto it = parent_.find(e.child);
    if (it != parent_.end()) {
      if (it->second == e.parent)
        fail(attribute_, e.line, "duplicate concept '" + e.child + "' under '" + e.parent + "'");
      fail(attribute_, e.line,
           "'" + e.child + "' has two parents: '" + it->second + "' and '" + e.parent + "'");
    }
    parent_[e.child] = e.parent;
    edge_line[e.child] = e.line;
    parents.insert(e.parent);
    mention(e.parent);
    mention(e.child);
  }

  for (const auto& r : ranges_) {
    if (parents.count(r.label)) fail(attribute_, 0, "range label '" + r.label + "' has children");
  }

  // Distance from each node to its root; detects cycles.
  auto distance_to_root = [&](const std::string& start) {
    std::size_t steps = 0;
    std::string cur = start;
    for (auto it = parent_.find(cur); it != parent_.end(); it = parent_.find(cur)) {
      cur = it->second;
      if (++steps > known.size()) fail(attribute_, edge_line[start], "cycle through '" + start + "'");
    }
    return steps;
  };

  // The bottom labeled level: categorical leaves or numeric range labels.
  std::vector<std::string> bottom;
  if (kind_ == TreeKind::Numeric) {
    std::vector<NumericRange> sorted = ranges_;
    std::sort(sorted.begin(), sorted.end(),
              [](const NumericRange& a, const NumericRange& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (!(sorted[i - 1].fin < sorted[i].start))
        fail(attribute_, 0,
             "ranges '" + sorted[i - 1].label + "' and '" + sorted[i].label + "' overlap");
    }
    ranges_ = std::move(sorted);
    if (ranges_.empty()) fail(attribute_, 0, "numeric tree declares no ranges");
    for (const auto& label : mention_order) {
      if (!parents.count(label) &&
          std::none_of(ranges_.begin(), ranges_.end(), [&](const auto& r) { return r.label == label; }))
        fail(attribute_, edge_line[label], "'" + label + "' in a numeric tree has no range");
    }
    for (const auto& r : ranges_) bottom.push_back(r.label);
  } else {
    for (const auto& label : mention_order) {
      if (!parents.count(label)) bottom.push_back(label);
    }
  }

  for (const auto& label : mention_order) distance_to_root(label);
  if (bottom.empty()) fail(attribute_, 0, "no leaf concepts (cycle)");
  std::size_t path = distance_to_root(bottom.front());
  for (const auto& label : bottom) {
    std::size_t d = distance_to_root(label);
    if (d != path)
      fail(attribute_, edge_line[label],
           "unbalanced tree: '" + bottom.front() + "' is " + std::to_string(path) + " levels below the top, '" +
               label + "' is " + std::to_string(d));
  }
  std::size_t depth = path + 1 + (kind_ == TreeKind::Numeric ? 1 : 0);
  levels_.assign(depth, {});
  std::size_t first_labeled = kind_ == TreeKind::Numeric ? 1 : 0;
  levels_[first_labeled] = bottom;
  for (std::size_t level = first_labeled; level + 1 < depth; ++level) {
    std::set<std::string> seen;
    for (const auto& c : levels_[level]) {
      const std::string& p = parent_.at(c);
      if (seen.insert(p).second) levels_[level + 1].push_back(p);
    }
  }
  level_.clear();
  for (std::size_t level = 0; level < depth; ++level) {
    for (const auto& c : levels_[level]) level_[c] = level;
  }

  if (level_names_.empty()) {
    level_names_.push_back(attribute_);
    for (std::size_t k = 1; k < depth; ++k) level_names_.push_back(attribute_ + "_L" + std::to_string(k));
  } else if (level_names_.size() != depth) {
    fail(attribute_, 0,
         std::to_string(level_names_.size()) + " level names for a tree of depth " + std::to_string(depth));
  }

  for (const auto& [raw, leaf] : aliases_) {
    if (kind_ == TreeKind::Numeric) fail(attribute_, 0, "aliases are not allowed in numeric trees");
    auto lv = level_of(leaf);
    if (!lv || *lv != 0) fail(attribute_, 0, "alias target '" + leaf + "' is not a leaf");
  }
}

std::size_t ConceptTree::leaf_count() const {
  return kind_ == TreeKind::Numeric ? ranges_.size() : levels_.front().size();
}

std::optional<std::size_t> ConceptTree::level_of(std::string_view concept_label) const {
  auto it = level_.find(std::string(concept_label));
  if (it == level_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> ConceptTree::parent_of(std::string_view concept_label) const {
  auto it = parent_.find(std::string(concept_label));
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> ConceptTree::resolve_leaf(std::string_view raw) const {
  if (kind_ == TreeKind::Numeric) return std::nullopt;
  std::string label(raw);
  if (auto a = aliases_.find(label); a != aliases_.end()) label = a->second;
  auto lv = level_of(label);
  if (lv && *lv == 0) return label;
  if (unknown_parent_) return std::string(kUnknownLeaf);
  return std::nullopt;
}

std::optional<std::string> ConceptTree::find_range(const Decimal& x) const {
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), x,
                             [](const Decimal& v, const NumericRange& r) { return v < r.start; });
  if (it == ranges_.begin()) return std::nullopt;
  --it;
  if (x <= it->fin) return it->label;
  return std::nullopt;
}

ConceptTree ConceptTree::with_unknown_leaf(const std::string& parent) const {
  if (kind_ == TreeKind::Numeric) fail(attribute_, 0, "UNKNOWN leaves apply to categorical trees only");
  if (depth() < 2) fail(attribute_, 0, "UNKNOWN leaf needs a tree of depth 2 or more");
  auto lv = level_of(parent);
  if (!lv || *lv != 1) fail(attribute_, 0, "UNKNOWN parent '" + parent + "' is not a level-1 concept");
  auto edges = entries();
  std::erase_if(edges, [](const HierarchyEntry& e) { return e.parent == kAnyLabel; });
  if (!level_of(kUnknownLeaf)) edges.insert(edges.begin() + static_cast<std::ptrdiff_t>(leaves().size()),
                                            HierarchyEntry{std::string(kUnknownLeaf), parent, 0});
  ConceptTree out(attribute_, kind_, std::move(edges), {}, level_names_, aliases_, explicit_any_);
  out.unknown_parent_ = parent;
  return out;
}

std::vector<HierarchyEntry> ConceptTree::entries() const {
  std::vector<HierarchyEntry> out;
  for (std::size_t level = 0; level < depth(); ++level) {
    for (const auto& c : levels_[level]) {
      auto p = parent_of(c);
      out.push_back({c, p ? *p : std::string(kAnyLabel), 0});
    }
  }
  return out;
}

const ConceptTree* find_tree(const std::vector<ConceptTree>& trees, std::string_view attribute) {
  for (const auto& t : trees) {
    if (iequals(t.attribute(), attribute)) return &t;
  }
  return nullptr;
}

std::string classify_numeric(const Decimal& x, const ConceptTree& tree) {
  if (!tree.is_numeric())
    throw Error(ErrorKind::Schema, "tree " + tree.attribute() + " is not numeric");
  auto label = tree.find_range(x);
  if (!label)
    throw Error(ErrorKind::Unmappable,
                "value " + x.str() + " of " + tree.attribute() + " is outside all ranges");
  return *label;
}

Value ascend(const Value& v, const ConceptTree& tree, std::size_t from_level) {
  if (v.is_any() || from_level > tree.top_level())
    throw Error(ErrorKind::State, tree.attribute() + " is already fully generalized");
  if (tree.is_numeric() && from_level == 0) {
    if (!v.is_number())
      throw Error(ErrorKind::Unmappable, "'" + v.str() + "' is not a number for " + tree.attribute());
    if (tree.top_level() == 0) return Any{};
    return Value(classify_numeric(v.number(), tree));
  }
  if (!v.is_text())
    throw Error(ErrorKind::Unmappable,
                "'" + v.str() + "' is not a concept of " + tree.attribute());
  std::optional<std::string> label =
      from_level == 0 ? tree.resolve_leaf(v.text()) : std::optional<std::string>(v.text());
  auto lv = label ? tree.level_of(*label) : std::nullopt;
  if (!lv || *lv != from_level)
    throw Error(ErrorKind::Unmappable, "'" + v.text() + "' is not a concept at level " +
                                           std::to_string(from_level) + " of " + tree.attribute());
  if (from_level == tree.top_level()) return Any{};
  return Value(*tree.parent_of(*label));
}

bool generalizes_to(const Value& v, std::string_view target, const ConceptTree& tree) {
  if (!tree.level_of(target))
    throw Error(ErrorKind::Schema, "'" + std::string(target) + "' is not a concept of " + tree.attribute());
  std::optional<std::string> label;
  if (v.is_number()) {
    if (tree.is_numeric()) label = tree.find_range(v.number());
  } else if (v.is_text()) {
    if (tree.level_of(v.text()))
      label = v.text();
    else
      label = tree.resolve_leaf(v.text());
  }
  while (label) {
    if (*label == target) return true;
    label = tree.parent_of(*label);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Hierarchy DSL

namespace {

enum class Tok { Word, Quoted, Colon, Comma, Equals, Range };

struct Token {
  Tok kind;
  std::string text;
};

bool is_word_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != ':' && c != ',' && c != '"' && c != '=' &&
         c != '#';
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":"});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ","});
      ++i;
    } else if (c == '=') {
      out.push_back({Tok::Equals, "="});
      ++i;
    } else if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            text += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        text += line[i++];
      }
      if (!closed) throw Error(ErrorKind::Parse, at_line(line_no) + "unterminated quoted label");
      out.push_back({Tok::Quoted, std::move(text)});
    } else if (line.substr(i, 2) == "..") {
      out.push_back({Tok::Range, ".."});
      i += 2;
    } else {
      std::string text;
      while (i < line.size() && is_word_char(line[i]) && line.substr(i, 2) != "..") text += line[i++];
      out.push_back({Tok::Word, std::move(text)});
    }
  }
  return out;
}

bool is_label(const Token& t) { return t.kind == Tok::Word || t.kind == Tok::Quoted; }

// Comma-separated labels starting at tokens[pos].
std::vector<std::string> label_list(const std::vector<Token>& tokens, std::size_t pos, std::size_t line_no) {
  std::vector<std::string> out;
  bool expect_label = true;
  for (; pos < tokens.size(); ++pos) {
    if (expect_label) {
      if (!is_label(tokens[pos]))
        throw Error(ErrorKind::Parse, at_line(line_no) + "expected a label, found '" + tokens[pos].text + "'");
      if (tokens[pos].text.empty()) throw Error(ErrorKind::Parse, at_line(line_no) + "empty label");
      out.push_back(tokens[pos].text);
    } else if (tokens[pos].kind != Tok::Comma) {
      throw Error(ErrorKind::Parse, at_line(line_no) + "expected ',' before '" + tokens[pos].text + "'");
    }
    expect_label = !expect_label;
  }
  if (out.empty() || expect_label)
    throw Error(ErrorKind::Parse, at_line(line_no) + "expected a label list");
  return out;
}

Decimal parse_bound(const Token& t, std::size_t line_no) {
  auto d = t.kind == Tok::Word ? Decimal::parse(t.text) : std::nullopt;
  if (!d) throw Error(ErrorKind::Parse, at_line(line_no) + "'" + t.text + "' is not a number");
  return *d;
}

struct Block {
  std::string attribute;
  TreeKind kind = TreeKind::Categorical;
  std::size_t line = 0;
  std::vector<HierarchyEntry> edges;
  std::vector<NumericRange> ranges;
  std::vector<std::string> level_names;
  std::map<std::string, std::string> aliases;
  bool explicit_any = false;
  std::optional<std::string> unknown_parent;
};

ConceptTree finish(Block& b) {
  try {
    ConceptTree tree(b.attribute, b.kind, std::move(b.edges), std::move(b.ranges), std::move(b.level_names),
                     std::move(b.aliases), b.explicit_any);
    if (b.unknown_parent) tree = tree.with_unknown_leaf(*b.unknown_parent);
    return tree;
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.rfind("line ", 0) == 0) throw;
    throw Error(e.kind(), at_line(b.line) + msg);
  }
}

bool keyword(const std::vector<Token>& tokens, std::string_view word) {
  return tokens[0].kind == Tok::Word && tokens[0].text == word &&
         (tokens.size() < 2 || tokens[1].kind != Tok::Colon);
}

}  // namespace

std::vector<ConceptTree> parse_hierarchy(std::string_view source) {
  std::vector<ConceptTree> trees;
  std::optional<Block> block;
  std::size_t line_no = 0;

  auto close = [&] {
    if (!block) return;
    for (const auto& t : trees) {
      if (iequals(t.attribute(), block->attribute))
        throw Error(ErrorKind::Parse, at_line(block->line) + "duplicate tree for " + block->attribute);
    }
    trees.push_back(finish(*block));
    block.reset();
  };

  while (!source.empty()) {
    auto nl = source.find('\n');
    std::string_view line = source.substr(0, nl);
    source = nl == std::string_view::npos ? std::string_view() : source.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;

    if (keyword(tokens, "tree")) {
      close();
      if (tokens.size() < 2 || !is_label(tokens[1]) || tokens.size() > 3)
        throw Error(ErrorKind::Parse, at_line(line_no) + "expected 'tree <attribute> [numeric]'");
      block.emplace();
      block->attribute = tokens[1].text;
      block->line = line_no;
      if (tokens.size() == 3) {
        if (tokens[2].kind != Tok::Word || tokens[2].text != "numeric")
          throw Error(ErrorKind::Parse, at_line(line_no) + "unknown tree option '" + tokens[2].text + "'");
        block->kind = TreeKind::Numeric;
      }
      continue;
    }
    if (!block) throw Error(ErrorKind::Parse, at_line(line_no) + "statement outside a tree block");

    if (keyword(tokens, "levels")) {
      block->level_names = label_list(tokens, 1, line_no);
    } else if (keyword(tokens, "alias")) {
      if (tokens.size() != 4 || !is_label(tokens[1]) || tokens[2].kind != Tok::Equals || !is_label(tokens[3]))
        throw Error(ErrorKind::Parse, at_line(line_no) + "expected 'alias \"<raw>\" = \"<leaf>\"'");
      if (!block->aliases.emplace(tokens[1].text, tokens[3].text).second)
        throw Error(ErrorKind::Parse, at_line(line_no) + "duplicate alias '" + tokens[1].text + "'");
    } else if (keyword(tokens, "unknown")) {
      if (tokens.size() != 2 || !is_label(tokens[1]))
        throw Error(ErrorKind::Parse, at_line(line_no) + "expected 'unknown <parent>'");
      block->unknown_parent = tokens[1].text;
    } else if (tokens.size() >= 2 && is_label(tokens[0]) && tokens[1].kind == Tok::Colon) {
      const std::string& head = tokens[0].text;
      bool is_range = std::any_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == Tok::Range; });
      if (is_range) {
        if (block->kind != TreeKind::Numeric)
          throw Error(ErrorKind::Parse, at_line(line_no) + "range in non-numeric tree " + block->attribute);
        if (tokens.size() != 5 || tokens[3].kind != Tok::Range)
          throw Error(ErrorKind::Parse, at_line(line_no) + "expected '<label>: <start> .. <fin>'");
        Decimal start = parse_bound(tokens[2], line_no);
        Decimal fin = parse_bound(tokens[4], line_no);
        if (fin < start)
          throw Error(ErrorKind::Parse, at_line(line_no) + "range '" + head + "' has start > fin");
        for (const auto& r : block->ranges) {
          if (r.label == head) throw Error(ErrorKind::Parse, at_line(line_no) + "duplicate range '" + head + "'");
          if (!(fin < r.start || r.fin < start))
            throw Error(ErrorKind::Parse, at_line(line_no) + "range '" + head + "' overlaps '" + r.label + "'");
        }
        block->ranges.push_back({start, fin, head});
      } else {
        auto children = label_list(tokens, 2, line_no);
        if (head == kAnyLabel) {
          block->explicit_any = true;
          continue;
        }
        for (auto& child : children) block->edges.push_back({std::move(child), head, line_no});
      }
    } else {
      throw Error(ErrorKind::Parse, at_line(line_no) + "unrecognized statement '" + tokens[0].text + "'");
    }
  }
  close();
  return trees;
}

namespace {

std::string dsl_label(const std::string& label) {
  static const std::set<std::string> reserved = {"tree", "levels", "alias", "unknown", "numeric"};
  bool plain = !label.empty() && !reserved.count(label) && label.find("..") == std::string::npos &&
               std::all_of(label.begin(), label.end(), is_word_char);
  if (plain) return label;
  std::string out = "\"";
  for (char c : label) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += dsl_label(labels[i]);
  }
  return out;
}

}  // namespace

std::string serialize_tree(const ConceptTree& tree) {
  std::string out = "tree " + dsl_label(tree.attribute()) + (tree.is_numeric() ? " numeric" : "") + "\n";
  out += "levels " + join_labels(tree.level_names()) + "\n";
  for (const auto& r : tree.ranges()) {
    out += dsl_label(r.label) + ": " + r.start.str() + " .. " + r.fin.str() + "\n";
  }
  // Consecutive runs of siblings keep the declaration order of each level.
  std::size_t first = tree.is_numeric() ? 1 : 0;
  for (std::size_t level = first; level < tree.top_level(); ++level) {
    const auto& concepts = tree.concepts_at(level);
    std::size_t i = 0;
    while (i < concepts.size()) {
      if (concepts[i] == ConceptTree::kUnknownLeaf && tree.unknown_parent()) {
        ++i;
        continue;
      }
      std::string parent = *tree.parent_of(concepts[i]);
      std::vector<std::string> run;
      while (i < concepts.size() && *tree.parent_of(concepts[i]) == parent &&
             !(concepts[i] == ConceptTree::kUnknownLeaf && tree.unknown_parent())) {
        run.push_back(concepts[i++]);
      }
      out += dsl_label(parent) + ": " + join_labels(run) + "\n";
    }
  }
  for (const auto& [raw, leaf] : tree.aliases()) {
    out += "alias " + dsl_label(raw) + " = " + dsl_label(leaf) + "\n";
  }
  if (tree.unknown_parent()) out += "unknown " + dsl_label(*tree.unknown_parent()) + "\n";
  if (tree.explicit_any()) out += std::string(kAnyLabel) + ": " + join_labels(tree.concepts_at(tree.top_level())) + "\n";
  return out;
}

}  // namespace aoi
