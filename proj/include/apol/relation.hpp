#pragma once

#include <algorithm>
#include <bitset>
#include <cassert>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "apol/detail/bits.hpp"

namespace apol {

/*! \brief A finite relation over {0,1}: a set of m-bit tuples, 1 <= m <= 8.
 *
 * A tuple (a_1, ..., a_m) is encoded as the code sum a_i * 2^(i-1); in the
 * matrix notation used by parse_relation/format_relation, row 1 is the least
 * significant bit.  Tuples form a set: no duplicates, order-insensitive
 * equality.
 */
class relation {
public:
  static constexpr int max_arity = 8;

  explicit relation(int arity) : arity_(checked_arity(arity)) {}

  static relation from_tuples(int arity, std::initializer_list<uint16_t> tuples) {
    relation r(arity);
    for (uint16_t t : tuples) r.insert(t);
    return r;
  }

  //! Arity-4 fast path: one bit per tuple code 0..15.
  static relation from_mask4(uint16_t mask) {
    relation r(4);
    for (int t = 0; t < 16; ++t)
      if ((mask >> t) & 1) r.mask_.set(t);
    return r;
  }

  int arity() const { return arity_; }
  uint16_t tuple_limit() const { return static_cast<uint16_t>(1u << arity_); }
  size_t size() const { return mask_.count(); }
  bool empty() const { return mask_.none(); }

  bool contains(uint16_t tuple) const {
    return tuple < tuple_limit() && mask_.test(tuple);
  }

  void insert(uint16_t tuple) {
    if (tuple >= tuple_limit()) throw input_error("relation: tuple code out of range");
    mask_.set(tuple);
  }

  void erase(uint16_t tuple) {
    if (tuple < tuple_limit()) mask_.reset(tuple);
  }

  //! Tuple codes in ascending order.
  std::vector<uint16_t> tuples() const {
    std::vector<uint16_t> out;
    out.reserve(size());
    for (uint16_t t = 0; t < tuple_limit(); ++t)
      if (mask_.test(t)) out.push_back(t);
    return out;
  }

  uint16_t mask4() const {
    if (arity_ > 4) throw input_error("mask4: relation arity exceeds 4");
    uint16_t m = 0;
    for (uint16_t t = 0; t < tuple_limit(); ++t)
      if (mask_.test(t)) m |= static_cast<uint16_t>(1u << t);
    return m;
  }

  bool operator==(const relation&) const = default;

  bool subset_of(const relation& other) const {
    return arity_ == other.arity_ && (mask_ & ~other.mask_).none();
  }

private:
  static int checked_arity(int arity) {
    if (arity < 1 || arity > max_arity)
      throw input_error("relation arity must be within [1, 8]");
    return arity;
  }

  int arity_;
  std::bitset<(size_t{1} << max_arity)> mask_;
};

/*! \brief An antecedent/consequent pair of equal-arity relations. */
struct constraint {
  relation antecedent;
  relation consequent;

  constraint(relation r, relation s) : antecedent(std::move(r)), consequent(std::move(s)) {
    if (antecedent.arity() != consequent.arity())
      throw input_error("constraint: antecedent and consequent arities differ");
  }

  int arity() const { return antecedent.arity(); }
  bool operator==(const constraint&) const = default;
};

// -- matrix text form ----------------------------------------------------

/*! \brief Parses a whitespace-separated 0/1 matrix whose columns are the tuples.
 *
 * m rows make an m-ary relation; rows are newline-separated, entries are
 * separated by blanks.  Ragged rows and non-bit characters are rejected.
 */
inline relation parse_relation(std::string_view text) {
  std::vector<std::vector<uint8_t>> rows;
  std::istringstream lines{std::string(text)};
  std::string line;
  int row_number = 0;
  while (std::getline(lines, line)) {
    ++row_number;
    std::vector<uint8_t> row;
    int column = 0;
    std::istringstream cells(line);
    std::string cell;
    while (cells >> cell) {
      ++column;
      if (cell == "0")
        row.push_back(0);
      else if (cell == "1")
        row.push_back(1);
      else
        throw parse_error("relation matrix entry must be 0 or 1", row_number, column);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error("relation matrix has no rows");
  size_t columns = rows.front().size();
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != columns)
      throw parse_error("relation matrix rows have different lengths",
                        static_cast<int>(i + 1));

  relation r(static_cast<int>(rows.size()));
  for (size_t c = 0; c < columns; ++c) {
    uint16_t tuple = 0;
    for (size_t i = 0; i < rows.size(); ++i)
      if (rows[i][c]) tuple |= static_cast<uint16_t>(1u << i);
    r.insert(tuple);
  }
  return r;
}

//! Emits the matrix with columns in ascending tuple-code order.
inline std::string format_relation(const relation& r) {
  auto tuples = r.tuples();
  std::string out;
  for (int row = 0; row < r.arity(); ++row) {
    for (size_t c = 0; c < tuples.size(); ++c) {
      if (c > 0) out += ' ';
      out += ((tuples[c] >> row) & 1) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

// -- transforms ------------------------------------------------------------

/*! \brief Componentwise complement of every tuple. */
inline relation negate(const relation& r) {
  relation out(r.arity());
  uint16_t all = static_cast<uint16_t>(r.tuple_limit() - 1);
  for (uint16_t t : r.tuples()) out.insert(static_cast<uint16_t>(t ^ all));
  return out;
}

/*! \brief Reorders tuple coordinates: coordinate i of the input lands at
 * position pi[i] of the output (0-based).  pi must be a permutation.
 */
inline relation permute_coordinates(const relation& r, std::span<const int> pi) {
  int m = r.arity();
  if (static_cast<int>(pi.size()) != m)
    throw input_error("permute_coordinates: permutation length does not match arity");
  std::vector<bool> seen(m, false);
  for (int p : pi) {
    if (p < 0 || p >= m || seen[p])
      throw input_error("permute_coordinates: not a permutation of the coordinates");
    seen[p] = true;
  }
  relation out(m);
  for (uint16_t t : r.tuples()) {
    uint16_t moved = 0;
    for (int i = 0; i < m; ++i)
      if ((t >> i) & 1) moved |= static_cast<uint16_t>(1u << pi[i]);
    out.insert(moved);
  }
  return out;
}

/*! \brief The consequent extension: S plus every quadruple whose 3-prefix has
 * no completion in S.  Defined for 4-ary relations only.
 */
inline relation extend_consequent(const relation& s) {
  if (s.arity() != 4) throw input_error("extend_consequent requires a 4-ary relation");
  uint16_t mask = s.mask4();
  uint16_t out = mask;
  for (uint16_t prefix = 0; prefix < 8; ++prefix) {
    bool solvable = ((mask >> prefix) & 1) || ((mask >> (prefix | 8)) & 1);
    if (!solvable) out |= static_cast<uint16_t>((1u << prefix) | (1u << (prefix | 8)));
  }
  return relation::from_mask4(out);
}

/*! \brief The completions of an analogy prefix: { x | (a,b,c,x) in S }. */
inline std::vector<uint8_t> solutions(const relation& s, bool a, bool b, bool c) {
  if (s.arity() != 4) throw input_error("solutions requires a 4-ary relation");
  uint16_t prefix = static_cast<uint16_t>((a ? 1 : 0) | (b ? 2 : 0) | (c ? 4 : 0));
  std::vector<uint8_t> out;
  if (s.contains(prefix)) out.push_back(0);
  if (s.contains(prefix | 8)) out.push_back(1);
  return out;
}

inline bool solvable(const relation& s, bool a, bool b, bool c) {
  return !solutions(s, a, b, c).empty();
}

// -- named-relation registry ------------------------------------------------

/*! \brief Name -> relation table backing the CLI.
 *
 * Registry files are plain text, one entry per line:
 *
 *     name = row ; row ; row ; row
 *
 * where each row is a blank-separated 0/1 row of the matrix form, and `#`
 * starts a comment line.
 */
class relation_registry {
public:
  void add(std::string name, relation r) {
    if (name.empty()) throw input_error("registry: empty relation name");
    auto [it, fresh] = entries_.emplace(std::move(name), std::move(r));
    if (!fresh) throw input_error("registry: duplicate relation name `" + it->first + "`");
  }

  const relation* find(std::string_view name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const relation& at(std::string_view name) const {
    const relation* r = find(name);
    if (!r) throw input_error("registry: unknown relation `" + std::string(name) + "`");
    return *r;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [name, r] : entries_) out.push_back(name);
    return out;
  }

  void load_text(std::string_view text) {
    std::istringstream lines{std::string(text)};
    std::string line;
    int row_number = 0;
    while (std::getline(lines, line)) {
      ++row_number;
      std::string_view view = line;
      auto first = view.find_first_not_of(" \t\r");
      if (first == std::string_view::npos) continue;
      if (view[first] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw parse_error("registry line must look like `name = matrix`", row_number);
      std::string name = trim(line.substr(0, eq));
      std::string matrix = line.substr(eq + 1);
      std::replace(matrix.begin(), matrix.end(), ';', '\n');
      try {
        add(std::move(name), parse_relation(matrix));
      } catch (const parse_error& e) {
        throw parse_error(std::string("registry entry: ") + e.what(), row_number);
      }
    }
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("registry: cannot open `" + path + "`");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    load_text(buffer.str());
  }

private:
  static std::string trim(std::string s) {
    auto from = s.find_first_not_of(" \t\r");
    auto to = s.find_last_not_of(" \t\r");
    if (from == std::string::npos) return {};
    return s.substr(from, to - from + 1);
  }

  std::map<std::string, relation, std::less<>> entries_;
};

}  // namespace apol
