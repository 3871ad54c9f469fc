#pragma once

#include <string>
#include <utility>
#include <vector>

#include "freesub/errors.hpp"

namespace freesub {

/**
 * A finite group given by its full multiplication table.
 *
 * Elements are the indices 0..order-1 with 0 the identity; table[a][b] is the
 * product a*b.  The constructor checks the table once: every row and column
 * must be a permutation of the element set, row/column 0 must be the identity
 * maps, and associativity must hold for all triples.
 */
class CayleyGroup {
 public:
  CayleyGroup() = default;

  CayleyGroup(std::string name, std::vector<std::vector<int>> table)
      : name_(std::move(name)), table_(std::move(table)) {
    const int n = static_cast<int>(table_.size());
    if (n == 0) throw SchemaError(name_ + ".table", "empty table");
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(table_[a].size()) != n)
        throw SchemaError(name_ + ".table", "row " + std::to_string(a) + " has wrong length");
      std::vector<char> seen(n, 0);
      for (int v : table_[a]) {
        if (v < 0 || v >= n || seen[v])
          throw SchemaError(name_ + ".table", "row " + std::to_string(a) + " is not a permutation");
        seen[v] = 1;
      }
    }
    for (int b = 0; b < n; ++b) {
      std::vector<char> seen(n, 0);
      for (int a = 0; a < n; ++a) {
        int v = table_[a][b];
        if (seen[v])
          throw SchemaError(name_ + ".table", "column " + std::to_string(b) + " is not a permutation");
        seen[v] = 1;
      }
    }
    for (int k = 0; k < n; ++k)
      if (table_[0][k] != k || table_[k][0] != k)
        throw SchemaError(name_ + ".table", "element 0 is not the identity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw SchemaError(name_ + ".table",
                              "associativity fails at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (table_[a][b] == 0) inverse_[a] = b;
  }

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
};

/// Cyclic group of order n, as a Cayley table.
inline CayleyGroup cyclic_group(int n, std::string name = "") {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  if (name.empty()) name = "C" + std::to_string(n);
  return CayleyGroup(std::move(name), std::move(t));
}

/// Klein four-group: elements xor-compose.
inline CayleyGroup klein_group(std::string name = "V4") {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return CayleyGroup(std::move(name), std::move(t));
}

}  // namespace freesub
