#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace amenlab {

// A group element is stored in normal form:
//  - free(k):  reduced word, letters +i / -i for generator i (1-based) and its inverse
//  - abelian(d): exponent vector of length d
//  - finite(n): single entry, the element index in the Cayley table
using Word = std::vector<int32_t>;

enum class GroupKind { Free, FreeAbelian, Finite };

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
public:
  static GroupPtr free_group(int rank);
  static GroupPtr free_abelian(int rank);
  // table[i][j] = index of g_i * g_j; validated on construction
  // (full associativity check up to order 64, sampled above).
  static GroupPtr finite(std::vector<std::vector<int>> table);
  static GroupPtr cyclic(int n);
  static GroupPtr symmetric3();

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }                 // free / abelian
  int order() const { return (int)table_.size(); }   // finite
  bool is_finite() const { return kind_ == GroupKind::Finite; }

  Word identity() const;
  bool is_identity(const Word& w) const;
  Word multiply(const Word& a, const Word& b) const;
  Word inverse(const Word& a) const;
  // Canonical representative of an arbitrary letter sequence.  For finite
  // groups the input is a sequence of generator indices (see generators()).
  Word normal_form(const std::vector<int32_t>& letters) const;
  int word_length(const Word& w) const;

  // Generating set used throughout (for defects, windows, actions):
  //  free(k): a_1..a_k and inverses; abelian(d): e_1..e_d and inverses;
  //  finite: every non-identity element.
  std::vector<Word> generators() const;
  std::string name(const Word& w) const;

  // All elements of word length <= r, sorted, no duplicates.
  std::vector<Word> ball(int r) const;

  // index of the identity in a finite group's table
  int finite_identity() const { return finite_identity_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  int finite_inverse(int i) const { return finite_inverse_[i]; }
  int finite_multiply(int i, int j) const { return table_[i][j]; }

private:
  Group() = default;
  void validate_table() const;

  GroupKind kind_ = GroupKind::Free;
  int rank_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> finite_inverse_;
  int finite_identity_ = 0;
};

// Stack-based reduction of a free word; shared with tests as the obvious path.
Word reduce_free_word(const std::vector<int32_t>& letters);

// decomposition of a word into generator letters (free: letters, abelian:
// signed unit vectors with multiplicity, finite: the element itself)
std::vector<Word> generator_factors(const GroupPtr& G, const Word& g);

}  // namespace amenlab
