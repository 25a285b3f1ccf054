#include "amenlab/group.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace amenlab {

Word reduce_free_word(const std::vector<int32_t>& letters) {
  Word out;
  out.reserve(letters.size());
  for (int32_t l : letters) {
    if (l == 0) throw std::invalid_argument("zero letter in free word");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

GroupPtr Group::free_group(int rank) {
  if (rank < 1) throw std::invalid_argument("free group rank must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Free;
  g->rank_ = rank;
  return g;
}

GroupPtr Group::free_abelian(int rank) {
  if (rank < 1) throw std::invalid_argument("free abelian rank must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FreeAbelian;
  g->rank_ = rank;
  return g;
}

GroupPtr Group::finite(std::vector<std::vector<int>> table) {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Finite;
  g->table_ = std::move(table);
  g->validate_table();
  return g;
}

GroupPtr Group::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic order must be >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return finite(std::move(t));
}

GroupPtr Group::symmetric3() {
  // permutations of {0,1,2} listed in lexicographic order
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      int c[3];
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      for (int k = 0; k < 6; ++k)
        if (c[0] == perms[k][0] && c[1] == perms[k][1] && c[2] == perms[k][2])
          t[i][j] = k;
    }
  return finite(std::move(t));
}

void Group::validate_table() const {
  const int n = (int)table_.size();
  if (n == 0) throw std::invalid_argument("empty Cayley table");
  for (auto& row : table_) {
    if ((int)row.size() != n) throw std::invalid_argument("Cayley table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("Cayley table entry out of range");
  }
  // identity
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j) ok = ok && table_[i][j] == j && table_[j][i] == j;
    if (ok) e = i;
  }
  if (e < 0) throw std::invalid_argument("Cayley table has no identity");
  const_cast<Group*>(this)->finite_identity_ = e;
  // unique inverses
  auto& inv = const_cast<Group*>(this)->finite_inverse_;
  inv.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (table_[i][j] == e && table_[j][i] == e) {
        if (inv[i] >= 0 && inv[i] != j)
          throw std::invalid_argument("Cayley table has non-unique inverse");
        inv[i] = j;
      }
    if (inv[i] < 0) throw std::invalid_argument("Cayley table element without inverse");
  }
  // associativity: full check up to order 64, sampled above
  auto check = [&](int a, int b, int c) {
    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
      throw std::invalid_argument("Cayley table is not associative");
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int it = 0; it < 200000; ++it) check(d(rng), d(rng), d(rng));
  }
}

Word Group::identity() const {
  if (kind_ == GroupKind::Finite) return {(int32_t)finite_identity_};
  if (kind_ == GroupKind::FreeAbelian) return Word(rank_, 0);
  return {};
}

bool Group::is_identity(const Word& w) const { return w == identity(); }

Word Group::multiply(const Word& a, const Word& b) const {
  switch (kind_) {
    case GroupKind::Free: {
      Word c = a;
      c.insert(c.end(), b.begin(), b.end());
      return reduce_free_word(c);
    }
    case GroupKind::FreeAbelian: {
      Word c(rank_);
      for (int i = 0; i < rank_; ++i) c[i] = a.at(i) + b.at(i);
      return c;
    }
    case GroupKind::Finite:
      return {(int32_t)table_[a.at(0)][b.at(0)]};
  }
  throw std::logic_error("unreachable");
}

Word Group::inverse(const Word& a) const {
  switch (kind_) {
    case GroupKind::Free: {
      Word c(a.rbegin(), a.rend());
      for (auto& l : c) l = -l;
      return c;
    }
    case GroupKind::FreeAbelian: {
      Word c = a;
      for (auto& l : c) l = -l;
      return c;
    }
    case GroupKind::Finite:
      return {(int32_t)finite_inverse_[a.at(0)]};
  }
  throw std::logic_error("unreachable");
}

Word Group::normal_form(const std::vector<int32_t>& letters) const {
  switch (kind_) {
    case GroupKind::Free: {
      for (int32_t l : letters)
        if (l == 0 || l > rank_ || l < -rank_)
          throw std::invalid_argument("unknown generator symbol");
      return reduce_free_word(letters);
    }
    case GroupKind::FreeAbelian: {
      Word c(rank_, 0);
      for (int32_t l : letters) {
        if (l == 0 || l > rank_ || l < -rank_)
          throw std::invalid_argument("unknown generator symbol");
        c[std::abs(l) - 1] += (l > 0) ? 1 : -1;
      }
      return c;
    }
    case GroupKind::Finite: {
      int acc = finite_identity_;
      for (int32_t l : letters) {
        if (l < 0 || l >= order()) throw std::invalid_argument("unknown element index");
        acc = table_[acc][l];
      }
      return {(int32_t)acc};
    }
  }
  throw std::logic_error("unreachable");
}

int Group::word_length(const Word& w) const {
  switch (kind_) {
    case GroupKind::Free:
      return (int)w.size();
    case GroupKind::FreeAbelian: {
      int64_t s = 0;
      for (auto l : w) s += std::abs((int64_t)l);
      return (int)s;
    }
    case GroupKind::Finite:
      return w.at(0) == finite_identity_ ? 0 : 1;
  }
  throw std::logic_error("unreachable");
}

std::vector<Word> Group::generators() const {
  std::vector<Word> gens;
  switch (kind_) {
    case GroupKind::Free:
      for (int i = 1; i <= rank_; ++i) {
        gens.push_back({(int32_t)i});
        gens.push_back({(int32_t)-i});
      }
      break;
    case GroupKind::FreeAbelian:
      for (int i = 0; i < rank_; ++i) {
        Word w(rank_, 0);
        w[i] = 1;
        gens.push_back(w);
        w[i] = -1;
        gens.push_back(w);
      }
      break;
    case GroupKind::Finite:
      for (int i = 0; i < order(); ++i)
        if (i != finite_identity_) gens.push_back({(int32_t)i});
      break;
  }
  return gens;
}

std::string Group::name(const Word& w) const {
  if (is_identity(w)) return "e";
  std::string s;
  switch (kind_) {
    case GroupKind::Free:
      for (auto l : w) {
        if (!s.empty()) s += ".";
        s += (char)('a' + std::abs(l) - 1);
        if (l < 0) s += "'";
      }
      return s;
    case GroupKind::FreeAbelian:
      for (int i = 0; i < rank_; ++i) {
        if (w[i] == 0) continue;
        if (!s.empty()) s += ".";
        s += (char)('x' + i);
        s += "^" + std::to_string(w[i]);
      }
      return s;
    case GroupKind::Finite:
      return "g" + std::to_string(w.at(0));
  }
  return s;
}

std::vector<Word> Group::ball(int r) const {
  if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::vector<Word> out;
  switch (kind_) {
    case GroupKind::Free: {
      // BFS over reduced words
      out.push_back({});
      std::vector<Word> frontier = {{}};
      for (int depth = 0; depth < r; ++depth) {
        std::vector<Word> next;
        for (const auto& w : frontier)
          for (int i = 1; i <= rank_; ++i)
            for (int sgn : {1, -1}) {
              int32_t l = (int32_t)(sgn * i);
              if (!w.empty() && w.back() == -l) continue;
              Word x = w;
              x.push_back(l);
              next.push_back(x);
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
      }
      break;
    }
    case GroupKind::FreeAbelian: {
      // all exponent vectors with |.|_1 <= r
      Word cur(rank_, 0);
      std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == rank_) {
          out.push_back(cur);
          return;
        }
        for (int v = -left; v <= left; ++v) {
          cur[i] = v;
          rec(i + 1, left - std::abs(v));
        }
        cur[i] = 0;
      };
      rec(0, r);
      break;
    }
    case GroupKind::Finite: {
      out.push_back(identity());
      if (r >= 1)
        for (int i = 0; i < order(); ++i)
          if (i != finite_identity_) out.push_back({(int32_t)i});
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}


std::vector<Word> generator_factors(const GroupPtr& G, const Word& g) {
  std::vector<Word> out;
  switch (G->kind()) {
    case GroupKind::Free:
      for (auto l : g) out.push_back({l});
      break;
    case GroupKind::FreeAbelian:
      for (int i = 0; i < G->rank(); ++i) {
        Word e(G->rank(), 0);
        e[i] = g[i] >= 0 ? 1 : -1;
        for (int t = 0; t < std::abs(g[i]); ++t) out.push_back(e);
      }
      break;
    case GroupKind::Finite:
      if (!G->is_identity(g)) out.push_back(g);
      break;
  }
  return out;
}

}  // namespace amenlab
