#include "bldg/coxeter.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bldg/errors.hpp"

namespace bldg {

namespace {

std::atomic<std::uint64_t> next_tag{1};

// Coset enumeration (HLT strategy) for a group given by involutory
// generators and relators (s_i s_j)^m(i,j). Involutions are built into the
// table: table[c][s] = d always comes with table[d][s] = c.
class CosetTable {
 public:
  CosetTable(int generators, std::size_t budget)
      : gens_(generators), budget_(budget) {
    new_coset();
  }

  // Returns false if the definition budget ran out.
  bool enumerate(const std::vector<Word>& relators) {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(c)) continue;
      for (const auto& r : relators) {
        if (!scan_and_fill(static_cast<int>(c), r)) return false;
        if (!alive(c)) break;
      }
      if (!alive(c)) continue;
      for (int s = 0; s < gens_; ++s) {
        if (table_[c][s] < 0) {
          if (!define(static_cast<int>(c), s)) return false;
        }
      }
    }
    return true;
  }

  int live_count() const {
    int n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) n += alive(c) ? 1 : 0;
    return n;
  }

  int next(int c, int s) const { return table_[c][s]; }

 private:
  bool alive(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  int new_coset() {
    const int id = static_cast<int>(table_.size());
    table_.emplace_back(gens_, -1);
    parent_.push_back(id);
    return id;
  }

  bool define(int c, int s) {
    if (table_.size() >= budget_) return false;
    const int d = new_coset();
    table_[c][s] = d;
    table_[d][s] = c;
    return true;
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const int up = parent_[c];
      parent_[c] = r;
      c = up;
    }
    return r;
  }

  void merge(int a, int b, std::deque<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      for (int s = 0; s < gens_; ++s) {
        const int f = table_[e][s];
        if (f < 0) continue;
        if (table_[f][s] == e) table_[f][s] = -1;
        table_[e][s] = -1;
        const int e1 = rep(e);
        const int f1 = rep(f);
        if (table_[e1][s] >= 0) {
          merge(f1, table_[e1][s], queue);
        } else if (table_[f1][s] >= 0) {
          merge(e1, table_[f1][s], queue);
        } else {
          table_[e1][s] = f1;
          table_[f1][s] = e1;
        }
      }
    }
  }

  bool scan_and_fill(int c, const Word& r) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(r.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][r[i]] >= 0) f = table_[f][r[i++]];
      if (i > j) {
        if (f != c) coincidence(f, c);
        return true;
      }
      while (j >= i && table_[b][r[j]] >= 0) b = table_[b][r[j--]];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][r[i]] = b;
        table_[b][r[i]] = f;
        return true;
      }
      if (!define(f, r[i])) return false;
    }
  }

  int gens_;
  std::size_t budget_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

}  // namespace

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) throw InvalidSpec("Coxeter matrix must be nonempty");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n)
      throw InvalidSpec("Coxeter matrix must be square");
    if (entries_[i][i] != 1)
      throw InvalidSpec("Coxeter matrix diagonal must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (entries_[i][j] != entries_[j][i])
        throw InvalidSpec("Coxeter matrix must be symmetric");
      if (entries_[i][j] < 2)
        throw InvalidSpec("off-diagonal Coxeter entries must be >= 2");
    }
  }
}

CoxeterMatrix CoxeterMatrix::parse(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad Coxeter matrix entry '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return CoxeterMatrix(std::move(rows));
}

CoxeterMatrix CoxeterMatrix::type_a(int rank) {
  std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) {
    m[i][i] = 1;
    if (i + 1 < rank) m[i][i + 1] = m[i + 1][i] = 3;
  }
  return CoxeterMatrix(std::move(m));
}

CoxeterMatrix CoxeterMatrix::dihedral(int m) {
  return CoxeterMatrix({{1, m}, {m, 1}});
}

CoxeterSystem CoxeterSystem::build(const CoxeterMatrix& matrix,
                                   int element_bound) {
  const int n = matrix.rank();
  std::vector<Word> relators;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Word r;
      for (int k = 0; k < matrix(i, j); ++k) {
        r.push_back(i);
        r.push_back(j);
      }
      relators.push_back(std::move(r));
    }
  }

  // HLT may overshoot the index before coincidences collapse it.
  const std::size_t budget =
      std::max<std::size_t>(4096, static_cast<std::size_t>(element_bound) * 16);
  CosetTable table(n, budget);
  if (!table.enumerate(relators) || table.live_count() > element_bound)
    throw BoundExceeded("Coxeter group enumeration exceeded bound of " +
                        std::to_string(element_bound) + " elements");

  CoxeterSystem sys;
  sys.matrix_ = matrix;
  sys.tag_ = next_tag.fetch_add(1);

  // Breadth-first search from the identity coset with generators tried in
  // increasing order yields shortlex-minimal words.
  std::vector<int> index_of_coset;
  std::vector<int> coset_of_index;
  std::deque<int> queue{0};
  auto lookup = [&](int coset) -> int& {
    if (static_cast<std::size_t>(coset) >= index_of_coset.size())
      index_of_coset.resize(coset + 1, -1);
    return index_of_coset[coset];
  };
  lookup(0) = 0;
  coset_of_index.push_back(0);
  sys.words_.push_back({});
  sys.lengths_.push_back(0);
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    const int ci = lookup(c);
    for (int s = 0; s < n; ++s) {
      const int d = table.next(c, s);
      int& di = lookup(d);
      if (di >= 0) continue;
      di = static_cast<int>(sys.words_.size());
      coset_of_index.push_back(d);
      Word w = sys.words_[ci];
      w.push_back(s);
      sys.words_.push_back(std::move(w));
      sys.lengths_.push_back(sys.lengths_[ci] + 1);
      queue.push_back(d);
    }
  }

  sys.right_.assign(sys.words_.size(), std::vector<int>(n));
  for (std::size_t w = 0; w < sys.words_.size(); ++w)
    for (int s = 0; s < n; ++s)
      sys.right_[w][s] = lookup(table.next(coset_of_index[w], s));

  sys.longest_ = static_cast<int>(
      std::max_element(sys.lengths_.begin(), sys.lengths_.end()) -
      sys.lengths_.begin());
  return sys;
}

void CoxeterSystem::check(CoxeterElement w) const {
  if (w.system_tag != tag_)
    throw SystemMismatch("Coxeter element belongs to a different system");
  if (w.index < 0 || w.index >= order())
    throw std::out_of_range("Coxeter element index out of range");
}

CoxeterElement CoxeterSystem::generator(int s) const {
  if (s < 0 || s >= rank()) throw std::out_of_range("generator index");
  return {tag_, right_[0][s]};
}

CoxeterElement CoxeterSystem::element(int index) const {
  CoxeterElement w{tag_, index};
  check(w);
  return w;
}

const Word& CoxeterSystem::word(CoxeterElement w) const {
  check(w);
  return words_[w.index];
}

int CoxeterSystem::length(CoxeterElement w) const {
  check(w);
  return lengths_[w.index];
}

CoxeterElement CoxeterSystem::times_generator(CoxeterElement w, int s) const {
  check(w);
  if (s < 0 || s >= rank()) throw std::out_of_range("generator index");
  return {tag_, right_[w.index][s]};
}

CoxeterElement CoxeterSystem::multiply(CoxeterElement w,
                                       CoxeterElement v) const {
  check(w);
  check(v);
  int x = w.index;
  for (int s : words_[v.index]) x = right_[x][s];
  return {tag_, x};
}

CoxeterElement CoxeterSystem::inverse(CoxeterElement w) const {
  const Word& word = this->word(w);
  Word rev(word.rbegin(), word.rend());
  return reduce_word(rev);
}

CoxeterElement CoxeterSystem::reduce_word(std::span<const int> word) const {
  int x = 0;
  for (int s : word) {
    if (s < 0 || s >= rank()) throw std::out_of_range("generator index");
    x = right_[x][s];
  }
  return {tag_, x};
}

bool CoxeterSystem::is_reduced(std::span<const int> word) const {
  return length(reduce_word(word)) == static_cast<int>(word.size());
}

std::vector<Word> CoxeterSystem::reduced_words(CoxeterElement w) const {
  check(w);
  if (lengths_[w.index] == 0) return {Word{}};
  std::vector<Word> out;
  for (int s = 0; s < rank(); ++s) {
    const int ws = right_[w.index][s];
    if (lengths_[ws] >= lengths_[w.index]) continue;
    for (Word prefix : reduced_words({tag_, ws})) {
      prefix.push_back(s);
      out.push_back(std::move(prefix));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long long> CoxeterSystem::poincare_polynomial() const {
  std::vector<long long> coeffs(lengths_[longest_] + 1, 0);
  for (int l : lengths_) ++coeffs[l];
  return coeffs;
}

std::vector<std::vector<int>> CoxeterSystem::components() const {
  const int n = rank();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> members;
    std::deque<int> queue{start};
    comp[start] = static_cast<int>(out.size());
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      members.push_back(i);
      for (int j = 0; j < n; ++j) {
        if (comp[j] < 0 && matrix_(i, j) >= 3) {
          comp[j] = comp[start];
          queue.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::string CoxeterSystem::to_string(CoxeterElement w) const {
  return format_word(word(w));
}

std::string format_word(std::span<const int> word) {
  if (word.empty()) return "e";
  std::string out;
  for (int s : word) out += "s" + std::to_string(s + 1);
  return out;
}

}  // namespace bldg
