#pragma once

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace keplerreg {

enum class BasisKind { fock4, monomial4, polyAB };

inline const char* basis_kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::fock4: return "fock4";
    case BasisKind::monomial4: return "monomial4";
    default: return "polyAB";
  }
}

/// Multi-index over four modes/variables.
struct MultiIndex {
  std::array<int, 4> e{};
  int total() const { return e[0] + e[1] + e[2] + e[3]; }
  bool operator<(const MultiIndex& o) const { return e < o.e; }
  bool operator==(const MultiIndex& o) const { return e == o.e; }
};

/// Graded basis of total degree <= cutoff with a dense index table.
/// fock4: occupation numbers; monomial4: degrees in the complexified
/// repulsive-chart monomials; polyAB: degrees in the complexified (A,B)
/// monomials.
class GradedBasis {
 public:
  GradedBasis(BasisKind kind, int cutoff) : kind_(kind), cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("GradedBasis: negative cutoff");
    for (int total = 0; total <= cutoff; ++total)
      for (int e0 = total; e0 >= 0; --e0)
        for (int e1 = total - e0; e1 >= 0; --e1)
          for (int e2 = total - e0 - e1; e2 >= 0; --e2) {
            MultiIndex m{{e0, e1, e2, total - e0 - e1 - e2}};
            index_.emplace(m, int(states_.size()));
            states_.push_back(m);
          }
  }

  BasisKind kind() const { return kind_; }
  int cutoff() const { return cutoff_; }
  int dim() const { return int(states_.size()); }
  const MultiIndex& state(int i) const { return states_[i]; }

  /// Dense index of a multi-index, or -1 if outside the truncation.
  int find(const MultiIndex& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }

  /// Degree-raising operators are only trusted on these states.
  bool truncation_safe(int i) const { return states_[i].total() <= cutoff_ - 2; }

  std::vector<int> safe_columns() const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
      if (truncation_safe(i)) out.push_back(i);
    return out;
  }

  bool operator==(const GradedBasis& o) const {
    return kind_ == o.kind_ && cutoff_ == o.cutoff_;
  }

 private:
  BasisKind kind_;
  int cutoff_;
  std::vector<MultiIndex> states_;
  std::map<MultiIndex, int> index_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

}  // namespace keplerreg
