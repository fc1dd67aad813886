#pragma once

#include <string>
#include <vector>

#include "mes/mes.hpp"
#include "mes/ranks.hpp"

namespace mes {

/// Labeled series sharing one truncation.
struct SeriesFamily {
  std::vector<std::string> labels;
  std::vector<CSeries> series;

  void add(std::string label, CSeries s);
  size_t size() const { return series.size(); }
  int trunc() const;
};

struct RelationReport {
  std::vector<std::string> labels;
  /// Exact coefficients when recognized (always for lll and pinned).
  std::vector<Rational> coefficients;
  bool exact = false;
  /// Numerical coefficients of the solve (method "rank").
  std::vector<Real> numeric_coefficients;
  Real residual = 0;
  std::string method;
  int N = 0;
  unsigned P = 0;
};

class NumericRankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRelationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank of the real-split coefficient matrix after column scaling; pivots below
/// 2^{-threshold_bits} count as zero.
size_t numeric_rank_at(const SeriesFamily& F, int N, unsigned threshold_bits);
/// numeric_rank_at at N and N - drop; throws NumericRankError when they differ.
size_t numeric_rank(const SeriesFamily& F, unsigned P, int drop = 20);
/// Indices of a maximal numerically independent subfamily, taken greedily in order.
std::vector<size_t> independent_subfamily(const SeriesFamily& F, unsigned P);

/// Number of weight-k symbols left after imposing all linear shuffle and reversal
/// relations exactly.
size_t symbolic_upper_bound(int k);
/// Same, restricted to depth d.
size_t symbolic_upper_bound_depth(int k, int d);

/// Integral LLL (exact integer Gram-Schmidt data) with delta = 99/100; rows are reduced in place.
void lll_reduce(std::vector<std::vector<Integer>>& basis);

/// Small integer relation among the family members via lattice reduction; throws
/// NoRelationError when none passes the residual test or the height bound.
RelationReport integer_relation(const SeriesFamily& F, unsigned P, const Integer& bound);

/// Express target in the span of F: greedy independent subfamily, least squares, and an
/// attempt to recognize rational coefficients (denominators up to 2^{P/8}).
RelationReport express(const SeriesFamily& F, const CSeries& target, const std::string& target_label, unsigned P);

/// Residual of target = sum c_i F_i for given coefficients.
Real relation_residual(const SeriesFamily& F, const std::vector<Rational>& c, const CSeries& target);

/// Family of normalized symmetric triple Eisenstein series of weight k.
SeriesFamily triple_smes_family(MesEngine& e, int k);
/// Basis Delta * E_4^a * E_6^b (4a + 6b = k - 12) of the weight-k cusp forms, rational.
std::vector<std::pair<std::string, RatSeries>> cusp_basis(int k, int N);
/// Express every cusp basis element of weight k in the symmetric triple family.
std::vector<RelationReport> cusp_expression(MesEngine& e, int k);

/// The twelve pinned indices and coefficients for (67/64800) Delta in weight 12.
std::vector<Index> pinned_delta_indices();
std::vector<Integer> pinned_delta_coefficients();
/// Residual of the pinned expression and the coefficients recovered by solving over the
/// pinned family.
RelationReport pinned_delta_check(MesEngine& e);

struct Theorem12Report {
  int k = 0;
  size_t expected = 0;
  size_t numeric = 0;
  /// Rank of the stated basis {S_{j,k-j} : j <= k/3} (odd k only).
  size_t basis_rank = 0;
  /// Largest residual of expressing the depth-two family in the reference basis.
  Real max_residual = 0;
  bool ok = false;
};
/// Even k >= 6: dimension and decomposition over Eisenstein products plus G_{k-2}';
/// odd k: the stated basis spans; k = 4: dimension one.
Theorem12Report theorem12_check(MesEngine& e, int k, unsigned P);

/// Imaginary part of S_{k-2l+1,2l-1} minus its constant term against
/// 2 sum_m b_k(l,m) Im(zeta(2m+1)) g_{k-2m-1}; returns the deviation.
Real check_imaginary_part(MesEngine& e, int k, int l);

/// Depth-d weight-k index family helpers.
SeriesFamily smes_family(MesEngine& e, int k);
SeriesFamily smes_family_depth(MesEngine& e, int k, int d);
SeriesFamily admissible_mes_family(MesEngine& e, int k);
SeriesFamily depth2_smes_family(MesEngine& e, int k);

}  // namespace mes
