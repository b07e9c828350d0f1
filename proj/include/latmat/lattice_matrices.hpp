#pragma once

// Meet, join and combined meet-and-join matrices of a set S = {x_1, ..., x_n}:
//
//   (S)_f      entry f(x_i ^ x_j)
//   [S]_f      entry f(x_i v x_j)
//   M^{a,b,g,d} entry f(x_i ^ x_j)^a f(x_i v x_j)^b / (f(x_i)^g f(x_j)^d)
//
// and the factorizations that express them through the order ideal / filter of S.
// Every factorization is returned as explicit factors so callers can multiply them back
// and compare against the directly built matrix.

#include <vector>

#include "latmat/incidence.hpp"
#include "latmat/matrix.hpp"
#include "latmat/poset.hpp"

namespace latmat {

struct Exponents {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

struct CombinedSpec {
  ElementSubset subset;
  PosetFunction f;
  Exponents exponents;
};

DenseMatrix meet_matrix(const ElementSubset& s, const PosetFunction& f, double alpha = 1.0);
DenseMatrix join_matrix(const ElementSubset& s, const PosetFunction& f, double alpha = 1.0);

/// Throws ValidationError naming the violated existence clause (zero values of f against the
/// signs of the exponents), or DomainError when some entry needs an undefined real power.
void check_existence(const CombinedSpec& spec);

/// Entries are computed exactly (64-bit integer ratio) when f is integer valued and all four
/// exponents are integers, otherwise in floating point. Symmetric whenever gamma == delta.
DenseMatrix combined_matrix(const CombinedSpec& spec);

/// g_ij = 1 for comparable x_i, x_j; otherwise
/// f(x_i^x_j)^e f(x_ivx_j)^e / (f(x_i)^e f(x_j)^e).
DenseMatrix g_matrix(const ElementSubset& s, const PosetFunction& f, double exponent);

/// (S)_{f^alpha} = A A^T with A indexed by the order ideal of S (S-first), or
/// [S]_{f^alpha} = A A^T with A indexed by the order filter.
struct GramFactorization {
  ElementSubset support;
  DenseMatrix a;

  /// Columns belonging to S itself (the first n).
  DenseMatrix leading_block() const { return a.columns(0, a.rows()); }
  /// Columns for the remaining ideal/filter members.
  DenseMatrix trailing_block() const { return a.columns(a.rows(), a.cols() - a.rows()); }
  DenseMatrix product() const { return a * a.transpose(); }
};

/// Throws ValidationError naming w when some convolution entry on the support is negative.
GramFactorization factor_ideal(const ElementSubset& s, const PosetFunction& f, double alpha = 1.0);
GramFactorization factor_filter(const ElementSubset& s, const PosetFunction& f, double alpha = 1.0);

enum class ClosedSide { meet, join };

/// E with e_ij = 1 iff x_j <= x_i and diagonal D.
/// Meet side reconstructs E D E^T = (S)_{f^alpha}; join side E^T D E = [S]_{f^alpha}.
struct TriangularFactorization {
  ClosedSide side;
  DenseMatrix e;
  std::vector<double> d;

  DenseMatrix product() const;
};

/// d_i = sum of down-convolution values over z <= x_i with z not below any earlier x_j.
/// Throws ValidationError when S is not meet closed.
TriangularFactorization factor_meet_closed(const ElementSubset& s, const PosetFunction& f, double alpha = 1.0);
/// d_i = sum of up-convolution values over z >= x_i with z not above any later x_j.
/// Throws ValidationError when S is not join closed.
TriangularFactorization factor_join_closed(const ElementSubset& s, const PosetFunction& f, double alpha = 1.0);

/// M = diag(left) (core o G) diag(right).
struct StructureFactors {
  std::vector<double> left;
  std::vector<double> right;
  DenseMatrix core;
  DenseMatrix g;

  DenseMatrix product() const { return scale_rows_cols(left, hadamard(core, g), right); }
};

/// Meet-oriented: left = f^(b-g), right = f^(b-d), core = (S)_{f^(a-b)}, G built with exponent b.
StructureFactors structure_meet(const CombinedSpec& spec);
/// Join-oriented: left = f^(a-g), right = f^(a-d), core = [S]_{f^(b-a)}, G built with exponent a.
StructureFactors structure_join(const CombinedSpec& spec);

/// C (A o B) D == B o (C A D) entrywise within tol * max(1, max|entry|); C and D must be diagonal.
bool hadamard_diag_identity_check(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                                  const DenseMatrix& d, double tol = 1e-12);

}  // namespace latmat
