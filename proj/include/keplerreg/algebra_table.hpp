#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "keplerreg/phase_poly.hpp"

namespace keplerreg {

/// A bracket left the span of the generator set (plus constants).
struct ClosureError : std::runtime_error {
  ClosureError(std::string gi, std::string gj, std::string residual)
      : std::runtime_error("bracket {" + gi + ", " + gj +
                           "} leaves the generator span; residual: " + residual),
        lhs(std::move(gi)),
        rhs(std::move(gj)),
        residual_poly(std::move(residual)) {}
  std::string lhs, rhs, residual_poly;
};

/// Structure constants of a closed bracket table: {G_i, G_j} = sum_k
/// f[i][j][k] G_k + affine[i][j]. Values are exact by construction for the
/// classical tables (and dyadic, so the double representation is exact too).
struct AlgebraTable {
  std::vector<std::string> generators;
  std::vector<std::vector<std::vector<std::complex<double>>>> f;
  std::vector<std::vector<std::complex<double>>> affine;
  double tolerance = 0.0;
  double max_residual = 0.0;

  std::size_t size() const { return generators.size(); }

  double antisymmetry_error() const {
    double err = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        for (std::size_t k = 0; k < size(); ++k)
          err = std::max(err, std::abs(f[i][j][k] + f[j][i][k]));
        err = std::max(err, std::abs(affine[i][j] + affine[j][i]));
      }
    return err;
  }

  /// Max violation of sum_m (f_ij^m f_mk^l + f_jk^m f_mi^l + f_ki^m f_mj^l)
  /// over l, including the affine column.
  double jacobi_error() const {
    const std::size_t n = size();
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t l = 0; l < n; ++l) {
            std::complex<double> acc = 0.0;
            for (std::size_t m = 0; m < n; ++m)
              acc += f[i][j][m] * f[m][k][l] + f[j][k][m] * f[m][i][l] +
                     f[k][i][m] * f[m][j][l];
            err = std::max(err, std::abs(acc));
          }
          std::complex<double> acc = 0.0;
          for (std::size_t m = 0; m < n; ++m)
            acc += f[i][j][m] * affine[m][k] + f[j][k][m] * affine[m][i] +
                   f[k][i][m] * affine[m][j];
          err = std::max(err, std::abs(acc));
        }
    return err;
  }

  double max_abs_difference(const AlgebraTable& o) const {
    double err = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        for (std::size_t k = 0; k < size(); ++k)
          err = std::max(err, std::abs(f[i][j][k] - o.f[i][j][k]));
        err = std::max(err, std::abs(affine[i][j] - o.affine[i][j]));
      }
    return err;
  }

  /// Table with every entry multiplied by z (used to form i * classical).
  AlgebraTable scaled(std::complex<double> z) const {
    AlgebraTable t = *this;
    for (auto& fi : t.f)
      for (auto& fij : fi)
        for (auto& v : fij) v *= z;
    for (auto& ai : t.affine)
      for (auto& v : ai) v *= z;
    return t;
  }

  bool has_affine() const {
    for (auto& row : affine)
      for (auto& v : row)
        if (std::abs(v) != 0.0) return true;
    return false;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["generators"] = generators;
    nlohmann::json jf = nlohmann::json::array();
    for (std::size_t i = 0; i < size(); ++i) {
      nlohmann::json ji = nlohmann::json::array();
      for (std::size_t jj = 0; jj < size(); ++jj) {
        nlohmann::json jk = nlohmann::json::array();
        for (std::size_t k = 0; k < size(); ++k)
          jk.push_back({f[i][jj][k].real(), f[i][jj][k].imag()});
        ji.push_back(jk);
      }
      jf.push_back(ji);
    }
    j["f"] = jf;
    j["tolerance"] = tolerance;
    if (has_affine()) {
      nlohmann::json ja = nlohmann::json::array();
      for (std::size_t i = 0; i < size(); ++i) {
        nlohmann::json ji = nlohmann::json::array();
        for (std::size_t jj = 0; jj < size(); ++jj)
          ji.push_back({affine[i][jj].real(), affine[i][jj].imag()});
        ja.push_back(ji);
      }
      j["affine"] = ja;
    }
    return j;
  }
};

namespace detail {

/// Exact solve of  sum_k x_k G_k + x_m * 1 = target  over the monomial
/// support; returns false if the target is outside the span, with the
/// unreachable remainder in `residual`.
inline bool express_in_span(const std::vector<PhasePolynomial>& gens,
                            const PhasePolynomial& target,
                            std::vector<CRational>& coeffs, PhasePolynomial& residual) {
  // Collect the union support.
  std::map<Monomial, std::size_t> rows;
  auto note = [&rows](const PhasePolynomial& p) {
    for (auto& [m, c] : p.terms())
      if (!rows.count(m)) rows.emplace(m, rows.size());
  };
  for (auto& g : gens) note(g);
  note(target);
  const std::size_t nr = rows.size(), nc = gens.size() + 1;

  std::vector<std::vector<CRational>> A(nr, std::vector<CRational>(nc));
  std::vector<CRational> b(nr);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (auto& [m, c] : gens[k].terms()) A[rows.at(m)][k] = c;
  // constant column
  {
    Monomial one{};
    if (rows.count(one)) A[rows.at(one)][nc - 1] = CRational(1);
  }
  for (auto& [m, c] : target.terms()) b[rows.at(m)] = c;

  // Exact Gaussian elimination.
  std::vector<std::size_t> pivot_row(nc, SIZE_MAX);
  std::size_t rank_row = 0;
  for (std::size_t col = 0; col < nc && rank_row < nr; ++col) {
    std::size_t p = SIZE_MAX;
    for (std::size_t r = rank_row; r < nr; ++r)
      if (!A[r][col].is_zero()) { p = r; break; }
    if (p == SIZE_MAX) continue;
    std::swap(A[p], A[rank_row]);
    std::swap(b[p], b[rank_row]);
    CRational inv = CRational(1) / A[rank_row][col];
    for (std::size_t c2 = col; c2 < nc; ++c2) A[rank_row][c2] = inv * A[rank_row][c2];
    b[rank_row] = inv * b[rank_row];
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == rank_row || A[r][col].is_zero()) continue;
      CRational factor = A[r][col];
      for (std::size_t c2 = col; c2 < nc; ++c2)
        A[r][c2] = A[r][c2] - factor * A[rank_row][c2];
      b[r] = b[r] - factor * b[rank_row];
    }
    pivot_row[col] = rank_row;
    ++rank_row;
  }

  // Inconsistent rows mark the unreachable remainder.
  std::vector<bool> bad_row(nr, false);
  bool ok = true;
  for (std::size_t r = rank_row; r < nr; ++r)
    if (!b[r].is_zero()) { ok = false; bad_row[r] = true; }

  coeffs.assign(nc, CRational());
  for (std::size_t col = 0; col < nc; ++col)
    if (pivot_row[col] != SIZE_MAX) coeffs[col] = b[pivot_row[col]];

  if (!ok) {
    residual = PhasePolynomial(target.chart());
    // Reconstruct target - sum coeffs*gens in the original basis.
    PhasePolynomial recon(target.chart());
    for (std::size_t k = 0; k < gens.size(); ++k) recon = recon + coeffs[k] * gens[k];
    recon = recon + PhasePolynomial::constant(target.chart(), coeffs[nc - 1]);
    residual = target - recon;
  }
  return ok;
}

}  // namespace detail

/// Computes the exact structure constants of a generator set under the
/// chart's Poisson bracket; throws ClosureError if some bracket leaves
/// span{generators, 1}.
inline AlgebraTable structure_table(const std::vector<PhasePolynomial>& gens,
                                    const std::vector<std::string>& names,
                                    const Chart& sig) {
  if (gens.size() != names.size())
    throw std::invalid_argument("generator/name count mismatch");
  const std::size_t n = gens.size();
  AlgebraTable t;
  t.generators = names;
  t.f.assign(n, std::vector<std::vector<std::complex<double>>>(
                    n, std::vector<std::complex<double>>(n, 0.0)));
  t.affine.assign(n, std::vector<std::complex<double>>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PhasePolynomial br = poisson_bracket(gens[i], gens[j], sig);
      std::vector<CRational> coeffs;
      PhasePolynomial residual;
      if (!detail::express_in_span(gens, br, coeffs, residual))
        throw ClosureError(names[i], names[j], residual.str());
      for (std::size_t k = 0; k < n; ++k) t.f[i][j][k] = coeffs[k].to_complex();
      t.affine[i][j] = coeffs[n].to_complex();
    }
  return t;
}

}  // namespace keplerreg
