#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace matising {

/// Dense matrix over GF(2), bit-packed one 64-bit word per row.
///
/// Both dimensions are capped at 64: every ground set handled here fits in a
/// machine word, which keeps rank queries (the inner loop of every subset
/// sweep and separation search) at a handful of word operations.
class Gf2Matrix {
 public:
  static constexpr std::size_t kMaxDim = 64;

  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  /// Rows given as strings of '0'/'1', e.g. {"110", "011"}.
  static Gf2Matrix from_strings(std::initializer_list<std::string_view> rows);
  static Gf2Matrix from_strings(const std::vector<std::string>& rows);
  static Gf2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool value);

  /// Row i as a bitmask (bit j = entry (i,j)).
  std::uint64_t row_word(std::size_t i) const;
  /// Column j as a bitmask (bit i = entry (i,j)).
  std::uint64_t col_word(std::size_t j) const;

  /// Rank of the submatrix formed by the columns in `col_mask`.
  unsigned rank_of_columns(std::uint64_t col_mask) const;
  unsigned rank_of_columns(const std::vector<std::size_t>& cols) const;
  unsigned rank() const;

  /// Basis of the right null space; each vector is a column-support bitmask.
  std::vector<std::uint64_t> nullspace_basis() const;

  /// Reduced row echelon form (zero rows dropped).
  Gf2Matrix row_reduced() const;

  /// Rows of `this` and `other` span the same subspace of GF(2)^cols.
  bool same_row_space(const Gf2Matrix& other) const;

  bool operator==(const Gf2Matrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> row_words_;
};

/// In-place Gaussian elimination on row bitmasks; returns the rank.
/// After the call the nonzero rows form a reduced echelon basis.
unsigned gf2_eliminate(std::vector<std::uint64_t>& rows);

/// Rank of a set of row bitmasks (non-destructive).
unsigned gf2_rank(std::vector<std::uint64_t> rows);

/// Basis bitmasks of {x : every row r satisfies popcount(r & x) even},
/// i.e. the null space of the matrix whose rows are `rows` over `cols` bits.
std::vector<std::uint64_t> gf2_nullspace(const std::vector<std::uint64_t>& rows,
                                         std::size_t cols);

}  // namespace matising
