#include "matising/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "matising/errors.hpp"

namespace matising {

namespace {

void check_dim(std::size_t rows, std::size_t cols) {
  if (rows > Gf2Matrix::kMaxDim || cols > Gf2Matrix::kMaxDim) {
    throw SizeLimitError("Gf2Matrix dimensions limited to 64x64; got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_words_(rows, 0) {
  check_dim(rows, cols);
}

Gf2Matrix Gf2Matrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<std::string> copy;
  copy.reserve(rows.size());
  for (auto r : rows) copy.emplace_back(r);
  return from_strings(copy);
}

Gf2Matrix Gf2Matrix::from_strings(const std::vector<std::string>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Gf2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw std::invalid_argument("Gf2Matrix::from_strings: ragged rows");
    }
    for (std::size_t j = 0; j < c; ++j) {
      switch (rows[i][j]) {
        case '0': break;
        case '1': m.set(i, j, true); break;
        default:
          throw std::invalid_argument("Gf2Matrix::from_strings: expected '0'/'1'");
      }
    }
  }
  return m;
}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool Gf2Matrix::get(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("Gf2Matrix::get");
  return (row_words_[i] >> j) & 1u;
}

void Gf2Matrix::set(std::size_t i, std::size_t j, bool value) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("Gf2Matrix::set");
  if (value) {
    row_words_[i] |= std::uint64_t{1} << j;
  } else {
    row_words_[i] &= ~(std::uint64_t{1} << j);
  }
}

std::uint64_t Gf2Matrix::row_word(std::size_t i) const {
  if (i >= rows_) throw std::out_of_range("Gf2Matrix::row_word");
  return row_words_[i];
}

std::uint64_t Gf2Matrix::col_word(std::size_t j) const {
  if (j >= cols_) throw std::out_of_range("Gf2Matrix::col_word");
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    w |= std::uint64_t{(row_words_[i] >> j) & 1u} << i;
  }
  return w;
}

unsigned Gf2Matrix::rank_of_columns(std::uint64_t col_mask) const {
  if (cols_ < 64 && (col_mask >> cols_) != 0) {
    throw std::out_of_range("rank_of_columns: mask beyond column count");
  }
  // Row rank of the masked rows equals the column rank of the selected
  // columns. Plain xor-basis insertion: this is the inner loop of subset
  // sweeps and separation searches, so no echelon form is built.
  std::uint64_t slot[64] = {};
  unsigned rank = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t w = row_words_[i] & col_mask;
    while (w) {
      const int b = std::countr_zero(w);
      if (slot[b]) {
        w ^= slot[b];
      } else {
        slot[b] = w;
        ++rank;
        break;
      }
    }
  }
  return rank;
}

unsigned Gf2Matrix::rank_of_columns(const std::vector<std::size_t>& cols) const {
  std::uint64_t mask = 0;
  for (std::size_t j : cols) {
    if (j >= cols_) throw std::out_of_range("rank_of_columns: column index");
    mask |= std::uint64_t{1} << j;
  }
  return rank_of_columns(mask);
}

unsigned Gf2Matrix::rank() const {
  return gf2_rank(row_words_);
}

std::vector<std::uint64_t> Gf2Matrix::nullspace_basis() const {
  return gf2_nullspace(row_words_, cols_);
}

Gf2Matrix Gf2Matrix::row_reduced() const {
  std::vector<std::uint64_t> rows = row_words_;
  const unsigned r = gf2_eliminate(rows);
  Gf2Matrix out(r, cols_);
  for (unsigned i = 0; i < r; ++i) out.row_words_[i] = rows[i];
  return out;
}

bool Gf2Matrix::same_row_space(const Gf2Matrix& other) const {
  if (cols_ != other.cols_) return false;
  return row_reduced() == other.row_reduced();
}

std::string Gf2Matrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out += get(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

unsigned gf2_eliminate(std::vector<std::uint64_t>& rows) {
  // Reduced echelon over row bitmasks, pivoting on the lowest set bit.
  unsigned rank = 0;
  for (int bit = 0; bit < 64 && rank < rows.size(); ++bit) {
    const std::uint64_t probe = std::uint64_t{1} << bit;
    std::size_t pivot = rows.size();
    for (std::size_t i = rank; i < rows.size(); ++i) {
      if (rows[i] & probe) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && (rows[i] & probe)) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  // Every row past `rank` has been reduced to zero.
  rows.resize(rank);
  return rank;
}

unsigned gf2_rank(std::vector<std::uint64_t> rows) {
  return gf2_eliminate(rows);
}

std::vector<std::uint64_t> gf2_nullspace(const std::vector<std::uint64_t>& rows,
                                         std::size_t cols) {
  if (cols > Gf2Matrix::kMaxDim) {
    throw SizeLimitError("gf2_nullspace limited to 64 columns");
  }
  std::vector<std::uint64_t> reduced = rows;
  gf2_eliminate(reduced);

  // Pivot column of each reduced row = its lowest set bit.
  std::vector<int> pivot_of_col(cols, -1);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const int bit = std::countr_zero(reduced[i]);
    pivot_of_col[bit] = static_cast<int>(i);
  }

  std::vector<std::uint64_t> basis;
  for (std::size_t j = 0; j < cols; ++j) {
    if (pivot_of_col[j] >= 0) continue;  // pivot column, not free
    std::uint64_t v = std::uint64_t{1} << j;
    for (std::size_t p = 0; p < cols; ++p) {
      const int row = pivot_of_col[p];
      if (row >= 0 && ((reduced[row] >> j) & 1u)) v |= std::uint64_t{1} << p;
    }
    basis.push_back(v);
  }
  return basis;
}

}  // namespace matising
