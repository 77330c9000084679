#pragma once

// Sparse echelon forms over F_p and Z. A row is a list of (column, value)
// pairs sorted by column; column 0 is the most significant, so the first
// entry of a nonzero row is its leading term.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cobw/numth.hpp"

namespace cobw::linalg {

using FpRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
using ZRow = std::vector<std::pair<std::uint32_t, numth::Integer>>;

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

// a - c * b over F_p.
FpRow axpy(const FpRow& a, std::uint32_t c, const FpRow& b, std::uint32_t p);

class FpEchelon {
public:
    FpEchelon(std::uint32_t p, std::size_t columns);

    std::uint32_t prime() const { return p_; }
    std::size_t columns() const { return pivot_.size(); }
    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::uint32_t column) const { return pivot_[column] >= 0; }

    // Reduces row by the current pivots. If it stays nonzero it becomes a
    // new pivot row and true is returned. Otherwise false is returned and,
    // when tag tracking is used, *dependency receives the tag combination
    // that produced the zero row.
    bool insert(FpRow row, FpRow tag = {}, FpRow* dependency = nullptr);
    FpRow reduce(FpRow row) const;
    // Forget tag combinations recorded so far (pivots stay).
    void clear_tags();

    const std::vector<FpRow>& rows() const { return rows_; }

private:
    std::uint32_t p_;
    std::vector<std::int32_t> pivot_;
    std::vector<FpRow> rows_;
    std::vector<FpRow> tags_;
};

// Lattice basis of the Z-span of the inserted rows, with positive leading
// coefficients. Unimodular gcd steps replace a pivot when leading
// coefficients do not divide each other.
class ZEchelon {
public:
    explicit ZEchelon(std::size_t columns);

    void insert(ZRow row);
    std::size_t rank() const;
    std::vector<ZRow> rows() const;

private:
    std::vector<std::optional<ZRow>> pivot_;
};

} // namespace cobw::linalg
