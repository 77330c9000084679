#include "cobw/linalg.hpp"

#include <stdexcept>

namespace cobw::linalg {

using numth::Integer;

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        const std::int64_t quotient = r / new_r;
        t = std::exchange(new_t, t - quotient * new_t);
        r = std::exchange(new_r, r - quotient * new_r);
    }
    if (r != 1)
        throw std::domain_error("inverse_mod: element is not invertible");
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

FpRow axpy(const FpRow& a, std::uint32_t c, const FpRow& b, std::uint32_t p)
{
    FpRow out;
    out.reserve(a.size() + b.size());
    const std::uint64_t neg = (p - c % p) % p;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            const auto v = static_cast<std::uint32_t>(neg * j->second % p);
            if (v != 0)
                out.emplace_back(j->first, v);
            ++j;
        } else {
            const auto v = static_cast<std::uint32_t>((i->second + neg * j->second) % p);
            if (v != 0)
                out.emplace_back(i->first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

FpEchelon::FpEchelon(std::uint32_t p, std::size_t columns)
    : p_(p), pivot_(columns, -1)
{
}

bool FpEchelon::insert(FpRow row, FpRow tag, FpRow* dependency)
{
    while (!row.empty()) {
        const auto lead = row.front();
        const auto at = pivot_[lead.first];
        if (at < 0)
            break;
        const auto& prow = rows_[static_cast<std::size_t>(at)];
        // pivot rows are monic
        row = axpy(row, lead.second, prow, p_);
        const auto& ptag = tags_[static_cast<std::size_t>(at)];
        if (!ptag.empty())
            tag = axpy(tag, lead.second, ptag, p_);
    }
    if (row.empty()) {
        if (dependency)
            *dependency = std::move(tag);
        return false;
    }
    const auto inv = static_cast<std::uint64_t>(inverse_mod(row.front().second, p_));
    for (auto& [col, v] : row)
        v = static_cast<std::uint32_t>(v * inv % p_);
    for (auto& [col, v] : tag)
        v = static_cast<std::uint32_t>(v * inv % p_);
    pivot_[row.front().first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    tags_.push_back(std::move(tag));
    return true;
}

FpRow FpEchelon::reduce(FpRow row) const
{
    // full reduction: every pivot column is cleared, not only the leading one
    FpRow out;
    while (!row.empty()) {
        const auto lead = row.front();
        const auto at = pivot_[lead.first];
        if (at < 0) {
            out.push_back(lead);
            row.erase(row.begin());
            continue;
        }
        row = axpy(row, lead.second, rows_[static_cast<std::size_t>(at)], p_);
    }
    return out;
}

void FpEchelon::clear_tags()
{
    for (auto& t : tags_)
        t.clear();
}

ZEchelon::ZEchelon(std::size_t columns)
    : pivot_(columns)
{
}

namespace {

ZRow combine(const Integer& s, const ZRow& a, const Integer& t, const ZRow& b)
{
    ZRow out;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        std::uint32_t col;
        Integer v;
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            col = i->first;
            v = s * i->second;
            ++i;
        } else if (i == a.end() || j->first < i->first) {
            col = j->first;
            v = t * j->second;
            ++j;
        } else {
            col = i->first;
            v = s * i->second + t * j->second;
            ++i;
            ++j;
        }
        if (v != 0)
            out.emplace_back(col, std::move(v));
    }
    return out;
}

} // namespace

void ZEchelon::insert(ZRow row)
{
    while (!row.empty()) {
        const std::uint32_t col = row.front().first;
        auto& slot = pivot_[col];
        if (!slot) {
            if (row.front().second < 0)
                for (auto& [c, v] : row)
                    v = -v;
            slot = std::move(row);
            return;
        }
        const Integer a = slot->front().second;
        const Integer b = row.front().second;
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
            row = combine(1, row, -(b / a), *slot);
            continue;
        }
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        // [s t; b/g -a/g] has determinant -1
        ZRow new_pivot = combine(s, *slot, t, row);
        ZRow rest = combine(b / g, *slot, -(a / g), row);
        if (new_pivot.front().second < 0)
            for (auto& [c, v] : new_pivot)
                v = -v;
        slot = std::move(new_pivot);
        row = std::move(rest);
    }
}

std::size_t ZEchelon::rank() const
{
    std::size_t r = 0;
    for (const auto& s : pivot_)
        r += s.has_value();
    return r;
}

std::vector<ZRow> ZEchelon::rows() const
{
    std::vector<ZRow> out;
    for (const auto& s : pivot_)
        if (s)
            out.push_back(*s);
    return out;
}

} // namespace cobw::linalg
