#include "posdiv/qds.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

#include <boost/rational.hpp>

#include "posdiv/bits.hpp"

namespace posdiv {

std::string Estimate::to_string() const
{
    return to_decimal(raw, frac_bits);
}

namespace {

// Estimate rescaled to 1/16 units.
int sixteenths(Estimate y_hat)
{
    if (y_hat.frac_bits < 0 || y_hat.frac_bits > 4) {
        throw SelectionError("estimate resolution must be between 1 and 1/16");
    }
    return y_hat.raw * (1 << (4 - y_hat.frac_bits));
}

[[noreturn]] void out_of_range(const char* which, Estimate y_hat)
{
    throw SelectionError(std::string(which) + ": estimate " + y_hat.to_string() +
                         " outside the selection intervals (residual bound breached)");
}

}  // namespace

int select_r2_nonredundant(Estimate y_hat)
{
    const int v = sixteenths(y_hat);
    if (v >= 8) {
        return 1;
    }
    if (v >= -8) {
        return 0;
    }
    return -1;
}

int select_r2_carrysave(Estimate y_hat)
{
    const int v = sixteenths(y_hat);
    if (v >= 0 && v <= 24) {
        return 1;
    }
    if (v == -8) {
        return 0;
    }
    if (v >= -40 && v <= -16) {
        return -1;
    }
    out_of_range("radix-2 carry-save selection", y_hat);
}

int select_r4_scaled(Estimate y_hat)
{
    const int v = sixteenths(y_hat);
    if (v >= 24 && v <= 48) {
        return 2;
    }
    if (v >= 8 && v <= 22) {
        return 1;
    }
    if (v >= -8 && v <= 6) {
        return 0;
    }
    if (v >= -26 && v <= -10) {
        return -1;
    }
    if (v >= -52 && v <= -28) {
        return -2;
    }
    out_of_range("radix-4 scaled selection", y_hat);
}

int SelectionTable::select(int row, int y_hat_raw) const
{
    if (row < 0 || row >= kR4DivisorRows) {
        throw SelectionError("divisor row out of range");
    }
    int digit = -2;
    for (int bound : bounds[static_cast<std::size_t>(row)]) {
        if (y_hat_raw >= bound) {
            ++digit;
        }
    }
    return digit;
}

int divisor_row(std::uint64_t significand, int significand_frac_bits)
{
    const std::uint64_t frac = significand & ((std::uint64_t{1} << significand_frac_bits) - 1);
    if (significand_frac_bits >= 4) {
        return static_cast<int>(frac >> (significand_frac_bits - 4));
    }
    return static_cast<int>(frac << (4 - significand_frac_bits));
}

namespace {

using Q = boost::rational<std::int64_t>;

struct Point {
    Q d;
    Q y;
};

// Half-plane a*d + b*y <= 0.
struct HalfPlane {
    std::int64_t a;
    std::int64_t b;

    Q eval(const Point& p) const { return Q(a) * p.d + Q(b) * p.y; }
};

std::vector<Point> clip(const std::vector<Point>& poly, const HalfPlane& h)
{
    std::vector<Point> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % n];
        const Q fc = h.eval(cur);
        const Q fn = h.eval(nxt);
        if (fc <= 0) {
            out.push_back(cur);
        }
        if ((fc < 0 && fn > 0) || (fc > 0 && fn < 0)) {
            const Q t = fc / (fc - fn);
            out.push_back(Point{cur.d + t * (nxt.d - cur.d), cur.y + t * (nxt.y - cur.y)});
        }
    }
    return out;
}

// Closure of the reachable (d, y) set for one cell, in units of 1/32.
// y = 4w is reachable when |y| <= 8d/3; the carry-save estimate underestimates
// y by less than two 1/16 ulps.
std::vector<Point> cell_polygon(int row, int y_hat_raw)
{
    const std::int64_t d_lo = 16 + row;
    const std::int64_t d_hi = d_lo + 1;
    const std::int64_t y_lo = 2 * static_cast<std::int64_t>(y_hat_raw);
    const std::int64_t y_hi = y_lo + 4;
    std::vector<Point> poly{{Q(d_lo), Q(y_lo)}, {Q(d_hi), Q(y_lo)}, {Q(d_hi), Q(y_hi)}, {Q(d_lo), Q(y_hi)}};
    poly = clip(poly, HalfPlane{-8, 3});   // 3y <= 8d
    if (!poly.empty()) {
        poly = clip(poly, HalfPlane{-8, -3});  // -3y <= 8d
    }
    return poly;
}

// |y - k d| <= 2d/3 at every vertex (hence on the whole convex cell).
bool digit_contains(const std::vector<Point>& poly, int k)
{
    const HalfPlane upper{-(3 * k + 2), 3};   // 3y - (3k+2)d <= 0
    const HalfPlane lower{3 * k - 2, -3};     // (3k-2)d - 3y <= 0
    return std::all_of(poly.begin(), poly.end(),
                       [&](const Point& p) { return upper.eval(p) <= 0 && lower.eval(p) <= 0; });
}

std::string cell_name(int row, int y_hat_raw)
{
    return "divisor row " + std::to_string(row) + " [" + to_decimal(16 + row, 5) + ", " +
           to_decimal(17 + row, 5) + "), estimate " + to_decimal(y_hat_raw, 4);
}

}  // namespace

SelectionTable build_r4_table()
{
    SelectionTable table;
    for (int row = 0; row < kR4DivisorRows; ++row) {
        std::array<std::optional<int>, kR4EstimateCells> chosen{};
        for (int c = 0; c < kR4EstimateCells; ++c) {
            const int y = kR4EstimateMin + c;
            const auto poly = cell_polygon(row, y);
            if (poly.empty()) {
                continue;
            }
            int lo = 3;
            int hi = -3;
            for (int k = -2; k <= 2; ++k) {
                if (digit_contains(poly, k)) {
                    lo = std::min(lo, k);
                    hi = std::max(hi, k);
                }
            }
            if (lo > hi) {
                throw SelectionError("no bound-preserving digit for " + cell_name(row, y));
            }
            // Smallest |k| among the bound-preserving digits.
            chosen[static_cast<std::size_t>(c)] = std::clamp(0, lo, hi);
        }

        // Unreachable cells extend the extreme digits outward.
        std::array<int, kR4EstimateCells> digits{};
        for (int c = 0; c < kR4EstimateCells; ++c) {
            const int y = kR4EstimateMin + c;
            digits[static_cast<std::size_t>(c)] = chosen[static_cast<std::size_t>(c)].value_or(y < 0 ? -2 : 2);
        }
        for (int c = 1; c < kR4EstimateCells; ++c) {
            if (digits[static_cast<std::size_t>(c)] < digits[static_cast<std::size_t>(c - 1)]) {
                throw SelectionError("selection digits not monotone at " + cell_name(row, kR4EstimateMin + c));
            }
        }
        for (int k = -1; k <= 2; ++k) {
            int bound = kR4EstimateMin + kR4EstimateCells;
            for (int c = 0; c < kR4EstimateCells; ++c) {
                if (digits[static_cast<std::size_t>(c)] >= k) {
                    bound = kR4EstimateMin + c;
                    break;
                }
            }
            table.bounds[static_cast<std::size_t>(row)][static_cast<std::size_t>(k + 1)] = bound;
        }
    }
    return table;
}

ContainmentReport verify_r4_table(const SelectionTable& table)
{
    ContainmentReport report;
    for (int row = 0; row < kR4DivisorRows; ++row) {
        for (int c = 0; c < kR4EstimateCells; ++c) {
            const int y = kR4EstimateMin + c;
            ++report.cells_checked;
            const auto poly = cell_polygon(row, y);
            if (poly.empty()) {
                continue;
            }
            ++report.reachable_cells;
            const int k = table.select(row, y);
            if (!digit_contains(poly, k) && report.ok) {
                report.ok = false;
                report.first_failure = cell_name(row, y) + " selects " + std::to_string(k);
            }
        }
    }
    return report;
}

std::string SelectionTable::serialize() const
{
    std::ostringstream os;
    os << "# radix-4 quotient-digit selection, digit set {-2,...,2}, rho = 2/3\n";
    os << "# rows: divisor d in [d_lo, d_lo + 1/32) on [1/2, 1), indexed by the top 4 fraction bits\n";
    os << "# estimate: 4w truncated to 3 integer + 4 fraction bits (carry-save)\n";
    os << "# digit k is selected when m_k <= estimate < m_(k+1)\n";
    os << "row  d_lo       m_-1      m_0       m_1       m_2\n";
    char buf[128];
    for (int row = 0; row < kR4DivisorRows; ++row) {
        const auto& b = bounds[static_cast<std::size_t>(row)];
        std::snprintf(buf, sizeof buf, "%-4d %-10s %-9s %-9s %-9s %s\n", row, to_decimal(16 + row, 5).c_str(),
                      to_decimal(b[0], 4).c_str(), to_decimal(b[1], 4).c_str(), to_decimal(b[2], 4).c_str(),
                      to_decimal(b[3], 4).c_str());
        os << buf;
    }
    os << "# digit matrix: columns are estimates -4.0000 .. 3.9375 in steps of 1/16\n";
    for (int row = 0; row < kR4DivisorRows; ++row) {
        std::snprintf(buf, sizeof buf, "%2d:", row);
        os << buf;
        for (int c = 0; c < kR4EstimateCells; ++c) {
            std::snprintf(buf, sizeof buf, "%3d", select(row, kR4EstimateMin + c));
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

std::uint64_t fnv1a64(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace posdiv
