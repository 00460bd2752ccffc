#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

// Point of the nonnegative integer lattice. operator< orders lexicographically
// by (x, y); dominates() is the componentwise partial order.
struct LatticePoint {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline bool dominates(LatticePoint hi, LatticePoint lo) {
    return lo.x <= hi.x && lo.y <= hi.y;
}

inline std::string to_string(LatticePoint p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

enum class Axis { X, Y };

// True iff the (possibly unsorted, possibly duplicated) point list is a
// downward-closed subset of the first quadrant.
inline bool is_lower(const std::vector<LatticePoint>& pts) {
    if (pts.empty()) return true;
    int max_x = 0;
    for (const auto& p : pts) {
        if (p.x < 0 || p.y < 0) return false;
        max_x = std::max(max_x, p.x);
    }
    std::vector<int> height(static_cast<std::size_t>(max_x) + 1, -1);
    for (const auto& p : pts) height[static_cast<std::size_t>(p.x)] = std::max(height[static_cast<std::size_t>(p.x)], p.y);
    std::vector<LatticePoint> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::size_t expected = 0;
    for (int i = 0; i <= max_x; ++i) {
        const int h = height[static_cast<std::size_t>(i)];
        if (h < 0) return false;                                  // column gap
        if (i > 0 && h > height[static_cast<std::size_t>(i) - 1]) return false;  // heights must not increase
        expected += static_cast<std::size_t>(h) + 1;
    }
    return sorted.size() == expected;  // every column filled from 0 up to its height
}

// Finite downward-closed subset of Z>=0 x Z>=0, stored as its column profile:
// heights_[i] = max{ j : (i,j) in the set }. Non-increasing heights over a
// contiguous column range is equivalent to downward closure.
class LowerSet {
public:
    LowerSet() = default;  // the empty set

    // heights[i] = n_i, the top y index of column i. Must be non-increasing, >= 0.
    static LowerSet from_columns(std::vector<int> heights) {
        for (std::size_t i = 0; i < heights.size(); ++i) {
            if (heights[i] < 0) throw InputError("column height must be >= 0");
            if (i > 0 && heights[i] > heights[i - 1]) throw InputError("column heights must be non-increasing");
        }
        LowerSet s;
        s.heights_ = std::move(heights);
        return s;
    }

    // R(u,v): the full box {0..u} x {0..v}.
    static LowerSet rectangle(int u, int v) {
        if (u < 0 || v < 0) throw InputError("rectangle corner must be in the first quadrant");
        return from_columns(std::vector<int>(static_cast<std::size_t>(u) + 1, v));
    }

    // T(n): {(i,j) : i + j <= n}.
    static LowerSet triangle(int n) {
        if (n < 0) throw InputError("triangle size must be >= 0");
        std::vector<int> h(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) h[static_cast<std::size_t>(i)] = n - i;
        return from_columns(std::move(h));
    }

    static LowerSet from_points(const std::vector<LatticePoint>& pts) {
        if (!is_lower(pts)) throw InputError("point set is not a lower set");
        if (pts.empty()) return LowerSet();
        int max_x = 0;
        for (const auto& p : pts) max_x = std::max(max_x, p.x);
        std::vector<int> h(static_cast<std::size_t>(max_x) + 1, 0);
        for (const auto& p : pts) h[static_cast<std::size_t>(p.x)] = std::max(h[static_cast<std::size_t>(p.x)], p.y);
        return from_columns(std::move(h));
    }

    // Union of the boxes R(c) over the given exterior corners. The corners
    // must form an antichain: sorted by x they must have strictly decreasing y.
    static LowerSet from_corners(std::vector<LatticePoint> corners) {
        if (corners.empty()) return LowerSet();
        std::sort(corners.begin(), corners.end());
        for (std::size_t i = 0; i < corners.size(); ++i) {
            if (corners[i].x < 0 || corners[i].y < 0) throw InputError("corner outside the first quadrant");
            if (i > 0) {
                if (corners[i].x == corners[i - 1].x || corners[i].y >= corners[i - 1].y)
                    throw InputError("corners must form an antichain");
            }
        }
        std::vector<int> h(static_cast<std::size_t>(corners.back().x) + 1, 0);
        std::size_t k = 0;
        for (int i = 0; i <= corners.back().x; ++i) {
            while (corners[k].x < i) ++k;  // first corner with x >= i has the max height
            h[static_cast<std::size_t>(i)] = corners[k].y;
        }
        return from_columns(std::move(h));
    }

    bool contains(LatticePoint p) const {
        return p.x >= 0 && p.y >= 0 && p.x < column_count() && p.y <= heights_[static_cast<std::size_t>(p.x)];
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (int h : heights_) n += static_cast<std::size_t>(h) + 1;
        return n;
    }

    bool empty() const { return heights_.empty(); }
    int column_count() const { return static_cast<int>(heights_.size()); }

    // (n_0, ..., n_s): top index per column.
    const std::vector<int>& y_profile() const { return heights_; }

    // (m_0, ..., m_t) with t = n_0 and m_j = max{ i : n_i >= j }.
    std::vector<int> x_profile() const {
        if (heights_.empty()) return {};
        std::vector<int> m(static_cast<std::size_t>(heights_[0]) + 1, 0);
        for (int j = 0; j <= heights_[0]; ++j) {
            int mx = 0;
            for (int i = 0; i < column_count(); ++i)
                if (heights_[static_cast<std::size_t>(i)] >= j) mx = i;
            m[static_cast<std::size_t>(j)] = mx;
        }
        return m;
    }

    std::vector<LatticePoint> points() const {
        std::vector<LatticePoint> out;
        out.reserve(size());
        for (int i = 0; i < column_count(); ++i)
            for (int j = 0; j <= heights_[static_cast<std::size_t>(i)]; ++j) out.push_back({i, j});
        return out;
    }

    LowerSet transposed() const {
        if (empty()) return LowerSet();
        return from_columns(x_profile());
    }

    bool subset_of(const LowerSet& other) const {
        if (column_count() > other.column_count()) return false;
        for (int i = 0; i < column_count(); ++i)
            if (heights_[static_cast<std::size_t>(i)] > other.heights_[static_cast<std::size_t>(i)]) return false;
        return true;
    }

    friend bool operator==(const LowerSet&, const LowerSet&) = default;

private:
    std::vector<int> heights_;
};

inline std::string to_string(const LowerSet& s) {
    std::string out = "S_y(";
    const auto& h = s.y_profile();
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(h[i]);
    }
    return out + ")";
}

// Boundary of a lower set: the points whose upper-right diagonal neighbour
// has left the set, split by which of the two straight neighbours remain.
//   exterior: neither (u,v+1) nor (u+1,v) in S     (the staircase corners)
//   xdir:     only (u+1,v) in S
//   ydir:     only (u,v+1) in S
//   interior: both in S                            (the inner corners)
struct BoundaryPartition {
    std::vector<LatticePoint> exterior;
    std::vector<LatticePoint> interior;
    std::vector<LatticePoint> xdir;
    std::vector<LatticePoint> ydir;

    std::vector<LatticePoint> all() const {
        std::vector<LatticePoint> out;
        out.insert(out.end(), exterior.begin(), exterior.end());
        out.insert(out.end(), interior.begin(), interior.end());
        out.insert(out.end(), xdir.begin(), xdir.end());
        out.insert(out.end(), ydir.begin(), ydir.end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline BoundaryPartition boundary_partition(const LowerSet& s) {
    if (s.empty()) throw InputError("boundary of the empty set is undefined");
    BoundaryPartition bp;
    for (const auto& p : s.points()) {
        if (s.contains({p.x + 1, p.y + 1})) continue;
        const bool up = s.contains({p.x, p.y + 1});
        const bool right = s.contains({p.x + 1, p.y});
        if (up && right) bp.interior.push_back(p);
        else if (right) bp.xdir.push_back(p);
        else if (up) bp.ydir.push_back(p);
        else bp.exterior.push_back(p);
    }
    return bp;  // each class inherits the lex order of points()
}

// Exterior corners sorted by decreasing x (equivalently increasing y).
inline std::vector<LatticePoint> exterior_corners(const LowerSet& s) {
    auto ext = boundary_partition(s).exterior;
    std::sort(ext.begin(), ext.end(), [](LatticePoint a, LatticePoint b) { return a.x > b.x; });
    return ext;
}

// S^{p,q} = { (a,b) : (a / (p+1), b / (q+1)) in S } (integer division):
// every point of S becomes a (p+1) x (q+1) block. On the column profile this
// reads: each column is repeated p+1 times with height n' = (q+1)(n+1) - 1.
inline LowerSet blow_up(const LowerSet& s, int p, int q) {
    if (p < 0 || q < 0) throw InputError("blow-up parameters must be >= 0");
    const auto& h = s.y_profile();
    std::vector<int> out;
    out.reserve(h.size() * static_cast<std::size_t>(p + 1));
    for (int n : h)
        for (int copy = 0; copy <= p; ++copy) out.push_back((q + 1) * (n + 1) - 1);
    return LowerSet::from_columns(std::move(out));
}

// L_{p,q} = { (a,b) : ((p+1)a, (q+1)b) in L }; the left inverse of blow_up.
inline LowerSet collapse(const LowerSet& s, int p, int q) {
    if (p < 0 || q < 0) throw InputError("collapse parameters must be >= 0");
    const auto& h = s.y_profile();
    std::vector<int> out;
    for (std::size_t col = 0; col < h.size(); col += static_cast<std::size_t>(p) + 1)
        out.push_back(h[col] / (q + 1));
    return LowerSet::from_columns(std::move(out));
}

// Number of points of S on the sparse grid { ((p+1)a, (q+1)b) }.
inline std::size_t grid_count(const LowerSet& s, int p, int q) {
    return collapse(s, p, q).size();
}

// The points of S on the sparse grid { ((p+1)a, (q+1)b) }, sorted lex.
inline std::vector<LatticePoint> grid_points(const LowerSet& s, int p, int q) {
    if (p < 0 || q < 0) throw InputError("grid parameters must be >= 0");
    std::vector<LatticePoint> out;
    const auto& h = s.y_profile();
    for (int i = 0; i < s.column_count(); i += p + 1)
        for (int j = 0; j <= h[static_cast<std::size_t>(i)]; j += q + 1) out.push_back({i, j});
    return out;
}

// Fiber of S over one coordinate value: slice(S, Y, i) = { j : (i,j) in S },
// slice(S, X, j) = { i : (i,j) in S }. Always a contiguous interval from 0;
// empty when the index misses the set.
inline std::vector<int> slice(const LowerSet& s, Axis axis, int index) {
    std::vector<int> out;
    if (index < 0) return out;
    if (axis == Axis::Y) {
        if (index >= s.column_count()) return out;
        for (int j = 0; j <= s.y_profile()[static_cast<std::size_t>(index)]; ++j) out.push_back(j);
    } else {
        for (int i = 0; i < s.column_count(); ++i)
            if (s.y_profile()[static_cast<std::size_t>(i)] >= index) out.push_back(i);
    }
    return out;
}

inline constexpr std::size_t kDefaultEnumLimit = 24;

// Visits every lower subset of S exactly once (the empty set included).
// Subsets correspond to non-increasing column-count vectors dominated by the
// profile of S, which is what the recursion walks.
inline void for_each_lower_subset(const LowerSet& s, const std::function<void(const LowerSet&)>& visit,
                                  std::size_t max_size = kDefaultEnumLimit) {
    if (s.size() > max_size)
        throw EnumerationLimitError("lower-subset enumeration bound exceeded: |S| = " + std::to_string(s.size()) +
                                    " > " + std::to_string(max_size));
    const auto& h = s.y_profile();
    std::vector<int> counts;  // points kept in each column so far
    const std::function<void(std::size_t, int)> rec = [&](std::size_t col, int prev) {
        if (col == h.size() || prev == 0) {
            std::vector<int> trimmed = counts;
            while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
            for (int& c : trimmed) --c;  // counts -> top indices
            visit(LowerSet::from_columns(std::move(trimmed)));
            return;
        }
        const int cap = std::min(prev, h[col] + 1);
        for (int c = cap; c >= 0; --c) {
            counts.push_back(c);
            if (c == 0) {
                rec(h.size(), 0);  // later columns are forced empty
            } else {
                rec(col + 1, c);
            }
            counts.pop_back();
        }
    };
    rec(0, static_cast<int>(s.size()) + 1);
}

inline std::vector<LowerSet> lower_subsets(const LowerSet& s, std::size_t max_size = kDefaultEnumLimit) {
    std::vector<LowerSet> out;
    for_each_lower_subset(s, [&](const LowerSet& l) { out.push_back(l); }, max_size);
    return out;
}

// Finite nonempty set of derivative orders (exponent pairs of d^{a+b}/dx^a dy^b).
// Stored sorted lex without duplicates.
class DerivativeSet {
public:
    explicit DerivativeSet(std::vector<LatticePoint> pts) : pts_(std::move(pts)) {
        for (const auto& p : pts_)
            if (p.x < 0 || p.y < 0) throw InputError("derivative orders must be >= 0");
        std::sort(pts_.begin(), pts_.end());
        pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
        if (pts_.empty()) throw InputError("derivative set must be nonempty");
    }

    static DerivativeSet from_lower(const LowerSet& s) {
        if (s.empty()) throw InputError("derivative set must be nonempty");
        return DerivativeSet(s.points());
    }

    const std::vector<LatticePoint>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }

    bool contains(LatticePoint p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

    bool is_lower() const { return birkhoff::is_lower(pts_); }

    // pre: is_lower().
    LowerSet to_lower() const { return LowerSet::from_points(pts_); }

    // The unique largest lower set contained in the set: the points whose full
    // dominated box lies inside.
    LowerSet max_lower_subset() const {
        std::vector<LatticePoint> kept;
        for (const auto& p : pts_) {
            bool boxed = true;
            for (int i = 0; i <= p.x && boxed; ++i)
                for (int j = 0; j <= p.y && boxed; ++j)
                    if (!contains({i, j})) boxed = false;
            if (boxed) kept.push_back(p);
        }
        return LowerSet::from_points(kept);
    }

    // Orders lying on the OX axis, as sorted x values.
    std::vector<int> axis_x() const {
        std::vector<int> out;
        for (const auto& p : pts_)
            if (p.y == 0) out.push_back(p.x);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Orders lying on the OY axis, as sorted y values.
    std::vector<int> axis_y() const {
        std::vector<int> out;
        for (const auto& p : pts_)
            if (p.x == 0) out.push_back(p.y);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<LatticePoint> mixed() const {
        std::vector<LatticePoint> out;
        for (const auto& p : pts_)
            if (p.x > 0 && p.y > 0) out.push_back(p);
        return out;
    }

    std::size_t mixed_count() const { return mixed().size(); }

    // Distinct x coordinates, sorted (the columns the set occupies).
    std::vector<int> column_positions() const {
        std::vector<int> out;
        for (const auto& p : pts_) out.push_back(p.x);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Sorted y values of the column at x.
    std::vector<int> fiber(int x) const {
        std::vector<int> out;
        for (const auto& p : pts_)
            if (p.x == x) out.push_back(p.y);
        std::sort(out.begin(), out.end());
        return out;
    }

    DerivativeSet transposed() const {
        std::vector<LatticePoint> out;
        out.reserve(pts_.size());
        for (const auto& p : pts_) out.push_back({p.y, p.x});
        return DerivativeSet(std::move(out));
    }

    std::size_t count_in(const LowerSet& s) const {
        std::size_t n = 0;
        for (const auto& p : pts_)
            if (s.contains(p)) ++n;
        return n;
    }

    friend bool operator==(const DerivativeSet&, const DerivativeSet&) = default;

private:
    std::vector<LatticePoint> pts_;
};

inline std::string to_string(const DerivativeSet& a) {
    std::string out = "{";
    for (std::size_t i = 0; i < a.points().size(); ++i) {
        if (i) out += ",";
        out += to_string(a.points()[i]);
    }
    return out + "}";
}

}  // namespace birkhoff
