#pragma once

// Integer partitions / Young diagrams with arm-leg queries. Arms and legs
// are evaluated for cells of *another* diagram as well, where they can be
// negative (a_empty(s) = -1 for any cell s in the first row, etc.); callers
// rely on that.

#include <cstdint>
#include <vector>

#include "qptau/mp.hpp"

namespace qptau {

class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0 || (i > 0 && parts_[i] > parts_[i - 1]))
                throw std::invalid_argument("parts must be weakly decreasing positives");
        }
        conj_ = conjugate_of(parts_);
        size_ = 0;
        for (int p : parts_) size_ += p;
    }

    const std::vector<int>& parts() const { return parts_; }
    const std::vector<int>& conjugate_parts() const { return conj_; }
    int size() const { return size_; }
    int rows() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    // 1-based cell (i, j); valid for any positive i, j
    int row_len(int i) const { return i <= rows() ? parts_[i - 1] : 0; }
    int col_len(int j) const { return j <= static_cast<int>(conj_.size()) ? conj_[j - 1] : 0; }

    // arm a(i,j) = lambda_i - j, leg l(i,j) = lambda'_j - i; negative outside
    int arm(int i, int j) const { return row_len(i) - j; }
    int leg(int i, int j) const { return col_len(j) - i; }
    int hook(int i, int j) const { return arm(i, j) + leg(i, j) + 1; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }

    template <class F>
    void for_cells(F&& f) const {
        for (int i = 1; i <= rows(); ++i)
            for (int j = 1; j <= parts_[i - 1]; ++j) f(i, j);
    }

  private:
    std::vector<int> parts_;
    std::vector<int> conj_;
    int size_ = 0;

    static std::vector<int> conjugate_of(const std::vector<int>& p) {
        std::vector<int> c;
        if (p.empty()) return c;
        c.assign(p[0], 0);
        for (int part : p)
            for (int j = 0; j < part; ++j) ++c[j];
        return c;
    }
};

// All partitions of n, reverse-lexicographic (largest first part first):
// 4 -> [4], [3,1], [2,2], [2,1,1], [1,1,1,1].
inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw NegativeSize();
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int max_part) -> void {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rem, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// cached per-size lists (partition enumeration shows up in every block sum)
inline const std::vector<Partition>& partitions_cached(int n) {
    if (n < 0) throw NegativeSize();
    static std::vector<std::vector<Partition>> cache;
    while (static_cast<int>(cache.size()) <= n) cache.push_back(partitions_of(static_cast<int>(cache.size())));
    return cache[static_cast<std::size_t>(n)];
}

}  // namespace qptau
