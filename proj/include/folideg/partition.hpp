#pragma once

// Integer partitions indexing Schubert classes. Parts are weakly
// decreasing positive integers; trailing zeros are trimmed on
// construction.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace folideg {

class Partition {
public:
    Partition() = default;

    Partition(std::initializer_list<int> p) : Partition(std::vector<int>(p)) {}

    explicit Partition(std::vector<int> p) : parts_(std::move(p)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw std::invalid_argument("Partition: negative part");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }

    static Partition single_row(int m) { return m == 0 ? Partition{} : Partition{std::vector<int>{m}}; }

    static Partition box(int k, int w) { return Partition(std::vector<int>(static_cast<std::size_t>(k), w)); }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int part(int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }

    long weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

    bool fits_box(int k, int w) const {
        return length() <= k && (parts_.empty() || parts_[0] <= w);
    }

    Partition conjugate() const {
        if (parts_.empty()) return {};
        std::vector<int> c(static_cast<std::size_t>(parts_[0]), 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j) c[static_cast<std::size_t>(j)]++;
        return Partition(std::move(c));
    }

    // Complement inside the k x w box; requires fits_box(k, w).
    Partition complement(int k, int w) const {
        if (!fits_box(k, w)) throw std::invalid_argument("Partition::complement: does not fit box");
        std::vector<int> c(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = w - part(k - 1 - i);
        return Partition(std::move(c));
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.weight() != b.weight()) return a.weight() < b.weight();
        return a.parts_ < b.parts_;
    }

    std::string str() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) os << ",";
            os << parts_[i];
        }
        os << ")";
        return os.str();
    }

private:
    std::vector<int> parts_;
};

// All partitions contained in the k x w box, by increasing weight.
inline std::vector<Partition> partitions_in_box(int k, int w) {
    std::vector<Partition> all;
    std::vector<int> stack;
    auto gen = [&](auto&& self, int row, int maxpart) -> void {
        all.push_back(Partition(std::vector<int>(stack)));
        if (row == k) return;
        for (int p = maxpart; p >= 1; --p) {
            stack.push_back(p);
            self(self, row + 1, p);
            stack.pop_back();
        }
    };
    gen(gen, 0, w);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace folideg
