#ifndef FPP_FENWICK_HPP
#define FPP_FENWICK_HPP

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

namespace fpp {

/// Binary indexed tree over non-negative weights with inverse-CDF search.
template <typename T>
class Fenwick {
public:
    Fenwick() = default;

    explicit Fenwick(std::size_t size) : tree_(size + 1, T{}) {}

    explicit Fenwick(std::span<const T> values) : tree_(values.size() + 1, T{}) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            tree_[i + 1] += values[i];
            const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
            if (parent < tree_.size()) tree_[parent] += tree_[i + 1];
        }
    }

    std::size_t size() const { return tree_.size() - 1; }

    void add(std::size_t pos, T delta) {
        for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    }

    /// Sum of positions [0, count).
    T prefix(std::size_t count) const {
        T sum{};
        for (std::size_t i = count; i > 0; i -= i & (~i + 1)) sum += tree_[i];
        return sum;
    }

    T total() const { return prefix(size()); }

    /// Smallest position p with prefix(p + 1) > target. Requires 0 <= target < total().
    std::size_t find(T target) const {
        std::size_t pos = 0;
        std::size_t step = size() == 0 ? 0 : std::bit_floor(size());
        for (; step > 0; step >>= 1) {
            const std::size_t next = pos + step;
            if (next < tree_.size() && tree_[next] <= target) {
                pos = next;
                target -= tree_[next];
            }
        }
        return pos < size() ? pos : size() - 1;
    }

private:
    std::vector<T> tree_;
};

}  // namespace fpp

#endif
