#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ppmkx {

using Bit = std::uint8_t;  // always 0 or 1
using BitVector = std::vector<Bit>;

// Private G-bit state of a party; becomes the shared key after synchronization.
using StateVector = BitVector;

// Dense rows x cols grid, column-major so per-unit columns are contiguous.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& at(int row, int col) { return cells_[static_cast<std::size_t>(col) * rows_ + row]; }
    const T& at(int row, int col) const {
        return cells_[static_cast<std::size_t>(col) * rows_ + row];
    }

    std::span<T> col(int col) {
        return {cells_.data() + static_cast<std::size_t>(col) * rows_,
                static_cast<std::size_t>(rows_)};
    }
    std::span<const T> col(int col) const {
        return {cells_.data() + static_cast<std::size_t>(col) * rows_,
                static_cast<std::size_t>(rows_)};
    }

    bool operator==(const Grid&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> cells_;
};

// Public per-round input bits x, one column per hidden unit.
using InputMatrix = Grid<Bit>;

// Public per-round index map into the state vector; entries are 1-based,
// in [1, G], duplicates allowed (drawn with replacement).
using PiMatrix = Grid<std::uint32_t>;

inline BitVector complement(const BitVector& bits) {
    BitVector out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ^ 1u;
    return out;
}

}  // namespace ppmkx
