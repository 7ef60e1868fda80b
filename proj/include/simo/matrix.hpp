#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace simo {

// Column-major complex matrix; a column is one channel use across antennas.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    void resize(int rows, int cols) {
        rows_ = rows;
        cols_ = cols;
        data_.assign(static_cast<std::size_t>(rows) * cols, {});
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    std::complex<double>& operator()(int r, int c) {
        return data_[static_cast<std::size_t>(c) * rows_ + r];
    }
    const std::complex<double>& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(c) * rows_ + r];
    }

    std::span<std::complex<double>> col(int c) {
        return {data_.data() + static_cast<std::size_t>(c) * rows_,
                static_cast<std::size_t>(rows_)};
    }
    std::span<const std::complex<double>> col(int c) const {
        return {data_.data() + static_cast<std::size_t>(c) * rows_,
                static_cast<std::size_t>(rows_)};
    }

    std::span<const std::complex<double>> flat() const { return data_; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::complex<double>> data_;
};

inline double squared_norm(std::span<const std::complex<double>> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

}  // namespace simo
