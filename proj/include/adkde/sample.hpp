#ifndef ADKDE_SAMPLE_HPP
#define ADKDE_SAMPLE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace adkde {

//! Column-major n x d sample storage; contiguous columns feed the row-sum kernels.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::int64_t n, int d);

    std::int64_t rows() const { return n_; }
    int cols() const { return d_; }

    double* col(int i) { return storage_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_); }
    const double* col(int i) const { return storage_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_); }

    double at(std::int64_t row, int c) const { return col(c)[row]; }
    double& at(std::int64_t row, int c) { return col(c)[row]; }

    //! Throws unless n >= 1 and every entry is finite.
    void validate() const;

private:
    std::int64_t n_ = 0;
    int d_ = 0;
    std::vector<double> storage_;
};

//! CSV with one header row and d numeric columns, one observation per row.
SampleMatrix read_csv(const std::string& path);

} // namespace adkde

#endif
