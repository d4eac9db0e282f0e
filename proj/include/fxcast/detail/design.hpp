#pragma once

#include <fxcast/stat_tests/result.hpp>

#include <Eigen/Dense>

namespace fxcast::detail {

/// Constant and/or linear-trend columns for `rows` observations whose time index starts at first_t + 1.
inline Eigen::MatrixXd deterministic_columns(Deterministic d, long rows, long first_t = 0) {
    const long cols = d == Deterministic::none ? 0 : d == Deterministic::constant ? 1 : 2;
    Eigen::MatrixXd m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        if (cols >= 1) m(i, 0) = 1.0;
        if (cols >= 2) m(i, 1) = static_cast<double>(first_t + i + 1);
    }
    return m;
}

}  // namespace fxcast::detail
