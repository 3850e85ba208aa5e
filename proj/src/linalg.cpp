#include "effortcast/linalg.hpp"

#include <cmath>

#include "effortcast/errors.hpp"

namespace effortcast {

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (n != a.cols() || b.size() != n) {
        throw InvalidArgumentError("solve_linear needs a square system");
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a.at(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-12) throw SingularSystemError("singular system (pivot ~ 0)");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a.at(col, c), a.at(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        const double diag = a.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a.at(r, col) / diag;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a.at(r, c) -= factor * a.at(col, c);
            b[r] -= factor * b[col];
        }
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double sum = b[i];
        for (std::size_t c = i + 1; c < n; ++c) sum -= a.at(i, c) * x[c];
        x[i] = sum / a.at(i, i);
    }
    return x;
}

Matrix gram(const Matrix& x) {
    const std::size_t d = x.cols();
    Matrix g(d, d);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto row = x.row(r);
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = row[i];
            if (xi == 0.0) continue;
            for (std::size_t j = i; j < d; ++j) g.at(i, j) += xi * row[j];
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) g.at(i, j) = g.at(j, i);
    }
    return g;
}

std::vector<double> mul_transpose(const Matrix& x, std::span<const double> y) {
    std::vector<double> out(x.cols(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto row = x.row(r);
        const double yr = y[r];
        for (std::size_t c = 0; c < x.cols(); ++c) out[c] += row[c] * yr;
    }
    return out;
}

std::vector<double> mul(const Matrix& x, std::span<const double> w) {
    std::vector<double> out(x.rows(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) out[r] = dot(x.row(r), w);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace effortcast
