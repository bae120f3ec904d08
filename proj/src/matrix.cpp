#include "rgg/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rgg {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("matrix order mismatch");
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const double aik = (*this)(i, k);
            for (std::size_t j = 0; j < n_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("matrix order mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("matrix order mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

Matrix Matrix::scaled(double factor) const {
    Matrix out = *this;
    for (double& v : out.data_) v *= factor;
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double Matrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
}

std::string Matrix::to_csv() const {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", (*this)(i, j));
            out += buf;
            out += (j + 1 < n_) ? ',' : '\n';
        }
    }
    return out;
}

Matrix Matrix::from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("CSV matrix is not square");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

nlohmann::json Matrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < n_; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < n_; ++j) row.push_back((*this)(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix Matrix::from_json(const nlohmann::json& j) {
    const std::size_t n = j.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (j[i].size() != n) throw std::invalid_argument("JSON matrix is not square");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

SymMatrix::SymMatrix(const Matrix& m) : m_(m.order()) {
    const std::size_t n = m.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            m_(i, j) = v;
            m_(j, i) = v;
        }
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
    return s;
}

SymMatrix SymMatrix::operator+(const SymMatrix& rhs) const {
    SymMatrix out = *this;
    out.m_ = out.m_ + rhs.m_;
    return out;
}

SymMatrix SymMatrix::scaled(double factor) const {
    SymMatrix out = *this;
    out.m_ = out.m_.scaled(factor);
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.order() != b.order()) throw std::invalid_argument("matrix order mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

std::vector<double> mat_vec(const Matrix& a, const std::vector<double>& v) {
    if (a.order() != v.size()) throw std::invalid_argument("matrix/vector mismatch");
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

}  // namespace rgg
