#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace rgg {

/// Dense row-major square matrix of doubles.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t order() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<double>& data() const { return data_; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(double factor) const;

    double max_abs() const;
    double frobenius_norm() const;
    double trace() const;

    std::string to_csv() const;  // one row per line, "%.17g"
    static Matrix from_csv(const std::string& text);
    nlohmann::json to_json() const;  // arrays-of-arrays
    static Matrix from_json(const nlohmann::json& j);

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Symmetric matrix; the constructor symmetrizes so entries (i,j) and (j,i)
/// are bitwise identical as stored.
class SymMatrix {
  public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n, double fill = 0.0) : m_(n, fill) {}
    explicit SymMatrix(const Matrix& m);

    static SymMatrix identity(std::size_t n);

    std::size_t order() const { return m_.order(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double value) {
        m_(i, j) = value;
        m_(j, i) = value;
    }

    const Matrix& as_matrix() const { return m_; }
    double max_abs() const { return m_.max_abs(); }
    double trace() const { return m_.trace(); }

    SymMatrix operator+(const SymMatrix& rhs) const;
    SymMatrix scaled(double factor) const;

  private:
    Matrix m_;
};

/// Max-abs entry of A - B; the reconstruction-residual metric used throughout.
double max_abs_diff(const Matrix& a, const Matrix& b);

std::vector<double> mat_vec(const Matrix& a, const std::vector<double>& v);

}  // namespace rgg
