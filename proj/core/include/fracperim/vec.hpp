#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

namespace fracperim {

// Point or direction in R^n for n <= 3.
class Vec {
public:
    static constexpr int kMaxDim = 3;

    Vec() = default;
    explicit Vec(int n);
    Vec(std::initializer_list<double> values);
    static Vec from(const std::vector<double>& values);
    static Vec unit(int n, int axis);

    int dim() const { return n_; }
    double& operator[](int i) { return c_[i]; }
    double operator[](int i) const { return c_[i]; }

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(double a);
    Vec& operator/=(double a);

    double dot(const Vec& o) const;
    double norm() const { return std::sqrt(dot(*this)); }
    double norm2() const { return dot(*this); }
    Vec normalized() const;

    // Coordinates with `axis` removed, and its inverse.
    Vec drop(int axis) const;
    static Vec insert(const Vec& reduced, int axis, double value);

    std::vector<double> to_vector() const;
    std::string str() const;

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator-(Vec a) { return a *= -1.0; }
    friend Vec operator*(Vec a, double k) { return a *= k; }
    friend Vec operator*(double k, Vec a) { return a *= k; }
    friend Vec operator/(Vec a, double k) { return a /= k; }
    friend bool operator==(const Vec& a, const Vec& b);

private:
    std::array<double, kMaxDim> c_{};
    int n_ = 0;
};

// Row-major n x n matrix.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n);
    static Mat identity(int n);
    static Mat rotation2(double angle);
    // Rotation by `angle` about the unit vector `axis` in R^3.
    static Mat rotation3(const Vec& axis, double angle);
    static Mat from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return n_; }
    double& operator()(int i, int j) { return a_[i * kStride + j]; }
    double operator()(int i, int j) const { return a_[i * kStride + j]; }

    Vec operator*(const Vec& v) const;
    Mat operator*(const Mat& m) const;
    Mat transpose() const;
    Vec transpose_times(const Vec& v) const;
    double orthogonality_defect() const;
    std::vector<std::vector<double>> to_rows() const;

private:
    static constexpr int kStride = 3;
    std::array<double, 9> a_{};
    int n_ = 0;
};

// Orthonormal completion: returns n-1 unit vectors orthogonal to unit `nrm` and to each other.
std::vector<Vec> orthonormal_complement(const Vec& nrm);

}  // namespace fracperim
