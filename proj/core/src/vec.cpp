#include "fracperim/vec.hpp"

#include <sstream>

#include "fracperim/error.hpp"

namespace fracperim {

Vec::Vec(int n) : n_(n) {
    require(n >= 1 && n <= kMaxDim, ErrorCode::dimension_mismatch, "dimension must be 1..3");
}

Vec::Vec(std::initializer_list<double> values) : n_(static_cast<int>(values.size())) {
    require(n_ >= 1 && n_ <= kMaxDim, ErrorCode::dimension_mismatch, "dimension must be 1..3");
    int i = 0;
    for (double v : values) c_[i++] = v;
}

Vec Vec::from(const std::vector<double>& values) {
    Vec v(static_cast<int>(values.size()));
    for (int i = 0; i < v.n_; ++i) v.c_[i] = values[i];
    return v;
}

Vec Vec::unit(int n, int axis) {
    Vec v(n);
    require(axis >= 0 && axis < n, ErrorCode::invalid_argument, "axis out of range");
    v.c_[axis] = 1.0;
    return v;
}

Vec& Vec::operator+=(const Vec& o) {
    for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
    return *this;
}

Vec& Vec::operator*=(double a) {
    for (int i = 0; i < n_; ++i) c_[i] *= a;
    return *this;
}

Vec& Vec::operator/=(double a) {
    for (int i = 0; i < n_; ++i) c_[i] /= a;
    return *this;
}

double Vec::dot(const Vec& o) const {
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += c_[i] * o.c_[i];
    return acc;
}

Vec Vec::normalized() const {
    const double len = norm();
    require(len > 0.0, ErrorCode::invalid_argument, "cannot normalize the zero vector");
    return *this / len;
}

Vec Vec::drop(int axis) const {
    require(n_ >= 2, ErrorCode::dimension_mismatch, "cannot drop a coordinate from R^1");
    Vec r(n_ - 1);
    for (int i = 0, k = 0; i < n_; ++i)
        if (i != axis) r.c_[k++] = c_[i];
    return r;
}

Vec Vec::insert(const Vec& reduced, int axis, double value) {
    Vec r(reduced.n_ + 1);
    for (int i = 0, k = 0; i < r.n_; ++i) r.c_[i] = (i == axis) ? value : reduced.c_[k++];
    return r;
}

std::vector<double> Vec::to_vector() const { return {c_.begin(), c_.begin() + n_}; }

std::string Vec::str() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (int i = 0; i < n_; ++i) os << (i ? "," : "") << c_[i];
    os << ')';
    return os.str();
}

bool operator==(const Vec& a, const Vec& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

Mat::Mat(int n) : n_(n) {
    require(n >= 1 && n <= 3, ErrorCode::dimension_mismatch, "dimension must be 1..3");
}

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::rotation2(double angle) {
    Mat m(2);
    m(0, 0) = std::cos(angle);
    m(0, 1) = -std::sin(angle);
    m(1, 0) = std::sin(angle);
    m(1, 1) = std::cos(angle);
    return m;
}

Mat Mat::rotation3(const Vec& axis, double angle) {
    require(axis.dim() == 3, ErrorCode::dimension_mismatch, "rotation3 needs a 3-vector");
    const Vec k = axis.normalized();
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    Mat m(3);
    m(0, 0) = c + k[0] * k[0] * t;
    m(0, 1) = k[0] * k[1] * t - k[2] * s;
    m(0, 2) = k[0] * k[2] * t + k[1] * s;
    m(1, 0) = k[1] * k[0] * t + k[2] * s;
    m(1, 1) = c + k[1] * k[1] * t;
    m(1, 2) = k[1] * k[2] * t - k[0] * s;
    m(2, 0) = k[2] * k[0] * t - k[1] * s;
    m(2, 1) = k[2] * k[1] * t + k[0] * s;
    m(2, 2) = c + k[2] * k[2] * t;
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
    Mat m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n_; ++i) {
        require(static_cast<int>(rows[i].size()) == m.n_, ErrorCode::dimension_mismatch,
                "matrix must be square");
        for (int j = 0; j < m.n_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec Mat::operator*(const Vec& v) const {
    require(v.dim() == n_, ErrorCode::dimension_mismatch, "matrix-vector dimension mismatch");
    Vec r(n_);
    for (int i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

Mat Mat::operator*(const Mat& m) const {
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n_; ++k) acc += (*this)(i, k) * m(k, j);
            r(i, j) = acc;
        }
    return r;
}

Mat Mat::transpose() const {
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
    return r;
}

Vec Mat::transpose_times(const Vec& v) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += (*this)(j, i) * v[j];
        r[i] = acc;
    }
    return r;
}

double Mat::orthogonality_defect() const {
    const Mat p = transpose() * (*this);
    double worst = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) worst = std::max(worst, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

std::vector<std::vector<double>> Mat::to_rows() const {
    std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
    return rows;
}

std::vector<Vec> orthonormal_complement(const Vec& nrm) {
    const int n = nrm.dim();
    std::vector<Vec> out;
    if (n == 1) return out;
    if (n == 2) {
        out.push_back(Vec{-nrm[1], nrm[0]});
        return out;
    }
    // Gram-Schmidt against the coordinate axis least aligned with nrm.
    int axis = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(nrm[i]) < std::abs(nrm[axis])) axis = i;
    Vec e = Vec::unit(3, axis);
    Vec t1 = (e - nrm * nrm.dot(e)).normalized();
    Vec t2{nrm[1] * t1[2] - nrm[2] * t1[1], nrm[2] * t1[0] - nrm[0] * t1[2], nrm[0] * t1[1] - nrm[1] * t1[0]};
    out.push_back(t1);
    out.push_back(t2);
    return out;
}

}  // namespace fracperim
