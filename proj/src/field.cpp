#include "tentlab/field.hpp"

#include "tentlab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tentlab {

int component_count(Rank rank, int dim) noexcept {
    switch (rank) {
        case Rank::scalar: return 1;
        case Rank::vector: return dim;
        case Rank::tensor: return dim * dim;
    }
    return 1;
}

const char* rank_name(Rank rank) noexcept {
    switch (rank) {
        case Rank::scalar: return "scalar";
        case Rank::vector: return "vector";
        case Rank::tensor: return "tensor";
    }
    return "?";
}

Field::Field(Grid grid, Rank rank)
    : grid_(std::move(grid)),
      rank_(rank),
      coeffs_(static_cast<std::size_t>(component_count(rank, grid_.dim())), std::vector<cplx>(grid_.points())) {}

void Field::require_same_shape(const Field& other, const char* where) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
    if (rank_ != other.rank_) throw std::invalid_argument(std::string(where) + ": rank mismatch");
}

Field& Field::operator+=(const Field& other) { return axpy(1.0, other); }
Field& Field::operator-=(const Field& other) { return axpy(-1.0, other); }

Field& Field::operator*=(double a) {
    for (auto& comp : coeffs_)
        for (auto& c : comp) c *= a;
    return *this;
}

Field& Field::axpy(double a, const Field& other) {
    require_same_shape(other, "field arithmetic");
    for (std::size_t c = 0; c < coeffs_.size(); ++c) {
        auto& dst = coeffs_[c];
        const auto& src = other.coeffs_[c];
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += a * src[k];
    }
    return *this;
}

double Field::l2_norm2() const {
    double sum = 0.0;
    for (const auto& comp : coeffs_)
        for (const auto& c : comp) sum += std::norm(c);
    return sum * grid_.volume();
}

double Field::l2_norm() const { return std::sqrt(l2_norm2()); }

double Field::max_coeff() const {
    double m = 0.0;
    for (const auto& comp : coeffs_)
        for (const auto& c : comp) m = std::max(m, std::abs(c));
    return m;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

double inner(const Field& a, const Field& b) {
    a.require_same_shape(b, "inner");
    double sum = 0.0;
    for (int c = 0; c < a.components(); ++c) {
        auto x = a.coeffs(c);
        auto y = b.coeffs(c);
        for (std::size_t k = 0; k < x.size(); ++k) sum += (x[k] * std::conj(y[k])).real();
    }
    return sum * a.grid().volume();
}

PhysicalField::PhysicalField(Grid g, Rank r)
    : grid(std::move(g)),
      rank(r),
      values(static_cast<std::size_t>(component_count(r, grid.dim())), std::vector<double>(grid.points())) {}

double PhysicalField::magnitude(std::size_t point) const {
    double sum = 0.0;
    for (const auto& comp : values) sum += comp[point] * comp[point];
    return std::sqrt(sum);
}

std::vector<double> PhysicalField::magnitudes() const {
    std::vector<double> out(grid.points());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = magnitude(x);
    return out;
}

double PhysicalField::sup_norm() const {
    double m = 0.0;
    for (std::size_t x = 0; x < grid.points(); ++x) m = std::max(m, magnitude(x));
    return m;
}

PhysicalField to_physical(const Field& field) {
    PhysicalField out(field.grid(), field.rank());
    std::vector<cplx> buffer(field.grid().points());
    for (int c = 0; c < field.components(); ++c) {
        fft_backward(field.grid(), field.coeffs(c), buffer);
        auto& dst = out.values[static_cast<std::size_t>(c)];
        for (std::size_t k = 0; k < buffer.size(); ++k) dst[k] = buffer[k].real();
    }
    return out;
}

Field to_spectral(const PhysicalField& field) {
    Field out(field.grid, field.rank);
    std::vector<cplx> buffer(field.grid.points());
    for (int c = 0; c < out.components(); ++c) {
        const auto& src = field.values[static_cast<std::size_t>(c)];
        if (src.size() != field.grid.points()) throw std::invalid_argument("transform: component size mismatch");
        std::copy(src.begin(), src.end(), buffer.begin());
        fft_forward(field.grid, buffer, out.coeffs(c));
    }
    enforce_hermitian(out);
    return out;
}

double max_imaginary(const Field& field) {
    std::vector<cplx> buffer(field.grid().points());
    double m = 0.0;
    for (int c = 0; c < field.components(); ++c) {
        fft_backward(field.grid(), field.coeffs(c), buffer);
        for (const auto& z : buffer) m = std::max(m, std::abs(z.imag()));
    }
    return m;
}

void enforce_hermitian(Field& field) {
    const auto& conj = field.grid().waves().conj;
    for (int c = 0; c < field.components(); ++c) {
        auto data = field.coeffs(c);
        for (std::size_t k = 0; k < data.size(); ++k) {
            const std::size_t j = conj[k];
            if (j < k) continue;
            if (j == k) {
                data[k] = cplx(data[k].real(), 0.0);
                continue;
            }
            const cplx avg = 0.5 * (data[k] + std::conj(data[j]));
            data[k] = avg;
            data[j] = std::conj(avg);
        }
    }
}

Field differentiate(const Field& field, const DiffMode& mode) {
    const Grid& grid = field.grid();
    const int n = grid.dim();
    const auto& kd = grid.waves().kd;
    const std::size_t points = grid.points();
    const cplx I(0.0, 1.0);

    if (const auto* p = std::get_if<Partial>(&mode)) {
        if (p->axis < 0 || p->axis >= n) throw std::invalid_argument("differentiate: axis out of range");
        Field out(grid, field.rank());
        for (int c = 0; c < field.components(); ++c) {
            auto src = field.coeffs(c);
            auto dst = out.coeffs(c);
            for (std::size_t k = 0; k < points; ++k) dst[k] = I * kd[k][p->axis] * src[k];
        }
        return out;
    }
    if (std::holds_alternative<Gradient>(mode)) {
        if (field.rank() == Rank::tensor) throw std::invalid_argument("differentiate: gradient of a tensor field");
        const Rank out_rank = field.rank() == Rank::scalar ? Rank::vector : Rank::tensor;
        Field out(grid, out_rank);
        for (int j = 0; j < field.components(); ++j) {
            auto src = field.coeffs(j);
            for (int l = 0; l < n; ++l) {
                auto dst = out.coeffs(j * n + l);
                for (std::size_t k = 0; k < points; ++k) dst[k] = I * kd[k][l] * src[k];
            }
        }
        return out;
    }
    if (field.rank() == Rank::scalar) throw std::invalid_argument("differentiate: divergence of a scalar field");
    const Rank out_rank = field.rank() == Rank::vector ? Rank::scalar : Rank::vector;
    Field out(grid, out_rank);
    const int rows = field.rank() == Rank::vector ? 1 : n;
    for (int j = 0; j < rows; ++j) {
        auto dst = out.coeffs(j);
        for (int l = 0; l < n; ++l) {
            auto src = field.coeffs(j * n + l);
            for (std::size_t k = 0; k < points; ++k) dst[k] += I * kd[k][l] * src[k];
        }
    }
    return out;
}

Field laplacian(const Field& field) {
    Field out = field;
    const auto& k2 = field.grid().waves().k2;
    for (int c = 0; c < out.components(); ++c) {
        auto data = out.coeffs(c);
        for (std::size_t k = 0; k < data.size(); ++k) data[k] *= -k2[k];
    }
    return out;
}

void dealias(Field& field) {
    const auto& keep = field.grid().waves().keep;
    for (int c = 0; c < field.components(); ++c) {
        auto data = field.coeffs(c);
        for (std::size_t k = 0; k < data.size(); ++k)
            if (!keep[k]) data[k] = 0.0;
    }
}

Field tensor_product(const Field& u, const Field& v) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("tensor_product: grid mismatch");
    if (u.rank() != Rank::vector || v.rank() != Rank::vector)
        throw std::invalid_argument("tensor_product: both factors must be vector fields");
    const Grid& grid = u.grid();
    const int n = grid.dim();
    const PhysicalField pu = to_physical(u);
    const PhysicalField pv = to_physical(v);
    PhysicalField prod(grid, Rank::tensor);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& dst = prod.values[static_cast<std::size_t>(i * n + j)];
            const auto& a = pu.values[static_cast<std::size_t>(i)];
            const auto& b = pv.values[static_cast<std::size_t>(j)];
            for (std::size_t x = 0; x < grid.points(); ++x) dst[x] = a[x] * b[x];
        }
    Field out = to_spectral(prod);
    dealias(out);
    return out;
}

}  // namespace tentlab
