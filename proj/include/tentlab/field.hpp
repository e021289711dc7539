#pragma once

#include "tentlab/grid.hpp"

#include <span>
#include <variant>
#include <vector>

namespace tentlab {

enum class Rank { scalar, vector, tensor };

/// 1, n or n² components.
int component_count(Rank rank, int dim) noexcept;
const char* rank_name(Rank rank) noexcept;

/// Real periodic field stored as Fourier coefficients, one array per component.
///
/// Tensor component (i, j) lives at index i·n + j and holds (u⊗v)_{ij}.
class Field {
public:
    Field(Grid grid, Rank rank);

    const Grid& grid() const noexcept { return grid_; }
    Rank rank() const noexcept { return rank_; }
    int components() const noexcept { return static_cast<int>(coeffs_.size()); }

    std::span<cplx> coeffs(int c) { return coeffs_[static_cast<std::size_t>(c)]; }
    std::span<const cplx> coeffs(int c) const { return coeffs_[static_cast<std::size_t>(c)]; }
    std::span<cplx> coeffs(int i, int j) { return coeffs(i * grid_.dim() + j); }
    std::span<const cplx> coeffs(int i, int j) const { return coeffs(i * grid_.dim() + j); }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double a);
    /// this += a·other
    Field& axpy(double a, const Field& other);

    /// Physical L² norm via Parseval: (L^n Σ|c|²)^{1/2}, summed over components.
    double l2_norm() const;
    double l2_norm2() const;
    /// Max over modes and components of |c|.
    double max_coeff() const;

    void require_same_shape(const Field& other, const char* where) const;

private:
    Grid grid_;
    Rank rank_;
    std::vector<std::vector<cplx>> coeffs_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

/// L² inner product ∫ X·Y dx of real fields, evaluated spectrally.
double inner(const Field& a, const Field& b);

/// Physical samples of a real field, one array per component.
struct PhysicalField {
    Grid grid;
    Rank rank;
    std::vector<std::vector<double>> values;

    PhysicalField(Grid g, Rank r);
    /// Frobenius magnitude at a grid point.
    double magnitude(std::size_t point) const;
    std::vector<double> magnitudes() const;
    double sup_norm() const;
};

PhysicalField to_physical(const Field& field);
/// Forward transform followed by Hermitian symmetrization.
Field to_spectral(const PhysicalField& field);

/// Largest imaginary part produced by the inverse transform, over components.
double max_imaginary(const Field& field);

/// Sets coeff(−m) = conj(coeff(m)) by averaging and zeroes the imaginary part
/// of self-conjugate modes.
void enforce_hermitian(Field& field);

struct Partial {
    int axis;
};
struct Gradient {};
struct Divergence {};
using DiffMode = std::variant<Partial, Gradient, Divergence>;

/// Multiplication by i·k (Nyquist components of k zeroed).
///
/// gradient maps scalar → vector and vector → tensor with (j, l) = ∂_l u_j;
/// divergence maps vector → scalar and tensor → vector row-wise,
/// div(α)_j = Σ_l ∂_l α_{jl}.
Field differentiate(const Field& field, const DiffMode& mode);

/// Laplacian, multiplier −|k|².
Field laplacian(const Field& field);

/// (u⊗v)_{ij} = u_i v_j pointwise, then 2/3-rule de-aliasing.
Field tensor_product(const Field& u, const Field& v);

/// Zeroes modes with some |m_i| > N/3.
void dealias(Field& field);

}  // namespace tentlab
