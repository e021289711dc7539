#pragma once

#include "tentlab/field.hpp"

#include <array>
#include <functional>
#include <string>

namespace tentlab {

/// Heat semigroup e^{tΔ}: multiplier e^{−t|k|²} per component.
Field heat_evolve(const Field& field, double t);

/// Leray projector I − k̃k̃ᵀ/|k̃|² on a vector field; modes with k̃ = 0 pass through.
///
/// k̃ is the derivative wavevector, so the output is exactly divergence-free
/// under differentiate and ℙ annihilates discrete gradients.
Field leray_project(const Field& u);

/// ℙ div α without the heat factor (tensor → vector).
Field leray_divergence(const Field& alpha);

/// e^{τΔ} ℙ div α as one multiplier.
Field pdiv_apply(const Field& alpha, double tau);

/// T_s f = ℙ s^{1/2} div (sΔ)^{−1}(I − e^{2sΔ}) f, row-wise on a tensor field.
Field ts_apply(const Field& f, double s);

/// K_{t,s} f = e^{(t+s)Δ} ℙ s^{−1/2} div f.
Field kts_apply(const Field& f, double t, double s);

/// (1 − e^{−2r})/r with the series 2 − 2r below r = 1e−6.
double decay_quotient(double r) noexcept;

/// sup_{r>0} (1 − e^{−2r})/√r, the analytic T_s symbol bound.
double ts_symbol_sup();

/// sup over the grid's modes of s^{1/2}|k̃|·(1 − e^{−2s|k|²})/(s|k|²).
double ts_discrete_norm(const Grid& grid, double s);

/// sup over the grid's modes of s^{−1/2}|k̃| e^{−(t+s)|k|²}: the exact L²→L² norm of K_{t,s}.
double kts_discrete_norm(const Grid& grid, double t, double s);

/// Per-mode symbol: n×n complex matrix acting on the vector index, or a scalar.
struct Symbol {
    bool is_matrix = false;
    cplx scalar{1.0, 0.0};
    std::array<cplx, 9> matrix{};  ///< row-major n×n
};

/// A Fourier multiplier with a label for reports.
///
/// Scalar symbols act on every component; matrix symbols act on the vector
/// index of a vector field.
class MultiplierOp {
public:
    using SymbolFn = std::function<Symbol(const Grid&, std::size_t)>;

    MultiplierOp(std::string label, SymbolFn symbol);

    const std::string& label() const noexcept { return label_; }
    Symbol symbol(const Grid& grid, std::size_t mode) const { return symbol_(grid, mode); }

    Field apply(const Field& field) const;
    /// Multiplier whose symbol is next(k)·this(k).
    MultiplierOp then(const MultiplierOp& next) const;

    static MultiplierOp heat(double t);
    static MultiplierOp leray();
    /// tΔ e^{tΔ}
    static MultiplierOp heat_derivative(double t);

private:
    std::string label_;
    SymbolFn symbol_;
};

}  // namespace tentlab
