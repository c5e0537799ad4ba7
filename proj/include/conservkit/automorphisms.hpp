#pragma once

#include "conservkit/algebra.hpp"
#include "conservkit/linalg.hpp"
#include "conservkit/maps.hpp"
#include "conservkit/poly.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace conservkit {

// Parameters (a, b) of the automorphism family of W(2); b is never zero.
class AutParams {
public:
    // Throws ParameterError when b == 0.
    AutParams(Rational a, Rational b);

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }

    friend bool operator==(const AutParams&, const AutParams&) = default;

private:
    Rational a_;
    Rational b_;
};

struct AutViolation {
    bool singular = false;
    // First basis pair (0-based) with phi(e_i e_j) != phi(e_i) phi(e_j).
    std::size_t i = 0;
    std::size_t j = 0;
};

// nullopt iff m is invertible and multiplicative on every basis pair.
std::optional<AutViolation> aut_check(const StructureTensor& alg, const Matrix& m);

// The 8 x 8 automorphism of W(2) with parameters (a, b):
//   column e1 = e1 + 2ab e3 + 3a^2b^2 e4      column e5 = e5 - ab e6
//   column e2 = a e1 + e2/b + a^2b e3 + a^3b^2 e4
//   column e3 = b e3 + 3ab^2 e4                column e6 = b e6, column e7 = b e7
//   column e4 = b^2 e4                         column e8 = ab e7 + e8
Matrix aut_family(const AutParams& p);

// The same family with Laurent polynomial entries in (a, b) = (x1, x2).
std::vector<std::vector<LaurentPoly>> aut_family_symbolic();

struct SymbolicResidual {
    std::size_t i;
    std::size_t j;
    std::size_t k;
    LaurentPoly residual;  // coordinate k of phi(e_i e_j) - phi(e_i) phi(e_j)
};

struct FamilyCertificate {
    std::size_t checked = 0;  // number of coordinate residuals computed
    std::vector<SymbolicResidual> nonzero;
};

// Residuals of the multiplicativity identity for a symbolic matrix family,
// for every basis pair and output coordinate, as Laurent polynomials.
// The family's size must equal alg.dim().
FamilyCertificate family_verify_symbolic(const StructureTensor& alg,
                                         const std::vector<std::vector<LaurentPoly>>& family);

// Restriction of a square symbolic family to its leading `dim` rows and columns.
std::vector<std::vector<LaurentPoly>> leading_block(const std::vector<std::vector<LaurentPoly>>& family,
                                                    std::size_t dim);

// Reads (a, b) off Delta(e2) = (a, 1/b, a^2 b, a^3 b^2, 0, 0, 0, 0).
// Throws InputError unless dim 8, RecoveryError when inconsistent.
AutParams recover_aut_params(const Vector& image_of_e2);

struct IsAutomorphism {
    AutParams params;
};
struct NotAutomorphism {
    std::size_t column;  // 0-based basis vector with no admissible per-vector parameters
    std::string reason;
};
struct NotInFamily {
    std::string relation;
};

using AutVerdict = std::variant<IsAutomorphism, NotAutomorphism, NotInFamily>;

// Local-automorphism detector for linear maps of W(2) (8 x 8, e-basis).
// Solves for per-vector parameters column by column, imposes the additivity
// relations forced by the test vectors e6+e7, e5+e8, e4+e6, e2+e8, e2+e3 and
// e1+e8, then compares against the family entrywise. Throws InputError
// unless alg and m are both 8-dimensional.
AutVerdict local_aut_detect(const StructureTensor& alg, const Matrix& m);

using TwoLocalAutResult = std::variant<AutParams, Counterexample>;

// Throws ProtocolError if no sample is taken at e2.
TwoLocalAutResult twolocal_aut_check(std::span<const MapSample> samples);

}  // namespace conservkit
